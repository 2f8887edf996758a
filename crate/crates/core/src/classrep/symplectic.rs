//! Symplectic restriction, the rationality map theta, Pfaffians and the
//! discriminant and Euler factors that appear beside them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ArchValue, ArithClassRep, ClassError};
use crate::cycloarith::{CyclotomicNumber, Rational};
use crate::groupchar::{CharacterTable, SharedTable, Subgroup, VirtualCharacter};

/// A class evaluated on the symplectic generators of its table.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticClassRep {
    table: SharedTable,
    gens: Vec<VirtualCharacter>,
    fin: BTreeMap<u64, Vec<CyclotomicNumber>>,
    arch: Vec<ArchValue>,
}

fn eval_product(vals: &[CyclotomicNumber], v: &VirtualCharacter) -> CyclotomicNumber {
    let mut acc = CyclotomicNumber::one(1);
    for (i, &a) in v.coeffs.iter().enumerate() {
        if a != 0 {
            acc = &acc * &vals[i].pow(a).expect("nonzero idele value");
        }
    }
    acc
}

fn eval_arch(vals: &[ArchValue], v: &VirtualCharacter) -> ArchValue {
    let mut acc = ArchValue::one();
    for (i, &a) in v.coeffs.iter().enumerate() {
        if a != 0 {
            acc = acc.mul(&vals[i].powi(a));
        }
    }
    acc
}

impl SymplecticClassRep {
    pub fn from_class(c: &ArithClassRep) -> Self {
        let t = c.table().clone();
        let gens = t.symplectic_generators();
        let mut fin = BTreeMap::new();
        for (p, v) in c.fin().iter() {
            let vals: Vec<CyclotomicNumber> = gens.iter().map(|g| eval_product(v, g)).collect();
            if !vals.iter().all(CyclotomicNumber::is_one) {
                fin.insert(p, vals);
            }
        }
        let arch = gens.iter().map(|g| eval_arch(c.arch(), g)).collect();
        Self { table: t, gens, fin, arch }
    }

    /// Builds from per-generator data (generators in table order).
    pub fn new(table: SharedTable, fin: BTreeMap<u64, Vec<CyclotomicNumber>>, arch: Vec<ArchValue>) -> Self {
        let gens = table.symplectic_generators();
        assert_eq!(arch.len(), gens.len(), "one archimedean value per symplectic generator");
        assert!(fin.values().all(|v| v.len() == gens.len()));
        Self { table, gens, fin, arch }
    }

    pub fn identity(table: SharedTable) -> Self {
        let n = table.symplectic_generators().len();
        Self::new(table, BTreeMap::new(), (0..n).map(|_| ArchValue::one()).collect())
    }

    pub fn table(&self) -> &SharedTable {
        &self.table
    }

    pub fn generators(&self) -> &[VirtualCharacter] {
        &self.gens
    }

    pub fn fin(&self) -> &BTreeMap<u64, Vec<CyclotomicNumber>> {
        &self.fin
    }

    pub fn arch(&self) -> &[ArchValue] {
        &self.arch
    }

    pub fn mul(&self, o: &Self) -> Result<Self, ClassError> {
        if self.table.group() != o.table.group() {
            return Err(ClassError::GroupMismatch);
        }
        let n = self.gens.len();
        let ones: Vec<CyclotomicNumber> = (0..n).map(|_| CyclotomicNumber::one(1)).collect();
        let mut fin = BTreeMap::new();
        for p in self.fin.keys().chain(o.fin.keys()) {
            let a = self.fin.get(p).unwrap_or(&ones);
            let b = o.fin.get(p).unwrap_or(&ones);
            let v: Vec<CyclotomicNumber> = a.iter().zip(b).map(|(x, y)| x * y).collect();
            if !v.iter().all(CyclotomicNumber::is_one) {
                fin.insert(*p, v);
            }
        }
        let arch = self.arch.iter().zip(&o.arch).map(|(a, b)| a.mul(b)).collect();
        Ok(Self { table: self.table.clone(), gens: self.gens.clone(), fin, arch })
    }

    pub fn inv(&self) -> Self {
        let fin = self
            .fin
            .iter()
            .map(|(p, v)| (*p, v.iter().map(|z| z.inv().expect("nonzero")).collect()))
            .collect();
        Self {
            table: self.table.clone(),
            gens: self.gens.clone(),
            fin,
            arch: self.arch.iter().map(ArchValue::inv).collect(),
        }
    }

    /// Degree-zero projection `f(psi) / f(2 * 1)^(psi(1)/2)`.
    pub fn tilde(&self) -> Self {
        debug_assert_eq!(self.gens[0], self.table.trivial().scale(2));
        let half: Vec<i64> = self.gens.iter().map(|g| g.degree(&self.table) / 2).collect();
        let mut fin = BTreeMap::new();
        for (p, v) in &self.fin {
            let vals: Vec<CyclotomicNumber> =
                v.iter().zip(&half).map(|(z, &h)| z * &v[0].pow(-h).expect("nonzero")).collect();
            if !vals.iter().all(CyclotomicNumber::is_one) {
                fin.insert(*p, vals);
            }
        }
        let arch = self.arch.iter().zip(&half).map(|(a, &h)| a.div(&self.arch[0].powi(h))).collect();
        Self { table: self.table.clone(), gens: self.gens.clone(), fin, arch }
    }

    /// `theta(f, a) = r / a` on data whose finite part is one rational `r`
    /// at every supported prime and whose archimedean part is an exact
    /// positive rational.
    pub fn theta(&self) -> Result<RationalSymplecticClass, ClassError> {
        let mut out = Vec::with_capacity(self.gens.len());
        for k in 0..self.gens.len() {
            let mut r: Option<Rational> = None;
            for (p, v) in &self.fin {
                let x = v[k].as_rational().ok_or_else(|| {
                    ClassError::NotVisiblyRational(format!("generator {k} has an irrational value at {p}"))
                })?;
                match &r {
                    None => r = Some(x),
                    Some(prev) if *prev == x => {}
                    Some(_) => {
                        return Err(ClassError::NotVisiblyRational(format!(
                            "generator {k} has different values at different primes"
                        )))
                    }
                }
            }
            let a = self.arch[k].as_rational().ok_or_else(|| {
                ClassError::NotVisiblyRational(format!("archimedean value of generator {k} is not an exact rational"))
            })?;
            out.push(r.unwrap_or_else(Rational::one) / a);
        }
        Ok(RationalSymplecticClass { values: out })
    }

    /// Value on an arbitrary symplectic character at prime `p`.
    pub fn fin_value(&self, p: u64, psi: &VirtualCharacter) -> Result<CyclotomicNumber, ClassError> {
        let coords = psi.symplectic_coordinates(&self.table).ok_or(ClassError::NotSymplectic)?;
        let Some(v) = self.fin.get(&p) else { return Ok(CyclotomicNumber::one(1)) };
        let mut acc = CyclotomicNumber::one(1);
        for (z, &c) in v.iter().zip(&coords) {
            acc = &acc * &z.pow(c).expect("nonzero");
        }
        Ok(acc)
    }

    /// Archimedean value on an arbitrary symplectic character.
    pub fn arch_value(&self, psi: &VirtualCharacter) -> Result<ArchValue, ClassError> {
        let coords = psi.symplectic_coordinates(&self.table).ok_or(ClassError::NotSymplectic)?;
        let mut acc = ArchValue::one();
        for (a, &c) in self.arch.iter().zip(&coords) {
            acc = acc.mul(&a.powi(c));
        }
        Ok(acc)
    }
}

/// Rational values on the symplectic generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSymplecticClass {
    pub values: Vec<Rational>,
}

impl RationalSymplecticClass {
    /// Value on a symplectic virtual character.
    pub fn value(&self, t: &CharacterTable, psi: &VirtualCharacter) -> Result<Rational, ClassError> {
        let coords = psi.symplectic_coordinates(t).ok_or(ClassError::NotSymplectic)?;
        let mut acc = Rational::one();
        for (v, &c) in self.values.iter().zip(&coords) {
            let base = if c < 0 { v.recip() } else { v.clone() };
            acc *= num_traits::pow::pow(base, c.unsigned_abs() as usize);
        }
        Ok(acc)
    }
}

/// One prime of the base (or one intersection point) with its inertia group.
#[derive(Clone, Debug)]
pub struct LocalRamification {
    pub p: u64,
    /// Residue degree of the base prime over p.
    pub residue_degree: u32,
    pub inertia: Subgroup,
}

/// `(psi|_I, u_I)` where `u_I` is the augmentation character of `I`.
pub fn pairing_with_inertia(t: &CharacterTable, inertia: &Subgroup, psi: &VirtualCharacter) -> Result<i64, ClassError> {
    let res = inertia.restrict(t, psi)?;
    Ok(res.dot(&inertia.table().augmentation()))
}

/// Product over the given ramification data of `(-q)^(f (psi, Ind u) / 2)`,
/// with `q = p` and `f` the residue degree; exponents are summed per prime.
pub fn pfaffian_p(t: &CharacterTable, ram: &[LocalRamification], psi: &VirtualCharacter) -> Result<Rational, ClassError> {
    let mut per_prime: BTreeMap<u64, i64> = BTreeMap::new();
    for r in ram {
        let pair = pairing_with_inertia(t, &r.inertia, psi)?;
        *per_prime.entry(r.p).or_default() += r.residue_degree as i64 * pair;
    }
    let mut acc = Rational::one();
    for (p, twice) in per_prime {
        if twice % 2 != 0 {
            return Err(ClassError::OddPairing);
        }
        let base = -Rational::from_integer(BigInt::from(p));
        let e = twice / 2;
        let b = if e < 0 { base.recip() } else { base };
        acc *= num_traits::pow::pow(b, e.unsigned_abs() as usize);
    }
    Ok(acc)
}

/// `delta_K(psi) = (|G|^[K:Q] |d_K|)^(psi(1)/2)`.
pub fn delta_k(k_degree: u32, d_k: &BigInt, group_order: usize, psi_degree: i64) -> ArchValue {
    let base = Rational::from_integer(BigInt::from(group_order).pow(k_degree) * d_k.abs());
    if psi_degree % 2 == 0 {
        ArchValue::from_rational(&pow_rational(&base, psi_degree / 2))
    } else {
        let r = pow_rational(&base, psi_degree);
        ArchValue::root(CyclotomicNumber::from_rational(1, r), 2).expect("positive base")
    }
}

fn pow_rational(b: &Rational, e: i64) -> Rational {
    let base = if e < 0 { b.recip() } else { b.clone() };
    num_traits::pow::pow(base, e.unsigned_abs() as usize)
}

/// `xi_S(psi) = prod_{p in S} p^(-psi(1) d chi(Y) / 2)`.
pub fn xi_s(primes: &[u64], d: i64, chi_y: i64, psi_degree: i64) -> Result<Rational, ClassError> {
    if (d * chi_y) % 2 != 0 {
        return Err(ClassError::OddProduct);
    }
    let e = -psi_degree * (d * chi_y / 2);
    let mut acc = Rational::one();
    for &p in primes {
        acc *= pow_rational(&Rational::from_integer(BigInt::from(p)), e);
    }
    Ok(acc)
}

impl RationalSymplecticClass {
    pub fn is_identity(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    pub fn all_positive(&self) -> bool {
        self.values.iter().all(|v| v.is_positive() && !v.is_zero())
    }
}
