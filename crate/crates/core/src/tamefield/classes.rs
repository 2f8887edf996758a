//! Conductors, Pfaffians, archimedean signs and the representatives of the
//! symplectic classes of O_N, O_N G and of branch intersection data.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::descriptor::{GaloisData, InertiaCharacter, TameFieldDescriptor};
use super::FieldError;
use crate::classrep::{delta_k, pairing_with_inertia, pfaffian_p, ArchValue, ClassError, LocalRamification, SymplecticClassRep};
use crate::cycloarith::{is_prime, CyclotomicNumber, Rational};
use crate::groupchar::{CharacterTable, FiniteGroup, SharedTable, Subgroup, VirtualCharacter};

/// `eps~_inf(psi) = (-i)^((psi(1) - psi(c)) / 2)` for symplectic `psi`.
pub fn eps_infinity_tilde(data: &GaloisData, psi: &VirtualCharacter) -> Result<i8, FieldError> {
    let t = data.table();
    if !psi.is_symplectic(t) {
        return Err(FieldError::NotSymplectic);
    }
    let at_c = psi
        .value_at(t, data.conj_element())
        .as_integer()
        .and_then(|z| z.to_i64())
        .ok_or(FieldError::NonIntegralExponent)?;
    let d = psi.degree(t) - at_c;
    if d % 2 != 0 || (d / 2) % 2 != 0 {
        return Err(FieldError::NonIntegralExponent);
    }
    Ok(if (d / 2).rem_euclid(4) == 0 { 1 } else { -1 })
}

/// Exponent of `p` in the Artin conductor of `psi`: `(psi|_I, u_I)`, times the
/// residue degree of the base, which is 1.
pub fn artin_conductor_p(f: &TameFieldDescriptor, psi: &VirtualCharacter, p: u64) -> Result<i64, FieldError> {
    match f.record(p) {
        None => Ok(0),
        Some(r) => Ok(pairing_with_inertia(f.table(), &r.inertia, psi)?),
    }
}

/// `Pf_p(O_N)(psi)`.
pub fn pfaffian(f: &TameFieldDescriptor, p: u64, psi: &VirtualCharacter) -> Result<Rational, FieldError> {
    match f.record(p) {
        None => Ok(Rational::one()),
        Some(r) => Ok(pfaffian_p(f.table(), &[r.local()], psi)?),
    }
}

/// `Pf_p(psi)^2` against `p^(conductor exponent)`.
#[derive(Clone, Debug)]
pub struct MagnitudeCheck {
    pub p: u64,
    pub generator: VirtualCharacter,
    pub pfaffian: Rational,
    pub conductor: i64,
    pub holds: bool,
}

/// The magnitude identity at every ramified prime and symplectic generator.
pub fn pfaffian_magnitudes(f: &TameFieldDescriptor) -> Result<Vec<MagnitudeCheck>, FieldError> {
    let mut out = Vec::new();
    for r in f.ram() {
        for psi in f.table().symplectic_generators() {
            let pf = pfaffian(f, r.p, &psi)?;
            let cond = artin_conductor_p(f, &psi, r.p)?;
            let base = Rational::from_integer(BigInt::from(r.p));
            let power = if cond >= 0 {
                num_traits::pow::pow(base, cond as usize)
            } else {
                num_traits::pow::pow(base.recip(), cond.unsigned_abs() as usize)
            };
            let holds = &pf * &pf == power;
            out.push(MagnitudeCheck { p: r.p, generator: psi, pfaffian: pf, conductor: cond, holds });
        }
    }
    Ok(out)
}

fn delta_q(t: &CharacterTable, psi: &VirtualCharacter) -> ArchValue {
    delta_k(1, &BigInt::one(), t.group().order(), psi.degree(t))
}

/// Puts one rational per generator at each of `primes`.
fn place(t: SharedTable, vals: Vec<Rational>, primes: &[u64], arch: Vec<ArchValue>) -> Result<SymplecticClassRep, FieldError> {
    let trivial = vals.iter().all(One::is_one);
    if primes.is_empty() && !trivial {
        return Err(ClassError::NotVisiblyRational(String::from("nontrivial finite value without a supporting prime")).into());
    }
    let mut fin = BTreeMap::new();
    if !trivial {
        for &p in primes {
            fin.insert(p, vals.iter().map(|r| CyclotomicNumber::from_rational(1, r.clone())).collect());
        }
    }
    Ok(SymplecticClassRep::new(t, fin, arch))
}

/// `eps~_inf^-1 Pf(O_N)^-1 x delta_Q`: the rational value
/// `eps~_inf(psi)^-1 prod_p Pf_p(psi)^-1` sits at every ramified prime.
pub fn theorem_5_9_representative(f: &TameFieldDescriptor) -> Result<SymplecticClassRep, FieldError> {
    let t = f.table();
    let gens = t.symplectic_generators();
    let mut vals = Vec::with_capacity(gens.len());
    for psi in &gens {
        let mut r = Rational::from_integer(BigInt::from(eps_infinity_tilde(f.data(), psi)?));
        for rec in f.ram() {
            r /= pfaffian_p(t, &[rec.local()], psi)?;
        }
        vals.push(r);
    }
    let arch = gens.iter().map(|psi| delta_q(t, psi)).collect();
    place(t.clone(), vals, &f.ramified_primes(), arch)
}

/// `1 x delta_Q`, the class of `O_Q G` with the standard form.
pub fn group_ring_representative(t: &SharedTable) -> SymplecticClassRep {
    let arch = t.symplectic_generators().iter().map(|psi| delta_q(t, psi)).collect();
    SymplecticClassRep::new(t.clone(), BTreeMap::new(), arch)
}

/// One transverse intersection of a horizontal cycle with a branch component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub p: u64,
    /// Residue degree of the point.
    pub f: u32,
    pub inertia: Vec<usize>,
    pub character: InertiaCharacter,
}

#[derive(Clone, Debug)]
pub struct BranchIntersectionData {
    points: Vec<BranchPoint>,
    local: Vec<LocalRamification>,
}

impl BranchIntersectionData {
    pub fn new(g: &FiniteGroup, points: Vec<BranchPoint>) -> Result<Self, FieldError> {
        let mut issues = Vec::new();
        let mut local = Vec::new();
        for (i, pt) in points.iter().enumerate() {
            if !is_prime(pt.p) {
                issues.push(format!("point {i}: {} is not prime", pt.p));
                continue;
            }
            let Ok(h) = Subgroup::new(g, &pt.inertia) else {
                issues.push(format!("point {i}: inertia is not a subgroup"));
                continue;
            };
            let e = h.order();
            if (e as u64) % pt.p == 0 {
                issues.push(format!("point {i}: ramification is wild (e = {e}, p = {})", pt.p));
            }
            if !h.is_cyclic() {
                issues.push(format!("point {i}: inertia is not cyclic"));
            }
            let c = pt.character;
            if !h.contains(c.generator) || g.element_order(c.generator) as usize != e {
                issues.push(format!("point {i}: element {} does not generate the inertia group", c.generator));
            }
            if e > 1 && (c.exponent as usize).gcd(&e) != 1 {
                issues.push(format!("point {i}: inertia character is not faithful"));
            }
            local.push(LocalRamification { p: pt.p, residue_degree: pt.f, inertia: h });
        }
        if !issues.is_empty() {
            return Err(FieldError::InvalidDescriptor(issues));
        }
        Ok(Self { points, local })
    }

    pub fn points(&self) -> &[BranchPoint] {
        &self.points
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.points.iter().map(|p| p.p).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }
}

/// `eps^-1 deg(W . Pf(X))^-1 x delta_Q` with `deg` the product over points
/// of `(-p)^(f (psi, Ind u) / 2)`; `eps` holds one sign per symplectic
/// generator.
pub fn theorem_6_1_representative(t: &SharedTable, d: &BranchIntersectionData, eps: &[i8]) -> Result<SymplecticClassRep, FieldError> {
    let gens = t.symplectic_generators();
    if eps.len() != gens.len() {
        return Err(FieldError::InvalidDescriptor(alloc::vec![format!(
            "{} signs given for {} symplectic generators",
            eps.len(),
            gens.len()
        )]));
    }
    let mut vals = Vec::with_capacity(gens.len());
    for (psi, &s) in gens.iter().zip(eps) {
        let deg = pfaffian_p(t, &d.local, psi)?;
        vals.push(Rational::from_integer(BigInt::from(s)) / deg);
    }
    let arch = gens.iter().map(|psi| delta_q(t, psi)).collect();
    place(t.clone(), vals, &d.primes(), arch)
}
