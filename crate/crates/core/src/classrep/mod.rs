//! Representatives of classes in the arithmetic class group of Z[G]: a finite
//! idelic character map paired with a positive archimedean character map.

mod arch;
mod symplectic;

pub use arch::{ArchValue, ExactRoot};
pub use symplectic::{
    delta_k, pfaffian_p, pairing_with_inertia, xi_s, LocalRamification, RationalSymplecticClass,
    SymplecticClassRep,
};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cycloarith::{prime_factors, CyclotomicNumber, Rational};
use crate::groupchar::{CharacterTable, GroupError, GroupRingMatrix, IrrepSet, SharedTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassError {
    #[error("representatives belong to different groups")]
    GroupMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("not visibly rational: {0}")]
    NotVisiblyRational(String),
    #[error("character is not symplectic")]
    NotSymplectic,
    #[error("pairing exponent is odd; input is not symplectic")]
    OddPairing,
    #[error("d * chi(Y) must be even")]
    OddProduct,
    #[error("gamma squared is not an exact rational")]
    NotRationalSquare,
    #[error("operation requires the trivial group")]
    NotTrivialGroup,
    #[error("module is not cohomologically trivial: {0}")]
    NotCohomologicallyTrivial(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Finite idelic part: for finitely many primes, one cyclotomic value per
/// irreducible character. Absent primes carry the constant map 1.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct IdelicCharMap {
    values: BTreeMap<u64, Vec<CyclotomicNumber>>,
}

impl IdelicCharMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: u64, vals: Vec<CyclotomicNumber>) {
        self.values.insert(p, vals);
    }

    pub fn get(&self, p: u64) -> Option<&[CyclotomicNumber]> {
        self.values.get(&p).map(Vec::as_slice)
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.values.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Vec<CyclotomicNumber>)> {
        self.values.iter().map(|(p, v)| (*p, v))
    }

    fn combine(&self, o: &Self, n: usize, f: impl Fn(&CyclotomicNumber, &CyclotomicNumber) -> CyclotomicNumber) -> Self {
        let one = CyclotomicNumber::one(1);
        let ones: Vec<CyclotomicNumber> = (0..n).map(|_| one.clone()).collect();
        let mut values = BTreeMap::new();
        for p in self.values.keys().chain(o.values.keys()) {
            if values.contains_key(p) {
                continue;
            }
            let a = self.values.get(p).unwrap_or(&ones);
            let b = o.values.get(p).unwrap_or(&ones);
            let v: Vec<CyclotomicNumber> = a.iter().zip(b).map(|(x, y)| f(x, y)).collect();
            if !v.iter().all(CyclotomicNumber::is_one) {
                values.insert(*p, v);
            }
        }
        Self { values }
    }
}

/// Representative `(f, a)` of a class in the arithmetic class group.
#[derive(Clone, Debug, PartialEq)]
pub struct ArithClassRep {
    table: SharedTable,
    fin: IdelicCharMap,
    arch: Vec<ArchValue>,
}

fn same_table(a: &SharedTable, b: &SharedTable) -> bool {
    Arc::ptr_eq(a, b) || a.group() == b.group()
}

impl ArithClassRep {
    pub fn identity(table: SharedTable) -> Self {
        let n = table.num_irreducibles();
        Self { table, fin: IdelicCharMap::new(), arch: (0..n).map(|_| ArchValue::one()).collect() }
    }

    pub fn new(table: SharedTable, fin: IdelicCharMap, arch: Vec<ArchValue>) -> Self {
        assert_eq!(arch.len(), table.num_irreducibles(), "one archimedean value per irreducible");
        let fin = fin.combine(&IdelicCharMap::new(), table.num_irreducibles(), |a, _| a.clone());
        Self { table, fin, arch }
    }

    pub fn table(&self) -> &SharedTable {
        &self.table
    }

    pub fn fin(&self) -> &IdelicCharMap {
        &self.fin
    }

    pub fn arch(&self) -> &[ArchValue] {
        &self.arch
    }

    /// Finite value at prime `p` and irreducible `i` (1 off the support).
    pub fn fin_value(&self, p: u64, i: usize) -> CyclotomicNumber {
        self.fin.get(p).map_or_else(|| CyclotomicNumber::one(1), |v| v[i].clone())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, ClassError> {
        if !same_table(&self.table, &o.table) {
            return Err(ClassError::GroupMismatch);
        }
        let n = self.table.num_irreducibles();
        Ok(Self {
            table: self.table.clone(),
            fin: self.fin.combine(&o.fin, n, |a, b| a * b),
            arch: self.arch.iter().zip(&o.arch).map(|(a, b)| a.mul(b)).collect(),
        })
    }

    pub fn inv(&self) -> Self {
        let n = self.table.num_irreducibles();
        Self {
            table: self.table.clone(),
            fin: self.fin.combine(&IdelicCharMap::new(), n, |a, _| a.inv().expect("idele values are nonzero")),
            arch: self.arch.iter().map(ArchValue::inv).collect(),
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self, ClassError> {
        self.mul(&o.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        let n = self.table.num_irreducibles();
        Self {
            table: self.table.clone(),
            fin: self.fin.combine(&IdelicCharMap::new(), n, |a, _| a.pow(k).expect("nonzero")),
            arch: self.arch.iter().map(|a| a.powi(k)).collect(),
        }
    }

    /// Degree-zero projection: `f(chi) / f(1)^chi(1)`.
    pub fn tilde(&self) -> Self {
        let n = self.table.num_irreducibles();
        let mut fin = IdelicCharMap::new();
        for (p, v) in self.fin.iter() {
            let base = v[0].clone();
            let vals = (0..n)
                .map(|i| &v[i] * &base.pow(-(self.table.degree(i) as i64)).expect("nonzero"))
                .collect();
            fin.insert(p, vals);
        }
        let base = self.arch[0].clone();
        let arch = (0..n).map(|i| self.arch[i].div(&base.powi(self.table.degree(i) as i64))).collect();
        Self::new(self.table.clone(), fin, arch)
    }

    /// Induction from the trivial group: value `a^chi(1)` at each irreducible.
    pub fn ind_from_trivial(a: &Self, target: SharedTable) -> Result<Self, ClassError> {
        if a.table.group().order() != 1 {
            return Err(ClassError::NotTrivialGroup);
        }
        let n = target.num_irreducibles();
        let mut fin = IdelicCharMap::new();
        for (p, v) in a.fin.iter() {
            fin.insert(p, (0..n).map(|i| v[0].pow(target.degree(i) as i64).expect("nonzero")).collect());
        }
        let arch = (0..n).map(|i| a.arch[0].powi(target.degree(i) as i64)).collect();
        Ok(Self::new(target, fin, arch))
    }

    /// For the trivial group: `gamma = content(f) / a`.
    pub fn degree_map_trivial(&self) -> Result<ArchValue, ClassError> {
        if self.table.group().order() != 1 {
            return Err(ClassError::NotTrivialGroup);
        }
        Ok(self.orbit_degrees().into_iter().next().expect("one orbit").gamma)
    }

    /// `gamma^2` as an exact rational.
    pub fn square_rationality(&self) -> Result<Rational, ClassError> {
        let g = self.degree_map_trivial()?;
        g.powi(2).as_rational().ok_or(ClassError::NotRationalSquare)
    }

    /// Evaluation on symplectic generators of the table.
    pub fn restrict_symplectic(&self) -> SymplecticClassRep {
        SymplecticClassRep::from_class(self)
    }

    /// Class invariants: one positive real per rational orbit of
    /// irreducibles, namely `prod_p p^{v_p(N(f_p(phi)))} / prod_k a(phi^{omega_k})`.
    ///
    /// These are unchanged by multiplication with determinants of local
    /// units and with the diagonal image of global determinants, so equal
    /// classes have equal orbit degrees.
    pub fn orbit_degrees(&self) -> Vec<OrbitDegree> {
        let t = &self.table;
        let e = t.exponent();
        let ks = CyclotomicNumber::galois_exponents(e);
        let mut seen = alloc::vec![false; t.num_irreducibles()];
        let mut out = Vec::new();
        for i in 0..t.num_irreducibles() {
            if seen[i] {
                continue;
            }
            let images: Vec<usize> = ks.iter().map(|&k| t.galois_image(i, k)).collect();
            for &j in &images {
                seen[j] = true;
            }
            let mut content = ArchValue::one();
            for (p, v) in self.fin.iter() {
                content = content.mul(&content_at(&v[i], p, e));
            }
            let mut arch_prod = ArchValue::one();
            for &j in &images {
                arch_prod = arch_prod.mul(&self.arch[j]);
            }
            let mut orbit = images.clone();
            orbit.sort_unstable();
            orbit.dedup();
            out.push(OrbitDegree {
                representative: i,
                orbit,
                gamma: content.div(&arch_prod),
                content,
            });
        }
        out
    }

    /// Maximal relative disagreement of orbit degrees, or `None` if the
    /// orbit structures differ.
    pub fn orbit_degree_distance(&self, o: &Self) -> Option<f64> {
        let a = self.orbit_degrees();
        let b = o.orbit_degrees();
        let mut worst = 0.0f64;
        for (x, y) in a.iter().zip(&b) {
            if x.orbit != y.orbit {
                return None;
            }
            worst = worst.max(x.gamma.rel_diff(&y.gamma));
        }
        Some(worst)
    }

    /// Checks Galois equivariance of every finite value:
    /// `f_p(chi^omega) = omega(f_p(chi))` for all omega of the exponent layer.
    pub fn is_galois_equivariant(&self) -> bool {
        self.fin.iter().all(|(_, v)| galois_equivariant(&self.table, v))
    }
}

/// One orbit entry of [`ArithClassRep::orbit_degrees`].
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitDegree {
    pub representative: usize,
    pub orbit: Vec<usize>,
    pub content: ArchValue,
    pub gamma: ArchValue,
}

trait LcmWith {
    fn lcm_with(self, o: u32) -> u32;
}

impl LcmWith for u32 {
    fn lcm_with(self, o: u32) -> u32 {
        num_integer::Integer::lcm(&self, &o)
    }
}

/// `p^{v_p(N(z))}` with the norm taken from Q(zeta_e); computed in the
/// smallest cyclotomic field containing both and rescaled by the degree.
fn content_at(z: &CyclotomicNumber, p: u64, e: u32) -> ArchValue {
    let m = e.max(1).lcm_with(z.conductor());
    let z = z.lift(m).expect("lift");
    let k = crate::cycloarith::euler_phi(m) / crate::cycloarith::euler_phi(e.max(1));
    let v = valuation(&z.norm(), p);
    let pv = Rational::from_integer(BigInt::from(p)).pow_i(v);
    if k == 1 {
        ArchValue::from_rational(&pv)
    } else {
        ArchValue::root(CyclotomicNumber::from_rational(1, pv), k).expect("positive")
    }
}

trait PowI {
    fn pow_i(self, v: i64) -> Self;
}

impl PowI for Rational {
    fn pow_i(self, v: i64) -> Self {
        let base = if v < 0 { self.recip() } else { self };
        num_traits::pow::pow(base, v.unsigned_abs() as usize)
    }
}

/// `p^{v_p(r)}` for a nonzero rational.
pub fn p_part(r: &Rational, p: u64) -> Rational {
    if r.is_zero() {
        return Rational::one();
    }
    Rational::from_integer(BigInt::from(p)).pow_i(valuation(r, p))
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(r: &Rational, p: u64) -> i64 {
    let pb = BigInt::from(p);
    let count = |x: &BigInt| {
        let mut x = x.abs();
        let mut k = 0i64;
        while !x.is_zero() && (&x % &pb).is_zero() {
            x /= &pb;
            k += 1;
        }
        k
    };
    count(r.numer()) - count(r.denom())
}

/// Primes dividing numerator or denominator of a nonzero rational.
pub fn rational_primes(r: &Rational) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for x in [r.numer(), r.denom()] {
        let mut x = x.abs();
        // trial division; values here are small
        let mut p = 2u64;
        while x > BigInt::one() {
            let pb = BigInt::from(p);
            if (&x % &pb).is_zero() {
                out.push(p);
                while (&x % &pb).is_zero() {
                    x /= &pb;
                }
            }
            p += 1;
            if let Some(small) = x.to_u64() {
                if p * p > small && small > 1 {
                    out.extend(prime_factors(small));
                    break;
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn galois_equivariant(t: &CharacterTable, v: &[CyclotomicNumber]) -> bool {
    let e = t.exponent();
    let m = v.iter().fold(e.max(1), |acc, z| acc.lcm_with(z.conductor()));
    CyclotomicNumber::galois_exponents(m).into_iter().all(|k| {
        (0..t.num_irreducibles()).all(|i| {
            let j = t.galois_image(i, k);
            v[i].galois(k).map(|x| x == v[j]).unwrap_or(false)
        })
    })
}

/// `Det(x)(chi) = det T_chi(x)` for a matrix over Q[G], one value per irreducible.
pub fn det_of_unit(x: &GroupRingMatrix, table: &CharacterTable, irreps: &IrrepSet) -> Result<Vec<CyclotomicNumber>, ClassError> {
    if x.rows() != x.cols() {
        return Err(ClassError::Singular);
    }
    let e = table.exponent();
    let mut out = Vec::with_capacity(irreps.len());
    for rep in irreps.reps() {
        let d = if x.rows() == 0 {
            CyclotomicNumber::one(e)
        } else {
            rep.apply_matrix(x, e).det().expect("nonempty")
        };
        if d.is_zero() {
            return Err(ClassError::Singular);
        }
        out.push(d);
    }
    Ok(out)
}

/// Class `nu(M)` of `M = Z_p[G]^d / alpha`: finite part `Det(alpha)` at `p`.
pub fn torsion_class(
    alpha: &GroupRingMatrix,
    p: u64,
    table: SharedTable,
    irreps: &IrrepSet,
) -> Result<ArithClassRep, ClassError> {
    if !alpha.is_p_integral(p) {
        return Err(ClassError::NotCohomologicallyTrivial("presentation is not p-integral".into()));
    }
    let det = det_of_unit(alpha, &table, irreps).map_err(|_| {
        ClassError::NotCohomologicallyTrivial("presentation matrix is a zero divisor".into())
    })?;
    let mut fin = IdelicCharMap::new();
    fin.insert(p, det);
    let n = table.num_irreducibles();
    Ok(ArithClassRep::new(table, fin, (0..n).map(|_| ArchValue::one()).collect()))
}

/// `Delta(x)`: a global value placed at the given primes with archimedean
/// part `|x|` under the standard embedding.
pub fn diagonal_class(values: &[CyclotomicNumber], primes: &[u64], table: SharedTable) -> ArithClassRep {
    let mut fin = IdelicCharMap::new();
    for &p in primes {
        fin.insert(p, values.to_vec());
    }
    let arch = values
        .iter()
        .map(|z| {
            let abs2 = z * &z.conj();
            ArchValue::root(abs2.clone(), 2).unwrap_or_else(|| {
                ArchValue::approximate(libm::sqrt(abs2.approx().re.abs()), 1e-15)
            })
        })
        .collect();
    ArithClassRep::new(table, fin, arch)
}

/// Primes `p` with a nonunit value somewhere in the given list.
pub fn nonunit_primes(values: &[CyclotomicNumber]) -> Vec<u64> {
    let mut out = Vec::new();
    for z in values {
        // Each value is an algebraic number; its primes divide its norm or
        // the denominators of its coordinates.
        let mut cands = rational_primes(&z.norm());
        for c in z.coeffs() {
            if !c.is_zero() {
                cands.extend(rational_primes(&Rational::from_integer(c.denom().clone())));
            }
        }
        out.extend(cands);
    }
    out.sort_unstable();
    out.dedup();
    out
}
