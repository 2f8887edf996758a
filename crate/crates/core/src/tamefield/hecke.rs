//! The Hecke form on `C (x) N` and the arithmetic classes of G-stable
//! lattices that are free on one generator.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Signed;

use super::descriptor::{GaloisData, TameFieldDescriptor};
use super::FieldError;
use crate::classrep::{det_of_unit, rational_primes, torsion_class, ArithClassRep, SymplecticClassRep};
use crate::cycloarith::{rational_to_f64, CyclotomicNumber, Rational};
use crate::groupchar::{GroupRingElement, GroupRingMatrix};
use crate::metcomplex::{arithmetic_class, reduced_norm_product, BasisData, CMat, HermitianForm, MetrisedComplex, PerfectComplex};

/// `h(x, y) = sum_sigma sigma(x) conj(sigma(y))` on `C[G]`, identified with
/// `C (x) N` through `e -> beta`, where `beta = sum_x c_x x(b)`.
pub fn hecke_form(data: &GaloisData, beta: &GroupRingElement) -> Result<HermitianForm, FieldError> {
    let g = data.group();
    let n = g.order();
    let e: Vec<Complex64> = data.embeddings().iter().map(|z| z.mid()).collect();
    let c: Vec<f64> = beta.coeffs().iter().map(rational_to_f64).collect();
    let eb: Vec<Complex64> = (0..n).map(|h| (0..n).map(|x| e[g.mul(h, x)] * c[x]).sum()).collect();
    let m = CMat::from_fn(n, n, |a, b| (0..n).map(|h| eb[g.mul(h, a)] * eb[g.mul(h, b)].conj()).sum());
    Ok(HermitianForm::new(g, 1, m)?)
}

fn single(x: &GroupRingElement, n: usize) -> GroupRingMatrix {
    GroupRingMatrix::from_fn(n, 1, 1, |_, _| x.clone())
}

/// Class of the lattice `Z[G] lambda beta` (beta the integral generator)
/// with the Hecke metric, using the global basis `global` expressed in the
/// coordinates of `lambda beta`.
fn lattice_class(f: &TameFieldDescriptor, lambda: &GroupRingElement, global: &GroupRingElement) -> Result<ArithClassRep, FieldError> {
    let beta = f.integral_generator().ok_or(FieldError::NotFree)?;
    let data = f.data();
    let g = data.group().clone();
    let n = g.order();
    let form = hecke_form(data, &lambda.mul(beta, &g))?;
    let complex = PerfectComplex::single(g, 0, 1);
    let mc = MetrisedComplex::from_forms(complex, Arc::clone(data.context()), &[form])?;
    Ok(arithmetic_class(&mc, &BasisData::with_global(vec![single(global, n)]))?)
}

/// `chi(O_N, det h)` computed from the Hecke-metrised complex `O_N[0]` with
/// the global basis given by the integral generator.
pub fn chi_ring_of_integers(f: &TameFieldDescriptor) -> Result<ArithClassRep, FieldError> {
    let one = GroupRingElement::one(f.data().group());
    lattice_class(f, &one, &one)
}

/// `chi(a, det h)` for `a = Z[G] lambda beta`.
pub fn chi_ideal(f: &TameFieldDescriptor, lambda: &GroupRingElement) -> Result<ArithClassRep, FieldError> {
    let one = GroupRingElement::one(f.data().group());
    lattice_class(f, lambda, &one)
}

/// Both sides of `chi(O_N) chi(a)^-1 = nu(O_N / a)` and their comparison on
/// the symplectic and trivial-character projections.
#[derive(Clone, Debug)]
pub struct IdealCheck {
    /// `|O_N / a|`.
    pub index: Rational,
    pub lhs: ArithClassRep,
    pub rhs: ArithClassRep,
    pub lhs_symplectic: SymplecticClassRep,
    pub rhs_symplectic: SymplecticClassRep,
    /// Finite values agree exactly on every symplectic generator.
    pub symplectic_finite_equal: bool,
    /// Finite values agree exactly at the trivial character.
    pub trivial_finite_equal: bool,
    /// Largest relative archimedean difference over both projections.
    pub arch_defect: f64,
}

impl IdealCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.symplectic_finite_equal && self.trivial_finite_equal && self.arch_defect <= tol
    }
}

/// `chi(O_N) chi(a)^-1` against `nu(O_N / a)` for `a = Z[G] lambda beta`,
/// `lambda` integral with nonzero determinants. Both classes use
/// `lambda beta` as global basis.
pub fn prop_5_7_check(f: &TameFieldDescriptor, lambda: &GroupRingElement) -> Result<IdealCheck, FieldError> {
    let t = f.table();
    let irreps = f.data().context().irreps();
    let g = f.data().group();
    let n = g.order();
    if !lambda.is_integral() {
        return Err(FieldError::NotCohomologicallyTrivial("the ideal is not contained in O_N".into()));
    }
    let det = det_of_unit(&single(lambda, n), t, irreps)
        .map_err(|_| FieldError::NotCohomologicallyTrivial("the quotient is infinite".into()))?;
    let index = reduced_norm_product(&det, t).abs();
    let one = GroupRingElement::one(g);
    let lhs = lattice_class(f, &one, lambda)?.div(&lattice_class(f, lambda, &one)?)?;
    let mut rhs = ArithClassRep::identity(t.clone());
    for p in rational_primes(&index) {
        rhs = rhs.mul(&torsion_class(&single(lambda, n), p, t.clone(), irreps)?)?;
    }
    let ls = SymplecticClassRep::from_class(&lhs);
    let rs = SymplecticClassRep::from_class(&rhs);
    let primes: BTreeSet<u64> = lhs.fin().support().chain(rhs.fin().support()).collect();
    let ones: Vec<CyclotomicNumber> = (0..ls.generators().len()).map(|_| CyclotomicNumber::one(1)).collect();
    let symplectic_finite_equal =
        primes.iter().all(|p| ls.fin().get(p).unwrap_or(&ones) == rs.fin().get(p).unwrap_or(&ones));
    let trivial_finite_equal = primes.iter().all(|&p| lhs.fin_value(p, 0) == rhs.fin_value(p, 0));
    let mut arch_defect = lhs.arch()[0].rel_diff(&rhs.arch()[0]);
    for (a, b) in ls.arch().iter().zip(rs.arch()) {
        arch_defect = arch_defect.max(a.rel_diff(b));
    }
    Ok(IdealCheck {
        index,
        lhs,
        rhs,
        lhs_symplectic: ls,
        rhs_symplectic: rs,
        symplectic_finite_equal,
        trivial_finite_equal,
        arch_defect,
    })
}
