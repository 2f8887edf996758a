//! Positive real values with an optional exact radical form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cycloarith::{rational_to_f64, CyclotomicNumber, Rational};

/// `radicand^(1/index)` with `radicand` a positive real cyclotomic number.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactRoot {
    pub radicand: CyclotomicNumber,
    pub index: u32,
}

/// A positive real number: a float approximation with a relative error
/// bound, optionally backed by an exact radical.
#[derive(Clone, Debug, PartialEq)]
pub struct ArchValue {
    approx: f64,
    rel_tol: f64,
    exact: Option<ExactRoot>,
}

const ROUND: f64 = 4.0 * f64::EPSILON;

fn integer_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    (num_traits::pow::pow(r.clone(), k as usize) == *n).then_some(r)
}

impl ArchValue {
    pub fn one() -> Self {
        Self::from_rational(&Rational::one())
    }

    /// A float value known to relative accuracy `rel_tol`.
    pub fn approximate(x: f64, rel_tol: f64) -> Self {
        Self { approx: x, rel_tol: rel_tol.abs(), exact: None }
    }

    /// Exact positive rational; the absolute value is taken.
    pub fn from_rational(r: &Rational) -> Self {
        let r = r.abs();
        Self {
            approx: rational_to_f64(&r),
            rel_tol: ROUND,
            exact: Some(ExactRoot { radicand: CyclotomicNumber::from_rational(1, r), index: 1 }),
        }
    }

    /// `radicand^(1/index)` for a positive real cyclotomic radicand.
    ///
    /// Returns `None` if the radicand is not certifiably positive real.
    pub fn root(radicand: CyclotomicNumber, index: u32) -> Option<Self> {
        if index == 0 || radicand.certified_sign().ok()? != core::cmp::Ordering::Greater {
            return None;
        }
        let v = radicand.embed(1).re;
        let approx = libm::pow(v.mid, 1.0 / index as f64);
        let rel = v.rad / v.mid.abs() / index as f64 + ROUND;
        Some(Self { approx, rel_tol: rel, exact: Some(ExactRoot { radicand, index }) })
    }

    pub fn value(&self) -> f64 {
        self.approx
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn exact(&self) -> Option<&ExactRoot> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Drops the exact form.
    pub fn forget_exact(&self) -> Self {
        Self { exact: None, ..self.clone() }
    }

    /// Attaches an exact form, keeping the float value.
    pub fn with_exact(&self, e: ExactRoot) -> Self {
        Self { exact: Some(e), ..self.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let exact = match (&self.exact, &o.exact) {
            (Some(a), Some(b)) => {
                let l = a.index.lcm(&b.index);
                let ra = a.radicand.pow((l / a.index) as i64).expect("nonnegative power");
                let rb = b.radicand.pow((l / b.index) as i64).expect("nonnegative power");
                Some(simplify(ExactRoot { radicand: &ra * &rb, index: l }))
            }
            _ => None,
        };
        Self { approx: self.approx * o.approx, rel_tol: self.rel_tol + o.rel_tol + ROUND, exact }
    }

    pub fn inv(&self) -> Self {
        let exact = self.exact.as_ref().map(|e| ExactRoot {
            radicand: e.radicand.inv().expect("positive radicand"),
            index: e.index,
        });
        Self { approx: 1.0 / self.approx, rel_tol: self.rel_tol + ROUND, exact }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn powi(&self, k: i64) -> Self {
        let exact = self.exact.as_ref().map(|e| {
            simplify(ExactRoot { radicand: e.radicand.pow(k).expect("positive radicand"), index: e.index })
        });
        Self {
            approx: libm::pow(self.approx, k as f64),
            rel_tol: self.rel_tol * k.unsigned_abs() as f64 + ROUND,
            exact,
        }
    }

    /// `self^(1/m)`.
    pub fn nth_root(&self, m: u32) -> Self {
        let exact = self.exact.as_ref().map(|e| simplify(ExactRoot { radicand: e.radicand.clone(), index: e.index * m }));
        Self {
            approx: libm::pow(self.approx, 1.0 / m as f64),
            rel_tol: self.rel_tol / m as f64 + ROUND,
            exact,
        }
    }

    /// The exact rational value, when the exact form is a rational perfect power.
    pub fn as_rational(&self) -> Option<Rational> {
        let e = self.exact.as_ref()?;
        let r = e.radicand.as_rational()?;
        if !r.is_positive() {
            return None;
        }
        if e.index == 1 {
            return Some(r);
        }
        let n = integer_root(r.numer(), e.index)?;
        let d = integer_root(r.denom(), e.index)?;
        Some(Rational::new(n, d))
    }

    /// Agreement within `tol` relative error plus the accumulated error bounds.
    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        if let (Some(a), Some(b)) = (&self.exact, &o.exact) {
            let l = a.index.lcm(&b.index);
            let ra = a.radicand.pow((l / a.index) as i64).expect("power");
            let rb = b.radicand.pow((l / b.index) as i64).expect("power");
            if ra == rb {
                return true;
            }
        }
        relative_diff(self.approx, o.approx) <= tol + self.rel_tol + o.rel_tol
    }

    /// Relative distance of the float values.
    pub fn rel_diff(&self, o: &Self) -> f64 {
        relative_diff(self.approx, o.approx)
    }
}

pub(crate) fn relative_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Lowers the index when a rational radicand is a perfect power.
fn simplify(e: ExactRoot) -> ExactRoot {
    let Some(r) = e.radicand.as_rational() else { return e };
    if e.index == 1 || r.is_zero() {
        return ExactRoot { radicand: CyclotomicNumber::from_rational(1, r), index: e.index };
    }
    let mut best = (r.clone(), e.index);
    for k in (2..=e.index).rev() {
        if e.index % k != 0 {
            continue;
        }
        if let (Some(n), Some(d)) = (integer_root(r.numer(), k), integer_root(r.denom(), k)) {
            best = (Rational::new(n, d), e.index / k);
            break;
        }
    }
    ExactRoot { radicand: CyclotomicNumber::from_rational(1, best.0), index: best.1 }
}
