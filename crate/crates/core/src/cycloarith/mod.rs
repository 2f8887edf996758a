//! Exact arithmetic in cyclotomic fields, certified complex embeddings and
//! small finite fields.

mod finite_field;
mod interval;
mod matrix;
mod number;

pub use finite_field::{is_prime, prime_factors, FiniteField, Fq};
pub use interval::{Ball, ComplexInterval};
pub use matrix::{CycloMatrix, FieldElem, Mat, RationalMatrix};
pub use number::{cyclotomic_polynomial, euler_phi, rational_to_f64, CyclotomicNumber};

use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{k} is not a unit modulo {n}")]
    NotAUnit { k: i64, n: u32 },
    #[error("interval contains zero; precision insufficient to certify the sign")]
    PrecisionInsufficient,
    #[error("value is not real")]
    NotReal,
    #[error("invalid conductor {0}")]
    InvalidConductor(u32),
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("cannot build the field with {p}^{f} elements")]
    InvalidField { p: u64, f: u32 },
    #[error("requested precision of {0} bits exceeds the supported 53")]
    UnsupportedPrecision(u32),
}

/// Maximum working precision of the interval layer, in bits.
pub const MAX_PRECISION_BITS: u32 = 53;

/// Rejects precisions the interval layer cannot honour.
pub fn check_precision(bits: u32) -> Result<(), CycloError> {
    if bits == 0 || bits > MAX_PRECISION_BITS {
        Err(CycloError::UnsupportedPrecision(bits))
    } else {
        Ok(())
    }
}

pub(crate) mod linalg_q {
    use alloc::vec::Vec;

    use super::{CyclotomicNumber, Mat, Rational};
    use num_traits::Zero;

    /// Solves `sum_i x_i basis[i] = target` over Q, all numbers sharing a conductor.
    pub fn solve_columns(basis: &[CyclotomicNumber], target: &CyclotomicNumber) -> Option<Vec<Rational>> {
        let rows = target.coeffs().len();
        let k = basis.len();
        let mut m = Mat::from_fn(rows, k + 1, |r, c| {
            if c < k {
                basis[c].coeffs()[r].clone()
            } else {
                target.coeffs()[r].clone()
            }
        });
        let piv = m.rref();
        if piv.contains(&k) {
            return None;
        }
        let mut x = alloc::vec![Rational::zero(); k];
        for (i, &p) in piv.iter().enumerate() {
            x[p] = m.get(i, k).clone();
        }
        Some(x)
    }
}
