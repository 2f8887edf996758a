//! Tame Gauss sums over finite fields, computed exactly.

use alloc::format;
use alloc::vec;

use num_integer::Integer;

use super::FieldError;
use crate::cycloarith::{is_prime, CyclotomicNumber, FiniteField};

/// `tau(chi) = sum_{x in F_q^x} chi(x)^-1 zeta_p^{Tr(x)}` in `Q(zeta_{pe})`,
/// where `chi(gamma) = zeta_e^exponent` on the primitive element `gamma` of
/// [`FiniteField`].
#[derive(Clone, Debug, PartialEq)]
pub struct GaussSumResult {
    pub value: CyclotomicNumber,
    pub p: u64,
    pub q: u64,
    pub e: u32,
    pub exponent: i64,
}

impl GaussSumResult {
    /// `tau * conj(tau)`.
    pub fn abs_sq(&self) -> CyclotomicNumber {
        &self.value * &self.value.conj()
    }

    pub fn is_trivial_character(&self) -> bool {
        self.exponent.rem_euclid(self.e as i64) == 0
    }

    /// `chi(-1)`.
    pub fn chi_minus_one(&self) -> CyclotomicNumber {
        if self.p == 2 {
            return CyclotomicNumber::one(1);
        }
        let half = ((self.q - 1) / 2) as i64;
        CyclotomicNumber::zeta_pow(self.e, (self.exponent * half).rem_euclid(self.e as i64))
    }
}

pub fn tame_gauss_sum(p: u64, q: u64, e: u32, exponent: i64) -> Result<GaussSumResult, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::BadOrder(format!("{p} is not prime")));
    }
    let mut f = 0u32;
    let mut r = q;
    while r > 1 && r % p == 0 {
        r /= p;
        f += 1;
    }
    if r != 1 || f == 0 {
        return Err(FieldError::BadOrder(format!("{q} is not a power of {p}")));
    }
    if e == 0 || (e as u64) % p == 0 || (q - 1) % e as u64 != 0 {
        return Err(FieldError::BadOrder(format!("order {e} must be prime to {p} and divide {}", q - 1)));
    }
    let k = FiniteField::new(p, f)?;
    let gamma = k.primitive_element();
    let n = (p as u32) * e;
    let (e64, n64) = (e as i64, n as i64);
    debug_assert_eq!((p as u32).gcd(&e), 1);
    let mut counts = vec![0i64; n as usize];
    let mut x = k.one();
    for j in 0..(q - 1) as i64 {
        let tr = k.trace(&x) as i64;
        // zeta_e = zeta_n^p and zeta_p = zeta_n^e
        let m = (-exponent.rem_euclid(e64) * (j % e64) * p as i64 + tr * e64).rem_euclid(n64);
        counts[m as usize] += 1;
        x = k.mul(&x, &gamma);
    }
    let mut value = CyclotomicNumber::zero(n);
    for (m, &c) in counts.iter().enumerate() {
        if c != 0 {
            value = &value + &CyclotomicNumber::zeta_pow(n, m as i64).scale(&crate::cycloarith::rat(c, 1));
        }
    }
    Ok(GaussSumResult { value, p, q, e, exponent })
}
