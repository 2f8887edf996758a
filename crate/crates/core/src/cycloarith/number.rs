use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::{Ball, ComplexInterval};
use super::{CycloError, Rational};

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Coefficients (constant term first) of the n-th cyclotomic polynomial.
///
/// Built from the product formula over divisors, multiplying and dividing by
/// binomials `x^d - 1`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    let deg = euler_phi(n) as usize;
    // Work with polynomials truncated at degree deg; all intermediate
    // quotients are exact polynomials so truncation does not lose anything
    // we need.
    let mut num: Vec<i64> = vec![0; deg + 1];
    num[0] = 1;
    let mut dens: Vec<u32> = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        match mobius(n / d) {
            1 => {
                // multiply by (x^d - 1), i.e. by -(1 - x^d)
                let d = d as usize;
                for i in (0..=deg).rev() {
                    let shifted = if i >= d { num[i - d] } else { 0 };
                    num[i] = shifted - num[i];
                }
            }
            -1 => dens.push(d),
            _ => {}
        }
    }
    for d in dens {
        // divide by (x^d - 1) as a power series: q = -num * (1 + x^d + x^2d + ...)
        let d = d as usize;
        let mut q = vec![0i64; deg + 1];
        for i in 0..=deg {
            let prev = if i >= d { q[i - d] } else { 0 };
            q[i] = prev - num[i];
        }
        num = q;
    }
    num
}

/// Element of the cyclotomic field Q(zeta_n), stored in the power basis
/// `1, zeta, ..., zeta^(phi(n)-1)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    n: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        Self {
            n,
            coeffs: vec![Rational::zero(); euler_phi(n) as usize],
        }
    }

    pub fn from_rational(n: u32, r: Rational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(n: u32, k: i64) -> Self {
        Self::from_rational(n, Rational::from_integer(BigInt::from(k)))
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    /// `zeta_n^k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let mut full = vec![Rational::zero(); n as usize];
        full[k.rem_euclid(n as i64) as usize] = Rational::one();
        Self::from_full(n, full)
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// Builds from coefficients in the power basis of length <= phi(n).
    pub fn new(n: u32, coeffs: Vec<Rational>) -> Result<Self, CycloError> {
        if n == 0 {
            return Err(CycloError::InvalidConductor(n));
        }
        let phi = euler_phi(n) as usize;
        if coeffs.len() > phi {
            return Err(CycloError::DimensionMismatch);
        }
        let mut c = coeffs;
        c.resize(phi, Rational::zero());
        Ok(Self { n, coeffs: c })
    }

    /// Reduces `sum_i full[i] zeta^i` (any length) into the power basis.
    pub fn from_full(n: u32, full: Vec<Rational>) -> Self {
        let phi = euler_phi(n) as usize;
        let mut a = full;
        if a.len() > n as usize {
            let mut folded = vec![Rational::zero(); n as usize];
            for (i, c) in a.into_iter().enumerate() {
                folded[i % n as usize] += c;
            }
            a = folded;
        }
        if a.len() > phi {
            let poly = cyclotomic_polynomial(n);
            for i in (phi..a.len()).rev() {
                if a[i].is_zero() {
                    continue;
                }
                let c = core::mem::replace(&mut a[i], Rational::zero());
                for (j, &pj) in poly.iter().enumerate().take(phi) {
                    if pj != 0 {
                        a[i - phi + j] -= &c * Rational::from_integer(BigInt::from(pj));
                    }
                }
            }
        }
        a.resize(phi, Rational::zero());
        Self { n, coeffs: a }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// Returns the rational value if the number lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Returns the integer value if the number is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Rewrites the number in Q(zeta_m); `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Result<Self, CycloError> {
        if m == 0 || m % self.n != 0 {
            return Err(CycloError::InvalidConductor(m));
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let step = (m / self.n) as usize;
        let mut full = vec![Rational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[i * step] = c.clone();
        }
        Ok(Self::from_full(m, full))
    }

    fn lift_unchecked(&self, m: u32) -> Self {
        self.lift(m).expect("conductor divides target")
    }

    fn common(a: &Self, b: &Self) -> (Self, Self, u32) {
        let m = a.n.lcm(&b.n);
        (a.lift_unchecked(m), b.lift_unchecked(m), m)
    }

    /// Galois automorphism `zeta -> zeta^k`; `k` must be coprime to the conductor.
    pub fn galois(&self, k: i64) -> Result<Self, CycloError> {
        let n = self.n as i64;
        if k.rem_euclid(n).gcd(&n) != 1 && n > 1 {
            return Err(CycloError::NotAUnit { k, n: self.n });
        }
        let mut full = vec![Rational::zero(); self.n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = ((i as i64) * k).rem_euclid(n) as usize;
            full[j] += c;
        }
        Ok(Self::from_full(self.n, full))
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(self.n as i64 - 1).expect("-1 is a unit")
    }

    /// Units of Z/n in increasing order.
    pub fn galois_exponents(n: u32) -> Vec<i64> {
        (1..=n.max(1) as i64)
            .filter(|k| n == 1 || k.gcd(&(n as i64)) == 1)
            .map(|k| k % n.max(1) as i64)
            .collect()
    }

    /// Norm from Q(zeta_n) to Q: product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let mut acc = CyclotomicNumber::one(self.n);
        for k in Self::galois_exponents(self.n) {
            acc = &acc * &self.galois(k).expect("unit exponent");
        }
        acc.as_rational().expect("norm is rational")
    }

    /// Trace from Q(zeta_n) to Q.
    pub fn trace(&self) -> Rational {
        let mut acc = CyclotomicNumber::zero(self.n);
        for k in Self::galois_exponents(self.n) {
            acc = &acc + &self.galois(k).expect("unit exponent");
        }
        acc.as_rational().expect("trace is rational")
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.n, r.recip()));
        }
        let mut others = CyclotomicNumber::one(self.n);
        for k in Self::galois_exponents(self.n) {
            if k % self.n as i64 != 1 {
                others = &others * &self.galois(k)?;
            }
        }
        let nrm = (&others * self)
            .as_rational()
            .expect("product of conjugates is rational");
        Ok(others.scale(&nrm.recip()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, CycloError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.n);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Image under the embedding `zeta_n -> exp(2 pi i k / n)` as a certified box.
    pub fn embed(&self, k: i64) -> ComplexInterval {
        let n = self.n as i64;
        let mut acc = ComplexInterval::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let root = ComplexInterval::root_of_unity(self.n, (i as i64 * k).rem_euclid(n));
            acc = acc + root.scale(&Ball::from_rational(c));
        }
        acc
    }

    /// Midpoint of the standard embedding.
    pub fn approx(&self) -> num_complex::Complex64 {
        self.embed(1).mid()
    }

    /// Sign of a real cyclotomic number under the standard embedding.
    pub fn certified_sign(&self) -> Result<core::cmp::Ordering, CycloError> {
        if let Some(r) = self.as_rational() {
            return Ok(if r.is_zero() {
                core::cmp::Ordering::Equal
            } else if r.is_positive() {
                core::cmp::Ordering::Greater
            } else {
                core::cmp::Ordering::Less
            });
        }
        if self.conj() != *self {
            return Err(CycloError::NotReal);
        }
        self.embed(1).re.sign().ok_or(CycloError::PrecisionInsufficient)
    }

    /// Smallest n' such that the number lies in Q(zeta_n').
    pub fn minimal_conductor(&self) -> u32 {
        let mut best = self.n;
        for d in 1..self.n {
            if self.n % d != 0 || d >= best {
                continue;
            }
            // z lies in Q(zeta_d) iff it is fixed by every k = 1 mod d
            let fixed = Self::galois_exponents(self.n)
                .into_iter()
                .filter(|k| k.rem_euclid(d as i64) == 1 % d as i64)
                .all(|k| self.galois(k).map(|g| g == *self).unwrap_or(false));
            if fixed {
                best = d;
            }
        }
        best
    }

    /// Rewrites the number with its minimal conductor.
    pub fn normalized(&self) -> Self {
        let m = self.minimal_conductor();
        if m == self.n {
            return self.clone();
        }
        // Solve in the smaller field by matching lifted basis vectors.
        let phi_m = euler_phi(m) as usize;
        let basis: Vec<Self> = (0..phi_m)
            .map(|i| Self::zeta_pow(m, i as i64).lift_unchecked(self.n))
            .collect();
        let sol = super::linalg_q::solve_columns(&basis, self)
            .expect("element lies in the subfield");
        Self {
            n: m,
            coeffs: sol,
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let c = self.approx();
        (c.re, c.im)
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        if self.n == rhs.n {
            return CyclotomicNumber {
                n: self.n,
                coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
            };
        }
        let (a, b, _) = CyclotomicNumber::common(self, rhs);
        &a + &b
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        if self.n != rhs.n {
            let (a, b, _) = CyclotomicNumber::common(self, rhs);
            return &a * &b;
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r);
        }
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut full = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        CyclotomicNumber::from_full(self.n, full)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.n)?,
                _ => write!(f, "({c})*z{}^{i}", self.n)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Converts a rational to the nearest f64 (saturating).
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
