//! Midpoint-radius interval arithmetic over f64 with outward error bounds.

use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::number::rational_to_f64;
use super::Rational;

const U: f64 = f64::EPSILON; // 2^-52, twice the unit roundoff
const TINY: f64 = f64::MIN_POSITIVE;

#[inline]
fn up(x: f64) -> f64 {
    // inflate a nonnegative error term computed in round-to-nearest
    x * (1.0 + 2.0 * U) + TINY
}

/// Real ball `[mid - rad, mid + rad]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball {
    pub mid: f64,
    pub rad: f64,
}

impl Ball {
    pub const ZERO: Ball = Ball { mid: 0.0, rad: 0.0 };

    pub fn new(mid: f64, rad: f64) -> Self {
        Self { mid, rad: rad.abs() }
    }

    pub fn exact(x: f64) -> Self {
        Self { mid: x, rad: 0.0 }
    }

    pub fn from_rational(r: &Rational) -> Self {
        let m = rational_to_f64(r);
        let rad = if num_traits::Zero::is_zero(r) { 0.0 } else { up(m.abs() * U) };
        Self { mid: m, rad }
    }

    pub fn lo(&self) -> f64 {
        self.mid - self.rad
    }

    pub fn hi(&self) -> f64 {
        self.mid + self.rad
    }

    pub fn contains(&self, x: f64) -> bool {
        (x - self.mid).abs() <= self.rad
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        (self.mid - other.mid).abs() <= up(self.rad + other.rad)
    }

    /// Certified sign, or `None` if the ball meets zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.mid == 0.0 && self.rad == 0.0 {
            Some(Ordering::Equal)
        } else if self.lo() > 0.0 {
            Some(Ordering::Greater)
        } else if self.hi() < 0.0 {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn sqrt(&self) -> Option<Ball> {
        if self.lo() < 0.0 {
            return None;
        }
        let m = libm::sqrt(self.mid);
        let lo = libm::sqrt(self.lo().max(0.0));
        let hi = libm::sqrt(self.hi());
        let rad = (m - lo).max(hi - m);
        Some(Ball { mid: m, rad: up(rad + m * U) })
    }

    pub fn recip(&self) -> Option<Ball> {
        if self.contains_zero() {
            return None;
        }
        let m = 1.0 / self.mid;
        let a = self.mid.abs() - self.rad;
        // |1/x - 1/m| <= rad / (|m| (|m| - rad))
        let rad = self.rad / (self.mid.abs() * a);
        Some(Ball { mid: m, rad: up(rad + m.abs() * U) })
    }
}

impl Add for Ball {
    type Output = Ball;
    fn add(self, o: Ball) -> Ball {
        let m = self.mid + o.mid;
        Ball { mid: m, rad: up(self.rad + o.rad + m.abs() * U) }
    }
}

impl Sub for Ball {
    type Output = Ball;
    fn sub(self, o: Ball) -> Ball {
        self + (-o)
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball { mid: -self.mid, rad: self.rad }
    }
}

impl Mul for Ball {
    type Output = Ball;
    fn mul(self, o: Ball) -> Ball {
        let m = self.mid * o.mid;
        let r = self.mid.abs() * o.rad + o.mid.abs() * self.rad + self.rad * o.rad;
        Ball { mid: m, rad: up(r + m.abs() * U) }
    }
}

/// Rectangular complex interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexInterval {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexInterval {
    pub fn zero() -> Self {
        Self { re: Ball::ZERO, im: Ball::ZERO }
    }

    pub fn one() -> Self {
        Self::exact(Complex64::new(1.0, 0.0))
    }

    pub fn new(re: Ball, im: Ball) -> Self {
        Self { re, im }
    }

    pub fn exact(z: Complex64) -> Self {
        Self { re: Ball::exact(z.re), im: Ball::exact(z.im) }
    }

    /// Box around `z` with the given radius in both coordinates.
    pub fn around(z: Complex64, rad: f64) -> Self {
        Self { re: Ball::new(z.re, rad), im: Ball::new(z.im, rad) }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self { re: Ball::from_rational(r), im: Ball::ZERO }
    }

    /// `exp(2 pi i k / n)`, with exact values at multiples of a quarter turn.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let n64 = n as i64;
        let k = k.rem_euclid(n64);
        if (4 * k) % n64 == 0 {
            let q = (4 * k) / n64;
            let z = match q {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
            return Self::exact(z);
        }
        // Reduce to an angle in (-pi, pi] to keep the argument small.
        let (num, neg) = if 2 * k > n64 { (n64 - k, true) } else { (k, false) };
        let theta = 2.0 * core::f64::consts::PI * (num as f64) / (n as f64);
        // theta carries a relative error of a few ulps; libm cos/sin are
        // accurate to about one ulp.
        let err = 8.0 * U * (1.0 + theta.abs());
        let s = libm::sin(theta);
        let c = libm::cos(theta);
        let im = if neg { -s } else { s };
        Self { re: Ball::new(c, err), im: Ball::new(im, err) }
    }

    pub fn mid(&self) -> Complex64 {
        Complex64::new(self.re.mid, self.im.mid)
    }

    /// Largest coordinate radius.
    pub fn radius(&self) -> f64 {
        self.re.rad.max(self.im.rad)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.re.contains(z.re) && self.im.contains(z.im)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, o: &ComplexInterval) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re, im: -self.im }
    }

    pub fn scale(&self, b: &Ball) -> Self {
        Self { re: self.re * *b, im: self.im * *b }
    }

    /// `|z|^2` as a real ball.
    pub fn abs_sq(&self) -> Ball {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(&self) -> Ball {
        let s = self.abs_sq();
        let s = Ball { mid: s.mid.max(0.0), rad: s.rad };
        s.sqrt().unwrap_or(Ball { mid: 0.0, rad: libm::sqrt(s.hi().max(0.0)) })
    }

    pub fn recip(&self) -> Option<Self> {
        let inv = self.abs_sq().recip()?;
        Some(self.conj().scale(&inv))
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * *self;
        }
        acc
    }
}

impl Add for ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, o: Self) -> Self {
        Self { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, o: Self) -> Self {
        Self { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Neg for ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Mul for ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, o: Self) -> Self {
        Self {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}
