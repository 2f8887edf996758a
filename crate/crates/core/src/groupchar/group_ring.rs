//! The rational group ring Q[G] and matrices over it.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::group::FiniteGroup;
use crate::cycloarith::{prime_factors, Rational};

/// Element `sum_g x_g g` of Q[G].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    coeffs: Vec<Rational>,
}

impl GroupRingElement {
    pub fn zero(n: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); n] }
    }

    /// The group element `x` viewed in Q[G].
    pub fn basis(n: usize, x: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[x] = Rational::one();
        e
    }

    pub fn one(g: &FiniteGroup) -> Self {
        Self::basis(g.order(), g.identity())
    }

    pub fn scalar(g: &FiniteGroup, r: Rational) -> Self {
        let mut e = Self::zero(g.order());
        e.coeffs[g.identity()] = r;
        e
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    /// From `(element, integer coefficient)` pairs.
    pub fn from_sparse(n: usize, terms: &[(usize, i64)]) -> Self {
        let mut e = Self::zero(n);
        for &(x, c) in terms {
            e.coeffs[x] += Rational::from_integer(c.into());
        }
        e
    }

    /// The norm element `sum_g g`.
    pub fn norm_element(n: usize) -> Self {
        Self { coeffs: vec![Rational::one(); n] }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, x: usize) -> &Rational {
        &self.coeffs[x]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    pub fn mul(&self, o: &Self, g: &FiniteGroup) -> Self {
        let mut out = Self::zero(self.coeffs.len());
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out.coeffs[g.mul(a, b)] += x * y;
                }
            }
        }
        out
    }

    /// `sum_g x_g g^-1`.
    pub fn bar(&self, g: &FiniteGroup) -> Self {
        let mut out = Self::zero(self.coeffs.len());
        for (a, x) in self.coeffs.iter().enumerate() {
            out.coeffs[g.inv(a)] = x.clone();
        }
        out
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Whether every coefficient has denominator prime to `p`.
    pub fn is_p_integral(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.coeffs.iter().all(|c| !(c.denom() % &p).is_zero())
    }

    /// Primes dividing some denominator.
    pub fn denominator_primes(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for c in &self.coeffs {
            if let Some(d) = c.denom().abs().to_u64() {
                out.extend(prime_factors(d));
            }
        }
        out
    }
}

/// Matrix with entries in Q[G].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
    order: usize,
}

impl GroupRingMatrix {
    pub fn zero(order: usize, rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![GroupRingElement::zero(order); rows * cols], order }
    }

    pub fn identity(g: &FiniteGroup, n: usize) -> Self {
        let mut m = Self::zero(g.order(), n, n);
        for i in 0..n {
            m.set(i, i, GroupRingElement::one(g));
        }
        m
    }

    pub fn from_fn(order: usize, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GroupRingElement) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries, order }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn get(&self, r: usize, c: usize) -> &GroupRingElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GroupRingElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[GroupRingElement] {
        &self.entries
    }

    /// Ordinary matrix product with entries multiplied in Q[G].
    pub fn mul(&self, o: &Self, g: &FiniteGroup) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in group ring matrix product");
        Self::from_fn(self.order, self.rows, o.cols, |r, c| {
            let mut acc = GroupRingElement::zero(self.order);
            for k in 0..self.cols {
                let a = self.get(r, k);
                let b = o.get(k, c);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b, g));
                }
            }
            acc
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(self.order, self.rows, self.cols, |r, c| self.get(r, c).add(o.get(r, c)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(self.order, self.rows, self.cols, |r, c| self.get(r, c).sub(o.get(r, c)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupRingElement::is_zero)
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, o: &Self) -> Self {
        Self::from_fn(self.order, self.rows + o.rows, self.cols + o.cols, |r, c| {
            if r < self.rows && c < self.cols {
                self.get(r, c).clone()
            } else if r >= self.rows && c >= self.cols {
                o.get(r - self.rows, c - self.cols).clone()
            } else {
                GroupRingElement::zero(self.order)
            }
        })
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(GroupRingElement::is_integral)
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.entries.iter().all(|e| e.is_p_integral(p))
    }

    pub fn denominator_primes(&self) -> BTreeSet<u64> {
        self.entries.iter().flat_map(GroupRingElement::denominator_primes).collect()
    }

    /// Entrywise augmentation, a rational matrix.
    pub fn augmentation(&self) -> crate::cycloarith::RationalMatrix {
        crate::cycloarith::Mat::from_fn(self.rows, self.cols, |r, c| self.get(r, c).augmentation())
    }
}
