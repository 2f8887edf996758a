//! Dense matrices over exact fields (Q and cyclotomic fields).

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::interval::ComplexInterval;
use super::{CyclotomicNumber, Rational};

/// Minimal field interface used by the exact elimination routines.
pub trait FieldElem: Clone + PartialEq {
    fn is_zero_elem(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_e(&self, o: &Self) -> Self;
    fn sub_e(&self, o: &Self) -> Self;
    fn mul_e(&self, o: &Self) -> Self;
    fn inv_e(&self) -> Option<Self>;
}

impl FieldElem for Rational {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn add_e(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_e(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_e(&self, o: &Self) -> Self {
        self * o
    }
    fn inv_e(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl FieldElem for CyclotomicNumber {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        CyclotomicNumber::zero(self.conductor())
    }
    fn one_like(&self) -> Self {
        CyclotomicNumber::one(self.conductor())
    }
    fn add_e(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_e(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_e(&self, o: &Self) -> Self {
        self * o
    }
    fn inv_e(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RationalMatrix = Mat<Rational>;
pub type CycloMatrix = Mat<CyclotomicNumber>;

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: FieldElem> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Identity using `one` as the template unit.
    pub fn identity_like(n: usize, one: &T) -> Self {
        let z = one.zero_like();
        Self::from_fn(n, n, |r, c| if r == c { one.clone() } else { z.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: FieldElem>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in matrix product");
        let zero = self.data.first().or(o.data.first()).map(FieldElem::zero_like);
        Self::from_fn(self.rows, o.cols, |r, c| {
            let mut acc: Option<T> = None;
            for k in 0..self.cols {
                let a = self.get(r, k);
                let b = o.get(k, c);
                if a.is_zero_elem() || b.is_zero_elem() {
                    continue;
                }
                let p = a.mul_e(b);
                acc = Some(match acc {
                    Some(s) => s.add_e(&p),
                    None => p,
                });
            }
            acc.or_else(|| zero.clone()).expect("nonempty matrix")
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c).add_e(o.get(r, c)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c).sub_e(o.get(r, c)))
    }

    pub fn trace(&self) -> Option<T> {
        let mut it = (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone());
        let first = it.next()?;
        Some(it.fold(first, |a, b| a.add_e(&b)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElem::is_zero_elem)
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero_elem()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).inv_e().expect("nonzero pivot");
            for c in col..self.cols {
                let v = self.get(row, c).mul_e(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero_elem() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for c in col..self.cols {
                    if self.get(row, c).is_zero_elem() {
                        continue;
                    }
                    let v = self.get(r, c).sub_e(&f.mul_e(self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Determinant of a square matrix, or `None` for an empty matrix.
    pub fn det(&self) -> Option<T> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let one = self.data.first()?.one_like();
        let mut m = self.clone();
        let n = self.rows;
        let mut det = one;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero_elem()) else {
                return Some(det.zero_like());
            };
            if p != col {
                m.swap_rows(p, col);
                det = det.zero_like().sub_e(&det);
            }
            let piv = m.get(col, col).clone();
            det = det.mul_e(&piv);
            let inv = piv.inv_e().expect("nonzero pivot");
            for r in col + 1..n {
                if m.get(r, col).is_zero_elem() {
                    continue;
                }
                let f = m.get(r, col).mul_e(&inv);
                for c in col..n {
                    if m.get(col, c).is_zero_elem() {
                        continue;
                    }
                    let v = m.get(r, c).sub_e(&f.mul_e(m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        Some(det)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let one = self.data.first()?.one_like();
        let zero = one.zero_like();
        let mut aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                one.clone()
            } else {
                zero.clone()
            }
        });
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| aug.get(r, c + n).clone()))
    }

    /// Basis of the right kernel `{x : A x = 0}`, as columns of the result.
    pub fn kernel(&self) -> Option<Self> {
        let z = self.data.first()?.zero_like();
        let one = z.one_like();
        let mut m = self.clone();
        let piv = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        Some(Self::from_fn(self.cols, free.len(), |r, k| {
            let f = free[k];
            if r == f {
                one.clone()
            } else if let Some(i) = piv.iter().position(|&p| p == r) {
                z.sub_e(m.get(i, f))
            } else {
                z.clone()
            }
        }))
    }
}

impl CycloMatrix {
    pub fn conj(&self) -> Self {
        self.map(CyclotomicNumber::conj)
    }

    pub fn embed(&self) -> Vec<ComplexInterval> {
        self.data.iter().map(|z| z.embed(1)).collect()
    }

    pub fn to_complex(&self) -> nalgebra::DMatrix<num_complex::Complex64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).approx())
    }
}

impl RationalMatrix {
    pub fn to_cyclo(&self, n: u32) -> CycloMatrix {
        self.map(|r| CyclotomicNumber::from_rational(n, r.clone()))
    }
}
