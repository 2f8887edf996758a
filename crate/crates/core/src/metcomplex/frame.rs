//! Orthonormal bases of the isotypic ideals of C[G] and the matrices of left
//! multiplication on them.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::numeric::{gram_schmidt, CMat};
use super::MetError;
use crate::groupchar::{FiniteGroup, GroupRingElement, IrrepSet};

/// Basis `w_1..w_{n^2}` of the ideal spanned by the matrix coefficients of
/// one irreducible representation, orthonormal for
/// `nu(a, b) = |G| sum_g a_g conj(b_g)`, together with
/// `L(x)_{ml} = nu(x w_l, w_m)` for every group element `x`.
#[derive(Clone, Debug)]
pub struct IsotypicFrame {
    dim: usize,
    basis: CMat,
    left: Vec<CMat>,
}

impl IsotypicFrame {
    pub fn new(g: &FiniteGroup, mats: &[CMat]) -> Result<Self, MetError> {
        let order = g.order();
        let n = mats[0].nrows();
        let scale = 1.0 / libm::sqrt(order as f64);
        let mut cands = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                // coefficient vector of sum_g T_ab(g) g, with nu folded into the scale
                cands.push(nalgebra::DVector::from_fn(order, |x, _| mats[x][(a, b)] / libm::sqrt(order as f64)));
            }
        }
        let q = gram_schmidt(&cands, 1e-9).ok_or(MetError::PrecisionInsufficient(
            "matrix coefficients are numerically dependent",
        ))?;
        if q.ncols() != n * n {
            return Err(MetError::PrecisionInsufficient("isotypic ideal has the wrong dimension"));
        }
        // Euclidean-orthonormal columns; nu-orthonormal after the 1/sqrt|G| scale
        let basis = q * Complex64::new(scale, 0.0);
        let mut frame = Self { dim: n, basis, left: Vec::new() };
        frame.left = (0..order).map(|x| frame.left_matrix(g, x)).collect();
        Ok(frame)
    }

    fn nu(order: usize, a: &nalgebra::DVectorView<Complex64>, b: &nalgebra::DVectorView<Complex64>) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..a.len() {
            s += a[i] * b[i].conj();
        }
        s * order as f64
    }

    fn left_matrix(&self, g: &FiniteGroup, x: usize) -> CMat {
        let order = g.order();
        let k = self.basis.ncols();
        // (x w)_h = w_{x^-1 h}
        let xinv = g.inv(x);
        let moved = DMatrix::from_fn(order, k, |h, l| self.basis[(g.mul(xinv, h), l)]);
        DMatrix::from_fn(k, k, |m, l| Self::nu(order, &moved.column(l), &self.basis.column(m)))
    }

    /// Degree of the irreducible character.
    pub fn degree(&self) -> usize {
        self.dim
    }

    /// Dimension `n^2` of the ideal.
    pub fn width(&self) -> usize {
        self.basis.ncols()
    }

    /// Basis vectors as columns of group-ring coefficients.
    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    pub fn left(&self, x: usize) -> &CMat {
        &self.left[x]
    }

    /// `L(y)` for a group ring element.
    pub fn left_of(&self, y: &GroupRingElement) -> CMat {
        let k = self.width();
        let mut acc = CMat::zeros(k, k);
        for (x, c) in y.coeffs().iter().enumerate() {
            let c = crate::cycloarith::rational_to_f64(c);
            if c != 0.0 {
                acc += &self.left[x] * Complex64::new(c, 0.0);
            }
        }
        acc
    }

    /// The same ideal with basis `w' = w U` for a unitary `U`.
    pub fn rotated(&self, u: &CMat) -> Self {
        let basis = &self.basis * u;
        let uh = u.adjoint();
        let left = self.left.iter().map(|l| &uh * l * u).collect();
        Self { dim: self.dim, basis, left }
    }
}

/// One frame per irreducible character.
#[derive(Clone, Debug)]
pub struct FrameSet {
    frames: Vec<IsotypicFrame>,
}

impl FrameSet {
    pub fn new(g: &FiniteGroup, irreps: &IrrepSet) -> Result<Self, MetError> {
        let frames = irreps
            .reps()
            .iter()
            .map(|r| {
                let mats: Vec<CMat> = (0..g.order()).map(|x| r.matrix(x).to_complex()).collect();
                IsotypicFrame::new(g, &mats)
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { frames })
    }

    pub fn frame(&self, i: usize) -> &IsotypicFrame {
        &self.frames[i]
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Replaces frame `i` by its rotation.
    pub fn rotate(&mut self, i: usize, u: &CMat) {
        self.frames[i] = self.frames[i].rotated(u);
    }
}
