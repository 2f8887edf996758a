//! Isotypic pieces `(P^i (x) W_phi)^G` in the basis `r(e_j)(1 (x) w_l)` and the
//! Knudsen-Mumford identification of their determinant with that of
//! cohomology.

use alloc::vec::Vec;

use super::complex::PerfectComplex;
use super::frame::{FrameSet, IsotypicFrame};
use super::numeric::{c, columns_from, hcat, left_singular, log_abs_det, right_singular, CMat};
use super::MetError;
use crate::groupchar::{CharacterTable, FiniteGroup, GroupRingMatrix, IrrepSet, SharedTable};

/// Table, representations and frames for one group.
#[derive(Clone, Debug)]
pub struct IsotypicContext {
    table: SharedTable,
    irreps: IrrepSet,
    frames: FrameSet,
}

impl IsotypicContext {
    pub fn new(table: SharedTable, irreps: IrrepSet) -> Result<Self, MetError> {
        let frames = FrameSet::new(table.group(), &irreps)?;
        Ok(Self { table, irreps, frames })
    }

    /// Context with representations built from the table alone.
    pub fn from_table(table: SharedTable) -> Result<Self, MetError> {
        let irreps = IrrepSet::build(&table, &[])?;
        Self::new(table, irreps)
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        let t = CharacterTable::compute(FiniteGroup::cyclic(1)).expect("trivial group");
        Self::from_table(alloc::sync::Arc::new(t)).expect("trivial group")
    }

    pub fn table(&self) -> &SharedTable {
        &self.table
    }

    pub fn group(&self) -> &FiniteGroup {
        self.table.group()
    }

    pub fn irreps(&self) -> &IrrepSet {
        &self.irreps
    }

    pub fn frames(&self) -> &FrameSet {
        &self.frames
    }

    pub fn frame(&self, i: usize) -> &IsotypicFrame {
        self.frames.frame(i)
    }

    /// A copy with frame `i` replaced by `w U` for unitary `U`.
    pub fn with_rotated_frame(&self, i: usize, u: &CMat) -> Self {
        let mut out = self.clone();
        out.frames.rotate(i, u);
        out
    }

    /// Index of the trivial character.
    pub fn trivial_index(&self) -> usize {
        let t = self.table.trivial();
        t.coeffs.iter().position(|&c| c == 1).expect("trivial character present")
    }
}

/// Matrix of the map induced by `B` (with `d(e_j) = sum_k B_kj e_k`) in the
/// bases `beta_(j,l) = r(e_j)(1 (x) w_l)`: entry `[(k,m),(j,l)] = L(B^-_kj)_ml`
/// where `x^-` is the involution `g -> g^-1`.
pub fn beta_matrix(frame: &IsotypicFrame, b: &GroupRingMatrix, g: &FiniteGroup) -> CMat {
    let w = frame.width();
    let mut out = CMat::zeros(b.rows() * w, b.cols() * w);
    for k in 0..b.rows() {
        for j in 0..b.cols() {
            let x = b.get(k, j);
            if x.is_zero() {
                continue;
            }
            let l = frame.left_of(&x.bar(g));
            out.view_mut((k * w, j * w), (w, w)).copy_from(&l);
        }
    }
    out
}

/// Columns are the basis vectors `r(a^j)(1 (x) w_l)` for the module basis
/// `a^j = sum_m A_jm e_m`.
pub fn isotypic_basis(frame: &IsotypicFrame, a: &GroupRingMatrix, g: &FiniteGroup) -> CMat {
    beta_matrix(frame, &a.transpose(), g)
}

/// Gram matrix in the beta basis of the form `k (x) nu`, where `k` on
/// `C[G]^d` is given by `H[(j,g),(j',h)] = k(g e_j, h e_j')`.
pub fn beta_gram(frame: &IsotypicFrame, form: &CMat, d: usize, g: &FiniteGroup) -> CMat {
    let n = g.order();
    let w = frame.width();
    let id = g.identity();
    let mut out = CMat::zeros(d * w, d * w);
    for j in 0..d {
        for j2 in 0..d {
            let mut acc = CMat::zeros(w, w);
            for x in 0..n {
                let kx = form[(j * n + id, j2 * n + x)];
                if kx.norm() != 0.0 {
                    acc += frame.left(x).map(|z| z.conj()) * kx;
                }
            }
            out.view_mut((j * w, j2 * w), (w, w)).copy_from(&(acc * c(n as f64)));
        }
    }
    out
}

/// Splitting data for one irreducible: for every position `i`, the matrix
/// `D^i` of the boundary, orthonormal complements `s^i` of its kernel and
/// orthonormal harmonic representatives `h^i` of cohomology.
#[derive(Clone, Debug)]
pub struct KmSplitting {
    dims: Vec<usize>,
    signs: Vec<i32>,
    d: Vec<CMat>,
    ranks: Vec<usize>,
    s: Vec<CMat>,
    h: Vec<CMat>,
}

/// Relative gap required between the last kept and the largest singular value.
const RANK_GAP: f64 = 1e-8;

impl KmSplitting {
    pub fn new(p: &PerfectComplex, ctx: &IsotypicContext, phi: usize) -> Result<Self, MetError> {
        let frame = ctx.frame(phi);
        let rep = ctx.irreps().rep(phi);
        let e = ctx.table().exponent();
        let w = frame.width();
        let dims: Vec<usize> = p.ranks().iter().map(|r| r * w).collect();
        let signs = (0..p.len()).map(|i| p.sign(i)).collect();
        let d: Vec<CMat> = p.boundaries().iter().map(|b| beta_matrix(frame, b, p.group())).collect();
        let mut ranks = Vec::with_capacity(d.len());
        let mut s = Vec::with_capacity(p.len());
        let mut kernels = Vec::with_capacity(p.len());
        for i in 0..p.len() {
            if i < d.len() {
                let r = p.isotypic_rank(i, rep, e);
                let (sv, v) = right_singular(&d[i]);
                let top = sv.first().copied().unwrap_or(0.0);
                let kept_ok = r == 0 || sv[r - 1] > RANK_GAP * top;
                let dropped_ok = r == sv.len() || sv[r] <= RANK_GAP * top.max(1.0) * 1e-2;
                if !kept_ok || !dropped_ok {
                    return Err(MetError::RankDeficiency { character: phi, degree: p.degree(i) });
                }
                ranks.push(r);
                s.push(v.columns(0, r).into_owned());
                kernels.push(columns_from(&v, r));
            } else {
                s.push(CMat::zeros(dims[i], 0));
                kernels.push(CMat::identity(dims[i], dims[i]));
            }
        }
        let mut h = Vec::with_capacity(p.len());
        for i in 0..p.len() {
            let z = &kernels[i];
            if i == 0 {
                h.push(z.clone());
                continue;
            }
            let bnd = &d[i - 1] * &s[i - 1];
            let y = z.adjoint() * bnd;
            let (_, u) = left_singular(&y);
            h.push(z * columns_from(&u, ranks[i - 1]));
        }
        Ok(Self { dims, signs, d, ranks, s, h })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, i: usize) -> &CMat {
        &self.d[i]
    }

    /// Rank of the boundary leaving position `i`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Harmonic representatives of cohomology.
    pub fn harmonic(&self) -> &[CMat] {
        &self.h
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        self.h.iter().map(|m| m.ncols()).collect()
    }

    /// `[D s^{i-1} | reps | s^i]`.
    pub fn adapted(&self, i: usize, reps: &CMat) -> CMat {
        let rows = self.dims[i];
        let prev = if i > 0 { &self.d[i - 1] * &self.s[i - 1] } else { CMat::zeros(rows, 0) };
        hcat(&[&prev, reps, &self.s[i]], rows)
    }

    /// `ln` of `prod_i |det V^i / det A^i|^{(-1)^i}`, i.e. the logarithm of
    /// the factor by which the Knudsen-Mumford map sends the wedge of the
    /// columns of `bases` to the wedge of `reps`.
    pub fn log_scale(&self, bases: &[CMat], reps: &[CMat]) -> Result<f64, MetError> {
        let mut acc = 0.0;
        for i in 0..self.dims.len() {
            let a = self.adapted(i, &reps[i]);
            if a.ncols() != self.dims[i] || bases[i].shape() != (self.dims[i], self.dims[i]) {
                return Err(MetError::Shape(alloc::format!("basis at position {i} has the wrong size")));
            }
            let lv = log_abs_det(&bases[i]);
            let la = log_abs_det(&a);
            if !lv.is_finite() || !la.is_finite() {
                return Err(MetError::NotABasis(i));
            }
            acc += self.signs[i] as f64 * (lv - la);
        }
        Ok(acc)
    }

    /// `ln` of the norm of the wedge of `reps` under the metric of Example 2.5
    /// built from per-position Gram matrices in the beta basis.
    pub fn log_norm_from_grams(&self, grams: &[CMat], reps: &[CMat]) -> Result<f64, MetError> {
        let mut acc = 0.0;
        for i in 0..self.dims.len() {
            let a = self.adapted(i, &reps[i]);
            let gram = a.transpose() * &grams[i] * a.map(|z| z.conj());
            let ld = super::numeric::log_det_hpd(&gram).ok_or(MetError::NotPositiveDefinite)?;
            acc += self.signs[i] as f64 * 0.5 * ld;
        }
        Ok(acc)
    }
}
