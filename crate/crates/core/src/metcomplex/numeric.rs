//! Dense complex linear algebra helpers.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

pub(crate) fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Modified Gram-Schmidt with one reorthogonalisation pass. Candidates whose
/// residual falls below `tol` times their norm are skipped.
pub(crate) fn gram_schmidt(cands: &[DVector<Complex64>], tol: f64) -> Option<CMat> {
    let len = cands.first()?.len();
    let mut out: Vec<DVector<Complex64>> = Vec::new();
    for v in cands {
        let n0 = v.norm();
        if n0 == 0.0 {
            continue;
        }
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &out {
                let proj = q.dotc(&r);
                r -= q * proj;
            }
        }
        let n = r.norm();
        if n > tol * n0 {
            out.push(r / c(n));
        }
    }
    Some(DMatrix::from_fn(len, out.len(), |i, j| out[j][i]))
}

/// `ln |det m|`; `-inf` for singular input and `0` for the empty matrix.
pub(crate) fn log_abs_det(m: &CMat) -> f64 {
    assert_eq!(m.nrows(), m.ncols());
    if m.nrows() == 0 {
        return 0.0;
    }
    let lu = m.clone().lu();
    let u = lu.u();
    (0..u.nrows()).map(|i| libm::log(u[(i, i)].norm())).sum()
}

/// `ln det` of a Hermitian positive definite matrix, `None` if Cholesky fails.
pub(crate) fn log_det_hpd(m: &CMat) -> Option<f64> {
    if m.nrows() == 0 {
        return Some(0.0);
    }
    let h = (m + m.adjoint()) * c(0.5);
    let ch = h.cholesky()?;
    let l = ch.l();
    // complex Cholesky takes square roots of negative pivots without failing
    if (0..l.nrows()).any(|i| !(l[(i, i)].re > 0.0) || l[(i, i)].im.abs() > 1e-12 * l[(i, i)].re) {
        return None;
    }
    Some((0..l.nrows()).map(|i| 2.0 * libm::log(l[(i, i)].re)).sum())
}

/// Singular values (descending) and a full unitary matrix of right singular
/// vectors, columns in the same order.
pub(crate) fn right_singular(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.ncols();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let rows = m.nrows().max(n);
    let padded = CMat::from_fn(rows, n, |i, j| if i < m.nrows() { m[(i, j)] } else { c(0.0) });
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sv = idx.iter().map(|&i| svd.singular_values[i]).collect();
    let v = CMat::from_fn(n, n, |r, k| vt[(idx[k], r)].conj());
    (sv, v)
}

/// Left singular vectors of `m` (full, unitary), descending order.
pub(crate) fn left_singular(m: &CMat) -> (Vec<f64>, CMat) {
    right_singular(&m.adjoint())
}

/// Columns `from..` of `m`.
pub(crate) fn columns_from(m: &CMat, from: usize) -> CMat {
    m.columns(from, m.ncols() - from).into_owned()
}

pub(crate) fn hcat(parts: &[&CMat], rows: usize) -> CMat {
    let cols: usize = parts.iter().map(|p| p.ncols()).sum();
    let mut out = CMat::zeros(rows, cols);
    let mut at = 0;
    for p in parts {
        if p.ncols() > 0 {
            out.view_mut((0, at), (rows, p.ncols())).copy_from(*p);
        }
        at += p.ncols();
    }
    out
}

pub(crate) fn block_diag(a: &CMat, b: &CMat) -> CMat {
    let mut out = CMat::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    out.view_mut((0, 0), a.shape()).copy_from(a);
    out.view_mut(a.shape(), b.shape()).copy_from(b);
    out
}

/// Largest entry modulus.
pub(crate) fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}
