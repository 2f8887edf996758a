//! Resolvents `(b | phi) = det sum_g sigma_0(g(b)) T(g^-1)` in certified
//! interval arithmetic.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::classes::eps_infinity_tilde;
use super::descriptor::GaloisData;
use super::FieldError;
use crate::cycloarith::ComplexInterval;
use crate::groupchar::VirtualCharacter;

/// Determinant by elimination with midpoint pivoting. `None` when a pivot
/// cannot be separated from zero.
pub fn interval_det(mut m: Vec<Vec<ComplexInterval>>) -> Option<ComplexInterval> {
    let n = m.len();
    let mut det = ComplexInterval::one();
    for k in 0..n {
        let piv = (k..n).max_by(|&a, &b| m[a][k].mid().norm().total_cmp(&m[b][k].mid().norm()))?;
        if m[piv][k].contains_zero() {
            return None;
        }
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        let inv = m[k][k].recip()?;
        det = det * m[k][k];
        for r in k + 1..n {
            let factor = m[r][k] * inv;
            for c in k + 1..n {
                let t = factor * m[k][c];
                m[r][c] = m[r][c] - t;
            }
        }
    }
    Some(det)
}

/// `(b | phi)` for the irreducible character with index `phi`.
pub fn resolvent(data: &GaloisData, phi: usize) -> Result<ComplexInterval, FieldError> {
    let rep = data.context().irreps().rep(phi);
    let g = data.group();
    let d = rep.dim();
    let mut m = vec![vec![ComplexInterval::zero(); d]; d];
    for x in 0..g.order() {
        let t = rep.matrix(g.inv(x));
        let e = data.embeddings()[x];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                let v = t.get(r, c);
                if !v.is_zero() {
                    *slot = *slot + e * v.embed(1);
                }
            }
        }
    }
    interval_det(m).ok_or_else(|| FieldError::PrecisionInsufficient(format!("resolvent at character {phi}")))
}

/// `prod_i (b | phi_i)^{c_i}`.
pub fn resolvent_virtual(data: &GaloisData, v: &VirtualCharacter) -> Result<ComplexInterval, FieldError> {
    let mut acc = ComplexInterval::one();
    for (i, &c) in v.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let r = resolvent(data, i)?;
        let base = if c < 0 {
            r.recip().ok_or_else(|| FieldError::PrecisionInsufficient(format!("inverse resolvent at character {i}")))?
        } else {
            r
        };
        acc = acc * base.powi(c.unsigned_abs() as u32);
    }
    Ok(acc)
}

/// Both sides of `(x(b) | phi) = (b | phi) det(phi)(x)`.
#[derive(Clone, Debug)]
pub struct GaloisActionCheck {
    pub lhs: ComplexInterval,
    pub rhs: ComplexInterval,
    /// Distance between the midpoints.
    pub residual: f64,
    pub holds: bool,
}

pub fn galois_action_check(data: &GaloisData, phi: usize, x: usize) -> Result<GaloisActionCheck, FieldError> {
    let lhs = resolvent(&data.translated(x), phi)?;
    let det = data.context().irreps().rep(phi).matrix(x).det().expect("nonempty");
    let rhs = resolvent(data, phi)? * det.embed(1);
    Ok(GaloisActionCheck { lhs, rhs, residual: (lhs.mid() - rhs.mid()).norm(), holds: lhs.overlaps(&rhs) })
}

/// One symplectic generator: the certified sign of the resolvent of
/// `psi - psi(1) 1` against the archimedean sign.
#[derive(Clone, Debug)]
pub struct SignComparison {
    pub generator: VirtualCharacter,
    pub resolvent: ComplexInterval,
    pub sign: i8,
    pub eps: i8,
}

impl SignComparison {
    pub fn holds(&self) -> bool {
        self.sign == self.eps
    }
}

/// The sign of `(b | psi - psi(1) 1)` and `eps_infinity_tilde(psi)` on every
/// symplectic generator.
pub fn resolvent_signs(data: &GaloisData) -> Result<Vec<SignComparison>, FieldError> {
    let t = data.table();
    let one = t.trivial();
    let mut out = Vec::new();
    for psi in t.symplectic_generators() {
        let v = psi.sub(&one.scale(psi.degree(t)));
        let r = resolvent_virtual(data, &v)?;
        if !r.im.contains_zero() {
            return Err(FieldError::NotReal(format!("resolvent of {:?} has imaginary part {}", psi.coeffs, r.im.mid)));
        }
        let sign = match r.re.sign() {
            Some(Ordering::Greater) => 1,
            Some(Ordering::Less) => -1,
            _ => {
                return Err(FieldError::PrecisionInsufficient(format!("sign of the resolvent of {:?}", psi.coeffs)))
            }
        };
        let eps = eps_infinity_tilde(data, &psi)?;
        out.push(SignComparison { generator: psi, resolvent: r, sign, eps });
    }
    Ok(out)
}
