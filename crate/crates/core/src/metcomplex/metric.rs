//! Hermitian forms on the terms of a complex and the metrics they induce on
//! equivariant determinants of cohomology.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::complex::{CochainMap, PerfectComplex};
use super::isotypic::{beta_gram, beta_matrix, IsotypicContext, KmSplitting};
use super::numeric::{block_diag, c, log_abs_det, CMat};
use super::MetError;
use crate::cycloarith::rational_to_f64;
use crate::groupchar::{FiniteGroup, GroupRingMatrix};

/// `mu(x, y) = sum_g x_g conj(y_g)` on coefficient vectors.
pub fn mu(x: &[num_complex::Complex64], y: &[num_complex::Complex64]) -> num_complex::Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

/// `nu = |G| mu`.
pub fn nu(x: &[num_complex::Complex64], y: &[num_complex::Complex64]) -> num_complex::Complex64 {
    mu(x, y) * x.len() as f64
}

/// A G-invariant positive definite Hermitian form on `C[G]^d`, stored as the
/// matrix `H[(j,g),(j',h)] = k(g e_j, h e_j')`, linear in the first slot.
#[derive(Clone, Debug)]
pub struct HermitianForm {
    rank: usize,
    matrix: CMat,
}

impl HermitianForm {
    /// Validates symmetry, invariance and positivity.
    pub fn new(g: &FiniteGroup, rank: usize, matrix: CMat) -> Result<Self, MetError> {
        let n = g.order();
        let size = rank * n;
        if matrix.shape() != (size, size) {
            return Err(MetError::Shape(format!("form must be {size}x{size}")));
        }
        let scale = super::numeric::max_abs(&matrix).max(1.0);
        let tol = 1e-10 * scale;
        if super::numeric::max_abs(&(&matrix - matrix.adjoint())) > tol {
            return Err(MetError::NotHermitian);
        }
        for x in 0..n {
            for j in 0..rank {
                for j2 in 0..rank {
                    for a in 0..n {
                        for b in 0..n {
                            let moved = matrix[(j * n + g.mul(x, a), j2 * n + g.mul(x, b))];
                            if (moved - matrix[(j * n + a, j2 * n + b)]).norm() > tol {
                                return Err(MetError::NotInvariant);
                            }
                        }
                    }
                }
            }
        }
        if super::numeric::log_det_hpd(&matrix).is_none() {
            return Err(MetError::NotPositiveDefinite);
        }
        Ok(Self { rank, matrix })
    }

    /// `mu` on every coordinate.
    pub fn standard(g: &FiniteGroup, rank: usize) -> Self {
        Self { rank, matrix: CMat::identity(rank * g.order(), rank * g.order()) }
    }

    /// `k(x, y) = mu(x M, y M)` for an invertible `M` over Q[G], where
    /// `x M` is the row vector `x` times `M`.
    pub fn from_right_factor(g: &FiniteGroup, m: &GroupRingMatrix) -> Result<Self, MetError> {
        let n = g.order();
        let (rows, cols) = (m.rows(), m.cols());
        // R[(j,a),(k,b)] = coefficient of b in a M_jk
        let mut r = CMat::zeros(rows * n, cols * n);
        for j in 0..rows {
            for k in 0..cols {
                for (y, cy) in m.get(j, k).coeffs().iter().enumerate() {
                    let v = rational_to_f64(cy);
                    if v == 0.0 {
                        continue;
                    }
                    for a in 0..n {
                        r[(j * n + a, k * n + g.mul(a, y))] += c(v);
                    }
                }
            }
        }
        let h = &r * r.adjoint();
        Self::new(g, rows, h)
    }

    /// `t k`.
    pub fn scaled(&self, t: f64) -> Self {
        Self { rank: self.rank, matrix: &self.matrix * c(t) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// `k(x, y)` for coefficient vectors of length `d |G|`.
    pub fn eval(&self, x: &[num_complex::Complex64], y: &[num_complex::Complex64]) -> num_complex::Complex64 {
        let xv = CMat::from_column_slice(x.len(), 1, x);
        let yv = CMat::from_column_slice(y.len(), 1, y);
        (xv.transpose() * &self.matrix * yv.map(|z| z.conj()))[(0, 0)]
    }
}

/// Metric on `det H_phi`: the wedge of `reps` (one block of column vectors per
/// position, in beta coordinates, alternating in the usual way) has norm
/// `exp(log_norm)`.
#[derive(Clone, Debug)]
pub struct DetLineMetric {
    reps: Vec<CMat>,
    log_norm: f64,
}

impl DetLineMetric {
    pub fn new(reps: Vec<CMat>, norm: f64) -> Result<Self, MetError> {
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(MetError::Shape("metric norm must be positive".into()));
        }
        Ok(Self { reps, log_norm: libm::log(norm) })
    }

    pub fn reps(&self) -> &[CMat] {
        &self.reps
    }

    pub fn norm(&self) -> f64 {
        libm::exp(self.log_norm)
    }

    pub fn log_norm(&self) -> f64 {
        self.log_norm
    }

    /// Same metric, reference vector multiplied by `z` in position `i`'s first
    /// column: the norm scales by `|z|^{+-1}`.
    pub fn rescale_reference(&self, i: usize, sign: i32, z: num_complex::Complex64) -> Self {
        let mut reps = self.reps.clone();
        if reps[i].ncols() > 0 {
            let col = reps[i].column(0) * z;
            reps[i].set_column(0, &col);
        }
        Self { reps, log_norm: self.log_norm + sign as f64 * libm::log(z.norm()) }
    }

    fn scaled(&self, t: f64) -> Self {
        Self { reps: self.reps.clone(), log_norm: self.log_norm + libm::log(t) }
    }
}

/// A perfect complex with one metric per irreducible character.
#[derive(Clone, Debug)]
pub struct MetrisedComplex {
    complex: PerfectComplex,
    ctx: Arc<IsotypicContext>,
    splittings: Vec<KmSplitting>,
    metrics: Vec<DetLineMetric>,
}

fn splittings(p: &PerfectComplex, ctx: &IsotypicContext) -> Result<Vec<KmSplitting>, MetError> {
    if p.group() != ctx.group() {
        return Err(MetError::Shape("complex and context use different groups".into()));
    }
    (0..ctx.irreps().len()).map(|i| KmSplitting::new(p, ctx, i)).collect()
}

impl MetrisedComplex {
    /// Explicit metrics; the reference vectors must have the cohomology dimensions.
    pub fn with_metrics(complex: PerfectComplex, ctx: Arc<IsotypicContext>, metrics: Vec<DetLineMetric>) -> Result<Self, MetError> {
        let splittings = splittings(&complex, &ctx)?;
        if metrics.len() != splittings.len() {
            return Err(MetError::Shape("one metric per irreducible is required".into()));
        }
        for (sp, m) in splittings.iter().zip(&metrics) {
            let ok = m.reps.len() == sp.dims().len()
                && m.reps.iter().zip(sp.harmonic()).zip(sp.dims()).all(|((r, h), &d)| r.shape() == (d, h.ncols()));
            if !ok {
                return Err(MetError::Shape("reference vectors do not match cohomology".into()));
            }
        }
        Ok(Self { complex, ctx, splittings, metrics })
    }

    /// The metric induced by Hermitian forms on each term.
    pub fn from_forms(complex: PerfectComplex, ctx: Arc<IsotypicContext>, forms: &[HermitianForm]) -> Result<Self, MetError> {
        if forms.len() != complex.len() || forms.iter().zip(complex.ranks()).any(|(f, &r)| f.rank != r) {
            return Err(MetError::Shape("one form per term with matching rank".into()));
        }
        let splittings = splittings(&complex, &ctx)?;
        let mut metrics = Vec::with_capacity(splittings.len());
        for (phi, sp) in splittings.iter().enumerate() {
            let grams: Vec<CMat> = forms
                .iter()
                .map(|f| beta_gram(ctx.frame(phi), &f.matrix, f.rank, complex.group()))
                .collect();
            let reps = sp.harmonic().to_vec();
            let log_norm = sp.log_norm_from_grams(&grams, &reps)?;
            metrics.push(DetLineMetric { reps, log_norm });
        }
        Ok(Self { complex, ctx, splittings, metrics })
    }

    /// The metric in which the harmonic representatives of the splitting
    /// have norm one; on an acyclic complex this is the canonical metric on
    /// the trivial line.
    pub fn unit(complex: PerfectComplex, ctx: Arc<IsotypicContext>) -> Result<Self, MetError> {
        let splittings = splittings(&complex, &ctx)?;
        let metrics = splittings.iter().map(|sp| DetLineMetric { reps: sp.harmonic().to_vec(), log_norm: 0.0 }).collect();
        Ok(Self { complex, ctx, splittings, metrics })
    }

    /// Forms equal to `mu` on every term.
    pub fn standard(complex: PerfectComplex, ctx: Arc<IsotypicContext>) -> Result<Self, MetError> {
        let forms: Vec<HermitianForm> = complex.ranks().iter().map(|&r| HermitianForm::standard(complex.group(), r)).collect();
        Self::from_forms(complex, ctx, &forms)
    }

    pub fn complex(&self) -> &PerfectComplex {
        &self.complex
    }

    pub fn context(&self) -> &Arc<IsotypicContext> {
        &self.ctx
    }

    pub fn splitting(&self, phi: usize) -> &KmSplitting {
        &self.splittings[phi]
    }

    pub fn metric(&self, phi: usize) -> &DetLineMetric {
        &self.metrics[phi]
    }

    pub fn metrics(&self) -> &[DetLineMetric] {
        &self.metrics
    }

    /// Replaces `p_phi` by `alpha(phi)^{phi(1)} p_phi`.
    pub fn rescaled(&self, alpha: &[f64]) -> Result<Self, MetError> {
        if alpha.len() != self.metrics.len() || alpha.iter().any(|a| !(*a > 0.0)) {
            return Err(MetError::Shape("one positive scale per irreducible".into()));
        }
        let metrics = self
            .metrics
            .iter()
            .enumerate()
            .map(|(i, m)| m.scaled(libm::pow(alpha[i], self.ctx.table().degree(i) as f64)))
            .collect();
        Ok(Self { metrics, ..self.clone() })
    }

    /// Termwise direct sum with the product metrics.
    pub fn direct_sum(&self, o: &Self) -> Result<Self, MetError> {
        if !Arc::ptr_eq(&self.ctx, &o.ctx) {
            return Err(MetError::Shape("direct sum needs one shared context".into()));
        }
        let complex = self.complex.direct_sum(&o.complex)?;
        let metrics = self
            .metrics
            .iter()
            .zip(&o.metrics)
            .map(|(a, b)| {
                let reps = (0..complex.len())
                    .map(|i| block_diag(&a.reps[i], &b.reps[i]))
                    .collect();
                DetLineMetric { reps, log_norm: a.log_norm + b.log_norm }
            })
            .collect();
        Self::with_metrics(complex, self.ctx.clone(), metrics)
    }

    /// Metrics on `source` induced from `target`'s through a quasi-isomorphism.
    pub fn transport(source: PerfectComplex, alpha: &CochainMap, target: &Self) -> Result<Self, MetError> {
        let ctx = target.ctx.clone();
        let own = splittings(&source, &ctx)?;
        let g = source.group().clone();
        let mut metrics = Vec::with_capacity(own.len());
        for (phi, sp) in own.iter().enumerate() {
            let tsp = &target.splittings[phi];
            let tm = &target.metrics[phi];
            let mut log_norm = tm.log_norm;
            for i in 0..source.len() {
                let a = beta_matrix(ctx.frame(phi), alpha.map(i), &g);
                let image = a * &sp.harmonic()[i];
                let hd = tm.reps[i].ncols();
                if image.ncols() != hd {
                    return Err(MetError::NotQuasiIso(format!(
                        "cohomology dimensions differ at degree {}",
                        source.degree(i)
                    )));
                }
                if hd == 0 {
                    continue;
                }
                let adapted = tsp.adapted(i, &tm.reps[i]);
                let lu = adapted.lu();
                let x = lu.solve(&image).ok_or(MetError::NotQuasiIso("target basis is singular".into()))?;
                let off = if i > 0 { tsp.ranks()[i - 1] } else { 0 };
                let m = x.rows(off, hd).into_owned();
                let tail = x.rows(off + hd, x.nrows() - off - hd).into_owned();
                if super::numeric::max_abs(&tail) > 1e-8 * super::numeric::max_abs(&x).max(1.0) {
                    return Err(MetError::NotQuasiIso("image of a cocycle is not a cocycle".into()));
                }
                let (sv, _) = super::numeric::right_singular(&m);
                let ld = log_abs_det(&m);
                if !ld.is_finite() || sv[hd - 1] < 1e-10 * sv[0] {
                    return Err(MetError::NotQuasiIso(format!(
                        "map on cohomology is not invertible at degree {}",
                        source.degree(i)
                    )));
                }
                log_norm += source.sign(i) as f64 * ld;
            }
            metrics.push(DetLineMetric { reps: sp.harmonic().to_vec(), log_norm });
        }
        Ok(Self { complex: source, ctx, splittings: own, metrics })
    }

    /// `(||alpha^-1(x)||_1, ||x||_2)` for `x = sum_(j,l) c_(j,l) alpha(beta_(j,l))`
    /// in the isotypic component of character `phi`.
    pub fn isometry_norms(ctx: &IsotypicContext, form: &HermitianForm, phi: usize, coeffs: &[num_complex::Complex64]) -> (f64, f64) {
        let g = ctx.group();
        let n = g.order();
        let d = form.rank;
        let frame = ctx.frame(phi);
        let w = frame.width();
        assert_eq!(coeffs.len(), d * w);
        let cv = CMat::from_column_slice(d * w, 1, coeffs);
        let gram = beta_gram(frame, &form.matrix, d, g);
        let n1 = (cv.transpose() * &gram * cv.map(|z| z.conj()))[(0, 0)].re;
        let mut x = CMat::zeros(d * n, 1);
        for j in 0..d {
            for l in 0..w {
                for y in 0..n {
                    x[(j * n + g.inv(y), 0)] += frame.basis()[(y, l)] * (n as f64) * coeffs[j * w + l];
                }
            }
        }
        let n2 = (x.transpose() * &form.matrix * x.map(|z| z.conj()))[(0, 0)].re;
        (libm::sqrt(n1.max(0.0)), libm::sqrt(n2.max(0.0)))
    }

    /// Largest relative deviation, over positions and characters, between
    /// the beta-basis Gram matrix of `k (x) nu` and the Gram matrix under `k`
    /// of the images `alpha(beta_(j,l)) = |G| w_l^- e_j` in the isotypic
    /// component, where `w^-` applies `g -> g^-1` linearly. The map is
    /// an isometry, so this should be at rounding level.
    pub fn isometry_defect(ctx: &IsotypicContext, form: &HermitianForm) -> f64 {
        let g = ctx.group();
        let n = g.order();
        let d = form.rank;
        let mut worst: f64 = 0.0;
        for phi in 0..ctx.irreps().len() {
            let frame = ctx.frame(phi);
            let w = frame.width();
            let gram = beta_gram(frame, &form.matrix, d, g);
            let mut images = CMat::zeros(d * n, d * w);
            for j in 0..d {
                for l in 0..w {
                    for x in 0..n {
                        let v = frame.basis()[(x, l)] * n as f64;
                        images[(j * n + g.inv(x), j * w + l)] = v;
                    }
                }
            }
            let kgram = images.transpose() * &form.matrix * images.map(|z| z.conj());
            let scale = super::numeric::max_abs(&gram).max(f64::MIN_POSITIVE);
            worst = worst.max(super::numeric::max_abs(&(kgram - &gram)) / scale);
        }
        worst
    }
}

