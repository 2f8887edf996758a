//! The arithmetic class of a metrised complex with chosen global and local
//! bases.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::complex::PerfectComplex;
use super::isotypic::{isotypic_basis, IsotypicContext};
use super::metric::{DetLineMetric, MetrisedComplex};
use super::MetError;
use crate::classrep::{det_of_unit, rational_primes, valuation, ArchValue, ArithClassRep, IdelicCharMap};
use crate::cycloarith::{CyclotomicNumber, Rational};
use crate::groupchar::{CharacterTable, GroupRingMatrix, IrrepSet};

/// Global bases over Q[G] (one square matrix per term, rows are basis
/// vectors in the standard coordinates) and local bases over Z_p[G] for the
/// declared primes; undeclared primes use the standard basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisData {
    pub global: Vec<GroupRingMatrix>,
    pub local: BTreeMap<u64, Vec<GroupRingMatrix>>,
}

impl BasisData {
    /// Standard bases everywhere.
    pub fn standard(p: &PerfectComplex) -> Self {
        Self {
            global: p.ranks().iter().map(|&r| GroupRingMatrix::identity(p.group(), r)).collect(),
            local: BTreeMap::new(),
        }
    }

    pub fn with_global(global: Vec<GroupRingMatrix>) -> Self {
        Self { global, local: BTreeMap::new() }
    }

    /// Concatenation for a direct sum.
    pub fn direct_sum(&self, o: &Self, a: &PerfectComplex, b: &PerfectComplex) -> Self {
        let global = self.global.iter().zip(&o.global).map(|(x, y)| x.block_diag(y)).collect();
        let mut local = BTreeMap::new();
        for p in self.local.keys().chain(o.local.keys()) {
            let x = self.local.get(p).cloned().unwrap_or_else(|| BasisData::standard(a).global);
            let y = o.local.get(p).cloned().unwrap_or_else(|| BasisData::standard(b).global);
            local.insert(*p, x.iter().zip(&y).map(|(u, v)| u.block_diag(v)).collect());
        }
        Self { global, local }
    }
}

/// `prod_chi Det(x)(chi)^{chi(1)}`, the determinant of `x` acting on
/// `Q[G]^d` by the regular representation.
pub fn reduced_norm_product(det: &[CyclotomicNumber], t: &CharacterTable) -> Rational {
    let mut acc = CyclotomicNumber::one(1);
    for (i, z) in det.iter().enumerate() {
        acc = &acc * &z.pow(t.degree(i) as i64).expect("nonzero");
    }
    acc.as_rational().expect("regular determinant is rational")
}

/// Primes `p` for which `x` fails to lie in `GL(Z_p[G])`.
pub fn nonunit_support(x: &GroupRingMatrix, t: &CharacterTable, irreps: &IrrepSet) -> Result<BTreeSet<u64>, MetError> {
    let det = det_of_unit(x, t, irreps)?;
    let mut out: BTreeSet<u64> = x.denominator_primes();
    out.extend(rational_primes(&reduced_norm_product(&det, t)));
    Ok(out)
}

fn is_local_unit(x: &GroupRingMatrix, p: u64, t: &CharacterTable, irreps: &IrrepSet) -> Result<bool, MetError> {
    if !x.is_p_integral(p) {
        return Ok(false);
    }
    let det = det_of_unit(x, t, irreps)?;
    Ok(valuation(&reduced_norm_product(&det, t), p) == 0)
}

fn check_bases(m: &MetrisedComplex, b: &BasisData) -> Result<(), MetError> {
    let p = m.complex();
    let ctx = m.context();
    let shape_ok = |v: &[GroupRingMatrix]| {
        v.len() == p.len() && v.iter().zip(p.ranks()).all(|(x, &r)| x.rows() == r && x.cols() == r)
    };
    if !shape_ok(&b.global) {
        return Err(MetError::Shape("one square global basis per term".into()));
    }
    for (i, a) in b.global.iter().enumerate() {
        det_of_unit(a, ctx.table(), ctx.irreps()).map_err(|_| MetError::NotABasis(i))?;
    }
    for (&q, v) in &b.local {
        if !shape_ok(v) {
            return Err(MetError::Shape("one square local basis per term".into()));
        }
        for (i, x) in v.iter().enumerate() {
            if !is_local_unit(x, q, ctx.table(), ctx.irreps())? {
                return Err(MetError::NotALocalBasis { p: q, degree: p.degree(i) });
            }
        }
    }
    Ok(())
}

/// The primes at which the finite coordinate is recorded: those where some
/// global basis differs from the local one by a non-unit, plus all declared
/// local primes.
pub fn class_support(m: &MetrisedComplex, b: &BasisData) -> Result<BTreeSet<u64>, MetError> {
    let ctx = m.context();
    let mut out: BTreeSet<u64> = b.local.keys().copied().collect();
    for a in &b.global {
        out.extend(nonunit_support(a, ctx.table(), ctx.irreps())?);
    }
    Ok(out)
}

fn finite_part(
    p: &PerfectComplex,
    ctx: &IsotypicContext,
    b: &BasisData,
    support: &BTreeSet<u64>,
) -> Result<IdelicCharMap, MetError> {
    let t = ctx.table();
    let n = ctx.irreps().len();
    let global: Vec<Vec<CyclotomicNumber>> =
        b.global.iter().map(|a| det_of_unit(a, t, ctx.irreps())).collect::<Result<_, _>>()?;
    let mut fin = IdelicCharMap::new();
    for &q in support {
        let mut vals: Vec<CyclotomicNumber> = (0..n).map(|_| CyclotomicNumber::one(1)).collect();
        for i in 0..p.len() {
            let mut ratio = global[i].clone();
            if let Some(loc) = b.local.get(&q) {
                let dl = det_of_unit(&loc[i], t, ctx.irreps())?;
                ratio = ratio.iter().zip(&dl).map(|(x, y)| x * &y.inv().expect("unit")).collect();
            }
            for (v, r) in vals.iter_mut().zip(&ratio) {
                let r = if p.sign(i) > 0 { r.clone() } else { r.inv().expect("unit") };
                *v = &*v * &r;
            }
        }
        fin.insert(q, vals);
    }
    Ok(fin)
}

/// Logarithm of `p_phi(xi_phi(wedge of the isotypic basis))`.
pub fn log_arch_norm(m: &MetrisedComplex, b: &BasisData, phi: usize) -> Result<f64, MetError> {
    let ctx = m.context();
    let p = m.complex();
    let frame = ctx.frame(phi);
    let bases: Vec<_> = b.global.iter().map(|a| isotypic_basis(frame, a, p.group())).collect();
    let metric = m.metric(phi);
    Ok(metric.log_norm() + m.splitting(phi).log_scale(&bases, metric.reps())?)
}

fn archimedean_part(m: &MetrisedComplex, b: &BasisData) -> Result<Vec<ArchValue>, MetError> {
    let t = m.context().table().clone();
    (0..t.num_irreducibles())
        .map(|phi| {
            let l = log_arch_norm(m, b, phi)? / t.degree(phi) as f64;
            // float SVD and determinant error; dimensions here are small
            let dim: usize = m.splitting(phi).dims().iter().sum();
            Ok(ArchValue::approximate(libm::exp(l), 1e-13 * (dim.max(1) as f64)))
        })
        .collect()
}

/// The arithmetic class of a metrised complex: finite coordinate
/// `prod_i Det(lambda_p^i)^{(-1)^i}` at each supported prime, with
/// `lambda_p^i` the change from local to global basis, and archimedean
/// coordinate `p_phi(xi_phi(...))^{1/phi(1)}`.
pub fn arithmetic_class(m: &MetrisedComplex, b: &BasisData) -> Result<ArithClassRep, MetError> {
    check_bases(m, b)?;
    let support = class_support(m, b)?;
    let ctx = m.context();
    let fin = finite_part(m.complex(), ctx, b, &support)?;
    let arch = archimedean_part(m, b)?;
    Ok(ArithClassRep::new(ctx.table().clone(), fin, arch))
}

/// The class of the G-fixed-point complex over the trivial group, with the
/// metric carried by the trivial character and augmented bases. The finite
/// coordinate is recorded on the support of the class over G so that the
/// two representatives can be compared entry by entry.
pub fn fixed_point_class(m: &MetrisedComplex, b: &BasisData) -> Result<ArithClassRep, MetError> {
    check_bases(m, b)?;
    let support = class_support(m, b)?;
    let fixed = m.complex().fixed_points();
    let ctx = Arc::new(IsotypicContext::trivial());
    let one = m.context().trivial_index();
    let src = m.metric(one);
    let metric = DetLineMetric::new(src.reps().to_vec(), src.norm())?;
    let mc = MetrisedComplex::with_metrics(fixed.clone(), ctx.clone(), alloc::vec![metric])?;
    let aug = |v: &[GroupRingMatrix]| -> Vec<GroupRingMatrix> {
        v.iter()
            .map(|x| {
                GroupRingMatrix::from_fn(1, x.rows(), x.cols(), |r, c| {
                    crate::groupchar::GroupRingElement::from_coeffs(alloc::vec![x.get(r, c).augmentation()])
                })
            })
            .collect()
    };
    let fb = BasisData {
        global: aug(&b.global),
        local: b.local.iter().map(|(p, v)| (*p, aug(v))).collect(),
    };
    let fin = finite_part(&fixed, &ctx, &fb, &support)?;
    let arch = archimedean_part(&mc, &fb)?;
    Ok(ArithClassRep::new(ctx.table().clone(), fin, arch))
}

/// Representative-level comparison: the largest discrepancy between the
/// trivial-character coordinate of the class and the fixed-point class.
/// Finite values must agree exactly (`None` otherwise); the returned float
/// is the relative archimedean difference.
pub fn fixed_point_defect(m: &MetrisedComplex, b: &BasisData) -> Result<Option<f64>, MetError> {
    let c = arithmetic_class(m, b)?;
    let h = fixed_point_class(m, b)?;
    let one = m.context().trivial_index();
    let primes: BTreeSet<u64> = c.fin().support().chain(h.fin().support()).collect();
    for q in primes {
        if c.fin_value(q, one) != h.fin_value(q, 0) {
            return Ok(None);
        }
    }
    Ok(Some(c.arch()[one].rel_diff(&h.arch()[0])))
}

/// The finite coordinate at one prime, whether or not it lies in the
/// support.
pub fn finite_value_at(m: &MetrisedComplex, b: &BasisData, p: u64) -> Result<Vec<CyclotomicNumber>, MetError> {
    check_bases(m, b)?;
    let support: BTreeSet<u64> = [p].into_iter().collect();
    let fin = finite_part(m.complex(), m.context(), b, &support)?;
    let n = m.context().irreps().len();
    Ok(fin.get(p).map_or_else(|| (0..n).map(|_| CyclotomicNumber::one(1)).collect(), <[_]>::to_vec))
}
