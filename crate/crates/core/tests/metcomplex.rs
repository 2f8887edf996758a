mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tamearith_core::classrep::det_of_unit;
use tamearith_core::cycloarith::{rat, CyclotomicNumber, Rational};
use tamearith_core::groupchar::*;
use tamearith_core::metcomplex::fixtures::*;
use tamearith_core::metcomplex::*;

fn ctx_for(g: &FiniteGroup) -> Arc<IsotypicContext> {
    Arc::new(IsotypicContext::from_table(common::table(g.clone())).unwrap())
}

fn scalar(n: usize, k: i64) -> GroupRingElement {
    GroupRingElement::from_sparse(n, &[(0, k)])
}

fn one_by_one(n: usize, x: GroupRingElement) -> GroupRingMatrix {
    GroupRingMatrix::from_fn(n, 1, 1, |_, _| x.clone())
}

fn rand_complex(rng: &mut ChaCha8Rng, g: &FiniteGroup) -> PerfectComplex {
    let s = ComplexShape::random(rng);
    random_complex(rng, g, s)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn cabs(z: &CyclotomicNumber) -> f64 {
    let (re, im) = z.to_f64_pair();
    re.hypot(im)
}

// Bareiss determinant over the integers, independent of the library's elimination.
fn bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| m[r][k] != 0) else { return 0 };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[test]
fn standard_forms() {
    let g = common::s3();
    let n = g.order();
    let e = |x: usize| -> Vec<Complex64> {
        (0..n).map(|y| Complex64::new(if x == y { 1.0 } else { 0.0 }, 0.0)).collect()
    };
    assert_eq!(mu(&e(0), &e(0)), Complex64::new(1.0, 0.0));
    assert_eq!(nu(&e(3), &e(3)), Complex64::new(n as f64, 0.0));
    assert_eq!(mu(&e(1), &e(2)), Complex64::new(0.0, 0.0));
}

#[test]
fn frames_are_nu_orthonormal_with_square_width() {
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        let n = g.order();
        for phi in 0..ctx.irreps().len() {
            let f = ctx.frame(phi);
            let deg = ctx.table().degree(phi) as usize;
            assert_eq!(f.width(), deg * deg, "{name}");
            let gram = f.basis().adjoint() * f.basis() * Complex64::new(n as f64, 0.0);
            let dev = (gram - CMat::identity(f.width(), f.width())).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(dev < 1e-10, "{name} phi={phi} dev={dev}");
            // the span is a left ideal: L(x) is unitary
            for x in 0..n {
                let l = f.left(x);
                let dev = (l.adjoint() * l - CMat::identity(f.width(), f.width())).iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(dev < 1e-10);
            }
        }
    }
}

#[test]
fn sign_frame_of_c2_is_proportional_to_one_minus_s() {
    let g = FiniteGroup::cyclic(2);
    let ctx = ctx_for(&g);
    let sign = (0..2).find(|&i| ctx.table().value_at(i, 1) == &CyclotomicNumber::from_int(1, -1)).unwrap();
    let w = ctx.frame(sign).basis();
    // nu-normalised multiple of 1 - s is (1 - s)/2
    assert!((w[(0, 0)].norm() - 0.5).abs() < 1e-12);
    assert!((w[(0, 0)] + w[(1, 0)]).norm() < 1e-12);
    let triv = ctx.trivial_index();
    let e = ctx.frame(triv).basis();
    assert!((e[(0, 0)] - e[(1, 0)]).norm() < 1e-12 && (e[(0, 0)].norm() - 0.5).abs() < 1e-12);
}

#[test]
fn q8_two_dimensional_frame_has_four_vectors() {
    let g = common::q8();
    let ctx = ctx_for(&g);
    let phi = (0..ctx.irreps().len()).find(|&i| ctx.table().degree(i) == 2).unwrap();
    assert_eq!(ctx.frame(phi).width(), 4);
}

#[test]
fn isotypic_basis_dimensions() {
    let g = common::d4();
    let ctx = ctx_for(&g);
    for phi in 0..ctx.irreps().len() {
        let deg = ctx.table().degree(phi) as usize;
        let b = isotypic_basis(ctx.frame(phi), &GroupRingMatrix::identity(&g, 3), &g);
        assert_eq!(b.shape(), (3 * deg * deg, 3 * deg * deg));
        let empty = isotypic_basis(ctx.frame(phi), &GroupRingMatrix::identity(&g, 0), &g);
        assert_eq!(empty.shape(), (0, 0));
    }
}

#[test]
fn km_scale_of_times_two_is_two() {
    let g = FiniteGroup::cyclic(1);
    let ctx = ctx_for(&g);
    let p = PerfectComplex::new(g.clone(), 0, vec![1, 1], vec![one_by_one(1, scalar(1, 2))]).unwrap();
    let sp = KmSplitting::new(&p, &ctx, 0).unwrap();
    let id = CMat::identity(1, 1);
    let empty = CMat::zeros(1, 0);
    let l = sp.log_scale(&[id.clone(), id], &[empty.clone(), empty]).unwrap();
    assert!(rel(l.exp(), 2.0) < 1e-14);
    // with the canonical metric on the trivial line the class is (1, 2)
    let m = MetrisedComplex::unit(p.clone(), ctx).unwrap();
    let c = arithmetic_class(&m, &BasisData::standard(&p)).unwrap();
    assert!(rel(c.arch()[0].value(), 2.0) < 1e-14);
}

#[test]
fn km_scale_for_zero_and_identity_boundaries() {
    let g = FiniteGroup::cyclic(1);
    let ctx = ctx_for(&g);
    let zero = PerfectComplex::new(g.clone(), 0, vec![2, 1], vec![GroupRingMatrix::zero(1, 1, 2)]).unwrap();
    let sp = KmSplitting::new(&zero, &ctx, 0).unwrap();
    let reps = sp.harmonic().to_vec();
    // the harmonic representatives of a zero complex are a unitary basis
    let l = sp.log_scale(&[CMat::identity(2, 2), CMat::identity(1, 1)], &reps).unwrap();
    assert!(l.abs() < 1e-14);
    let id = PerfectComplex::new(g.clone(), 0, vec![2, 2], vec![GroupRingMatrix::identity(&g, 2)]).unwrap();
    let sp = KmSplitting::new(&id, &ctx, 0).unwrap();
    let e = CMat::zeros(2, 0);
    let l = sp.log_scale(&[CMat::identity(2, 2), CMat::identity(2, 2)], &[e.clone(), e]).unwrap();
    assert!(l.abs() < 1e-14);
}

#[test]
fn km_scale_on_trivial_group_matches_integer_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = FiniteGroup::cyclic(1);
    let ctx = ctx_for(&g);
    for _ in 0..40 {
        let k = rng.gen_range(1..=4);
        let ints: Vec<Vec<i128>> = (0..k).map(|_| (0..k).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let det = bareiss(ints.clone());
        if det == 0 {
            continue;
        }
        let b = GroupRingMatrix::from_fn(1, k, k, |r, c| scalar(1, ints[r][c] as i64));
        let p = PerfectComplex::new(g.clone(), 0, vec![k, k], vec![b]).unwrap();
        let m = MetrisedComplex::unit(p.clone(), ctx.clone()).unwrap();
        let c = arithmetic_class(&m, &BasisData::standard(&p)).unwrap();
        assert!(rel(c.arch()[0].value(), det.abs() as f64) < 1e-12);
        // finite part: the inverse determinant at every prime dividing it
        for q in c.fin().support() {
            assert_eq!(c.fin_value(q, 0), CyclotomicNumber::from_rational(1, rat(1, det as i64)));
        }
    }
}

#[test]
fn km_scale_per_character_is_reduced_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        let e = ctx.table().exponent();
        for _ in 0..3 {
            let b = random_matrix(&mut rng, g.order(), 2, 2, 2);
            let p = PerfectComplex::new(g.clone(), 0, vec![2, 2], vec![b.clone()]).unwrap();
            let dets: Vec<CyclotomicNumber> = ctx.irreps().reps().iter().map(|r| r.apply_matrix(&b.transpose(), e).det().unwrap()).collect();
            if dets.iter().any(CyclotomicNumber::is_zero) {
                continue;
            }
            let m = MetrisedComplex::unit(p.clone(), ctx.clone()).unwrap();
            let c = arithmetic_class(&m, &BasisData::standard(&p)).unwrap();
            for (phi, d) in dets.iter().enumerate() {
                assert!(rel(c.arch()[phi].value(), cabs(d)) < 1e-9, "{name} phi={phi}");
            }
        }
    }
}

#[test]
fn scaled_standard_form_in_degree_zero() {
    let g = FiniteGroup::cyclic(1);
    let ctx = ctx_for(&g);
    let p = PerfectComplex::single(g.clone(), 0, 1);
    let m = MetrisedComplex::standard(p.clone(), ctx.clone()).unwrap();
    assert!((m.metric(0).norm() - 1.0).abs() < 1e-14);
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        let p = PerfectComplex::single(g.clone(), 0, 1);
        let t = 3.7;
        let base = MetrisedComplex::standard(p.clone(), ctx.clone()).unwrap();
        let scaled = MetrisedComplex::from_forms(p.clone(), ctx.clone(), &[HermitianForm::standard(&g, 1).scaled(t)]).unwrap();
        for phi in 0..ctx.irreps().len() {
            let n2 = (ctx.table().degree(phi) as f64).powi(2);
            let got = scaled.metric(phi).log_norm() - base.metric(phi).log_norm();
            assert!((got - 0.5 * n2 * t.ln()).abs() < 1e-12, "{name}");
        }
    }
}

#[test]
fn acyclic_telescoping_bases_give_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        for _ in 0..4 {
            let d = rng.gen_range(1..=2);
            let (u, _) = random_unimodular(&mut rng, &g, d, 5);
            let p = PerfectComplex::new(g.clone(), 0, vec![d, d], vec![u.transpose()]).unwrap();
            let m = MetrisedComplex::unit(p.clone(), ctx.clone()).unwrap();
            let basis = BasisData::with_global(vec![GroupRingMatrix::identity(&g, d), u]);
            let c = arithmetic_class(&m, &basis).unwrap();
            assert_eq!(c.fin().support().count(), 0, "{name}");
            for a in c.arch() {
                assert!((a.value() - 1.0).abs() < 1e-9, "{name}");
            }
        }
    }
}

#[test]
fn direct_sum_is_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        for _ in 0..2 {
            let p = rand_complex(&mut rng, &g);
            let q = rand_complex(&mut rng, &g);
            let fp: Vec<_> = p.ranks().iter().map(|&r| random_form(&mut rng, &g, r).unwrap()).collect();
            let fq: Vec<_> = q.ranks().iter().map(|&r| random_form(&mut rng, &g, r).unwrap()).collect();
            let mp = MetrisedComplex::from_forms(p.clone(), ctx.clone(), &fp).unwrap();
            let mq = MetrisedComplex::from_forms(q.clone(), ctx.clone(), &fq).unwrap();
            let bp = BasisData::with_global(p.ranks().iter().map(|&r| random_rational_invertible(&mut rng, &g, r)).collect());
            let bq = BasisData::with_global(q.ranks().iter().map(|&r| random_rational_invertible(&mut rng, &g, r)).collect());
            let cp = arithmetic_class(&mp, &bp).unwrap();
            let cq = arithmetic_class(&mq, &bq).unwrap();
            let sum = mp.direct_sum(&mq).unwrap();
            let cs = arithmetic_class(&sum, &bp.direct_sum(&bq, &p, &q)).unwrap();
            let prod = cp.mul(&cq).unwrap();
            let bs = bp.direct_sum(&bq, &p, &q);
            let primes: BTreeSet<u64> = cs.fin().support().chain(prod.fin().support()).collect();
            for r in primes {
                let vp = finite_value_at(&mp, &bp, r).unwrap();
                let vq = finite_value_at(&mq, &bq, r).unwrap();
                let vs = finite_value_at(&sum, &bs, r).unwrap();
                for phi in 0..vs.len() {
                    assert_eq!(vs[phi], &vp[phi] * &vq[phi], "{name}");
                }
            }
            for (a, b) in cs.arch().iter().zip(prod.arch()) {
                assert!(a.rel_diff(b) < 1e-9, "{name}");
            }
        }
    }
}

#[test]
fn rescaling_metrics_scales_archimedean_part() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        let p = rand_complex(&mut rng, &g);
        let m = MetrisedComplex::standard(p.clone(), ctx.clone()).unwrap();
        let alpha: Vec<f64> = (0..ctx.irreps().len()).map(|_| rng.gen_range(0.2..5.0)).collect();
        let b = BasisData::standard(&p);
        let c0 = arithmetic_class(&m, &b).unwrap();
        let c1 = arithmetic_class(&m.rescaled(&alpha).unwrap(), &b).unwrap();
        assert_eq!(c0.fin(), c1.fin());
        for phi in 0..alpha.len() {
            assert!(rel(c1.arch()[phi].value() / c0.arch()[phi].value(), alpha[phi]) < 1e-9, "{name}");
        }
    }
}

fn signed_det_product(bases: &[GroupRingMatrix], t: &CharacterTable, irreps: &IrrepSet, sign: impl Fn(usize) -> i32) -> Vec<CyclotomicNumber> {
    let mut acc: Vec<CyclotomicNumber> = (0..irreps.len()).map(|_| CyclotomicNumber::one(1)).collect();
    for (i, x) in bases.iter().enumerate() {
        let d = det_of_unit(x, t, irreps).unwrap();
        for (a, z) in acc.iter_mut().zip(d) {
            let z = if sign(i) > 0 { z } else { z.inv().unwrap() };
            *a = &*a * &z;
        }
    }
    acc
}

#[test]
fn changing_local_bases_multiplies_by_det_of_a_unit() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        let p = rand_complex(&mut rng, &g);
        let m = MetrisedComplex::standard(p.clone(), ctx.clone()).unwrap();
        let b0 = BasisData::with_global(p.ranks().iter().map(|&r| random_rational_invertible(&mut rng, &g, r)).collect());
        let c0 = arithmetic_class(&m, &b0).unwrap();
        for q in [2u64, 3, 5] {
            let units: Vec<GroupRingMatrix> = p.ranks().iter().map(|&r| random_local_unit(&mut rng, &g, r, q)).collect();
            let mut b1 = b0.clone();
            b1.local.insert(q, units.clone());
            let c1 = arithmetic_class(&m, &b1).unwrap();
            let det_u = signed_det_product(&units, ctx.table(), ctx.irreps(), |i| p.sign(i));
            let v0 = finite_value_at(&m, &b0, q).unwrap();
            for phi in 0..det_u.len() {
                // local basis u: lambda = A u^-1
                assert_eq!(&c1.fin_value(q, phi) * &det_u[phi], v0[phi], "{name}");
            }
            assert_eq!(c0.arch(), c1.arch());
            for (a, b) in c0.orbit_degrees().iter().zip(c1.orbit_degrees()) {
                assert!(a.gamma.approx_eq(&b.gamma, 1e-9), "{name}");
            }
        }
    }
}

#[test]
fn changing_global_bases_multiplies_by_diagonal_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        for _ in 0..3 {
            let p = rand_complex(&mut rng, &g);
            let forms: Vec<_> = p.ranks().iter().map(|&r| random_form(&mut rng, &g, r).unwrap()).collect();
            let m = MetrisedComplex::from_forms(p.clone(), ctx.clone(), &forms).unwrap();
            let b0 = BasisData::with_global(p.ranks().iter().map(|&r| random_rational_invertible(&mut rng, &g, r)).collect());
            let eta: Vec<GroupRingMatrix> = p.ranks().iter().map(|&r| random_rational_invertible(&mut rng, &g, r)).collect();
            let b1 = BasisData::with_global(eta.iter().zip(&b0.global).map(|(e, a)| e.mul(a, &g)).collect());
            let c0 = arithmetic_class(&m, &b0).unwrap();
            let c1 = arithmetic_class(&m, &b1).unwrap();
            let de = signed_det_product(&eta, ctx.table(), ctx.irreps(), |i| p.sign(i));
            let primes: BTreeSet<u64> = c0.fin().support().chain(c1.fin().support()).collect();
            for q in primes {
                let v0 = finite_value_at(&m, &b0, q).unwrap();
                let v1 = finite_value_at(&m, &b1, q).unwrap();
                for phi in 0..de.len() {
                    assert_eq!(v1[phi], &v0[phi] * &de[phi], "{name}");
                }
            }
            for phi in 0..de.len() {
                let expect = c0.arch()[phi].value() * cabs(&de[phi]);
                assert!(rel(c1.arch()[phi].value(), expect) < 1e-9, "{name} phi={phi}");
            }
        }
    }
}

#[test]
fn frame_choice_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        let p = rand_complex(&mut rng, &g);
        let forms: Vec<_> = p.ranks().iter().map(|&r| random_form(&mut rng, &g, r).unwrap()).collect();
        let b = BasisData::with_global(p.ranks().iter().map(|&r| random_rational_invertible(&mut rng, &g, r)).collect());
        let c0 = arithmetic_class(&MetrisedComplex::from_forms(p.clone(), ctx.clone(), &forms).unwrap(), &b).unwrap();
        let mut rotated = (*ctx).clone();
        for phi in 0..ctx.irreps().len() {
            let u = random_unitary(&mut rng, ctx.frame(phi).width());
            rotated = rotated.with_rotated_frame(phi, &u);
        }
        let c1 = arithmetic_class(&MetrisedComplex::from_forms(p.clone(), Arc::new(rotated), &forms).unwrap(), &b).unwrap();
        assert_eq!(c0.fin(), c1.fin());
        for (a, b) in c0.arch().iter().zip(c1.arch()) {
            assert!(a.rel_diff(b) < 1e-9, "{name}");
        }
    }
}

#[test]
fn transport_along_identity_keeps_metrics() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let g = common::s3();
    let ctx = ctx_for(&g);
    let p = random_complex(&mut rng, &g, ComplexShape { a: 2, b: 1, c: 1, r0: 1, r1: 0 });
    let forms: Vec<_> = p.ranks().iter().map(|&r| random_form(&mut rng, &g, r).unwrap()).collect();
    let m = MetrisedComplex::from_forms(p.clone(), ctx.clone(), &forms).unwrap();
    let t = MetrisedComplex::transport(p.clone(), &CochainMap::identity(&p), &m).unwrap();
    let b = BasisData::standard(&p);
    let c0 = arithmetic_class(&m, &b).unwrap();
    let c1 = arithmetic_class(&t, &b).unwrap();
    for (a, b) in c0.arch().iter().zip(c1.arch()) {
        assert!(a.rel_diff(b) < 1e-12);
    }
}

#[test]
fn transport_along_multiplication_by_three() {
    let g = FiniteGroup::cyclic(1);
    let ctx = ctx_for(&g);
    let p = PerfectComplex::single(g.clone(), 0, 1);
    let m = MetrisedComplex::standard(p.clone(), ctx.clone()).unwrap();
    let alpha = CochainMap::new(&p, &p, vec![one_by_one(1, scalar(1, 3))]).unwrap();
    let t = MetrisedComplex::transport(p.clone(), &alpha, &m).unwrap();
    assert!(rel(t.metric(0).norm() / m.metric(0).norm(), 3.0) < 1e-14);
}

#[test]
fn transport_rejects_maps_that_are_not_quasi_isomorphisms() {
    let g = FiniteGroup::cyclic(1);
    let ctx = ctx_for(&g);
    let p = PerfectComplex::single(g.clone(), 0, 1);
    let m = MetrisedComplex::standard(p.clone(), ctx).unwrap();
    let zero = CochainMap::new(&p, &p, vec![GroupRingMatrix::zero(1, 1, 1)]).unwrap();
    assert!(matches!(MetrisedComplex::transport(p, &zero, &m), Err(MetError::NotQuasiIso(_))));
}

#[test]
fn homotopic_maps_induce_equal_metrics() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        let c = rand_complex(&mut rng, &g);
        let (d, alpha) = random_quasi_iso(&mut rng, &c);
        let forms: Vec<_> = d.ranks().iter().map(|&r| random_form(&mut rng, &g, r).unwrap()).collect();
        let md = MetrisedComplex::from_forms(d.clone(), ctx.clone(), &forms).unwrap();
        let h = random_homotopy(&mut rng, &c, &d);
        let beta = alpha.add_homotopy(&c, &d, &h).unwrap();
        let t1 = MetrisedComplex::transport(c.clone(), &alpha, &md).unwrap();
        let t2 = MetrisedComplex::transport(c.clone(), &beta, &md).unwrap();
        for phi in 0..ctx.irreps().len() {
            assert!((t1.metric(phi).log_norm() - t2.metric(phi).log_norm()).abs() < 1e-9, "{name}");
        }
    }
}

#[test]
fn quasi_isomorphic_complexes_have_equal_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        for _ in 0..2 {
            let c = rand_complex(&mut rng, &g);
            let (d, alpha) = random_quasi_iso(&mut rng, &c);
            let forms: Vec<_> = d.ranks().iter().map(|&r| random_form(&mut rng, &g, r).unwrap()).collect();
            let md = MetrisedComplex::from_forms(d.clone(), ctx.clone(), &forms).unwrap();
            let mc = MetrisedComplex::transport(c.clone(), &alpha, &md).unwrap();
            let bc = BasisData::with_global(c.ranks().iter().map(|&r| random_rational_invertible(&mut rng, &g, r)).collect());
            let bd = BasisData::with_global(d.ranks().iter().map(|&r| random_rational_invertible(&mut rng, &g, r)).collect());
            let xc = arithmetic_class(&mc, &bc).unwrap();
            let xd = arithmetic_class(&md, &bd).unwrap();
            let dist = xc.orbit_degree_distance(&xd).unwrap();
            assert!(dist < 1e-9, "{name}: {dist}");
        }
    }
}

#[test]
fn trivial_coordinate_is_the_fixed_point_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        for _ in 0..2 {
            let p = rand_complex(&mut rng, &g);
            let forms: Vec<_> = p.ranks().iter().map(|&r| random_form(&mut rng, &g, r).unwrap()).collect();
            let m = MetrisedComplex::from_forms(p.clone(), ctx.clone(), &forms).unwrap();
            let mut b = BasisData::with_global(p.ranks().iter().map(|&r| random_rational_invertible(&mut rng, &g, r)).collect());
            b.local.insert(3, p.ranks().iter().map(|&r| random_local_unit(&mut rng, &g, r, 3)).collect());
            let defect = fixed_point_defect(&m, &b).unwrap().expect("finite parts agree");
            assert!(defect < 1e-9, "{name}: {defect}");
        }
    }
}

#[test]
fn fixed_point_class_of_trivial_group_is_the_class() {
    let g = FiniteGroup::cyclic(1);
    let ctx = ctx_for(&g);
    let p = PerfectComplex::new(g.clone(), 0, vec![1, 1], vec![one_by_one(1, scalar(1, 6))]).unwrap();
    let m = MetrisedComplex::unit(p.clone(), ctx).unwrap();
    let b = BasisData::standard(&p);
    let c = arithmetic_class(&m, &b).unwrap();
    let h = fixed_point_class(&m, &b).unwrap();
    assert_eq!(c.fin(), h.fin());
    assert!(c.arch()[0].rel_diff(&h.arch()[0]) < 1e-14);
}

#[test]
fn isotypic_isometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        let d = 2;
        let form = random_form(&mut rng, &g, d).unwrap();
        assert!(MetrisedComplex::isometry_defect(&ctx, &form) < 1e-12, "{name}");
        for _ in 0..20 {
            let phi = rng.gen_range(0..ctx.irreps().len());
            let w = ctx.frame(phi).width();
            let c: Vec<Complex64> = (0..d * w).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let (a, b) = MetrisedComplex::isometry_norms(&ctx, &form, phi, &c);
            assert!(rel(a, b) < 1e-12, "{name}");
        }
    }
}

#[test]
fn construction_errors() {
    let g = FiniteGroup::cyclic(2);
    let n = 2;
    let one = one_by_one(n, scalar(n, 1));
    assert!(matches!(
        PerfectComplex::new(g.clone(), 0, vec![1, 1, 1], vec![one.clone(), one.clone()]),
        Err(MetError::NotAComplex(0))
    ));
    let p = PerfectComplex::new(g.clone(), 0, vec![1, 1], vec![one.clone()]).unwrap();
    let bad = CochainMap::new(&p, &p, vec![one.clone(), GroupRingMatrix::zero(n, 1, 1)]);
    assert!(matches!(bad, Err(MetError::NotAChainMap(0))));
    let m = MetrisedComplex::standard(p.clone(), ctx_for(&g)).unwrap();
    let mut b = BasisData::standard(&p);
    b.local.insert(2, vec![one_by_one(n, scalar(n, 2)), one.clone()]);
    assert!(matches!(arithmetic_class(&m, &b), Err(MetError::NotALocalBasis { p: 2, degree: 0 })));
    let singular = BasisData::with_global(vec![one_by_one(n, GroupRingElement::from_sparse(n, &[(0, 1), (1, 1)])), one]);
    assert!(matches!(arithmetic_class(&m, &singular), Err(MetError::NotABasis(0))));
    let mut h = CMat::identity(2, 2);
    h[(0, 1)] = Complex64::new(0.5, 0.0);
    h[(1, 0)] = Complex64::new(0.5, 0.0);
    h[(1, 1)] = Complex64::new(2.0, 0.0);
    assert!(matches!(HermitianForm::new(&g, 1, h), Err(MetError::NotInvariant)));
    let mut h = CMat::identity(2, 2);
    h[(0, 1)] = Complex64::new(0.0, 1.0);
    assert!(matches!(HermitianForm::new(&g, 1, h), Err(MetError::NotHermitian)));
    let neg = CMat::identity(2, 2) * Complex64::new(-1.0, 0.0);
    assert!(matches!(HermitianForm::new(&g, 1, neg), Err(MetError::NotPositiveDefinite)));
}

#[test]
fn cohomology_dimensions_agree_with_exact_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for (name, g) in common::corpus() {
        let ctx = ctx_for(&g);
        let s = ComplexShape::random(&mut rng);
        let p = random_complex(&mut rng, &g, s);
        let e = ctx.table().exponent();
        for phi in 0..ctx.irreps().len() {
            let sp = KmSplitting::new(&p, &ctx, phi).unwrap();
            assert_eq!(sp.cohomology_dims(), p.isotypic_cohomology(ctx.irreps().rep(phi), e), "{name}");
        }
    }
}

#[test]
fn reduced_norm_product_is_rational_determinant() {
    let g = common::s3();
    let t = common::table(g.clone());
    let irreps = IrrepSet::build(&t, &[]).unwrap();
    let x = GroupRingMatrix::from_fn(6, 1, 1, |_, _| GroupRingElement::from_sparse(6, &[(0, 2), (1, 1)]));
    let det = det_of_unit(&x, &t, &irreps).unwrap();
    let r = reduced_norm_product(&det, &t);
    // left multiplication by 2 + g on Q[S3] as a 6x6 integer matrix
    let xe = x.get(0, 0);
    let m: Vec<Vec<i128>> = (0..6)
        .map(|row| {
            (0..6)
                .map(|col| {
                    let v = xe.mul(&GroupRingElement::basis(6, col), &g).coeff(row).clone();
                    v.to_integer().try_into().unwrap()
                })
                .collect()
        })
        .collect();
    assert_eq!(r.abs(), Rational::from_integer(bareiss(m).abs().into()));
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]

    #[test]
    fn class_is_multiplicative_in_rescaling(seed in proptest::prelude::any::<u64>(), gi in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, g) = common::corpus().swap_remove(gi);
        let ctx = ctx_for(&g);
        let p = rand_complex(&mut rng, &g);
        let forms: Vec<_> = p.ranks().iter().map(|&r| random_form(&mut rng, &g, r).unwrap()).collect();
        let m = MetrisedComplex::from_forms(p.clone(), ctx.clone(), &forms).unwrap();
        let a: Vec<f64> = (0..ctx.irreps().len()).map(|_| rng.gen_range(0.1..10.0)).collect();
        let b: Vec<f64> = (0..ctx.irreps().len()).map(|_| rng.gen_range(0.1..10.0)).collect();
        let ab: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let basis = BasisData::standard(&p);
        let twice = arithmetic_class(&m.rescaled(&a).unwrap().rescaled(&b).unwrap(), &basis).unwrap();
        let once = arithmetic_class(&m.rescaled(&ab).unwrap(), &basis).unwrap();
        for (x, y) in twice.arch().iter().zip(once.arch()) {
            proptest::prop_assert!(x.rel_diff(y) < 1e-12);
        }
    }

    #[test]
    fn scrambled_complexes_keep_cohomology(seed in proptest::prelude::any::<u64>(), gi in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, g) = common::corpus().swap_remove(gi);
        let ctx = ctx_for(&g);
        let c = rand_complex(&mut rng, &g);
        let (d, _) = random_quasi_iso(&mut rng, &c);
        for phi in 0..ctx.irreps().len() {
            let hc = KmSplitting::new(&c, &ctx, phi).unwrap().cohomology_dims();
            let hd = KmSplitting::new(&d, &ctx, phi).unwrap().cohomology_dims();
            proptest::prop_assert_eq!(hc, hd);
        }
    }

    #[test]
    fn isometry_holds_for_random_forms(seed in proptest::prelude::any::<u64>(), gi in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, g) = common::corpus().swap_remove(gi);
        let ctx = ctx_for(&g);
        let form = random_form(&mut rng, &g, 1).unwrap();
        proptest::prop_assert!(MetrisedComplex::isometry_defect(&ctx, &form) < 1e-12);
    }
}
