use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive};
use proptest::prelude::*;

use tamearith_core::classrep::{ClassError, SymplecticClassRep};
use tamearith_core::cycloarith::{rat, rational_to_f64, ComplexInterval, CyclotomicNumber, Rational};
use tamearith_core::groupchar::{GroupRingElement, VirtualCharacter};
use tamearith_core::tamefield::fields::*;
use tamearith_core::tamefield::*;

fn zeta5() -> TameFieldDescriptor {
    cyclotomic(5).unwrap()
}

/// Index of the character of a cyclic table taking `zeta_e^k` on element 1.
fn char_with_value(f: &GaloisData, e: u32, k: i64) -> usize {
    let t = f.table();
    (0..t.num_irreducibles())
        .find(|&i| *t.value_at(i, 1) == CyclotomicNumber::zeta_pow(e, k))
        .unwrap()
}

fn pair(t: &tamearith_core::groupchar::CharacterTable, i: usize, j: usize) -> VirtualCharacter {
    t.irreducible(i).add(&t.irreducible(j))
}

fn all_galois() -> Vec<(&'static str, GaloisData)> {
    vec![
        ("Q(zeta5)", cyclotomic_galois(5).unwrap()),
        ("Q(zeta7)", cyclotomic_galois(7).unwrap()),
        ("Q(zeta8)", cyclotomic_eight_galois().unwrap()),
        ("S3", s3_cubic().unwrap().data().clone()),
    ]
}

fn tame_fields() -> Vec<(&'static str, TameFieldDescriptor)> {
    vec![
        ("Q(zeta3)", cyclotomic(3).unwrap()),
        ("Q(zeta5)", zeta5()),
        ("Q(zeta7)", cyclotomic(7).unwrap()),
        ("Q(zeta13)", cyclotomic(13).unwrap()),
        ("S3", s3_cubic().unwrap()),
    ]
}

/// `sum_g chi(g)^-1 sigma_0(g(b))` evaluated directly in floating point.
fn linear_resolvent(f: &GaloisData, i: usize) -> Complex64 {
    let t = f.table();
    (0..f.group().order()).map(|g| f.embeddings()[g].mid() / t.value_at(i, g).approx()).sum()
}

/// `psi(1) - dim psi^I` from the character values on `I`.
fn codim_fixed(f: &TameFieldDescriptor, psi: &VirtualCharacter, p: u64) -> i64 {
    let r = f.record(p).unwrap();
    let t = f.table();
    let avg: f64 = r.inertia.elements().iter().map(|&x| psi.value_at(t, x).approx().re).sum::<f64>() / r.e() as f64;
    psi.degree(t) - avg.round() as i64
}

#[test]
fn trivial_field_resolvent_is_one() {
    let q = rationals().unwrap();
    let r = resolvent(q.data(), 0).unwrap();
    assert!(r.contains(Complex64::new(1.0, 0.0)) && r.radius() < 1e-14, "{r:?}");
    assert_eq!(eps_infinity_tilde(q.data(), &q.table().trivial().scale(2)), Ok(1));
    let rep = theorem_5_9_representative(&q).unwrap();
    assert!(rep.fin().is_empty());
    assert_eq!(rep.arch()[0].as_rational(), Some(Rational::one()));
}

#[test]
fn resolvents_of_zeta5_are_gauss_sums() {
    let f = cyclotomic_galois(5).unwrap();
    for i in 0..4 {
        let r = resolvent(&f, i).unwrap();
        let direct = linear_resolvent(&f, i);
        assert!((r.mid() - direct).norm() < 1e-12 + r.radius());
        let expected = if i == 0 { 1.0 } else { 5.0 };
        assert!((r.abs_sq().mid - expected).abs() < 1e-12, "character {i}");
    }
    // Tr(zeta) = -1
    assert!(resolvent(&f, 0).unwrap().contains(Complex64::new(-1.0, 0.0)));
    let t = f.table();
    let chi1 = char_with_value(&f, 4, 1);
    let chi3 = char_with_value(&f, 4, 3);
    let prod = resolvent_virtual(&f, &pair(t, chi1, chi3)).unwrap();
    assert!(prod.contains(Complex64::new(-5.0, 0.0)), "{prod:?}");
}

#[test]
fn resolvents_agree_with_exact_gauss_sums() {
    for p in [5u64, 7, 13] {
        let f = cyclotomic_galois(p).unwrap();
        let e = (p - 1) as u32;
        for k in 0..e as i64 {
            let i = char_with_value(&f, e, k);
            let tau = tame_gauss_sum(p, p, e, k).unwrap();
            assert!(resolvent(&f, i).unwrap().overlaps(&tau.value.embed(1)), "p = {p}, k = {k}");
        }
    }
}

#[test]
fn galois_action_formula_on_all_fields() {
    for (name, f) in all_galois() {
        for phi in 0..f.table().num_irreducibles() {
            for x in 0..f.group().order() {
                let c = galois_action_check(&f, phi, x).unwrap();
                assert!(c.holds, "{name}: phi = {phi}, x = {x}, residual {}", c.residual);
            }
        }
    }
    let f = cyclotomic_galois(5).unwrap();
    let chi1 = char_with_value(&f, 4, 1);
    let c = galois_action_check(&f, chi1, 1).unwrap();
    let i = Complex64::new(0.0, 1.0);
    assert!((c.lhs.mid() - c.rhs.mid()).norm() < 1e-12);
    assert!((c.lhs.mid() - resolvent(&f, chi1).unwrap().mid() * i).norm() < 1e-12);
}

#[test]
fn conductor_exponents() {
    let f = zeta5();
    let t = f.table();
    let chi1 = char_with_value(f.data(), 4, 1);
    let chi3 = char_with_value(f.data(), 4, 3);
    assert_eq!(artin_conductor_p(&f, &pair(t, chi1, chi3), 5), Ok(2));
    assert_eq!(artin_conductor_p(&f, &pair(t, chi1, chi3), 7), Ok(0));
    assert_eq!(artin_conductor_p(&f, &t.trivial(), 5), Ok(0));
    for (name, f) in tame_fields() {
        let t = f.table();
        for p in f.ramified_primes() {
            for i in 0..t.num_irreducibles() {
                let psi = t.irreducible(i);
                assert_eq!(artin_conductor_p(&f, &psi, p).unwrap(), codim_fixed(&f, &psi, p), "{name} {i}");
            }
        }
    }
    // the two-dimensional character of S3 has conductor 23
    let s3 = s3_cubic().unwrap();
    let rho = (0..3).find(|&i| s3.table().degree(i) == 2).unwrap();
    assert_eq!(artin_conductor_p(&s3, &s3.table().irreducible(rho), 23), Ok(1));
    assert_eq!(pfaffian(&s3, 23, &s3.table().irreducible(rho).scale(2)), Ok(rat(-23, 1)));
}

#[test]
fn archimedean_signs() {
    let f = zeta5();
    let t = f.table();
    let chi1 = char_with_value(f.data(), 4, 1);
    let chi3 = char_with_value(f.data(), 4, 3);
    assert_eq!(f.data().conj_element(), 2);
    assert_eq!(eps_infinity_tilde(f.data(), &pair(t, chi1, chi3)), Ok(-1));
    assert_eq!(eps_infinity_tilde(f.data(), &t.trivial().scale(2)), Ok(1));
    assert_eq!(eps_infinity_tilde(f.data(), &t.irreducible(chi1)), Err(FieldError::NotSymplectic));
    let chi2 = char_with_value(f.data(), 4, 2);
    // chi2(c) = 1, so the (-1)-eigenspace is trivial
    assert_eq!(eps_infinity_tilde(f.data(), &t.irreducible(chi2).scale(2)), Ok(1));
}

#[test]
fn gauss_sum_examples() {
    assert_eq!(tame_gauss_sum(5, 5, 4, 0).unwrap().value, CyclotomicNumber::from_int(1, -1));
    assert_eq!(tame_gauss_sum(5, 25, 4, 0).unwrap().value, CyclotomicNumber::from_int(1, -1));
    let t = tame_gauss_sum(5, 5, 4, 1).unwrap();
    assert_eq!(t.abs_sq(), CyclotomicNumber::from_int(1, 5));
    let tb = tame_gauss_sum(5, 5, 4, 3).unwrap();
    assert_eq!(&t.value * &tb.value, CyclotomicNumber::from_int(1, -5));
    assert!(matches!(tame_gauss_sum(5, 5, 3, 1), Err(FieldError::BadOrder(_))));
    assert!(matches!(tame_gauss_sum(5, 5, 5, 1), Err(FieldError::BadOrder(_))));
    assert!(matches!(tame_gauss_sum(5, 10, 2, 1), Err(FieldError::BadOrder(_))));
    assert!(matches!(tame_gauss_sum(6, 6, 1, 0), Err(FieldError::BadOrder(_))));
}

/// Direct floating-point evaluation over a prime field.
fn gauss_direct(p: u64, e: u32, k: i64) -> Complex64 {
    let r = (2..p).find(|&r| (1..p - 1).all(|j| mod_pow(r, j, p) != 1)).unwrap();
    (0..p - 1)
        .map(|j| {
            let x = mod_pow(r, j, p);
            Complex64::from_polar(1.0, -2.0 * PI * (k * j as i64) as f64 / e as f64)
                * Complex64::from_polar(1.0, 2.0 * PI * x as f64 / p as f64)
        })
        .sum()
}

fn mod_pow(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * b % m)
}

#[test]
fn gauss_sums_match_direct_evaluation() {
    for (p, e) in [(5u64, 4u32), (7, 6), (13, 12), (13, 4), (7, 3)] {
        for k in 0..e as i64 {
            let exact = tame_gauss_sum(p, p, e, k).unwrap().value.approx();
            assert!((exact - gauss_direct(p, e, k)).norm() < 1e-9, "p = {p}, e = {e}, k = {k}");
        }
    }
}

#[test]
fn gauss_sum_identities_for_all_nontrivial_characters() {
    for (p, q) in [(5u64, 5u64), (7, 7), (13, 13), (5, 25)] {
        let e = (q - 1) as u32;
        for k in 1..e as i64 {
            let t = tame_gauss_sum(p, q, e, k).unwrap();
            let tb = tame_gauss_sum(p, q, e, e as i64 - k).unwrap();
            let q_num = CyclotomicNumber::from_int(1, q as i64);
            assert_eq!(t.abs_sq(), q_num, "q = {q}, k = {k}");
            assert_eq!(&t.value * &tb.value, &t.chi_minus_one() * &q_num, "q = {q}, k = {k}");
        }
    }
}

#[test]
fn resolvent_signs_on_the_corpus() {
    for (name, f) in all_galois() {
        let cmp = resolvent_signs(&f).unwrap();
        assert!(!cmp.is_empty());
        for c in &cmp {
            assert!(c.holds(), "{name}: {:?} sign {} eps {}", c.generator.coeffs, c.sign, c.eps);
        }
    }
    let f = cyclotomic_galois(5).unwrap();
    let chi1 = char_with_value(&f, 4, 1);
    let chi3 = char_with_value(&f, 4, 3);
    let target = pair(f.table(), chi1, chi3);
    let c = resolvent_signs(&f).unwrap().into_iter().find(|c| c.generator == target).unwrap();
    assert_eq!((c.sign, c.eps), (-1, -1));
    // (zeta|chi1)(zeta|chi3) / Tr(zeta)^2 = -5
    assert!(c.resolvent.contains(Complex64::new(-5.0, 0.0)));
    // S3: both nontrivial generators are imaginary-squared
    let s3 = s3_cubic().unwrap();
    let signs: Vec<i8> = resolvent_signs(s3.data()).unwrap().iter().map(|c| c.sign).collect();
    assert_eq!(signs.iter().filter(|&&s| s == -1).count(), 2);
}

#[test]
fn symplectic_representative_for_zeta5() {
    let f = zeta5();
    let t = f.table();
    let chi1 = char_with_value(f.data(), 4, 1);
    let chi3 = char_with_value(f.data(), 4, 3);
    let psi = pair(t, chi1, chi3);
    let rep = theorem_5_9_representative(&f).unwrap();
    assert_eq!(rep.fin_value(5, &psi).unwrap(), CyclotomicNumber::from_rational(1, rat(1, 5)));
    assert_eq!(rep.arch_value(&psi).unwrap().as_rational(), Some(rat(4, 1)));
    assert_eq!(rep.theta().unwrap().value(t, &psi), Ok(rat(1, 20)));
    assert_eq!(rep.tilde().theta().unwrap().value(t, &psi), Ok(rat(1, 5)));
    let two = t.trivial().scale(2);
    assert_eq!(rep.fin_value(5, &two).unwrap(), CyclotomicNumber::one(1));
    assert_eq!(rep.arch_value(&two).unwrap().as_rational(), Some(rat(4, 1)));
    let b = group_ring_representative(t);
    assert!(b.fin().is_empty());
    assert_eq!(b.arch_value(&psi).unwrap().as_rational(), Some(rat(4, 1)));
}

#[test]
fn pfaffian_magnitudes_on_tame_fields() {
    for (name, f) in tame_fields() {
        let checks = pfaffian_magnitudes(&f).unwrap();
        assert!(!checks.is_empty());
        for c in checks {
            assert!(c.holds, "{name}: {:?} at {}", c.generator.coeffs, c.p);
            // an independent count: p^(psi(1) - dim psi^I)
            let expected = codim_fixed(&f, &c.generator, c.p);
            assert_eq!(c.conductor, expected);
            assert_eq!(c.pfaffian.numer().abs().to_u64().unwrap(), c.p.pow(expected as u32 / 2));
        }
    }
}

#[test]
fn chi_of_ring_of_integers_matches_resolvents() {
    for p in [5u64, 7] {
        let f = cyclotomic(p).unwrap();
        let c = chi_ring_of_integers(&f).unwrap();
        assert!(c.fin().support().next().is_none());
        let n = f.data().group().order() as f64;
        for phi in 0..f.table().num_irreducibles() {
            let r = resolvent(f.data(), phi).unwrap().abs().mid;
            let expected = n.sqrt() * r;
            let got = c.arch()[phi].value();
            assert!((got - expected).abs() < 1e-9 * expected, "p = {p}, phi = {phi}: {got} vs {expected}");
        }
        // the two representatives differ by local unit determinants over the
        // maximal tame extension, which can carry a sign
        let s = SymplecticClassRep::from_class(&c);
        let th = theorem_5_9_representative(&f).unwrap().theta().unwrap();
        for (k, a) in s.arch().iter().enumerate() {
            let lhs = 1.0 / a.value();
            let rhs = rational_to_f64(&th.values[k]);
            assert!((lhs - rhs.abs()).abs() < 1e-9 * lhs, "p = {p}, generator {k}: {lhs} vs {rhs}");
        }
    }
    let f = zeta5();
    let t = f.table();
    let psi = pair(t, char_with_value(f.data(), 4, 1), char_with_value(f.data(), 4, 3));
    let a = SymplecticClassRep::from_class(&chi_ring_of_integers(&f).unwrap()).arch_value(&psi).unwrap();
    assert!((a.value() - 20.0).abs() < 20.0 * 1e-9);
    assert_eq!(chi_ring_of_integers(&rationals().unwrap()).unwrap().arch()[0].value(), 1.0);
}

#[test]
fn chi_of_ring_of_integers_needs_a_generator() {
    assert_eq!(chi_ring_of_integers(&s3_cubic().unwrap()).unwrap_err(), FieldError::NotFree);
}

#[test]
fn hecke_form_is_invariant_on_nonabelian_data() {
    let f = s3_cubic().unwrap();
    let one = GroupRingElement::one(f.data().group());
    let h = hecke_form(f.data(), &one).unwrap();
    // h(b, b) = sum over embeddings of |sigma(b)|^2
    let direct: f64 = f.data().embeddings().iter().map(|z| z.abs_sq().mid).sum();
    assert!((h.matrix()[(0, 0)].re - direct).abs() < 1e-12 * direct);
}

fn one_minus_zeta5() -> GroupRingElement {
    // 1 - zeta = -2 zeta - zeta^2 - zeta^4 - zeta^3 in the basis zeta^(2^j)
    GroupRingElement::from_sparse(4, &[(0, -2), (1, -1), (2, -1), (3, -1)])
}

#[test]
fn ideal_class_for_one_minus_zeta5() {
    let f = zeta5();
    let c = prop_5_7_check(&f, &one_minus_zeta5()).unwrap();
    assert_eq!(c.index, rat(5, 1));
    assert!(c.holds(1e-9), "{c:?}");
    // O_N / a = F_5 with trivial action: 25 on 2*1, 1 on the other generators
    let t = f.table();
    let vals: Vec<Rational> = c.rhs_symplectic.fin()[&5].iter().map(|z| z.as_rational().unwrap()).collect();
    for (psi, v) in c.rhs_symplectic.generators().iter().zip(&vals) {
        let expect = if *psi == t.trivial().scale(2) { rat(25, 1) } else { rat(1, 1) };
        assert_eq!(*v, expect);
    }
}

#[test]
fn ideal_class_for_trivial_and_scalar_ideals() {
    let f = zeta5();
    let g = f.data().group();
    let c = prop_5_7_check(&f, &GroupRingElement::one(g)).unwrap();
    assert_eq!(c.index, rat(1, 1));
    assert!(c.holds(1e-9) && c.lhs.fin().support().next().is_none());
    let five = GroupRingElement::scalar(g, rat(5, 1));
    let c = prop_5_7_check(&f, &five).unwrap();
    assert_eq!(c.index, rat(625, 1));
    assert!(c.holds(1e-9));
    assert!(c.rhs.fin().get(5).unwrap().iter().all(|z| *z == CyclotomicNumber::from_int(1, 5)));
    let half = GroupRingElement::scalar(g, rat(1, 2));
    assert!(matches!(prop_5_7_check(&f, &half), Err(FieldError::NotCohomologicallyTrivial(_))));
    let norm = GroupRingElement::norm_element(4);
    assert!(matches!(prop_5_7_check(&f, &norm), Err(FieldError::NotCohomologicallyTrivial(_))));
}

fn zeta5_point() -> BranchPoint {
    BranchPoint { p: 5, f: 1, inertia: vec![0, 1, 2, 3], character: InertiaCharacter { generator: 1, exponent: 1 } }
}

#[test]
fn branch_intersection_representatives() {
    let f = zeta5();
    let t = f.table();
    let g = f.data().group();
    let gens = t.symplectic_generators();
    let plus: Vec<i8> = vec![1; gens.len()];
    let empty = BranchIntersectionData::new(g, vec![]).unwrap();
    let rep = theorem_6_1_representative(t, &empty, &plus).unwrap();
    assert!(rep.fin().is_empty());

    let psi = pair(t, char_with_value(f.data(), 4, 1), char_with_value(f.data(), 4, 3));
    let one = BranchIntersectionData::new(g, vec![zeta5_point()]).unwrap();
    let rep = theorem_6_1_representative(t, &one, &plus).unwrap();
    assert_eq!(rep.fin_value(5, &psi).unwrap(), CyclotomicNumber::from_rational(1, rat(-1, 5)));

    let eps: Vec<i8> = gens.iter().map(|psi| eps_infinity_tilde(f.data(), psi).unwrap()).collect();
    assert_eq!(theorem_6_1_representative(t, &one, &eps).unwrap(), theorem_5_9_representative(&f).unwrap());

    let two = BranchIntersectionData::new(g, vec![zeta5_point(), zeta5_point()]).unwrap();
    let rep2 = theorem_6_1_representative(t, &two, &plus).unwrap();
    assert_eq!(rep2.fin_value(5, &psi).unwrap(), CyclotomicNumber::from_rational(1, rat(1, 25)));

    assert!(theorem_6_1_representative(t, &one, &[1]).is_err());
    let wild = BranchPoint { p: 2, ..zeta5_point() };
    assert!(matches!(BranchIntersectionData::new(g, vec![wild]), Err(FieldError::InvalidDescriptor(_))));
}

#[test]
fn odd_pairings_are_rejected() {
    // eta: the order-2 character of C4 paired against an inertia group of
    // order 2 is odd
    let f = zeta5();
    let t = f.table();
    let g = f.data().group();
    let chi2 = char_with_value(f.data(), 4, 2);
    let pt = BranchPoint { p: 5, f: 1, inertia: vec![0, 2], character: InertiaCharacter { generator: 2, exponent: 1 } };
    let d = BranchIntersectionData::new(g, vec![pt]).unwrap();
    let gens = t.symplectic_generators();
    assert!(gens.contains(&t.irreducible(chi2).scale(2)));
    let plus = vec![1; gens.len()];
    // 2 chi2 restricted to {1, g^2} is twice the trivial character: pairing 0
    assert!(theorem_6_1_representative(t, &d, &plus).is_ok());
    let odd = t.irreducible(chi2);
    let loc = tamearith_core::classrep::LocalRamification {
        p: 5,
        residue_degree: 1,
        inertia: tamearith_core::groupchar::Subgroup::new(g, &[0, 1, 2, 3]).unwrap(),
    };
    assert_eq!(tamearith_core::classrep::pfaffian_p(t, &[loc], &odd), Err(ClassError::OddPairing));
}

#[test]
fn descriptor_validation() {
    let z8 = cyclotomic_eight_galois().unwrap();
    match TameFieldDescriptor::new(z8, &[cyclotomic_eight_ramification()], None) {
        Err(FieldError::InvalidDescriptor(items)) => {
            assert!(items.iter().any(|s| s.contains("wild")), "{items:?}");
            assert!(items.iter().any(|s| s.contains("not cyclic")), "{items:?}");
        }
        other => panic!("{other:?}"),
    }
    let data = cyclotomic_galois(5).unwrap();
    let bad_efg = RamSpec { p: 5, f: 2, g: 1, inertia: vec![0, 1, 2, 3], character: InertiaCharacter { generator: 1, exponent: 1 } };
    assert!(matches!(TameFieldDescriptor::new(data.clone(), &[bad_efg], None), Err(FieldError::InvalidDescriptor(_))));
    let not_faithful = RamSpec { p: 5, f: 1, g: 1, inertia: vec![0, 1, 2, 3], character: InertiaCharacter { generator: 1, exponent: 2 } };
    assert!(matches!(TameFieldDescriptor::new(data.clone(), &[not_faithful], None), Err(FieldError::InvalidDescriptor(_))));
    let not_subgroup = RamSpec { p: 5, f: 2, g: 1, inertia: vec![0, 1], character: InertiaCharacter { generator: 1, exponent: 1 } };
    assert!(TameFieldDescriptor::new(data.clone(), &[not_subgroup], None).is_err());
    assert!(TameFieldDescriptor::new(data, &[], Some(vec![rat(1, 1)])).is_err());
}

#[test]
fn embeddings_must_form_a_normal_basis() {
    // zeta_8 itself is not a normal basis of Q(zeta_8)
    let g = cyclotomic_eight_galois().unwrap().group().clone();
    let emb: Vec<ComplexInterval> = ZETA8_EXPONENTS.iter().map(|&k| ComplexInterval::root_of_unity(8, k)).collect();
    match GaloisData::new(g.clone(), emb, 3) {
        Err(FieldError::InvalidDescriptor(items)) => assert!(items.iter().any(|s| s.contains("normal basis"))),
        other => panic!("{other:?}"),
    }
    let coarse: Vec<ComplexInterval> = (0..4).map(|k| ComplexInterval::around(Complex64::new(k as f64, 0.0), 1e-6)).collect();
    assert!(matches!(GaloisData::new(g.clone(), coarse, 0), Err(FieldError::InvalidDescriptor(_))));
    // conjugation must match the data
    let emb = cyclotomic_eight_galois().unwrap().embeddings().to_vec();
    assert!(GaloisData::new(g, emb, 1).is_err());
}

#[test]
fn precision_failures_surface() {
    let z = ComplexInterval::around(Complex64::new(0.0, 0.0), 1e-3);
    let m = vec![vec![z]];
    assert!(interval_det(m).is_none());
    let a = ComplexInterval::exact(Complex64::new(2.0, 0.0));
    let b = ComplexInterval::exact(Complex64::new(1.0, 1.0));
    let d = interval_det(vec![vec![a, b], vec![b, a]]).unwrap();
    // 4 - (1 + i)^2 = 4 - 2i
    assert!(d.contains(Complex64::new(4.0, -2.0)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resolvents_are_multiplicative(a in prop::collection::vec(-2i64..=2, 6), b in prop::collection::vec(-2i64..=2, 6)) {
        let f = cyclotomic_galois(7).unwrap();
        let v = VirtualCharacter { coeffs: a };
        let w = VirtualCharacter { coeffs: b };
        let lhs = resolvent_virtual(&f, &v.add(&w)).unwrap();
        let rhs = resolvent_virtual(&f, &v).unwrap() * resolvent_virtual(&f, &w).unwrap();
        prop_assert!(lhs.overlaps(&rhs));
    }

    #[test]
    fn gauss_sums_have_absolute_value_sqrt_q(idx in 0usize..4, k in 1i64..200) {
        let (p, q) = [(5u64, 5u64), (7, 7), (13, 13), (5, 25)][idx];
        let e = (q - 1) as u32;
        prop_assume!(k % e as i64 != 0);
        let t = tame_gauss_sum(p, q, e, k).unwrap();
        prop_assert_eq!(t.abs_sq(), CyclotomicNumber::from_int(1, q as i64));
    }
}
