mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tamearith_core::classrep::*;
use tamearith_core::cycloarith::{rat, CyclotomicNumber, Rational};
use tamearith_core::groupchar::*;
use tamearith_core::metcomplex::fixtures::{random_rational_invertible, random_unimodular};

fn trivial_table() -> SharedTable {
    common::table(FiniteGroup::cyclic(1))
}

fn trivial_class(fin: &[(u64, i64, i64)], arch: Rational) -> ArithClassRep {
    let mut f = IdelicCharMap::new();
    for &(p, n, d) in fin {
        f.insert(p, vec![CyclotomicNumber::from_rational(1, rat(n, d))]);
    }
    ArithClassRep::new(trivial_table(), f, vec![ArchValue::from_rational(&arch)])
}

fn random_class(rng: &mut ChaCha8Rng, t: &SharedTable) -> ArithClassRep {
    let irreps = IrrepSet::build(t, &[]).unwrap();
    let g = t.group();
    let mut fin = IdelicCharMap::new();
    for p in [2u64, 3, 5] {
        if rng.gen_bool(0.6) {
            let x = random_rational_invertible(rng, g, 1);
            fin.insert(p, det_of_unit(&x, t, &irreps).unwrap());
        }
    }
    let arch = (0..t.num_irreducibles()).map(|_| ArchValue::approximate(rng.gen_range(0.1..10.0), 1e-15)).collect();
    ArithClassRep::new(t.clone(), fin, arch)
}

fn same(a: &ArithClassRep, b: &ArithClassRep) -> bool {
    let primes: std::collections::BTreeSet<u64> = a.fin().support().chain(b.fin().support()).collect();
    let n = a.table().num_irreducibles();
    primes.into_iter().all(|p| (0..n).all(|i| a.fin_value(p, i) == b.fin_value(p, i)))
        && a.arch().iter().zip(b.arch()).all(|(x, y)| x.approx_eq(y, 1e-12))
}

#[test]
fn det_of_unit_examples() {
    let c2 = FiniteGroup::cyclic(2);
    let t = common::table(c2.clone());
    let irreps = IrrepSet::build(&t, &[]).unwrap();
    let id = GroupRingMatrix::identity(&c2, 2);
    assert!(det_of_unit(&id, &t, &irreps).unwrap().iter().all(CyclotomicNumber::is_one));
    let s = GroupRingMatrix::from_fn(2, 1, 1, |_, _| GroupRingElement::basis(2, 1));
    let d = det_of_unit(&s, &t, &irreps).unwrap();
    assert_eq!(d, vec![CyclotomicNumber::one(1), CyclotomicNumber::from_int(1, -1)]);
    let norm = GroupRingMatrix::from_fn(2, 1, 1, |_, _| GroupRingElement::norm_element(2));
    assert_eq!(det_of_unit(&norm, &t, &irreps), Err(ClassError::Singular));
}

#[test]
fn det_is_multiplicative_and_galois_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (name, g) in common::corpus() {
        let t = common::table(g.clone());
        let irreps = IrrepSet::build(&t, &[]).unwrap();
        for _ in 0..5 {
            let x = random_rational_invertible(&mut rng, &g, 2);
            let y = random_rational_invertible(&mut rng, &g, 2);
            let dx = det_of_unit(&x, &t, &irreps).unwrap();
            let dy = det_of_unit(&y, &t, &irreps).unwrap();
            let dxy = det_of_unit(&x.mul(&y, &g), &t, &irreps).unwrap();
            for i in 0..dx.len() {
                assert_eq!(dxy[i], &dx[i] * &dy[i], "{name}");
            }
            let e = t.exponent();
            for k in CyclotomicNumber::galois_exponents(e) {
                for i in 0..dx.len() {
                    assert_eq!(dx[t.galois_image(i, k)], dx[i].galois(k).unwrap().normalized(), "{name}");
                }
            }
            let mut fin = IdelicCharMap::new();
            fin.insert(7, dx);
            let c = ArithClassRep::new(t.clone(), fin, (0..t.num_irreducibles()).map(|_| ArchValue::one()).collect());
            assert!(c.is_galois_equivariant());
        }
    }
}

#[test]
fn unimodular_determinants_have_unit_norms() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for (name, g) in common::corpus() {
        let t = common::table(g.clone());
        let irreps = IrrepSet::build(&t, &[]).unwrap();
        let (u, v) = random_unimodular(&mut rng, &g, 3, 8);
        assert_eq!(u.mul(&v, &g), GroupRingMatrix::identity(&g, 3), "{name}");
        let d = det_of_unit(&u, &t, &irreps).unwrap();
        assert!(d.iter().all(|z| z.norm() == rat(1, 1) || z.norm() == rat(-1, 1)), "{name}");
    }
}

#[test]
fn group_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for (name, g) in common::corpus() {
        let t = common::table(g);
        for _ in 0..5 {
            let a = random_class(&mut rng, &t);
            let b = random_class(&mut rng, &t);
            let c = random_class(&mut rng, &t);
            let id = ArithClassRep::identity(t.clone());
            assert!(same(&a.mul(&b).unwrap().mul(&c).unwrap(), &a.mul(&b.mul(&c).unwrap()).unwrap()), "{name}");
            assert!(same(&a.mul(&b).unwrap(), &b.mul(&a).unwrap()));
            assert!(same(&a.mul(&a.inv()).unwrap(), &id));
            assert!(same(&id.mul(&a).unwrap(), &a));
            assert!(same(&a.tilde().mul(&b.tilde()).unwrap(), &a.mul(&b).unwrap().tilde()));
            let ta = a.tilde();
            assert!((ta.arch()[0].value() - 1.0).abs() < 1e-15 && (0..8).all(|p| ta.fin_value(p, 0).is_one()));
        }
    }
    let other = common::table(FiniteGroup::cyclic(3));
    let c2 = common::table(FiniteGroup::cyclic(2));
    assert_eq!(
        ArithClassRep::identity(c2).mul(&ArithClassRep::identity(other)),
        Err(ClassError::GroupMismatch)
    );
}

#[test]
fn disjoint_supports_union() {
    let a = trivial_class(&[(2, 2, 1)], rat(1, 1));
    let b = trivial_class(&[(3, 3, 1)], rat(1, 1));
    let c = a.mul(&b).unwrap();
    assert_eq!(c.fin().support().collect::<Vec<_>>(), vec![2, 3]);
}

#[test]
fn tilde_examples() {
    let t = trivial_table();
    let a = trivial_class(&[(5, 5, 1)], rat(3, 1));
    assert!(same(&a.tilde(), &ArithClassRep::identity(t)));
    let c2 = common::table(FiniteGroup::cyclic(2));
    let ind = ArithClassRep::ind_from_trivial(&a, c2.clone()).unwrap();
    assert!(same(&ind.tilde(), &ArithClassRep::identity(c2.clone())));
    assert!(same(&ArithClassRep::identity(c2.clone()).tilde(), &ArithClassRep::identity(c2)));
}

#[test]
fn induction_from_trivial_group() {
    let a = trivial_class(&[(2, 2, 1)], rat(1, 1));
    assert_eq!(a.degree_map_trivial().unwrap().value(), 2.0);
    let c2 = common::table(FiniteGroup::cyclic(2));
    let ind = ArithClassRep::ind_from_trivial(&a, c2.clone()).unwrap();
    assert_eq!(ind.fin_value(2, 0), CyclotomicNumber::from_int(1, 2));
    assert_eq!(ind.fin_value(2, 1), CyclotomicNumber::from_int(1, 2));
    let s3 = common::table(common::s3());
    let ind = ArithClassRep::ind_from_trivial(&a, s3).unwrap();
    assert_eq!(ind.fin_value(2, 2), CyclotomicNumber::from_int(1, 4));
    assert_eq!(ArithClassRep::ind_from_trivial(&ind, c2).err(), Some(ClassError::NotTrivialGroup));
}

#[test]
fn degree_map_on_the_trivial_group() {
    let id = ArithClassRep::identity(trivial_table());
    assert_eq!(id.degree_map_trivial().unwrap().value(), 1.0);
    let six = trivial_class(&[(2, 2, 1), (3, 3, 1)], rat(1, 1));
    assert_eq!(six.degree_map_trivial().unwrap().as_rational(), Some(rat(6, 1)));
    let half = trivial_class(&[], rat(2, 1));
    assert_eq!(half.degree_map_trivial().unwrap().as_rational(), Some(rat(1, 2)));
    assert_eq!(half.square_rationality(), Ok(rat(1, 4)));
    let irr = ArithClassRep::new(trivial_table(), IdelicCharMap::new(), vec![ArchValue::approximate(std::f64::consts::PI, 1e-15)]);
    assert_eq!(irr.square_rationality(), Err(ClassError::NotRationalSquare));
    let c2 = ArithClassRep::identity(common::table(FiniteGroup::cyclic(2)));
    assert_eq!(c2.degree_map_trivial().err(), Some(ClassError::NotTrivialGroup));
}

#[test]
fn torsion_classes() {
    let t = trivial_table();
    let irreps = IrrepSet::build(&t, &[]).unwrap();
    let g1 = FiniteGroup::cyclic(1);
    let id = torsion_class(&GroupRingMatrix::identity(&g1, 2), 7, t.clone(), &irreps).unwrap();
    assert!(same(&id, &ArithClassRep::identity(t.clone())));
    let p = GroupRingMatrix::from_fn(1, 1, 1, |_, _| GroupRingElement::from_sparse(1, &[(0, 5)]));
    let c = torsion_class(&p, 5, t.clone(), &irreps).unwrap();
    assert_eq!(c.degree_map_trivial().unwrap().as_rational(), Some(rat(5, 1)));
    let c2 = FiniteGroup::cyclic(2);
    let t2 = common::table(c2.clone());
    let irreps2 = IrrepSet::build(&t2, &[]).unwrap();
    let five = GroupRingMatrix::from_fn(2, 1, 1, |_, _| GroupRingElement::from_sparse(2, &[(0, 5)]));
    let c = torsion_class(&five, 5, t2.clone(), &irreps2).unwrap();
    assert_eq!(c.fin_value(5, 0), CyclotomicNumber::from_int(1, 5));
    assert_eq!(c.fin_value(5, 1), CyclotomicNumber::from_int(1, 5));
    let bad = GroupRingMatrix::from_fn(2, 1, 1, |_, _| GroupRingElement::norm_element(2));
    assert!(matches!(torsion_class(&bad, 5, t2, &irreps2), Err(ClassError::NotCohomologicallyTrivial(_))));
}

#[test]
fn symplectic_restriction() {
    let q8 = common::q8();
    let t = common::table(q8.clone());
    let id = ArithClassRep::identity(t.clone()).restrict_symplectic();
    assert!(id.fin().is_empty() && id.arch().iter().all(|a| a.value() == 1.0));
    let irreps = IrrepSet::build(&t, &[]).unwrap();
    // a real unit: 2 + g + g^-1 for g = i
    let i = 2;
    let x = GroupRingElement::from_sparse(8, &[(0, 3), (i, 1), (q8.inv(i), 1)]);
    let d = det_of_unit(&GroupRingMatrix::from_fn(8, 1, 1, |_, _| x.clone()), &t, &irreps).unwrap();
    let mut fin = IdelicCharMap::new();
    fin.insert(3, d.clone());
    let c = ArithClassRep::new(t.clone(), fin, (0..5).map(|_| ArchValue::one()).collect());
    let s = c.restrict_symplectic();
    let gens = s.generators().to_vec();
    let quat = gens.iter().position(|g| *g == t.irreducible(4)).unwrap();
    assert!(s.fin()[&3][quat].as_rational().is_some());
    assert_eq!(s.fin()[&3][0], &d[0] * &d[0]);
}

#[test]
fn theta_on_rational_data() {
    let t = trivial_table();
    let mut fin = std::collections::BTreeMap::new();
    fin.insert(3u64, vec![CyclotomicNumber::from_int(1, 3)]);
    let s = SymplecticClassRep::new(t.clone(), fin, vec![ArchValue::one()]);
    assert_eq!(s.theta().unwrap().values, vec![rat(3, 1)]);
    assert!(SymplecticClassRep::identity(t.clone()).theta().unwrap().is_identity());
    let s = SymplecticClassRep::new(t.clone(), Default::default(), vec![ArchValue::from_rational(&rat(4, 1))]);
    assert_eq!(s.theta().unwrap().values, vec![rat(1, 4)]);
    let mut fin = std::collections::BTreeMap::new();
    fin.insert(2u64, vec![CyclotomicNumber::from_int(1, 2)]);
    fin.insert(3u64, vec![CyclotomicNumber::from_int(1, 3)]);
    let mixed = SymplecticClassRep::new(t.clone(), fin, vec![ArchValue::one()]);
    assert!(matches!(mixed.theta(), Err(ClassError::NotVisiblyRational(_))));
    let float = SymplecticClassRep::new(t, Default::default(), vec![ArchValue::approximate(2.0, 1e-15)]);
    assert!(matches!(float.theta(), Err(ClassError::NotVisiblyRational(_))));
}

fn c4_ramification() -> (SharedTable, LocalRamification, VirtualCharacter) {
    let c4 = FiniteGroup::cyclic(4);
    let t = common::table(c4.clone());
    let inertia = Subgroup::new(&c4, &[0, 1, 2, 3]).unwrap();
    let psi = t
        .symplectic_generators()
        .into_iter()
        .find(|v| v.coeffs.iter().filter(|&&a| a == 1).count() == 2)
        .unwrap();
    (t, LocalRamification { p: 5, residue_degree: 1, inertia }, psi)
}

#[test]
fn pfaffians() {
    let (t, ram, psi) = c4_ramification();
    assert_eq!(pfaffian_p(&t, &[ram.clone()], &psi).unwrap(), rat(-5, 1));
    assert_eq!(pfaffian_p(&t, &[ram.clone()], &VirtualCharacter::zero(4)).unwrap(), rat(1, 1));
    let unram = LocalRamification { p: 7, residue_degree: 1, inertia: Subgroup::new(t.group(), &[0]).unwrap() };
    assert_eq!(pfaffian_p(&t, &[unram], &psi).unwrap(), rat(1, 1));
    // pairing of the order-two character with u is 1: odd
    let eta = t.irreducible((0..4).find(|&i| t.value_at(i, 1) == &CyclotomicNumber::from_int(1, -1)).unwrap());
    assert_eq!(pfaffian_p(&t, &[ram.clone()], &eta), Err(ClassError::OddPairing));
    for g in t.symplectic_generators() {
        for h in t.symplectic_generators() {
            let lhs = pfaffian_p(&t, &[ram.clone()], &g.add(&h)).unwrap();
            let rhs = pfaffian_p(&t, &[ram.clone()], &g).unwrap() * pfaffian_p(&t, &[ram.clone()], &h).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn delta_and_xi() {
    let one = BigInt::from(1);
    assert_eq!(delta_k(1, &one, 4, 0).as_rational(), Some(rat(1, 1)));
    assert_eq!(delta_k(1, &one, 2, 2).as_rational(), Some(rat(2, 1)));
    assert_eq!(delta_k(1, &one, 4, 2).as_rational(), Some(rat(4, 1)));
    assert!((delta_k(1, &one, 2, 1).value() - 2f64.sqrt()).abs() < 1e-15);
    assert_eq!(xi_s(&[], 1, 2, 1), Ok(rat(1, 1)));
    assert_eq!(xi_s(&[2, 3], 1, 2, 0), Ok(rat(1, 1)));
    assert_eq!(xi_s(&[2, 3], 1, 2, 1), Ok(rat(1, 6)));
    assert_eq!(xi_s(&[2], 1, 1, 1), Err(ClassError::OddProduct));
}

#[test]
fn valuations_and_primes() {
    assert_eq!(valuation(&rat(50, 3), 5), 2);
    assert_eq!(valuation(&rat(50, 3), 3), -1);
    assert_eq!(rational_primes(&rat(-12, 35)), vec![2, 3, 5, 7]);
    assert_eq!(p_part(&rat(-24, 7), 2), rat(8, 1));
}

#[test]
fn arch_values() {
    let a = ArchValue::from_rational(&rat(9, 4));
    assert_eq!(a.nth_root(2).as_rational(), Some(rat(3, 2)));
    assert_eq!(a.mul(&a.inv()).as_rational(), Some(rat(1, 1)));
    let r = ArchValue::root(CyclotomicNumber::from_int(1, 2), 2).unwrap();
    assert_eq!(r.powi(2).as_rational(), Some(rat(2, 1)));
    assert!(ArchValue::root(CyclotomicNumber::from_int(1, -2), 2).is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_is_a_homomorphism(a in 1i64..50, b in 1i64..50, c in 1i64..50, d in 1i64..50, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let x = trivial_class(&[(p, a, b)], rat(c, d));
        let y = trivial_class(&[(p, b, 1), (11, a, 1)], rat(d, 1));
        let gx = x.degree_map_trivial().unwrap();
        let gy = y.degree_map_trivial().unwrap();
        let gxy = x.mul(&y).unwrap().degree_map_trivial().unwrap();
        prop_assert!(gxy.approx_eq(&gx.mul(&gy), 1e-12));
        prop_assert!(x.inv().degree_map_trivial().unwrap().approx_eq(&gx.inv(), 1e-12));
    }

    #[test]
    fn tilde_is_a_homomorphism(seed in any::<u64>(), gi in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, g) = common::corpus().swap_remove(gi);
        let t = common::table(g);
        let a = random_class(&mut rng, &t);
        let b = random_class(&mut rng, &t);
        prop_assert!(same(&a.mul(&b).unwrap().tilde(), &a.tilde().mul(&b.tilde()).unwrap()));
    }
}
