//! Property suites run by `verify`.
//!
//! Every suite draws its randomness from a ChaCha8 stream derived from the
//! seed, the suite and the property, so results do not depend on which other
//! suites run or on thread scheduling.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::thread;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use tamearith_core::classrep::{det_of_unit, pfaffian_p, ArchValue, ArithClassRep, IdelicCharMap, LocalRamification};
use tamearith_core::cycloarith::{euler_phi, is_prime, CyclotomicNumber, Rational};
use tamearith_core::groupchar::{CharacterTable, FiniteGroup, GroupRingElement, GroupRingMatrix, IrrepSet, SharedTable, Subgroup, VirtualCharacter};
use tamearith_core::metcomplex::fixtures::*;
use tamearith_core::metcomplex::*;
use tamearith_core::tamefield::{
    galois_action_check, pfaffian_magnitudes, resolvent_signs, resolvent_virtual, tame_gauss_sum, GaloisData, TameFieldDescriptor,
};

use crate::commands::{character_data, Options};
use crate::corpus::{is_wild, Corpus};
use crate::load::{self, InputError};
use crate::report::{Check, Property};

pub const SUITES: [&str; 5] = ["groupchar", "cyclo", "classrep", "metcomplex", "tamefield"];

pub fn stream(seed: u64, suite: &str, property: u64) -> ChaCha8Rng {
    let idx = SUITES.iter().position(|s| *s == suite).map_or(99, |i| i as u64);
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(idx * 1000 + property);
    r
}

pub struct SuiteRun {
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

/// Runs one suite, or all of them on worker threads. Results come back in
/// the fixed suite order.
pub fn verify(suite: &str, corpus: &Corpus, o: &Options) -> Result<Vec<SuiteRun>, InputError> {
    let names: Vec<&'static str> = if suite == "all" {
        SUITES.to_vec()
    } else {
        match SUITES.iter().find(|s| **s == suite) {
            Some(s) => vec![*s],
            None => return Err(InputError::invalid("--suite", "suite", format!("unknown suite \"{suite}\""))),
        }
    };
    // fields are checked up front so that a corrupted descriptor is an input error
    let fields = load_fields(corpus, o)?;
    let results: Vec<Result<SuiteRun, InputError>> = thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|&name| {
                let fields = &fields;
                s.spawn(move || {
                    let start = Instant::now();
                    let checks = run_one(name, corpus, fields, o);
                    Ok(SuiteRun { name, checks, elapsed: start.elapsed() })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite worker panicked")).collect()
    });
    results.into_iter().collect()
}

fn run_one(name: &str, corpus: &Corpus, fields: &[LoadedField], o: &Options) -> Vec<Check> {
    match name {
        "groupchar" => groupchar(corpus, o),
        "cyclo" => cyclo(o),
        "classrep" => classrep(corpus, o),
        "metcomplex" => metcomplex(corpus, o),
        _ => tamefield(fields, o),
    }
}

/// A corpus field: a tame descriptor, or Galois data only for wild fields.
pub enum LoadedField {
    Tame(String, TameFieldDescriptor),
    GaloisOnly(String, GaloisData),
}

impl LoadedField {
    pub fn name(&self) -> &str {
        match self {
            Self::Tame(n, _) | Self::GaloisOnly(n, _) => n,
        }
    }

    pub fn galois(&self) -> &GaloisData {
        match self {
            Self::Tame(_, f) => f.data(),
            Self::GaloisOnly(_, d) => d,
        }
    }
}

pub fn load_fields(corpus: &Corpus, o: &Options) -> Result<Vec<LoadedField>, InputError> {
    corpus
        .fields
        .iter()
        .map(|e| {
            if is_wild(&e.file) {
                Ok(LoadedField::GaloisOnly(e.file.name.clone(), load::load_galois(&e.path, &e.file, o.precision_bits)?))
            } else {
                Ok(LoadedField::Tame(e.file.name.clone(), load::load_field(&e.path, &e.file, o.precision_bits)?))
            }
        })
        .collect()
}

pub fn table(g: &FiniteGroup) -> Result<SharedTable, String> {
    CharacterTable::compute(g.clone()).map(Arc::new).map_err(|e| e.to_string())
}

pub fn context(t: &SharedTable) -> Result<Arc<IsotypicContext>, String> {
    IsotypicContext::from_table(t.clone()).map(Arc::new).map_err(|e| e.to_string())
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

pub fn cabs(z: &CyclotomicNumber) -> f64 {
    let (re, im) = z.to_f64_pair();
    re.hypot(im)
}

// ---- groupchar --------------------------------------------------------------

fn groupchar(c: &Corpus, o: &Options) -> Vec<Check> {
    let mut orth = Property::new("groupchar: row orthogonality over the class sums");
    let mut degs = Property::new("groupchar: squared degrees sum to the order");
    let mut fs = Property::new("groupchar: Frobenius-Schur indicators");
    let mut recip = Property::new("groupchar: Frobenius reciprocity on random triples");
    let mut even = Property::new("groupchar: symplectic generators pair evenly with cyclic augmentation characters");
    for (gi, (name, g)) in c.groups.iter().enumerate() {
        let t = match table(g) {
            Ok(t) => t,
            Err(e) => {
                orth.record(false, || (format!("{name}: {e}"), json!({ "group": name })));
                continue;
            }
        };
        let (_, checks) = character_data(name, &t);
        for (p, ch) in [&mut orth, &mut degs, &mut fs].into_iter().zip(&checks) {
            p.record(ch.passed, || (format!("{name}: {}", ch.detail), json!({ "group": name })));
        }
        let subs = g.subgroups();
        let mut rng = stream(o.seed, "groupchar", gi as u64);
        for trial in 0..100 {
            let h = &subs[rng.gen_range(0..subs.len())];
            let Some(sub) = recip.record_result(Subgroup::new(g, h), || json!({ "group": name, "subgroup": h })) else { continue };
            let m = sub.table().num_irreducibles();
            let theta = VirtualCharacter { coeffs: (0..m).map(|_| rng.gen_range(-3..=3)).collect() };
            let psi = VirtualCharacter { coeffs: (0..t.num_irreducibles()).map(|_| rng.gen_range(-3..=3)).collect() };
            let repro = || json!({ "group": name, "seed": o.seed, "trial": trial, "subgroup": h, "theta": theta.coeffs, "psi": psi.coeffs });
            let lhs = sub.induce(&t, &theta).and_then(|ind| t.inner_product(&ind.class_function(&t), &psi.class_function(&t)));
            let rhs = sub
                .restrict(&t, &psi)
                .and_then(|res| sub.table().inner_product(&theta.class_function(sub.table()), &res.class_function(sub.table())));
            match (lhs, rhs) {
                (Ok(a), Ok(b)) => recip.record(a == b, || (format!("{name}: {a} != {b}"), repro())),
                (Err(e), _) | (_, Err(e)) => recip.record(false, || (format!("{name}: {e}"), repro())),
            }
        }
        for h in &subs {
            let Ok(sub) = Subgroup::new(g, h) else { continue };
            if !sub.is_cyclic() {
                continue;
            }
            let ti = sub.table();
            let u = ti.regular().sub(&ti.trivial());
            for psi in t.symplectic_generators() {
                let r = sub.restrict(&t, &psi).and_then(|res| ti.inner_product(&res.class_function(ti), &u.class_function(ti)));
                match r {
                    Ok(v) => even.record(v % 2 == 0, || {
                        (format!("{name}: pairing {v}"), json!({ "group": name, "subgroup": h, "psi": psi.coeffs }))
                    }),
                    Err(e) => even.record(false, || (e.to_string(), json!({ "group": name, "subgroup": h }))),
                }
            }
        }
    }
    vec![orth.finish(), degs.finish(), fs.finish(), recip.finish(), even.finish()]
}

// ---- cyclo ------------------------------------------------------------------

pub fn random_cyclotomic<R: Rng>(rng: &mut R, n: u32) -> (Vec<i64>, CyclotomicNumber) {
    let coeffs: Vec<i64> = (0..euler_phi(n)).map(|_| rng.gen_range(-6..=6)).collect();
    let z = CyclotomicNumber::new(n, coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect()).expect("power basis");
    (coeffs, z)
}

fn cyclo(o: &Options) -> Vec<Check> {
    let mut enclose = Property::new("cyclo: embeddings enclose sums and products");
    let mut hom = Property::new("cyclo: Galois action is a ring homomorphism");
    let mut norm = Property::new("cyclo: product of Galois conjugates is the norm");
    let mut conj = Property::new("cyclo: conjugation is an involution");
    let mut mult = Property::new("cyclo: norm is multiplicative");
    for (ci, n) in [3u32, 4, 5, 7, 8, 12].into_iter().enumerate() {
        let mut rng = stream(o.seed, "cyclo", ci as u64);
        let units = CyclotomicNumber::galois_exponents(n);
        for trial in 0..1000 {
            let (ca, a) = random_cyclotomic(&mut rng, n);
            let (cb, b) = random_cyclotomic(&mut rng, n);
            let k = units[rng.gen_range(0..units.len())];
            let repro = || json!({ "conductor": n, "seed": o.seed, "trial": trial, "a": ca, "b": cb, "k": k });
            let (s, p) = (&a + &b, &a * &b);
            let ok = s.embed(k).overlaps(&(a.embed(k) + b.embed(k))) && p.embed(k).overlaps(&(a.embed(k) * b.embed(k)));
            enclose.record(ok, || ("interval images disjoint".into(), repro()));
            let ok = match (s.galois(k), p.galois(k), a.galois(k), b.galois(k)) {
                (Ok(sk), Ok(pk), Ok(ak), Ok(bk)) => sk == &ak + &bk && pk == &ak * &bk,
                _ => false,
            };
            hom.record(ok, || ("sigma(a + b) or sigma(ab) differs".into(), repro()));
            let mut acc = CyclotomicNumber::one(n);
            for &j in &units {
                acc = &acc * &a.galois(j).expect("unit exponent");
            }
            norm.record(acc.as_rational() == Some(a.norm()), || (format!("{acc} vs {}", a.norm()), repro()));
            conj.record(a.conj().conj() == a, || ("conj(conj(a)) != a".into(), repro()));
            mult.record(p.norm() == a.norm() * b.norm(), || ("N(ab) != N(a) N(b)".into(), repro()));
        }
    }
    vec![enclose.finish(), hom.finish(), norm.finish(), conj.finish(), mult.finish()]
}

// ---- classrep ---------------------------------------------------------------

pub fn random_class<R: Rng>(rng: &mut R, t: &SharedTable, irreps: &IrrepSet) -> ArithClassRep {
    let g = t.group();
    let mut fin = IdelicCharMap::new();
    for p in [2u64, 3, 5] {
        if rng.gen_bool(0.6) {
            let x = random_rational_invertible(rng, g, 1);
            fin.insert(p, det_of_unit(&x, t, irreps).expect("invertible"));
        }
    }
    let arch = (0..t.num_irreducibles()).map(|_| ArchValue::approximate(rng.gen_range(0.1..10.0), 1e-15)).collect();
    ArithClassRep::new(t.clone(), fin, arch)
}

/// Exact equality of finite parts and archimedean agreement within `tol`.
pub fn same_class(a: &ArithClassRep, b: &ArithClassRep, tol: f64) -> bool {
    let primes: BTreeSet<u64> = a.fin().support().chain(b.fin().support()).collect();
    let n = a.table().num_irreducibles();
    primes.into_iter().all(|p| (0..n).all(|i| a.fin_value(p, i) == b.fin_value(p, i)))
        && a.arch().iter().zip(b.arch()).all(|(x, y)| x.approx_eq(y, tol))
}

fn classrep(c: &Corpus, o: &Options) -> Vec<Check> {
    let mut axioms = Property::new("classrep: associativity, commutativity and inverses");
    let mut tilde = Property::new("classrep: tilde is a homomorphism");
    let mut galois = Property::new("classrep: Det of units is Galois equivariant");
    let mut fixed = Property::new("classrep: trivial coordinate equals the class of the fixed-point complex");
    let mut pf = Property::new("classrep: Pfaffians are additive in the character");
    let tol = 1e-12;
    for (gi, (name, g)) in c.groups.iter().enumerate() {
        let Some(t) = axioms.record_result(table(g), || json!({ "group": name })) else { continue };
        let Some(irreps) = axioms.record_result(IrrepSet::build(&t, &[]), || json!({ "group": name })) else { continue };
        let mut rng = stream(o.seed, "classrep", 10 * gi as u64);
        let id = ArithClassRep::identity(t.clone());
        for trial in 0..5 {
            let (a, b, x) = (random_class(&mut rng, &t, &irreps), random_class(&mut rng, &t, &irreps), random_class(&mut rng, &t, &irreps));
            let repro = || json!({ "group": name, "seed": o.seed, "trial": trial });
            let r = (|| -> Result<bool, tamearith_core::classrep::ClassError> {
                Ok(same_class(&a.mul(&b)?.mul(&x)?, &a.mul(&b.mul(&x)?)?, tol)
                    && same_class(&a.mul(&b)?, &b.mul(&a)?, tol)
                    && same_class(&a.mul(&a.inv())?, &id, tol))
            })();
            match r {
                Ok(ok) => axioms.record(ok, || ("group law fails".into(), repro())),
                Err(e) => axioms.record(false, || (e.to_string(), repro())),
            }
            let ok = a.mul(&b).map(|ab| same_class(&ab.tilde(), &a.tilde().mul(&b.tilde()).expect("same table"), tol));
            tilde.record(ok == Ok(true), || ("tilde(ab) != tilde(a) tilde(b)".into(), repro()));
        }
        let e = t.exponent();
        let mut rng = stream(o.seed, "classrep", 10 * gi as u64 + 1);
        for trial in 0..5 {
            let x = random_rational_invertible(&mut rng, g, 2);
            let repro = || json!({ "group": name, "seed": o.seed, "trial": trial });
            let Some(d) = galois.record_result(det_of_unit(&x, &t, &irreps), repro) else { continue };
            let ok = CyclotomicNumber::galois_exponents(e).into_iter().all(|k| {
                (0..d.len()).all(|i| d.get(t.galois_image(i, k)) == d[i].galois(k).ok().map(|z| z.normalized()).as_ref())
            });
            galois.record(ok, || ("Det(x)(chi^sigma) != sigma(Det(x)(chi))".into(), repro()));
        }
        let Ok(ctx) = context(&t) else { continue };
        let mut rng = stream(o.seed, "classrep", 10 * gi as u64 + 2);
        for trial in 0..2 {
            let p = { let s = ComplexShape::random(&mut rng); random_complex(&mut rng, g, s) };
            let forms: Result<Vec<_>, _> = p.ranks().iter().map(|&r| random_form(&mut rng, g, r)).collect();
            let repro = || json!({ "group": name, "seed": o.seed, "trial": trial });
            let Some(forms) = fixed.record_result(forms, repro) else { continue };
            let Some(m) = fixed.record_result(MetrisedComplex::from_forms(p.clone(), ctx.clone(), &forms), repro) else { continue };
            let mut b = BasisData::with_global(p.ranks().iter().map(|&r| random_rational_invertible(&mut rng, g, r)).collect());
            b.local.insert(3, p.ranks().iter().map(|&r| random_local_unit(&mut rng, g, r, 3)).collect());
            match fixed_point_defect(&m, &b) {
                Ok(Some(d)) => fixed.record(d <= o.tol, || (format!("archimedean defect {d:.3e}"), repro())),
                Ok(None) => fixed.record(false, || ("finite parts differ".into(), repro())),
                Err(e) => fixed.record(false, || (e.to_string(), repro())),
            }
        }
        let prime = (5u64..).find(|&p| is_prime(p) && g.order() as u64 % p != 0).expect("a prime");
        let gens = t.symplectic_generators();
        for h in g.subgroups() {
            let Ok(inertia) = Subgroup::new(g, &h) else { continue };
            if !inertia.is_cyclic() {
                continue;
            }
            let ram = [LocalRamification { p: prime, residue_degree: 1, inertia }];
            for a in &gens {
                for b in &gens {
                    let repro = || json!({ "group": name, "inertia": h, "p": prime, "psi": a.coeffs, "phi": b.coeffs });
                    let r = (|| Ok::<_, tamearith_core::classrep::ClassError>(
                        pfaffian_p(&t, &ram, &a.add(b))? == pfaffian_p(&t, &ram, a)? * pfaffian_p(&t, &ram, b)?,
                    ))();
                    match r {
                        Ok(ok) => pf.record(ok, || ("Pf(psi + phi) != Pf(psi) Pf(phi)".into(), repro())),
                        Err(e) => pf.record(false, || (e.to_string(), repro())),
                    }
                }
            }
        }
    }
    vec![axioms.finish(), tilde.finish(), galois.finish(), fixed.finish(), pf.finish()]
}

// ---- metcomplex -------------------------------------------------------------

/// `prod_i Det(x_i)^{(-1)^i}` per irreducible.
pub fn signed_det_product(bases: &[GroupRingMatrix], p: &PerfectComplex, t: &CharacterTable, irreps: &IrrepSet) -> Option<Vec<CyclotomicNumber>> {
    let mut acc: Vec<CyclotomicNumber> = (0..irreps.len()).map(|_| CyclotomicNumber::one(1)).collect();
    for (i, x) in bases.iter().enumerate() {
        let d = det_of_unit(x, t, irreps).ok()?;
        for (a, z) in acc.iter_mut().zip(d) {
            let z = if p.sign(i) > 0 { z } else { z.inv().ok()? };
            *a = &*a * &z;
        }
    }
    Some(acc)
}

pub fn random_bases<R: Rng>(rng: &mut R, g: &FiniteGroup, p: &PerfectComplex) -> BasisData {
    BasisData::with_global(p.ranks().iter().map(|&r| random_rational_invertible(rng, g, r)).collect())
}

pub fn random_metrised<R: Rng>(rng: &mut R, g: &FiniteGroup, ctx: &Arc<IsotypicContext>, p: &PerfectComplex) -> Result<MetrisedComplex, MetError> {
    let forms = p.ranks().iter().map(|&r| random_form(rng, g, r)).collect::<Result<Vec<_>, _>>()?;
    MetrisedComplex::from_forms(p.clone(), ctx.clone(), &forms)
}

/// Integer determinant by fraction-free elimination.
pub fn bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
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

fn metcomplex(c: &Corpus, o: &Options) -> Vec<Check> {
    let mut local = Property::new("metcomplex: changing local bases multiplies by Det of a local unit");
    let mut global = Property::new("metcomplex: changing global bases multiplies by (Det eta, |Det eta|)");
    let mut frame = Property::new("metcomplex: choice of orthonormal frame does not matter");
    let mut quasi = Property::new("metcomplex: quasi-isomorphic complexes with transported metrics have equal classes");
    let mut km = Property::new("metcomplex: scale of a two-term integer complex is |det| of the boundary");
    let mut iso = Property::new("metcomplex: the isotypic map is an isometry");
    let mut dd = Property::new("metcomplex: boundaries that do not compose to zero are rejected");
    for (gi, (name, g)) in c.groups.iter().enumerate() {
        let Some(t) = local.record_result(table(g), || json!({ "group": name })) else { continue };
        let Some(ctx) = local.record_result(context(&t), || json!({ "group": name })) else { continue };
        let irreps = ctx.irreps();
        let base = 10 * gi as u64;

        let mut rng = stream(o.seed, "metcomplex", base);
        for trial in 0..2 {
            let repro = || json!({ "group": name, "seed": o.seed, "trial": trial });
            let p = { let s = ComplexShape::random(&mut rng); random_complex(&mut rng, g, s) };
            let Some(m) = local.record_result(MetrisedComplex::standard(p.clone(), ctx.clone()), repro) else { continue };
            let b0 = random_bases(&mut rng, g, &p);
            let Some(c0) = local.record_result(arithmetic_class(&m, &b0), repro) else { continue };
            for q in [2u64, 3, 5] {
                let units: Vec<GroupRingMatrix> = p.ranks().iter().map(|&r| random_local_unit(&mut rng, g, r, q)).collect();
                let mut b1 = b0.clone();
                b1.local.insert(q, units.clone());
                let Some(c1) = local.record_result(arithmetic_class(&m, &b1), repro) else { continue };
                let Some(v0) = local.record_result(finite_value_at(&m, &b0, q), repro) else { continue };
                let ok = match signed_det_product(&units, &p, &t, irreps) {
                    Some(du) => (0..du.len()).all(|phi| &c1.fin_value(q, phi) * &du[phi] == v0[phi]),
                    None => false,
                };
                let dist = c0.orbit_degree_distance(&c1);
                local.record(ok && c0.arch() == c1.arch() && dist.is_some_and(|d| d <= o.tol), || {
                    (format!("at {q}: orbit distance {dist:?}"), repro())
                });
            }
        }

        let mut rng = stream(o.seed, "metcomplex", base + 1);
        for trial in 0..3 {
            let repro = || json!({ "group": name, "seed": o.seed, "trial": trial });
            let p = { let s = ComplexShape::random(&mut rng); random_complex(&mut rng, g, s) };
            let Some(m) = global.record_result(random_metrised(&mut rng, g, &ctx, &p), repro) else { continue };
            let b0 = random_bases(&mut rng, g, &p);
            let eta: Vec<GroupRingMatrix> = p.ranks().iter().map(|&r| random_rational_invertible(&mut rng, g, r)).collect();
            let b1 = BasisData::with_global(eta.iter().zip(&b0.global).map(|(e, a)| e.mul(a, g)).collect());
            let Some(c0) = global.record_result(arithmetic_class(&m, &b0), repro) else { continue };
            let Some(c1) = global.record_result(arithmetic_class(&m, &b1), repro) else { continue };
            let Some(de) = signed_det_product(&eta, &p, &t, irreps) else {
                global.record(false, || ("eta not invertible".into(), repro()));
                continue;
            };
            let primes: BTreeSet<u64> = c0.fin().support().chain(c1.fin().support()).collect();
            let mut ok = true;
            for q in primes {
                match (finite_value_at(&m, &b0, q), finite_value_at(&m, &b1, q)) {
                    (Ok(v0), Ok(v1)) => ok &= (0..de.len()).all(|phi| v1[phi] == &v0[phi] * &de[phi]),
                    _ => ok = false,
                }
            }
            let worst = (0..de.len()).map(|phi| rel(c1.arch()[phi].value(), c0.arch()[phi].value() * cabs(&de[phi]))).fold(0.0, f64::max);
            global.record(ok && worst <= o.tol, || (format!("finite exact: {ok}, archimedean deviation {worst:.3e}"), repro()));
        }

        let mut rng = stream(o.seed, "metcomplex", base + 2);
        {
            let repro = || json!({ "group": name, "seed": o.seed });
            let p = { let s = ComplexShape::random(&mut rng); random_complex(&mut rng, g, s) };
            let forms: Result<Vec<_>, _> = p.ranks().iter().map(|&r| random_form(&mut rng, g, r)).collect();
            let b = random_bases(&mut rng, g, &p);
            let mut rotated = (*ctx).clone();
            for phi in 0..irreps.len() {
                let u = random_unitary(&mut rng, ctx.frame(phi).width());
                rotated = rotated.with_rotated_frame(phi, &u);
            }
            let r = forms.and_then(|f| {
                let c0 = arithmetic_class(&MetrisedComplex::from_forms(p.clone(), ctx.clone(), &f)?, &b)?;
                let c1 = arithmetic_class(&MetrisedComplex::from_forms(p.clone(), Arc::new(rotated), &f)?, &b)?;
                Ok((c0, c1))
            });
            if let Some((c0, c1)) = frame.record_result(r, repro) {
                let worst = c0.arch().iter().zip(c1.arch()).map(|(a, b)| a.rel_diff(b)).fold(0.0, f64::max);
                frame.record(c0.fin() == c1.fin() && worst <= o.tol, || (format!("archimedean deviation {worst:.3e}"), repro()));
            }
        }

        let mut rng = stream(o.seed, "metcomplex", base + 3);
        for trial in 0..2 {
            let repro = || json!({ "group": name, "seed": o.seed, "trial": trial });
            let r = quasi_iso_pair(&mut rng, g, &ctx);
            if let Some(dist) = quasi.record_result(r, repro) {
                quasi.record(dist.is_some_and(|d| d <= o.tol), || (format!("orbit distance {dist:?}"), repro()));
            }
        }

        let mut rng = stream(o.seed, "metcomplex", base + 4);
        {
            let d = 2;
            let repro = || json!({ "group": name, "seed": o.seed });
            if let Some(form) = iso.record_result(random_form(&mut rng, g, d), repro) {
                let defect = MetrisedComplex::isometry_defect(&ctx, &form);
                iso.record(defect < 1e-12, || (format!("Gram defect {defect:.3e}"), repro()));
                for _ in 0..20 {
                    let phi = rng.gen_range(0..irreps.len());
                    let w = ctx.frame(phi).width();
                    let v: Vec<Complex64> = (0..d * w).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
                    let (a, b) = MetrisedComplex::isometry_norms(&ctx, &form, phi, &v);
                    iso.record(rel(a, b) < 1e-12, || (format!("norms {a} and {b}"), json!({ "group": name, "seed": o.seed, "phi": phi })));
                }
            }
        }

        let one = GroupRingMatrix::identity(g, 1);
        let bad = PerfectComplex::new(g.clone(), 0, vec![1, 1, 1], vec![one.clone(), one]);
        dd.record(matches!(bad, Err(MetError::NotAComplex(0))), || ("accepted d o d != 0".into(), json!({ "group": name })));
    }

    let trivial = FiniteGroup::cyclic(1);
    if let (Ok(t), mut rng) = (table(&trivial), stream(o.seed, "metcomplex", 999)) {
        if let Ok(ctx) = context(&t) {
            for trial in 0..40 {
                let k = rng.gen_range(1..=4);
                let ints: Vec<Vec<i128>> = (0..k).map(|_| (0..k).map(|_| rng.gen_range(-5..=5)).collect()).collect();
                let det = bareiss(ints.clone());
                if det == 0 {
                    continue;
                }
                let repro = || json!({ "seed": o.seed, "trial": trial, "matrix": ints });
                let b = GroupRingMatrix::from_fn(1, k, k, |r, c| GroupRingElement::from_sparse(1, &[(0, ints[r][c] as i64)]));
                let r = PerfectComplex::new(trivial.clone(), 0, vec![k, k], vec![b]).and_then(|p| {
                    let m = MetrisedComplex::unit(p.clone(), ctx.clone())?;
                    arithmetic_class(&m, &BasisData::standard(&p))
                });
                if let Some(cl) = km.record_result(r, repro) {
                    let inv = CyclotomicNumber::from_rational(1, Rational::new(1.into(), (det as i64).into()));
                    let fin_ok = cl.fin().support().all(|q| cl.fin_value(q, 0) == inv);
                    let dev = rel(cl.arch()[0].value(), det.abs() as f64);
                    km.record(fin_ok && dev < 1e-12, || (format!("|det| {det}, archimedean {}", cl.arch()[0].value()), repro()));
                }
            }
        }
    }
    vec![local.finish(), global.finish(), frame.finish(), quasi.finish(), km.finish(), iso.finish(), dd.finish()]
}

/// A random complex, a quasi-isomorphic one with random metrics, the
/// transported metrics and random bases on both; returns the orbit-degree
/// distance of the two classes.
pub fn quasi_iso_pair<R: Rng>(rng: &mut R, g: &FiniteGroup, ctx: &Arc<IsotypicContext>) -> Result<Option<f64>, MetError> {
    let c = { let s = ComplexShape::random(rng); random_complex(rng, g, s) };
    let (d, alpha) = random_quasi_iso(rng, &c);
    let md = random_metrised(rng, g, ctx, &d)?;
    let mc = MetrisedComplex::transport(c.clone(), &alpha, &md)?;
    let bc = random_bases(rng, g, &c);
    let bd = random_bases(rng, g, &d);
    let xc = arithmetic_class(&mc, &bc)?;
    let xd = arithmetic_class(&md, &bd)?;
    Ok(xc.orbit_degree_distance(&xd))
}

// ---- tamefield --------------------------------------------------------------

fn tamefield(fields: &[LoadedField], o: &Options) -> Vec<Check> {
    let mut signs = Property::new("tamefield: resolvent signs equal archimedean signs");
    let mut action = Property::new("tamefield: translation multiplies resolvents by the determinant");
    let mut mags = Property::new("tamefield: Pf_p^2 equals p to the conductor exponent");
    let mut gauss_abs = Property::new("tamefield: |tau|^2 = q at the ramified primes of abelian fields");
    let mut multiplicative = Property::new("tamefield: resolvents are multiplicative");
    let mut gauss = Property::new("tamefield: tau(chi) tau(conj chi) = chi(-1) q for q in {5, 7, 13, 25}");
    for (fi, f) in fields.iter().enumerate() {
        let name = f.name();
        let data = f.galois();
        let repro = || json!({ "field": name });
        if let Some(cmp) = signs.record_result(resolvent_signs(data), repro) {
            for s in cmp {
                signs.record(s.holds(), || {
                    (format!("{name}: sign {} vs eps {}", s.sign, s.eps), json!({ "field": name, "generator": s.generator.coeffs }))
                });
            }
        }
        let t = data.table();
        for phi in 0..t.num_irreducibles() {
            for x in 0..data.group().order() {
                let r = galois_action_check(data, phi, x);
                if let Some(c) = action.record_result(r, repro) {
                    action.record(c.holds, || {
                        (format!("{name}: residual {:.3e}", c.residual), json!({ "field": name, "character": phi, "element": x }))
                    });
                }
            }
        }
        let mut rng = stream(o.seed, "tamefield", fi as u64);
        for trial in 0..20 {
            let k = t.num_irreducibles();
            let a = VirtualCharacter { coeffs: (0..k).map(|_| rng.gen_range(-2..=2)).collect() };
            let b = VirtualCharacter { coeffs: (0..k).map(|_| rng.gen_range(-2..=2)).collect() };
            let rp = || json!({ "field": name, "seed": o.seed, "trial": trial, "a": a.coeffs, "b": b.coeffs });
            let r = (|| Ok::<_, tamearith_core::tamefield::FieldError>((resolvent_virtual(data, &a.add(&b))?, resolvent_virtual(data, &a)? * resolvent_virtual(data, &b)?)))();
            if let Some((lhs, rhs)) = multiplicative.record_result(r, rp) {
                multiplicative.record(lhs.overlaps(&rhs), || (format!("{name}: disjoint enclosures"), rp()));
            }
        }
        let LoadedField::Tame(_, desc) = f else { continue };
        if let Some(ms) = mags.record_result(pfaffian_magnitudes(desc), repro) {
            for m in ms {
                mags.record(m.holds, || {
                    (format!("{name}: Pf {} at {}", m.pfaffian, m.p), json!({ "field": name, "p": m.p, "generator": m.generator.coeffs }))
                });
            }
        }
        if data.group().is_abelian() {
            for r in desc.ram() {
                let e = r.e() as u32;
                for k in 1..e as i64 {
                    let rp = || json!({ "field": name, "p": r.p, "q": r.q, "e": e, "exponent": k });
                    if let Some(tau) = gauss_abs.record_result(tame_gauss_sum(r.p, r.q, e, k), rp) {
                        let q = CyclotomicNumber::from_int(1, r.q as i64);
                        gauss_abs.record(tau.abs_sq().normalized() == q, || (format!("|tau|^2 = {}", tau.abs_sq()), rp()));
                    }
                }
            }
        }
    }
    for (p, q) in [(5u64, 5u64), (7, 7), (13, 13), (5, 25)] {
        let e = (q - 1) as u32;
        for k in 1..e as i64 {
            let rp = || json!({ "p": p, "q": q, "exponent": k });
            let r = (|| Ok::<_, tamearith_core::tamefield::FieldError>((tame_gauss_sum(p, q, e, k)?, tame_gauss_sum(p, q, e, -k)?)))();
            if let Some((a, b)) = gauss.record_result(r, rp) {
                let lhs = (&a.value * &b.value).normalized();
                let rhs = a.chi_minus_one().scale(&Rational::from_integer((q as i64).into())).normalized();
                let abs_ok = a.abs_sq().normalized() == CyclotomicNumber::from_int(1, q as i64);
                gauss.record(lhs == rhs && abs_ok, || (format!("{lhs} vs {rhs}"), rp()));
            }
        }
    }
    vec![signs.finish(), action.finish(), mags.finish(), gauss_abs.finish(), multiplicative.finish(), gauss.finish()]
}
