//! The `chars`, `class-complex` and `field-report` pipelines.

use std::collections::BTreeSet;
use std::path::Path;

use num_traits::Zero;
use serde_json::{json, Value};

use tamearith_core::classrep::{ArithClassRep, SymplecticClassRep};
use tamearith_core::cycloarith::{rational_to_f64, ComplexInterval, CyclotomicNumber, Rational};
use tamearith_core::groupchar::{CharacterTable, FiniteGroup, VirtualCharacter};
use tamearith_core::metcomplex::{arithmetic_class, fixed_point_defect};
use tamearith_core::tamefield::{
    artin_conductor_p, chi_ring_of_integers, eps_infinity_tilde, galois_action_check, pfaffian, pfaffian_magnitudes,
    resolvent, resolvent_signs, theorem_5_9_representative, FieldError, GaloisData, TameFieldDescriptor,
};

use crate::corpus::is_wild;
use crate::load::{self, InputError, LoadedComplex};
use crate::report::{Check, Report};
use crate::schema::{ComplexFile, FieldFile, GroupFile};

/// Settings shared by all commands.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Options {
    pub seed: u64,
    pub tol: f64,
    pub precision_bits: u32,
}

impl Default for Options {
    fn default() -> Self {
        Self { seed: 0, tol: 1e-9, precision_bits: 53 }
    }
}

pub fn echo(command: &str, input: Option<&str>, o: &Options) -> Value {
    let mut v = json!({ "name": command, "seed": o.seed, "tol": o.tol, "precision_bits": o.precision_bits });
    if let Some(i) = input {
        v["input"] = json!(i);
    }
    v
}

pub fn cyc(z: &CyclotomicNumber) -> Value {
    json!(z.normalized().to_string())
}

pub fn rat(r: &Rational) -> Value {
    json!(r.to_string())
}

pub fn interval(z: &ComplexInterval) -> Value {
    let m = z.mid();
    json!({ "re": m.re, "im": m.im, "rad": z.radius() })
}

/// `chi_i` for an irreducible, `a chi_i + b chi_j` for a virtual character.
pub fn label(v: &VirtualCharacter) -> String {
    let mut parts = Vec::new();
    for (i, &c) in v.coeffs.iter().enumerate() {
        match c {
            0 => {}
            1 => parts.push(format!("chi{i}")),
            -1 => parts.push(format!("-chi{i}")),
            c => parts.push(format!("{c} chi{i}")),
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

// ---- chars ----------------------------------------------------------------

pub fn chars(path: &Path, o: &Options) -> Result<Report, InputError> {
    let name = path.display().to_string();
    let file: GroupFile = load::read_json(path)?;
    let g = load::load_group(&name, &file)?;
    Ok(chars_report(echo("chars", Some(&name), o), &file.name, g, &name)?)
}

pub fn chars_report(command: Value, name: &str, g: FiniteGroup, path: &str) -> Result<Report, InputError> {
    let t = CharacterTable::compute(g).map_err(|e| InputError::invalid(path, "group", e))?;
    let (items, checks) = character_data(name, &t);
    Ok(Report::new(command, items, checks))
}

/// Orthogonality from class sizes and values, the degree sum and indicator
/// checks, together with the printable table.
pub fn character_data(name: &str, t: &CharacterTable) -> (Value, Vec<Check>) {
    let g = t.group();
    let cls = t.classes();
    let k = t.num_irreducibles();
    let order = Rational::from_integer(g.order().into());
    let mut worst = None;
    for a in 0..k {
        for b in 0..k {
            let mut s = CyclotomicNumber::zero(1);
            for c in 0..cls.len() {
                let x = cls.representative(c);
                let term = t.value_at(a, x) * &t.value_at(b, x).conj();
                s = &s + &term.scale(&Rational::from_integer(cls.size(c).into()));
            }
            let expect = if a == b { order.clone() } else { Rational::zero() };
            if s.as_rational() != Some(expect) && worst.is_none() {
                worst = Some((a, b, s.to_string()));
            }
        }
    }
    let orth = match &worst {
        None => Check::new("row orthogonality", true, format!("{k} x {k} pairs exact")),
        Some((a, b, s)) => Check::new("row orthogonality", false, format!("<chi{a}, chi{b}> sums to {s}"))
            .with_repro(json!({ "group": name, "a": a, "b": b })),
    };
    let deg_sq: u64 = t.degrees().iter().map(|&d| (d as u64) * (d as u64)).sum();
    let degs = Check::new(
        "sum of squared degrees equals the order",
        deg_sq == g.order() as u64,
        format!("{deg_sq} vs {}", g.order()),
    );
    let fs: Vec<i8> = (0..k).map(|i| t.frobenius_schur(i)).collect();
    let fs_ok = fs.iter().all(|v| (-1..=1).contains(v));
    let involutions = (0..g.order()).filter(|&x| g.mul(x, x) == g.identity()).count() as i64;
    let fs_sum: i64 = fs.iter().zip(t.degrees()).map(|(&s, &d)| s as i64 * d as i64).sum();
    let fs_check = Check::new(
        "Frobenius-Schur indicators in {-1, 0, 1} counting square roots of 1",
        fs_ok && fs_sum == involutions,
        format!("indicators {fs:?}; sum of indicator times degree {fs_sum}, elements with g^2 = 1: {involutions}"),
    );
    let classes: Vec<Value> = (0..cls.len())
        .map(|c| json!({ "representative": cls.representative(c), "size": cls.size(c), "elements": cls.class(c) }))
        .collect();
    let rows: Vec<Value> = (0..k)
        .map(|i| {
            json!({
                "label": format!("chi{i}"),
                "degree": t.degree(i),
                "values": (0..cls.len()).map(|c| cyc(t.value_at(i, cls.representative(c)))).collect::<Vec<_>>(),
                "frobenius_schur": fs[i],
            })
        })
        .collect();
    let symp: Vec<Value> = t
        .symplectic_generators()
        .iter()
        .map(|v| json!({ "label": label(v), "coefficients": v.coeffs, "degree": v.degree(t) }))
        .collect();
    let items = json!({
        "group": name,
        "order": g.order(),
        "exponent": t.exponent(),
        "classes": classes,
        "characters": rows,
        "frobenius_schur": fs,
        "symplectic_generators": symp,
    });
    (items, vec![orth, degs, fs_check])
}

// ---- class-complex --------------------------------------------------------

pub fn class_complex(path: &Path, o: &Options) -> Result<Report, InputError> {
    let name = path.display().to_string();
    let file: ComplexFile = load::read_json(path)?;
    complex_report(echo("class-complex", Some(&name), o), &name, &file, o)
}

pub fn class_json(c: &ArithClassRep) -> Value {
    let t = c.table();
    let primes: Vec<u64> = c.fin().support().collect();
    let chars: Vec<Value> = (0..t.num_irreducibles())
        .map(|i| {
            let fin: serde_json::Map<String, Value> =
                primes.iter().map(|&p| (p.to_string(), cyc(&c.fin_value(p, i)))).collect();
            json!({
                "label": format!("chi{i}"),
                "degree": t.degree(i),
                "finite": fin,
                "archimedean": c.arch()[i].value(),
                "archimedean_exact": c.arch()[i].as_rational().map(|r| rat(&r)),
            })
        })
        .collect();
    let orbits: Vec<Value> = c
        .orbit_degrees()
        .iter()
        .map(|d| json!({ "orbit": d.orbit, "content": d.content.value(), "gamma": d.gamma.value() }))
        .collect();
    json!({ "primes": primes, "characters": chars, "orbit_degrees": orbits })
}

fn is_identity(c: &ArithClassRep, tol: f64) -> bool {
    let primes: Vec<u64> = c.fin().support().collect();
    primes.iter().all(|&p| (0..c.table().num_irreducibles()).all(|i| c.fin_value(p, i).is_one()))
        && c.arch().iter().all(|a| (a.value() - 1.0).abs() <= tol)
}

pub fn complex_report(command: Value, path: &str, file: &ComplexFile, o: &Options) -> Result<Report, InputError> {
    let LoadedComplex { name, metrised, bases, rescale } = load::load_complex(path, file)?;
    let class = arithmetic_class(&metrised, &bases).map_err(|e| InputError::invalid(path, "bases", e))?;
    let mut checks = Vec::new();
    let mut items = json!({
        "complex": name,
        "order": metrised.complex().group().order(),
        "start": metrised.complex().start(),
        "ranks": metrised.complex().ranks(),
        "class": class_json(&class),
        "identity": is_identity(&class, o.tol),
    });
    match fixed_point_defect(&metrised, &bases) {
        Ok(Some(d)) => checks.push(Check::new(
            "trivial coordinate equals the fixed-point class",
            d <= o.tol,
            format!("finite parts equal; archimedean relative difference {d:.3e}"),
        )),
        Ok(None) => checks.push(Check::new("trivial coordinate equals the fixed-point class", false, "finite parts differ")),
        Err(e) => checks.push(Check::new("trivial coordinate equals the fixed-point class", false, e.to_string())),
    }
    if let Some(alpha) = rescale {
        let m2 = metrised.rescaled(&alpha).map_err(|e| InputError::invalid(path, "rescale", e))?;
        let c2 = arithmetic_class(&m2, &bases).map_err(|e| InputError::invalid(path, "rescale", e))?;
        let ratios: Vec<f64> = c2.arch().iter().zip(class.arch()).map(|(a, b)| a.value() / b.value()).collect();
        let worst = ratios.iter().zip(&alpha).map(|(r, a)| (r - a).abs() / a).fold(0.0, f64::max);
        checks.push(Check::new(
            "rescaling by alpha multiplies the archimedean part by alpha",
            c2.fin() == class.fin() && worst <= o.tol,
            format!("largest relative deviation {worst:.3e}"),
        ));
        items["rescaled"] = json!({ "alpha": alpha, "class": class_json(&c2), "ratios": ratios });
    }
    Ok(Report::new(command, items, checks))
}

// ---- field-report ---------------------------------------------------------

pub fn field_report(path: &Path, o: &Options) -> Result<Report, InputError> {
    let name = path.display().to_string();
    let file: FieldFile = load::read_json(path)?;
    field_report_for(echo("field-report", Some(&name), o), &name, &file, o)
}

fn ferr<'a>(path: &'a str, what: &str) -> impl Fn(FieldError) -> InputError + 'a {
    let what = what.to_owned();
    move |e| match e {
        FieldError::PrecisionInsufficient(m) => InputError::invalid(
            path,
            "embeddings",
            format!("insufficient precision while computing {what} ({m}); supply embeddings with smaller radii or a larger --precision-bits (at most 53)"),
        ),
        e => InputError::invalid(path, what.clone(), e),
    }
}

/// Galois-side data shared by tame and wild fields.
fn galois_items(path: &str, data: &GaloisData) -> Result<(Vec<Value>, Vec<Check>), InputError> {
    let t = data.table();
    let n = data.group().order();
    let mut action = (0usize, 0usize, None);
    for phi in 0..t.num_irreducibles() {
        for x in 0..n {
            let c = galois_action_check(data, phi, x).map_err(ferr(path, "the Galois action check"))?;
            action.1 += 1;
            if c.holds {
                action.0 += 1;
            } else if action.2.is_none() {
                action.2 = Some(json!({ "character": phi, "element": x, "residual": c.residual }));
            }
        }
    }
    let mut checks = vec![{
        let c = Check::new(
            "resolvents transform by the determinant under translation",
            action.0 == action.1,
            format!("{} of {} (element, character) pairs enclose", action.0, action.1),
        );
        match action.2 {
            Some(r) => c.with_repro(r),
            None => c,
        }
    }];
    let signs = resolvent_signs(data).map_err(ferr(path, "resolvent signs"))?;
    let mut gens = Vec::new();
    let mut bad = None;
    for s in &signs {
        if !s.holds() && bad.is_none() {
            bad = Some(json!({ "generator": s.generator.coeffs }));
        }
        gens.push(json!({
            "label": label(&s.generator),
            "coefficients": s.generator.coeffs,
            "degree": s.generator.degree(t),
            "eps_infinity": s.eps,
            "resolvent_degree_zero": interval(&s.resolvent),
            "resolvent_sign": s.sign,
        }));
    }
    let c = Check::new(
        "resolvent sign equals the archimedean sign",
        bad.is_none(),
        format!("{} symplectic generators", signs.len()),
    );
    checks.push(match bad {
        Some(r) => c.with_repro(r),
        None => c,
    });
    Ok((gens, checks))
}

pub fn field_report_for(command: Value, path: &str, file: &FieldFile, o: &Options) -> Result<Report, InputError> {
    if is_wild(file) {
        return Err(match load::load_field(path, file, o.precision_bits) {
            Err(e) => e,
            Ok(_) => InputError::invalid(path, "ramification", "an inertia order is divisible by its residue characteristic"),
        });
    }
    let f = load::load_field(path, file, o.precision_bits)?;
    field_items(command, path, &f, &file.name, o)
}

fn field_items(command: Value, path: &str, f: &TameFieldDescriptor, name: &str, o: &Options) -> Result<Report, InputError> {
    let data = f.data();
    let t = f.table();
    let (mut gens, mut checks) = galois_items(path, data)?;
    let symp = t.symplectic_generators();
    let rep = theorem_5_9_representative(f).map_err(ferr(path, "the symplectic representative"))?;
    let theta = rep.theta().map_err(|e| InputError::invalid(path, "representative", e))?;
    let theta_tilde = rep.tilde().theta().map_err(|e| InputError::invalid(path, "representative", e))?;
    let mut assembled_ok = true;
    for (k, psi) in symp.iter().enumerate() {
        let eps = eps_infinity_tilde(data, psi).map_err(ferr(path, "eps"))?;
        let mut assembled = Rational::from_integer(eps.into());
        let mut cond = serde_json::Map::new();
        let mut pf = serde_json::Map::new();
        for p in f.ramified_primes() {
            let pp = pfaffian(f, p, psi).map_err(ferr(path, "Pfaffians"))?;
            assembled /= &pp;
            cond.insert(p.to_string(), json!(artin_conductor_p(f, psi, p).map_err(ferr(path, "conductors"))?));
            pf.insert(p.to_string(), rat(&pp));
        }
        let tv = theta_tilde.value(t, psi).map_err(|e| InputError::invalid(path, "representative", e))?;
        assembled_ok &= tv == assembled;
        let g = &mut gens[k];
        g["conductor_exponents"] = Value::Object(cond);
        g["pfaffians"] = Value::Object(pf);
        g["eps_inverse_pfaffian_inverse"] = rat(&assembled);
        g["theta"] = rat(&theta.values[k]);
        g["theta_degree_zero"] = rat(&tv);
        g["delta"] = json!(rep.arch()[k].value());
    }
    checks.push(Check::new(
        "degree-zero theta equals eps^-1 Pf^-1",
        assembled_ok,
        format!("{} symplectic generators", symp.len()),
    ));
    let mags = pfaffian_magnitudes(f).map_err(ferr(path, "Pfaffian magnitudes"))?;
    let failed: Vec<&_> = mags.iter().filter(|m| !m.holds).collect();
    let c = Check::new(
        "Pf_p^2 equals p to the conductor exponent",
        failed.is_empty(),
        format!("{} (prime, generator) pairs", mags.len()),
    );
    checks.push(match failed.first() {
        Some(m) => c.with_repro(json!({ "p": m.p, "generator": m.generator.coeffs })),
        None => c,
    });
    let ring = match chi_ring_of_integers(f) {
        Ok(c) => {
            let n = (data.group().order() as f64).sqrt();
            let mut worst = 0.0f64;
            for phi in 0..t.num_irreducibles() {
                let r = resolvent(data, phi).map_err(ferr(path, "resolvents"))?.abs().mid;
                let want = n * r;
                worst = worst.max((c.arch()[phi].value() - want).abs() / want);
            }
            checks.push(Check::new(
                "archimedean part of chi(O_N) is sqrt|G| times |resolvent|",
                worst <= o.tol && c.fin().support().next().is_none(),
                format!("largest relative deviation {worst:.3e}"),
            ));
            let s = SymplecticClassRep::from_class(&c);
            let mut worst = 0.0f64;
            for (k, a) in s.arch().iter().enumerate() {
                let lhs = 1.0 / a.value();
                let rhs = rational_to_f64(&theta.values[k]).abs();
                worst = worst.max((lhs - rhs).abs() / lhs);
            }
            checks.push(Check::new(
                "chi(O_N) and the symplectic representative agree in absolute value",
                worst <= o.tol,
                format!("largest relative deviation {worst:.3e}"),
            ));
            let arch: Vec<Value> =
                symp.iter().map(|psi| s.arch_value(psi).map(|a| json!(a.value())).unwrap_or(Value::Null)).collect();
            json!({ "class": class_json(&c), "symplectic_archimedean": arch })
        }
        Err(FieldError::NotFree) => json!(null),
        Err(e) => return Err(ferr(path, "chi(O_N)")(e)),
    };
    let ram: Vec<Value> = f
        .ram()
        .iter()
        .map(|r| json!({ "p": r.p, "e": r.e(), "f": r.f, "g": r.g, "inertia": r.inertia.elements() }))
        .collect();
    let primes: BTreeSet<u64> = f.ramified_primes().into_iter().collect();
    let items = json!({
        "field": name,
        "order": data.group().order(),
        "totally_real": data.is_totally_real(),
        "tame": true,
        "ramified_primes": primes,
        "ramification": ram,
        "symplectic_generators": gens,
        "chi_ring_of_integers": ring,
    });
    Ok(Report::new(command, items, checks))
}

/// Report on a field descriptor already held in memory.
pub fn field_report_descriptor(command: Value, f: &TameFieldDescriptor, name: &str, o: &Options) -> Result<Report, InputError> {
    field_items(command, name, f, name, o)
}
