//! Reading descriptors and turning them into core objects.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::de::DeserializeOwned;

use tamearith_core::cycloarith::{check_precision, ComplexInterval};
use tamearith_core::cycloarith::Rational;
use tamearith_core::groupchar::{CharacterTable, FiniteGroup, GroupRingElement, GroupRingMatrix};
use tamearith_core::metcomplex::{BasisData, HermitianForm, IsotypicContext, MetError, MetrisedComplex, PerfectComplex};
use tamearith_core::tamefield::{FieldError, GaloisData, InertiaCharacter, RamSpec, TameFieldDescriptor, MIN_BITS};

use crate::schema::*;

/// Problems with the input itself; the CLI exits with code 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: field `{field}`: {message}")]
    Invalid { path: String, field: String, message: String },
}

impl InputError {
    pub fn invalid(path: &str, field: impl Into<String>, message: impl std::fmt::Display) -> Self {
        Self::Invalid { path: path.to_owned(), field: field.into(), message: message.to_string() }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| InputError::Io { path: name.clone(), source })?;
    parse_json(&name, &text)
}

pub fn parse_json<T: DeserializeOwned>(name: &str, text: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|source| InputError::Json { path: name.to_owned(), source })
}

fn check_schema(path: &str, found: &str, expected: &str) -> Result<(), InputError> {
    if found != expected {
        return Err(InputError::invalid(path, "schema", format!("expected \"{expected}\", found \"{found}\"")));
    }
    Ok(())
}

pub fn build_group(path: &str, desc: &GroupSpec) -> Result<FiniteGroup, InputError> {
    let err = |e: tamearith_core::groupchar::GroupError| InputError::invalid(path, "group", e);
    match desc {
        GroupSpec::Cyclic { n } if *n == 0 => Err(InputError::invalid(path, "group.n", "order must be positive")),
        GroupSpec::Cyclic { n } if *n > tamearith_core::groupchar::MAX_ORDER => {
            Err(InputError::invalid(path, "group.n", format!("order {n} exceeds {}", tamearith_core::groupchar::MAX_ORDER)))
        }
        GroupSpec::Cyclic { n } => Ok(FiniteGroup::cyclic(*n)),
        GroupSpec::Table { rows } => FiniteGroup::from_table(rows).map_err(err),
        GroupSpec::Permutations { generators } => FiniteGroup::from_permutations(generators).map_err(err),
        GroupSpec::DirectProduct { factors } => {
            let mut g = FiniteGroup::cyclic(1);
            for f in factors {
                g = FiniteGroup::direct_product(&g, &build_group(path, f)?);
            }
            if g.order() > tamearith_core::groupchar::MAX_ORDER {
                return Err(InputError::invalid(path, "group", format!("order {} exceeds {}", g.order(), tamearith_core::groupchar::MAX_ORDER)));
            }
            Ok(g)
        }
    }
}

pub fn load_group(path: &str, file: &GroupFile) -> Result<FiniteGroup, InputError> {
    check_schema(path, &file.schema, GROUP_SCHEMA)?;
    build_group(path, &file.group)
}

pub fn parse_rational(path: &str, field: &str, s: &str) -> Result<Rational, InputError> {
    let r: Rational = s.trim().parse().map_err(|_| InputError::invalid(path, field, format!("\"{s}\" is not a rational number")))?;
    Ok(r)
}

pub fn build_element(path: &str, field: &str, coeffs: &[String], n: usize) -> Result<GroupRingElement, InputError> {
    if coeffs.len() != n {
        return Err(InputError::invalid(path, field, format!("expected {n} coefficients, found {}", coeffs.len())));
    }
    let c = coeffs.iter().map(|s| parse_rational(path, field, s)).collect::<Result<Vec<_>, _>>()?;
    Ok(GroupRingElement::from_coeffs(c))
}

pub fn build_matrix(path: &str, field: &str, m: &MatrixSpec, n: usize) -> Result<GroupRingMatrix, InputError> {
    if m.entries.len() != m.rows * m.cols {
        return Err(InputError::invalid(path, field, format!("{} x {} matrix needs {} entries, found {}", m.rows, m.cols, m.rows * m.cols, m.entries.len())));
    }
    let mut out = GroupRingMatrix::zero(n, m.rows, m.cols);
    for r in 0..m.rows {
        for c in 0..m.cols {
            let k = r * m.cols + c;
            out.set(r, c, build_element(path, &format!("{field}.entries[{k}]"), &m.entries[k], n)?);
        }
    }
    Ok(out)
}

/// A metrised complex ready for [`tamearith_core::metcomplex::arithmetic_class`].
pub struct LoadedComplex {
    pub name: String,
    pub metrised: MetrisedComplex,
    pub bases: BasisData,
    pub rescale: Option<Vec<f64>>,
}

fn met<'a>(path: &'a str, field: &str) -> impl Fn(MetError) -> InputError + 'a {
    let field = field.to_owned();
    move |e| InputError::invalid(path, field.clone(), e)
}

pub fn load_complex(path: &str, file: &ComplexFile) -> Result<LoadedComplex, InputError> {
    check_schema(path, &file.schema, COMPLEX_SCHEMA)?;
    let g = build_group(path, &file.group)?;
    let n = g.order();
    let boundaries = file
        .boundaries
        .iter()
        .enumerate()
        .map(|(i, m)| build_matrix(path, &format!("boundaries[{i}]"), m, n))
        .collect::<Result<Vec<_>, _>>()?;
    let complex = PerfectComplex::new(g.clone(), file.start, file.ranks.clone(), boundaries).map_err(met(path, "boundaries"))?;
    let table = CharacterTable::compute(g.clone()).map_err(|e| InputError::invalid(path, "group", e))?;
    let ctx = Arc::new(IsotypicContext::from_table(Arc::new(table)).map_err(met(path, "group"))?);
    let metrised = match &file.metric {
        MetricSpec::Standard => MetrisedComplex::standard(complex.clone(), ctx.clone()),
        MetricSpec::Unit => MetrisedComplex::unit(complex.clone(), ctx.clone()),
        MetricSpec::RightFactors { factors } => {
            if factors.len() != file.ranks.len() {
                return Err(InputError::invalid(path, "metric.factors", format!("expected {} factors, found {}", file.ranks.len(), factors.len())));
            }
            let mut forms = Vec::with_capacity(factors.len());
            for (i, f) in factors.iter().enumerate() {
                let field = format!("metric.factors[{i}]");
                let m = build_matrix(path, &field, f, n)?;
                forms.push(HermitianForm::from_right_factor(&g, &m).map_err(met(path, &field))?);
            }
            MetrisedComplex::from_forms(complex.clone(), ctx.clone(), &forms)
        }
    }
    .map_err(met(path, "metric"))?;
    let mut bases = BasisData::standard(&complex);
    if let Some(global) = &file.global_bases {
        if global.len() != file.ranks.len() {
            return Err(InputError::invalid(path, "global_bases", format!("expected {} bases, found {}", file.ranks.len(), global.len())));
        }
        bases.global = global
            .iter()
            .enumerate()
            .map(|(i, m)| build_matrix(path, &format!("global_bases[{i}]"), m, n))
            .collect::<Result<_, _>>()?;
    }
    if let Some(local) = &file.local_bases {
        for (p, mats) in local {
            if mats.len() != file.ranks.len() {
                return Err(InputError::invalid(path, format!("local_bases.{p}"), format!("expected {} bases, found {}", file.ranks.len(), mats.len())));
            }
            let v = mats
                .iter()
                .enumerate()
                .map(|(i, m)| build_matrix(path, &format!("local_bases.{p}[{i}]"), m, n))
                .collect::<Result<_, _>>()?;
            bases.local.insert(*p, v);
        }
    }
    if let Some(alpha) = &file.rescale {
        if alpha.len() != ctx.table().num_irreducibles() || alpha.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
            return Err(InputError::invalid(path, "rescale", format!("expected {} positive factors", ctx.table().num_irreducibles())));
        }
    }
    Ok(LoadedComplex { name: file.name.clone(), metrised, bases, rescale: file.rescale.clone() })
}

/// Embedding intervals, widened so that they carry at most `bits` bits.
pub fn embeddings(path: &str, file: &FieldFile, bits: u32) -> Result<Vec<ComplexInterval>, InputError> {
    check_precision(bits).map_err(|e| InputError::invalid(path, "--precision-bits", e))?;
    if bits < MIN_BITS {
        return Err(InputError::invalid(
            path,
            "--precision-bits",
            format!("{bits} bits cannot certify resolvent signs; raise --precision-bits to at least {MIN_BITS} (at most 53)"),
        ));
    }
    let floor = libm_ldexp(bits);
    file.embeddings
        .iter()
        .enumerate()
        .map(|(i, e)| {
            if !(e.re.is_finite() && e.im.is_finite() && e.rad.is_finite() && e.rad >= 0.0) {
                return Err(InputError::invalid(path, format!("embeddings[{i}]"), "values must be finite with a nonnegative radius"));
            }
            let z = Complex64::new(e.re, e.im);
            Ok(ComplexInterval::around(z, e.rad.max(z.norm().max(1.0) * floor)))
        })
        .collect()
}

fn libm_ldexp(bits: u32) -> f64 {
    (-(bits as f64)).exp2()
}

fn field_error(path: &str, e: FieldError) -> InputError {
    match e {
        FieldError::InvalidDescriptor(items) => InputError::invalid(path, "descriptor", items.join("; ")),
        FieldError::PrecisionInsufficient(m) => InputError::invalid(
            path,
            "embeddings",
            format!("insufficient precision ({m}); supply embedding values with smaller radii or raise --precision-bits (at most 53)"),
        ),
        other => InputError::invalid(path, "descriptor", other),
    }
}

/// The Galois part only; used for fields that are not tame.
pub fn load_galois(path: &str, file: &FieldFile, bits: u32) -> Result<GaloisData, InputError> {
    check_schema(path, &file.schema, FIELD_SCHEMA)?;
    let g = build_group(path, &file.group)?;
    let emb = embeddings(path, file, bits)?;
    GaloisData::new(g, emb, file.conj_element).map_err(|e| field_error(path, e))
}

pub fn ram_specs(file: &FieldFile) -> Vec<RamSpec> {
    file.ramification
        .iter()
        .map(|r| RamSpec {
            p: r.p,
            f: r.f,
            g: r.g,
            inertia: r.inertia.clone(),
            character: InertiaCharacter { generator: r.character.generator, exponent: r.character.exponent },
        })
        .collect()
}

pub fn load_field(path: &str, file: &FieldFile, bits: u32) -> Result<TameFieldDescriptor, InputError> {
    let data = load_galois(path, file, bits)?;
    let generator = match &file.integral_generator {
        None => None,
        Some(c) => Some(
            c.iter()
                .enumerate()
                .map(|(i, s)| parse_rational(path, &format!("integral_generator[{i}]"), s))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    TameFieldDescriptor::new(data, &ram_specs(file), generator).map_err(|e| field_error(path, e))
}
