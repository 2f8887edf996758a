//! Field descriptors and their validation.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_integer::Integer;

use super::resolvent::resolvent;
use super::FieldError;
use crate::classrep::{det_of_unit, LocalRamification};
use crate::cycloarith::{is_prime, ComplexInterval, Rational};
use crate::groupchar::{CharacterTable, FiniteGroup, GroupRingElement, GroupRingMatrix, SharedTable, Subgroup};
use crate::metcomplex::IsotypicContext;

/// Embedding values must be correct to this many bits relative to
/// `max(1, |value|)`.
pub const MIN_BITS: u32 = 40;

/// The Galois part of a descriptor: `G`, the values `sigma_0(g(b))` of a
/// fixed embedding on the conjugates of a normal basis generator `b`, and
/// the element `c` acting as complex conjugation through `sigma_0`.
///
/// Elements act on the left: `h(g(b)) = (hg)(b)` with `hg = mul(h, g)`.
#[derive(Clone, Debug)]
pub struct GaloisData {
    ctx: Arc<IsotypicContext>,
    embeddings: Vec<ComplexInterval>,
    conj: usize,
}

impl GaloisData {
    pub fn new(group: FiniteGroup, embeddings: Vec<ComplexInterval>, conj: usize) -> Result<Self, FieldError> {
        let table = Arc::new(CharacterTable::compute(group)?);
        let ctx = Arc::new(IsotypicContext::from_table(table)?);
        Self::with_context(ctx, embeddings, conj)
    }

    /// Validates against an existing table and set of representations.
    pub fn with_context(ctx: Arc<IsotypicContext>, embeddings: Vec<ComplexInterval>, conj: usize) -> Result<Self, FieldError> {
        let g = ctx.group().clone();
        let n = g.order();
        let mut issues: Vec<String> = Vec::new();
        if embeddings.len() != n {
            issues.push(format!("expected {n} embedding values, found {}", embeddings.len()));
        }
        if conj >= n {
            issues.push(format!("conjugation element {conj} is not an element of a group of order {n}"));
        } else if g.mul(conj, conj) != g.identity() {
            issues.push(format!("conjugation element {conj} is not an involution"));
        }
        let bound = libm::ldexp(1.0, -(MIN_BITS as i32));
        for (i, z) in embeddings.iter().enumerate() {
            let scale = z.mid().norm().max(1.0);
            if !(z.radius() <= bound * scale) {
                issues.push(format!("embedding value {i} carries fewer than {MIN_BITS} correct bits"));
            }
        }
        if !issues.is_empty() {
            return Err(FieldError::InvalidDescriptor(issues));
        }
        for x in 0..n {
            if !embeddings[x].conj().overlaps(&embeddings[g.mul(conj, x)]) {
                issues.push(format!("complex conjugate of value {x} does not match value {}", g.mul(conj, x)));
            }
        }
        let data = Self { ctx, embeddings, conj };
        for phi in 0..data.table().num_irreducibles() {
            match resolvent(&data, phi) {
                Ok(_) => {}
                Err(FieldError::PrecisionInsufficient(_)) => issues.push(format!(
                    "resolvent at character {phi} is not separated from zero; b is not a normal basis or the data is too coarse"
                )),
                Err(e) => return Err(e),
            }
        }
        if !issues.is_empty() {
            return Err(FieldError::InvalidDescriptor(issues));
        }
        Ok(data)
    }

    pub fn context(&self) -> &Arc<IsotypicContext> {
        &self.ctx
    }

    pub fn table(&self) -> &SharedTable {
        self.ctx.table()
    }

    pub fn group(&self) -> &FiniteGroup {
        self.ctx.group()
    }

    pub fn embeddings(&self) -> &[ComplexInterval] {
        &self.embeddings
    }

    pub fn conj_element(&self) -> usize {
        self.conj
    }

    pub fn is_totally_real(&self) -> bool {
        self.conj == self.group().identity()
    }

    /// The same data for the normal basis `x(b)` with `x` in G.
    pub fn translated(&self, x: usize) -> Self {
        let g = self.group();
        let embeddings = (0..g.order()).map(|h| self.embeddings[g.mul(h, x)]).collect();
        Self { ctx: self.ctx.clone(), embeddings, conj: self.conj }
    }
}

/// `phi : I -> mu_e`, sending `generator` to `exp(2 pi i exponent / e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InertiaCharacter {
    pub generator: usize,
    pub exponent: u32,
}

/// Unvalidated ramification data at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamSpec {
    pub p: u64,
    /// Residue degree in N.
    pub f: u32,
    /// Number of primes of N above p.
    pub g: u32,
    pub inertia: Vec<usize>,
    pub character: InertiaCharacter,
}

/// Validated tame ramification data at one prime.
#[derive(Clone, Debug)]
pub struct RamRecord {
    pub p: u64,
    pub f: u32,
    pub g: u32,
    pub inertia: Subgroup,
    pub character: InertiaCharacter,
    /// Size of the residue field of N.
    pub q: u64,
}

impl RamRecord {
    /// Ramification index.
    pub fn e(&self) -> usize {
        self.inertia.order()
    }

    /// The datum entering Pfaffians and conductors. The residue degree there
    /// is that of the base field, which is 1 over Q.
    pub fn local(&self) -> LocalRamification {
        LocalRamification { p: self.p, residue_degree: 1, inertia: self.inertia.clone() }
    }
}

fn validate_ram(g: &FiniteGroup, s: &RamSpec, issues: &mut Vec<String>) -> Option<RamRecord> {
    let p = s.p;
    let before = issues.len();
    if !is_prime(p) {
        issues.push(format!("{p} is not prime"));
        return None;
    }
    let inertia = match Subgroup::new(g, &s.inertia) {
        Ok(h) => h,
        Err(_) => {
            issues.push(format!("inertia at {p} is not a subgroup"));
            return None;
        }
    };
    let e = inertia.order();
    if e * s.f as usize * s.g as usize != g.order() {
        issues.push(format!("at {p}: e f g = {e} * {} * {} differs from |G| = {}", s.f, s.g, g.order()));
    }
    if (e as u64) % p == 0 {
        issues.push(format!("ramification at {p} is wild: e = {e} is divisible by {p}"));
    }
    if !inertia.is_cyclic() {
        issues.push(format!("inertia at {p} is not cyclic"));
    }
    let c = s.character;
    if !inertia.contains(c.generator) || g.element_order(c.generator) as usize != e {
        issues.push(format!("inertia character at {p}: element {} does not generate the inertia group", c.generator));
    }
    if e > 1 && (c.exponent as usize).gcd(&e) != 1 {
        issues.push(format!("inertia character at {p} is not faithful: exponent {} shares a factor with e = {e}", c.exponent));
    }
    let q = p.checked_pow(s.f);
    match q {
        None => issues.push(format!("residue field at {p} is too large")),
        Some(q) if (q - 1) % e as u64 != 0 => issues.push(format!("at {p}: e = {e} does not divide q - 1 = {}", q - 1)),
        _ => {}
    }
    (issues.len() == before).then(|| RamRecord { p, f: s.f, g: s.g, inertia, character: c, q: q.unwrap_or(0) })
}

/// A tame Galois field N/Q. Ramified primes not listed are assumed absent.
#[derive(Clone, Debug)]
pub struct TameFieldDescriptor {
    data: GaloisData,
    ram: Vec<RamRecord>,
    integral_generator: Option<GroupRingElement>,
}

impl TameFieldDescriptor {
    /// `integral_generator`, when given, holds the coordinates of a
    /// Z[G]-generator of O_N in the basis `g(b)`.
    pub fn new(data: GaloisData, ram: &[RamSpec], integral_generator: Option<Vec<Rational>>) -> Result<Self, FieldError> {
        let g = data.group().clone();
        let mut issues = Vec::new();
        let mut records: Vec<RamRecord> = Vec::new();
        for s in ram {
            if records.iter().any(|r| r.p == s.p) || ram.iter().filter(|t| t.p == s.p).count() > 1 {
                issues.push(format!("prime {} is listed more than once", s.p));
                continue;
            }
            if let Some(r) = validate_ram(&g, s, &mut issues) {
                records.push(r);
            }
        }
        let generator = match integral_generator {
            None => None,
            Some(c) if c.len() != g.order() => {
                issues.push(format!("integral generator needs {} coordinates, found {}", g.order(), c.len()));
                None
            }
            Some(c) => {
                let x = GroupRingElement::from_coeffs(c);
                let m = GroupRingMatrix::from_fn(g.order(), 1, 1, |_, _| x.clone());
                if det_of_unit(&m, data.table(), data.context().irreps()).is_err() {
                    issues.push("integral generator is not a normal basis".into());
                }
                Some(x)
            }
        };
        if !issues.is_empty() {
            issues.dedup();
            return Err(FieldError::InvalidDescriptor(issues));
        }
        records.sort_by_key(|r| r.p);
        Ok(Self { data, ram: records, integral_generator: generator })
    }

    pub fn data(&self) -> &GaloisData {
        &self.data
    }

    pub fn table(&self) -> &SharedTable {
        self.data.table()
    }

    pub fn ram(&self) -> &[RamRecord] {
        &self.ram
    }

    pub fn record(&self, p: u64) -> Option<&RamRecord> {
        self.ram.iter().find(|r| r.p == p)
    }

    pub fn ramified_primes(&self) -> Vec<u64> {
        self.ram.iter().map(|r| r.p).collect()
    }

    pub fn integral_generator(&self) -> Option<&GroupRingElement> {
        self.integral_generator.as_ref()
    }
}
