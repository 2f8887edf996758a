use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::dixon::dixon_schneider;
use super::group::{ConjugacyClasses, FiniteGroup};
use super::GroupError;
use crate::cycloarith::{CyclotomicNumber, Rational};

/// A class function: one cyclotomic value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<CyclotomicNumber>,
}

impl ClassFunction {
    pub fn value(&self, class: usize) -> &CyclotomicNumber {
        &self.values[class]
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        let r = Rational::from_integer(k.into());
        Self { values: self.values.iter().map(|a| a.scale(&r)).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { values: self.values.iter().map(CyclotomicNumber::conj).collect() }
    }
}

/// Sort key for a cyclotomic value: argument in [0, 2pi) and modulus, both
/// rounded to 1e-9.
fn value_key(z: &CyclotomicNumber) -> (i64, i64) {
    if z.is_zero() {
        return (0, 0);
    }
    let c = z.approx();
    let modulus = libm::hypot(c.re, c.im);
    let mut arg = libm::atan2(c.im, c.re);
    if arg < 0.0 {
        arg += 2.0 * core::f64::consts::PI;
    }
    let mut a = libm::round(arg * 1e9) as i64;
    if a >= libm::round(2.0 * core::f64::consts::PI * 1e9) as i64 {
        a = 0;
    }
    (a, libm::round(modulus * 1e9) as i64)
}

/// Complete irreducible character table of a finite group.
///
/// Rows are sorted by degree and then lexicographically by the (argument,
/// modulus) of their values in class order, so the trivial character is row 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    group: FiniteGroup,
    classes: ConjugacyClasses,
    rows: Vec<ClassFunction>,
    degrees: Vec<u32>,
    conj_index: Vec<usize>,
    indicators: Vec<i8>,
}

impl CharacterTable {
    /// Computes the table with the Dixon-Schneider algorithm.
    pub fn compute(group: FiniteGroup) -> Result<Self, GroupError> {
        let classes = ConjugacyClasses::new(&group);
        let rows = dixon_schneider(&group, &classes)?;
        let t = Self::assemble(group, classes, rows)?;
        Ok(t)
    }

    /// Validates a supplied table (rows of class values in our class order).
    pub fn from_supplied(group: FiniteGroup, rows: Vec<Vec<CyclotomicNumber>>) -> Result<Self, GroupError> {
        let classes = ConjugacyClasses::new(&group);
        if rows.len() != classes.len() || rows.iter().any(|r| r.len() != classes.len()) {
            return Err(GroupError::SuppliedTableInvalid(format!(
                "expected a {0}x{0} table",
                classes.len()
            )));
        }
        Self::assemble(group, classes, rows).map_err(|e| match e {
            GroupError::SuppliedTableInvalid(s) => GroupError::SuppliedTableInvalid(s),
            other => GroupError::SuppliedTableInvalid(format!("{other}")),
        })
    }

    fn assemble(
        group: FiniteGroup,
        classes: ConjugacyClasses,
        rows: Vec<Vec<CyclotomicNumber>>,
    ) -> Result<Self, GroupError> {
        let e = group.exponent();
        let mut rows: Vec<ClassFunction> = rows
            .into_iter()
            .map(|r| ClassFunction {
                values: r.into_iter().map(|v| lift_to(&v, e)).collect(),
            })
            .collect();
        let mut degrees = Vec::with_capacity(rows.len());
        for r in &rows {
            let d = r.values[0]
                .as_integer()
                .and_then(|d| d.to_u32())
                .filter(|&d| d > 0)
                .ok_or_else(|| GroupError::SuppliedTableInvalid("degree is not a positive integer".into()))?;
            degrees.push(d);
        }
        let mut idx: Vec<usize> = (0..rows.len()).collect();
        let keys: Vec<Vec<(i64, i64)>> = rows.iter().map(|r| r.values.iter().map(value_key).collect()).collect();
        idx.sort_by(|&a, &b| degrees[a].cmp(&degrees[b]).then_with(|| keys[a].cmp(&keys[b])));
        rows = idx.iter().map(|&i| rows[i].clone()).collect();
        degrees = idx.iter().map(|&i| degrees[i]).collect();

        let mut t = Self { group, classes, rows, degrees, conj_index: Vec::new(), indicators: Vec::new() };
        t.check_orthogonality()?;
        t.conj_index = (0..t.rows.len())
            .map(|i| {
                let c = t.rows[i].conj();
                t.rows.iter().position(|r| *r == c).expect("conjugate of an irreducible is irreducible")
            })
            .collect();
        t.indicators = (0..t.rows.len()).map(|i| t.compute_indicator(i)).collect::<Result<_, _>>()?;
        Ok(t)
    }

    fn check_orthogonality(&self) -> Result<(), GroupError> {
        let order = Rational::from_integer(BigInt::from(self.group.order()));
        let mut sum_sq = 0u64;
        for d in &self.degrees {
            sum_sq += (*d as u64) * (*d as u64);
        }
        if sum_sq != self.group.order() as u64 {
            return Err(GroupError::SuppliedTableInvalid(format!(
                "sum of squared degrees is {sum_sq}, not |G| = {}",
                self.group.order()
            )));
        }
        for a in 0..self.rows.len() {
            for b in a..self.rows.len() {
                let s = self.pairing(&self.rows[a], &self.rows[b].conj());
                let expect = if a == b { order.clone() } else { Rational::zero() };
                if s.as_rational() != Some(expect) {
                    return Err(GroupError::SuppliedTableInvalid(format!(
                        "rows {a} and {b} violate orthogonality"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `sum_k h_k a(k) b(k)` (no inversion, no normalization).
    fn pairing(&self, a: &ClassFunction, b: &ClassFunction) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::zero(self.group.exponent());
        for k in 0..self.classes.len() {
            let h = Rational::from_integer(self.classes.size(k).into());
            acc = &acc + &(&a.values[k] * &b.values[k]).scale(&h);
        }
        acc
    }

    fn compute_indicator(&self, i: usize) -> Result<i8, GroupError> {
        let mut acc = CyclotomicNumber::zero(self.group.exponent());
        for x in 0..self.group.order() {
            let sq = self.group.mul(x, x);
            acc = &acc + &self.rows[i].values[self.classes.class_of(sq)];
        }
        let v = acc
            .as_rational()
            .map(|r| r / Rational::from_integer(self.group.order().into()))
            .filter(|r| r.is_integer() && r.abs() <= Rational::from_integer(1.into()))
            .ok_or_else(|| GroupError::DixonFailure("Frobenius-Schur indicator is not in {-1,0,1}".into()))?;
        Ok(v.to_integer().to_i8().expect("small"))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn num_irreducibles(&self) -> usize {
        self.rows.len()
    }

    pub fn exponent(&self) -> u32 {
        self.group.exponent()
    }

    pub fn character(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn characters(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Value of irreducible `i` at group element `x`.
    pub fn value_at(&self, i: usize, x: usize) -> &CyclotomicNumber {
        &self.rows[i].values[self.classes.class_of(x)]
    }

    /// Index of the complex conjugate character.
    pub fn conj_index(&self, i: usize) -> usize {
        self.conj_index[i]
    }

    /// Frobenius-Schur indicator of irreducible `i`.
    pub fn frobenius_schur(&self, i: usize) -> i8 {
        self.indicators[i]
    }

    /// Frobenius-Schur indicator of an arbitrary class function, rejecting
    /// functions that are not irreducible characters.
    pub fn frobenius_schur_of(&self, f: &ClassFunction) -> Result<i8, GroupError> {
        let i = self
            .rows
            .iter()
            .position(|r| r == f)
            .ok_or(GroupError::NotIrreducible)?;
        Ok(self.indicators[i])
    }

    /// Index of `chi^omega` where `omega: zeta -> zeta^k`.
    pub fn galois_image(&self, i: usize, k: i64) -> usize {
        let img = ClassFunction {
            values: self.rows[i].values.iter().map(|v| v.galois(k).expect("unit")).collect(),
        };
        self.rows.iter().position(|r| *r == img).expect("Galois image of an irreducible")
    }

    /// `<a, b> = (1/|G|) sum_g a(g) b(g^-1)`, as an exact integer.
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<i64, GroupError> {
        let binv = ClassFunction {
            values: (0..self.classes.len())
                .map(|k| b.values[self.classes.inverse_class(k)].clone())
                .collect(),
        };
        let s = self.pairing(a, &binv);
        s.as_rational()
            .map(|r| r / Rational::from_integer(self.group.order().into()))
            .filter(|r| r.is_integer())
            .and_then(|r| r.to_integer().to_i64())
            .ok_or(GroupError::NotACharacter)
    }

    /// Writes a class function in the basis of irreducible characters.
    pub fn decompose(&self, f: &ClassFunction) -> Result<VirtualCharacter, GroupError> {
        let coeffs = self
            .rows
            .iter()
            .map(|chi| self.inner_product(f, chi))
            .collect::<Result<Vec<_>, _>>()?;
        let v = VirtualCharacter { coeffs };
        if v.class_function(self) != *f {
            return Err(GroupError::NotACharacter);
        }
        Ok(v)
    }

    /// Generators of the symplectic character group, by irreducible index:
    /// `chi` if quaternionic, `chi + conj(chi)` once per conjugate pair, `2 chi`
    /// if orthogonal.
    pub fn symplectic_generators(&self) -> Vec<VirtualCharacter> {
        let n = self.rows.len();
        let mut out = Vec::new();
        for i in 0..n {
            let mut v = VirtualCharacter::zero(n);
            match self.indicators[i] {
                -1 => v.coeffs[i] = 1,
                1 => v.coeffs[i] = 2,
                _ => {
                    let j = self.conj_index[i];
                    if j < i {
                        continue;
                    }
                    v.coeffs[i] = 1;
                    v.coeffs[j] += 1;
                }
            }
            out.push(v);
        }
        out
    }

    /// Class function of the regular character.
    pub fn regular(&self) -> VirtualCharacter {
        VirtualCharacter { coeffs: self.degrees.iter().map(|&d| d as i64).collect() }
    }

    /// Augmentation character `u = reg - 1`.
    pub fn augmentation(&self) -> VirtualCharacter {
        let mut v = self.regular();
        v.coeffs[0] -= 1;
        v
    }

    /// The irreducible 1_G.
    pub fn trivial(&self) -> VirtualCharacter {
        let mut v = VirtualCharacter::zero(self.rows.len());
        v.coeffs[0] = 1;
        v
    }

    pub fn irreducible(&self, i: usize) -> VirtualCharacter {
        let mut v = VirtualCharacter::zero(self.rows.len());
        v.coeffs[i] = 1;
        v
    }
}

fn lift_to(v: &CyclotomicNumber, e: u32) -> CyclotomicNumber {
    if v.conductor() == e {
        return v.clone();
    }
    let n = v.normalized();
    n.lift(e).unwrap_or_else(|_| v.clone())
}

/// Integer combination of irreducible characters of a fixed table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VirtualCharacter {
    pub coeffs: Vec<i64>,
}

impl VirtualCharacter {
    pub fn zero(n: usize) -> Self {
        Self { coeffs: vec![0; n] }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn degree(&self, t: &CharacterTable) -> i64 {
        self.coeffs.iter().zip(t.degrees()).map(|(a, &d)| a * d as i64).sum()
    }

    pub fn class_function(&self, t: &CharacterTable) -> ClassFunction {
        let r = t.classes().len();
        let mut values = vec![CyclotomicNumber::zero(t.exponent()); r];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let s = Rational::from_integer(a.into());
            for (k, slot) in values.iter_mut().enumerate() {
                *slot = &*slot + &t.character(i).values[k].scale(&s);
            }
        }
        ClassFunction { values }
    }

    /// Value at a group element.
    pub fn value_at(&self, t: &CharacterTable, x: usize) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::zero(t.exponent());
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != 0 {
                acc = &acc + &t.value_at(i, x).scale(&Rational::from_integer(a.into()));
            }
        }
        acc
    }

    /// Complex conjugate character.
    pub fn conj(&self, t: &CharacterTable) -> Self {
        let mut out = Self::zero(self.coeffs.len());
        for (i, &a) in self.coeffs.iter().enumerate() {
            out.coeffs[t.conj_index(i)] += a;
        }
        out
    }

    /// Image under `chi -> chi^omega`, `omega: zeta -> zeta^k`.
    pub fn galois(&self, t: &CharacterTable, k: i64) -> Self {
        let mut out = Self::zero(self.coeffs.len());
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != 0 {
                out.coeffs[t.galois_image(i, k)] += a;
            }
        }
        out
    }

    /// Membership in the group generated by characters of symplectic representations.
    pub fn is_symplectic(&self, t: &CharacterTable) -> bool {
        self.coeffs.iter().enumerate().all(|(i, &a)| match t.frobenius_schur(i) {
            -1 => true,
            1 => a % 2 == 0,
            _ => self.coeffs[t.conj_index(i)] == a,
        })
    }

    /// Coordinates in the symplectic generators of `t`, if symplectic.
    pub fn symplectic_coordinates(&self, t: &CharacterTable) -> Option<Vec<i64>> {
        if !self.is_symplectic(t) {
            return None;
        }
        let gens = t.symplectic_generators();
        Some(
            gens.iter()
                .map(|g| {
                    let i = g.coeffs.iter().position(|&c| c != 0).expect("nonzero generator");
                    self.coeffs[i] / g.coeffs[i]
                })
                .collect(),
        )
    }

    /// Combination with nonnegative coefficients.
    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&a| a >= 0)
    }

    pub fn dot(&self, o: &Self) -> i64 {
        self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a * b).sum()
    }
}

/// A subgroup with its own table; elements of the subgroup group `0..|H|`
/// correspond to `elements[i]` in the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    table: Arc<CharacterTable>,
}

impl Subgroup {
    pub fn new(parent: &FiniteGroup, elements: &[usize]) -> Result<Self, GroupError> {
        if !parent.is_subgroup(elements) {
            return Err(GroupError::NotASubgroup);
        }
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos = |x: usize| elems.binary_search(&x).expect("closed");
        let rows: Vec<Vec<usize>> = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos(parent.mul(a, b))).collect())
            .collect();
        let h = FiniteGroup::from_table(&rows)?;
        let table = Arc::new(CharacterTable::compute(h)?);
        Ok(Self { elements: elems, table })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Local index of a parent element.
    pub fn local(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_cyclic(&self) -> bool {
        let h = self.table.group();
        (0..h.order()).any(|x| h.element_order(x) as usize == h.order())
    }

    /// Restriction of a character of the parent.
    pub fn restrict(&self, parent: &CharacterTable, psi: &VirtualCharacter) -> Result<VirtualCharacter, GroupError> {
        let ht = &self.table;
        let f = ClassFunction {
            values: (0..ht.classes().len())
                .map(|k| {
                    let x = self.elements[ht.classes().representative(k)];
                    lift_to(&psi.value_at(parent, x), ht.exponent())
                })
                .collect(),
        };
        ht.decompose(&f)
    }

    /// Induction to the parent.
    pub fn induce(&self, parent: &CharacterTable, theta: &VirtualCharacter) -> Result<VirtualCharacter, GroupError> {
        let g = parent.group();
        let ht = &self.table;
        let hval = theta.class_function(ht);
        let inv_h = Rational::new(BigInt::from(1), BigInt::from(self.order()));
        let values = (0..parent.classes().len())
            .map(|k| {
                let x0 = parent.classes().representative(k);
                let mut acc = CyclotomicNumber::zero(parent.exponent());
                for y in 0..g.order() {
                    if let Some(l) = self.local(g.conjugate(x0, y)) {
                        acc = &acc + hval.value(ht.classes().class_of(l));
                    }
                }
                acc.scale(&inv_h)
            })
            .collect();
        parent.decompose(&ClassFunction { values })
    }
}

/// Table with its group behind a shared pointer; most APIs take this.
pub type SharedTable = Arc<CharacterTable>;

impl CharacterTable {
    /// Total values as signed integers when the character is rational-valued.
    pub fn integer_values(&self, v: &VirtualCharacter) -> Option<Vec<i64>> {
        v.class_function(self)
            .values
            .iter()
            .map(|z| z.as_integer().and_then(|i| i.to_i64()))
            .collect()
    }
}
