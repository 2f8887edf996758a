//! Explicit matrix representations of the irreducible characters.

use alloc::format;
use alloc::vec::Vec;

use super::group::FiniteGroup;
use super::group_ring::{GroupRingElement, GroupRingMatrix};
use super::table::{CharacterTable, Subgroup};
use super::GroupError;
use crate::cycloarith::{CycloMatrix, CyclotomicNumber, Mat};

/// Matrices `T(g)` of one irreducible representation, indexed by element.
#[derive(Clone, Debug, PartialEq)]
pub struct IrreducibleRep {
    char_index: usize,
    dim: usize,
    mats: Vec<CycloMatrix>,
}

impl IrreducibleRep {
    pub fn char_index(&self) -> usize {
        self.char_index
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CycloMatrix {
        &self.mats[g]
    }

    /// `T(x) = sum_g x_g T(g)`.
    pub fn apply(&self, x: &GroupRingElement, conductor: u32) -> CycloMatrix {
        let zero = CyclotomicNumber::zero(conductor);
        let mut acc = Mat::from_fn(self.dim, self.dim, |_, _| zero.clone());
        for (g, c) in x.coeffs().iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let m = self.mats[g].map(|v| v.scale(c));
            acc = acc.add(&m);
        }
        acc
    }

    /// Block matrix whose `(j, k)` block is `T(A_jk)`.
    pub fn apply_matrix(&self, a: &GroupRingMatrix, conductor: u32) -> CycloMatrix {
        let n = self.dim;
        let blocks: Vec<CycloMatrix> = a.entries().iter().map(|x| self.apply(x, conductor)).collect();
        Mat::from_fn(a.rows() * n, a.cols() * n, |r, c| {
            blocks[(r / n) * a.cols() + c / n].get(r % n, c % n).clone()
        })
    }

    /// `det T(g)` as a function on elements.
    pub fn det_character(&self) -> Vec<CyclotomicNumber> {
        self.mats.iter().map(|m| m.det().expect("nonempty")).collect()
    }
}

/// One representation per irreducible character, in table order.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrepSet {
    reps: Vec<IrreducibleRep>,
}

impl IrrepSet {
    /// Builds all representations: linear ones from the table, the rest by
    /// monomial induction from linear characters of subgroups. Supplied
    /// representations take precedence and are matched by trace.
    pub fn build(table: &CharacterTable, supplied: &[Vec<CycloMatrix>]) -> Result<Self, GroupError> {
        let g = table.group();
        let e = table.exponent();
        let r = table.num_irreducibles();
        let mut slots: Vec<Option<IrreducibleRep>> = (0..r).map(|_| None).collect();
        for (s, mats) in supplied.iter().enumerate() {
            let rep = validate_supplied(table, mats).map_err(|msg| {
                GroupError::InvalidRepresentation(format!("supplied representation {s}: {msg}"))
            })?;
            let i = rep.char_index;
            if slots[i].is_some() {
                return Err(GroupError::InvalidRepresentation(format!(
                    "two supplied representations afford character {i}"
                )));
            }
            slots[i] = Some(rep);
        }
        let mut subgroups: Option<Vec<Vec<usize>>> = None;
        for i in 0..r {
            if slots[i].is_some() {
                continue;
            }
            if table.degree(i) == 1 {
                let mats = (0..g.order())
                    .map(|x| Mat::from_rows(alloc::vec![alloc::vec![table.value_at(i, x).clone()]]))
                    .collect();
                slots[i] = Some(IrreducibleRep { char_index: i, dim: 1, mats });
                continue;
            }
            let subs = subgroups.get_or_insert_with(|| g.subgroups());
            let rep = monomial_rep(table, i, subs, e)?.ok_or_else(|| {
                GroupError::InvalidRepresentation(format!(
                    "character {i} is not monomial; supply its representation explicitly"
                ))
            })?;
            slots[i] = Some(rep);
        }
        Ok(Self { reps: slots.into_iter().map(|s| s.expect("filled")).collect() })
    }

    pub fn rep(&self, i: usize) -> &IrreducibleRep {
        &self.reps[i]
    }

    pub fn reps(&self) -> &[IrreducibleRep] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

fn validate_supplied(table: &CharacterTable, mats: &[CycloMatrix]) -> Result<IrreducibleRep, alloc::string::String> {
    let g = table.group();
    if mats.len() != g.order() {
        return Err(format!("expected {} matrices, found {}", g.order(), mats.len()));
    }
    let n = mats[0].rows();
    if n == 0 || mats.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err("matrices must be square of a common size".into());
    }
    let e = table.exponent();
    let mats: Vec<CycloMatrix> = mats.iter().map(|m| m.map(|v| lift_value(v, e))).collect();
    for a in 0..g.order() {
        for b in 0..g.order() {
            if mats[a].mul(&mats[b]) != mats[g.mul(a, b)] {
                return Err(format!("T({a}) T({b}) != T({})", g.mul(a, b)));
            }
        }
    }
    let traces: Vec<CyclotomicNumber> = mats.iter().map(|m| m.trace().expect("nonempty")).collect();
    let i = (0..table.num_irreducibles())
        .find(|&i| (0..g.order()).all(|x| *table.value_at(i, x) == traces[x]))
        .ok_or_else(|| "trace is not an irreducible character".to_string())?;
    Ok(IrreducibleRep { char_index: i, dim: n, mats })
}

use alloc::string::ToString;

fn lift_value(v: &CyclotomicNumber, e: u32) -> CyclotomicNumber {
    if e % v.conductor() == 0 {
        v.lift(e).expect("divides")
    } else {
        let n = v.normalized();
        n.lift(e).unwrap_or(n)
    }
}

fn monomial_rep(
    table: &CharacterTable,
    i: usize,
    subgroups: &[Vec<usize>],
    e: u32,
) -> Result<Option<IrreducibleRep>, GroupError> {
    let g: &FiniteGroup = table.group();
    let d = table.degree(i) as usize;
    let target = table.irreducible(i);
    for elems in subgroups.iter().filter(|h| h.len() * d == g.order()) {
        let h = Subgroup::new(g, elems)?;
        let ht = h.table().clone();
        for l in 0..ht.num_irreducibles() {
            if ht.degree(l) != 1 {
                continue;
            }
            if h.induce(table, &ht.irreducible(l))? != target {
                continue;
            }
            // left coset representatives t_1 = 1, t_2, ...
            let mut reps: Vec<usize> = Vec::new();
            let mut covered = alloc::vec![false; g.order()];
            for x in core::iter::once(g.identity()).chain(0..g.order()) {
                if covered[x] {
                    continue;
                }
                reps.push(x);
                for &y in elems {
                    covered[g.mul(x, y)] = true;
                }
            }
            let lam = |x: usize| -> CyclotomicNumber {
                let local = h.local(x).expect("element of H");
                lift_value(ht.value_at(l, local), e)
            };
            let zero = CyclotomicNumber::zero(e);
            let mats = (0..g.order())
                .map(|x| {
                    Mat::from_fn(d, d, |r, c| {
                        // T(x)[r][c] = lambda(t_r^-1 x t_c) if that lies in H
                        let y = g.mul(g.mul(g.inv(reps[r]), x), reps[c]);
                        if h.contains(y) {
                            lam(y)
                        } else {
                            zero.clone()
                        }
                    })
                })
                .collect();
            return Ok(Some(IrreducibleRep { char_index: i, dim: d, mats }));
        }
    }
    Ok(None)
}
