//! Random test data: free complexes with known structure, base changes,
//! quasi-isomorphisms and invariant forms.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use super::complex::{compose, CochainMap, PerfectComplex};
use super::metric::HermitianForm;
use super::numeric::CMat;
use super::MetError;
use crate::cycloarith::{Mat, Rational};
use crate::groupchar::{FiniteGroup, GroupRingElement, GroupRingMatrix};

/// Integer group ring element with a few nonzero coefficients in `[-bound, bound]`.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> GroupRingElement {
    let terms: Vec<(usize, i64)> = (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(0..n), rng.gen_range(-bound..=bound))).collect();
    GroupRingElement::from_sparse(n, &terms)
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, rows: usize, cols: usize, bound: i64) -> GroupRingMatrix {
    GroupRingMatrix::from_fn(n, rows, cols, |_, _| random_element(rng, n, bound))
}

/// `x^-1` in Q[G], if it exists.
pub fn invert_element(x: &GroupRingElement, g: &FiniteGroup) -> Option<GroupRingElement> {
    let n = g.order();
    // column y of the left multiplication matrix is x * y
    let m = Mat::from_fn(n, n, |r, c| {
        let y = GroupRingElement::basis(n, c);
        x.mul(&y, g).coeff(r).clone()
    });
    let inv = m.inverse()?;
    Some(GroupRingElement::from_coeffs((0..n).map(|r| inv.get(r, g.identity()).clone()).collect()))
}

fn elementary(g: &FiniteGroup, d: usize, r: usize, c: usize, x: GroupRingElement) -> GroupRingMatrix {
    let mut m = GroupRingMatrix::identity(g, d);
    m.set(r, c, x);
    m
}

fn diagonal(g: &FiniteGroup, d: usize, i: usize, x: GroupRingElement) -> GroupRingMatrix {
    let mut m = GroupRingMatrix::identity(g, d);
    m.set(i, i, x);
    m
}

/// An invertible matrix over Z[G] together with its inverse, as a product of
/// elementary operations and signed group elements on the diagonal.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, g: &FiniteGroup, d: usize, steps: usize) -> (GroupRingMatrix, GroupRingMatrix) {
    let n = g.order();
    let mut u = GroupRingMatrix::identity(g, d);
    let mut v = GroupRingMatrix::identity(g, d);
    if d == 0 {
        return (u, v);
    }
    for _ in 0..steps {
        let (a, b) = if d > 1 && rng.gen_bool(0.7) {
            let r = rng.gen_range(0..d);
            let mut c = rng.gen_range(0..d - 1);
            if c >= r {
                c += 1;
            }
            let x = random_element(rng, n, 2);
            (elementary(g, d, r, c, x.clone()), elementary(g, d, r, c, x.neg()))
        } else {
            let i = rng.gen_range(0..d);
            let h = rng.gen_range(0..n);
            let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
            let x = GroupRingElement::from_sparse(n, &[(h, s)]);
            let xi = GroupRingElement::from_sparse(n, &[(g.inv(h), s)]);
            (diagonal(g, d, i, x), diagonal(g, d, i, xi))
        };
        u = u.mul(&a, g);
        v = b.mul(&v, g);
    }
    (u, v)
}

/// A matrix in `GL(Z_p[G])`: elementary operations with integral entries and
/// diagonal entries that are units at `p` but usually not global units.
pub fn random_local_unit<R: Rng + ?Sized>(rng: &mut R, g: &FiniteGroup, d: usize, p: u64) -> GroupRingMatrix {
    let n = g.order();
    let (mut u, _) = random_unimodular(rng, g, d, 3);
    for i in 0..d {
        let x = if rng.gen_bool(0.5) {
            // k coprime to p
            let mut k = rng.gen_range(1..=6i64);
            while k as u64 % p == 0 {
                k += 1;
            }
            GroupRingElement::from_sparse(n, &[(0, k)])
        } else {
            // 1 + p z
            let z = random_element(rng, n, 2);
            GroupRingElement::one(g).add(&z.scale(&Rational::from_integer((p as i64).into())))
        };
        u = u.mul(&diagonal(g, d, i, x), g);
    }
    u
}

/// An element of `GL(Q[G])` with nontrivial reduced norms.
pub fn random_rational_invertible<R: Rng + ?Sized>(rng: &mut R, g: &FiniteGroup, d: usize) -> GroupRingMatrix {
    let n = g.order();
    let (mut u, _) = random_unimodular(rng, g, d, 3);
    for i in 0..d {
        loop {
            let mut x = random_element(rng, n, 3);
            x = x.add(&GroupRingElement::from_sparse(n, &[(0, rng.gen_range(1..=4))]));
            let den = rng.gen_range(1..=3i64);
            x = x.scale(&Rational::new(1.into(), den.into()));
            if invert_element(&x, g).is_some() {
                u = u.mul(&diagonal(g, d, i, x), g);
                break;
            }
        }
    }
    u
}

fn zero(g: &FiniteGroup, r: usize, c: usize) -> GroupRingMatrix {
    GroupRingMatrix::zero(g.order(), r, c)
}

/// Block matrix `[[a, 0], [0, b]]` with possibly empty blocks.
fn diag2(g: &FiniteGroup, a: &GroupRingMatrix, b: &GroupRingMatrix) -> GroupRingMatrix {
    let mut m = zero(g, a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            m.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
        }
    }
    m
}

/// Sizes for [`random_complex`]: a two-term piece `Z[G]^a -> Z[G]^b` in
/// degrees 0 and 1, an extra rank `c` in degree 2, and acyclic identity
/// pieces `r0` (degrees 0 to 1) and `r1` (degrees 1 to 2).
#[derive(Clone, Copy, Debug)]
pub struct ComplexShape {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub r0: usize,
    pub r1: usize,
}

impl ComplexShape {
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self {
            a: rng.gen_range(0..=2),
            b: rng.gen_range(1..=2),
            c: rng.gen_range(0..=1),
            r0: rng.gen_range(0..=1),
            r1: rng.gen_range(0..=1),
        }
    }
}

/// A three-term complex `D (+) L` with `L` acyclic, conjugated by random
/// unimodular changes of basis in every degree.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, g: &FiniteGroup, s: ComplexShape) -> PerfectComplex {
    let n = g.order();
    let b0 = random_matrix(rng, n, s.b, s.a, 2);
    let id0 = GroupRingMatrix::identity(g, s.r0);
    let id1 = GroupRingMatrix::identity(g, s.r1);
    // degree 0: a + r0; degree 1: b + r0 + r1; degree 2: c + r1
    let d0 = diag2(g, &diag2(g, &b0, &id0), &zero(g, s.r1, 0));
    let d1 = diag2(g, &zero(g, s.c, s.b + s.r0), &id1);
    let ranks = vec![s.a + s.r0, s.b + s.r0 + s.r1, s.c + s.r1];
    let p = PerfectComplex::new(g.clone(), 0, ranks, vec![d0, d1]).expect("block complex");
    scramble(rng, &p).0
}

/// `P'` isomorphic to `P` through random unimodular `W_i : P'^i -> P^i`;
/// returns `P'` and the isomorphisms `W_i` with their inverses, as maps in
/// the boundary convention.
pub fn scramble<R: Rng + ?Sized>(rng: &mut R, p: &PerfectComplex) -> (PerfectComplex, Vec<(GroupRingMatrix, GroupRingMatrix)>) {
    let g = p.group();
    // the transpose of a product is the composite of maps
    let ws: Vec<_> = p
        .ranks()
        .iter()
        .map(|&r| {
            let (u, v) = random_unimodular(rng, g, r, 4);
            (u.transpose(), v.transpose())
        })
        .collect();
    let boundaries = (0..p.boundaries().len())
        .map(|i| compose(&compose(&ws[i].0, p.boundary(i), g), &ws[i + 1].1, g))
        .collect();
    let q = PerfectComplex::new(g.clone(), p.start(), p.ranks().to_vec(), boundaries).expect("isomorphic complex");
    (q, ws)
}

/// `D = C (+) L` scrambled, with `L` a random acyclic complex on the same
/// degrees, and the quasi-isomorphism `C -> D`.
pub fn random_quasi_iso<R: Rng + ?Sized>(rng: &mut R, c: &PerfectComplex) -> (PerfectComplex, CochainMap) {
    let g = c.group();
    let len = c.len();
    // acyclic: identity pieces between consecutive degrees
    let pieces: Vec<usize> = (0..len.saturating_sub(1)).map(|_| rng.gen_range(0..=1)).collect();
    let lranks: Vec<usize> = (0..len)
        .map(|i| pieces.get(i).copied().unwrap_or(0) + if i > 0 { pieces[i - 1] } else { 0 })
        .collect();
    let lb: Vec<GroupRingMatrix> = (0..len.saturating_sub(1))
        .map(|i| {
            let prev = if i > 0 { pieces[i - 1] } else { 0 };
            let next = pieces.get(i + 1).copied().unwrap_or(0);
            // source: [prev-piece targets | piece i sources]; target: [piece i targets | next sources]
            diag2(g, &zero(g, 0, prev), &diag2(g, &GroupRingMatrix::identity(g, pieces[i]), &zero(g, next, 0)))
        })
        .collect();
    let l = PerfectComplex::new(g.clone(), c.start(), lranks, lb).expect("acyclic complex");
    let sum = c.direct_sum(&l).expect("aligned");
    let (d, ws) = scramble(rng, &sum);
    let maps = (0..len)
        .map(|i| {
            let incl = GroupRingMatrix::from_fn(g.order(), sum.ranks()[i], c.ranks()[i], |r, col| {
                if r == col {
                    GroupRingElement::one(g)
                } else {
                    GroupRingElement::zero(g.order())
                }
            });
            compose(&incl, &ws[i].1, g)
        })
        .collect();
    let alpha = CochainMap::new(c, &d, maps).expect("inclusion is a chain map");
    (d, alpha)
}

/// Random degree-lowering maps `h^i : C^i -> D^{i-1}`.
pub fn random_homotopy<R: Rng + ?Sized>(rng: &mut R, c: &PerfectComplex, d: &PerfectComplex) -> Vec<GroupRingMatrix> {
    let n = c.group().order();
    (0..c.len())
        .map(|i| if i == 0 { zero(c.group(), 0, 0) } else { random_matrix(rng, n, d.ranks()[i - 1], c.ranks()[i], 1) })
        .collect()
}

/// `mu(x M, y M)` for a random unimodular `M` scaled by a positive rational.
pub fn random_form<R: Rng + ?Sized>(rng: &mut R, g: &FiniteGroup, d: usize) -> Result<HermitianForm, MetError> {
    let (u, _) = random_unimodular(rng, g, d, 3);
    let s = Rational::new(rng.gen_range(1..=5i64).into(), rng.gen_range(1..=3i64).into());
    let scaled = GroupRingMatrix::from_fn(g.order(), d, d, |r, c| u.get(r, c).scale(&s));
    HermitianForm::from_right_factor(g, &scaled)
}

/// Haar-like random unitary from the QR factorisation of a Gaussian-ish matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, k: usize) -> CMat {
    let m = DMatrix::from_fn(k, k, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    m.qr().q()
}
