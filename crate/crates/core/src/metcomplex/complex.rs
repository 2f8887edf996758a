//! Bounded cochain complexes of free Z[G]-modules and maps between them.

use alloc::format;
use alloc::vec::Vec;

use super::MetError;
use crate::groupchar::{FiniteGroup, GroupRingElement, GroupRingMatrix, IrreducibleRep};

/// Composite of `d` followed by `d2`, where a matrix `B` acts by
/// `d(e_j) = sum_k B_kj e_k`: the result is `C_mj = sum_k B_kj B2_mk`.
pub fn compose(b: &GroupRingMatrix, b2: &GroupRingMatrix, g: &FiniteGroup) -> GroupRingMatrix {
    b.transpose().mul(&b2.transpose(), g).transpose()
}

/// `P^s -> P^{s+1} -> ... ` with `P^i = Z[G]^{d_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerfectComplex {
    group: FiniteGroup,
    start: i64,
    ranks: Vec<usize>,
    boundaries: Vec<GroupRingMatrix>,
}

impl PerfectComplex {
    /// `boundaries[i]` maps degree `start + i` to `start + i + 1` and has
    /// shape `ranks[i + 1] x ranks[i]`.
    pub fn new(group: FiniteGroup, start: i64, ranks: Vec<usize>, boundaries: Vec<GroupRingMatrix>) -> Result<Self, MetError> {
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(MetError::Shape(format!("{} ranks need {} boundaries", ranks.len(), ranks.len().saturating_sub(1))));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.rows() != ranks[i + 1] || b.cols() != ranks[i] || b.group_order() != group.order() {
                return Err(MetError::Shape(format!("boundary in degree {} has the wrong shape", start + i as i64)));
            }
            if !b.is_integral() {
                return Err(MetError::Shape(format!("boundary in degree {} is not integral", start + i as i64)));
            }
        }
        for i in 1..boundaries.len() {
            if !compose(&boundaries[i - 1], &boundaries[i], &group).is_zero() {
                return Err(MetError::NotAComplex(start + i as i64 - 1));
            }
        }
        Ok(Self { group, start, ranks, boundaries })
    }

    /// Single free module in one degree.
    pub fn single(group: FiniteGroup, degree: i64, rank: usize) -> Self {
        Self { group, start: degree, ranks: alloc::vec![rank], boundaries: Vec::new() }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Number of degrees.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.start + i as i64
    }

    /// Boundary leaving position `i`.
    pub fn boundary(&self, i: usize) -> &GroupRingMatrix {
        &self.boundaries[i]
    }

    pub fn boundaries(&self) -> &[GroupRingMatrix] {
        &self.boundaries
    }

    /// `(-1)^degree` for position `i`.
    pub fn sign(&self, i: usize) -> i32 {
        if self.degree(i).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Same degrees, so that position `i` of both refers to one degree.
    pub fn aligned(&self, o: &Self) -> bool {
        self.start == o.start && self.len() == o.len()
    }

    /// Termwise direct sum; both complexes must cover the same degrees.
    pub fn direct_sum(&self, o: &Self) -> Result<Self, MetError> {
        if self.group != o.group {
            return Err(MetError::Shape("direct sum over different groups".into()));
        }
        if !self.aligned(o) {
            return Err(MetError::Shape("direct sum of complexes over different degrees".into()));
        }
        let ranks = self.ranks.iter().zip(&o.ranks).map(|(a, b)| a + b).collect();
        let boundaries = self.boundaries.iter().zip(&o.boundaries).map(|(a, b)| a.block_diag(b)).collect();
        Ok(Self { group: self.group.clone(), start: self.start, ranks, boundaries })
    }

    /// The G-fixed points of a free complex: `(Z[G]^d)^G = Z^d` via the norm
    /// element, with boundaries given by augmentation.
    pub fn fixed_points(&self) -> Self {
        let triv = FiniteGroup::cyclic(1);
        let boundaries = self
            .boundaries
            .iter()
            .map(|b| {
                GroupRingMatrix::from_fn(1, b.rows(), b.cols(), |r, c| {
                    GroupRingElement::from_coeffs(alloc::vec![b.get(r, c).augmentation()])
                })
            })
            .collect();
        Self { group: triv, start: self.start, ranks: self.ranks.clone(), boundaries }
    }

    /// Exact dimension of the image of the boundary leaving position `i` on
    /// the isotypic piece of `rep`, in units of `phi(1)^2`-blocks: the
    /// returned value is `phi(1) * rank` of the block matrix `[T(B_kj)]`.
    pub fn isotypic_rank(&self, i: usize, rep: &IrreducibleRep, conductor: u32) -> usize {
        let b = &self.boundaries[i];
        if b.rows() == 0 || b.cols() == 0 {
            return 0;
        }
        rep.dim() * rep.apply_matrix(&b.transpose(), conductor).rank()
    }

    /// Dimensions of `H^i(P_phi)` per position.
    pub fn isotypic_cohomology(&self, rep: &IrreducibleRep, conductor: u32) -> Vec<usize> {
        let n2 = rep.dim() * rep.dim();
        let r: Vec<usize> = (0..self.boundaries.len()).map(|i| self.isotypic_rank(i, rep, conductor)).collect();
        (0..self.len())
            .map(|i| {
                let out = if i < r.len() { r[i] } else { 0 };
                let inc = if i > 0 { r[i - 1] } else { 0 };
                self.ranks[i] * n2 - out - inc
            })
            .collect()
    }
}

/// Degreewise matrices `alpha^i` with `alpha(e_j) = sum_k A_kj f_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainMap {
    maps: Vec<GroupRingMatrix>,
}

impl CochainMap {
    /// Checks shapes and `alpha d_C = d_D alpha` exactly.
    pub fn new(source: &PerfectComplex, target: &PerfectComplex, maps: Vec<GroupRingMatrix>) -> Result<Self, MetError> {
        if !source.aligned(target) || maps.len() != source.len() || source.group() != target.group() {
            return Err(MetError::Shape("cochain map between complexes of different shape".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != target.ranks()[i] || m.cols() != source.ranks()[i] {
                return Err(MetError::Shape(format!("map in degree {} has the wrong shape", source.degree(i))));
            }
        }
        let g = source.group();
        for i in 0..source.boundaries.len() {
            let left = compose(source.boundary(i), &maps[i + 1], g);
            let right = compose(&maps[i], target.boundary(i), g);
            if left != right {
                return Err(MetError::NotAChainMap(source.degree(i)));
            }
        }
        Ok(Self { maps })
    }

    pub fn identity(c: &PerfectComplex) -> Self {
        Self { maps: c.ranks().iter().map(|&r| GroupRingMatrix::identity(c.group(), r)).collect() }
    }

    pub fn map(&self, i: usize) -> &GroupRingMatrix {
        &self.maps[i]
    }

    pub fn maps(&self) -> &[GroupRingMatrix] {
        &self.maps
    }

    /// `alpha + d h + h d` for a degree-lowering family `h^i : P^i -> Q^{i-1}`
    /// given at positions `1..len` (`h[0]` is ignored and may be empty).
    pub fn add_homotopy(
        &self,
        source: &PerfectComplex,
        target: &PerfectComplex,
        h: &[GroupRingMatrix],
    ) -> Result<Self, MetError> {
        let g = source.group();
        let mut maps = self.maps.clone();
        for i in 0..source.len() {
            // h^{i+1} d_C^i : P^i -> Q^i
            if i + 1 < source.len() {
                maps[i] = maps[i].add(&compose(source.boundary(i), &h[i + 1], g));
            }
            // d_D^{i-1} h^i : P^i -> Q^i
            if i > 0 {
                maps[i] = maps[i].add(&compose(&h[i], target.boundary(i - 1), g));
            }
        }
        Self::new(source, target, maps)
    }
}
