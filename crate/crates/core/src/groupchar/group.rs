use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::GroupError;

/// Largest supported group order.
pub const MAX_ORDER: usize = 64;

/// A finite group given by its multiplication table; elements are `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u8>,
    identity: usize,
    inverse: Vec<usize>,
    orders: Vec<u32>,
    exponent: u32,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::NotAGroup(format!("entry {bad} in row {i} is out of range")));
            }
        }
        let table: Vec<u8> = rows.iter().flatten().map(|&x| x as u8).collect();
        let m = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| GroupError::NotAGroup("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for (x, slot) in inverse.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&y| m(x, y) == identity && m(y, x) == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {x} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails for ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut g = Self { n, table, identity, inverse, orders: Vec::new(), exponent: 1 };
        g.orders = (0..n).map(|x| g.element_order_slow(x)).collect();
        g.exponent = g.orders.iter().fold(1u32, |acc, &o| acc.lcm(&o));
        Ok(g)
    }

    /// Expands permutation generators (images of `0..degree`) into a table.
    ///
    /// Elements are listed in breadth-first order from the identity.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self, GroupError> {
        let degree = gens.first().map_or(0, Vec::len);
        for g in gens {
            let set: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != degree || set.len() != degree || set.iter().any(|&x| x >= degree) {
                return Err(GroupError::NotAGroup("generator is not a permutation".into()));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        // compose as functions: (a*b)(i) = a(b(i))
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&i| a[i]).collect() };
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = compose(&elems[i], g);
                if !index.contains_key(&p) {
                    if elems.len() == MAX_ORDER {
                        return Err(GroupError::TooLarge(MAX_ORDER + 1));
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let rows: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        Self::from_table(&rows)
    }

    /// Cyclic group of order n; element k is the k-th power of a generator.
    pub fn cyclic(n: usize) -> Self {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(&rows).expect("cyclic group table")
    }

    /// Direct product; element `(a, b)` has index `a * |H| + b`.
    pub fn direct_product(g: &Self, h: &Self) -> Self {
        let (m, k) = (g.order(), h.order());
        let rows: Vec<Vec<usize>> = (0..m * k)
            .map(|x| {
                (0..m * k)
                    .map(|y| g.mul(x / k, y / k) * k + h.mul(x % k, y % k))
                    .collect()
            })
            .collect();
        Self::from_table(&rows).expect("product table")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        let e = (e.unsigned_abs() % self.orders[a] as u64) as usize;
        (0..e).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    fn element_order_slow(&self, a: usize) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `x g x^-1`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    /// Multiplication table as nested rows.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Closure of a set of elements under multiplication, sorted.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// All subgroups, each as a sorted element list, ordered by size then lexicographically.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for g in 0..self.n {
            let h = self.generated_by(&[g]);
            if found.insert(h.clone()) {
                frontier.push((h, vec![g]));
            }
        }
        while let Some((h, hgens)) = frontier.pop() {
            for g in 0..self.n {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = hgens.clone();
                gens.push(g);
                let k = self.generated_by(&gens);
                if found.insert(k.clone()) {
                    frontier.push((k, gens));
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Checks that `elems` is a subgroup.
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        !set.is_empty()
            && set.iter().all(|&x| x < self.n)
            && set.contains(&self.identity)
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }
}

/// Conjugacy classes with the identity class first and the remaining classes
/// ordered by their least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn new(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut starts: Vec<usize> = vec![g.identity()];
        starts.extend((0..n).filter(|&x| x != g.identity()));
        for x in starts {
            if seen[x] {
                continue;
            }
            let cls: BTreeSet<usize> = (0..n).map(|y| g.conjugate(x, y)).collect();
            for &c in &cls {
                seen[c] = true;
            }
            classes.push(cls.into_iter().collect());
        }
        let mut class_of = vec![0; n];
        for (k, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = k;
            }
        }
        let inverse_class = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
        Self { classes, class_of, inverse_class }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, k: usize) -> &[usize] {
        &self.classes[k]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn size(&self, k: usize) -> usize {
        self.classes[k].len()
    }

    /// Least element of the class.
    pub fn representative(&self, k: usize) -> usize {
        self.classes[k][0]
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn inverse_class(&self, k: usize) -> usize {
        self.inverse_class[k]
    }

    /// Class of `g^e` for `g` in class `k`.
    pub fn power_class(&self, g: &FiniteGroup, k: usize, e: i64) -> usize {
        self.class_of[g.pow(self.representative(k), e)]
    }
}
