//! Built-in corpus fields: `Q`, `Q(zeta_p)` for odd primes p, `Q(zeta_8)`
//! (wild at 2, Galois data only) and the splitting field of `x^3 - x - 1`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::descriptor::{GaloisData, InertiaCharacter, RamSpec, TameFieldDescriptor};
use super::FieldError;
use crate::cycloarith::{is_prime, rat, ComplexInterval, FiniteField};
use crate::groupchar::FiniteGroup;

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    FiniteField::new(p, 1).expect("prime").primitive_element()[0]
}

fn unit_vector(n: usize) -> Vec<num_rational::BigRational> {
    (0..n).map(|i| rat(i64::from(i == 0), 1)).collect()
}

/// `N = Q` with `b = 1`.
pub fn rationals() -> Result<TameFieldDescriptor, FieldError> {
    let data = GaloisData::new(FiniteGroup::cyclic(1), vec![ComplexInterval::one()], 0)?;
    TameFieldDescriptor::new(data, &[], Some(unit_vector(1)))
}

/// `Q(zeta_p)` with `G = (Z/p)^x` cyclic; element `j` is `zeta -> zeta^(r^j)`
/// for the smallest primitive root `r`, and `b = zeta`.
pub fn cyclotomic_galois(p: u64) -> Result<GaloisData, FieldError> {
    if p < 3 || !is_prime(p) {
        return Err(FieldError::InvalidDescriptor(vec![alloc::format!("{p} is not an odd prime")]));
    }
    let r = primitive_root(p);
    let n = (p - 1) as usize;
    let mut k = 1u64;
    let mut emb = Vec::with_capacity(n);
    for _ in 0..n {
        emb.push(ComplexInterval::root_of_unity(p as u32, k as i64));
        k = k * r % p;
    }
    GaloisData::new(FiniteGroup::cyclic(n), emb, n / 2)
}

/// `Q(zeta_p)`: totally ramified at p with `O_N = Z[G] zeta`. The inertia
/// character sends the generator to `zeta_(p-1)`.
pub fn cyclotomic(p: u64) -> Result<TameFieldDescriptor, FieldError> {
    let data = cyclotomic_galois(p)?;
    let n = data.group().order();
    let ram = RamSpec {
        p,
        f: 1,
        g: 1,
        inertia: (0..n).collect(),
        character: InertiaCharacter { generator: 1 % n, exponent: 1 },
    };
    TameFieldDescriptor::new(data, &[ram], Some(unit_vector(n)))
}

/// Exponents `k` with element `i` of `C2 x C2` acting as `zeta_8 -> zeta_8^k`.
pub const ZETA8_EXPONENTS: [i64; 4] = [1, 5, 3, 7];

/// `Q(zeta_8)` with `G = C2 x C2` and the normal basis `b = 1 + zeta + zeta^2`.
pub fn cyclotomic_eight_galois() -> Result<GaloisData, FieldError> {
    let c2 = FiniteGroup::cyclic(2);
    let g = FiniteGroup::direct_product(&c2, &c2);
    let emb = ZETA8_EXPONENTS
        .iter()
        .map(|&k| ComplexInterval::one() + ComplexInterval::root_of_unity(8, k) + ComplexInterval::root_of_unity(8, 2 * k))
        .collect();
    GaloisData::new(g, emb, 3)
}

/// Ramification of `Q(zeta_8)` at 2; wild, so descriptors built from it are
/// rejected.
pub fn cyclotomic_eight_ramification() -> RamSpec {
    RamSpec { p: 2, f: 1, g: 1, inertia: vec![0, 1, 2, 3], character: InertiaCharacter { generator: 1, exponent: 1 } }
}

/// Permutations of the three roots, in lexicographic order.
pub const S3_PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Roots of `x^3 - x - 1`: the real root, then the pair with negative and
/// positive imaginary part.
pub const CUBIC_ROOTS: [(f64, f64); 3] = [
    (1.324_717_957_244_746, 0.0),
    (-0.662_358_978_622_373, -0.562_279_512_062_301_2),
    (-0.662_358_978_622_373, 0.562_279_512_062_301_2),
];

/// `S3` acting on the roots, `(ab)(i) = a(b(i))`.
pub fn s3_group() -> FiniteGroup {
    let idx = |p: [usize; 3]| S3_PERMUTATIONS.iter().position(|&q| q == p).expect("permutation");
    let rows: Vec<Vec<usize>> = S3_PERMUTATIONS
        .iter()
        .map(|a| S3_PERMUTATIONS.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    FiniteGroup::from_table(&rows).expect("S3")
}

/// Splitting field of `x^3 - x - 1` (discriminant -23) with the normal basis
/// `b = a_0 a_1 + a_0 a_1^2`; tamely ramified at 23 only, with `e = 2, f = 1, g = 3`.
pub fn s3_cubic() -> Result<TameFieldDescriptor, FieldError> {
    let roots: Vec<ComplexInterval> =
        CUBIC_ROOTS.iter().map(|&(re, im)| ComplexInterval::around(Complex64::new(re, im), 4e-16)).collect();
    let emb = S3_PERMUTATIONS
        .iter()
        .map(|g| roots[g[0]] * roots[g[1]] + roots[g[0]] * roots[g[1]] * roots[g[1]])
        .collect();
    let data = GaloisData::new(s3_group(), emb, 1)?;
    let ram = RamSpec { p: 23, f: 1, g: 3, inertia: vec![0, 2], character: InertiaCharacter { generator: 2, exponent: 1 } };
    TameFieldDescriptor::new(data, &[ram], None)
}
