//! Dixon-Schneider: split the class algebra modulo a prime, then lift the
//! modular character values to cyclotomic integers.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::group::{ConjugacyClasses, FiniteGroup};
use super::GroupError;
use crate::cycloarith::{is_prime, prime_factors, CyclotomicNumber, Rational};

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Smallest prime `p = 1 (mod e)` with `p > 2 sqrt(|G|) e`.
pub fn dixon_prime(order: usize, exponent: u32) -> u64 {
    let e = exponent as u64;
    let bound = 2.0 * libm::sqrt(order as f64) * e as f64;
    let mut p = e + 1;
    while (p as f64) <= bound || !is_prime(p) {
        p += e;
    }
    p
}

fn primitive_root(p: u64) -> u64 {
    let fs = prime_factors(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

/// Row reduction mod p in place; returns pivot columns.
fn rref_mod(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let (src, dst) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d = (*d + p - f * s % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Kernel basis of a square matrix mod p (vectors as rows of the result).
fn kernel_mod(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let n = a.first().map_or(0, Vec::len);
    let piv = rref_mod(&mut m, p);
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = (p - m[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial (constant term first) by Faddeev-LeVerrier.
fn charpoly_mod(x: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = x.len();
    let mut c = vec![0u64; n + 1];
    c[n] = 1;
    let mut mk = vec![vec![0u64; n]; n];
    for k in 1..=n {
        // M_k = X M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0u64; n]; n];
        for i in 0..n {
            for l in 0..n {
                let mut s = 0u64;
                for j in 0..n {
                    s = (s + x[i][j] * mk[j][l]) % p;
                }
                next[i][l] = s;
            }
            next[i][i] = (next[i][i] + c[n - k + 1]) % p;
        }
        mk = next;
        let mut tr = 0u64;
        for i in 0..n {
            for j in 0..n {
                tr = (tr + x[i][j] * mk[j][i]) % p;
            }
        }
        c[n - k] = (p - tr * inv_mod(k as u64 % p, p) % p) % p;
    }
    c
}

fn eval_mod(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Irreducible character values (per class, conductor = exponent), unsorted.
pub fn dixon_schneider(
    g: &FiniteGroup,
    cc: &ConjugacyClasses,
) -> Result<Vec<Vec<CyclotomicNumber>>, GroupError> {
    let r = cc.len();
    let order = g.order();
    let e = g.exponent();
    let p = dixon_prime(order, e);

    // a[i][j][k] = #{x in C_i : x^-1 z in C_j} for a fixed z in C_k
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for k in 0..r {
        let z = cc.representative(k);
        for i in 0..r {
            for &x in cc.class(i) {
                let y = g.mul(g.inv(x), z);
                a[i][cc.class_of(y)][k] += 1;
            }
        }
    }

    // common eigenvectors of the class matrices M_i with (M_i)_{jk} = a_ijk
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for i in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let s = basis.len();
            // M_i applied to each basis vector
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|v| (0..r).map(|j| (0..r).fold(0, |acc, k| (acc + a[i][j][k] * v[k]) % p)).collect())
                .collect();
            // Solve U X = M_i U via rref of [U | M_i U] laid out by rows j.
            let mut aug: Vec<Vec<u64>> = (0..r)
                .map(|j| {
                    let mut row: Vec<u64> = basis.iter().map(|v| v[j]).collect();
                    row.extend(images.iter().map(|w| w[j]));
                    row
                })
                .collect();
            let piv = rref_mod(&mut aug, p);
            if piv.len() < s || piv[s - 1] != s - 1 {
                return Err(GroupError::DixonFailure("class space basis is degenerate".into()));
            }
            let x: Vec<Vec<u64>> = (0..s).map(|row| aug[row][s..2 * s].to_vec()).collect();
            let cp = charpoly_mod(&x, p);
            let mut found = 0;
            let mut pieces = Vec::new();
            for lambda in 0..p {
                if eval_mod(&cp, lambda, p) != 0 {
                    continue;
                }
                let shifted: Vec<Vec<u64>> = (0..s)
                    .map(|row| {
                        (0..s)
                            .map(|col| {
                                let v = x[row][col];
                                if row == col { (v + p - lambda) % p } else { v }
                            })
                            .collect()
                    })
                    .collect();
                let ker = kernel_mod(&shifted, p);
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|y| (0..r).map(|j| (0..s).fold(0, |acc, t| (acc + basis[t][j] * y[t]) % p)).collect())
                    .collect();
                pieces.push(sub);
                if found == s {
                    break;
                }
            }
            if found != s {
                return Err(GroupError::DixonFailure(format!(
                    "class matrix {i} does not split modulo {p}"
                )));
            }
            next.extend(pieces);
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(GroupError::DixonFailure("class algebra did not separate".into()));
    }

    let z = pow_mod(primitive_root(p), (p - 1) / e as u64, p);
    let zinv = inv_mod(z, p);
    let max_deg = libm::sqrt(order as f64) as u64 + 1;
    let mut out = Vec::with_capacity(r);
    for space in spaces {
        let mut w = space.into_iter().next().expect("one-dimensional space");
        let w0 = w[0];
        if w0 == 0 {
            return Err(GroupError::DixonFailure("eigenvector vanishes at the identity".into()));
        }
        let inv0 = inv_mod(w0, p);
        for x in w.iter_mut() {
            *x = *x * inv0 % p;
        }
        // sum_k w_k w_{k*} / h_k = |G| / chi(1)^2
        let mut s = 0u64;
        for k in 0..r {
            let t = w[k] * w[cc.inverse_class(k)] % p;
            s = (s + t * inv_mod(cc.size(k) as u64 % p, p)) % p;
        }
        if s == 0 {
            return Err(GroupError::DixonFailure("degenerate normalization".into()));
        }
        let d2 = (order as u64 % p) * inv_mod(s, p) % p;
        let d = (1..=max_deg)
            .find(|&d| d * d % p == d2)
            .ok_or_else(|| GroupError::DixonFailure("no admissible degree".into()))?;
        let modvals: Vec<u64> =
            (0..r).map(|k| d * w[k] % p * inv_mod(cc.size(k) as u64 % p, p) % p).collect();

        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            let rep = cc.representative(k);
            let m = g.element_order(rep) as u64;
            let step = e as u64 / m;
            let minv = inv_mod(m % p, p);
            let mut full = vec![Rational::zero(); e as usize];
            let mut total = 0u64;
            for s in 0..m {
                let mut acc = 0u64;
                for l in 0..m {
                    let cls = cc.class_of(g.pow(rep, l as i64));
                    let root = pow_mod(zinv, (step * s * l) % e as u64, p);
                    acc = (acc + modvals[cls] * root) % p;
                }
                let mu = acc * minv % p;
                if mu > d {
                    return Err(GroupError::DixonFailure(format!(
                        "eigenvalue multiplicity {mu} exceeds degree {d}"
                    )));
                }
                total += mu;
                full[(step * s) as usize] += Rational::from_integer(mu.into());
            }
            if total != d {
                return Err(GroupError::DixonFailure("multiplicities do not sum to the degree".into()));
            }
            row.push(CyclotomicNumber::from_full(e, full));
        }
        out.push(row);
    }
    Ok(out)
}
