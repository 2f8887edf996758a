//! Small finite fields `F_q = F_p[t]/(P)` for Gauss sum evaluation.

use alloc::vec;
use alloc::vec::Vec;

use super::CycloError;

/// Prime factors of `n` in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

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

/// Remainder of `a` modulo the monic-or-not polynomial `m` over F_p.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for (j, &mj) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = (r[idx] + p - c * mj % p) % p;
            }
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Rabin's irreducibility test for a monic polynomial of degree f over F_p.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let f = (m.len() - 1) as u64;
    let x = vec![0, 1];
    // x^(p^k) mod m by repeated p-th powering
    let frob = |k: u64| {
        let mut t = x.clone();
        for _ in 0..k {
            t = poly_powmod(&t, p, m, p);
        }
        t
    };
    let sub_x = |mut t: Vec<u64>| {
        t.resize(t.len().max(2), 0);
        t[1] = (t[1] + p - 1) % p;
        trim(t)
    };
    if !sub_x(frob(f)).is_empty() {
        return false;
    }
    for r in prime_factors(f) {
        let g = poly_gcd(m, &sub_x(frob(f / r)), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The field with `p^f` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    f: u32,
    modulus: Vec<u64>,
}

/// Field element as coefficient vector of length f.
pub type Fq = Vec<u64>;

impl FiniteField {
    /// Uses the lexicographically smallest monic irreducible polynomial of degree f.
    pub fn new(p: u64, f: u32) -> Result<Self, CycloError> {
        if !is_prime(p) || f == 0 {
            return Err(CycloError::InvalidField { p, f });
        }
        let q = p.checked_pow(f).filter(|&q| q <= 1 << 24).ok_or(CycloError::InvalidField { p, f })?;
        if f == 1 {
            return Ok(Self { p, f, modulus: vec![0, 1] });
        }
        let f_us = f as usize;
        for code in 0..q {
            let mut m = vec![0u64; f_us + 1];
            let mut c = code;
            for slot in m.iter_mut().take(f_us) {
                *slot = c % p;
                c /= p;
            }
            m[f_us] = 1;
            if m[0] != 0 && is_irreducible(&m, p) {
                return Ok(Self { p, f, modulus: m });
            }
        }
        Err(CycloError::InvalidField { p, f })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn element(&self, code: u64) -> Fq {
        let mut c = code;
        (0..self.f)
            .map(|_| {
                let v = c % self.p;
                c /= self.p;
                v
            })
            .collect()
    }

    pub fn one(&self) -> Fq {
        self.element(1)
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let mut r = poly_rem(&poly_mul(a, b, self.p), &self.modulus, self.p);
        r.resize(self.f as usize, 0);
        r
    }

    pub fn pow(&self, a: &Fq, mut e: u64) -> Fq {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace to F_p.
    pub fn trace(&self, a: &Fq) -> u64 {
        let mut acc = 0u64;
        let mut t = a.clone();
        for _ in 0..self.f {
            acc = (acc + t[0]) % self.p;
            t = self.pow(&t, self.p);
        }
        acc
    }

    /// Smallest element (by base-p code) generating the multiplicative group.
    pub fn primitive_element(&self) -> Fq {
        let q = self.order();
        let factors = prime_factors(q - 1);
        let one = self.one();
        for code in 1..q {
            let g = self.element(code);
            if factors.iter().all(|&r| self.pow(&g, (q - 1) / r) != one) {
                return g;
            }
        }
        unreachable!("finite field multiplicative group is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_and_f9_have_primitive_elements() {
        for (p, f) in [(2u64, 2u32), (3, 2), (2, 3), (5, 1), (7, 2)] {
            let k = FiniteField::new(p, f).unwrap();
            let g = k.primitive_element();
            let q = k.order();
            let mut seen = alloc::collections::BTreeSet::new();
            let mut x = k.one();
            for _ in 0..q - 1 {
                seen.insert(x.clone());
                x = k.mul(&x, &g);
            }
            assert_eq!(seen.len() as u64, q - 1);
            assert_eq!(x, k.one());
        }
    }

    #[test]
    fn trace_is_additive_and_surjective() {
        let k = FiniteField::new(3, 2).unwrap();
        let mut hits = [0u32; 3];
        for c in 0..9 {
            hits[k.trace(&k.element(c)) as usize] += 1;
        }
        assert_eq!(hits, [3, 3, 3]);
    }
}
