//! Finite fields `GF(p^m)` with table-driven arithmetic.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`, i.e. the
//! coefficient vector of a polynomial of degree `< m` read in base `p`. The
//! field order is capped at 256 so that every element fits in a byte and the
//! addition and multiplication tables stay small.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element in the integer encoding described at module level.
pub type Fe = u8;

/// Shared handle to a field. Every object in one computation holds the same one.
pub type Field = Arc<FieldSpec>;

pub const MAX_FIELD_ORDER: usize = 256;

pub struct FieldSpec {
    p: u32,
    m: u32,
    q: usize,
    modulus: Vec<u32>,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.m, self.modulus)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over GF(p) as coefficient vectors, lowest degree first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] * lead_inv) % p;
        for (i, &bi) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = (r[idx] + p - (c * bi) % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, modulus, p)
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    r as u32
}

fn poly_from_index(mut idx: usize, p: u32, len: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(len);
    for _ in 0..len {
        v.push((idx % p as usize) as u32);
        idx /= p as usize;
    }
    v
}

fn poly_to_index(c: &[u32], p: u32) -> usize {
    c.iter()
        .rev()
        .fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

/// Irreducibility by trial division with every monic polynomial of degree `<= m/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    if m == 0 {
        return false;
    }
    for d in 1..=m / 2 {
        for low in 0..(p as usize).pow(d as u32) {
            let mut f = poly_from_index(low, p, d);
            f.push(1);
            if poly_rem(modulus, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn x_is_primitive(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    let order = (p as usize).pow(m as u32) - 1;
    let x = if m == 1 {
        vec![(p - modulus[0]) % p]
    } else {
        vec![0, 1]
    };
    let mut acc = vec![1u32];
    for k in 1..=order {
        acc = poly_mulmod(&acc, &x, modulus, p);
        if acc == [1] {
            return k == order;
        }
        if acc.is_empty() {
            return false;
        }
    }
    false
}

/// The canonical modulus: the least monic polynomial of degree `m` (lower
/// coefficients compared as a base-`p` integer) that is irreducible and has
/// `x` as a primitive element.
pub fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    let m = m as usize;
    for low in 0..(p as usize).pow(m as u32) {
        let mut f = poly_from_index(low, p, m);
        f.push(1);
        if is_irreducible(&f, p) && x_is_primitive(&f, p) {
            return f;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

impl FieldSpec {
    /// `GF(p^m)` with the canonical modulus.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::BadExtensionDegree(m));
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER as u64 {
            return Err(Error::FieldTooLarge { p, m });
        }
        Self::with_modulus(p, canonical_modulus(p, m))
    }

    /// `GF(p^m)` presented by an explicit monic irreducible modulus (lowest
    /// coefficient first).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 {
            return Err(Error::BadExtensionDegree(0));
        }
        let m = (modulus.len() - 1) as u32;
        if modulus.last() != Some(&1)
            || modulus.iter().any(|&c| c >= p)
            || !is_irreducible(&modulus, p)
        {
            return Err(Error::BadModulus(modulus));
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER as u64 {
            return Err(Error::FieldTooLarge { p, m });
        }
        let q = q as usize;
        let polys: Vec<Vec<u32>> = (0..q).map(|i| poly_from_index(i, p, m as usize)).collect();
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = polys[a]
                    .iter()
                    .zip(&polys[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * q + b] = poly_to_index(&s, p) as Fe;
                let mut pa = polys[a].clone();
                poly_trim(&mut pa);
                let mut pb = polys[b].clone();
                poly_trim(&mut pb);
                let prod = poly_mulmod(&pa, &pb, &modulus, p);
                mul[a * q + b] = poly_to_index(&prod, p) as Fe;
            }
        }
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as Fe;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as Fe;
                }
            }
        }
        Ok(Arc::new(FieldSpec {
            p,
            m,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of elements.
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.q + self.neg[b as usize] as usize]
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// Row of the multiplication table: `mul_row(c)[x] == c * x`.
    #[inline]
    pub fn mul_row(&self, c: Fe) -> &[Fe] {
        let start = c as usize * self.q;
        &self.mul[start..start + self.q]
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut r = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(|x| x as Fe)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Fe {
        let order = self.q as u64 - 1;
        (1..self.q as Fe)
            .find(|&a| (1..order).all(|k| !order.is_multiple_of(k) || self.pow(a, k) != 1))
            .unwrap_or(1)
    }

    /// Embeds an integer via its residue mod `p`.
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.p as i64) as Fe
    }

    /// Parses a serialized element, rejecting out-of-range values.
    pub fn element(&self, n: u32) -> Result<Fe> {
        if (n as usize) < self.q {
            Ok(n as Fe)
        } else {
            Err(Error::Parse(format!(
                "field element {n} out of range for GF({})",
                self.q
            )))
        }
    }
}

/// Smallest `m` such that `GF(p^m)` contains the `e'`-th roots of unity,
/// where `e'` is the largest divisor of `e` prime to `p`.
pub fn splitting_degree(p: u32, mut e: u64) -> u32 {
    while e > 0 && e.is_multiple_of(p as u64) {
        e /= p as u64;
    }
    if e <= 1 {
        return 1;
    }
    let mut m = 1;
    let mut acc = p as u64 % e;
    while acc != 1 {
        acc = acc * p as u64 % e;
        m += 1;
    }
    m
}
