//! p-adic expansions, the digitwise partial order, q-cyclotomic classes
//! modulo p^m - 1, and the invariant b of a defining set.

use crate::error::{Error, Result};
use crate::field::{divisors, gcd};

/// Base-p digits of a non-negative integer, least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicExpansion {
    pub digits: Vec<u64>,
    pub base: u64,
}

impl PadicExpansion {
    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.base + d)
    }
}

/// Minimal-length expansion; x = 0 yields the single digit 0.
pub fn padic_expansion(x: u64, p: u64) -> PadicExpansion {
    assert!(p >= 2);
    let mut digits = Vec::new();
    let mut rest = x;
    loop {
        digits.push(rest % p);
        rest /= p;
        if rest == 0 {
            break;
        }
    }
    PadicExpansion { digits, base: p }
}

/// Digitwise order: s precedes t when every base-p digit of s is at most the
/// corresponding digit of t.
pub fn preceq(s: u64, t: u64, p: u64) -> bool {
    let (mut s, mut t) = (s, t);
    while s > 0 {
        if s % p > t % p {
            return false;
        }
        s /= p;
        t /= p;
    }
    true
}

/// Orbit of a residue under multiplication by q modulo n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicClass {
    /// Sorted orbit; its minimum is the class representative.
    pub members: Vec<u64>,
    pub multiplier: u64,
}

pub fn cyclotomic_class(i: u64, q: u64, n: u64) -> Result<CyclotomicClass> {
    assert!(n >= 1 && i < n);
    if gcd(q as usize, n as usize) != 1 {
        return Err(Error::NonCoprimeMultiplier { q, n });
    }
    let q = q % n;
    let mut members = vec![i];
    let mut cur = i * q % n;
    while cur != i {
        members.push(cur);
        cur = cur * q % n;
    }
    members.sort_unstable();
    Ok(CyclotomicClass { members, multiplier: q })
}

/// All q-cyclotomic classes of residues mod n, ordered by representative.
pub fn all_classes(q: u64, n: u64) -> Result<Vec<CyclotomicClass>> {
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for i in 0..n {
        if !seen[i as usize] {
            let class = cyclotomic_class(i, q, n)?;
            for &x in &class.members {
                seen[x as usize] = true;
            }
            out.push(class);
        }
    }
    Ok(out)
}

/// Whether D with the value n removed is closed under multiplication by q
/// mod n. The value n itself (p^m - 1 in context) is a flag outside the
/// modulus range and never participates.
pub fn is_union_of_classes(d: &[u64], q: u64, n: u64) -> bool {
    debug_assert!(d.iter().all(|&x| x <= n));
    let set: std::collections::BTreeSet<u64> = d.iter().copied().filter(|&x| x < n).collect();
    let q = q % n.max(1);
    set.iter().all(|&x| set.contains(&(x * q % n.max(1))))
}

/// Least d >= 1 such that D minus the flag value is a union of p^d-cyclotomic
/// classes mod p^m - 1. Only divisors of m need testing: the set of working
/// exponents is closed under addition, hence of the form d0 * Z with d0 | m.
pub fn minimal_b(d_set: &[u64], p: u64, m: usize) -> usize {
    let n = (p as u64).pow(m as u32) - 1;
    for d in divisors(m) {
        let q = pow_mod(p, d as u64, n.max(1));
        if is_union_of_classes(d_set, q, n) {
            return d;
        }
    }
    m
}

pub fn pow_mod(base: u64, e: u64, n: u64) -> u64 {
    if n <= 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    let mut b: u128 = (base % n) as u128;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % n as u128;
        }
        b = b * b % n as u128;
        e >>= 1;
    }
    acc as u64
}
