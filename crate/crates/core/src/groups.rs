//! Concrete finite groups as multiplication tables, isomorphism-
//! discriminating fingerprints, and symbolic descriptors for the group
//! families arising from chi/f structures.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_prime, make_field, FieldSpec};
use crate::perm::Permutation;

pub const TABLE_LIMIT: usize = 4096;
/// Associativity is verified exhaustively up to this order.
const VERIFY_LIMIT: usize = 256;

/// A finite group given by its multiplication table on 0..n.
#[derive(Debug, Clone)]
pub struct GroupTable {
    n: usize,
    mul: Vec<u32>,
    identity: usize,
}

impl GroupTable {
    /// Build from a multiplication function, validating the group axioms
    /// (associativity exhaustively for order <= 256).
    pub fn from_mul_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<GroupTable> {
        if n == 0 || n > TABLE_LIMIT {
            return Err(Error::MalformedDescriptor(format!("order {n} out of range")));
        }
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                if v >= n {
                    return Err(Error::MalformedDescriptor("product out of range".into()));
                }
                mul[i * n + j] = v as u32;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| mul[e * n + i] == i as u32 && mul[i * n + e] == i as u32))
            .ok_or_else(|| Error::MalformedDescriptor("no identity element".into()))?;
        for i in 0..n {
            let has_inverse = (0..n).any(|j| mul[i * n + j] as usize == identity);
            let row: HashSet<u32> = (0..n).map(|j| mul[i * n + j]).collect();
            if !has_inverse || row.len() != n {
                return Err(Error::MalformedDescriptor(format!("element {i} has no inverse")));
            }
        }
        if n <= VERIFY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul[a * n + b] as usize;
                    for c in 0..n {
                        let bc = mul[b * n + c] as usize;
                        if mul[ab * n + c] != mul[a * n + bc] {
                            return Err(Error::MalformedDescriptor(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(GroupTable { n, mul, identity })
    }

    /// Table of a permutation group given by its full element list.
    pub fn from_permutations(perms: &[Permutation]) -> Result<GroupTable> {
        let mut sorted = perms.to_vec();
        sorted.sort();
        sorted.dedup();
        let index: HashMap<&Permutation, usize> =
            sorted.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = sorted.len();
        let mut mul = vec![0u32; n * n];
        for (i, a) in sorted.iter().enumerate() {
            for (j, b) in sorted.iter().enumerate() {
                let c = a.compose(b);
                let Some(&k) = index.get(&c) else {
                    return Err(Error::MalformedDescriptor(
                        "permutation set is not closed under composition".into(),
                    ));
                };
                mul[i * n + j] = k as u32;
            }
        }
        let identity = sorted
            .iter()
            .position(Permutation::is_identity)
            .ok_or_else(|| Error::MalformedDescriptor("missing identity permutation".into()))?;
        Ok(GroupTable { n, mul, identity })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.mul(a, b) == self.identity).unwrap()
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut cur = a;
        let mut ord = 1u64;
        while cur != self.identity {
            cur = self.mul(cur, a);
            ord += 1;
        }
        ord
    }

    pub fn center_order(&self) -> usize {
        (0..self.n)
            .filter(|&x| (0..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
            .count()
    }

    /// Order of the derived subgroup (closure of all commutators).
    pub fn derived_order(&self) -> usize {
        let mut set: HashSet<usize> = HashSet::new();
        set.insert(self.identity);
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.mul(
                    self.mul(self.inverse(a), self.inverse(b)),
                    self.mul(a, b),
                );
                set.insert(c);
            }
        }
        // Close under multiplication.
        loop {
            let snapshot: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &x in &snapshot {
                for &y in &snapshot {
                    set.insert(self.mul(x, y));
                }
            }
            if set.len() == before {
                break;
            }
        }
        set.len()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn direct_product(&self, other: &GroupTable) -> Result<GroupTable> {
        let (n1, n2) = (self.n, other.n);
        GroupTable::from_mul_fn(n1 * n2, |x, y| {
            let (a1, a2) = (x % n1, x / n1);
            let (b1, b2) = (y % n1, y / n1);
            self.mul(a1, b1) + other.mul(a2, b2) * n1
        })
    }

    pub fn cyclic(k: usize) -> Result<GroupTable> {
        if k == 0 {
            return Err(Error::MalformedDescriptor("cyclic group of order 0".into()));
        }
        GroupTable::from_mul_fn(k, |a, b| (a + b) % k)
    }
}

/// Isomorphism-discriminating invariants. For abelian groups the Smith
/// invariant factors pin the isomorphism type exactly; for the small
/// nonabelian groups arising here the histogram and center separate them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub order: u64,
    pub abelian: bool,
    pub exponent: u64,
    pub center_order: u64,
    pub derived_order: u64,
    /// (element order, multiplicity) pairs, sorted by order.
    pub order_histogram: Vec<(u64, u64)>,
    /// Invariant factors d_1 | d_2 | ... when abelian.
    pub abelian_invariants: Option<Vec<u64>>,
}

pub fn fingerprint(table: &GroupTable) -> GroupFingerprint {
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    let mut exponent = 1u64;
    for x in 0..table.order() {
        let ord = table.element_order(x);
        *histogram.entry(ord).or_insert(0) += 1;
        exponent = lcm_u64(exponent, ord);
    }
    let abelian = table.is_abelian();
    let abelian_invariants = abelian.then(|| smith_invariants(table, &histogram));
    GroupFingerprint {
        order: table.order() as u64,
        abelian,
        exponent,
        center_order: table.center_order() as u64,
        derived_order: table.derived_order() as u64,
        order_histogram: histogram.into_iter().collect(),
        abelian_invariants,
    }
}

/// Invariant factors of an abelian group from its order-divisibility counts:
/// per prime, the counts of solutions of x^(P^k) = 1 determine the conjugate
/// of the type partition.
fn smith_invariants(table: &GroupTable, _histogram: &BTreeMap<u64, u64>) -> Vec<u64> {
    let n = table.order() as u64;
    let mut partitions: Vec<Vec<u32>> = Vec::new(); // per prime, descending partition
    let mut primes = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while rest > 1 {
        if rest % p == 0 {
            primes.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    for &prime in &primes {
        // c_k = log_prime #{x : x^(prime^k) = 1}; lambda'_k = c_k - c_{k-1}.
        let mut conj: Vec<u32> = Vec::new();
        let mut prev = 0u32;
        let mut k = 1u32;
        loop {
            let pk = prime.pow(k);
            let count = (0..table.order())
                .filter(|&x| {
                    let mut cur = table.identity();
                    for _ in 0..pk {
                        cur = table.mul(cur, x);
                    }
                    cur == table.identity()
                })
                .count() as u64;
            let c = count.trailing_zeros_in_base(prime);
            if c == prev {
                break;
            }
            conj.push(c - prev);
            prev = c;
            k += 1;
        }
        // Conjugate partition: lambda_j = #{k : conj_k >= j}.
        let max = conj.first().copied().unwrap_or(0);
        let partition: Vec<u32> = (1..=max)
            .map(|j| conj.iter().filter(|&&c| c >= j).count() as u32)
            .collect();
        partitions.push(partition);
    }
    // Align largest-with-largest across primes to get d_1 | d_2 | ...
    let factors = partitions.iter().map(Vec::len).max().unwrap_or(0);
    let mut divisors = Vec::new();
    for i in 0..factors {
        let mut d = 1u64;
        for (pi, partition) in partitions.iter().enumerate() {
            if i < partition.len() {
                d *= primes[pi].pow(partition[i]);
            }
        }
        divisors.push(d);
    }
    divisors.reverse(); // ascending, each dividing the next
    divisors
}

trait TrailingZerosInBase {
    fn trailing_zeros_in_base(self, base: u64) -> u32;
}

impl TrailingZerosInBase for u64 {
    fn trailing_zeros_in_base(self, base: u64) -> u32 {
        let mut v = self;
        let mut k = 0;
        while v > 1 && v % base == 0 {
            v /= base;
            k += 1;
        }
        debug_assert_eq!(v, 1, "count must be a power of the prime");
        k
    }
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Symbolic group expression over the families arising from chi/f pairs.
///
/// `VxVScalar { q, dim }` is (F_q^dim x F_q^dim) acted on by F_q through
/// scalar shears u(v, w) = (v - u w, w). `Fa { q }` is the pair group
/// (F_q)_1 with product (x1,y1)(x2,y2) = (x1 + x2 - y1 y2, y1 + y2), and
/// `VxVFa` replaces the scalar group by it, acting through the second
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupDescriptor {
    Product(Vec<GroupDescriptor>),
    Cyclic(Vec<u64>),
    #[serde(rename = "vxv_scalar")]
    VxVScalar { q: u64, dim: usize },
    #[serde(rename = "vxv_fa")]
    VxVFa { q: u64, dim: usize },
    Fa { q: u64 },
}

impl GroupDescriptor {
    pub fn expand(&self) -> Result<GroupTable> {
        match self {
            GroupDescriptor::Product(parts) => {
                let mut acc = GroupTable::cyclic(1)?;
                for part in parts {
                    acc = acc.direct_product(&part.expand()?)?;
                }
                Ok(acc)
            }
            GroupDescriptor::Cyclic(orders) => {
                let mut acc = GroupTable::cyclic(1)?;
                for &k in orders {
                    acc = acc.direct_product(&GroupTable::cyclic(k as usize)?)?;
                }
                Ok(acc)
            }
            GroupDescriptor::VxVScalar { q, dim } => {
                let f = field_of_order(*q)?;
                let fq = FqVec::new(&f, *dim);
                let qd = fq.count();
                let qs = f.order();
                GroupTable::from_mul_fn(qd * qd * qs, |x, y| {
                    let (v1, w1, s1) = split3(x, qd, qd);
                    let (v2, w2, s2) = split3(y, qd, qd);
                    let v = fq.add(v1, fq.sub(v2, fq.scale(s1, w2)));
                    let w = fq.add(w1, w2);
                    let s = f.index_of(&f.add(
                        &f.element_from_index(s1),
                        &f.element_from_index(s2),
                    ));
                    join3(v, w, s, qd, qd)
                })
            }
            GroupDescriptor::VxVFa { q, dim } => {
                let f = field_of_order(*q)?;
                let fq = FqVec::new(&f, *dim);
                let qd = fq.count();
                let qs = f.order();
                // Elements ((u, v), (x, y)); (x, y) acts through y.
                GroupTable::from_mul_fn(qd * qd * qs * qs, |e1, e2| {
                    let (u1, v1, xy1) = split3(e1, qd, qd);
                    let (u2, v2, xy2) = split3(e2, qd, qd);
                    let (x1, y1) = (xy1 % qs, xy1 / qs);
                    let (x2, y2) = (xy2 % qs, xy2 / qs);
                    let u = fq.add(u1, fq.sub(u2, fq.scale(y1, v2)));
                    let v = fq.add(v1, v2);
                    let (x, y) = fa_mul(&f, (x1, y1), (x2, y2));
                    join3(u, v, x + y * qs, qd, qd)
                })
            }
            GroupDescriptor::Fa { q } => {
                let f = field_of_order(*q)?;
                let qs = f.order();
                GroupTable::from_mul_fn(qs * qs, |e1, e2| {
                    let (x, y) = fa_mul(&f, (e1 % qs, e1 / qs), (e2 % qs, e2 / qs));
                    x + y * qs
                })
            }
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Product(parts) => {
                let strs: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(out, "{}", strs.join(" x "))
            }
            GroupDescriptor::Cyclic(orders) => {
                if orders.is_empty() {
                    return write!(out, "1");
                }
                let strs: Vec<String> = orders.iter().map(|k| format!("C{k}")).collect();
                write!(out, "{}", strs.join(" x "))
            }
            GroupDescriptor::VxVScalar { q, dim } => {
                write!(out, "(F{q}^{dim} x F{q}^{dim}) : F{q}")
            }
            GroupDescriptor::VxVFa { q, dim } => {
                write!(out, "(F{q}^{dim} x F{q}^{dim}) : (F{q})_1")
            }
            GroupDescriptor::Fa { q } => write!(out, "(F{q})_1"),
        }
    }
}

/// Product in (F_q)_1: (x1,y1)(x2,y2) = (x1 + x2 - y1 y2, y1 + y2).
fn fa_mul(f: &FieldSpec, a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
    let (x1, y1) = (f.element_from_index(a.0), f.element_from_index(a.1));
    let (x2, y2) = (f.element_from_index(b.0), f.element_from_index(b.1));
    let x = f.sub(&f.add(&x1, &x2), &f.mul(&y1, &y2));
    let y = f.add(&y1, &y2);
    (f.index_of(&x), f.index_of(&y))
}

/// Vectors over F_q of a fixed dimension, indexed in mixed radix.
struct FqVec<'a> {
    f: &'a FieldSpec,
    q: usize,
    dim: usize,
}

impl<'a> FqVec<'a> {
    fn new(f: &'a FieldSpec, dim: usize) -> FqVec<'a> {
        FqVec { f, q: f.order(), dim }
    }

    fn count(&self) -> usize {
        self.q.pow(self.dim as u32)
    }

    fn decode(&self, mut idx: usize) -> Vec<usize> {
        (0..self.dim)
            .map(|_| {
                let d = idx % self.q;
                idx /= self.q;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().rev().fold(0, |acc, &d| acc * self.q + d)
    }

    fn zip_op(&self, a: usize, b: usize, subtract: bool) -> usize {
        let (da, db) = (self.decode(a), self.decode(b));
        let digits: Vec<usize> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| {
                let (xe, ye) = (self.f.element_from_index(x), self.f.element_from_index(y));
                let r = if subtract { self.f.sub(&xe, &ye) } else { self.f.add(&xe, &ye) };
                self.f.index_of(&r)
            })
            .collect();
        self.encode(&digits)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.zip_op(a, b, false)
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        self.zip_op(a, b, true)
    }

    fn scale(&self, s: usize, a: usize) -> usize {
        let se = self.f.element_from_index(s);
        let digits: Vec<usize> = self
            .decode(a)
            .iter()
            .map(|&x| self.f.index_of(&self.f.mul(&se, &self.f.element_from_index(x))))
            .collect();
        self.encode(&digits)
    }
}

fn field_of_order(q: u64) -> Result<FieldSpec> {
    let mut p = 2u64;
    while p <= q {
        if q % p == 0 {
            let mut a = 0usize;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                a += 1;
            }
            if rest != 1 {
                return Err(Error::MalformedDescriptor(format!("{q} is not a prime power")));
            }
            debug_assert!(is_prime(p));
            return make_field(p, a, None);
        }
        p += 1;
    }
    Err(Error::MalformedDescriptor(format!("{q} is not a prime power")))
}

fn split3(x: usize, n1: usize, n2: usize) -> (usize, usize, usize) {
    (x % n1, x / n1 % n2, x / (n1 * n2))
}

fn join3(a: usize, b: usize, c: usize, n1: usize, n2: usize) -> usize {
    a + b * n1 + c * n1 * n2
}
