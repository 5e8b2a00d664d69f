//! Exact arithmetic in K = F_{p^m}: construction from an irreducible modulus,
//! subfields, Frobenius and trace maps, and the compositum field used to
//! evaluate parity checks with mixed alphabets.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::MatFp;

/// Element of F_{p^m} as coordinates in the power basis 1, t, ..., t^{m-1},
/// lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    pub coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn new(coeffs: Vec<u64>) -> Self {
        FieldElement { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    /// Comma-separated digits, lowest power first: `t^2 + t` in GF(16) is `0,1,1,0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        write!(f, "{}", strs.join(","))
    }
}

#[derive(Debug)]
struct LogTable {
    /// exp[k] = element index of g^k for the fixed primitive g, k in [0, q-1).
    exp: Vec<usize>,
    /// log[index(x)] = k with g^k = x; log[0] is unused.
    log: Vec<u64>,
}

/// A concrete presentation of F_{p^m}: the modulus pins the power basis and
/// every derived embedding, so all downstream output is deterministic.
#[derive(Debug)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    /// Monic irreducible of degree m, ascending coefficients, length m+1.
    modulus: Vec<u64>,
    primitive: FieldElement,
    log_table: OnceLock<LogTable>,
}

impl Clone for FieldSpec {
    fn clone(&self) -> Self {
        FieldSpec {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
            primitive: self.primitive.clone(),
            log_table: OnceLock::new(),
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

/// Build F_{p^m}. With `modulus = None` the lexicographically smallest monic
/// irreducible of degree m is selected (smallest when the coefficient vector
/// is read as a base-p integer), which makes every field deterministic.
pub fn make_field(p: u64, m: usize, modulus: Option<Vec<u64>>) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    assert!(m >= 1, "extension degree must be at least 1");
    let q = checked_order(p, m)?;
    let modulus = match modulus {
        Some(mo) => {
            if mo.len() != m + 1 || mo[m] != 1 || mo.iter().any(|&c| c >= p) {
                return Err(Error::FieldMismatch(format!(
                    "modulus must be monic of degree {m} with coefficients below {p}"
                )));
            }
            if let Some(degree) = reducible_witness(&mo, p) {
                return Err(Error::ReducibleModulus { p, degree });
            }
            mo
        }
        None => default_modulus(p, m),
    };
    let mut spec = FieldSpec {
        p,
        m,
        modulus,
        primitive: FieldElement::new(vec![0; m]),
        log_table: OnceLock::new(),
    };
    spec.primitive = spec.find_primitive(q);
    Ok(spec)
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of field elements p^m.
    pub fn order(&self) -> usize {
        (0..self.m).fold(1usize, |a, _| a * self.p as usize)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// A fixed generator of the multiplicative group (smallest by element index).
    pub fn primitive(&self) -> &FieldElement {
        &self.primitive
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::new(vec![0; self.m])
    }

    pub fn one(&self) -> FieldElement {
        self.element_from_index(1)
    }

    /// The class of x (the power-basis generator t). For m = 1 there is no t,
    /// so this falls back to the multiplicative generator.
    pub fn gen(&self) -> FieldElement {
        if self.m == 1 {
            self.primitive.clone()
        } else {
            self.element_from_index(self.p as usize)
        }
    }

    /// Canonical dense index: sum of coeffs[i] * p^i. Indexes run over 0..p^m.
    pub fn index_of(&self, x: &FieldElement) -> usize {
        let mut acc = 0usize;
        for &c in x.coeffs.iter().rev() {
            acc = acc * self.p as usize + c as usize;
        }
        acc
    }

    pub fn element_from_index(&self, mut idx: usize) -> FieldElement {
        let mut coeffs = vec![0u64; self.m];
        for c in coeffs.iter_mut() {
            *c = (idx % self.p as usize) as u64;
            idx /= self.p as usize;
        }
        debug_assert_eq!(idx, 0, "index out of range");
        FieldElement::new(coeffs)
    }

    /// All elements in index order. The additive group I is always walked in
    /// this fixed enumeration.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(|i| self.element_from_index(i))
    }

    /// Validate that an element belongs to this field's representation.
    pub fn check_element(&self, x: &FieldElement) -> Result<()> {
        if x.coeffs.len() != self.m || x.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldMismatch(format!(
                "expected {} coordinates below {}, got {:?}",
                self.m, self.p, x.coeffs
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement::new(coeffs)
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement::new(coeffs)
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    /// Scalar multiple by a residue mod p.
    pub fn smul(&self, c: u64, a: &FieldElement) -> FieldElement {
        let c = c % self.p;
        FieldElement::new(a.coeffs.iter().map(|&x| x * c % self.p).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if let Some(t) = self.table() {
            let (ia, ib) = (self.index_of(a), self.index_of(b));
            let n = t.exp.len() as u64;
            return self.element_from_index(t.exp[((t.log[ia] + t.log[ib]) % n) as usize]);
        }
        self.mul_direct(a, b)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if let Some(t) = self.table() {
            let n = t.exp.len() as u64;
            let k = t.log[self.index_of(a)];
            return Ok(self.element_from_index(t.exp[((n - k) % n) as usize]));
        }
        // a^(q-2); q fits u64 by construction.
        let q = self.order() as u64;
        Ok(self.pow(a, q - 2))
    }

    /// a^e with the convention 0^0 = 1.
    pub fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if a.is_zero() {
            return self.zero();
        }
        if let Some(t) = self.table() {
            let n = t.exp.len() as u64;
            let k = t.log[self.index_of(a)] as u128 * e as u128 % n as u128;
            return self.element_from_index(t.exp[k as usize]);
        }
        let mut base = a.clone();
        let mut e = e;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_direct(&acc, &base);
            }
            base = self.mul_direct(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// x^(p^j); j is taken mod m.
    pub fn frobenius(&self, x: &FieldElement, j: usize) -> FieldElement {
        let j = j % self.m;
        let mut y = x.clone();
        for _ in 0..j {
            y = self.pow(&y, self.p);
        }
        y
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: &FieldElement) -> u64 {
        assert!(!x.is_zero());
        let n = self.order() as u64 - 1;
        let mut best = n;
        for d in divisors_u64(n) {
            if self.pow(x, d) == self.one() && d < best {
                best = d;
            }
        }
        best
    }

    /// View of the subfield F_{p^d}; requires d | m.
    pub fn subfield(&self, d: usize) -> Result<Subfield<'_>> {
        if d == 0 || self.m % d != 0 {
            return Err(Error::NotADivisor { d, m: self.m });
        }
        let elements: Vec<FieldElement> = self
            .elements()
            .filter(|x| self.frobenius(x, d) == *x)
            .collect();
        debug_assert_eq!(elements.len(), (self.p as usize).pow(d as u32));
        Ok(Subfield { spec: self, d, elements })
    }

    /// The m x m matrix over F_p of y -> gamma * y in the power basis.
    /// Invertible exactly when gamma is nonzero.
    pub fn mul_matrix(&self, gamma: &FieldElement) -> MatFp {
        let cols: Vec<Vec<u64>> = (0..self.m)
            .map(|j| {
                let tj = self.element_from_index((self.p as usize).pow(j as u32));
                self.mul(gamma, &tj).coeffs
            })
            .collect();
        MatFp::from_columns(self.p, self.m, &cols)
    }

    /// The m x m matrix over F_p of x -> x^(p^j).
    pub fn frobenius_matrix(&self, j: usize) -> MatFp {
        let cols: Vec<Vec<u64>> = (0..self.m)
            .map(|i| {
                let ti = self.element_from_index((self.p as usize).pow(i as u32));
                self.frobenius(&ti, j).coeffs
            })
            .collect();
        MatFp::from_columns(self.p, self.m, &cols)
    }

    fn mul_direct(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let m = self.m;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce t^k = -(modulus lower part) * t^(k-m) for k >= m.
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..m {
                let sub = c * self.modulus[i] % self.p;
                prod[k - m + i] = (prod[k - m + i] + self.p - sub) % self.p;
            }
        }
        prod.truncate(m);
        FieldElement::new(prod)
    }

    fn table(&self) -> Option<&LogTable> {
        let q = self.order();
        if q > 1 << 16 {
            return None;
        }
        Some(self.log_table.get_or_init(|| {
            let mut exp = Vec::with_capacity(q - 1);
            let mut log = vec![0u64; q];
            let mut cur = self.one();
            for k in 0..q - 1 {
                let idx = self.index_of(&cur);
                exp.push(idx);
                log[idx] = k as u64;
                cur = self.mul_direct(&cur, &self.primitive);
            }
            LogTable { exp, log }
        }))
    }

    fn find_primitive(&self, q: u64) -> FieldElement {
        let target = q - 1;
        for idx in 1..q as usize {
            let x = self.element_from_index(idx);
            if self.mult_order_direct(&x, target) == target {
                return x;
            }
        }
        unreachable!("a finite field always has a multiplicative generator")
    }

    fn mult_order_direct(&self, x: &FieldElement, n: u64) -> u64 {
        // Table may not exist yet during construction; use direct powering.
        let mut best = n;
        for d in divisors_u64(n) {
            let mut acc = self.one();
            let mut base = x.clone();
            let mut e = d;
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.mul_direct(&acc, &base);
                }
                base = self.mul_direct(&base, &base);
                e >>= 1;
            }
            if acc == self.one() && d < best {
                best = d;
            }
        }
        best
    }
}

/// Subfield F_{p^d} of a fixed F_{p^m}, with membership and relative trace.
pub struct Subfield<'a> {
    spec: &'a FieldSpec,
    d: usize,
    elements: Vec<FieldElement>,
}

impl<'a> Subfield<'a> {
    pub fn degree(&self) -> usize {
        self.d
    }

    /// Fixed points of Frobenius^d, in index order; exactly p^d of them.
    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.spec.frobenius(x, self.d) == *x
    }

    /// Relative trace sum_{i < m/d} x^(p^(d*i)); always lands in F_{p^d}.
    pub fn trace_to(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.spec.zero();
        let mut cur = x.clone();
        for _ in 0..self.spec.m / self.d {
            acc = self.spec.add(&acc, &cur);
            cur = self.spec.frobenius(&cur, self.d);
        }
        debug_assert!(self.contains(&acc));
        acc
    }

    /// A generator of the subfield's multiplicative group (smallest by index).
    pub fn mult_generator(&self) -> FieldElement {
        let target = self.elements.len() as u64 - 1;
        self.elements
            .iter()
            .find(|x| !x.is_zero() && self.spec.mult_order(x) == target)
            .expect("subfield has a multiplicative generator")
            .clone()
    }
}

/// Fixed pair of embeddings of F = F_{p^r} and K = F_{p^m} into the
/// compositum L = F_{p^lcm(r,m)}. Both embeddings send the power-basis
/// generator to the lexicographically smallest root of its modulus in L,
/// so they are deterministic and commute with Frobenius.
pub struct Compositum {
    f: FieldSpec,
    k: FieldSpec,
    big: FieldSpec,
    embed_f: MatFp,
    embed_k: MatFp,
}

impl Compositum {
    pub fn new(f: &FieldSpec, k: &FieldSpec) -> Result<Compositum> {
        assert_eq!(f.p, k.p, "compositum requires equal characteristic");
        let p = f.p;
        let l = lcm(f.m, k.m);
        let big = if l == k.m {
            k.clone()
        } else if l == f.m {
            f.clone()
        } else {
            make_field(p, l, None)?
        };
        checked_order(p, l)?;
        let embed_f = embedding_matrix(f, &big);
        let embed_k = embedding_matrix(k, &big);
        Ok(Compositum { f: f.clone(), k: k.clone(), big, embed_f, embed_k })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.big
    }

    /// Embed an element of F.
    pub fn embed_f(&self, x: &FieldElement) -> FieldElement {
        debug_assert!(self.f.check_element(x).is_ok());
        FieldElement::new(self.embed_f.matvec(&x.coeffs))
    }

    /// Embed an element of K.
    pub fn embed_k(&self, x: &FieldElement) -> FieldElement {
        debug_assert!(self.k.check_element(x).is_ok());
        FieldElement::new(self.embed_k.matvec(&x.coeffs))
    }
}

/// F_p-matrix of the ring embedding `small -> big` sending the power-basis
/// generator of `small` to the lexicographically smallest root of `small`'s
/// modulus inside `big`.
fn embedding_matrix(small: &FieldSpec, big: &FieldSpec) -> MatFp {
    if small == big {
        return MatFp::identity(big.p, big.m);
    }
    let root = big
        .elements()
        .find(|z| eval_poly(big, &small.modulus, z).is_zero())
        .expect("big field contains a root of every subfield modulus");
    let cols: Vec<Vec<u64>> = (0..small.m)
        .map(|i| big.pow(&root, i as u64).coeffs)
        .collect();
    MatFp::from_columns(big.p, big.m, &cols)
}

fn eval_poly(spec: &FieldSpec, coeffs: &[u64], z: &FieldElement) -> FieldElement {
    let mut acc = spec.zero();
    for &c in coeffs.iter().rev() {
        acc = spec.mul(&acc, z);
        let mut cur = spec.zero();
        cur.coeffs[0] = c % spec.p;
        acc = spec.add(&acc, &cur);
    }
    acc
}

/// Lexicographically smallest monic irreducible of degree m over F_p, where
/// candidates are ordered by their lower-coefficient vector read as a base-p
/// integer (so x^4+x+1 precedes x^4+x^3+1).
fn default_modulus(p: u64, m: usize) -> Vec<u64> {
    let total = (p as usize).checked_pow(m as u32).expect("field too large");
    for k in 0..total {
        let mut poly = vec![0u64; m + 1];
        let mut rest = k;
        for c in poly.iter_mut().take(m) {
            *c = (rest % p as usize) as u64;
            rest /= p as usize;
        }
        poly[m] = 1;
        if reducible_witness(&poly, p).is_none() {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by all monic polynomials of degree up to deg/2.
/// Returns the degree of some proper factor, or None when irreducible.
fn reducible_witness(poly: &[u64], p: u64) -> Option<usize> {
    let deg = poly.len() - 1;
    if deg == 0 {
        return Some(0);
    }
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for k in 0..count {
            let mut div = vec![0u64; d + 1];
            let mut rest = k;
            for c in div.iter_mut().take(d) {
                *c = (rest % p as usize) as u64;
                rest /= p as usize;
            }
            div[d] = 1;
            if poly_rem(poly, &div, p).is_empty() {
                return Some(d);
            }
        }
    }
    None
}

/// Remainder of a mod b over F_p; empty vector means exact division.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let mut r: Vec<u64> = a.to_vec();
    while r.len() > db {
        let lead = *r.last().unwrap() % p;
        if lead != 0 {
            let shift = r.len() - 1 - db;
            let scale = lead * crate::linalg::inv_mod(b[db], p) % p;
            for i in 0..=db {
                r[shift + i] = (r[shift + i] + p - scale * b[i] % p) % p;
            }
        }
        r.pop();
    }
    while let Some(&0) = r.last() {
        r.pop();
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn divisors_u64(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Divisors of m in increasing order.
pub fn divisors(m: usize) -> Vec<usize> {
    divisors_u64(m as u64).into_iter().map(|d| d as usize).collect()
}

fn checked_order(p: u64, m: usize) -> Result<u64> {
    let size = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if size > 1 << 48 {
        return Err(Error::TooLarge { size, limit: 1 << 48 });
    }
    Ok(size as u64)
}
