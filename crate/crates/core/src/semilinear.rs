//! Additive and semilinear maps on K, the group of tau-semilinear
//! bijections, the homomorphism onto the Galois group, the invariants a and b
//! of a code, and invariance checks for affine-semilinear permutations.

use std::collections::HashSet;

use serde::Serialize;

use crate::code::AffineInvariantCode;
use crate::cyclotomic::minimal_b;
use crate::error::{Error, Result};
use crate::field::{divisors, FieldElement, FieldSpec};
use crate::linalg::MatFp;
use crate::perm::Permutation;

/// F_p-linear (additive) map on K, as its m x m matrix in the power basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdditiveMap {
    pub mat: MatFp,
}

impl AdditiveMap {
    pub fn identity(spec: &FieldSpec) -> Self {
        AdditiveMap { mat: MatFp::identity(spec.p(), spec.m()) }
    }

    pub fn zero(spec: &FieldSpec) -> Self {
        AdditiveMap { mat: MatFp::zero(spec.p(), spec.m(), spec.m()) }
    }

    /// Multiplication by gamma; invertible exactly when gamma is nonzero.
    pub fn mul_by(spec: &FieldSpec, gamma: &FieldElement) -> Self {
        AdditiveMap { mat: spec.mul_matrix(gamma) }
    }

    /// x -> x^(p^j).
    pub fn frobenius(spec: &FieldSpec, j: usize) -> Self {
        AdditiveMap { mat: spec.frobenius_matrix(j) }
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        FieldElement::new(self.mat.matvec(&x.coeffs))
    }

    pub fn apply_index(&self, spec: &FieldSpec, idx: usize) -> usize {
        spec.index_of(&self.apply(&spec.element_from_index(idx)))
    }

    /// self after other.
    pub fn compose(&self, other: &AdditiveMap) -> AdditiveMap {
        AdditiveMap { mat: self.mat.matmul(&other.mat) }
    }

    pub fn add(&self, other: &AdditiveMap) -> AdditiveMap {
        AdditiveMap { mat: self.mat.add(&other.mat) }
    }

    pub fn sub(&self, other: &AdditiveMap) -> AdditiveMap {
        AdditiveMap { mat: self.mat.sub(&other.mat) }
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.mat.rank() == self.mat.rows
    }

    pub fn inverse(&self) -> Option<AdditiveMap> {
        self.mat.inverse().map(|mat| AdditiveMap { mat })
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn is_identity(&self, spec: &FieldSpec) -> bool {
        self.mat == MatFp::identity(spec.p(), spec.m())
    }

    /// The coordinate permutation x -> self(x); requires invertibility.
    pub fn permutation(&self, spec: &FieldSpec) -> Permutation {
        debug_assert!(self.is_invertible());
        let images = (0..spec.order())
            .map(|i| self.apply_index(spec, i) as u16)
            .collect();
        Permutation::from_images(images)
    }

    /// Row-major matrix entries, for serialization.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.mat.rows).map(|i| self.mat.row(i).to_vec()).collect()
    }
}

/// Whether f commutes with multiplication by every F_{p^d}-scalar. Checking
/// the multiplicative generator suffices: the other scalars are its powers
/// and zero.
pub fn is_d_linear(spec: &FieldSpec, f: &AdditiveMap, d: usize) -> Result<bool> {
    if d == 0 || spec.m() % d != 0 {
        return Err(Error::NotADivisor { d, m: spec.m() });
    }
    let gen = spec.subfield(d)?.mult_generator();
    let mul = spec.mul_matrix(&gen);
    Ok(f.mat.matmul(&mul) == mul.matmul(&f.mat))
}

/// The unique tau in Gal(F_{p^a}/F_{p^b}) making f tau-semilinear, as the
/// exponent j with tau = Frobenius^(b j), or None when f is not a member of
/// the semilinear group for (a, b). This is the homomorphism T; its kernel
/// (tag 0) is exactly the F_{p^a}-linear group.
pub fn semilinear_tag(
    spec: &FieldSpec,
    f: &AdditiveMap,
    a: usize,
    b: usize,
) -> Result<Option<usize>> {
    let m = spec.m();
    if b == 0 || a % b != 0 {
        return Err(Error::NotADivisor { d: b, m: a });
    }
    if a == 0 || m % a != 0 {
        return Err(Error::NotADivisor { d: a, m });
    }
    if !f.is_invertible() {
        return Err(Error::SingularMap);
    }
    if !is_d_linear(spec, f, b)? {
        return Ok(None);
    }
    let gen_a = spec.subfield(a)?.mult_generator();
    let mul_gen = spec.mul_matrix(&gen_a);
    for j in 0..a / b {
        let tau_gen = spec.frobenius(&gen_a, b * j);
        let mul_tau = spec.mul_matrix(&tau_gen);
        // f(gamma x) = tau(gamma) f(x) on a generator decides all scalars.
        if f.mat.matmul(&mul_gen) == mul_tau.matmul(&f.mat) {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Validated member of the semilinear group for a fixed (a, b): an invertible
/// F_{p^b}-linear map together with its Galois tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemilinearElement {
    pub map: AdditiveMap,
    pub tau_exp: usize,
}

/// The group of tau-semilinear bijections of K for tau ranging over
/// Gal(F_{p^a}/F_{p^b}); context object for building and composing elements.
#[derive(Debug, Clone)]
pub struct Gab<'a> {
    pub spec: &'a FieldSpec,
    pub a: usize,
    pub b: usize,
}

impl<'a> Gab<'a> {
    pub fn new(spec: &'a FieldSpec, a: usize, b: usize) -> Result<Self> {
        let m = spec.m();
        if a == 0 || m % a != 0 {
            return Err(Error::NotADivisor { d: a, m });
        }
        if b == 0 || a % b != 0 {
            return Err(Error::NotADivisor { d: b, m: a });
        }
        Ok(Gab { spec, a, b })
    }

    /// Validate membership and attach the Galois tag.
    pub fn element(&self, map: AdditiveMap) -> Result<SemilinearElement> {
        match semilinear_tag(self.spec, &map, self.a, self.b)? {
            Some(tau_exp) => Ok(SemilinearElement { map, tau_exp }),
            None => Err(Error::NotSemilinear),
        }
    }

    pub fn identity(&self) -> SemilinearElement {
        SemilinearElement { map: AdditiveMap::identity(self.spec), tau_exp: 0 }
    }

    pub fn compose(&self, f: &SemilinearElement, g: &SemilinearElement) -> SemilinearElement {
        SemilinearElement {
            map: f.map.compose(&g.map),
            tau_exp: (f.tau_exp + g.tau_exp) % (self.a / self.b),
        }
    }

    pub fn inverse(&self, f: &SemilinearElement) -> SemilinearElement {
        let k = self.a / self.b;
        SemilinearElement {
            map: f.map.inverse().expect("group elements are invertible"),
            tau_exp: (k - f.tau_exp % k) % k,
        }
    }

    pub fn order(&self) -> u128 {
        let np = (self.spec.m() / self.a) as u32;
        let qa = (self.spec.p() as u128).pow(self.a as u32);
        gl_order(np as usize, qa).expect("desk-scale order fits u128") * (self.a / self.b) as u128
    }

    /// Every member, by filtering all invertible additive maps. Exhaustive
    /// and only sensible at desk scale (p^(m^2) matrix candidates).
    pub fn elements_exhaustive(&self) -> Vec<SemilinearElement> {
        let (p, m) = (self.spec.p(), self.spec.m());
        let total = (p as u128).pow((m * m) as u32);
        assert!(total <= 1 << 20, "exhaustive semilinear enumeration is desk scale only");
        let mut out = Vec::new();
        for code in 0..total {
            let mut rest = code;
            let mut mat = MatFp::zero(p, m, m);
            for i in 0..m {
                for j in 0..m {
                    mat.set(i, j, (rest % p as u128) as u64);
                    rest /= p as u128;
                }
            }
            let map = AdditiveMap { mat };
            if !map.is_invertible() {
                continue;
            }
            if let Some(tau_exp) = semilinear_tag(self.spec, &map, self.a, self.b).unwrap() {
                out.push(SemilinearElement { map, tau_exp });
            }
        }
        out
    }
}

/// Element of the affine-semilinear group: x -> part(x) + translation.
/// Products follow the semidirect rule (n1, g1)(n2, g2) = (n1 + g1(n2), g1 g2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineElement {
    pub translation: FieldElement,
    pub part: SemilinearElement,
}

impl AffineElement {
    pub fn apply(&self, spec: &FieldSpec, x: &FieldElement) -> FieldElement {
        spec.add(&self.part.map.apply(x), &self.translation)
    }

    pub fn compose(&self, gab: &Gab<'_>, other: &AffineElement) -> AffineElement {
        AffineElement {
            translation: gab
                .spec
                .add(&self.translation, &self.part.map.apply(&other.translation)),
            part: gab.compose(&self.part, &other.part),
        }
    }

    pub fn inverse(&self, gab: &Gab<'_>) -> AffineElement {
        let part = gab.inverse(&self.part);
        let translation = gab.spec.neg(&part.map.apply(&self.translation));
        AffineElement { translation, part }
    }

    pub fn permutation(&self, spec: &FieldSpec) -> Permutation {
        let images = (0..spec.order())
            .map(|i| spec.index_of(&self.apply(spec, &spec.element_from_index(i))) as u16)
            .collect();
        Permutation::from_images(images)
    }
}

/// Generators of GL(K over F_{p^d}) as m x m matrices over F_p. For a
/// one-dimensional extension this is multiplication by a primitive element;
/// otherwise a basis n-cycle, one elementary transvection and one diagonal
/// scaling by a subfield generator.
pub fn gl_generators(spec: &FieldSpec, d: usize) -> Result<Vec<AdditiveMap>> {
    let m = spec.m();
    if d == 0 || m % d != 0 {
        return Err(Error::NotADivisor { d, m });
    }
    let np = m / d;
    if np == 1 {
        return Ok(vec![AdditiveMap::mul_by(spec, spec.primitive())]);
    }
    let e_basis = canonical_d_basis(spec, d)?;
    let omega = spec.subfield(d)?.mult_generator();

    let cycle: Vec<FieldElement> = (0..np).map(|i| e_basis[(i + 1) % np].clone()).collect();
    let mut transvection: Vec<FieldElement> = e_basis.clone();
    transvection[1] = spec.add(&e_basis[1], &e_basis[0]);
    let mut diag: Vec<FieldElement> = e_basis.clone();
    diag[0] = spec.mul(&omega, &e_basis[0]);

    let mut gens = vec![
        d_linear_from_images(spec, d, &e_basis, &cycle),
        d_linear_from_images(spec, d, &e_basis, &transvection),
    ];
    if omega != spec.one() {
        gens.push(d_linear_from_images(spec, d, &e_basis, &diag));
    }
    Ok(gens)
}

/// Deterministic F_{p^d}-basis of K, chosen greedily over the canonical
/// element enumeration.
pub fn canonical_d_basis(spec: &FieldSpec, d: usize) -> Result<Vec<FieldElement>> {
    let m = spec.m();
    if d == 0 || m % d != 0 {
        return Err(Error::NotADivisor { d, m });
    }
    let np = m / d;
    let sub = spec.subfield(d)?;
    let sub_basis = greedy_fp_basis(spec, sub.elements());
    let mut e_basis: Vec<FieldElement> = Vec::new();
    for x in spec.elements().skip(1) {
        let mut products: Vec<Vec<u64>> = Vec::new();
        for e in e_basis.iter().chain(std::iter::once(&x)) {
            for s in &sub_basis {
                products.push(spec.mul(e, s).coeffs.clone());
            }
        }
        let rank = MatFp::from_columns(spec.p(), m, &products).rank();
        if rank == (e_basis.len() + 1) * d {
            e_basis.push(x);
            if e_basis.len() == np {
                break;
            }
        }
    }
    assert_eq!(e_basis.len(), np);
    Ok(e_basis)
}

/// The F_{p^d}-linear map sending a given F_{p^d}-basis of K to the given
/// images, as its F_p-matrix in the power basis.
pub fn d_linear_from_images(
    spec: &FieldSpec,
    d: usize,
    basis: &[FieldElement],
    images: &[FieldElement],
) -> AdditiveMap {
    assert_eq!(basis.len(), images.len());
    assert_eq!(basis.len() * d, spec.m());
    let sub = spec.subfield(d).expect("d divides m");
    let sub_basis = greedy_fp_basis(spec, sub.elements());
    let mut cols_basis = Vec::new();
    let mut cols_image = Vec::new();
    for (e, im) in basis.iter().zip(images) {
        for s in &sub_basis {
            cols_basis.push(spec.mul(e, s).coeffs.clone());
            cols_image.push(spec.mul(im, s).coeffs.clone());
        }
    }
    let basis_mat = MatFp::from_columns(spec.p(), spec.m(), &cols_basis);
    let image_mat = MatFp::from_columns(spec.p(), spec.m(), &cols_image);
    let inv = basis_mat.inverse().expect("basis matrix is invertible");
    AdditiveMap { mat: image_mat.matmul(&inv) }
}

/// Greedy F_p-basis of a set of elements, in enumeration order.
pub fn greedy_fp_basis(spec: &FieldSpec, elements: &[FieldElement]) -> Vec<FieldElement> {
    let mut basis: Vec<FieldElement> = Vec::new();
    for x in elements {
        if x.is_zero() {
            continue;
        }
        let mut cols: Vec<Vec<u64>> = basis.iter().map(|v| v.coeffs.clone()).collect();
        cols.push(x.coeffs.clone());
        if MatFp::from_columns(spec.p(), spec.m(), &cols).rank() == basis.len() + 1 {
            basis.push(x.clone());
        }
    }
    basis
}

/// Multiplicative closure of a generating set of invertible maps.
pub fn closure(gens: &[AdditiveMap]) -> Vec<AdditiveMap> {
    let mut seen: HashSet<AdditiveMap> = HashSet::new();
    let mut queue: Vec<AdditiveMap> = Vec::new();
    if let Some(first) = gens.first() {
        let id = AdditiveMap { mat: MatFp::identity(first.mat.p, first.mat.rows) };
        seen.insert(id.clone());
        queue.push(id);
    }
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        for g in gens {
            let next = g.compose(&cur);
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    queue
}

/// sigma(C) = C, decided on a basis: a bijection maps the finite-dimensional
/// code into itself exactly when it maps it onto itself.
pub fn is_code_invariant(code: &AffineInvariantCode, sigma: &Permutation) -> Result<bool> {
    for w in code.basis()? {
        if !code.contains_fast(&w.permute(sigma))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The invariants of a code: a is the least divisor d of m for which the
/// whole F_{p^d}-linear group preserves the code, b the least exponent whose
/// cyclotomic classes the defining set respects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub a: usize,
    pub b: usize,
    pub trivial: bool,
}

pub fn compute_params(code: &AffineInvariantCode) -> Result<CodeParams> {
    let b = minimal_b(&code.defining_set().elements, code.p(), code.m());
    if code.is_trivial() {
        // The automorphisms are all of S_n; the minimization degenerates.
        return Ok(CodeParams { a: 1, b: 1, trivial: true });
    }
    if let Some(&(a, b)) = code.params.get() {
        return Ok(CodeParams { a, b, trivial: false });
    }
    let spec = code.field();
    let mut a = code.m();
    for d in divisors(code.m()) {
        let mut all_pass = true;
        for g in gl_generators(spec, d)? {
            if !is_code_invariant(code, &g.permutation(spec))? {
                all_pass = false;
                break;
            }
        }
        if all_pass {
            a = d;
            break;
        }
    }
    if code.r() % b != 0 || a % b != 0 || code.m() % a != 0 {
        return Err(Error::InternalInconsistency(format!(
            "expected b | r and b | a | m, got a={a} b={b} r={} m={}",
            code.r(),
            code.m()
        )));
    }
    let _ = code.params.set((a, b));
    Ok(CodeParams { a, b, trivial: false })
}

/// |GL(n, q)| = prod_{i<n} (q^n - q^i).
pub fn gl_order(n: usize, q: u128) -> Option<u128> {
    let qn = q.checked_pow(n as u32)?;
    let mut acc: u128 = 1;
    let mut qi: u128 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(qn - qi)?;
        qi = qi.checked_mul(q)?;
    }
    Some(acc)
}

/// Order of the full permutation automorphism group of a non-trivial code:
/// p^m * |GL(m/a, p^a)| * (a/b).
pub fn paut_order(code: &AffineInvariantCode) -> Result<u128> {
    if code.is_trivial() {
        return Err(Error::TrivialCode);
    }
    let params = compute_params(code)?;
    let p = code.p() as u128;
    let qa = p.pow(params.a as u32);
    let gl = gl_order(code.m() / params.a, qa)
        .ok_or(Error::TooLarge { size: u128::MAX, limit: u128::MAX })?;
    Ok(p.pow(code.m() as u32) * gl * (params.a / params.b) as u128)
}

/// Whether the span of the images of (rho - 1) over a p-group of
/// F_{p^a}-linear maps is a proper subspace of K. The generators are closed
/// first and checked to really give a p-subgroup of the F_{p^a}-linear group.
pub fn sum_images_proper(spec: &FieldSpec, gens: &[AdditiveMap], a: usize) -> Result<bool> {
    let group = closure(gens);
    let mut order = group.len();
    while order > 1 && order % spec.p() as usize == 0 {
        order /= spec.p() as usize;
    }
    if order != 1 {
        return Err(Error::NotAPGroup(format!("closure has order {}", group.len())));
    }
    for g in &group {
        if !g.is_invertible() || !is_d_linear(spec, g, a)? {
            return Err(Error::NotAPGroup("element outside GL over F_{p^a}".into()));
        }
    }
    Ok(sum_images_rank(spec, &group) < spec.m())
}

/// Rank over F_p of the sum of Im(rho - 1); the sum is automatically an
/// F_{p^a}-subspace because every rho is F_{p^a}-linear.
pub fn sum_images_rank(spec: &FieldSpec, group: &[AdditiveMap]) -> usize {
    let id = AdditiveMap::identity(spec);
    let mut cols: Vec<Vec<u64>> = Vec::new();
    for rho in group {
        let diff = rho.sub(&id);
        for j in 0..spec.m() {
            cols.push(diff.mat.column(j));
        }
    }
    if cols.is_empty() {
        return 0;
    }
    MatFp::from_columns(spec.p(), spec.m(), &cols).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn gf(p: u64, m: usize) -> FieldSpec {
        make_field(p, m, None).unwrap()
    }

    #[test]
    fn d_linearity_examples() {
        let k = gf(2, 3);
        let mul_t = AdditiveMap::mul_by(&k, &k.gen());
        assert!(is_d_linear(&k, &mul_t, 3).unwrap());
        let frob = AdditiveMap::frobenius(&k, 1);
        assert!(is_d_linear(&k, &frob, 1).unwrap());
        assert!(!is_d_linear(&k, &frob, 3).unwrap());
        assert!(matches!(is_d_linear(&k, &frob, 2), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn semilinear_tag_examples() {
        let f4 = gf(2, 2);
        let w = f4.gen();
        assert_eq!(semilinear_tag(&f4, &AdditiveMap::mul_by(&f4, &w), 2, 1).unwrap(), Some(0));
        assert_eq!(semilinear_tag(&f4, &AdditiveMap::frobenius(&f4, 1), 2, 1).unwrap(), Some(1));
        let zero = AdditiveMap::zero(&f4);
        assert!(matches!(semilinear_tag(&f4, &zero, 2, 1), Err(Error::SingularMap)));

        // Over GF(8) with a = b = 1 the Galois group is trivial: every
        // invertible additive map is tagged with the identity.
        let k8 = gf(2, 3);
        let gab = Gab::new(&k8, 1, 1).unwrap();
        for f in gab.elements_exhaustive() {
            assert_eq!(f.tau_exp, 0);
        }
    }

    #[test]
    fn gab_membership_vs_generated_closure() {
        // The semilinear group equals the closure of the linear group and the
        // Galois group, exhaustively at small scale.
        for (p, m, a, b) in [(2u64, 2usize, 2usize, 1usize), (2, 2, 2, 2), (2, 4, 2, 2), (2, 4, 4, 2), (2, 4, 2, 1)] {
            let k = gf(p, m);
            let gab = Gab::new(&k, a, b).unwrap();
            let members: HashSet<AdditiveMap> =
                gab.elements_exhaustive().into_iter().map(|e| e.map).collect();
            let mut gens = gl_generators(&k, a).unwrap();
            gens.push(AdditiveMap::frobenius(&k, b));
            let generated: HashSet<AdditiveMap> = closure(&gens).into_iter().collect();
            assert_eq!(members, generated, "p={p} m={m} a={a} b={b}");
            assert_eq!(members.len() as u128, gab.order());
        }
    }

    #[test]
    fn gl_generator_closures_match_order_formula() {
        let k8 = gf(2, 3);
        assert_eq!(closure(&gl_generators(&k8, 3).unwrap()).len(), 7);
        assert_eq!(closure(&gl_generators(&k8, 1).unwrap()).len(), 168);
        let k16 = gf(2, 4);
        assert_eq!(closure(&gl_generators(&k16, 2).unwrap()).len(), 180);
        let k9 = gf(3, 2);
        assert_eq!(closure(&gl_generators(&k9, 1).unwrap()).len(), 48);
        // Closure orders match |GL(m/d, p^d)| for m <= 4, p <= 3.
        for (p, m) in [(2u64, 2usize), (2, 3), (2, 4), (3, 2)] {
            let k = gf(p, m);
            for d in divisors(m) {
                let got = closure(&gl_generators(&k, d).unwrap()).len() as u128;
                let expected = gl_order(m / d, (p as u128).pow(d as u32)).unwrap();
                assert_eq!(got, expected, "p={p} m={m} d={d}");
            }
        }
    }

    #[test]
    fn gl_closure_elements_are_d_linear() {
        let k = gf(2, 4);
        for d in [1, 2, 4] {
            for g in closure(&gl_generators(&k, d).unwrap()) {
                assert!(is_d_linear(&k, &g, d).unwrap());
            }
        }
    }

    #[test]
    fn tag_is_multiplicative() {
        // T(fg) = T(f) + T(g) over every pair; kernel = a-linear maps.
        let k = gf(2, 4);
        let gab = Gab::new(&k, 2, 1).unwrap();
        let elements = gab.elements_exhaustive();
        assert_eq!(elements.len() as u128, gab.order()); // 180 * 2
        for f in &elements {
            assert_eq!(f.tau_exp == 0, is_d_linear(&k, &f.map, 2).unwrap());
            for g in &elements {
                let fg = gab.compose(f, g);
                assert_eq!(
                    semilinear_tag(&k, &fg.map, 2, 1).unwrap(),
                    Some(fg.tau_exp)
                );
            }
        }
    }

    #[test]
    fn compute_params_examples() {
        let ext_hamming = AffineInvariantCode::new(2, 3, 1, &[0, 1, 2, 4], None).unwrap();
        let p = compute_params(&ext_hamming).unwrap();
        assert_eq!((p.a, p.b, p.trivial), (1, 1, false));
        assert_eq!(paut_order(&ext_hamming).unwrap(), 1344);

        let len4 = AffineInvariantCode::new(2, 2, 2, &[0, 1], None).unwrap();
        let p = compute_params(&len4).unwrap();
        assert_eq!((p.a, p.b, p.trivial), (2, 2, false));
        assert_eq!(paut_order(&len4).unwrap(), 12);

        let trivial = AffineInvariantCode::new(2, 2, 1, &[0], None).unwrap();
        let p = compute_params(&trivial).unwrap();
        assert!(p.trivial);
        assert!(matches!(paut_order(&trivial), Err(Error::TrivialCode)));
    }

    #[test]
    fn params_satisfy_divisibility_everywhere() {
        for (p, m, r) in [(2u64, 2usize, 2usize), (2, 3, 1), (3, 2, 1), (2, 4, 1), (2, 4, 2)] {
            for set in crate::code::enumerate_affine_invariant(p, m, r).unwrap() {
                if set.trivial {
                    continue;
                }
                let c = AffineInvariantCode::new(p, m, r, &set.elements, None).unwrap();
                let params = compute_params(&c).unwrap();
                assert_eq!(r % params.b, 0, "b | r for D={:?}", set.elements);
                assert_eq!(params.a % params.b, 0);
                assert_eq!(m % params.a, 0);
                assert!(params.a >= params.b);
            }
        }
    }

    #[test]
    fn invariance_monotone_in_d() {
        // If the d-linear group preserves the code, so does the d'-linear
        // group for every multiple d' of d dividing m.
        for (p, m, r, d_set) in [(2u64, 4usize, 1usize, vec![0u64, 1, 2, 4, 8]), (2, 4, 2, vec![0, 1, 2, 4, 8])] {
            let c = AffineInvariantCode::new(p, m, r, &d_set, None).unwrap();
            let spec = c.field();
            let passes: Vec<usize> = divisors(m)
                .into_iter()
                .filter(|&d| {
                    gl_generators(spec, d).unwrap().iter().all(|g| {
                        is_code_invariant(&c, &g.permutation(spec)).unwrap()
                    })
                })
                .collect();
            for &d in &passes {
                for dd in divisors(m) {
                    if dd % d == 0 {
                        assert!(passes.contains(&dd));
                    }
                }
            }
        }
    }

    #[test]
    fn code_invariance_examples() {
        let c = AffineInvariantCode::new(2, 3, 1, &[0, 1, 2, 4], None).unwrap();
        let k = c.field();
        // Translations always preserve an affine-invariant code.
        for t in k.elements() {
            let images: Vec<u16> = (0..8)
                .map(|x| k.index_of(&k.add(&k.element_from_index(x), &t)) as u16)
                .collect();
            assert!(is_code_invariant(&c, &Permutation::from_images(images)).unwrap());
        }
        // Multiplication by the primitive element too.
        let mul = AdditiveMap::mul_by(k, k.primitive());
        assert!(is_code_invariant(&c, &mul.permutation(k)).unwrap());
        // Swapping coordinates 0 and 1 does not.
        let mut images: Vec<u16> = (0..8).collect();
        images.swap(0, 1);
        assert!(!is_code_invariant(&c, &Permutation::from_images(images)).unwrap());
    }

    #[test]
    fn affine_semidirect_law() {
        // (g1 g2)(x) = g1(g2(x)) exhaustively over GF(8) with a = b = 1.
        let k = gf(2, 3);
        let gab = Gab::new(&k, 1, 1).unwrap();
        let parts: Vec<SemilinearElement> = closure(&gl_generators(&k, 1).unwrap())
            .into_iter()
            .map(|mapv| gab.element(mapv).unwrap())
            .collect();
        let sample: Vec<AffineElement> = parts
            .iter()
            .step_by(13)
            .flat_map(|part| {
                k.elements().map(move |t| AffineElement {
                    translation: t,
                    part: part.clone(),
                })
            })
            .collect();
        for g1 in &sample {
            for g2 in &sample {
                let composed = g1.compose(&gab, g2);
                for x in k.elements() {
                    assert_eq!(composed.apply(&k, &x), g1.apply(&k, &g2.apply(&k, &x)));
                }
                let inv = g1.inverse(&gab);
                assert!(g1.compose(&gab, &inv).permutation(&k).is_identity());
            }
        }
    }

    #[test]
    fn sum_images_examples() {
        let k = gf(2, 3);
        // Trivial group: the sum is the zero space.
        assert!(sum_images_proper(&k, &[AdditiveMap::identity(&k)], 1).unwrap());
        // One transvection in GL(3,2): image of (rho - 1) is a line.
        let mut mat = MatFp::identity(2, 3);
        mat.set(0, 1, 1);
        let t = AdditiveMap { mat };
        assert!(sum_images_proper(&k, &[t.clone()], 1).unwrap());
        assert_eq!(sum_images_rank(&k, &closure(&[t])), 1);
        // Full upper unitriangular group at m = 3: span has codimension 1.
        let mut e01 = MatFp::identity(2, 3);
        e01.set(0, 1, 1);
        let mut e12 = MatFp::identity(2, 3);
        e12.set(1, 2, 1);
        let gens = vec![AdditiveMap { mat: e01 }, AdditiveMap { mat: e12 }];
        let group = closure(&gens);
        assert_eq!(group.len(), 8);
        assert!(sum_images_proper(&k, &gens, 1).unwrap());
        assert_eq!(sum_images_rank(&k, &group), 2);
        // A non-p-group is rejected.
        let full_gl = gl_generators(&k, 1).unwrap();
        assert!(matches!(
            sum_images_proper(&k, &full_gl, 1),
            Err(Error::NotAPGroup(_))
        ));
    }

    #[test]
    fn unitriangular_sum_images_at_m3_m4() {
        // Superdiagonal transvections with scalars over a subfield basis
        // generate the full upper unitriangular group; the span of the
        // images of (rho - 1) is exactly the span of the first np-1 basis
        // vectors, so it has codimension a over F_p.
        for (p, m, a) in [(2u64, 3usize, 1usize), (2, 4, 1), (2, 4, 2), (3, 3, 1)] {
            let k = gf(p, m);
            let e_basis = canonical_d_basis(&k, a).unwrap();
            let np = m / a;
            let sub = k.subfield(a).unwrap();
            let scalars = greedy_fp_basis(&k, sub.elements());
            let mut gens = Vec::new();
            for i in 0..np - 1 {
                for s in &scalars {
                    let mut images = e_basis.clone();
                    images[i + 1] = k.add(&e_basis[i + 1], &k.mul(s, &e_basis[i]));
                    gens.push(d_linear_from_images(&k, a, &e_basis, &images));
                }
            }
            let group = closure(&gens);
            let expected_order = (p as usize).pow((a * np * (np - 1) / 2) as u32);
            assert_eq!(group.len(), expected_order);
            assert!(sum_images_proper(&k, &gens, a).unwrap());
            assert_eq!(sum_images_rank(&k, &group), m - a);
        }
    }

    #[test]
    fn paut_order_formula_instances() {
        assert_eq!(gl_order(3, 2), Some(168));
        assert_eq!(gl_order(2, 4), Some(180));
        assert_eq!(gl_order(1, 8), Some(7));
        assert_eq!(gl_order(4, 2), Some(20160));
    }
}
