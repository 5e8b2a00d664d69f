//! Affine-invariant codes as parity-check extensions described by defining
//! sets: validation, exhaustive enumeration, basis construction, membership,
//! and recovery of the defining set from codewords.

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{is_union_of_classes, pow_mod};
use crate::error::{Error, Result};
use crate::field::{make_field, Compositum, FieldElement, FieldSpec};
use crate::perm::Permutation;

/// Codes larger than this would need basis linear algebra beyond desk scale.
pub const BASIS_LIMIT: usize = 512;
/// Enumeration of defining sets is supported up to this length.
pub const ENUMERATE_LIMIT: usize = 1 << 16;

/// A defining set over [0, p^m - 1], sorted, with its triviality tag.
/// The top value p^m - 1 acts as a flag: it forces the zero code.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DefiningSet {
    pub elements: Vec<u64>,
    pub trivial: bool,
}

/// One alphabet symbol per element of I, indexed by the canonical element
/// enumeration of K. Length is exactly p^m.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub values: Vec<FieldElement>,
}

impl Codeword {
    pub fn zero(code: &AffineInvariantCode) -> Codeword {
        Codeword { values: vec![code.alphabet().zero(); code.len()] }
    }

    /// Coordinate permutation: position sigma(x) of the image holds value x.
    pub fn permute(&self, sigma: &Permutation) -> Codeword {
        let mut values = self.values.clone();
        for (x, v) in self.values.iter().enumerate() {
            values[sigma.apply(x)] = v.clone();
        }
        Codeword { values }
    }
}

/// Condition (Del): for all 1 <= s, t <= p^m - 1, s digitwise below t and
/// t in D forces s in D. Checked through covering steps (single digit
/// decrements), which generate the whole order.
pub fn is_affine_invariant(d: &[u64], p: u64, m: usize) -> bool {
    let n = (p as u64).pow(m as u32) - 1;
    let set: HashSet<u64> = d.iter().copied().collect();
    for &t in d {
        if t == 0 {
            continue;
        }
        let mut power = 1u64;
        let mut rest = t;
        while rest > 0 {
            if rest % p > 0 {
                let s = t - power;
                if s >= 1 && s <= n && !set.contains(&s) {
                    return false;
                }
            }
            rest /= p;
            power *= p;
        }
    }
    true
}

/// Whether D is one of the three trivial defining sets for length p^m.
pub fn is_trivial_set(d: &[u64], p: u64, m: usize) -> bool {
    let n = (p as u64).pow(m as u32) - 1;
    let full: Vec<u64> = (0..=n).collect();
    let repetition_dual: Vec<u64> = (0..n).collect();
    d == [0] || d == full.as_slice() || d == repetition_dual.as_slice()
}

/// An affine-invariant code of length p^m over F_{p^r}, built from a valid
/// defining set. Derived data (basis, codeword table, the invariants a and b)
/// is computed once on demand.
pub struct AffineInvariantCode {
    field: FieldSpec,
    alphabet: FieldSpec,
    r: usize,
    defining_set: DefiningSet,
    comp: Compositum,
    basis: OnceLock<Vec<Codeword>>,
    word_table: OnceLock<Option<HashSet<u128>>>,
    pub(crate) params: OnceLock<(usize, usize)>,
}

impl AffineInvariantCode {
    /// Validate and build. `modulus` overrides the default presentation of K.
    pub fn new(p: u64, m: usize, r: usize, d: &[u64], modulus: Option<Vec<u64>>) -> Result<Self> {
        assert!(r >= 1, "alphabet exponent must be positive");
        let field = make_field(p, m, modulus)?;
        let alphabet = make_field(p, r, None)?;
        let n = (p as u64).pow(m as u32) - 1;

        let mut elements: Vec<u64> = d.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&x| x > n) {
            return Err(Error::InvalidDefiningSet(format!(
                "exponent out of range [0, {n}]"
            )));
        }
        if elements.first() != Some(&0) {
            return Err(Error::InvalidDefiningSet("0 must belong to D".into()));
        }
        let q = pow_mod(p, r as u64, n.max(1));
        if !is_union_of_classes(&elements, q, n) {
            return Err(Error::InvalidDefiningSet(format!(
                "D minus the flag is not a union of {q}-cyclotomic classes mod {n}"
            )));
        }
        if !is_affine_invariant(&elements, p, m) {
            return Err(Error::InvalidDefiningSet(
                "D is not closed downward under the digitwise order".into(),
            ));
        }
        if elements.contains(&n) && elements.len() != n as usize + 1 {
            // Unreachable given the downward closure, kept as a guard.
            return Err(Error::InvalidDefiningSet(
                "the flag value forces the full defining set".into(),
            ));
        }
        let trivial = is_trivial_set(&elements, p, m);
        let comp = Compositum::new(&alphabet, &field)?;
        Ok(AffineInvariantCode {
            field,
            alphabet,
            r,
            defining_set: DefiningSet { elements, trivial },
            comp,
            basis: OnceLock::new(),
            word_table: OnceLock::new(),
            params: OnceLock::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn m(&self) -> usize {
        self.field.m()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Code length p^m.
    pub fn len(&self) -> usize {
        self.field.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn alphabet(&self) -> &FieldSpec {
        &self.alphabet
    }

    pub fn compositum(&self) -> &Compositum {
        &self.comp
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.defining_set
    }

    pub fn is_trivial(&self) -> bool {
        self.defining_set.trivial
    }

    /// F-basis of the code in reduced echelon form under the fixed coordinate
    /// enumeration of I, so it is deterministic.
    pub fn basis(&self) -> Result<&[Codeword]> {
        if self.len() > BASIS_LIMIT {
            return Err(Error::TooLarge { size: self.len() as u128, limit: BASIS_LIMIT as u128 });
        }
        Ok(self.basis.get_or_init(|| self.compute_basis()))
    }

    pub fn dimension(&self) -> Result<usize> {
        Ok(self.basis()?.len())
    }

    /// Membership by the defining power sums, with 0^0 = 1.
    pub fn contains(&self, w: &Codeword) -> Result<bool> {
        self.check_word(w)?;
        for &i in &self.defining_set.elements {
            if !self.power_sum(w, i).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Membership via the cached codeword table when the code is small enough,
    /// falling back to the power-sum definition.
    pub fn contains_fast(&self, w: &Codeword) -> Result<bool> {
        self.check_word(w)?;
        if let Some(table) = self.word_table() {
            return Ok(table.contains(&self.pack(w)));
        }
        self.contains(w)
    }

    /// The power sum over the compositum for a single exponent.
    pub fn power_sum(&self, w: &Codeword, i: u64) -> FieldElement {
        let big = self.comp.field();
        let mut acc = big.zero();
        for (g_idx, a) in w.values.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let g = self.field.element_from_index(g_idx);
            let g_big = self.comp.embed_k(&g);
            // pow applies the 0^0 = 1 convention.
            let term = big.mul(&self.comp.embed_f(a), &big.pow(&g_big, i));
            acc = big.add(&acc, &term);
        }
        acc
    }

    fn check_word(&self, w: &Codeword) -> Result<()> {
        if w.values.len() != self.len() {
            return Err(Error::AlphabetMismatch(format!(
                "expected length {}, got {}",
                self.len(),
                w.values.len()
            )));
        }
        for v in &w.values {
            self.alphabet
                .check_element(v)
                .map_err(|e| Error::AlphabetMismatch(e.to_string()))?;
        }
        Ok(())
    }

    fn compute_basis(&self) -> Vec<Codeword> {
        let n = self.len();
        let big = self.comp.field();
        let l = big.m();
        let degree = l / self.r; // [L : F]

        // F-basis of L: powers of the primitive element of L.
        let zeta = big.primitive().clone();
        let mut l_basis = Vec::with_capacity(degree);
        let mut cur = big.one();
        for _ in 0..degree {
            l_basis.push(cur.clone());
            cur = big.mul(&cur, &zeta);
        }
        // Change of basis from F_p-coordinates of L to F-coordinates.
        let mut cols = Vec::with_capacity(l);
        for basis_elt in &l_basis {
            for k in 0..self.r {
                // t_F^k has element index p^k.
                let sk = self.alphabet.element_from_index((self.p() as usize).pow(k as u32));
                cols.push(big.mul(&self.comp.embed_f(&sk), basis_elt).coeffs);
            }
        }
        let to_f_coords = crate::linalg::MatFp::from_columns(self.p(), l, &cols)
            .inverse()
            .expect("L-basis change of coordinates is invertible");

        // Constraint rows over F: one row per (exponent, L-coordinate).
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        for &i in &self.defining_set.elements {
            // coefficient of w_g in the i-th power sum, expanded over F
            let mut expanded: Vec<Vec<FieldElement>> = vec![Vec::with_capacity(n); degree];
            for g_idx in 0..n {
                let g = self.field.element_from_index(g_idx);
                let v = big.pow(&self.comp.embed_k(&g), i);
                let coords = to_f_coords.matvec(&v.coeffs);
                for (j, exp_row) in expanded.iter_mut().enumerate() {
                    let digits: Vec<u64> = (0..self.r).map(|k| coords[j * self.r + k]).collect();
                    exp_row.push(FieldElement::new(digits));
                }
            }
            rows.extend(expanded);
        }

        let nullspace = nullspace_over(&self.alphabet, &mut rows, n);
        // Canonicalize: reduced echelon form of the spanning set.
        let mut words = nullspace;
        let _ = rref_over(&self.alphabet, &mut words);
        words
            .into_iter()
            .filter(|row| row.iter().any(|v| !v.is_zero()))
            .map(|row| Codeword { values: row })
            .collect()
    }

    fn word_table(&self) -> Option<&HashSet<u128>> {
        self.word_table
            .get_or_init(|| {
                let basis = self.basis().ok()?;
                let q = self.alphabet.order();
                let dim = basis.len() as u32;
                let count = (q as u128).checked_pow(dim)?;
                if self.len() > 16 || q > 256 || count > 1 << 16 {
                    return None;
                }
                let mut set = HashSet::with_capacity(count as usize);
                for mut idx in 0..count as usize {
                    let mut w = vec![self.alphabet.zero(); self.len()];
                    for b in basis {
                        let c = self.alphabet.element_from_index(idx % q);
                        idx /= q;
                        if !c.is_zero() {
                            for (acc, v) in w.iter_mut().zip(&b.values) {
                                *acc = self.alphabet.add(acc, &self.alphabet.mul(&c, v));
                            }
                        }
                    }
                    set.insert(self.pack(&Codeword { values: w }));
                }
                Some(set)
            })
            .as_ref()
    }

    fn pack(&self, w: &Codeword) -> u128 {
        w.values
            .iter()
            .fold(0u128, |acc, v| (acc << 8) | self.alphabet.index_of(v) as u128)
    }
}

/// Exponents whose power sums vanish on every basis word; round-trips with
/// the basis construction.
pub fn compute_defining_set(
    basis: &[Codeword],
    code_context: &AffineInvariantCode,
) -> DefiningSet {
    let n = code_context.len() as u64;
    let mut elements = Vec::new();
    for i in 0..n {
        if basis.iter().all(|w| code_context.power_sum(w, i).is_zero()) {
            elements.push(i);
        }
    }
    let trivial = is_trivial_set(&elements, code_context.p(), code_context.m());
    DefiningSet { elements, trivial }
}

/// All defining sets of affine-invariant codes of length p^m over F_{p^r},
/// sorted, each tagged trivial or not.
///
/// Valid sets are exactly {0} plus a downward-closed union of q-cyclotomic
/// classes, together with the full set. Downward closure is decided on the
/// class poset, whose order ideals are enumerated directly (each exactly
/// once), so the cost is linear in the output.
pub fn enumerate_affine_invariant(p: u64, m: usize, r: usize) -> Result<Vec<DefiningSet>> {
    let size = (p as u128).pow(m as u32);
    if size > ENUMERATE_LIMIT as u128 {
        return Err(Error::TooLarge { size, limit: ENUMERATE_LIMIT as u128 });
    }
    let n = (p as u64).pow(m as u32) - 1;
    let q = pow_mod(p, r as u64, n.max(1));

    // q-classes of [1, n-1], topologically ordered by digit sum (covers
    // decrease the digit sum by exactly one).
    let mut classes: Vec<Vec<u64>> = crate::cyclotomic::all_classes(q, n.max(1))?
        .into_iter()
        .map(|c| c.members)
        .filter(|members| members != &[0])
        .collect();
    if n == 0 {
        classes.clear();
    }
    let digit_sum = |mut x: u64| {
        let mut s = 0;
        while x > 0 {
            s += x % p;
            x /= p;
        }
        s
    };
    classes.sort_by_key(|c| (digit_sum(c[0]), c[0]));

    let mut class_of = vec![usize::MAX; n.max(1) as usize];
    for (ci, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x as usize] = ci;
        }
    }
    // Predecessor classes through covering steps t -> t - p^i.
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); classes.len()];
    for (ci, c) in classes.iter().enumerate() {
        let mut set = std::collections::BTreeSet::new();
        for &t in c {
            let mut power = 1u64;
            let mut rest = t;
            while rest > 0 {
                if rest % p > 0 && t - power >= 1 {
                    set.insert(class_of[(t - power) as usize]);
                }
                rest /= p;
                power *= p;
            }
        }
        set.remove(&ci);
        preds[ci] = set.into_iter().collect();
    }

    let mut out = Vec::new();
    let mut chosen = vec![false; classes.len()];
    enumerate_ideals(0, &classes, &preds, &mut chosen, &mut |ideal| {
        let mut d = vec![0u64];
        for (ci, on) in ideal.iter().enumerate() {
            if *on {
                d.extend(&classes[ci]);
            }
        }
        d.sort_unstable();
        let trivial = is_trivial_set(&d, p, m);
        out.push(DefiningSet { elements: d, trivial });
    });
    // The zero code: every exponent including the flag value n.
    out.push(DefiningSet { elements: (0..=n).collect(), trivial: true });
    out.sort();
    Ok(out)
}

fn enumerate_ideals(
    i: usize,
    classes: &[Vec<u64>],
    preds: &[Vec<usize>],
    chosen: &mut Vec<bool>,
    emit: &mut impl FnMut(&[bool]),
) {
    if i == classes.len() {
        emit(chosen);
        return;
    }
    enumerate_ideals(i + 1, classes, preds, chosen, emit);
    if preds[i].iter().all(|&pc| chosen[pc]) {
        chosen[i] = true;
        enumerate_ideals(i + 1, classes, preds, chosen, emit);
        chosen[i] = false;
    }
}

/// In-place reduced row echelon form over an arbitrary small field.
/// Returns pivot columns.
pub(crate) fn rref_over(f: &FieldSpec, rows: &mut Vec<Vec<FieldElement>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(&rows[r][c]).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = f.mul(v, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let t = f.mul(&factor, &rows[r][j]);
                    rows[i][j] = f.sub(&rows[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Nullspace basis of the row system over F, one vector per free column.
fn nullspace_over(
    f: &FieldSpec,
    rows: &mut Vec<Vec<FieldElement>>,
    ncols: usize,
) -> Vec<Vec<FieldElement>> {
    let pivots = rref_over(f, rows);
    let mut pivot_row = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        pivot_row[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_row[free].is_some() {
            continue;
        }
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (c, slot) in pivot_row.iter().enumerate() {
            if let Some(r) = slot {
                v[c] = f.neg(&rows[*r][free]);
            }
        }
        basis.push(v);
    }
    basis
}

/// JSON shape of a code: `{"p":2,"m":3,"r":1,"D":[0,1,2,4]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub p: u64,
    pub m: usize,
    pub r: usize,
    #[serde(rename = "D")]
    pub d: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<Vec<u64>>,
}

impl CodeDescriptor {
    pub fn build(&self) -> Result<AffineInvariantCode> {
        AffineInvariantCode::new(self.p, self.m, self.r, &self.d, self.modulus.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::preceq;

    fn code(p: u64, m: usize, r: usize, d: &[u64]) -> AffineInvariantCode {
        AffineInvariantCode::new(p, m, r, d, None).unwrap()
    }

    #[test]
    fn del_condition_examples() {
        assert!(is_affine_invariant(&[0, 1, 2, 4], 2, 3));
        assert!(!is_affine_invariant(&[0, 3], 2, 3));
        // The repetition code's defining set is always valid.
        assert!(is_affine_invariant(&(0..7).collect::<Vec<_>>(), 2, 3));
        assert!(is_affine_invariant(&(0..9).collect::<Vec<_>>(), 3, 2));
    }

    #[test]
    fn del_cover_check_matches_naive() {
        // Oracle: quantify over all pairs directly.
        fn naive(d: &[u64], p: u64, m: usize) -> bool {
            let n = (p as u64).pow(m as u32) - 1;
            let set: HashSet<u64> = d.iter().copied().collect();
            for s in 1..=n {
                for t in 1..=n {
                    if preceq(s, t, p) && set.contains(&t) && !set.contains(&s) {
                        return false;
                    }
                }
            }
            true
        }
        for (p, m) in [(2u64, 3usize), (3, 2), (2, 4)] {
            let n = (p as u64).pow(m as u32) - 1;
            // Sweep a deterministic sample of subsets containing 0.
            for seed in 0..200u64 {
                let mut d = vec![0u64];
                for x in 1..=n {
                    if (seed.wrapping_mul(2654435761).wrapping_add(x * 97)) % 3 == 0 {
                        d.push(x);
                    }
                }
                assert_eq!(is_affine_invariant(&d, p, m), naive(&d, p, m), "D={d:?} p={p} m={m}");
            }
        }
    }

    #[test]
    fn construction_validates() {
        assert!(AffineInvariantCode::new(2, 3, 1, &[0, 1, 2, 4], None).is_ok());
        // 0 missing
        assert!(matches!(
            AffineInvariantCode::new(2, 3, 1, &[1, 2, 4], None),
            Err(Error::InvalidDefiningSet(_))
        ));
        // not class-closed: {0,1} with q=2 mod 7
        assert!(AffineInvariantCode::new(2, 3, 1, &[0, 1], None).is_err());
        // not down-closed: {0,3,5,6} is a class union but 1 is missing
        assert!(AffineInvariantCode::new(2, 3, 1, &[0, 3, 5, 6], None).is_err());
    }

    #[test]
    fn enumerate_length8() {
        let sets = enumerate_affine_invariant(2, 3, 1).unwrap();
        assert_eq!(sets.len(), 4);
        let nontrivial: Vec<_> = sets.iter().filter(|s| !s.trivial).collect();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(nontrivial[0].elements, vec![0, 1, 2, 4]);
    }

    #[test]
    fn enumerate_length4_both_parities() {
        // r odd: multiplication by 2 mod 3 glues {1,2}; only trivial codes.
        let odd = enumerate_affine_invariant(2, 2, 1).unwrap();
        assert_eq!(odd.len(), 3);
        assert!(odd.iter().all(|s| s.trivial));
        // r even: 4 = 1 mod 3 gives singleton classes and two nontrivial codes.
        let even = enumerate_affine_invariant(2, 2, 2).unwrap();
        assert_eq!(even.len(), 5);
        let nontrivial: Vec<_> = even.iter().filter(|s| !s.trivial).collect();
        assert_eq!(nontrivial.len(), 2);
        assert_eq!(nontrivial[0].elements, vec![0, 1]);
        assert_eq!(nontrivial[1].elements, vec![0, 2]);
    }

    #[test]
    fn enumerate_matches_subset_scan_oracle() {
        // Exhaustive subset scan for p^m <= 9 validates the ideal enumerator.
        for (p, m, r) in [(2u64, 2usize, 1usize), (2, 2, 2), (2, 3, 1), (2, 3, 2), (3, 2, 1)] {
            let n = (p as u64).pow(m as u32) - 1;
            let q = pow_mod(p, r as u64, n);
            let mut expected = Vec::new();
            for mask in 0u64..(1 << n) {
                let mut d = vec![0u64];
                for x in 1..=n {
                    if mask >> (x - 1) & 1 == 1 {
                        d.push(x);
                    }
                }
                let flag_ok = !d.contains(&n) || d.len() == n as usize + 1;
                if flag_ok && is_union_of_classes(&d, q, n) && is_affine_invariant(&d, p, m) {
                    expected.push(d);
                }
            }
            expected.sort();
            let got: Vec<Vec<u64>> = enumerate_affine_invariant(p, m, r)
                .unwrap()
                .into_iter()
                .map(|s| s.elements)
                .collect();
            assert_eq!(got, expected, "p={p} m={m} r={r}");
        }
    }

    #[test]
    fn basis_and_dimension_examples() {
        let c = code(2, 3, 1, &[0, 1, 2, 4]);
        assert_eq!(c.dimension().unwrap(), 4);
        let ones = Codeword { values: vec![c.alphabet().one(); 8] };
        assert!(c.contains(&ones).unwrap());

        let aug = code(2, 2, 1, &[0]);
        assert_eq!(aug.dimension().unwrap(), 3);

        let zero_code = code(2, 2, 1, &[0, 1, 2, 3]);
        assert_eq!(zero_code.dimension().unwrap(), 0);
        assert!(zero_code.basis().unwrap().is_empty());
    }

    #[test]
    fn dimension_equals_length_minus_defining_set() {
        for (p, m, r) in [(2u64, 2usize, 2usize), (2, 3, 1), (3, 2, 1), (2, 4, 1), (2, 3, 3)] {
            for set in enumerate_affine_invariant(p, m, r).unwrap() {
                let c = AffineInvariantCode::new(p, m, r, &set.elements, None).unwrap();
                assert_eq!(
                    c.dimension().unwrap(),
                    c.len() - set.elements.len(),
                    "D={:?} over p={p} m={m} r={r}",
                    set.elements
                );
            }
        }
    }

    #[test]
    fn contains_examples() {
        let c = code(2, 3, 1, &[0, 1, 2, 4]);
        assert!(c.contains(&Codeword::zero(&c)).unwrap());
        // A standard basis vector fails the augmentation check.
        let mut e = Codeword::zero(&c);
        e.values[3] = c.alphabet().one();
        assert!(!c.contains(&e).unwrap());
        // Wrong length
        let bad = Codeword { values: vec![c.alphabet().zero(); 7] };
        assert!(matches!(c.contains(&bad), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn contains_fast_agrees_with_power_sums() {
        let c = code(2, 3, 1, &[0, 1, 2, 4]);
        for idx in 0..256usize {
            let values: Vec<FieldElement> = (0..8)
                .map(|b| c.alphabet().element_from_index(idx >> b & 1))
                .collect();
            let w = Codeword { values };
            assert_eq!(c.contains(&w).unwrap(), c.contains_fast(&w).unwrap());
        }
    }

    #[test]
    fn defining_set_round_trip() {
        for (p, m, r) in [(2u64, 2usize, 2usize), (2, 3, 1), (3, 2, 1), (2, 4, 1)] {
            for set in enumerate_affine_invariant(p, m, r).unwrap() {
                let c = AffineInvariantCode::new(p, m, r, &set.elements, None).unwrap();
                let recovered = compute_defining_set(c.basis().unwrap(), &c);
                assert_eq!(recovered.elements, set.elements);
            }
        }
    }

    #[test]
    fn zero_code_has_full_defining_set() {
        let c = code(2, 2, 1, &[0, 1, 2, 3]);
        let recovered = compute_defining_set(&[], &c);
        assert_eq!(recovered.elements, vec![0, 1, 2, 3]);
        assert!(recovered.trivial);
    }

    #[test]
    fn repetition_code_defining_set() {
        let c = code(2, 3, 1, &(0..7).collect::<Vec<_>>());
        assert_eq!(c.dimension().unwrap(), 1);
        let basis = c.basis().unwrap();
        let ones = Codeword { values: vec![c.alphabet().one(); 8] };
        assert_eq!(basis, &[ones]);
        let recovered = compute_defining_set(basis, &c);
        assert_eq!(recovered.elements, (0..7).collect::<Vec<u64>>());
    }

    #[test]
    fn triviality_examples() {
        assert!(code(2, 3, 1, &[0]).is_trivial());
        assert!(!code(2, 3, 1, &[0, 1, 2, 4]).is_trivial());
        assert!(code(2, 3, 1, &(0..7).collect::<Vec<_>>()).is_trivial());
        assert!(code(2, 3, 1, &(0..8).collect::<Vec<_>>()).is_trivial());
    }

    #[test]
    fn basis_is_invariant_under_affine_maps() {
        // Directly checks the definition of affine invariance at small scale.
        for (p, m, r) in [(2u64, 2usize, 2usize), (2, 3, 1), (3, 2, 1), (2, 4, 1)] {
            for set in enumerate_affine_invariant(p, m, r).unwrap() {
                let c = AffineInvariantCode::new(p, m, r, &set.elements, None).unwrap();
                let k = c.field();
                let n = c.len();
                for alpha_idx in 1..n {
                    let alpha = k.element_from_index(alpha_idx);
                    for beta_idx in 0..n {
                        let beta = k.element_from_index(beta_idx);
                        let images: Vec<u16> = (0..n)
                            .map(|x| {
                                let xe = k.element_from_index(x);
                                k.index_of(&k.add(&k.mul(&alpha, &xe), &beta)) as u16
                            })
                            .collect();
                        let sigma = Permutation::from_images(images);
                        for w in c.basis().unwrap() {
                            assert!(c.contains(&w.permute(&sigma)).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nontrivial_count_is_total_minus_three() {
        for (p, m, r) in [(2u64, 2usize, 1usize), (2, 2, 2), (2, 3, 1), (3, 2, 1), (2, 4, 1)] {
            let sets = enumerate_affine_invariant(p, m, r).unwrap();
            let trivial = sets.iter().filter(|s| s.trivial).count();
            assert_eq!(trivial, 3);
            assert_eq!(sets.iter().filter(|s| !s.trivial).count(), sets.len() - 3);
        }
    }

    #[test]
    fn descriptor_json_round_trip() {
        let desc = CodeDescriptor { p: 2, m: 3, r: 1, d: vec![0, 1, 2, 4], modulus: None };
        let json = serde_json::to_string(&desc).unwrap();
        assert_eq!(json, r#"{"p":2,"m":3,"r":1,"D":[0,1,2,4]}"#);
        let back: CodeDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(back.d, desc.d);
        assert!(back.build().is_ok());
    }
}
