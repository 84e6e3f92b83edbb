//! Exact computations in `Λ^p(S^k C^n)` over the rationals: the
//! symmetrization map from tensor words, wedge products, the inner product
//! induced from `C^n`, Hodge duals, and SL(n)-invariants built from powers of
//! the standard polynomial.
//!
//! ## Basis ordering
//!
//! [`SymBasis`] lists the monomials `e^d` of `S^k C^n` grouped by exponent
//! type (the sorted nonzero exponents, largest type first), then by the
//! pattern of exponents along the support (descending), then by support
//! (ascending). For `S^3 C^3` this is
//!
//! ```text
//! a1 = e1^3,   a2 = e2^3,   a3 = e3^3,   a4 = e1^2e2, a5 = e1^2e3,
//! a6 = e2^2e3, a7 = e1e2^2, a8 = e1e3^2, a9 = e2e3^2, a10 = e1e2e3
//! ```

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::ExactMatrix;

pub type Rational = BigRational;

/// `e1^{d1} .. en^{dn}` in `S^k C^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymMonomial(Vec<u32>);

impl SymMonomial {
    pub fn new(multidegree: Vec<u32>) -> Self {
        SymMonomial(multidegree)
    }

    /// Multidegree of a word of basis letters `0..n`.
    pub fn of_word(letters: &[u8], n: usize) -> Self {
        let mut d = vec![0; n];
        for &l in letters {
            d[l as usize] += 1;
        }
        SymMonomial(d)
    }

    pub fn multidegree(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn sort_key(&self) -> (Reverse<Vec<u32>>, Reverse<Vec<u32>>, Vec<usize>) {
        let mut kind: Vec<u32> = self.0.iter().copied().filter(|&e| e > 0).collect();
        kind.sort_unstable_by(|a, b| b.cmp(a));
        let pattern: Vec<u32> = self.0.iter().copied().filter(|&e| e > 0).collect();
        let support: Vec<usize> = (0..self.0.len()).filter(|&i| self.0[i] > 0).collect();
        (Reverse(kind), Reverse(pattern), support)
    }
}

impl fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "e{}", i + 1)?,
                _ => write!(f, "e{}^{}", i + 1, e)?,
            }
        }
        Ok(())
    }
}

/// Ordered monomial basis `a1, a2, ..` of `S^k C^n`.
#[derive(Clone, Debug)]
pub struct SymBasis {
    n: usize,
    k: u32,
    elements: Vec<SymMonomial>,
    index: HashMap<SymMonomial, usize>,
}

impl SymBasis {
    pub fn new(n: usize, k: u32) -> Self {
        let mut elements: Vec<SymMonomial> =
            crate::modspec::weights_sym(n, k).weights.into_iter().map(SymMonomial).collect();
        elements.sort_by_cached_key(SymMonomial::sort_key);
        let index = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        SymBasis { n, k, elements, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SymMonomial] {
        &self.elements
    }

    pub fn index_of(&self, m: &SymMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// `a1 ^ .. ^ aN`.
    pub fn volume(&self) -> WedgeElement {
        WedgeElement::basis((0..self.len() as u16).collect(), Rational::one())
    }
}

/// Rational combination of words `e_{i1} ⊗ .. ⊗ e_{iL}`; letters are
/// zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorWord {
    len: usize,
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl TensorWord {
    pub fn zero(len: usize) -> Self {
        TensorWord { len, terms: BTreeMap::new() }
    }

    pub fn word(letters: Vec<u8>) -> Self {
        let len = letters.len();
        TensorWord { len, terms: BTreeMap::from([(letters, Rational::one())]) }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Rational)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn add_term(&mut self, letters: Vec<u8>, c: Rational) {
        assert_eq!(letters.len(), self.len, "all words in a combination share one length");
        add_rational(&mut self.terms, letters, c);
    }

    pub fn tensor(&self, other: &TensorWord) -> TensorWord {
        let mut out = TensorWord::zero(self.len + other.len);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, ca * cb);
            }
        }
        out
    }

    pub fn power(&self, copies: usize) -> TensorWord {
        (0..copies).fold(TensorWord::word(Vec::new()), |acc, _| acc.tensor(self))
    }

    /// Word whose letter at position `r` is the old letter at `order[r]`.
    pub fn permute_positions(&self, order: &[usize]) -> TensorWord {
        assert_eq!(order.len(), self.len);
        let mut out = TensorWord::zero(self.len);
        for (w, c) in &self.terms {
            out.add_term(order.iter().map(|&q| w[q]).collect(), c.clone());
        }
        out
    }

    /// Action of `E_ij` (`e_j -> e_i`) extended to words as a derivation.
    pub fn act(&self, i: u8, j: u8) -> TensorWord {
        let mut out = TensorWord::zero(self.len);
        for (w, c) in &self.terms {
            for r in 0..w.len() {
                if w[r] == j {
                    let mut v = w.clone();
                    v[r] = i;
                    out.add_term(v, c.clone());
                }
            }
        }
        out
    }
}

fn add_rational<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key);
    match slot {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// `Σ_σ sign(σ) e_{σ(1)} ⊗ .. ⊗ e_{σ(n)}`.
pub fn standard_polynomial(n: usize) -> TensorWord {
    let mut out = TensorWord::zero(n);
    let mut perm: Vec<u8> = (0..n as u8).collect();
    heap_permutations(&mut perm, n, true, &mut |p, even| {
        out.add_term(p.to_vec(), if even { Rational::one() } else { -Rational::one() });
    });
    out
}

fn heap_permutations(items: &mut [u8], k: usize, even: bool, visit: &mut impl FnMut(&[u8], bool)) -> bool {
    // Heap's algorithm; each swap flips the parity. Returns the parity after
    // the last permutation visited.
    if k <= 1 {
        visit(items, even);
        return even;
    }
    let mut parity = heap_permutations(items, k - 1, even, visit);
    for i in 0..k - 1 {
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
        parity = heap_permutations(items, k - 1, !parity, visit);
    }
    parity
}

/// Image of a word combination in `S^k V`: each word goes to the monomial of
/// its multidegree with coefficient 1 (`e_i e_j e_k` denotes the symmetrized
/// tensor).
pub fn symmetrize(x: &TensorWord, n: usize) -> BTreeMap<SymMonomial, Rational> {
    let mut out = BTreeMap::new();
    for (w, c) in &x.terms {
        add_rational(&mut out, SymMonomial::of_word(w, n), c.clone());
    }
    out
}

/// Element of `Λ^p(S^k V)`: keys are strictly increasing zero-based basis
/// indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeElement {
    degree: usize,
    terms: BTreeMap<Vec<u16>, Rational>,
}

/// Sorts `indices` in place and returns the permutation sign, or `None` if
/// an index repeats.
fn sort_with_sign(indices: &mut [u16]) -> Option<bool> {
    let mut even = true;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            even = !even;
            j -= 1;
        }
        if j > 0 && indices[j - 1] == indices[j] {
            return None;
        }
    }
    Some(even)
}

impl WedgeElement {
    pub fn zero(degree: usize) -> Self {
        WedgeElement { degree, terms: BTreeMap::new() }
    }

    /// `c · a_{i1} ^ .. ^ a_{ip}` for indices in any order.
    pub fn basis(mut indices: Vec<u16>, c: Rational) -> Self {
        let mut out = WedgeElement::zero(indices.len());
        if let Some(even) = sort_with_sign(&mut indices) {
            out.add_term(indices, if even { c } else { -c });
        }
        out
    }

    pub fn from_terms<I>(degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u16>, Rational)>,
    {
        let mut out = WedgeElement::zero(degree);
        for (idx, c) in terms {
            assert_eq!(idx.len(), degree);
            out = out.add(&WedgeElement::basis(idx, c)).expect("same degree");
        }
        out
    }

    fn add_term(&mut self, sorted: Vec<u16>, c: Rational) {
        add_rational(&mut self.terms, sorted, c);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Rational)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn coeff(&self, sorted: &[u16]) -> Rational {
        self.terms.get(sorted).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &WedgeElement) -> Result<WedgeElement> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch { left: self.degree, right: other.degree });
        }
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        let rest = if self.is_zero() { &WedgeElement::zero(0) } else { other };
        for (k, c) in &rest.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> WedgeElement {
        let mut out = WedgeElement::zero(self.degree);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    /// Divides by the gcd of the coefficients (when they are integers) and
    /// makes the first term positive.
    pub fn normalized(&self) -> WedgeElement {
        let Some(first) = self.terms.values().next() else {
            return self.clone();
        };
        let mut scale = if first.is_negative() { -Rational::one() } else { Rational::one() };
        if self.terms.values().all(|c| c.is_integer()) {
            let g = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
            scale /= Rational::from_integer(g);
        }
        self.scale(&scale)
    }

    /// Applies a linear endomorphism of `W`, given by its matrix in the
    /// basis, as a derivation of the exterior algebra.
    pub fn apply_derivation(&self, action: &ExactMatrix) -> WedgeElement {
        let mut out = WedgeElement::zero(self.degree);
        for (idx, c) in &self.terms {
            for r in 0..idx.len() {
                let col = idx[r] as usize;
                for row in 0..action.rows() {
                    let a = action.get(row, col);
                    if a.is_zero() {
                        continue;
                    }
                    let mut image = idx.clone();
                    image[r] = row as u16;
                    if let Some(even) = sort_with_sign(&mut image) {
                        let v = c * a;
                        out.add_term(image, if even { v } else { -v });
                    }
                }
            }
        }
        out
    }

    /// Rendering with one-based indices: `a1^a2^a3 - 3 a3^a4^a7`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (idx, c)) in self.terms.iter().enumerate() {
            let wedge: Vec<String> = idx.iter().map(|&j| format!("a{}", j + 1)).collect();
            let wedge = if wedge.is_empty() { "1".to_string() } else { wedge.join("^") };
            let mag = c.abs();
            let sep = match (i, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(sep);
            if mag.is_one() {
                out.push_str(&wedge);
            } else {
                out.push_str(&format!("{mag} {wedge}"));
            }
        }
        out
    }

    /// `a_{1} \wedge a_{2} \wedge a_{3} - \frac{1}{3} a_{3} \wedge a_{4} \wedge a_{7}`.
    pub fn render_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (idx, c)) in self.terms.iter().enumerate() {
            let wedge: Vec<String> = idx.iter().map(|&j| format!("a_{{{}}}", j + 1)).collect();
            let wedge = if wedge.is_empty() { "1".to_string() } else { wedge.join(" \\wedge ") };
            out.push_str(match (i, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            });
            let mag = c.abs();
            if !mag.is_one() {
                if mag.is_integer() {
                    out.push_str(&format!("{} ", mag.numer()));
                } else {
                    out.push_str(&format!("\\frac{{{}}}{{{}}} ", mag.numer(), mag.denom()));
                }
            }
            out.push_str(&wedge);
        }
        out
    }

    pub fn to_json(&self) -> WedgeJson {
        WedgeJson {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(idx, c)| WedgeTermJson {
                    indices: idx.iter().map(|&j| j as usize + 1).collect(),
                    coefficient: c.to_string(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for WedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Machine-readable wedge element; indices are one-based, coefficients are
/// rationals written `p` or `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgeJson {
    pub degree: usize,
    pub terms: Vec<WedgeTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgeTermJson {
    pub indices: Vec<usize>,
    pub coefficient: String,
}

/// Each block of `k` letters goes to its basis monomial; blocks are wedged
/// in order.
pub fn project_to_wedge(x: &TensorWord, basis: &SymBasis, p: usize) -> Result<WedgeElement> {
    let k = basis.k() as usize;
    if x.len() != k * p {
        return Err(Error::WordLength { len: x.len(), blocks: p, block: k });
    }
    let mut out = WedgeElement::zero(p);
    for (w, c) in &x.terms {
        let mut idx: Vec<u16> = w
            .chunks(k.max(1))
            .take(p)
            .map(|block| {
                let m = SymMonomial::of_word(block, basis.n());
                basis.index_of(&m).expect("block has degree k") as u16
            })
            .collect();
        if let Some(even) = sort_with_sign(&mut idx) {
            out.add_term(idx, if even { c.clone() } else { -c.clone() });
        }
    }
    Ok(out)
}

pub fn wedge_product(u: &WedgeElement, w: &WedgeElement) -> WedgeElement {
    let mut out = WedgeElement::zero(u.degree + w.degree);
    for (a, ca) in &u.terms {
        for (b, cb) in &w.terms {
            let mut idx = a.clone();
            idx.extend_from_slice(b);
            if let Some(even) = sort_with_sign(&mut idx) {
                let c = ca * cb;
                out.add_term(idx, if even { c } else { -c });
            }
        }
    }
    out
}

/// Inner product on `S^k V` induced from the standard one on `V`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InnerProduct {
    /// Restriction of the tensor inner product on `V^{⊗k}` to symmetric
    /// tensors: `⟨e^d, e^d⟩ = d1! .. dn! / k!`.
    #[default]
    TensorInduced,
    /// Monomials orthonormal.
    OrthonormalMonomial,
}

impl InnerProduct {
    /// Squared norms of the basis monomials; the monomial basis is orthogonal
    /// under both conventions.
    pub fn basis_norms(self, basis: &SymBasis) -> Vec<Rational> {
        let factorial = |m: u32| (1..=m).fold(BigInt::one(), |acc, i| acc * i);
        basis
            .elements()
            .iter()
            .map(|m| match self {
                InnerProduct::OrthonormalMonomial => Rational::one(),
                InnerProduct::TensorInduced => {
                    let num = m.multidegree().iter().fold(BigInt::one(), |acc, &d| acc * factorial(d));
                    Rational::new(num, factorial(basis.k()))
                }
            })
            .collect()
    }

    /// Gram determinant `⟨a_I, a_I⟩` of a sorted index tuple.
    fn gram(norms: &[Rational], idx: &[u16]) -> Rational {
        idx.iter().fold(Rational::one(), |acc, &i| acc * &norms[i as usize])
    }
}

pub fn induced_inner_product(
    u: &WedgeElement,
    w: &WedgeElement,
    basis: &SymBasis,
    ip: InnerProduct,
) -> Result<Rational> {
    if u.degree != w.degree {
        return Err(Error::DegreeMismatch { left: u.degree, right: w.degree });
    }
    let norms = ip.basis_norms(basis);
    Ok(u.terms
        .iter()
        .filter_map(|(idx, cu)| w.terms.get(idx).map(|cw| cu * cw * InnerProduct::gram(&norms, idx)))
        .fold(Rational::zero(), |acc, x| acc + x))
}

/// The unique `w` of complementary degree with `u ^ w = ⟨u, v⟩ vol` for
/// every basis wedge `u`.
///
/// With an orthogonal basis the wedge pairing matches each `a_I` with its
/// complement only, so the linear system is solved one coordinate at a time:
/// `w_{I^c} = sign(I, I^c) ⟨a_I, a_I⟩ v_I c` where `vol = c a1 ^ .. ^ aN`.
pub fn hodge_dual(v: &WedgeElement, vol: &WedgeElement, basis: &SymBasis, ip: InnerProduct) -> Result<WedgeElement> {
    let top = basis.len();
    let full: Vec<u16> = (0..top as u16).collect();
    if vol.degree != top || vol.len() != 1 {
        return Err(Error::BadVolume { top });
    }
    let vol_coeff = vol.coeff(&full);
    if vol_coeff.is_zero() {
        return Err(Error::BadVolume { top });
    }
    let norms = ip.basis_norms(basis);
    if norms.iter().any(Zero::is_zero) {
        return Err(Error::DegenerateMetric);
    }
    if v.degree > top {
        return Err(Error::DegreeMismatch { left: v.degree, right: top });
    }
    let mut out = WedgeElement::zero(top - v.degree);
    for (idx, c) in &v.terms {
        let complement: Vec<u16> = full.iter().copied().filter(|i| !idx.contains(i)).collect();
        let mut joined = idx.clone();
        joined.extend_from_slice(&complement);
        let even = sort_with_sign(&mut joined).expect("disjoint index sets");
        let value = c * InnerProduct::gram(&norms, idx) * &vol_coeff;
        out.add_term(complement, if even { value } else { -value });
    }
    Ok(out)
}

/// An SL(n)-invariant `v ∈ Λ^p(S^k C^n)` and its Hodge dual.
#[derive(Clone, Debug)]
pub struct InvariantPair {
    pub basis: SymBasis,
    pub v: WedgeElement,
    pub dual: WedgeElement,
    /// For each copy of `Std_n`, the blocks receiving its letters in order.
    pub incidence: Vec<Vec<usize>>,
    /// Incidences tried before a nonzero `v` was found (or the search gave
    /// up).
    pub attempts: usize,
}

impl InvariantPair {
    /// `order[r]` is the position of the tensor power `Std_n^{⊗m}` placed at
    /// position `r` of the blocked word, so that
    /// `project_to_wedge(Std_n^{⊗m}.permute_positions(order))` reproduces `v`
    /// before normalization.
    pub fn arrangement(&self) -> Vec<usize> {
        let n = self.basis.n();
        let p = self.v.degree();
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); p];
        for (c, copy) in self.incidence.iter().enumerate() {
            for (s, &b) in copy.iter().enumerate() {
                blocks[b].push(c * n + s);
            }
        }
        blocks.into_iter().flatten().collect()
    }
}

/// Incidences tried by [`build_invariant_pair`] before reporting `v = 0`.
pub const INCIDENCE_SEARCH_LIMIT: usize = 2000;

/// Column-major dealing: position `q` of the concatenated word goes to block
/// `q mod p`.
fn column_major(n: usize, k: usize, p: usize) -> Vec<Vec<usize>> {
    (0..k * p / n).map(|c| (0..n).map(|s| (c * n + s) % p).collect()).collect()
}

/// Projection of `Std_n^{⊗m}` with copy `c` dealt to the blocks
/// `incidence[c]`. Equal to `project_to_wedge` of the permuted tensor power,
/// but sums over partial block contents instead of expanding all `(n!)^m`
/// words.
pub fn project_std_power(basis: &SymBasis, p: usize, incidence: &[Vec<usize>]) -> WedgeElement {
    let n = basis.n();
    let k = basis.k() as usize;
    let mut fill = vec![0usize; p];
    for copy in incidence {
        for &b in copy {
            fill[b] += 1;
        }
    }
    assert!(fill.iter().all(|&f| f == k), "every block receives k letters");
    if incidence.iter().any(|c| (1..c.len()).any(|i| c[..i].contains(&c[i]))) {
        // Two letters of one alternating copy in the same symmetric block.
        return WedgeElement::zero(p);
    }

    let perms = signed_permutations(n);
    let mut states: rustc_hash::FxHashMap<Vec<u8>, BigInt> = rustc_hash::FxHashMap::default();
    states.insert(vec![0u8; p * n], BigInt::one());
    for copy in incidence {
        let mut next: rustc_hash::FxHashMap<Vec<u8>, BigInt> = rustc_hash::FxHashMap::default();
        for (state, c) in &states {
            for (perm, even) in &perms {
                let mut s = state.clone();
                for (slot, &b) in copy.iter().enumerate() {
                    s[b * n + perm[slot] as usize] += 1;
                }
                let entry = next.entry(s).or_insert_with(BigInt::zero);
                if *even {
                    *entry += c;
                } else {
                    *entry -= c;
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        states = next;
    }

    let mut out = WedgeElement::zero(p);
    for (state, c) in states {
        let mut idx: Vec<u16> = state
            .chunks(n)
            .map(|d| {
                let m = SymMonomial::new(d.iter().map(|&x| x as u32).collect());
                basis.index_of(&m).expect("block has degree k") as u16
            })
            .collect();
        if let Some(even) = sort_with_sign(&mut idx) {
            let c = Rational::from_integer(c);
            out.add_term(idx, if even { c } else { -c });
        }
    }
    out
}

fn signed_permutations(n: usize) -> Vec<(Vec<u8>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<u8> = (0..n as u8).collect();
    heap_permutations(&mut perm, n, true, &mut |p, even| out.push((p.to_vec(), even)));
    out
}

/// Incidences with copy `c` on an increasing `n`-subset of blocks, subsets
/// nondecreasing in `c`, every block used `k` times, and the first copy on
/// blocks `0..n` (relabelling blocks only permutes wedge factors).
fn incidences(n: usize, k: usize, p: usize) -> Vec<Vec<Vec<usize>>> {
    let copies = k * p / n;
    let subsets: Vec<Vec<usize>> = combinations_of(p, n);
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![0usize; p];
    fn rec(
        subsets: &[Vec<usize>],
        copies: usize,
        k: usize,
        from: usize,
        cur: &mut Vec<usize>,
        used: &mut [usize],
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if out.len() >= INCIDENCE_SEARCH_LIMIT {
            return;
        }
        if cur.len() == copies {
            out.push(cur.iter().map(|&i| subsets[i].clone()).collect());
            return;
        }
        let first_only = cur.is_empty();
        for i in from..subsets.len() {
            if first_only && i > 0 {
                break;
            }
            if subsets[i].iter().any(|&b| used[b] == k) {
                continue;
            }
            for &b in &subsets[i] {
                used[b] += 1;
            }
            cur.push(i);
            rec(subsets, copies, k, i, cur, used, out);
            cur.pop();
            for &b in &subsets[i] {
                used[b] -= 1;
            }
        }
    }
    if n <= p {
        rec(&subsets, copies, k, 0, &mut cur, &mut used, &mut out);
    }
    out
}

fn combinations_of(p: usize, n: usize) -> Vec<Vec<usize>> {
    if n > p {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n).rev().find(|&i| cur[i] < p - n + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..n {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Projects `Std_n^{⊗(kp/n)}` into `Λ^p(S^k C^n)` and pairs the normalized
/// image with its Hodge dual for `vol = a1 ^ .. ^ aN`.
///
/// The letters of the tensor power are first dealt to the `p` blocks column
/// by column. When that image vanishes, other ways of distributing the
/// copies of `Std_n` over the blocks are tried in a fixed order, up to
/// [`INCIDENCE_SEARCH_LIMIT`] of them; if all vanish, `v` is zero.
pub fn build_invariant_pair(n: usize, k: u32, p: usize) -> Result<InvariantPair> {
    let kp = k as usize * p;
    if n == 0 || !kp.is_multiple_of(n) {
        return Err(Error::Divisibility { n, kp });
    }
    let basis = SymBasis::new(n, k);
    let mut incidence = column_major(n, k as usize, p);
    let mut v = project_std_power(&basis, p, &incidence);
    let mut attempts = 1;
    if v.is_zero() {
        for candidate in incidences(n, k as usize, p) {
            attempts += 1;
            let w = project_std_power(&basis, p, &candidate);
            if !w.is_zero() {
                v = w;
                incidence = candidate;
                break;
            }
        }
    }
    let v = v.normalized();
    let dual = hodge_dual(&v, &basis.volume(), &basis, InnerProduct::default())?;
    Ok(InvariantPair { basis, v, dual, incidence, attempts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn int(a: i64) -> Rational {
        q(a, 1)
    }

    #[test]
    fn basis_order_for_cubics_in_three_variables() {
        let b = SymBasis::new(3, 3);
        let names: Vec<String> = b.elements().iter().map(ToString::to_string).collect();
        assert_eq!(
            names,
            ["e1^3", "e2^3", "e3^3", "e1^2e2", "e1^2e3", "e2^2e3", "e1e2^2", "e1e3^2", "e2e3^2", "e1e2e3"]
        );
    }

    #[test]
    fn symmetrization_identifies_basis_elements() {
        let b = SymBasis::new(3, 3);
        let one = |w: Vec<u8>| {
            let s = symmetrize(&TensorWord::word(w), 3);
            assert_eq!(s.len(), 1);
            let (m, c) = s.into_iter().next().unwrap();
            assert!(c.is_one());
            b.index_of(&m).unwrap() + 1
        };
        assert_eq!(one(vec![0, 0, 0]), 1);
        assert_eq!(one(vec![0, 0, 1]), 4);
        assert_eq!(one(vec![1, 0, 0]), 4);
        assert_eq!(one(vec![0, 1, 2]), 10);
    }

    #[test]
    fn standard_polynomials() {
        let s2 = standard_polynomial(2);
        let terms: Vec<_> = s2.terms().map(|(w, c)| (w.to_vec(), c.clone())).collect();
        assert_eq!(terms, vec![(vec![0, 1], int(1)), (vec![1, 0], int(-1))]);
        let s3 = standard_polynomial(3);
        assert_eq!(s3.terms().count(), 6);
        for (w, c) in s3.terms() {
            let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count();
            assert_eq!(c, &int(if inversions % 2 == 0 { 1 } else { -1 }));
        }
        // Swapping the values 1 and 2 negates Std_4.
        let s4 = standard_polynomial(4);
        let swapped = TensorWord {
            len: 4,
            terms: s4
                .terms
                .iter()
                .map(|(w, c)| {
                    (
                        w.iter()
                            .map(|&l| match l {
                                0 => 1,
                                1 => 0,
                                x => x,
                            })
                            .collect(),
                        -c.clone(),
                    )
                })
                .collect(),
        };
        assert_eq!(swapped, s4);
    }

    #[test]
    fn wedge_products_alternate() {
        let a = |i: u16| WedgeElement::basis(vec![i], int(1));
        assert!(
            wedge_product(&WedgeElement::basis(vec![0, 1], int(1)), &WedgeElement::basis(vec![1, 2], int(1))).is_zero()
        );
        assert_eq!(wedge_product(&a(0), &a(1)).coeff(&[0, 1]), int(1));
        assert_eq!(wedge_product(&a(1), &a(0)).coeff(&[0, 1]), int(-1));
    }

    #[test]
    fn repeated_blocks_project_to_zero() {
        let b = SymBasis::new(2, 2);
        let x = TensorWord::word(vec![0, 1, 1, 0]);
        assert!(project_to_wedge(&x, &b, 2).unwrap().is_zero());
        let single = project_to_wedge(&TensorWord::word(vec![1, 0]), &b, 1).unwrap();
        assert_eq!(single.len(), 1);
        assert!(project_to_wedge(&x, &b, 3).is_err());
    }

    #[test]
    fn inner_products_of_basis_monomials() {
        let b = SymBasis::new(3, 3);
        let a = |i: u16| WedgeElement::basis(vec![i], int(1));
        let ip = |i: u16, j: u16| induced_inner_product(&a(i), &a(j), &b, InnerProduct::TensorInduced).unwrap();
        assert_eq!(ip(0, 0), int(1));
        assert_eq!(ip(0, 1), int(0));
        assert_eq!(ip(3, 3), q(1, 3));
        assert_eq!(ip(9, 9), q(1, 6));
        assert!(induced_inner_product(&a(0), &b.volume(), &b, InnerProduct::TensorInduced).is_err());
    }

    #[test]
    fn hodge_dual_edge_cases() {
        let b = SymBasis::new(2, 2);
        let vol = b.volume();
        let ip = InnerProduct::OrthonormalMonomial;
        let dual = hodge_dual(&WedgeElement::basis(vec![1], int(1)), &vol, &b, ip).unwrap();
        // a2 ^ (a1 ^ a3) = -a1 ^ a2 ^ a3
        assert_eq!(dual.render(), "-a1^a3");
        assert!(hodge_dual(&WedgeElement::zero(1), &vol, &b, ip).unwrap().is_zero());
        assert!(hodge_dual(&WedgeElement::basis(vec![0], int(1)), &WedgeElement::zero(3), &b, ip).is_err());
    }

    #[test]
    fn divisibility_is_checked() {
        assert!(matches!(build_invariant_pair(3, 4, 1), Err(Error::Divisibility { n: 3, kp: 4 })));
    }

    #[test]
    fn rendering() {
        let w = WedgeElement::from_terms(2, [(vec![0, 1], int(1)), (vec![2, 3], q(-1, 3))]);
        assert_eq!(w.render(), "a1^a2 - 1/3 a3^a4");
        assert_eq!(w.render_latex(), "a_{1} \\wedge a_{2} - \\frac{1}{3} a_{3} \\wedge a_{4}");
        let json = w.to_json();
        assert_eq!(json.terms[1].indices, vec![3, 4]);
        assert_eq!(json.terms[1].coefficient, "-1/3");
    }
}
