//! Independent check of invariant dimensions by linear algebra.
//!
//! `W` is given an explicit monomial basis (`S^k` and `Λ^k` summands only),
//! Lie algebra generators act on `Λ^p(W)` as derivations, and
//! `dim Λ^p(W)^G` is the dimension of their common kernel. For O(n) the
//! kernel of `so(n)` is further cut down to the `+1` eigenspace of the
//! reflection `e1 -> -e1`. Ranks are computed exactly by fraction-free
//! elimination over the integers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{GroupFamily, GroupId};
use crate::modspec::{weights_ext, weights_sym, ModuleSpec, TermKind};
use crate::wedge::SymBasis;

/// Largest `dim Λ^p(W)` the oracle accepts.
pub const ORACLE_LIMIT: usize = 5000;

/// Dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Matrix unit `E_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, BigRational::one());
        m
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigRational::from_integer(x.into()));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    fn add_at(&mut self, i: usize, j: usize, v: &BigRational) {
        self.data[i * self.cols + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &ExactMatrix, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &ExactMatrix) -> ExactMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Integer columns as sparse `(row, value)` lists; panics on a
    /// non-integer entry.
    fn integer_columns(&self) -> Vec<Vec<(usize, BigInt)>> {
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .filter(|&i| !self.get(i, j).is_zero())
                    .map(|i| {
                        let v = self.get(i, j);
                        assert!(v.is_integer(), "integral action expected");
                        (i, v.to_integer())
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// One vector of the monomial basis of a summand of `W`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisVector {
    /// `e^d` in `S^k`, by multidegree.
    Sym(Vec<u32>),
    /// `e_{i1} ^ .. ^ e_{ik}` in `Λ^k`, by increasing zero-based indices.
    Ext(Vec<usize>),
}

impl BasisVector {
    fn weight(&self, n: usize) -> Vec<u32> {
        match self {
            BasisVector::Sym(d) => d.clone(),
            BasisVector::Ext(s) => {
                let mut w = vec![0; n];
                for &i in s {
                    w[i] = 1;
                }
                w
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    /// Which copy of which summand the vector lives in.
    pub summand: usize,
    pub vector: BasisVector,
}

/// `W` with an explicit basis and the `gl(n)` action on it.
#[derive(Clone, Debug)]
pub struct ExplicitModule {
    n: usize,
    elements: Vec<ModuleElement>,
    index: HashMap<ModuleElement, usize>,
}

impl ExplicitModule {
    /// Irreducible terms are accepted when they are a symmetric or exterior
    /// power in disguise.
    pub fn new(spec: &ModuleSpec) -> Result<Self> {
        let n = spec.n();
        let mut elements = Vec::new();
        let mut summand = 0;
        for (kind, mult) in spec.terms() {
            let vectors: Vec<BasisVector> = match kind {
                TermKind::Sym(k) => sym_vectors(n, *k),
                TermKind::Ext(k) => ext_vectors(n, *k)?,
                TermKind::Irr(lambda) => {
                    let parts = lambda.trimmed();
                    let parts = parts.parts();
                    if parts.len() <= 1 {
                        sym_vectors(n, parts.first().copied().unwrap_or(0))
                    } else if parts.iter().all(|&p| p == 1) {
                        ext_vectors(n, parts.len() as u32)?
                    } else {
                        return Err(Error::NoExplicitBasis(parts.to_vec()));
                    }
                }
            };
            for _ in 0..*mult {
                elements.extend(vectors.iter().cloned().map(|vector| ModuleElement { summand, vector }));
                summand += 1;
            }
        }
        Ok(Self::from_elements(n, elements))
    }

    /// `S^k C^n` in the order of `basis`.
    pub fn symmetric_power(basis: &SymBasis) -> Self {
        let elements = basis
            .elements()
            .iter()
            .map(|m| ModuleElement { summand: 0, vector: BasisVector::Sym(m.multidegree().to_vec()) })
            .collect();
        Self::from_elements(basis.n(), elements)
    }

    fn from_elements(n: usize, elements: Vec<ModuleElement>) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        ExplicitModule { n, elements, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    /// `E_ij` (`e_j -> e_i`) acting on the basis.
    pub fn gl_action(&self, i: usize, j: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim(), self.dim());
        for (col, el) in self.elements.iter().enumerate() {
            let image = match &el.vector {
                BasisVector::Sym(d) => {
                    if d[j] == 0 {
                        continue;
                    }
                    let mut e = d.clone();
                    e[j] -= 1;
                    e[i] += 1;
                    (BasisVector::Sym(e), BigInt::from(d[j]))
                }
                BasisVector::Ext(s) => {
                    let Some(pos) = s.iter().position(|&x| x == j) else { continue };
                    if i == j {
                        (BasisVector::Ext(s.clone()), BigInt::one())
                    } else if s.contains(&i) {
                        continue;
                    } else {
                        let mut e = s.clone();
                        e[pos] = i;
                        let inversions = e.iter().filter(|&&x| (x < i) != (x < j) && x != i).count();
                        e.sort_unstable();
                        let sign = if inversions % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                        (BasisVector::Ext(e), sign)
                    }
                }
            };
            let row = self.index[&ModuleElement { summand: el.summand, vector: image.0 }];
            m.set(row, col, BigRational::from_integer(image.1));
        }
        m
    }

    /// Image of `X ∈ gl(n)` on `W`.
    pub fn represent(&self, x: &ExactMatrix) -> ExactMatrix {
        assert_eq!((x.rows(), x.cols()), (self.n, self.n), "need an n x n matrix");
        let mut out = ExactMatrix::zeros(self.dim(), self.dim());
        for i in 0..self.n {
            for j in 0..self.n {
                let c = x.get(i, j);
                if !c.is_zero() {
                    out = out.add(&self.gl_action(i, j).scale(c));
                }
            }
        }
        out
    }

    /// Eigenvalue of the diagonal matrix `diag(h)` on each basis vector.
    fn diagonal_lie_eigenvalues(&self, h: &[BigInt]) -> Vec<BigInt> {
        self.elements.iter().map(|e| e.vector.weight(self.n).iter().zip(h).map(|(&w, x)| x * w).sum()).collect()
    }

    /// Eigenvalue of the diagonal group element `diag(s)` on each basis
    /// vector.
    fn diagonal_group_eigenvalues(&self, s: &[BigInt]) -> Vec<BigInt> {
        self.elements
            .iter()
            .map(|e| e.vector.weight(self.n).iter().zip(s).fold(BigInt::one(), |acc, (&w, x)| acc * x.pow(w)))
            .collect()
    }
}

fn sym_vectors(n: usize, k: u32) -> Vec<BasisVector> {
    weights_sym(n, k).weights.into_iter().map(BasisVector::Sym).collect()
}

fn ext_vectors(n: usize, k: u32) -> Result<Vec<BasisVector>> {
    Ok(weights_ext(n, k)?
        .weights
        .into_iter()
        .map(|w| BasisVector::Ext((0..n).filter(|&i| w[i] == 1).collect()))
        .collect())
}

/// Generators for the identity component's Lie algebra, plus diagonal group
/// elements for the remaining components.
#[derive(Clone, Debug)]
pub struct GroupGenerators {
    pub group: GroupId,
    /// A basis of the Lie algebra (as `n x n` matrices).
    pub basis: Vec<ExactMatrix>,
    /// A subset that generates the Lie algebra under brackets.
    pub generating: Vec<ExactMatrix>,
    /// Diagonal group elements needed beyond the identity component.
    pub components: Vec<ExactMatrix>,
}

/// `J = [[0, I], [-I, 0]]` on `C^{2d}`.
pub fn symplectic_form(n: usize) -> ExactMatrix {
    let d = n / 2;
    let mut j = ExactMatrix::zeros(n, n);
    for i in 0..d {
        j.set(i, i + d, BigRational::one());
        j.set(i + d, i, -BigRational::one());
    }
    j
}

pub fn group_generators(group: GroupId) -> GroupGenerators {
    let n = group.n();
    let e = |i, j| ExactMatrix::unit(n, i, j);
    let mut basis = Vec::new();
    let mut generating = Vec::new();
    let mut components = Vec::new();
    match group.family() {
        GroupFamily::Sl => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        basis.push(e(i, j));
                    }
                }
            }
            for i in 0..n.saturating_sub(1) {
                basis.push(e(i, i).sub(&e(i + 1, i + 1)));
                generating.push(e(i, i + 1));
                generating.push(e(i + 1, i));
                generating.push(e(i, i).sub(&e(i + 1, i + 1)));
            }
        }
        GroupFamily::O | GroupFamily::So => {
            for i in 0..n {
                for j in i + 1..n {
                    basis.push(e(i, j).sub(&e(j, i)));
                }
            }
            for i in 0..n.saturating_sub(1) {
                generating.push(e(i, i + 1).sub(&e(i + 1, i)));
            }
            if group.family() == GroupFamily::O {
                let mut r = ExactMatrix::identity(n);
                r.set(0, 0, -BigRational::one());
                components.push(r);
            }
        }
        GroupFamily::Sp => {
            let d = n / 2;
            for i in 0..d {
                for j in 0..d {
                    basis.push(e(i, j).sub(&e(j + d, i + d)));
                }
            }
            for i in 0..d {
                for j in i..d {
                    basis.push(e(i, j + d).add(&e(j, i + d)));
                    basis.push(e(i + d, j).add(&e(j + d, i)));
                }
            }
            generating = basis.clone();
        }
    }
    GroupGenerators { group, basis, generating, components }
}

/// Lie algebra membership test for the defining conditions of each family.
pub fn in_lie_algebra(x: &ExactMatrix, group: GroupId) -> bool {
    match group.family() {
        GroupFamily::Sl => x.trace().is_zero(),
        GroupFamily::O | GroupFamily::So => x.add(&x.transpose()).is_zero(),
        GroupFamily::Sp => {
            let j = symplectic_form(group.n());
            x.transpose().mul(&j).add(&j.mul(x)).is_zero()
        }
    }
}

/// Dimension of the span of a set of matrices.
pub fn span_dimension(mats: &[ExactMatrix]) -> usize {
    let mut ech = Echelon::default();
    for m in mats {
        let den = m.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let row: Vec<(usize, BigInt)> = m
            .data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, (x * BigRational::from_integer(den.clone())).to_integer()))
            .collect();
        ech.insert(row);
    }
    ech.rank()
}

/// Dimension of the Lie algebra generated by `gens` under brackets.
pub fn generated_dimension(gens: &[ExactMatrix]) -> usize {
    let mut span: Vec<ExactMatrix> = Vec::new();
    let mut frontier: Vec<ExactMatrix> = gens.to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in frontier {
            let before = span_dimension(&span);
            span.push(m.clone());
            if span_dimension(&span) == before {
                span.pop();
                continue;
            }
            next.push(m);
        }
        let mut brackets = Vec::new();
        for a in &next {
            for b in gens {
                brackets.push(a.commutator(b));
            }
        }
        frontier = brackets;
    }
    span_dimension(&span)
}

/// Row-echelon accumulator over the integers; each stored row is primitive
/// with a distinct leading column.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, Vec<(usize, BigInt)>>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a sparse row sorted by column; returns whether the rank grew.
    fn insert(&mut self, mut row: Vec<(usize, BigInt)>) -> bool {
        row.sort_by_key(|&(c, _)| c);
        make_primitive(&mut row);
        while let Some((lead, a)) = row.first().cloned() {
            let Some(pivot) = self.pivots.get(&lead) else {
                self.pivots.insert(lead, row);
                return true;
            };
            let (_, b) = &pivot[0];
            let g = a.gcd(b);
            row = combine(&(b / &g), &row, &(&a / &g), pivot);
            make_primitive(&mut row);
        }
        false
    }
}

/// `s * x - t * y` for sorted sparse rows.
fn combine(s: &BigInt, x: &[(usize, BigInt)], t: &BigInt, y: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map(|e| e.0);
        let cy = y.get(j).map(|e| e.0);
        let (col, v) = match (cx, cy) {
            (Some(a), Some(b)) if a == b => {
                i += 1;
                j += 1;
                (a, s * &x[i - 1].1 - t * &y[j - 1].1)
            }
            (Some(a), Some(b)) if a < b => {
                i += 1;
                (a, s * &x[i - 1].1)
            }
            (Some(a), None) => {
                i += 1;
                (a, s * &x[i - 1].1)
            }
            (_, Some(b)) => {
                j += 1;
                (b, -(t * &y[j - 1].1))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

fn make_primitive(row: &mut [(usize, BigInt)]) {
    let g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Increasing `p`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, p: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur: Vec<u16> = (0..p as u16).collect();
    if p > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..p).rev().find(|&i| (cur[i] as usize) < n - p + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..p {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `dim Λ^p(W)^G` by linear algebra over `Λ^p(W)`.
pub fn invariant_dimension(spec: &ModuleSpec, p: usize, group: GroupId) -> Result<usize> {
    if group.n() != spec.n() {
        return Err(Error::DimensionMismatch { left: group.n(), right: spec.n() });
    }
    let module = ExplicitModule::new(spec)?;
    invariant_dimension_in(&module, p, group)
}

pub fn invariant_dimension_in(module: &ExplicitModule, p: usize, group: GroupId) -> Result<usize> {
    let size = binomial(module.dim(), p);
    if size > ORACLE_LIMIT as u128 {
        return Err(Error::OracleTooLarge { p, size, limit: ORACLE_LIMIT });
    }
    let gens = group_generators(group);
    let wedges = combinations(module.dim(), p);

    // Diagonal generators and group elements cut down the candidate columns
    // directly: an invariant lies in their joint eigenspace.
    let mut active: Vec<bool> = vec![true; wedges.len()];
    let mut off_diagonal = Vec::new();
    for x in &gens.generating {
        if x.is_diagonal() {
            let h: Vec<BigInt> = (0..x.rows()).map(|i| x.get(i, i).to_integer()).collect();
            let ev = module.diagonal_lie_eigenvalues(&h);
            for (w, a) in wedges.iter().zip(active.iter_mut()) {
                let total: BigInt = w.iter().map(|&i| &ev[i as usize]).sum();
                *a &= total.is_zero();
            }
        } else {
            off_diagonal.push(module.represent(x));
        }
    }
    for g in &gens.components {
        let s: Vec<BigInt> = (0..g.rows()).map(|i| g.get(i, i).to_integer()).collect();
        let ev = module.diagonal_group_eigenvalues(&s);
        for (w, a) in wedges.iter().zip(active.iter_mut()) {
            let total: BigInt = w.iter().map(|&i| &ev[i as usize]).product();
            *a &= total.is_one();
        }
    }
    let columns: Vec<usize> = (0..wedges.len()).filter(|&c| active[c]).collect();

    let mut ech = Echelon::default();
    for x in &off_diagonal {
        let cols = x.integer_columns();
        let mut rows: BTreeMap<Vec<u16>, Vec<(usize, BigInt)>> = BTreeMap::new();
        for (slot, &c) in columns.iter().enumerate() {
            let w = &wedges[c];
            for r in 0..w.len() {
                for (target, value) in &cols[w[r] as usize] {
                    let mut image = w.clone();
                    image[r] = *target as u16;
                    if let Some(even) = sort_with_sign(&mut image) {
                        let v = if even { value.clone() } else { -value.clone() };
                        rows.entry(image).or_default().push((slot, v));
                    }
                }
            }
        }
        for (_, mut row) in rows {
            row.sort_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
            for (c, v) in row {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            if !merged.is_empty() {
                ech.insert(merged);
            }
        }
    }
    Ok(columns.len() - ech.rank())
}

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

/// Invariant dimensions for each `p` in `degrees`, or the first error.
pub fn invariant_dimensions(
    spec: &ModuleSpec,
    group: GroupId,
    degrees: impl IntoIterator<Item = usize>,
) -> Result<Vec<(usize, usize)>> {
    let module = ExplicitModule::new(spec)?;
    if group.n() != spec.n() {
        return Err(Error::DimensionMismatch { left: group.n(), right: spec.n() });
    }
    degrees.into_iter().map(|p| Ok((p, invariant_dimension_in(&module, p, group)?))).collect()
}

/// Degrees `p` with `dim Λ^p(W)` within the oracle limit.
pub fn feasible_degrees(dim: usize) -> Vec<usize> {
    (0..=dim).filter(|&p| binomial(dim, p) <= ORACLE_LIMIT as u128).collect()
}

/// Exact value as `i64` where it is an integer that fits.
pub fn small(x: &BigRational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}
