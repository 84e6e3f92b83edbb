//! Formal descriptions of polynomial GL(n)-modules, their weights, and the
//! bigraded Hilbert series of their exterior algebras.
//!
//! A module is written as a sum of terms `S<k>` (symmetric power),
//! `L<k>` (exterior power) and `V(λ1,..,λm)` (irreducible with highest
//! weight λ), each with an optional `m*` multiplier: `2*S2+L2`.
//!
//! Weight lists are always in descending lexicographic order, e.g.
//! `S^3 C^2` gives `(3,0), (2,1), (1,2), (0,3)`.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::partition::{weyl_dimension, Partition};
use crate::poly::{self, ProductOrder, SparsePoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermKind {
    Sym(u32),
    Ext(u32),
    Irr(Partition),
}

impl fmt::Display for TermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermKind::Sym(k) => write!(f, "S{k}"),
            TermKind::Ext(k) => write!(f, "L{k}"),
            TermKind::Irr(lambda) => {
                let parts: Vec<String> = lambda.trimmed().parts().iter().map(u32::to_string).collect();
                write!(f, "V({})", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    n: usize,
    terms: Vec<(TermKind, u32)>,
}

impl ModuleSpec {
    /// Validates each term against the rank and merges repeated kinds.
    pub fn new(n: usize, terms: Vec<(TermKind, u32)>) -> Result<Self> {
        let mut merged: Vec<(TermKind, u32)> = Vec::new();
        for (kind, mult) in terms {
            let kind = validate_kind(kind, n)?;
            if mult == 0 {
                continue;
            }
            match merged.iter_mut().find(|(k, _)| *k == kind) {
                Some((_, m)) => *m += mult,
                None => merged.push((kind, mult)),
            }
        }
        Ok(ModuleSpec { n, terms: merged })
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        parse_module_spec(text, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(TermKind, u32)] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.weights().len()
    }

    /// Concatenated term weights; a multiplier repeats the term's list.
    pub fn weights(&self) -> WeightMultiset {
        let mut weights = Vec::new();
        for (kind, mult) in &self.terms {
            let term = match kind {
                TermKind::Sym(k) => weights_sym(self.n, *k),
                TermKind::Ext(k) => weights_ext(self.n, *k).expect("validated at construction"),
                TermKind::Irr(lambda) => weights_irr(self.n, lambda).expect("validated at construction"),
            };
            for _ in 0..*mult {
                weights.extend(term.weights.iter().cloned());
            }
        }
        WeightMultiset { n: self.n, weights }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (kind, mult)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if *mult > 1 {
                write!(f, "{mult}*")?;
            }
            write!(f, "{kind}")?;
        }
        Ok(())
    }
}

fn validate_kind(kind: TermKind, n: usize) -> Result<TermKind> {
    match kind {
        TermKind::Sym(0) | TermKind::Ext(0) => {
            Err(Error::Parse { position: 0, message: "degree must be at least 1".into() })
        }
        TermKind::Ext(k) if k as usize > n => Err(Error::ExteriorPowerTooLarge { k, n }),
        TermKind::Irr(lambda) => Ok(TermKind::Irr(Partition::with_rank(lambda.parts().to_vec(), n)?.trimmed())),
        other => Ok(other),
    }
}

/// Weights `α_1, .., α_p` of a module, one per weight basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMultiset {
    pub n: usize,
    pub weights: Vec<Vec<u32>>,
}

impl WeightMultiset {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Character `Σ_j x^{α_j}` as a polynomial with `t`-degree zero.
    pub fn character(&self) -> SparsePoly {
        SparsePoly::from_terms(
            self.n,
            self.weights.iter().map(|w| (poly::Monomial::new(w, 0), num_bigint::BigInt::from(1))),
        )
        .expect("weights have n entries")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }

    fn term(&mut self, n: usize) -> Result<(TermKind, u32)> {
        let mult = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let m = self.number()?;
            if !self.eat(b'*') {
                return self.err("expected `*` after multiplier");
            }
            m
        } else {
            1
        };
        self.skip_ws();
        let start = self.pos;
        let kind = match self.peek() {
            Some(b'S') | Some(b's') => {
                self.pos += 1;
                TermKind::Sym(self.number()?)
            }
            Some(b'L') | Some(b'l') => {
                self.pos += 1;
                TermKind::Ext(self.number()?)
            }
            Some(b'V') | Some(b'v') => {
                self.pos += 1;
                if !self.eat(b'(') {
                    return self.err("expected `(` after V");
                }
                let mut parts = vec![self.number()?];
                while self.eat(b',') {
                    parts.push(self.number()?);
                }
                if !self.eat(b')') {
                    return self.err("expected `,` or `)`");
                }
                TermKind::Irr(
                    Partition::new(parts).map_err(|e| Error::Parse { position: start, message: e.to_string() })?,
                )
            }
            Some(_) => return self.err("expected S<k>, L<k> or V(..)"),
            None => return self.err("unexpected end of input"),
        };
        let kind = validate_kind(kind, n).map_err(|e| match e {
            Error::Parse { message, .. } => Error::Parse { position: start, message },
            other => other,
        })?;
        Ok((kind, mult))
    }
}

pub fn parse_module_spec(text: &str, n: usize) -> Result<ModuleSpec> {
    if n == 0 {
        return Err(Error::Parse { position: 0, message: "rank n must be at least 1".into() });
    }
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    let mut terms = vec![parser.term(n)?];
    while parser.eat(b'+') {
        terms.push(parser.term(n)?);
    }
    if parser.peek().is_some() {
        return parser.err("unexpected trailing input");
    }
    ModuleSpec::new(n, terms)
}

/// Compositions of `k` into `n` parts, descending lexicographic.
pub fn weights_sym(n: usize, k: u32) -> WeightMultiset {
    fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=left).rev() {
            prefix.push(first);
            rec(prefix, left - first, slots - 1, out);
            prefix.pop();
        }
    }
    let mut weights = Vec::new();
    if n > 0 {
        rec(&mut Vec::with_capacity(n), k, n, &mut weights);
    }
    WeightMultiset { n, weights }
}

/// 0/1 vectors with exactly `k` ones, descending lexicographic.
pub fn weights_ext(n: usize, k: u32) -> Result<WeightMultiset> {
    if k as usize > n {
        return Err(Error::ExteriorPowerTooLarge { k, n });
    }
    let mut weights: Vec<Vec<u32>> =
        weights_sym(n, k).weights.into_iter().filter(|w| w.iter().all(|&e| e <= 1)).collect();
    weights.sort_unstable_by(|a, b| b.cmp(a));
    Ok(WeightMultiset { n, weights })
}

/// Content vectors of the semistandard tableaux of shape `lambda` with
/// entries in `1..=n`, sorted descending (repeated weights stay adjacent).
pub fn weights_irr(n: usize, lambda: &Partition) -> Result<WeightMultiset> {
    let shape = Partition::with_rank(lambda.parts().to_vec(), n)?.trimmed();
    let rows: Vec<usize> = shape.parts().iter().map(|&p| p as usize).collect();
    let cells: Vec<(usize, usize)> =
        rows.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut filling: Vec<Vec<u32>> = rows.iter().map(|&len| vec![0; len]).collect();
    let mut content = vec![0u32; n];
    let mut weights = Vec::new();
    fill(&cells, 0, n as u32, &mut filling, &mut content, &mut weights);
    weights.sort_unstable_by(|a, b| b.cmp(a));
    Ok(WeightMultiset { n, weights })
}

fn fill(
    cells: &[(usize, usize)],
    at: usize,
    n: u32,
    filling: &mut [Vec<u32>],
    content: &mut [u32],
    out: &mut Vec<Vec<u32>>,
) {
    let Some(&(r, c)) = cells.get(at) else {
        out.push(content.to_vec());
        return;
    };
    let left = if c > 0 { filling[r][c - 1] } else { 1 };
    let above = if r > 0 { filling[r - 1][c] + 1 } else { 1 };
    // An entry in row r is at least r + 1; the bound also keeps columns inside 1..=n.
    for v in left.max(above)..=n {
        filling[r][c] = v;
        content[v as usize - 1] += 1;
        fill(cells, at + 1, n, filling, content, out);
        content[v as usize - 1] -= 1;
    }
}

/// `∏_j (1 + x^{α_j} t)`, expanded by folding in one binomial at a time.
pub fn exterior_hilbert_series(w: &WeightMultiset) -> SparsePoly {
    w.weights
        .iter()
        .fold(SparsePoly::one(w.n), |acc, alpha| acc.mul_binomial(alpha, 1).expect("weight length equals n"))
}

/// Same product through [`poly::product`]; used to cross-check the fold.
pub fn exterior_hilbert_series_with(w: &WeightMultiset, order: ProductOrder) -> SparsePoly {
    let factors: Vec<SparsePoly> = w
        .weights
        .iter()
        .map(|alpha| SparsePoly::one(w.n).mul_binomial(alpha, 1).expect("weight length equals n"))
        .collect();
    poly::product(w.n, &factors, order).expect("factors share n")
}

/// Independent dimension count from the Weyl formula.
pub fn module_dimension(spec: &ModuleSpec) -> BigUint {
    let n = spec.n();
    spec.terms()
        .iter()
        .map(|(kind, mult)| {
            let lambda = match kind {
                TermKind::Sym(k) => Partition::new(vec![*k]).expect("single part"),
                TermKind::Ext(k) => Partition::new(vec![1; *k as usize]).expect("constant parts"),
                TermKind::Irr(l) => l.clone(),
            };
            weyl_dimension(&lambda, n) * *mult
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn parses_simple_terms() {
        let s = parse_module_spec("S3", 2).unwrap();
        assert_eq!(s.terms(), &[(TermKind::Sym(3), 1)]);
        let l = parse_module_spec("L3", 5).unwrap();
        assert_eq!(l.terms(), &[(TermKind::Ext(3), 1)]);
        let sum = parse_module_spec(" 2*S2 + L2 + S2", 3).unwrap();
        assert_eq!(sum.terms(), &[(TermKind::Sym(2), 3), (TermKind::Ext(2), 1)]);
        assert_eq!(sum.to_string(), "3*S2+L2");
        let irr = parse_module_spec("V(2,1,0)", 3).unwrap();
        assert_eq!(irr.to_string(), "V(2,1)");
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(parse_module_spec("L3", 2), Err(Error::ExteriorPowerTooLarge { k: 3, n: 2 }));
        assert!(matches!(parse_module_spec("S", 2), Err(Error::Parse { position: 1, .. })));
        assert!(matches!(parse_module_spec("S2+", 2), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_module_spec("S2 x", 2), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_module_spec("2S2", 2), Err(Error::Parse { position: 1, .. })));
        assert!(matches!(parse_module_spec("V(1,2)", 2), Err(Error::Parse { position: 0, .. })));
        assert!(parse_module_spec("V(1,1,1)", 2).is_err());
        assert!(parse_module_spec("S0", 2).is_err());
    }

    #[test]
    fn symmetric_weights() {
        let w = weights_sym(2, 3);
        assert_eq!(w.weights, vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        assert_eq!(weights_sym(3, 3).len(), 10);
        assert_eq!(
            weights_sym(4, 1).weights,
            vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]
        );
    }

    #[test]
    fn exterior_weights() {
        assert_eq!(weights_ext(5, 3).unwrap().len(), 10);
        assert_eq!(weights_ext(6, 3).unwrap().len(), 20);
        assert_eq!(weights_ext(4, 4).unwrap().weights, vec![vec![1, 1, 1, 1]]);
        assert!(weights_ext(2, 3).is_err());
    }

    #[test]
    fn irreducible_weights_match_special_shapes() {
        let p = |v: Vec<u32>| Partition::new(v).unwrap();
        assert_eq!(weights_irr(3, &p(vec![1])).unwrap(), weights_sym(3, 1));
        assert_eq!(weights_irr(3, &p(vec![4])).unwrap(), weights_sym(3, 4));
        assert_eq!(weights_irr(5, &p(vec![1, 1, 1])).unwrap(), weights_ext(5, 3).unwrap());
        assert_eq!(weights_irr(3, &p(vec![2, 1])).unwrap().len(), 8);
    }

    #[test]
    fn exterior_series_of_s3() {
        let f = exterior_hilbert_series(&weights_sym(2, 3));
        // x1^3 * x2^3 and x1^2 x2 * x1 x2^2 coincide, so 16 subsets give 15 monomials.
        assert_eq!(f.len(), 15);
        assert_eq!(f.coeff(&poly::Monomial::new(&[3, 3], 2)), BigInt::from(2));
        assert_eq!(f.max_tdeg(), Some(4));
        assert_eq!(f.coeff(&poly::Monomial::new(&[6, 6], 4)), BigInt::from(1));
        let v = exterior_hilbert_series(&weights_sym(2, 1));
        assert_eq!(v.display("x").to_string(), "1 + x1*t + x2*t + x1*x2*t^2");
    }
}
