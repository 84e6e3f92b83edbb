//! Sparse multivariate polynomials in `x1..xn` and a grading variable `t`
//! with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u32; 6]>;

/// `x1^e1 ... xn^en t^d`.
///
/// Ordered by ascending `t`-degree, then ascending total degree, then
/// descending lexicographic order of the exponents, so `x1^3 t` sorts
/// before `x2^3 t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exponents,
    tdeg: u32,
}

impl Monomial {
    pub fn new(exps: &[u32], tdeg: u32) -> Self {
        Monomial { exps: Exponents::from_slice(exps), tdeg }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: smallvec::smallvec![0; nvars], tdeg: 0 }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn tdeg(&self) -> u32 {
        self.tdeg
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(), tdeg: self.tdeg + other.tdeg }
    }

    /// Multiplies by `x^exps t^tdeg` in place.
    fn shift(&mut self, exps: &[u32], tdeg: u32) {
        for (e, s) in self.exps.iter_mut().zip(exps) {
            *e += s;
        }
        self.tdeg += tdeg;
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.exps.windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.exps.windows(2).all(|w| w[0] >= w[1])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tdeg
            .cmp(&other.tdeg)
            .then_with(|| self.total_degree().cmp(&other.total_degree()))
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A single `(exponents, t-degree, coefficient)` entry, as enumerated by
/// [`SparsePoly::coefficient_rules`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientRule {
    pub exponents: Vec<u32>,
    pub tdeg: u32,
    pub coeff: BigInt,
}

/// How [`product`] combines its factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductOrder {
    LeftFold,
    Balanced,
}

/// Exact sparse polynomial. No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    terms: FxHashMap<Monomial, BigInt>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly { nvars, terms: FxHashMap::default() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::term(Monomial::one(nvars), BigInt::one())
    }

    /// A single term. `mon` fixes the variable count.
    pub fn term(mon: Monomial, coeff: BigInt) -> Self {
        let mut p = Self::zero(mon.nvars());
        if !coeff.is_zero() {
            p.terms.insert(mon, coeff);
        }
        p
    }

    /// `x_index` (zero-based), with `t`-degree zero.
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::VariableOutOfRange { index, nvars });
        }
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Ok(Self::term(Monomial::new(&exps, 0), BigInt::one()))
    }

    /// Sums duplicate monomials and drops zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (mon, coeff) in terms {
            if mon.nvars() != nvars {
                return Err(Error::DimensionMismatch { left: nvars, right: mon.nvars() });
            }
            p.add_term(mon, &coeff);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Unordered term iterator.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in [`Monomial`] order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn coeff(&self, mon: &Monomial) -> BigInt {
        self.terms.get(mon).cloned().unwrap_or_default()
    }

    pub fn max_tdeg(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::tdeg).max()
    }

    fn add_term(&mut self, mon: Monomial, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mon) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
        }
    }

    fn check_same(&self, other: &SparsePoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_same(other)?;
        let (mut acc, rest) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &rest.terms {
            acc.add_term(m.clone(), c);
        }
        Ok(acc)
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, factor: &BigInt) -> SparsePoly {
        if factor.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect() }
    }

    /// Divides every coefficient by `divisor`, failing if any division is inexact.
    pub fn div_exact(&self, divisor: &BigInt) -> Result<SparsePoly> {
        let mut terms = FxHashMap::default();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(divisor);
            if !r.is_zero() {
                return Err(Error::InexactDivision { divisor: divisor.to_string() });
            }
            terms.insert(m.clone(), q);
        }
        Ok(SparsePoly { nvars: self.nvars, terms })
    }

    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        out.terms.reserve(self.len().saturating_mul(other.len()).min(1 << 20));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    /// `self * (1 + x^exps t^tdeg)`.
    pub fn mul_binomial(&self, exps: &[u32], tdeg: u32) -> Result<SparsePoly> {
        if exps.len() != self.nvars {
            return Err(Error::DimensionMismatch { left: self.nvars, right: exps.len() });
        }
        let mut out = self.clone();
        out.terms.reserve(self.len());
        for (m, c) in &self.terms {
            let mut shifted = m.clone();
            shifted.shift(exps, tdeg);
            out.add_term(shifted, c);
        }
        Ok(out)
    }

    /// `self * (x_i - x_j)`.
    pub fn mul_difference(&self, i: usize, j: usize) -> Result<SparsePoly> {
        for index in [i, j] {
            if index >= self.nvars {
                return Err(Error::VariableOutOfRange { index, nvars: self.nvars });
            }
        }
        let mut out = Self::zero(self.nvars);
        out.terms.reserve(2 * self.len());
        for (m, c) in &self.terms {
            let mut up = m.clone();
            up.exps[i] += 1;
            out.add_term(up, c);
            let mut down = m.clone();
            down.exps[j] += 1;
            out.add_term(down, &-c);
        }
        Ok(out)
    }

    /// Sets `x_var_index` to `value` ∈ {-1, 0, 1}. The variable keeps its
    /// slot with exponent zero, so the variable count is unchanged.
    /// Substituting 0 drops every term with a positive exponent in that slot.
    pub fn substitute(&self, var_index: usize, value: i8) -> Result<SparsePoly> {
        if var_index >= self.nvars {
            return Err(Error::VariableOutOfRange { index: var_index, nvars: self.nvars });
        }
        assert!((-1..=1).contains(&value), "substitution value must be -1, 0 or 1");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[var_index];
            if value == 0 && e > 0 {
                continue;
            }
            let mut reduced = m.clone();
            reduced.exps[var_index] = 0;
            if value == -1 && e % 2 == 1 {
                out.add_term(reduced, &-c);
            } else {
                out.add_term(reduced, c);
            }
        }
        Ok(out)
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Result<SparsePoly> {
        for index in [i, j] {
            if index >= self.nvars {
                return Err(Error::VariableOutOfRange { index, nvars: self.nvars });
            }
        }
        Ok(SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut s = m.clone();
                    s.exps.swap(i, j);
                    (s, c.clone())
                })
                .collect(),
        })
    }

    /// Checks invariance under every adjacent transposition of variables.
    pub fn check_symmetric(&self) -> Result<()> {
        for i in 0..self.nvars.saturating_sub(1) {
            for (m, c) in &self.terms {
                let mut s = m.clone();
                s.exps.swap(i, i + 1);
                if self.terms.get(&s) != Some(c) {
                    return Err(Error::NotSymmetric(i + 1, i + 2));
                }
            }
        }
        Ok(())
    }

    pub fn sum_coefficients(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Splits by `t`-degree; each slice keeps its `t` exponent.
    pub fn t_slices(&self) -> BTreeMap<u32, SparsePoly> {
        let mut out: BTreeMap<u32, SparsePoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.tdeg).or_insert_with(|| Self::zero(self.nvars)).terms.insert(m.clone(), c.clone());
        }
        out
    }

    /// Coefficients of `t^d` after setting every `x` to 1.
    pub fn t_profile(&self) -> BTreeMap<u32, BigInt> {
        let mut out: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (m, c) in &self.terms {
            *out.entry(m.tdeg).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Lossless, sorted enumeration of the terms.
    pub fn coefficient_rules(&self) -> Vec<CoefficientRule> {
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| CoefficientRule { exponents: m.exps.to_vec(), tdeg: m.tdeg, coeff: c.clone() })
            .collect()
    }

    pub fn from_coefficient_rules(nvars: usize, rules: &[CoefficientRule]) -> Result<SparsePoly> {
        Self::from_terms(nvars, rules.iter().map(|r| (Monomial::new(&r.exponents, r.tdeg), r.coeff.clone())))
    }

    /// Renders with variables named `{var}1 .. {var}n`.
    pub fn display<'a>(&'a self, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, var }
    }
}

/// Product of `factors`; both orders produce identical term maps.
pub fn product(nvars: usize, factors: &[SparsePoly], order: ProductOrder) -> Result<SparsePoly> {
    match order {
        ProductOrder::LeftFold => factors.iter().try_fold(SparsePoly::one(nvars), |acc, f| acc.mul(f)),
        ProductOrder::Balanced => balanced(nvars, factors),
    }
}

fn balanced(nvars: usize, factors: &[SparsePoly]) -> Result<SparsePoly> {
    match factors {
        [] => Ok(SparsePoly::one(nvars)),
        [single] => {
            if single.nvars != nvars {
                return Err(Error::DimensionMismatch { left: nvars, right: single.nvars });
            }
            Ok(single.clone())
        }
        _ => {
            let (left, right) = factors.split_at(factors.len() / 2);
            balanced(nvars, left)?.mul(&balanced(nvars, right)?)
        }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a SparsePoly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (index, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (index, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let mut factors = Vec::new();
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("{}{}", self.var, i + 1)),
                    _ => factors.push(format!("{}{}^{}", self.var, i + 1, e)),
                }
            }
            match m.tdeg {
                0 => {}
                1 => factors.push("t".to_string()),
                d => factors.push(format!("t^{d}")),
            }
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, exps: &[u32], tdeg: u32, c: i64) -> SparsePoly {
        assert_eq!(exps.len(), n);
        SparsePoly::term(Monomial::new(exps, tdeg), BigInt::from(c))
    }

    #[test]
    fn additive_inverse_is_empty() {
        let p = x(2, &[1, 0], 0, 1);
        assert!(p.add(&p.neg()).unwrap().is_zero());
    }

    #[test]
    fn add_combines_like_terms() {
        let a = x(2, &[1, 0], 0, 1).add(&x(2, &[0, 1], 0, 1)).unwrap();
        let b = x(2, &[0, 1], 0, 1);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.coeff(&Monomial::new(&[0, 1], 0)), BigInt::from(2));
        assert_eq!(sum.len(), 2);
        let disjoint = SparsePoly::one(1).add(&x(1, &[3], 1, 1)).unwrap();
        assert_eq!(disjoint.display("x").to_string(), "1 + x1^3*t");
    }

    #[test]
    fn mismatched_variable_counts_error() {
        let a = SparsePoly::one(2);
        let b = SparsePoly::one(3);
        assert_eq!(a.add(&b), Err(Error::DimensionMismatch { left: 2, right: 3 }));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn difference_of_squares() {
        let x1 = SparsePoly::var(2, 0).unwrap();
        let x2 = SparsePoly::var(2, 1).unwrap();
        let p = x1.add(&x2).unwrap().mul(&x1.sub(&x2).unwrap()).unwrap();
        assert_eq!(p.display("x").to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn binomial_partial_product() {
        let p = SparsePoly::one(2).mul_binomial(&[3, 0], 1).unwrap().mul_binomial(&[0, 3], 1).unwrap();
        assert_eq!(p.display("x").to_string(), "1 + x1^3*t + x2^3*t + x1^3*x2^3*t^2");
        let p2 = p.mul(&SparsePoly::one(2)).unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn substitution_examples() {
        let p = x(2, &[2, 1], 0, 1).add(&x(2, &[1, 0], 0, 1)).unwrap();
        let q = p.substitute(1, 1).unwrap();
        assert_eq!(q, x(2, &[2, 0], 0, 1).add(&x(2, &[1, 0], 0, 1)).unwrap());

        assert_eq!(x(1, &[3], 1, 1).substitute(0, -1).unwrap(), x(1, &[0], 1, -1));

        let r = SparsePoly::one(2).add(&x(2, &[1, 1], 1, 1)).unwrap();
        assert_eq!(r.substitute(0, 0).unwrap(), SparsePoly::one(2));
        assert!(r.substitute(2, 0).is_err());
    }

    #[test]
    fn coefficient_rules_are_sorted() {
        let p = SparsePoly::one(2).add(&x(2, &[0, 1], 0, 2)).unwrap();
        let rules = p.coefficient_rules();
        assert_eq!(rules.len(), 2);
        assert_eq!(rules[0].exponents, vec![0, 0]);
        assert_eq!(rules[1].coeff, BigInt::from(2));
        assert_eq!(SparsePoly::from_coefficient_rules(2, &rules).unwrap(), p);
    }

    #[test]
    fn symmetry_check() {
        let x1 = SparsePoly::var(3, 0).unwrap();
        assert_eq!(x1.check_symmetric(), Err(Error::NotSymmetric(1, 2)));
        let e1 = (0..3).map(|i| SparsePoly::var(3, i).unwrap()).reduce(|a, b| a.add(&b).unwrap()).unwrap();
        assert!(e1.check_symmetric().is_ok());
    }

    #[test]
    fn exact_division() {
        let p = x(1, &[1], 0, 4).add(&SparsePoly::one(1).scale(&BigInt::from(2))).unwrap();
        assert_eq!(p.div_exact(&BigInt::from(2)).unwrap(), x(1, &[1], 0, 2).add(&SparsePoly::one(1)).unwrap());
        assert!(p.div_exact(&BigInt::from(4)).is_err());
    }
}
