//! Multiplicity series: the Schur-expansion coefficients of a symmetric
//! function, read off by Vandermonde extraction.
//!
//! For symmetric `f`, multiply by `∏_{i<j}(x_i - x_j)`, keep the terms whose
//! exponents are strictly decreasing, and divide by the staircase
//! `x1^{n-1} x2^{n-2} .. x_{n-1}`. The surviving exponent vectors are the
//! partitions λ and the coefficients are the multiplicities of `S_λ`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::modspec::weights_irr;
use crate::partition::{weyl_dimension, Partition};
use crate::poly::{Monomial, SparsePoly};

/// Map `(t-degree i, λ) -> m_i(λ)`. Multiplicities are signed so the type
/// can hold intermediate results; [`gl_decomposition`] checks positivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicitySeries {
    n: usize,
    entries: BTreeMap<(u32, Partition), BigInt>,
}

/// How the strictly decreasing part of `f · Vandermonde` is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Extraction {
    /// Multiply by each factor `x_i - x_j` in turn, filter at the end.
    #[default]
    FullProduct,
    /// Pair every term of `f` with every term of the expanded Vandermonde
    /// and accumulate only products that land on strictly decreasing
    /// exponents. Gives the same coefficients; the unfiltered product is
    /// never stored.
    Pruned,
}

impl MultiplicitySeries {
    pub fn new(n: usize) -> Self {
        MultiplicitySeries { n, entries: BTreeMap::new() }
    }

    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, u32, BigInt)>,
    {
        let mut m = Self::new(n);
        for (lambda, degree, c) in entries {
            let lambda = Partition::with_rank(lambda.parts().to_vec(), n)?;
            m.add(lambda, degree, c);
        }
        Ok(m)
    }

    fn add(&mut self, lambda: Partition, degree: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry((degree, lambda)) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries ordered by degree, then partition.
    pub fn entries(&self) -> impl Iterator<Item = (&Partition, u32, &BigInt)> {
        self.entries.iter().map(|((d, l), c)| (l, *d, c))
    }

    pub fn get(&self, lambda: &Partition, degree: u32) -> BigInt {
        let key = (degree, lambda.padded(self.n));
        self.entries.get(&key).cloned().unwrap_or_default()
    }

    /// `Σ m_i(λ) x^λ t^i`.
    pub fn to_poly(&self) -> SparsePoly {
        SparsePoly::from_terms(self.n, self.entries.iter().map(|((d, l), c)| (Monomial::new(l.parts(), *d), c.clone())))
            .expect("partitions have n parts")
    }

    /// `Σ m_i(λ) dim V_λ`.
    pub fn total_dimension(&self) -> BigInt {
        self.entries.iter().map(|((_, l), c)| c * BigInt::from(weyl_dimension(l, self.n))).sum()
    }
}

/// `∏_{i<j} (x_i - x_j)` in `n` variables (`n!` terms).
pub fn vandermonde(n: usize) -> SparsePoly {
    let mut v = SparsePoly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            v = v.mul_difference(i, j).expect("indices below n");
        }
    }
    v
}

fn staircase(n: usize) -> Vec<u32> {
    (0..n as u32).rev().collect()
}

/// Multiplicity series of a symmetric `f` in `n` variables.
pub fn multiplicity_series(f: &SparsePoly, n: usize) -> Result<MultiplicitySeries> {
    multiplicity_series_with(f, n, Extraction::default())
}

pub fn multiplicity_series_with(f: &SparsePoly, n: usize, how: Extraction) -> Result<MultiplicitySeries> {
    if f.nvars() != n {
        return Err(Error::DimensionMismatch { left: n, right: f.nvars() });
    }
    f.check_symmetric()?;
    let slices: Vec<SparsePoly> = f.t_slices().into_values().collect();
    let vdm = match how {
        Extraction::Pruned => Some(vandermonde(n)),
        Extraction::FullProduct => None,
    };
    let extract = |slice: &SparsePoly| -> Result<Vec<(Partition, u32, BigInt)>> {
        let kept = match &vdm {
            None => strictly_decreasing_full(slice, n),
            Some(v) => strictly_decreasing_pruned(slice, v),
        };
        divide_staircase(kept, n)
    };

    #[cfg(feature = "parallel")]
    let parts: Vec<Result<Vec<_>>> = {
        use rayon::prelude::*;
        slices.par_iter().map(extract).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Result<Vec<_>>> = slices.iter().map(extract).collect();

    let mut m = MultiplicitySeries::new(n);
    for part in parts {
        for (lambda, degree, c) in part? {
            m.add(lambda, degree, c);
        }
    }
    Ok(m)
}

fn strictly_decreasing_full(slice: &SparsePoly, n: usize) -> Vec<(Monomial, BigInt)> {
    let mut g = slice.clone();
    for i in 0..n {
        for j in i + 1..n {
            g = g.mul_difference(i, j).expect("indices below n");
        }
    }
    g.terms().filter(|(m, _)| m.is_strictly_decreasing()).map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn strictly_decreasing_pruned(slice: &SparsePoly, vdm: &SparsePoly) -> Vec<(Monomial, BigInt)> {
    let vterms: Vec<(&Monomial, &BigInt)> = vdm.terms().collect();
    let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
    for (m, c) in slice.terms() {
        for (v, s) in &vterms {
            let prod = m.mul(v);
            if prod.is_strictly_decreasing() {
                *acc.entry(prod).or_default() += c * *s;
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn divide_staircase(kept: Vec<(Monomial, BigInt)>, n: usize) -> Result<Vec<(Partition, u32, BigInt)>> {
    let delta = staircase(n);
    kept.into_iter()
        .map(|(m, c)| {
            let parts = m
                .exponents()
                .iter()
                .zip(&delta)
                .map(|(&e, &d)| e.checked_sub(d).ok_or(Error::NegativeExponent))
                .collect::<Result<Vec<u32>>>()?;
            let lambda = Partition::new(parts).map_err(|_| Error::NegativeExponent)?;
            Ok((lambda, m.tdeg(), c))
        })
        .collect()
}

/// `M'`: each `(λ, i, c)` becomes `c v1^{λ1-λ2} .. v_{n-1}^{λ_{n-1}-λn} vn^{λn} t^i`.
pub fn to_primed(m: &MultiplicitySeries) -> SparsePoly {
    let n = m.n;
    SparsePoly::from_terms(
        n,
        m.entries.iter().map(|((d, l), c)| {
            let p = l.parts();
            let exps: Vec<u32> = (0..n).map(|i| if i + 1 < n { p[i] - p[i + 1] } else { p[i] }).collect();
            (Monomial::new(&exps, *d), c.clone())
        }),
    )
    .expect("n exponents")
}

/// Inverse of [`to_primed`].
pub fn from_primed(primed: &SparsePoly) -> MultiplicitySeries {
    let n = primed.nvars();
    let mut m = MultiplicitySeries::new(n);
    for (mon, c) in primed.terms() {
        let e = mon.exponents();
        let mut parts = vec![0u32; n];
        let mut running = 0;
        for i in (0..n).rev() {
            running += e[i];
            parts[i] = running;
        }
        m.add(Partition::new(parts).expect("suffix sums decrease"), mon.tdeg(), c.clone());
    }
    m
}

/// GL(n)-irreducible components of one graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeDecomposition {
    pub degree: u32,
    pub components: Vec<(Partition, BigUint)>,
}

/// Per-degree components in ascending partition order. Fails on a negative
/// multiplicity, which means the input was not a polynomial character.
pub fn gl_decomposition(m: &MultiplicitySeries) -> Result<Vec<DegreeDecomposition>> {
    let mut out: Vec<DegreeDecomposition> = Vec::new();
    for ((degree, lambda), c) in &m.entries {
        if c.is_negative() {
            return Err(Error::NegativeMultiplicity {
                partition: lambda.parts().to_vec(),
                degree: *degree,
                multiplicity: c.to_string(),
            });
        }
        let mult = c.magnitude().clone();
        match out.last_mut() {
            Some(d) if d.degree == *degree => d.components.push((lambda.clone(), mult)),
            _ => out.push(DegreeDecomposition { degree: *degree, components: vec![(lambda.clone(), mult)] }),
        }
    }
    Ok(out)
}

/// `Σ m_i(λ) S_λ(x) t^i`, with each Schur polynomial expanded from its
/// semistandard tableaux.
pub fn reconstruct(m: &MultiplicitySeries) -> SparsePoly {
    let mut cache: BTreeMap<Partition, Vec<Vec<u32>>> = BTreeMap::new();
    let mut terms = Vec::new();
    for ((degree, lambda), c) in &m.entries {
        let weights =
            cache.entry(lambda.clone()).or_insert_with(|| weights_irr(m.n, lambda).expect("valid partition").weights);
        for w in weights.iter() {
            terms.push((Monomial::new(w, *degree), c.clone()));
        }
    }
    SparsePoly::from_terms(m.n, terms).expect("n exponents")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modspec::{exterior_hilbert_series, weights_ext, weights_sym};

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn s3_c2_multiplicity_series() {
        let f = exterior_hilbert_series(&weights_sym(2, 3));
        let m = multiplicity_series(&f, 2).unwrap();
        assert_eq!(
            m.to_poly().display("x").to_string(),
            "1 + x1^3*t + x1^5*x2*t^2 + x1^3*x2^3*t^2 + x1^6*x2^3*t^3 + x1^6*x2^6*t^4"
        );
        let d = gl_decomposition(&m).unwrap();
        assert_eq!(d[2].components, vec![(part(&[3, 3]), 1u32.into()), (part(&[5, 1]), 1u32.into())]);
        assert_eq!(d[4].components, vec![(part(&[6, 6]), 1u32.into())]);
        assert_eq!(d[0].components, vec![(part(&[0, 0]), 1u32.into())]);
    }

    #[test]
    fn elementary_symmetric_is_a_column() {
        let f = exterior_hilbert_series(&weights_sym(4, 1));
        let m = multiplicity_series(&f, 4).unwrap();
        for k in 0..=4u32 {
            let mut p = vec![1; k as usize];
            p.resize(4, 0);
            assert_eq!(m.get(&part(&p), k), BigInt::from(1));
        }
        assert_eq!(m.len(), 5);
    }

    #[test]
    fn strategies_agree() {
        for (n, w) in [(2, weights_sym(2, 6)), (3, weights_sym(3, 3)), (4, weights_ext(4, 2).unwrap())] {
            let f = exterior_hilbert_series(&w);
            assert_eq!(
                multiplicity_series_with(&f, n, Extraction::FullProduct).unwrap(),
                multiplicity_series_with(&f, n, Extraction::Pruned).unwrap()
            );
        }
    }

    #[test]
    fn non_symmetric_input_rejected() {
        let x1 = SparsePoly::var(2, 0).unwrap();
        assert_eq!(multiplicity_series(&x1, 2), Err(Error::NotSymmetric(1, 2)));
    }

    #[test]
    fn primed_form() {
        let m =
            MultiplicitySeries::from_entries(2, [(part(&[3, 3]), 2, 1.into()), (part(&[5, 1]), 2, 1.into())]).unwrap();
        let p = to_primed(&m);
        assert_eq!(p.display("v").to_string(), "v2^3*t^2 + v1^4*v2*t^2");
        assert_eq!(from_primed(&p), m);
        let trivial = MultiplicitySeries::from_entries(3, [(part(&[0]), 0, 1.into())]).unwrap();
        assert_eq!(to_primed(&trivial), SparsePoly::one(3));
        let single = MultiplicitySeries::from_entries(2, [(part(&[3]), 1, 1.into())]).unwrap();
        assert_eq!(to_primed(&single).display("v").to_string(), "v1^3*t");
    }

    #[test]
    fn negative_multiplicity_is_reported() {
        let m = MultiplicitySeries::from_entries(2, [(part(&[1]), 1, BigInt::from(-1))]).unwrap();
        assert!(matches!(gl_decomposition(&m), Err(Error::NegativeMultiplicity { .. })));
    }

    #[test]
    fn signed_schur_difference_survives() {
        // s_(2) - s_(1,1) = x1^2 + x2^2 has no x1 x2 term.
        let f =
            SparsePoly::from_terms(2, [(Monomial::new(&[2, 0], 0), 1.into()), (Monomial::new(&[0, 2], 0), 1.into())])
                .unwrap();
        for how in [Extraction::FullProduct, Extraction::Pruned] {
            let m = multiplicity_series_with(&f, 2, how).unwrap();
            assert_eq!(m.get(&part(&[2]), 0), BigInt::from(1));
            assert_eq!(m.get(&part(&[1, 1]), 0), BigInt::from(-1));
            assert_eq!(reconstruct(&m), f);
        }
    }
}
