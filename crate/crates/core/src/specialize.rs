//! Hilbert series of invariants from multiplicity series.
//!
//! Each group picks out the highest weights whose irreducibles contain a
//! one-dimensional space of invariants:
//!
//! | group    | condition on λ                         | on `M'` exponents        |
//! |----------|----------------------------------------|--------------------------|
//! | SL(n)    | λ1 = .. = λn                           | v1..v(n-1) = 0           |
//! | Sp(2d)   | λ1 = λ2, λ3 = λ4, ..                   | v1, v3, .. = 0           |
//! | O(n)     | every λj even                          | (uses `M`, not `M'`)     |
//! | SO(n)    | all λj of one parity                   | v1..v(n-1) even          |
//!
//! The filters are the primary route. The `*_by_substitution` functions
//! evaluate the same series literally, substituting 0/1 and averaging over
//! ±1 one variable at a time, and serve as a cross-check. For SO the
//! averaging runs over v1..v(n-1) with each step applied to the output of
//! the previous one, then vn = 1.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::{GroupFamily, GroupId};
use crate::hilbert::HilbertPolynomial;
use crate::mult::{to_primed, MultiplicitySeries};
use crate::poly::SparsePoly;

fn sum_filtered(p: &SparsePoly, keep: impl Fn(&[u32]) -> bool) -> Result<HilbertPolynomial> {
    let mut coeffs: BTreeMap<u32, BigInt> = BTreeMap::new();
    for (m, c) in p.terms() {
        if keep(m.exponents()) {
            *coeffs.entry(m.tdeg()).or_default() += c;
        }
    }
    HilbertPolynomial::from_signed(&coeffs)
}

/// `M'(0, .., 0, 1, t)`.
pub fn hilbert_sl(primed: &SparsePoly) -> Result<HilbertPolynomial> {
    let n = primed.nvars();
    sum_filtered(primed, |e| e[..n.saturating_sub(1)].iter().all(|&x| x == 0))
}

/// `M'(0, 1, 0, 1, .., 0, 1, t)`; `n` must be even.
pub fn hilbert_sp(primed: &SparsePoly) -> Result<HilbertPolynomial> {
    let n = primed.nvars();
    GroupId::new(GroupFamily::Sp, n)?;
    sum_filtered(primed, |e| e.iter().step_by(2).all(|&x| x == 0))
}

/// Takes the unprimed series `M(x, t)`.
pub fn hilbert_o(m: &SparsePoly) -> Result<HilbertPolynomial> {
    sum_filtered(m, |e| e.iter().all(|x| x % 2 == 0))
}

pub fn hilbert_so(primed: &SparsePoly) -> Result<HilbertPolynomial> {
    let n = primed.nvars();
    sum_filtered(primed, |e| e[..n.saturating_sub(1)].iter().all(|x| x % 2 == 0))
}

fn check_rank(m: &MultiplicitySeries, group: GroupId) -> Result<()> {
    if m.n() != group.n() {
        return Err(Error::DimensionMismatch { left: group.n(), right: m.n() });
    }
    Ok(())
}

/// Hilbert series of the invariants of `group` via the parity filters.
pub fn hilbert_series(m: &MultiplicitySeries, group: GroupId) -> Result<HilbertPolynomial> {
    check_rank(m, group)?;
    match group.family() {
        GroupFamily::Sl => hilbert_sl(&to_primed(m)),
        GroupFamily::Sp => hilbert_sp(&to_primed(m)),
        GroupFamily::So => hilbert_so(&to_primed(m)),
        GroupFamily::O => hilbert_o(&m.to_poly()),
    }
}

fn average_over_sign(p: &SparsePoly, index: usize) -> Result<SparsePoly> {
    let minus = p.substitute(index, -1)?;
    let plus = p.substitute(index, 1)?;
    minus.add(&plus)?.div_exact(&BigInt::from(2))
}

fn finish(p: &SparsePoly) -> Result<HilbertPolynomial> {
    debug_assert!(p.terms().all(|(m, _)| m.exponents().iter().all(|&e| e == 0)));
    HilbertPolynomial::from_signed(&p.t_profile())
}

/// Literal evaluation of the specializations with [`SparsePoly::substitute`].
pub fn hilbert_series_by_substitution(m: &MultiplicitySeries, group: GroupId) -> Result<HilbertPolynomial> {
    check_rank(m, group)?;
    let n = group.n();
    match group.family() {
        GroupFamily::Sl => {
            let mut p = to_primed(m);
            for i in 0..n - 1 {
                p = p.substitute(i, 0)?;
            }
            finish(&p.substitute(n - 1, 1)?)
        }
        GroupFamily::Sp => {
            let mut p = to_primed(m);
            for i in 0..n {
                p = p.substitute(i, if i % 2 == 0 { 0 } else { 1 })?;
            }
            finish(&p)
        }
        GroupFamily::O => {
            let mut p = m.to_poly();
            for i in 0..n {
                p = average_over_sign(&p, i)?;
            }
            finish(&p)
        }
        GroupFamily::So => {
            let mut p = to_primed(m);
            for i in 0..n - 1 {
                p = average_over_sign(&p, i)?;
            }
            finish(&p.substitute(n - 1, 1)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modspec::{exterior_hilbert_series, weights_sym};
    use crate::mult::multiplicity_series;

    fn series(n: usize, k: u32, family: GroupFamily) -> String {
        let m = multiplicity_series(&exterior_hilbert_series(&weights_sym(n, k)), n).unwrap();
        hilbert_series(&m, GroupId::new(family, n).unwrap()).unwrap().to_string()
    }

    #[test]
    fn s3_c2_all_groups() {
        assert_eq!(series(2, 3, GroupFamily::Sl), "1 + t^2 + t^4");
        assert_eq!(series(2, 3, GroupFamily::Sp), "1 + t^2 + t^4");
        assert_eq!(series(2, 3, GroupFamily::O), "1 + t^4");
        assert_eq!(series(2, 3, GroupFamily::So), "1 + 2t^2 + t^4");
    }

    #[test]
    fn s5_c2_orthogonal() {
        assert_eq!(series(2, 5, GroupFamily::O), "1 + 3t^4");
    }

    #[test]
    fn natural_module_sl_series() {
        for n in 1..=5 {
            assert_eq!(series(n, 1, GroupFamily::Sl), format!("1 + t^{n}").replace("t^1", "t"));
        }
    }

    #[test]
    fn sp_rejects_odd_rank() {
        let m = multiplicity_series(&exterior_hilbert_series(&weights_sym(3, 1)), 3).unwrap();
        assert!(hilbert_sp(&to_primed(&m)).is_err());
    }

    #[test]
    fn substitution_agrees_with_filters() {
        for (n, k) in [(2, 4), (2, 7), (3, 3), (3, 4)] {
            let m = multiplicity_series(&exterior_hilbert_series(&weights_sym(n, k)), n).unwrap();
            for family in GroupFamily::ALL {
                let Ok(g) = GroupId::new(family, n) else { continue };
                assert_eq!(hilbert_series(&m, g).unwrap(), hilbert_series_by_substitution(&m, g).unwrap());
            }
        }
    }
}
