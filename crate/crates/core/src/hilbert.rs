//! Univariate Hilbert polynomials `Σ dim A^i t^i`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HilbertPolynomial {
    coeffs: BTreeMap<u32, BigUint>,
}

/// Output notation for [`HilbertPolynomial::render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    /// `1 + 2t^2 + t^10`
    Text,
    /// `1+2t^2+t^10`
    Compact,
    /// `1+2t^2+t^{10}`
    Latex,
}

impl HilbertPolynomial {
    pub fn from_coeffs<I>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = (u32, BigUint)>,
    {
        let mut out = BTreeMap::new();
        for (d, c) in coeffs {
            if !c.is_zero() {
                *out.entry(d).or_insert_with(BigUint::zero) += c;
            }
        }
        HilbertPolynomial { coeffs: out }
    }

    /// Rejects negative coefficients, which cannot be dimensions.
    pub fn from_signed(coeffs: &BTreeMap<u32, BigInt>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (&d, c) in coeffs {
            if c.is_negative() {
                return Err(Error::NegativeDimension { degree: d, value: c.to_string() });
            }
            if !c.is_zero() {
                out.insert(d, c.magnitude().clone());
            }
        }
        Ok(HilbertPolynomial { coeffs: out })
    }

    pub fn coeff(&self, degree: u32) -> BigUint {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, BigUint> {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn value_at_one(&self) -> BigUint {
        self.coeffs.values().sum()
    }

    /// `t^p H(1/t) = H(t)`.
    pub fn is_palindromic(&self, p: u32) -> bool {
        self.coeffs.iter().all(|(&d, c)| d <= p && self.coeffs.get(&(p - d)) == Some(c))
    }

    /// Coefficient-wise `self >= other`.
    pub fn dominates(&self, other: &HilbertPolynomial) -> bool {
        other.coeffs.iter().all(|(d, c)| self.coeffs.get(d).is_some_and(|s| s >= c))
    }

    pub fn render(&self, notation: Notation) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let sep = if notation == Notation::Text { " + " } else { "+" };
        self.coeffs
            .iter()
            .map(|(&d, c)| {
                let coeff = if d > 0 && c.is_one() { String::new() } else { c.to_string() };
                let power = match (d, notation) {
                    (0, _) => String::new(),
                    (1, _) => "t".into(),
                    (d, Notation::Latex) if d >= 10 => format!("t^{{{d}}}"),
                    (d, _) => format!("t^{d}"),
                };
                coeff + &power
            })
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Text))
    }
}

/// Accepts any of the [`Notation`] forms; whitespace is ignored and repeated
/// degrees are summed.
impl FromStr for HilbertPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(HilbertPolynomial::default());
        }
        let mut offset = 0;
        let mut coeffs = Vec::new();
        for token in compact.split('+') {
            let bad = |message: &str| Error::Parse { position: offset, message: message.into() };
            let (coeff, power) = match token.find('t') {
                Some(i) => (&token[..i], Some(&token[i + 1..])),
                None => (token, None),
            };
            let coeff: BigUint = match (coeff, power) {
                ("", Some(_)) => BigUint::one(),
                ("", None) => return Err(bad("empty term")),
                (c, _) => c.parse().map_err(|_| bad("bad coefficient"))?,
            };
            let degree: u32 = match power {
                None => 0,
                Some("") => 1,
                Some(p) => {
                    let p = p.strip_prefix('^').ok_or_else(|| bad("expected `^`"))?;
                    let p = p.strip_prefix('{').and_then(|q| q.strip_suffix('}')).unwrap_or(p);
                    p.parse().map_err(|_| bad("bad exponent"))?
                }
            };
            coeffs.push((degree, coeff));
            offset += token.len() + 1;
        }
        Ok(HilbertPolynomial::from_coeffs(coeffs))
    }
}

/// JSON form: `{"terms": [{"degree": 0, "coefficient": "1"}, ..]}`.
/// Coefficients are decimal strings so arbitrarily large values survive.
#[derive(Serialize, Deserialize)]
struct JsonForm {
    terms: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    degree: u32,
    coefficient: String,
}

impl Serialize for HilbertPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        JsonForm {
            terms: self.coeffs.iter().map(|(&degree, c)| JsonTerm { degree, coefficient: c.to_string() }).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HilbertPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let form = JsonForm::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(form.terms.len());
        for term in form.terms {
            let c: BigUint = term.coefficient.parse().map_err(serde::de::Error::custom)?;
            coeffs.push((term.degree, c));
        }
        Ok(HilbertPolynomial::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_in_each_notation() {
        let h: HilbertPolynomial = "1+3t^4+t^10".parse().unwrap();
        assert_eq!(h.render(Notation::Text), "1 + 3t^4 + t^10");
        assert_eq!(h.render(Notation::Compact), "1+3t^4+t^10");
        assert_eq!(h.render(Notation::Latex), "1+3t^4+t^{10}");
        assert_eq!(h.degree(), Some(10));
        assert_eq!(h.value_at_one(), BigUint::from(5u32));
    }

    #[test]
    fn parses_latex_and_linear_terms() {
        let h: HilbertPolynomial = "1 + t + 2t^{12}".parse().unwrap();
        assert_eq!(h.coeff(1), BigUint::one());
        assert_eq!(h.coeff(12), BigUint::from(2u32));
        assert!("1+x^2".parse::<HilbertPolynomial>().is_err());
        assert!("1++t".parse::<HilbertPolynomial>().is_err());
    }

    #[test]
    fn palindromes_and_domination() {
        let so: HilbertPolynomial = "1+2t^2+t^4".parse().unwrap();
        let o: HilbertPolynomial = "1+t^4".parse().unwrap();
        assert!(so.is_palindromic(4));
        assert!(!o.is_palindromic(5));
        assert!(so.dominates(&o));
        assert!(!o.dominates(&so));
    }

    #[test]
    fn negative_coefficients_rejected() {
        let bad = BTreeMap::from([(0, BigInt::from(1)), (2, BigInt::from(-1))]);
        assert!(HilbertPolynomial::from_signed(&bad).is_err());
    }
}
