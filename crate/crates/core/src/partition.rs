use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing vector of nonnegative integers, padded with zeros to
/// the rank it is used with.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Validates and pads to exactly `n` parts.
    pub fn with_rank(parts: Vec<u32>, n: usize) -> Result<Self> {
        let p = Self::new(parts)?;
        if p.length() > n {
            return Err(Error::InvalidPartition(p.0));
        }
        Ok(p.padded(n))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.iter().take_while(|&&p| p > 0).count()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn trimmed(&self) -> Partition {
        Partition(self.0[..self.length()].to_vec())
    }

    pub fn padded(&self, n: usize) -> Partition {
        let mut parts = self.trimmed().0;
        parts.resize(n.max(parts.len()), 0);
        Partition(parts)
    }

    /// Column lengths.
    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }

    /// Listing form with trailing ones grouped: `(5,1)`, `(3,3)`, `(2,1^3)`.
    pub fn compact(&self) -> String {
        let trimmed = self.trimmed();
        if trimmed.0.is_empty() {
            return "(0)".to_string();
        }
        let ones = trimmed.0.iter().filter(|&&p| p == 1).count();
        let mut inner: Vec<String> = trimmed.0.iter().filter(|&&p| p > 1).map(u32::to_string).collect();
        match ones {
            0 => {}
            1 => inner.push("1".into()),
            m => inner.push(format!("1^{m}")),
        }
        format!("({})", inner.join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", inner.join(","))
    }
}

/// dim V^n_λ by the Weyl dimension formula
/// `∏_{i<j} (λ_i - λ_j + j - i) / (j - i)`.
pub fn weyl_dimension(lambda: &Partition, n: usize) -> BigUint {
    let parts = lambda.padded(n);
    let parts = parts.parts();
    if parts.len() > n {
        return BigUint::default();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= (parts[i] - parts[j]) as u64 + (j - i) as u64;
            den *= (j - i) as u64;
        }
    }
    num / den
}
