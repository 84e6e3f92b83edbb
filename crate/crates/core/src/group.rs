//! Identifiers for the classical subgroups of GL(n).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupFamily {
    Sl,
    O,
    So,
    Sp,
}

impl GroupFamily {
    pub const ALL: [GroupFamily; 4] = [GroupFamily::Sl, GroupFamily::O, GroupFamily::So, GroupFamily::Sp];

    pub fn short_name(self) -> &'static str {
        match self {
            GroupFamily::Sl => "sl",
            GroupFamily::O => "o",
            GroupFamily::So => "so",
            GroupFamily::Sp => "sp",
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupFamily::Sl => "SL",
            GroupFamily::O => "O",
            GroupFamily::So => "SO",
            GroupFamily::Sp => "Sp",
        })
    }
}

impl FromStr for GroupFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Ok(GroupFamily::Sl),
            "o" => Ok(GroupFamily::O),
            "so" => Ok(GroupFamily::So),
            "sp" => Ok(GroupFamily::Sp),
            other => Err(format!("unknown group `{other}` (expected sl, o, so or sp)")),
        }
    }
}

/// A classical subgroup of GL(n), e.g. `Sp(4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupId {
    family: GroupFamily,
    n: usize,
}

impl GroupId {
    /// Fails for `n = 0` and for `Sp` with odd `n`.
    pub fn new(family: GroupFamily, n: usize) -> Result<Self> {
        if n == 0 || (family == GroupFamily::Sp && n % 2 == 1) {
            return Err(Error::UnsupportedGroup { family, n });
        }
        Ok(GroupId { family, n })
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.n)
    }
}
