//! Integer partitions stored as non-increasing part lists.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite non-increasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::ParsePartition(
                format!("{parts:?}"),
                "parts must be positive".into(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Number of parts equal to `l`.
    pub fn frequency(&self, l: u32) -> usize {
        self.parts.iter().filter(|&&p| p == l).count()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    /// Frequency table indexed by part value, length `largest + 2` so that
    /// `f[l] + f[l + 1]` is always addressable for `1 <= l <= largest`.
    pub fn frequencies(&self) -> Vec<usize> {
        let top = self.largest().unwrap_or(0) as usize;
        let mut f = vec![0; top + 2];
        for &p in &self.parts {
            f[p as usize] += 1;
        }
        f
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Parses the comma-separated text form, e.g. `13,11,11,9`. The empty string
/// is the empty partition. Parts must be listed in non-increasing order.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for tok in trimmed.split(',') {
            let tok = tok.trim();
            let v: u32 = tok
                .parse()
                .map_err(|_| Error::ParsePartition(s.into(), format!("bad part {tok:?}")))?;
            if v == 0 {
                return Err(Error::ParsePartition(s.into(), "parts must be positive".into()));
            }
            parts.push(v);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::ParsePartition(s.into(), "parts must be non-increasing".into()));
        }
        Ok(Self { parts })
    }
}
