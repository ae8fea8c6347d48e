//! Lattice paths built from North-East, South-East and East unit steps.
//!
//! The vertex after `x` steps has abscissa `x`; a peak is a vertex entered by
//! an NE step and left by an SE step. Its weight is the abscissa, and the
//! major index of a path is the sum of its peak weights.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::check_ka;
use crate::marking::{lower_even_changes, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    NE,
    SE,
    E,
}

impl Step {
    fn delta(self) -> i64 {
        match self {
            Step::NE => 1,
            Step::SE => -1,
            Step::E => 0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Step::NE => '/',
            Step::SE => '\\',
            Step::E => '_',
        }
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "NE" | "/" => Ok(Step::NE),
            "SE" | "\\" => Ok(Step::SE),
            "E" | "_" => Ok(Step::E),
            other => Err(Error::Path(format!("unknown step {other:?}"))),
        }
    }
}

/// A path with a start height and a step sequence.
///
/// Valid paths never go below height 0, use E steps only at height 0, and
/// are empty or end with an SE step arriving at height 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LatticePath {
    pub start_height: u32,
    pub steps: Vec<Step>,
}

/// A peak with its weight (abscissa), height and relative height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Peak {
    pub weight: u32,
    pub height: u32,
    pub relative_height: u32,
}

/// Parity of `weight - relative_height`.
pub fn peak_parity(p: &Peak) -> Parity {
    Parity::of(i64::from(p.weight) - i64::from(p.relative_height))
}

impl LatticePath {
    pub fn new(start_height: u32, steps: Vec<Step>) -> Result<Self> {
        let path = Self { start_height, steps };
        path.validate()?;
        Ok(path)
    }

    /// The empty path at height 0.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertex heights, one more entry than there are steps.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = i64::from(self.start_height);
        h.push(cur);
        for s in &self.steps {
            cur += s.delta();
            h.push(cur);
        }
        h
    }

    pub fn validate(&self) -> Result<()> {
        let mut cur = i64::from(self.start_height);
        for (i, s) in self.steps.iter().enumerate() {
            if *s == Step::E && cur != 0 {
                return Err(Error::Path(format!("E step {i} at height {cur}")));
            }
            cur += s.delta();
            if cur < 0 {
                return Err(Error::Path(format!("step {i} goes below height 0")));
            }
        }
        if cur != 0 {
            return Err(Error::Path(format!("path ends at height {cur}")));
        }
        if let Some(&last) = self.steps.last() {
            if last != Step::SE {
                return Err(Error::Path("non-empty path must end with SE".into()));
            }
        }
        Ok(())
    }

    /// Whether vertex `x` is a peak.
    pub fn is_peak_at(&self, x: usize) -> bool {
        x >= 1 && x < self.steps.len() && self.steps[x - 1] == Step::NE && self.steps[x] == Step::SE
    }

    /// Abscissas of all peaks, left to right.
    pub fn peak_positions(&self) -> Vec<usize> {
        (1..self.steps.len()).filter(|&x| self.is_peak_at(x)).collect()
    }

    /// Relative height of the peak at vertex `x`, using precomputed heights.
    fn relative_height_at(&self, h: &[i64], x: usize) -> u32 {
        let y = h[x];
        // Leftwards: stop at a peak at least as high, or at the start.
        let mut low = y;
        let mut i = x;
        while i > 0 {
            i -= 1;
            if self.is_peak_at(i) && h[i] >= y {
                break;
            }
            low = low.min(h[i]);
        }
        let left = y - low;
        // Rightwards: stop at a strictly higher peak, or at the end.
        let mut low = y;
        for j in x + 1..h.len() {
            if self.is_peak_at(j) && h[j] > y {
                break;
            }
            low = low.min(h[j]);
        }
        let right = y - low;
        left.min(right) as u32
    }

    /// Peaks left to right with their relative heights.
    pub fn peaks(&self) -> Vec<Peak> {
        let h = self.heights();
        self.peak_positions()
            .into_iter()
            .map(|x| Peak {
                weight: x as u32,
                height: h[x] as u32,
                relative_height: self.relative_height_at(&h, x),
            })
            .collect()
    }

    /// Relative height of the `index`-th peak from the left.
    pub fn relative_height(&self, index: usize) -> Result<u32> {
        let x = *self
            .peak_positions()
            .get(index)
            .ok_or_else(|| Error::Path(format!("no peak with index {index}")))?;
        Ok(self.relative_height_at(&self.heights(), x))
    }

    pub fn major_index(&self) -> u64 {
        self.peak_positions().iter().map(|&x| x as u64).sum()
    }

    /// Start at height `k - a` and stay strictly below height `k`.
    pub fn satisfies_conditions(&self, k: u32, a: u32) -> bool {
        self.validate().is_ok()
            && a <= k
            && self.start_height == k - a
            && self.heights().iter().all(|&y| y < i64::from(k))
    }

    /// Number of peaks of relative height `r` for `r = 1..k-1`.
    pub fn relative_height_counts(&self, k: u32) -> Vec<usize> {
        let mut counts = vec![0; k.saturating_sub(1) as usize];
        for p in self.peaks() {
            if let Some(c) = counts.get_mut((p.relative_height as usize).wrapping_sub(1)) {
                *c += 1;
            }
        }
        counts
    }

    /// One character per step: `/` for NE, `\` for SE, `_` for E.
    pub fn to_ascii(&self) -> String {
        self.steps.iter().map(|s| s.symbol()).collect()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start_height, self.to_ascii())
    }
}

/// Sum over `r = 1..k-1` of the number of parity changes along the peaks of
/// relative height `r`, read left to right from an even sentinel.
pub fn full_lower_even_peak_parity_index(path: &LatticePath, k: u32) -> usize {
    let peaks = path.peaks();
    (1..k)
        .map(|r| {
            lower_even_changes(
                peaks.iter().filter(|p| p.relative_height == r).map(peak_parity),
            )
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathFamily {
    /// The `(k, a)`-conditions alone.
    E,
    /// Every peak of height `k - 1` has weight `≡ a - 1 (mod 2)`.
    Etilde,
    /// Every peak has weight `≡` relative height (mod 2).
    P,
    /// Every peak weight is even.
    Pbar,
    /// Every peak weight is odd.
    Q,
}

impl PathFamily {
    pub const ALL: [PathFamily; 5] =
        [PathFamily::E, PathFamily::Etilde, PathFamily::P, PathFamily::Pbar, PathFamily::Q];

    pub fn name(self) -> &'static str {
        match self {
            PathFamily::E => "E",
            PathFamily::Etilde => "Etilde",
            PathFamily::P => "P",
            PathFamily::Pbar => "Pbar",
            PathFamily::Q => "Q",
        }
    }
}

impl fmt::Display for PathFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PathFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PathFamily::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown(s.into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathFamilySpec {
    pub family: PathFamily,
    pub k: u32,
    pub a: u32,
}

impl PathFamilySpec {
    pub fn new(family: PathFamily, k: u32, a: u32) -> Result<Self> {
        check_ka(k, a)?;
        Ok(Self { family, k, a })
    }
}

impl fmt::Display for PathFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{{{},{}}}", self.family, self.k, self.a)
    }
}

/// Whether a peak list meets the side condition of `family`.
pub fn peaks_satisfy(peaks: &[Peak], family: PathFamily, k: u32, a: u32) -> bool {
    match family {
        PathFamily::E => true,
        PathFamily::Etilde => peaks
            .iter()
            .filter(|p| p.height == k - 1)
            .all(|p| p.weight % 2 == (a - 1) % 2),
        PathFamily::P => peaks.iter().all(|p| peak_parity(p) == Parity::Even),
        PathFamily::Pbar => peaks.iter().all(|p| p.weight % 2 == 0),
        PathFamily::Q => peaks.iter().all(|p| p.weight % 2 == 1),
    }
}

pub fn is_path_member(path: &LatticePath, spec: PathFamilySpec) -> bool {
    let PathFamilySpec { family, k, a } = spec;
    path.satisfies_conditions(k, a) && peaks_satisfy(&path.peaks(), family, k, a)
}
