//! Membership predicates for the partition families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Frequency conditions `f_1 <= a - 1`, `f_l + f_{l+1} <= k - 1`.
    B,
    /// Parts not congruent to `0, ±a` modulo `2k + 1`.
    A,
    /// `B` with every even part occurring an even number of times.
    W,
    /// `B` with every odd part occurring an even number of times.
    Wbar,
    /// Even-modulus frequency conditions with the parity side condition.
    Btilde,
    /// Parts not congruent to `0, ±a` modulo `2k`.
    Atilde,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::B,
        Family::A,
        Family::W,
        Family::Wbar,
        Family::Btilde,
        Family::Atilde,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::B => "B",
            Family::A => "A",
            Family::W => "W",
            Family::Wbar => "Wbar",
            Family::Btilde => "Btilde",
            Family::Atilde => "Atilde",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown(s.into()))
    }
}

/// A family together with its `(k, a)` parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub k: u32,
    pub a: u32,
}

impl FamilySpec {
    pub fn new(family: Family, k: u32, a: u32) -> Result<Self> {
        check_ka(k, a)?;
        Ok(Self { family, k, a })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{{{},{}}}", self.family, self.k, self.a)
    }
}

pub(crate) fn check_ka(k: u32, a: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::Parameters(format!("k = {k} must be at least 2")));
    }
    if a < 1 || a > k {
        return Err(Error::Parameters(format!("a = {a} must satisfy 1 <= a <= k = {k}")));
    }
    Ok(())
}

/// Checks membership and, on failure, names the violated condition.
pub fn membership(p: &Partition, spec: FamilySpec) -> Result<(), String> {
    let FamilySpec { family, k, a } = spec;
    let f = p.frequencies();
    let freq = |l: usize| f.get(l).copied().unwrap_or(0);
    let b_conditions = || -> Result<(), String> {
        if freq(1) > (a - 1) as usize {
            return Err(format!("f_1 = {} exceeds a - 1 = {}", freq(1), a - 1));
        }
        for l in 1..f.len() {
            let s = freq(l) + freq(l + 1);
            if s > (k - 1) as usize {
                return Err(format!("f_{l} + f_{} = {s} exceeds k - 1 = {}", l + 1, k - 1));
            }
        }
        Ok(())
    };
    let avoid = |modulus: u32| -> Result<(), String> {
        for &part in p.parts() {
            let r = part % modulus;
            if r == 0 || r == a % modulus || r == (modulus - a % modulus) % modulus {
                return Err(format!("part {part} is congruent to 0 or ±{a} modulo {modulus}"));
            }
        }
        Ok(())
    };
    match family {
        Family::B => b_conditions(),
        Family::A => avoid(2 * k + 1),
        Family::Atilde => avoid(2 * k),
        Family::W => {
            b_conditions()?;
            for l in (2..f.len()).step_by(2) {
                if freq(l) % 2 == 1 {
                    return Err(format!("even part {l} occurs {} times", freq(l)));
                }
            }
            Ok(())
        }
        Family::Wbar => {
            b_conditions()?;
            for l in (1..f.len()).step_by(2) {
                if freq(l) % 2 == 1 {
                    return Err(format!("odd part {l} occurs {} times", freq(l)));
                }
            }
            Ok(())
        }
        Family::Btilde => {
            b_conditions()?;
            for l in 1..f.len() {
                if freq(l) + freq(l + 1) == (k - 1) as usize {
                    let s = l * freq(l) + (l + 1) * freq(l + 1);
                    if s % 2 != ((a - 1) % 2) as usize {
                        return Err(format!(
                            "f_{l} + f_{} = k - 1 but {l}f_{l} + {}f_{} = {s} is not ≡ a - 1 (mod 2)",
                            l + 1,
                            l + 1,
                            l + 1
                        ));
                    }
                }
            }
            Ok(())
        }
    }
}

pub fn is_member(p: &Partition, spec: FamilySpec) -> bool {
    membership(p, spec).is_ok()
}
