//! Side-by-side verification of the identities: every identity is checked by
//! computing each of its sides independently and comparing them row by row.
//! Mismatches never stop the comparison early.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::enumerate::{count_partition_family, count_path_family, count_refined, RefinedKind};
use crate::error::{Error, Result};
use crate::family::{check_ka, Family, FamilySpec};
use crate::identities::{bressoud_sum_shifted, eval_master, eval_series, SeriesId};
use crate::path::{PathFamily, PathFamilySpec};
use crate::series::TruncatedSeries;

/// Identities the verifier knows how to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityId {
    Thm1,
    Eq2,
    Thm3,
    Eq4,
    Thm5,
    Thm6,
    Thm7,
    Thm8,
    Thm9,
    Thm10,
    Thm11,
    Thm12,
    Thm13,
}

impl IdentityId {
    pub const ALL: [IdentityId; 13] = [
        IdentityId::Thm1,
        IdentityId::Eq2,
        IdentityId::Thm3,
        IdentityId::Eq4,
        IdentityId::Thm5,
        IdentityId::Thm6,
        IdentityId::Thm7,
        IdentityId::Thm8,
        IdentityId::Thm9,
        IdentityId::Thm10,
        IdentityId::Thm11,
        IdentityId::Thm12,
        IdentityId::Thm13,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Thm1 => "thm1",
            IdentityId::Eq2 => "eq2",
            IdentityId::Thm3 => "thm3",
            IdentityId::Eq4 => "eq4",
            IdentityId::Thm5 => "thm5",
            IdentityId::Thm6 => "thm6",
            IdentityId::Thm7 => "thm7",
            IdentityId::Thm8 => "thm8",
            IdentityId::Thm9 => "thm9",
            IdentityId::Thm10 => "thm10",
            IdentityId::Thm11 => "thm11",
            IdentityId::Thm12 => "thm12",
            IdentityId::Thm13 => "thm13",
        }
    }

    /// What the two (or three) sides are, for report headers.
    pub fn summary(self) -> &'static str {
        match self {
            IdentityId::Thm1 => "A_{k,a}(n) = B_{k,a}(n)",
            IdentityId::Eq2 => "Andrews-Gordon multisum = product",
            IdentityId::Thm3 => "Atilde_{k,a}(n) = Btilde_{k,a}(n)",
            IdentityId::Eq4 => "even-modulus multisum = product",
            IdentityId::Thm5 => "E_{k,a}(n) = B_{k,a}(n) = multisum",
            IdentityId::Thm6 => "Etilde_{k,a}(n) = Btilde_{k,a}(n) = multisum",
            IdentityId::Thm7 => "W_{k,a}(n) = multisum = product",
            IdentityId::Thm8 => "Wbar_{k,a}(n) = multisum = product",
            IdentityId::Thm9 => "B_{k,k}(l,m,n) = trivariate series",
            IdentityId::Thm10 => "W_{k,a}(n) = P_{k,a}(n) = multisum",
            IdentityId::Thm11 => "Wbar_{k,a}(n) = Pbar_{k,a}(n)",
            IdentityId::Thm12 => "Q_{k,a}(n) = multisum",
            IdentityId::Thm13 => "B_{k,k}(l,m,n) = E_{k,k}(l,m,n)",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Unknown(s.into()))
    }
}

/// One compared cell: the key (`n`, or `l, m, n`) and every column's value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub key: Vec<usize>,
    pub values: Vec<BigInt>,
}

impl ReportRow {
    pub fn matches(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub k: u32,
    pub a: u32,
    pub bound: usize,
    pub key_columns: Vec<&'static str>,
    pub columns: Vec<String>,
    pub rows: Vec<ReportRow>,
    /// Observations outside the compared columns, such as a variant formula
    /// that does not match.
    pub notes: Vec<String>,
    pub seconds: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ReportRow::matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.matches())
    }

    pub fn first_mismatch(&self) -> Option<&ReportRow> {
        self.mismatches().next()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut obj = serde_json::Map::new();
                for (c, v) in self.key_columns.iter().zip(&r.key) {
                    obj.insert((*c).into(), (*v).into());
                }
                for (c, v) in self.columns.iter().zip(&r.values) {
                    obj.insert(c.clone(), big_json(v));
                }
                obj.insert("match".into(), r.matches().into());
                obj.into()
            })
            .collect();
        serde_json::json!({
            "version": env!("CARGO_PKG_VERSION"),
            "identity": self.identity.name(),
            "statement": self.identity.summary(),
            "k": self.k,
            "a": self.a,
            "bound": self.bound,
            "status": self.status(),
            "mismatches": self.mismatches().count(),
            "seconds": self.seconds,
            "notes": self.notes,
            "rows": rows,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = self.key_columns.iter().map(|c| (*c).to_string()).collect();
        header.extend(self.columns.iter().cloned());
        header.push("match".into());
        w.write_record(&header).expect("in-memory write");
        for r in &self.rows {
            let mut rec: Vec<String> = r.key.iter().map(ToString::to_string).collect();
            rec.extend(r.values.iter().map(ToString::to_string));
            rec.push(r.matches().to_string());
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}

impl fmt::Display for VerificationReport {
    /// One summary line, then one line per mismatch and per note.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} (k={}, a={}, bound={}): {} [{} rows, {} mismatches, {:.3}s]",
            self.status(),
            self.identity,
            self.k,
            self.a,
            self.bound,
            self.identity.summary(),
            self.rows.len(),
            self.mismatches().count(),
            self.seconds
        )?;
        for r in self.mismatches() {
            let key: Vec<String> = r.key.iter().map(ToString::to_string).collect();
            let vals: Vec<String> = self
                .columns
                .iter()
                .zip(&r.values)
                .map(|(c, v)| format!("{c}={v}"))
                .collect();
            write!(f, "\n  mismatch at {}: {}", key.join(","), vals.join(" "))?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

/// Small values as JSON numbers, large ones as decimal strings.
fn big_json(v: &BigInt) -> serde_json::Value {
    match i64::try_from(v) {
        Ok(x) => x.into(),
        Err(_) => v.to_string().into(),
    }
}

/// Builds univariate rows `n = 0..=bound` from equally long columns.
fn univariate(columns: &[Vec<BigInt>], bound: usize) -> Vec<ReportRow> {
    (0..=bound)
        .map(|n| ReportRow {
            key: vec![n],
            values: columns.iter().map(|c| c.get(n).cloned().unwrap_or_default()).collect(),
        })
        .collect()
}

/// Builds `(l, m, n)` rows over the union of keys; absent keys count as 0.
fn refined(columns: &[BTreeMap<(usize, usize, usize), BigInt>]) -> Vec<ReportRow> {
    let keys: BTreeSet<_> = columns.iter().flat_map(|c| c.keys().copied()).collect();
    keys.into_iter()
        .map(|key| ReportRow {
            key: vec![key.0, key.1, key.2],
            values: columns.iter().map(|c| c.get(&key).cloned().unwrap_or_default()).collect(),
        })
        .collect()
}

fn partitions(family: Family, k: u32, a: u32, bound: usize) -> Result<Vec<BigInt>> {
    let t = count_partition_family(FamilySpec::new(family, k, a)?, bound);
    Ok(t.counts().into_iter().map(BigInt::from).collect())
}

fn paths(family: PathFamily, k: u32, a: u32, bound: usize) -> Result<Vec<BigInt>> {
    let t = count_path_family(PathFamilySpec::new(family, k, a)?, bound);
    Ok(t.counts().into_iter().map(BigInt::from).collect())
}

fn series(id: SeriesId, k: u32, a: u32, bound: usize) -> Result<Vec<BigInt>> {
    Ok(eval_series(id, k, a, bound)?.coeffs().to_vec())
}

fn w_sum_id(k: u32, a: u32) -> SeriesId {
    if k % 2 == a % 2 {
        SeriesId::WSumSame
    } else {
        SeriesId::WSumDiff
    }
}

/// The W-bar series pair for `(k, a)`, or a parity error.
fn wbar_ids(k: u32, a: u32) -> Result<(SeriesId, SeriesId)> {
    match (k % 2, a % 2) {
        (1, 0) => Ok((SeriesId::WbarSumKoa, SeriesId::WbarProdKoa)),
        (0, 1) => Ok((SeriesId::WbarSumKea, SeriesId::WbarProdKea)),
        _ => Err(Error::ParityPrerequisite(format!(
            "the Wbar generating functions need (k odd, a even) or (k even, a odd), got k = {k}, a = {a}"
        ))),
    }
}

fn q_sum_id(a: u32) -> SeriesId {
    if a % 2 == 1 {
        SeriesId::QSumAodd
    } else {
        SeriesId::QSumAeven
    }
}

/// Index and both values of the first coefficient where two series differ.
pub fn first_difference(x: &TruncatedSeries, y: &TruncatedSeries) -> Option<(usize, BigInt, BigInt)> {
    (0..=x.order().min(y.order()))
        .map(|n| (n, x.coeff(n), y.coeff(n)))
        .find(|(_, u, v)| u != v)
}

/// Runs both sides of `identity` up to `bound` (weight or series order).
/// The refined identities use `a = k` and ignore the `a` argument.
pub fn cmd_verify(identity: IdentityId, k: u32, a: u32, bound: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let refined_ids = matches!(identity, IdentityId::Thm9 | IdentityId::Thm13);
    let a = if refined_ids { k } else { a };
    check_ka(k, a)?;
    let mut notes = Vec::new();
    let n_key = vec!["n"];
    let (key_columns, columns, rows): (Vec<&'static str>, Vec<String>, Vec<ReportRow>) = match identity {
        IdentityId::Thm1 => {
            let cols = [partitions(Family::A, k, a, bound)?, partitions(Family::B, k, a, bound)?];
            (n_key, vec!["A".into(), "B".into()], univariate(&cols, bound))
        }
        IdentityId::Thm3 => {
            let cols =
                [partitions(Family::Atilde, k, a, bound)?, partitions(Family::Btilde, k, a, bound)?];
            (n_key, vec!["Atilde".into(), "Btilde".into()], univariate(&cols, bound))
        }
        IdentityId::Eq2 => {
            let cols = [series(SeriesId::AgSum, k, a, bound)?, series(SeriesId::AgProd, k, a, bound)?];
            (n_key, vec!["ag-sum".into(), "ag-prod".into()], univariate(&cols, bound))
        }
        IdentityId::Eq4 => {
            let sum = eval_series(SeriesId::BressoudSum, k, a, bound)?;
            let shifted = bressoud_sum_shifted(k, a, bound)?;
            if let Some((n, u, v)) = first_difference(&shifted, &sum) {
                notes.push(format!(
                    "with the linear term started at N_(a+1) the sum differs first at q^{n}: {u} vs {v}"
                ));
            }
            let cols = [sum.coeffs().to_vec(), series(SeriesId::BressoudProd, k, a, bound)?];
            (n_key, vec!["bressoud-sum".into(), "bressoud-prod".into()], univariate(&cols, bound))
        }
        IdentityId::Thm5 => {
            let cols = [
                paths(PathFamily::E, k, a, bound)?,
                partitions(Family::B, k, a, bound)?,
                series(SeriesId::AgSum, k, a, bound)?,
            ];
            (n_key, vec!["E".into(), "B".into(), "ag-sum".into()], univariate(&cols, bound))
        }
        IdentityId::Thm6 => {
            let cols = [
                paths(PathFamily::Etilde, k, a, bound)?,
                partitions(Family::Btilde, k, a, bound)?,
                series(SeriesId::BressoudSum, k, a, bound)?,
            ];
            (
                n_key,
                vec!["Etilde".into(), "Btilde".into(), "bressoud-sum".into()],
                univariate(&cols, bound),
            )
        }
        IdentityId::Thm7 => {
            let (sum, prod) = if k % 2 == a % 2 {
                (SeriesId::WSumSame, SeriesId::WProdSame)
            } else {
                (SeriesId::WSumDiff, SeriesId::WProdDiff)
            };
            let cols = [
                partitions(Family::W, k, a, bound)?,
                series(sum, k, a, bound)?,
                series(prod, k, a, bound)?,
            ];
            (n_key, vec!["W".into(), sum.to_string(), prod.to_string()], univariate(&cols, bound))
        }
        IdentityId::Thm8 => {
            let (sum, prod) = wbar_ids(k, a)?;
            let cols = [
                partitions(Family::Wbar, k, a, bound)?,
                series(sum, k, a, bound)?,
                series(prod, k, a, bound)?,
            ];
            (n_key, vec!["Wbar".into(), sum.to_string(), prod.to_string()], univariate(&cols, bound))
        }
        IdentityId::Thm10 => {
            let sum = w_sum_id(k, a);
            let cols = [
                partitions(Family::W, k, a, bound)?,
                paths(PathFamily::P, k, a, bound)?,
                series(sum, k, a, bound)?,
            ];
            (n_key, vec!["W".into(), "P".into(), sum.to_string()], univariate(&cols, bound))
        }
        IdentityId::Thm11 => {
            let mut names = vec!["Wbar".to_string(), "Pbar".to_string()];
            let mut cols =
                vec![partitions(Family::Wbar, k, a, bound)?, paths(PathFamily::Pbar, k, a, bound)?];
            match wbar_ids(k, a) {
                Ok((sum, _)) => {
                    names.push(sum.to_string());
                    cols.push(series(sum, k, a, bound)?);
                }
                Err(_) => notes.push(format!(
                    "no generating function is known for k = {k}, a = {a}; only the enumerations are compared"
                )),
            }
            (n_key, names, univariate(&cols, bound))
        }
        IdentityId::Thm12 => {
            let sum = q_sum_id(a);
            let cols = [paths(PathFamily::Q, k, a, bound)?, series(sum, k, a, bound)?];
            (n_key, vec!["Q".into(), sum.to_string()], univariate(&cols, bound))
        }
        IdentityId::Thm9 | IdentityId::Thm13 => {
            let clusters = count_refined(RefinedKind::Clusters, k, bound)?;
            let to_big = |t: crate::enumerate::RefinedTable| {
                t.rows.into_iter().map(|(key, v)| (key, BigInt::from(v))).collect::<BTreeMap<_, _>>()
            };
            let other = if identity == IdentityId::Thm9 {
                ("master".to_string(), eval_master(k, bound)?.entries())
            } else {
                ("peaks".to_string(), to_big(count_refined(RefinedKind::Peaks, k, bound)?))
            };
            let cols = [to_big(clusters), other.1];
            (vec!["l", "m", "n"], vec!["clusters".into(), other.0], refined(&cols))
        }
    };
    Ok(VerificationReport {
        identity,
        k,
        a,
        bound,
        key_columns,
        columns,
        rows,
        notes,
        seconds: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!("thm14".parse::<IdentityId>().is_err());
    }

    #[test]
    fn small_reports_pass() {
        for (id, k, a, bound) in [
            (IdentityId::Thm5, 2, 2, 15),
            (IdentityId::Eq2, 3, 3, 25),
            (IdentityId::Thm10, 4, 3, 14),
            (IdentityId::Thm1, 3, 2, 15),
            (IdentityId::Thm9, 2, 2, 10),
            (IdentityId::Thm13, 3, 1, 10),
        ] {
            let r = cmd_verify(id, k, a, bound).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn parity_prerequisite_is_an_error() {
        assert!(matches!(
            cmd_verify(IdentityId::Thm8, 3, 3, 5),
            Err(Error::ParityPrerequisite(_))
        ));
        let r = cmd_verify(IdentityId::Thm11, 3, 3, 12).unwrap();
        assert_eq!(r.columns.len(), 2);
        assert!(r.passed());
    }

    #[test]
    fn mismatches_are_listed_in_full() {
        let mut r = cmd_verify(IdentityId::Thm1, 2, 2, 6).unwrap();
        r.rows[3].values[0] += 1;
        r.rows[5].values[1] += 1;
        assert!(!r.passed());
        assert_eq!(r.mismatches().count(), 2);
        assert_eq!(r.first_mismatch().unwrap().key, vec![3]);
        let shown = r.to_string();
        assert!(shown.starts_with("FAIL thm1"));
        assert!(shown.contains("mismatch at 5"));
    }

    #[test]
    fn shifted_even_modulus_sum_is_noted() {
        let r = cmd_verify(IdentityId::Eq4, 3, 1, 15).unwrap();
        assert!(r.passed());
        assert_eq!(r.notes.len(), 1);
        let r = cmd_verify(IdentityId::Eq4, 3, 3, 15).unwrap();
        assert!(r.notes.is_empty());
    }

    #[test]
    fn report_formats() {
        let r = cmd_verify(IdentityId::Thm1, 2, 2, 2).unwrap();
        assert_eq!(r.to_csv(), "n,A,B,match\n0,1,1,true\n1,1,1,true\n2,1,1,true\n");
        let j = r.to_json();
        assert_eq!(j["status"], "PASS");
        assert_eq!(j["rows"][1]["A"], 1);
    }
}
