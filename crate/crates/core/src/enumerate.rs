//! Exhaustive generators for partitions and lattice paths, and the count
//! tables built from them. These are the brute-force oracles every identity
//! is checked against, so they favour obviousness over speed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{check_ka, is_member, Family, FamilySpec};
use crate::marking::{full_lower_even_cluster_parity_index, gordon_mark};
use crate::partition::Partition;
use crate::path::{full_lower_even_peak_parity_index, is_path_member, LatticePath, PathFamilySpec, Step};

/// All partitions of `n` in reverse lexicographic order, starting from `(n)`.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<u32>>,
}

pub fn gen_partitions(n: u32) -> Partitions {
    let first = if n == 0 { Vec::new() } else { vec![n] };
    Partitions { current: Some(first) }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition::new(cur.clone()).expect("generator keeps parts positive and sorted");
        let mut parts = cur;
        let mut rem = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            rem += 1;
        }
        if let Some(last) = parts.last_mut() {
            *last -= 1;
            let v = *last;
            rem += 1;
            while rem >= v {
                parts.push(v);
                rem -= v;
            }
            if rem > 0 {
                parts.push(rem);
            }
            self.current = Some(parts);
        }
        Some(out)
    }
}

/// Partitions of `n` whose parts all satisfy `allowed`, reverse lexicographic.
pub fn gen_restricted(n: u32, allowed: impl Fn(u32) -> bool) -> Vec<Partition> {
    fn go(n: u32, max: u32, sizes: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition::new(cur.clone()).expect("parts are positive"));
            return;
        }
        for &s in sizes.iter().filter(|&&s| s <= max.min(n)) {
            cur.push(s);
            go(n - s, s, sizes, cur, out);
            cur.pop();
        }
    }
    let sizes: Vec<u32> = (1..=n).rev().filter(|&s| allowed(s)).collect();
    let mut out = Vec::new();
    go(n, n, &sizes, &mut Vec::new(), &mut out);
    out
}

/// Whether a part size avoids `0, ±a` modulo `modulus`.
fn avoids(part: u32, a: u32, modulus: u32) -> bool {
    let r = part % modulus;
    r != 0 && r != a % modulus && r != (modulus - a % modulus) % modulus
}

/// Key of a count table row.
pub trait TableKey: Ord + Copy + fmt::Debug {
    const COLUMNS: &'static [&'static str];
    fn fields(&self) -> Vec<usize>;
}

impl TableKey for usize {
    const COLUMNS: &'static [&'static str] = &["n"];
    fn fields(&self) -> Vec<usize> {
        vec![*self]
    }
}

/// `(l, m, n)`: parity index, part count or relative height sum, weight.
impl TableKey for (usize, usize, usize) {
    const COLUMNS: &'static [&'static str] = &["l", "m", "n"];
    fn fields(&self) -> Vec<usize> {
        vec![self.0, self.1, self.2]
    }
}

/// Exact counts keyed by `n` or by `(l, m, n)`, for one family and `(k, a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable<K: TableKey = usize> {
    pub label: String,
    pub k: u32,
    pub a: u32,
    pub max_n: usize,
    pub rows: BTreeMap<K, u64>,
}

pub type RefinedTable = CountTable<(usize, usize, usize)>;

impl<K: TableKey> CountTable<K> {
    pub fn get(&self, key: K) -> u64 {
        self.rows.get(&key).copied().unwrap_or(0)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<&str> = K::COLUMNS.to_vec();
        header.push("count");
        w.write_record(&header).expect("in-memory write");
        for (key, count) in &self.rows {
            let mut rec: Vec<String> = key.fields().iter().map(ToString::to_string).collect();
            rec.push(count.to_string());
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|(key, count)| {
                let mut obj = serde_json::Map::new();
                for (c, v) in K::COLUMNS.iter().zip(key.fields()) {
                    obj.insert((*c).into(), v.into());
                }
                obj.insert("count".into(), (*count).into());
                obj.into()
            })
            .collect();
        serde_json::json!({
            "family": self.label,
            "k": self.k,
            "a": self.a,
            "max_n": self.max_n,
            "rows": rows,
        })
    }
}

impl CountTable<usize> {
    fn zeros(label: String, k: u32, a: u32, max_n: usize) -> Self {
        let rows = (0..=max_n).map(|n| (n, 0)).collect();
        Self { label, k, a, max_n, rows }
    }

    /// Counts for `n = 0..=max_n` in order.
    pub fn counts(&self) -> Vec<u64> {
        (0..=self.max_n).map(|n| self.get(n)).collect()
    }
}

/// Per-`n` counts of partitions in a family. `A` and `Atilde` are generated
/// directly from the allowed residues; the rest filter all partitions of `n`.
pub fn count_partition_family(spec: FamilySpec, max_n: usize) -> CountTable {
    let FamilySpec { family, k, a } = spec;
    let mut table = CountTable::zeros(family.to_string(), k, a, max_n);
    for n in 0..=max_n {
        let count = match family {
            Family::A => gen_restricted(n as u32, |s| avoids(s, a, 2 * k + 1)).len(),
            Family::Atilde => gen_restricted(n as u32, |s| avoids(s, a, 2 * k)).len(),
            _ => gen_partitions(n as u32).filter(|p| is_member(p, spec)).count(),
        };
        table.rows.insert(n, count as u64);
    }
    table
}

/// Depth-first path search. Pruning: an NE step at abscissa `x` must later
/// close a peak at `x + 1` or beyond, and an E step needs a peak at `x + 2`
/// or beyond before the path can end, so both are refused once the partial
/// major index leaves no room.
struct PathSearch<'f> {
    k: u32,
    max_major: u64,
    steps: Vec<Step>,
    visit: &'f mut dyn FnMut(&LatticePath),
    start: u32,
}

impl PathSearch<'_> {
    fn go(&mut self, height: u32, major: u64) {
        let x = self.steps.len() as u64;
        let last = self.steps.last().copied();
        if height == 0 && (last == Some(Step::SE) || (last.is_none() && self.start == 0)) {
            let path = LatticePath { start_height: self.start, steps: self.steps.clone() };
            (self.visit)(&path);
        }
        if height + 1 < self.k && major + x + 1 <= self.max_major {
            self.steps.push(Step::NE);
            self.go(height + 1, major);
            self.steps.pop();
        }
        if height > 0 {
            let gain = if last == Some(Step::NE) { x } else { 0 };
            if major + gain <= self.max_major {
                self.steps.push(Step::SE);
                self.go(height - 1, major + gain);
                self.steps.pop();
            }
        }
        if height == 0 && major + x + 2 <= self.max_major {
            self.steps.push(Step::E);
            self.go(0, major);
            self.steps.pop();
        }
    }
}

/// Calls `visit` on every path meeting the `(k, a)`-conditions with major
/// index at most `max_major`, each exactly once, in a fixed order.
pub fn for_each_path(k: u32, a: u32, max_major: u64, visit: &mut dyn FnMut(&LatticePath)) -> Result<()> {
    check_ka(k, a)?;
    let start = k - a;
    let mut search = PathSearch { k, max_major, steps: Vec::new(), visit, start };
    search.go(start, 0);
    Ok(())
}

/// Every path meeting the `(k, a)`-conditions with major index `≤ max_major`.
pub fn gen_paths(k: u32, a: u32, max_major: u64) -> Result<Vec<LatticePath>> {
    let mut out = Vec::new();
    for_each_path(k, a, max_major, &mut |p| out.push(p.clone()))?;
    Ok(out)
}

/// Per-`n` counts of paths in a path family.
pub fn count_path_family(spec: PathFamilySpec, max_major: usize) -> CountTable {
    let mut table = CountTable::zeros(spec.family.to_string(), spec.k, spec.a, max_major);
    for_each_path(spec.k, spec.a, max_major as u64, &mut |p| {
        if is_path_member(p, spec) {
            *table.rows.entry(p.major_index() as usize).or_insert(0) += 1;
        }
    })
    .expect("spec parameters were validated on construction");
    table
}

/// Which side of the refined equality to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RefinedKind {
    /// `B_{k,k}` partitions: parity index, number of parts, weight.
    Clusters,
    /// `E_{k,k}` paths: parity index, relative height sum, major index.
    Peaks,
}

impl FromStr for RefinedKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "clusters" => Ok(RefinedKind::Clusters),
            "peaks" => Ok(RefinedKind::Peaks),
            _ => Err(Error::Unknown(s.into())),
        }
    }
}

/// The `(l, m, n)` table of either side, with `n ≤ max_n`.
pub fn count_refined(kind: RefinedKind, k: u32, max_n: usize) -> Result<RefinedTable> {
    check_ka(k, k)?;
    let label = match kind {
        RefinedKind::Clusters => "clusters",
        RefinedKind::Peaks => "peaks",
    };
    let mut rows = BTreeMap::new();
    match kind {
        RefinedKind::Clusters => {
            let spec = FamilySpec::new(Family::B, k, k)?;
            for n in 0..=max_n {
                for p in gen_partitions(n as u32).filter(|p| is_member(p, spec)) {
                    let l = full_lower_even_cluster_parity_index(&gordon_mark(&p), k)?;
                    *rows.entry((l, p.len(), n)).or_insert(0) += 1;
                }
            }
        }
        RefinedKind::Peaks => {
            for_each_path(k, k, max_n as u64, &mut |p| {
                let m: u32 = p.peaks().iter().map(|q| q.relative_height).sum();
                let l = full_lower_even_peak_parity_index(p, k);
                *rows.entry((l, m as usize, p.major_index() as usize)).or_insert(0) += 1;
            })?;
        }
    }
    Ok(CountTable { label: label.into(), k, a: k, max_n, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::PathFamily;
    use std::collections::HashSet;

    /// Euler's pentagonal recurrence, independent of the generator.
    fn partition_numbers(n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut j = 1i64;
            loop {
                let g1 = (j * (3 * j - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if j % 2 == 1 { 1 } else { -1 };
                p[m] += sign * p[m - g1];
                let g2 = (j * (3 * j + 1) / 2) as usize;
                if g2 <= m {
                    p[m] += sign * p[m - g2];
                }
                j += 1;
            }
        }
        p
    }

    #[test]
    fn partition_counts() {
        assert_eq!(gen_partitions(0).collect::<Vec<_>>(), vec![Partition::empty()]);
        assert_eq!(gen_partitions(4).count(), 5);
        assert_eq!(gen_partitions(10).count(), 42);
        let p = partition_numbers(25);
        for n in 0..=25 {
            let all: Vec<_> = gen_partitions(n as u32).collect();
            assert_eq!(all.len() as i64, p[n], "p({n})");
            assert!(all.iter().all(|q| q.weight() == n as u64));
            assert_eq!(all.iter().collect::<HashSet<_>>().len(), all.len());
        }
    }

    #[test]
    fn restricted_matches_filter() {
        for n in 0..=16 {
            let odd = gen_restricted(n, |s| s % 2 == 1);
            let filtered = gen_partitions(n).filter(|p| p.parts().iter().all(|s| s % 2 == 1)).count();
            assert_eq!(odd.len(), filtered);
        }
    }

    #[test]
    fn family_tables() {
        let b = count_partition_family(FamilySpec::new(Family::B, 2, 2).unwrap(), 4);
        assert_eq!(b.get(4), 2);
        let a = count_partition_family(FamilySpec::new(Family::A, 2, 2).unwrap(), 4);
        assert_eq!(a.get(4), 2);
        for f in Family::ALL {
            let t = count_partition_family(FamilySpec::new(f, 3, 2).unwrap(), 0);
            assert_eq!(t.counts(), vec![1]);
        }
    }

    #[test]
    fn small_path_lists() {
        let paths = gen_paths(2, 2, 1).unwrap();
        let shown: Vec<String> = paths.iter().map(LatticePath::to_ascii).collect();
        assert_eq!(shown, vec!["", "/\\"]);
        let paths = gen_paths(3, 1, 0).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].to_ascii(), "\\\\");
    }

    #[test]
    fn paths_complete_under_extent_bound() {
        for (k, a) in [(2, 2), (3, 1), (3, 3), (4, 2)] {
            let mut wide = gen_paths(k, a, 17).unwrap();
            wide.retain(|p| p.major_index() <= 12);
            let narrow = gen_paths(k, a, 12).unwrap();
            let w: HashSet<_> = wide.iter().collect();
            let n: HashSet<_> = narrow.iter().collect();
            assert_eq!(w, n);
            assert_eq!(n.len(), narrow.len());
            assert!(narrow.iter().all(|p| p.satisfies_conditions(k, a)));
        }
    }

    #[test]
    fn e_paths_match_b_partitions() {
        let e = count_path_family(PathFamilySpec::new(PathFamily::E, 2, 2).unwrap(), 15);
        let b = count_partition_family(FamilySpec::new(Family::B, 2, 2).unwrap(), 15);
        assert_eq!(e.counts(), b.counts());
    }

    #[test]
    fn refined_tables_agree() {
        let c = count_refined(RefinedKind::Clusters, 3, 10).unwrap();
        let p = count_refined(RefinedKind::Peaks, 3, 10).unwrap();
        assert_eq!(c.rows, p.rows);
        let zero = count_refined(RefinedKind::Clusters, 2, 0).unwrap();
        assert_eq!(zero.rows, BTreeMap::from([((0, 0, 0), 1)]));
    }

    #[test]
    fn csv_and_json() {
        let t = count_partition_family(FamilySpec::new(Family::B, 2, 2).unwrap(), 2);
        assert_eq!(t.to_csv(), "n,count\n0,1\n1,1\n2,1\n");
        assert_eq!(t.to_json()["rows"][2]["count"], 1);
        let r = count_refined(RefinedKind::Peaks, 2, 1).unwrap();
        assert_eq!(r.to_csv(), "l,m,n,count\n0,0,0,1\n0,1,1,1\n");
    }
}
