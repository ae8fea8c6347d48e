//! Gordon markings, cluster decomposition and cluster parity statistics.
//!
//! A Gordon marking labels every part with the smallest positive mark not
//! already taken by an equal part or by a part one smaller, scanning parts in
//! increasing order. Parts carrying marks `1..=r` that form a chain with steps
//! of at most one, topped by an `r`-marked part with no `(r+1)`-marked part
//! equal to it or one above it, form an `r`-cluster. Every marking splits into
//! clusters in exactly one way.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A part together with its Gordon mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MarkedPart {
    pub part: u32,
    pub mark: u32,
}

/// The Gordon marking of a partition.
///
/// Entries are kept in non-increasing part order; equal parts are listed
/// with decreasing marks, the reverse of the order in which they were marked.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "MarkingDoc", into = "MarkingDoc")]
pub struct GordonMarking {
    entries: Vec<MarkedPart>,
}

#[derive(Serialize, Deserialize)]
struct MarkingDoc {
    entries: Vec<MarkedPart>,
}

impl TryFrom<MarkingDoc> for GordonMarking {
    type Error = Error;

    fn try_from(doc: MarkingDoc) -> Result<Self> {
        GordonMarking::from_entries(doc.entries)
    }
}

impl From<GordonMarking> for MarkingDoc {
    fn from(g: GordonMarking) -> Self {
        MarkingDoc { entries: g.entries }
    }
}

/// Marks the parts of `p`.
pub fn gordon_mark(p: &Partition) -> GordonMarking {
    mark_values(p.parts().iter().rev().copied())
}

/// Marks a multiset of values given in non-decreasing order.
fn mark_values(ascending: impl Iterator<Item = u32>) -> GordonMarking {
    let mut marked: Vec<MarkedPart> = Vec::new();
    // Marks held by parts equal to `cur_value - 1` and to `cur_value`.
    let mut cur_value = 0u32;
    let mut prev_marks: Vec<u32> = Vec::new();
    let mut cur_marks: Vec<u32> = Vec::new();
    for v in ascending {
        if v != cur_value {
            prev_marks = if v == cur_value + 1 {
                std::mem::take(&mut cur_marks)
            } else {
                cur_marks.clear();
                Vec::new()
            };
            cur_value = v;
        }
        let mut m = 1;
        while prev_marks.contains(&m) || cur_marks.contains(&m) {
            m += 1;
        }
        cur_marks.push(m);
        marked.push(MarkedPart { part: v, mark: m });
    }
    marked.reverse();
    GordonMarking { entries: marked }
}

/// True iff every mark of `p` is at most `k - 1`.
///
/// Equivalently `f_l(p) + f_{l+1}(p) <= k - 1` for every `l`.
pub fn max_mark_bound_check(p: &Partition, k: u32) -> bool {
    gordon_mark(p).max_mark() < k
}

impl GordonMarking {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Marks a multiset of part values given in any order.
    pub fn from_values(mut values: Vec<u32>) -> Result<Self> {
        if values.contains(&0) {
            return Err(Error::Structure("parts must be positive".into()));
        }
        values.sort_unstable();
        Ok(mark_values(values.into_iter()))
    }

    /// Accepts a list of entries only if it is the Gordon marking of its own
    /// parts (as a multiset of `(part, mark)` pairs).
    pub fn from_entries(entries: Vec<MarkedPart>) -> Result<Self> {
        let values: Vec<u32> = entries.iter().map(|e| e.part).collect();
        let canonical = Self::from_values(values)?;
        let mut given = entries;
        given.sort_unstable_by(|a, b| b.cmp(a));
        if given != canonical.entries {
            return Err(Error::Structure(
                "marks are not the Gordon marking of the parts".into(),
            ));
        }
        Ok(canonical)
    }

    pub fn entries(&self) -> &[MarkedPart] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest mark present, 0 for the empty marking.
    pub fn max_mark(&self) -> u32 {
        self.entries.iter().map(|e| e.mark).max().unwrap_or(0)
    }

    pub fn weight(&self) -> u64 {
        self.entries.iter().map(|e| u64::from(e.part)).sum()
    }

    pub fn partition(&self) -> Partition {
        Partition::new(self.entries.iter().map(|e| e.part).collect())
            .expect("marked parts are positive")
    }

    /// Part values in non-decreasing order.
    pub fn values_ascending(&self) -> Vec<u32> {
        self.entries.iter().rev().map(|e| e.part).collect()
    }

    /// Number of `r`-marked parts, `N_r`.
    pub fn marked_count(&self, r: u32) -> usize {
        self.entries.iter().filter(|e| e.mark == r).count()
    }

    /// The `r`-marked parts in increasing order.
    pub fn marked_parts(&self, r: u32) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .entries
            .iter()
            .filter(|e| e.mark == r)
            .map(|e| e.part)
            .collect();
        v.sort_unstable();
        v
    }

    /// Rows of the marking diagram: mark -> parts carrying it (increasing).
    pub fn rows(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut rows: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for e in self.entries.iter().rev() {
            rows.entry(e.mark).or_default().push(e.part);
        }
        rows
    }

    /// Checks the distinct-mark and minimality conditions directly.
    pub fn check_invariants(&self) -> Result<()> {
        let near = |a: u32, b: u32| a == b || a + 1 == b || b + 1 == a;
        for (i, x) in self.entries.iter().enumerate() {
            for y in &self.entries[i + 1..] {
                if near(x.part, y.part) && x.mark == y.mark {
                    return Err(Error::Structure(format!(
                        "parts {} and {} share mark {}",
                        x.part, y.part, x.mark
                    )));
                }
            }
            for lower in 1..x.mark {
                let ok = self
                    .entries
                    .iter()
                    .any(|y| y.mark == lower && (y.part == x.part || y.part + 1 == x.part));
                if !ok {
                    return Err(Error::Structure(format!(
                        "mark {} on part {} is not minimal (no {}-marked part at {} or {})",
                        x.mark,
                        x.part,
                        lower,
                        x.part.saturating_sub(1),
                        x.part
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Two-valued parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// Number of changes along `seq` when it is preceded by an even sentinel.
pub fn lower_even_changes(seq: impl IntoIterator<Item = Parity>) -> usize {
    let mut last = Parity::Even;
    let mut changes = 0;
    for p in seq {
        if p != last {
            changes += 1;
        }
        last = p;
    }
    changes
}

/// An `r`-cluster: members carry marks `1..=r` in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cluster {
    pub members: Vec<MarkedPart>,
}

impl Cluster {
    pub fn order(&self) -> u32 {
        self.members.len() as u32
    }

    pub fn weight(&self) -> u64 {
        self.members.iter().map(|m| u64::from(m.part)).sum()
    }

    /// The `r`-marked member.
    pub fn top(&self) -> u32 {
        self.members.last().map(|m| m.part).unwrap_or(0)
    }

    /// Member values in increasing order.
    pub fn values(&self) -> Vec<u32> {
        self.members.iter().map(|m| m.part).collect()
    }

    /// Verifies the chain conditions and maximality inside `host`.
    pub fn check_in(&self, host: &GordonMarking) -> Result<()> {
        let r = self.order();
        if r == 0 {
            return Err(Error::Structure("empty cluster".into()));
        }
        for (j, m) in self.members.iter().enumerate() {
            if m.mark != j as u32 + 1 {
                return Err(Error::Structure(format!("cluster mark {} at slot {}", m.mark, j + 1)));
            }
        }
        for w in self.members.windows(2) {
            if w[1].part < w[0].part || w[1].part - w[0].part > 1 {
                return Err(Error::Structure(format!(
                    "cluster members {} and {} are not a chain",
                    w[0].part, w[1].part
                )));
            }
        }
        let top = self.top();
        if host
            .entries()
            .iter()
            .any(|e| e.mark == r + 1 && (e.part == top || e.part == top + 1))
        {
            return Err(Error::Structure(format!(
                "{}-cluster topped by {} is covered by an {}-marked part",
                r,
                top,
                r + 1
            )));
        }
        Ok(())
    }
}

/// Splits a marking into its clusters.
///
/// Clusters are returned by decreasing order and, within one order, by
/// increasing top part.
pub fn cluster_decompose(g: &GordonMarking) -> Result<Vec<Cluster>> {
    // Ascending by part so that "largest unused candidate" is the last hit.
    let mut pool: Vec<(MarkedPart, bool)> = g.entries.iter().rev().map(|&e| (e, false)).collect();
    let mut clusters = Vec::new();
    for r in (1..=g.max_mark()).rev() {
        let tops: Vec<usize> = (0..pool.len())
            .filter(|&i| pool[i].0.mark == r)
            .collect();
        for t in tops {
            if pool[t].1 {
                continue;
            }
            pool[t].1 = true;
            let mut members = vec![pool[t].0];
            let mut current = pool[t].0.part;
            for j in (1..r).rev() {
                let pick = (0..pool.len()).rev().find(|&i| {
                    let (e, used) = pool[i];
                    !used && e.mark == j && (e.part == current || e.part + 1 == current)
                });
                let Some(i) = pick else {
                    return Err(Error::Structure(format!(
                        "no {j}-marked part below {current} for the {r}-cluster"
                    )));
                };
                pool[i].1 = true;
                current = pool[i].0.part;
                members.push(pool[i].0);
            }
            members.reverse();
            clusters.push(Cluster { members });
        }
    }
    Ok(clusters)
}

/// Parity of the number of even members, so that clusters made of odd parts
/// are even. This is the reading under which the cluster statistics have the
/// `(-yq; q)_{n_r}` generating factor.
pub fn cluster_parity(c: &Cluster) -> Parity {
    let evens = c.members.iter().filter(|m| m.part % 2 == 0).count();
    Parity::of(evens as i64)
}

/// Counts `r`-cluster parity changes, reading clusters by increasing top and
/// starting from an even sentinel.
pub fn lower_even_parity_index(g: &GordonMarking, r: u32) -> Result<usize> {
    let clusters = cluster_decompose(g)?;
    Ok(lower_even_index_of(&clusters, r))
}

fn lower_even_index_of(clusters: &[Cluster], r: u32) -> usize {
    let mut of_order: Vec<&Cluster> = clusters.iter().filter(|c| c.order() == r).collect();
    of_order.sort_by_key(|c| c.top());
    lower_even_changes(of_order.into_iter().map(cluster_parity))
}

/// Sum of the lower even `r`-cluster parity indices for `r = 1..k-1`.
pub fn full_lower_even_cluster_parity_index(g: &GordonMarking, k: u32) -> Result<usize> {
    let clusters = cluster_decompose(g)?;
    Ok((1..k).map(|r| lower_even_index_of(&clusters, r)).sum())
}

/// Number of `r`-clusters for `r = 1..=k-1`, index `r - 1`.
pub fn cluster_counts(g: &GordonMarking, k: u32) -> Result<Vec<usize>> {
    let clusters = cluster_decompose(g)?;
    let mut counts = vec![0; k.saturating_sub(1) as usize];
    for c in &clusters {
        let r = c.order() as usize;
        if r > counts.len() {
            return Err(Error::Parameters(format!("{r}-cluster exceeds k - 1 = {}", k - 1)));
        }
        counts[r - 1] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn mark(s: &str) -> GordonMarking {
        gordon_mark(&part(s))
    }

    #[test]
    fn marking_diagram_example() {
        let g = mark("9,8,6,6,5,5,4,4,3,2,1,1");
        let rows = g.rows();
        assert_eq!(rows[&1], vec![1, 3, 5, 8]);
        assert_eq!(rows[&2], vec![1, 4, 6, 9]);
        assert_eq!(rows[&3], vec![2, 4, 6]);
        assert_eq!(rows[&4], vec![5]);
        g.check_invariants().unwrap();
    }

    #[test]
    fn marking_of_bijection_example() {
        let g = mark("13,11,11,11,9,8,6,6,5,4,3,3,2,1");
        let rows = g.rows();
        assert_eq!(rows[&1], vec![1, 3, 5, 8, 11, 13]);
        assert_eq!(rows[&2], vec![2, 4, 6, 9, 11]);
        assert_eq!(rows[&3], vec![3, 6, 11]);
        assert_eq!(g.max_mark(), 3);
    }

    #[test]
    fn empty_marking() {
        let g = mark("");
        assert!(g.is_empty());
        assert_eq!(g.max_mark(), 0);
        assert!(cluster_decompose(&g).unwrap().is_empty());
        assert_eq!(full_lower_even_cluster_parity_index(&g, 4).unwrap(), 0);
    }

    #[test]
    fn bound_check() {
        assert!(max_mark_bound_check(&part("3,1"), 2));
        assert!(!max_mark_bound_check(&part("2,2,1"), 2));
        assert!(max_mark_bound_check(&part("13,11,11,11,9,8,6,6,5,4,3,3,2,1"), 4));
        assert!(!max_mark_bound_check(&part("13,11,11,11,9,8,6,6,5,4,3,3,2,1"), 3));
    }

    #[test]
    fn from_entries_rejects_wrong_marks() {
        let bad = vec![MarkedPart { part: 2, mark: 1 }, MarkedPart { part: 1, mark: 2 }];
        assert!(GordonMarking::from_entries(bad).is_err());
        let good = vec![MarkedPart { part: 1, mark: 1 }, MarkedPart { part: 2, mark: 2 }];
        assert_eq!(GordonMarking::from_entries(good).unwrap(), mark("2,1"));
    }

    fn cluster_values(cs: &[Cluster]) -> Vec<Vec<u32>> {
        let mut v: Vec<Vec<u32>> = cs.iter().map(|c| c.values()).collect();
        v.sort();
        v
    }

    #[test]
    fn decomposition_of_bijection_example() {
        let g = mark("13,11,11,11,9,8,6,6,5,4,3,3,2,1");
        let cs = cluster_decompose(&g).unwrap();
        assert_eq!(
            cluster_values(&cs),
            vec![
                vec![1, 2, 3],
                vec![3, 4],
                vec![5, 6, 6],
                vec![8, 9],
                vec![11, 11, 11],
                vec![13],
            ]
        );
        for c in &cs {
            c.check_in(&g).unwrap();
        }
        assert_eq!(cluster_counts(&g, 4).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn small_decompositions() {
        assert_eq!(cluster_values(&cluster_decompose(&mark("5")).unwrap()), vec![vec![5]]);
        assert_eq!(cluster_values(&cluster_decompose(&mark("2,1")).unwrap()), vec![vec![1, 2]]);
    }

    #[test]
    fn corrupted_marking_is_reported() {
        // A 2-marked part with no 1-marked partner.
        let g = GordonMarking {
            entries: vec![MarkedPart { part: 5, mark: 2 }],
        };
        assert!(matches!(cluster_decompose(&g), Err(Error::Structure(_))));
    }

    fn cl(parts: &[u32]) -> Cluster {
        Cluster {
            members: parts
                .iter()
                .enumerate()
                .map(|(i, &p)| MarkedPart { part: p, mark: i as u32 + 1 })
                .collect(),
        }
    }

    #[test]
    fn parities() {
        // One even member, none, two.
        assert_eq!(cluster_parity(&cl(&[1, 2, 3])), Parity::Odd);
        assert_eq!(cluster_parity(&cl(&[1, 1])), Parity::Even);
        assert_eq!(cluster_parity(&cl(&[5, 6, 6])), Parity::Even);
    }

    #[test]
    fn sentinel_changes() {
        use Parity::*;
        assert_eq!(lower_even_changes([]), 0);
        assert_eq!(lower_even_changes([Even, Even, Even]), 0);
        assert_eq!(lower_even_changes([Odd, Even, Odd]), 3);
    }

    #[test]
    fn full_index_of_small_marking() {
        // (2,1) is a single 2-cluster {1,2} with one even part: odd.
        let g = mark("2,1");
        assert_eq!(lower_even_parity_index(&g, 1).unwrap(), 0);
        assert_eq!(lower_even_parity_index(&g, 2).unwrap(), 1);
        assert_eq!(full_lower_even_cluster_parity_index(&g, 3).unwrap(), 1);
        assert_eq!(full_lower_even_cluster_parity_index(&mark("2"), 3).unwrap(), 1);
        assert_eq!(full_lower_even_cluster_parity_index(&mark("1"), 3).unwrap(), 0);
        // 1-clusters 2, 5, 7: parities odd, even, even.
        assert_eq!(full_lower_even_cluster_parity_index(&mark("7,5,2"), 2).unwrap(), 2);
    }
}
