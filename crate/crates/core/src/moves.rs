//! Backward and forward moves on Gordon markings, and the map from a
//! partition to its bijection ledger `(mu, pi^(1), ..., pi^(k-1))`.
//!
//! A backward move of the `r`-th kind lowers the smallest `r`-marked part by
//! one and re-marks the whole multiset. Repeating it walks the lowest
//! `r`-cluster down through the smaller clusters below it, one unit of weight
//! at a time, while every cluster count stays fixed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{check_ka, is_member, membership, Family, FamilySpec};
use crate::marking::{cluster_counts, cluster_decompose, Cluster, GordonMarking};
use crate::partition::Partition;

/// The data `phi` extracts from a `B_{k,a}` partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionLedger {
    pub k: u32,
    pub a: u32,
    /// Minimal-weight marking with the same cluster counts.
    pub mu: GordonMarking,
    /// `pis[r - 1]` lists the move counts of the `r`-clusters, non-increasing.
    pub pis: Vec<Vec<u32>>,
}

impl BijectionLedger {
    /// Cluster counts `n_1, ..., n_{k-1}`.
    pub fn counts(&self) -> Vec<usize> {
        self.pis.iter().map(Vec::len).collect()
    }

    pub fn moves_total(&self) -> u64 {
        self.pis.iter().flatten().map(|&m| u64::from(m)).sum()
    }

    /// Weight of the source partition.
    pub fn weight(&self) -> u64 {
        self.mu.weight() + self.moves_total()
    }

    pub fn validate(&self) -> Result<()> {
        check_ka(self.k, self.a)?;
        if self.pis.len() != (self.k - 1) as usize {
            return Err(Error::Ledger(format!(
                "expected {} move partitions, got {}",
                self.k - 1,
                self.pis.len()
            )));
        }
        for (i, pi) in self.pis.iter().enumerate() {
            if pi.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Ledger(format!("pi^({}) = {pi:?} is not non-increasing", i + 1)));
            }
        }
        let expected = base_partition(self.k, self.a, &self.counts())?;
        if expected != self.mu {
            return Err(Error::Ledger(
                "mu is not the base partition of the cluster counts".into(),
            ));
        }
        Ok(())
    }
}

/// `N_r = n_r + ... + n_{k-1}` for `r = 1..k-1`.
pub fn cumulative_counts(counts: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    let mut out = vec![0; counts.len()];
    for r in (0..counts.len()).rev() {
        acc += counts[r];
        out[r] = acc;
    }
    out
}

/// Values of the cluster deposited at position `m` (0-based) with order `r`.
pub(crate) fn target_shape(r: u32, a: u32, m: usize) -> Vec<u32> {
    let odd = 2 * m as u32 + 1;
    if r >= a {
        let mut v = vec![odd; (a - 1) as usize];
        v.extend(std::iter::repeat(odd + 1).take((r - a + 1) as usize));
        v
    } else {
        vec![odd; r as usize]
    }
}

/// The minimal-weight `B_{k,a}` marking with `counts[r-1]` clusters of order `r`.
///
/// Its `r`-marked parts are `1, 3, ..., 2N_r - 1` for `r < a` and
/// `2, 4, ..., 2N_r` for `r >= a`.
pub fn base_partition(k: u32, a: u32, counts: &[usize]) -> Result<GordonMarking> {
    check_ka(k, a)?;
    if counts.len() != (k - 1) as usize {
        return Err(Error::Parameters(format!(
            "expected {} cluster counts, got {}",
            k - 1,
            counts.len()
        )));
    }
    let big = cumulative_counts(counts);
    let mut values = Vec::new();
    for (i, &n) in big.iter().enumerate() {
        let r = i as u32 + 1;
        let offset = u32::from(r >= a);
        values.extend((0..n as u32).map(|j| 2 * j + 1 + offset));
    }
    GordonMarking::from_values(values)
}

fn smallest_marked(g: &GordonMarking, r: u32) -> Option<u32> {
    g.entries().iter().filter(|e| e.mark == r).map(|e| e.part).min()
}

fn replace_one(values: &mut [u32], from: u32, to: u32) {
    let slot = values
        .iter_mut()
        .find(|v| **v == from)
        .expect("value present in multiset");
    *slot = to;
}

fn remark(values: Vec<u32>, kind: u32, k: Option<u32>) -> Result<GordonMarking> {
    let g = GordonMarking::from_values(values)?;
    if let Some(k) = k {
        if g.max_mark() >= k {
            return Err(Error::Validity { kind, k });
        }
    }
    Ok(g)
}

/// Lowers the smallest `r`-marked part by one and re-marks.
///
/// With `k` given, a result whose marks exceed `k - 1` is rejected.
pub fn backward_move(g: &GordonMarking, r: u32, k: Option<u32>) -> Result<GordonMarking> {
    let p = smallest_marked(g, r).ok_or(Error::NoSuchPart { kind: r })?;
    if p == 1 {
        return Err(Error::Underflow { kind: r });
    }
    let mut values = g.values_ascending();
    replace_one(&mut values, p, p - 1);
    remark(values, r, k)
}

/// The inverse of [`backward_move`]: the unique marking one unit heavier
/// whose backward move of kind `r` gives `g`.
pub fn forward_move(g: &GordonMarking, r: u32, k: Option<u32>) -> Result<GordonMarking> {
    let values = g.values_ascending();
    let mut distinct = values.clone();
    distinct.dedup();
    let mut found: Option<GordonMarking> = None;
    let mut rejected_by_bound = false;
    for &v in &distinct {
        let mut lifted = values.clone();
        replace_one(&mut lifted, v, v + 1);
        let candidate = match remark(lifted, r, k) {
            Ok(c) => c,
            Err(Error::Validity { .. }) => {
                rejected_by_bound = true;
                continue;
            }
            Err(e) => return Err(e),
        };
        if candidate.max_mark() == r && backward_move(&candidate, r, k).as_ref() == Ok(g) {
            if found.is_some() {
                return Err(Error::Structure(format!(
                    "forward move of kind {r} is ambiguous"
                )));
            }
            found = Some(candidate);
        }
    }
    match (found, rejected_by_bound) {
        (Some(c), _) => Ok(c),
        (None, true) => Err(Error::Validity { kind: r, k: k.unwrap_or(0) }),
        (None, false) => Err(Error::NoSuchPart { kind: r }),
    }
}

/// The cluster holding the smallest `r`-marked part.
fn lowest_cluster(g: &GordonMarking, r: u32) -> Result<Cluster> {
    let p = smallest_marked(g, r).ok_or(Error::NoSuchPart { kind: r })?;
    cluster_decompose(g)?
        .into_iter()
        .find(|c| c.members.iter().any(|m| m.mark == r && m.part == p))
        .ok_or_else(|| Error::Structure(format!("{r}-marked part {p} lies in no cluster")))
}

/// Maps a `B_{k,a}` partition to its ledger.
///
/// While parts remain, the lowest cluster of the largest mark `r` is moved
/// backwards until it matches the shape reserved for the `m`-th deposited
/// cluster, then it is removed; the number of moves becomes a part of
/// `pi^(r)`.
pub fn phi(p: &Partition, k: u32, a: u32) -> Result<BijectionLedger> {
    let spec = FamilySpec::new(Family::B, k, a)?;
    membership(p, spec).map_err(|reason| Error::NotMember {
        family: spec.to_string(),
        reason,
    })?;
    let mut lambda = crate::marking::gordon_mark(p);
    let mut pis: Vec<Vec<u32>> = vec![Vec::new(); (k - 1) as usize];
    let mut deposited: Vec<u32> = Vec::new();
    let mut m = 0usize;
    while !lambda.is_empty() {
        let r = lambda.max_mark();
        let target = target_shape(r, a, m);
        let target_weight: u64 = target.iter().map(|&v| u64::from(v)).sum();
        let mut cluster = lowest_cluster(&lambda, r)?;
        let mut moves = 0u32;
        while cluster.values() != target {
            if cluster.weight() <= target_weight {
                return Err(Error::Structure(format!(
                    "{r}-cluster {:?} cannot reach {target:?}",
                    cluster.values()
                )));
            }
            lambda = backward_move(&lambda, r, Some(k))?;
            moves += 1;
            cluster = lowest_cluster(&lambda, r)?;
        }
        let mut values = lambda.values_ascending();
        for &t in &target {
            let i = values.iter().position(|&v| v == t).expect("cluster values present");
            values.remove(i);
        }
        lambda = GordonMarking::from_values(values)?;
        deposited.extend(&target);
        pis[(r - 1) as usize].push(moves);
        m += 1;
    }
    for pi in &mut pis {
        pi.sort_unstable_by(|x, y| y.cmp(x));
    }
    let mu = GordonMarking::from_values(deposited)?;
    let ledger = BijectionLedger { k, a, mu, pis };
    ledger.validate()?;
    Ok(ledger)
}

/// Rebuilds the partition from its ledger by replaying forward moves.
pub fn phi_inverse(ledger: &BijectionLedger) -> Result<Partition> {
    ledger.validate()?;
    let (k, a) = (ledger.k, ledger.a);
    // Deposit order: largest order first, and within an order the smallest
    // move count first.
    let mut deposits: Vec<(u32, u32)> = Vec::new();
    for r in (1..k).rev() {
        let pi = &ledger.pis[(r - 1) as usize];
        deposits.extend(pi.iter().rev().map(|&moves| (r, moves)));
    }
    let mut lambda = GordonMarking::empty();
    for (m, &(r, moves)) in deposits.iter().enumerate().rev() {
        let mut values = lambda.values_ascending();
        values.extend(target_shape(r, a, m));
        lambda = GordonMarking::from_values(values)?;
        for _ in 0..moves {
            lambda = forward_move(&lambda, r, Some(k))?;
        }
    }
    let p = lambda.partition();
    if !is_member(&p, FamilySpec::new(Family::B, k, a)?) {
        return Err(Error::Ledger(format!("replay produced {p}, outside B_{{{k},{a}}}")));
    }
    Ok(p)
}

/// Cluster counts of a `B_{k,a}` partition, `n_1..n_{k-1}`.
pub fn partition_cluster_counts(p: &Partition, k: u32) -> Result<Vec<usize>> {
    cluster_counts(&crate::marking::gordon_mark(p), k)
}
