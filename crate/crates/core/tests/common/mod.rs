//! Shared oracles and property checks for the integration and acceptance
//! targets. Each check returns `Err` with a readable reason instead of
//! panicking so the acceptance runner can count failures.

#![allow(dead_code)]

use rrg_core::construct::{insert_initial_peaks, prepend_descent, volcanic_uplift};
use rrg_core::marking::{cluster_decompose, gordon_mark, GordonMarking, MarkedPart};
use rrg_core::partition::Partition;
use rrg_core::path::{LatticePath, Step};

/// The published partition of the worked example, with `k = 4`, `a = 3`.
pub const LAMBDA0: &str = "13,11,11,11,9,8,6,6,5,4,3,3,2,1";

/// Builds a path meeting the `(k, a)`-conditions from arbitrary choices:
/// each choice picks one of the allowed steps, then the path is closed by
/// descending to 0 and trimming trailing E steps.
pub fn path_from_choices(k: u32, a: u32, choices: &[u8]) -> LatticePath {
    let mut h = k - a;
    let mut steps = Vec::new();
    for &c in choices {
        let mut allowed = Vec::with_capacity(3);
        if h + 1 < k {
            allowed.push(Step::NE);
        }
        if h > 0 {
            allowed.push(Step::SE);
        }
        if h == 0 {
            allowed.push(Step::E);
        }
        let s = allowed[c as usize % allowed.len()];
        match s {
            Step::NE => h += 1,
            Step::SE => h -= 1,
            Step::E => {}
        }
        steps.push(s);
    }
    steps.extend(std::iter::repeat(Step::SE).take(h as usize));
    while steps.last() == Some(&Step::E) {
        steps.pop();
    }
    let path = LatticePath { start_height: k - a, steps };
    assert!(path.satisfies_conditions(k, a), "generator produced {path}");
    path
}

/// Distinct marks on equal or adjacent parts, and every mark `m` on part `p`
/// is witnessed by each smaller mark on `p - 1` or `p`.
pub fn check_marking(p: &Partition) -> Result<(), String> {
    let g = gordon_mark(p);
    let e = g.entries();
    if g.partition() != *p {
        return Err(format!("marking of {p} lost parts"));
    }
    for (i, x) in e.iter().enumerate() {
        for y in &e[i + 1..] {
            if x.part.abs_diff(y.part) <= 1 && x.mark == y.mark {
                return Err(format!("{p}: parts {} and {} share mark {}", x.part, y.part, x.mark));
            }
        }
        for m in 1..x.mark {
            let witnessed = e
                .iter()
                .any(|y| y.mark == m && (y.part == x.part || y.part + 1 == x.part));
            if !witnessed {
                return Err(format!("{p}: mark {} on {} has no {m}-marked witness", x.mark, x.part));
            }
        }
    }
    Ok(())
}

/// Counts every way to split a marking into clusters, by brute force: the
/// unassigned entry of largest mark must top a cluster, and each lower mark
/// may be taken from any unassigned entry at the current part or one below.
pub fn count_decompositions(g: &GordonMarking) -> usize {
    fn go(g: &GordonMarking, used: &mut Vec<bool>) -> usize {
        let e = g.entries();
        let Some(t) = (0..e.len()).filter(|&i| !used[i]).max_by_key(|&i| (e[i].mark, e[i].part)) else {
            return 1;
        };
        let top = e[t];
        let covered = e.iter().any(|x| x.mark == top.mark + 1 && (x.part == top.part || x.part == top.part + 1));
        if covered {
            return 0;
        }
        used[t] = true;
        let total = chain(g, used, top.part, top.mark - 1);
        used[t] = false;
        total
    }
    fn chain(g: &GordonMarking, used: &mut Vec<bool>, current: u32, j: u32) -> usize {
        if j == 0 {
            return go(g, used);
        }
        let e = g.entries();
        let mut total = 0;
        for i in 0..e.len() {
            let MarkedPart { part, mark } = e[i];
            if !used[i] && mark == j && (part == current || part + 1 == current) {
                used[i] = true;
                total += chain(g, used, part, j - 1);
                used[i] = false;
            }
        }
        total
    }
    go(g, &mut vec![false; g.len()])
}

/// The greedy decomposition covers every entry once with valid clusters, and
/// no other valid decomposition exists.
pub fn check_decomposition(p: &Partition) -> Result<(), String> {
    let g = gordon_mark(p);
    let clusters = cluster_decompose(&g).map_err(|e| format!("{p}: {e}"))?;
    let mut members: Vec<MarkedPart> = clusters.iter().flat_map(|c| c.members.clone()).collect();
    let mut entries = g.entries().to_vec();
    members.sort();
    entries.sort();
    if members != entries {
        return Err(format!("{p}: clusters do not partition the marked parts"));
    }
    for c in &clusters {
        c.check_in(&g).map_err(|e| format!("{p}: {e}"))?;
    }
    match count_decompositions(&g) {
        1 => Ok(()),
        n => Err(format!("{p}: {n} valid decompositions")),
    }
}

fn weights(path: &LatticePath) -> Vec<u64> {
    path.peak_positions().into_iter().map(|x| x as u64).collect()
}

/// Uplift sends the `i`-th peak from `x_i` to `x_i + 2i - 1`, so the major
/// index grows by `N^2` for `N` peaks.
pub fn check_uplift(path: &LatticePath) -> Result<(), String> {
    let before = weights(path);
    let up = volcanic_uplift(path);
    let after = weights(&up);
    let expected: Vec<u64> = before.iter().enumerate().map(|(i, x)| x + 2 * i as u64 + 1).collect();
    if after != expected {
        return Err(format!("uplift of {path}: peaks {after:?}, expected {expected:?}"));
    }
    let n = before.len() as u64;
    if up.major_index() != path.major_index() + n * n {
        return Err(format!("uplift of {path}: major index off"));
    }
    if up.peaks().iter().zip(path.peaks()).any(|(u, p)| u.height != p.height + 1) {
        return Err(format!("uplift of {path}: a peak did not rise by one"));
    }
    Ok(())
}

/// A leading SE shifts every peak right by one.
pub fn check_prepend(path: &LatticePath) -> Result<(), String> {
    let n = path.peak_positions().len() as u64;
    let out = prepend_descent(path);
    if out.major_index() != path.major_index() + n {
        return Err(format!("prepend to {path}: major index grew by {} not {n}", out.major_index() - path.major_index()));
    }
    out.validate().map_err(|e| format!("prepend to {path}: {e}"))
}

/// Inserting `count` unit tents adds peaks `1, 3, ..., 2count - 1` and pushes
/// the `N` old peaks right by `2count`: `count^2 + 2 count N` in all.
pub fn check_insert(path: &LatticePath, count: usize) -> Result<(), String> {
    let n = path.peak_positions().len() as u64;
    let c = count as u64;
    let out = insert_initial_peaks(path, count, path.start_height).map_err(|e| e.to_string())?;
    if out.major_index() != path.major_index() + c * c + 2 * c * n {
        return Err(format!("insert {count} into {path}: major index off"));
    }
    out.validate().map_err(|e| format!("insert into {path}: {e}"))
}
