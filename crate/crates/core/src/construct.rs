//! The map from a bijection ledger to a lattice path, and its inverse.
//!
//! Stages run from `i = k - 1` down to `1`. Each stage inserts one unit tent
//! per `i`-cluster at the start, raises the start by a leading SE step when
//! `i >= a`, walks the new relative-height-one peaks to the right by the
//! recorded move counts, and finally uplifts every peak by one level. Older
//! peaks already have relative height at least two when a stage starts, so
//! the relative-height-one peaks are exactly the ones being placed.

use crate::error::{Error, Result};
use crate::family::check_ka;
use crate::marking::{full_lower_even_cluster_parity_index, gordon_mark};
use crate::moves::{base_partition, phi, phi_inverse, BijectionLedger};
use crate::partition::Partition;
use crate::path::{LatticePath, Step};

use Step::{E, NE, SE};

/// Raises every peak by one: each `NE SE` apex becomes `NE NE SE SE`.
///
/// The `i`-th peak from the left moves from `x_i` to `x_i + 2i - 1`.
pub fn volcanic_uplift(path: &LatticePath) -> LatticePath {
    let mut steps = Vec::with_capacity(path.steps.len() + 2 * path.peak_positions().len());
    for (i, &s) in path.steps.iter().enumerate() {
        steps.push(s);
        if s == NE && path.steps.get(i + 1) == Some(&SE) {
            steps.push(NE);
            steps.push(SE);
        }
    }
    LatticePath { start_height: path.start_height, steps }
}

/// Undoes [`volcanic_uplift`]; every peak must have relative height two or
/// more so that removing its apex leaves a peak behind.
pub fn volcanic_lowering(path: &LatticePath) -> Result<LatticePath> {
    let peaks = path.peak_positions();
    for &x in &peaks {
        if x < 2 || path.steps[x - 2] != NE || path.steps.get(x + 1) != Some(&SE) {
            return Err(Error::Geometry(format!("peak at {x} cannot be lowered")));
        }
    }
    let mut steps = Vec::with_capacity(path.steps.len());
    let mut skip = peaks.iter().flat_map(|&x| [x - 1, x]).peekable();
    for (i, &s) in path.steps.iter().enumerate() {
        if skip.peek() == Some(&i) {
            skip.next();
        } else {
            steps.push(s);
        }
    }
    Ok(LatticePath { start_height: path.start_height, steps })
}

/// Prepends `count` unit tents, which land at weights `1, 3, ..., 2 count - 1`.
pub fn insert_initial_peaks(path: &LatticePath, count: usize, base: u32) -> Result<LatticePath> {
    if path.start_height != base {
        return Err(Error::Geometry(format!(
            "path starts at height {}, not {base}",
            path.start_height
        )));
    }
    let mut steps = Vec::with_capacity(2 * count + path.steps.len());
    for _ in 0..count {
        steps.extend([NE, SE]);
    }
    steps.extend_from_slice(&path.steps);
    Ok(LatticePath { start_height: base, steps })
}

/// Raises the start by one and prepends an SE step; every peak shifts right.
pub fn prepend_descent(path: &LatticePath) -> LatticePath {
    let mut steps = Vec::with_capacity(path.steps.len() + 1);
    steps.push(SE);
    steps.extend_from_slice(&path.steps);
    LatticePath { start_height: path.start_height + 1, steps }
}

/// Abscissas of the relative-height-one peaks, left to right.
fn unit_peaks(path: &LatticePath) -> Vec<usize> {
    path.peak_positions()
        .into_iter()
        .zip(path.peaks())
        .filter(|(_, p)| p.relative_height == 1)
        .map(|(x, _)| x)
        .collect()
}

/// One unit move to the right of the relative-height-one peak at `x`,
/// keyed on the step after its SE: slide over flat ground, climb onto an
/// ascent, or drop down a descent. The major index grows by one.
pub fn move_peak_right_at(path: &LatticePath, x: usize) -> Result<LatticePath> {
    if !path.is_peak_at(x) {
        return Err(Error::Geometry(format!("no peak at {x}")));
    }
    let mut steps = path.steps.clone();
    match steps.get(x + 1).copied() {
        None => {
            steps[x - 1] = E;
            steps[x] = NE;
            steps.push(SE);
        }
        Some(E) => {
            steps[x - 1] = E;
            steps[x] = NE;
            steps[x + 1] = SE;
        }
        Some(NE) => {
            steps[x] = NE;
            steps[x + 1] = SE;
        }
        Some(SE) => {
            steps[x - 1] = SE;
            steps[x] = NE;
        }
    }
    let moved = LatticePath { start_height: path.start_height, steps };
    moved.validate().map_err(|e| Error::Geometry(e.to_string()))?;
    Ok(moved)
}

/// Moves the `index`-th relative-height-one peak from the right one unit.
pub fn move_peak_right(path: &LatticePath, index: usize) -> Result<LatticePath> {
    let units = unit_peaks(path);
    let x = units
        .len()
        .checked_sub(index + 1)
        .map(|i| units[i])
        .ok_or_else(|| Error::Geometry(format!("fewer than {} unit peaks", index + 1)))?;
    move_peak_right_at(path, x)
}

/// One unit move to the left of the relative-height-one peak at `x`, the
/// exact inverse of [`move_peak_right_at`] on the paths the constructor
/// produces. Keyed on the step two before the apex.
pub fn move_peak_left_at(path: &LatticePath, x: usize) -> Result<LatticePath> {
    if !path.is_peak_at(x) || x < 2 {
        return Err(Error::Geometry(format!("peak at {x} cannot move left")));
    }
    let mut steps = path.steps.clone();
    match steps[x - 2] {
        E => {
            steps[x - 2] = NE;
            steps[x - 1] = SE;
            steps[x] = E;
            while steps.last() == Some(&E) {
                steps.pop();
            }
        }
        NE => {
            steps[x - 1] = SE;
            steps[x] = NE;
        }
        SE => {
            // An equal summit two steps back that was climbed onto: the
            // peak being retracted is that left one.
            let swapped = x >= 4 && steps[x - 3] == NE && steps[x - 4] == NE;
            if swapped {
                steps[x - 3] = SE;
                steps[x - 2] = NE;
            } else {
                steps[x - 2] = NE;
                steps[x - 1] = SE;
                steps[x] = SE;
            }
        }
    }
    let moved = LatticePath { start_height: path.start_height, steps };
    moved.validate().map_err(|e| Error::Geometry(e.to_string()))?;
    Ok(moved)
}

fn check_pis(pis: &[Vec<u32>], k: u32, a: u32) -> Result<()> {
    check_ka(k, a)?;
    if pis.len() != (k - 1) as usize {
        return Err(Error::Ledger(format!("expected {} move partitions, got {}", k - 1, pis.len())));
    }
    for (i, pi) in pis.iter().enumerate() {
        if pi.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Ledger(format!("pi^({}) = {pi:?} is not non-increasing", i + 1)));
        }
    }
    Ok(())
}

/// Builds the lattice path of a ledger given as move partitions;
/// `pis[r - 1]` has one entry per `r`-cluster.
pub fn psi(pis: &[Vec<u32>], k: u32, a: u32) -> Result<LatticePath> {
    check_pis(pis, k, a)?;
    let mut path = LatticePath::empty();
    for i in (1..k).rev() {
        let pi = &pis[(i - 1) as usize];
        let base = if i >= a { k - i - 1 } else { k - a };
        path = insert_initial_peaks(&path, pi.len(), base)?;
        if i >= a {
            path = prepend_descent(&path);
        }
        for (j, &moves) in pi.iter().enumerate() {
            for _ in 0..moves {
                path = move_peak_right(&path, j)?;
            }
        }
        if i >= 2 {
            path = volcanic_uplift(&path);
        }
    }
    if !path.satisfies_conditions(k, a) {
        return Err(Error::Geometry(format!("constructed path {path} breaks the ({k},{a})-conditions")));
    }
    Ok(path)
}

/// Recovers the move partitions from a path meeting the `(k, a)`-conditions.
pub fn psi_inverse(path: &LatticePath, k: u32, a: u32) -> Result<Vec<Vec<u32>>> {
    check_ka(k, a)?;
    if !path.satisfies_conditions(k, a) {
        return Err(Error::Path(format!("{path} breaks the ({k},{a})-conditions")));
    }
    let mut path = path.clone();
    let mut pis = vec![Vec::new(); (k - 1) as usize];
    for i in 1..k {
        if i >= 2 {
            path = volcanic_lowering(&path)?;
        }
        let n = unit_peaks(&path).len();
        let shift = usize::from(i >= a);
        let mut pi = vec![0u32; n];
        // Retract the leftmost peak first so the others keep their order.
        for t in 0..n {
            let target = 2 * t + 1 + shift;
            loop {
                let x = *unit_peaks(&path)
                    .get(t)
                    .ok_or_else(|| Error::Geometry("unit peak lost while retracting".into()))?;
                if x == target {
                    break;
                }
                if x < target {
                    return Err(Error::Geometry(format!("unit peak {t} overshot to {x}")));
                }
                path = move_peak_left_at(&path, x)?;
                pi[n - 1 - t] += 1;
            }
        }
        if i >= a {
            if path.steps.first() != Some(&SE) {
                return Err(Error::Geometry("missing leading SE step".into()));
            }
            path.steps.remove(0);
            path.start_height -= 1;
        }
        if path.steps.len() < 2 * n || path.steps[..2 * n].chunks(2).any(|c| c != [NE, SE]) {
            return Err(Error::Geometry("unit peaks are not at the start".into()));
        }
        path.steps.drain(..2 * n);
        if pi.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Geometry(format!("retraction gave unsorted moves {pi:?}")));
        }
        pis[(i - 1) as usize] = pi;
    }
    if !path.steps.is_empty() || path.start_height != 0 {
        return Err(Error::Geometry(format!("residual path {path} after retraction")));
    }
    Ok(pis)
}

/// The composite bijection from `B_{k,a}` partitions to lattice paths.
pub fn theta(p: &Partition, k: u32, a: u32) -> Result<LatticePath> {
    let ledger = phi(p, k, a)?;
    psi(&ledger.pis, k, a)
}

pub fn theta_inverse(path: &LatticePath, k: u32, a: u32) -> Result<Partition> {
    phi_inverse(&ledger_of_path(path, k, a)?)
}

/// The full ledger recovered from a path.
pub fn ledger_of_path(path: &LatticePath, k: u32, a: u32) -> Result<BijectionLedger> {
    let pis = psi_inverse(path, k, a)?;
    let counts: Vec<usize> = pis.iter().map(Vec::len).collect();
    let mu = base_partition(k, a, &counts)?;
    Ok(BijectionLedger { k, a, mu, pis })
}

/// The pair (number of parts, full lower-even cluster parity index) of a
/// partition, which `theta` carries to (sum of relative heights, full
/// lower-even peak parity index) when `a = k`.
pub fn partition_statistics(p: &Partition, k: u32) -> Result<(usize, usize)> {
    Ok((p.len(), full_lower_even_cluster_parity_index(&gordon_mark(p), k)?))
}
