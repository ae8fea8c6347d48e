mod common;

use std::collections::HashSet;

use rrg_core::construct::{ledger_of_path, partition_statistics, psi, theta, theta_inverse};
use rrg_core::enumerate::{for_each_path, gen_partitions};
use rrg_core::family::{is_member, Family, FamilySpec};
use rrg_core::moves::{phi, phi_inverse};
use rrg_core::partition::Partition;
use rrg_core::path::{full_lower_even_peak_parity_index, is_path_member, PathFamily, PathFamilySpec};

fn members(family: Family, k: u32, a: u32, max_n: u32) -> Vec<Partition> {
    let spec = FamilySpec::new(family, k, a).unwrap();
    (0..=max_n).flat_map(|n| gen_partitions(n).filter(move |p| is_member(p, spec))).collect()
}

#[test]
fn phi_round_trips_for_k_up_to_five() {
    for k in 2..=5 {
        for a in 1..=k {
            let mut seen = HashSet::new();
            for p in members(Family::B, k, a, 16) {
                let ledger = phi(&p, k, a).unwrap();
                assert_eq!(ledger.weight(), p.weight());
                ledger.validate().unwrap();
                assert!(seen.insert(ledger.pis.clone()), "duplicate ledger for {p}");
                assert_eq!(phi_inverse(&ledger).unwrap(), p);
            }
        }
    }
}

#[test]
fn path_ledgers_round_trip() {
    for (k, a) in [(3, 2), (4, 1), (4, 4), (5, 3)] {
        for_each_path(k, a, 16, &mut |path| {
            let ledger = ledger_of_path(path, k, a).unwrap();
            assert_eq!(psi(&ledger.pis, k, a).unwrap(), *path);
            assert_eq!(ledger.weight(), path.major_index());
        })
        .unwrap();
    }
}

#[test]
fn parity_families_correspond() {
    for k in 2..=5 {
        for a in 1..=k {
            for p in members(Family::B, k, a, 15) {
                let path = theta(&p, k, a).unwrap();
                let spec = |f| PathFamilySpec::new(f, k, a).unwrap();
                let w = is_member(&p, FamilySpec::new(Family::W, k, a).unwrap());
                let wbar = is_member(&p, FamilySpec::new(Family::Wbar, k, a).unwrap());
                assert_eq!(w, is_path_member(&path, spec(PathFamily::P)), "{p} k={k} a={a}");
                assert_eq!(wbar, is_path_member(&path, spec(PathFamily::Pbar)), "{p} k={k} a={a}");
            }
        }
    }
}

#[test]
fn refined_statistics_are_transported() {
    for k in 2..=4 {
        for p in members(Family::B, k, k, 16) {
            let path = theta(&p, k, k).unwrap();
            let rel: u32 = path.peaks().iter().map(|q| q.relative_height).sum();
            let (parts, index) = partition_statistics(&p, k).unwrap();
            assert_eq!(rel as usize, parts, "{p}");
            assert_eq!(full_lower_even_peak_parity_index(&path, k), index, "{p}");
        }
    }
}

#[test]
fn worked_example_round_trip() {
    let lambda: Partition = common::LAMBDA0.parse().unwrap();
    let path = theta(&lambda, 4, 3).unwrap();
    assert_eq!(path.major_index(), 93);
    assert_eq!(theta_inverse(&path, 4, 3).unwrap(), lambda);
}
