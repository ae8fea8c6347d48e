use num_bigint::BigInt;
use rrg_core::enumerate::{count_partition_family, count_path_family, count_refined, RefinedKind};
use rrg_core::family::{Family, FamilySpec};
use rrg_core::identities::{eval_master, eval_series, SeriesId};
use rrg_core::path::{PathFamily, PathFamilySpec};
use rrg_core::series::{pochhammer, qpoch_inf, Span, TruncatedSeries};

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn euler_inverse_gives_partition_numbers() {
    let inv = qpoch_inf(1, 1, 10).inverse().unwrap();
    assert_eq!(inv.coeff(10), BigInt::from(42));
    let geometric = TruncatedSeries::from_i64s(8, &[1; 9]);
    let one_minus_q = pochhammer(1, 1, -1, 1, Span::Finite(1), 8).unwrap();
    assert_eq!(one_minus_q.try_mul(&geometric).unwrap(), TruncatedSeries::one(8));
}

#[test]
fn ag_product_counts_congruence_partitions() {
    let prod = eval_series(SeriesId::AgProd, 2, 2, 10).unwrap();
    let a = count_partition_family(FamilySpec::new(Family::A, 2, 2).unwrap(), 10);
    assert_eq!(prod.coeffs(), big(&a.counts()).as_slice());
}

#[test]
fn w_product_counts_w_partitions() {
    let prod = eval_series(SeriesId::WProdSame, 3, 1, 20).unwrap();
    let w = count_partition_family(FamilySpec::new(Family::W, 3, 1).unwrap(), 20);
    assert_eq!(prod.coeffs(), big(&w.counts()).as_slice());
}

#[test]
fn q_sums_count_odd_peak_paths() {
    for k in 2..=5 {
        for a in 1..=k {
            let id = if a % 2 == 1 { SeriesId::QSumAodd } else { SeriesId::QSumAeven };
            let sum = eval_series(id, k, a, 18).unwrap();
            let q = count_path_family(PathFamilySpec::new(PathFamily::Q, k, a).unwrap(), 18);
            assert_eq!(sum.coeffs(), big(&q.counts()).as_slice(), "k={k} a={a}");
        }
    }
}

#[test]
fn master_matches_both_refined_tables() {
    for k in 2..=3 {
        let master = eval_master(k, 14).unwrap().entries();
        for kind in [RefinedKind::Clusters, RefinedKind::Peaks] {
            let table = count_refined(kind, k, 14).unwrap();
            let as_big = table.rows.iter().map(|(&key, &v)| (key, BigInt::from(v))).collect();
            assert_eq!(master, as_big, "k={k} {kind:?}");
        }
    }
}
