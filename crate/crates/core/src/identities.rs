//! The multisums and infinite products of the Rogers-Ramanujan-Gordon
//! family, evaluated as truncated series.
//!
//! Every multisum runs over `N_1 >= ... >= N_{k-1} >= 0` with
//! `n_r = N_r - N_{r+1}` and `N_k = 0`; terms with `sum N_r^2 > order` are
//! skipped since they cannot contribute.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::check_ka;
use crate::series::{qpoch_inf, qpoch_inv, pochhammer, Span, TrivariateSeries, TruncatedSeries};

/// Named series, one per displayed side of an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesId {
    AgSum,
    AgProd,
    BressoudSum,
    BressoudProd,
    WSumSame,
    WSumDiff,
    WProdSame,
    WProdDiff,
    WbarSumKoa,
    WbarSumKea,
    WbarProdKoa,
    WbarProdKea,
    QSumAodd,
    QSumAeven,
    Master,
}

impl SeriesId {
    pub const ALL: [SeriesId; 15] = [
        SeriesId::AgSum,
        SeriesId::AgProd,
        SeriesId::BressoudSum,
        SeriesId::BressoudProd,
        SeriesId::WSumSame,
        SeriesId::WSumDiff,
        SeriesId::WProdSame,
        SeriesId::WProdDiff,
        SeriesId::WbarSumKoa,
        SeriesId::WbarSumKea,
        SeriesId::WbarProdKoa,
        SeriesId::WbarProdKea,
        SeriesId::QSumAodd,
        SeriesId::QSumAeven,
        SeriesId::Master,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesId::AgSum => "ag-sum",
            SeriesId::AgProd => "ag-prod",
            SeriesId::BressoudSum => "bressoud-sum",
            SeriesId::BressoudProd => "bressoud-prod",
            SeriesId::WSumSame => "w-sum-same",
            SeriesId::WSumDiff => "w-sum-diff",
            SeriesId::WProdSame => "w-prod-same",
            SeriesId::WProdDiff => "w-prod-diff",
            SeriesId::WbarSumKoa => "wbar-sum-koa",
            SeriesId::WbarSumKea => "wbar-sum-kea",
            SeriesId::WbarProdKoa => "wbar-prod-koa",
            SeriesId::WbarProdKea => "wbar-prod-kea",
            SeriesId::QSumAodd => "q-sum-aodd",
            SeriesId::QSumAeven => "q-sum-aeven",
            SeriesId::Master => "master",
        }
    }

    /// Whether `(k, a)` meets the parity requirement of the identity.
    pub fn check_parameters(self, k: u32, a: u32) -> Result<()> {
        check_ka(k, a)?;
        let same = k % 2 == a % 2;
        let (ok, need) = match self {
            SeriesId::WSumSame | SeriesId::WProdSame => (same, "k ≡ a (mod 2)"),
            SeriesId::WSumDiff | SeriesId::WProdDiff => (!same, "k ≢ a (mod 2)"),
            SeriesId::WbarSumKoa | SeriesId::WbarProdKoa => {
                (k % 2 == 1 && a % 2 == 0, "k odd and a even")
            }
            SeriesId::WbarSumKea | SeriesId::WbarProdKea => {
                (k % 2 == 0 && a % 2 == 1, "k even and a odd")
            }
            SeriesId::QSumAodd => (a % 2 == 1, "a odd"),
            SeriesId::QSumAeven => (a % 2 == 0, "a even"),
            _ => (true, ""),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ParityPrerequisite(format!("{self} needs {need}, got k = {k}, a = {a}")))
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SeriesId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Unknown(s.into()))
    }
}

/// Calls `f` with `N_1..N_{k-1}` for every tuple with `sum N^2 <= order`.
pub fn for_each_tuple(k: u32, order: usize, mut f: impl FnMut(&[usize])) {
    fn rec(
        big: &mut Vec<usize>,
        depth: usize,
        slots: usize,
        budget: usize,
        f: &mut impl FnMut(&[usize]),
    ) {
        if depth == slots {
            f(big);
            return;
        }
        let cap = if depth == 0 { usize::MAX } else { big[depth - 1] };
        let mut v = 0;
        while v <= cap && v * v <= budget {
            big.push(v);
            rec(big, depth + 1, slots, budget - v * v, f);
            big.pop();
            v += 1;
        }
    }
    rec(&mut Vec::new(), 0, k.saturating_sub(1) as usize, order, &mut f);
}

/// `n_r = N_r - N_{r+1}`, with `N_k = 0`.
fn small_counts(big: &[usize]) -> Vec<usize> {
    (0..big.len()).map(|i| big[i] - big.get(i + 1).copied().unwrap_or(0)).collect()
}

/// Denominator shape of a multisum.
#[derive(Clone, Copy)]
enum Denominators {
    /// `(q)_{n_1} ... (q)_{n_{k-1}}`.
    Plain,
    /// `(q)_{n_1} ... (q)_{n_{k-2}} (q^2;q^2)_{n_{k-1}}`.
    EvenLast,
    /// `(q^2;q^2)_{n_1} ... (q^2;q^2)_{n_{k-1}}`.
    Even,
}

/// Sum of `q^{sum N^2 + extra(N, n)} / denominators` over all tuples.
fn multisum(
    k: u32,
    order: usize,
    dens: Denominators,
    extra: impl Fn(&[usize], &[usize]) -> usize,
) -> Result<TruncatedSeries> {
    let mut cache: std::collections::HashMap<(usize, usize), TruncatedSeries> = Default::default();
    let mut inv = |d: usize, n: usize| -> Result<TruncatedSeries> {
        if let Some(s) = cache.get(&(d, n)) {
            return Ok(s.clone());
        }
        let s = qpoch_inv(d, d, n, order)?;
        cache.insert((d, n), s.clone());
        Ok(s)
    };
    let mut tuples = Vec::new();
    for_each_tuple(k, order, |big| tuples.push(big.to_vec()));
    let mut total = TruncatedSeries::zero(order);
    for big in tuples {
        let small = small_counts(&big);
        let e = big.iter().map(|n| n * n).sum::<usize>() + extra(&big, &small);
        if e > order {
            continue;
        }
        let mut term = TruncatedSeries::one(order).shift(e);
        let last = small.len().saturating_sub(1);
        for (i, &n) in small.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let d = match dens {
                Denominators::Plain => 1,
                Denominators::EvenLast => {
                    if i == last {
                        2
                    } else {
                        1
                    }
                }
                Denominators::Even => 2,
            };
            term = term.try_mul(&inv(d, n)?)?;
        }
        total = total.try_add(&term)?;
    }
    Ok(total)
}

/// `N_r` for `r` in `1..=k-1`, 1-based.
fn cap(big: &[usize], r: u32) -> usize {
    big.get((r as usize).wrapping_sub(1)).copied().unwrap_or(0)
}

/// `n_r`, 1-based, zero outside `1..=k-1`.
fn low(small: &[usize], r: u32) -> usize {
    if r == 0 {
        0
    } else {
        small.get(r as usize - 1).copied().unwrap_or(0)
    }
}

/// `N_from + N_{from+1} + ... + N_{k-1}`.
fn tail(big: &[usize], from: u32, k: u32) -> usize {
    (from.max(1)..k).map(|r| cap(big, r)).sum()
}

/// `(q^a, q^{m-a}, q^m; q^m)_∞`.
fn jacobi_triple(a: usize, m: usize, order: usize) -> Result<TruncatedSeries> {
    let s = qpoch_inf(a, m, order).try_mul(&qpoch_inf(m - a, m, order))?;
    s.try_mul(&qpoch_inf(m, m, order))
}

/// Evaluates a single-variable series by id. `master` is rejected here; use
/// [`eval_master`].
pub fn eval_series(id: SeriesId, k: u32, a: u32, order: usize) -> Result<TruncatedSeries> {
    id.check_parameters(k, a)?;
    let (ku, au) = (k as usize, a as usize);
    match id {
        SeriesId::AgSum => {
            multisum(k, order, Denominators::Plain, |big, _| tail(big, a, k))
        }
        SeriesId::BressoudSum => {
            multisum(k, order, Denominators::EvenLast, |big, _| tail(big, a, k))
        }
        SeriesId::WSumSame | SeriesId::WSumDiff => {
            // 2N_a + 2N_{a+2} + ... over indices up to k - 1.
            multisum(k, order, Denominators::Even, |big, _| {
                (a..k).step_by(2).map(|r| 2 * cap(big, r)).sum()
            })
        }
        SeriesId::WbarSumKoa | SeriesId::WbarSumKea => {
            // n_1 + n_3 + ... over odd r < a, plus N_a once more when a is
            // even, then N_a + ... + N_{k-1}.
            multisum(k, order, Denominators::Even, |big, small| {
                let odds: usize = (1..a).step_by(2).map(|r| low(small, r)).sum();
                let even_extra = if a % 2 == 0 { cap(big, a) } else { 0 };
                odds + even_extra + tail(big, a, k)
            })
        }
        SeriesId::QSumAodd | SeriesId::QSumAeven => {
            // n_2 + n_4 + ... over even r < a, plus N_a once more when a is
            // odd, then N_a + ... + N_{k-1}.
            multisum(k, order, Denominators::Even, |big, small| {
                let evens: usize = (2..a).step_by(2).map(|r| low(small, r)).sum();
                let odd_extra = if a % 2 == 1 { cap(big, a) } else { 0 };
                evens + odd_extra + tail(big, a, k)
            })
        }
        SeriesId::AgProd => {
            let num = jacobi_triple(au, 2 * ku + 1, order)?;
            num.try_mul(&qpoch_inf(1, 1, order).inverse()?)
        }
        SeriesId::BressoudProd => {
            let num = jacobi_triple(au, 2 * ku, order)?;
            num.try_mul(&qpoch_inf(1, 1, order).inverse()?)
        }
        SeriesId::WProdSame => {
            let m = 2 * ku + 2;
            even_base(1, order)?
                .try_mul(&jacobi_triple(au, m, order)?)
        }
        SeriesId::WProdDiff => {
            let m = 2 * ku + 2;
            let first = even_base(3, order)?.try_mul(&jacobi_triple(au + 1, m, order)?)?;
            let second = even_base(3, order)?
                .try_mul(&jacobi_triple(au - 1, m, order)?)?
                .shift(1);
            first.try_add(&second)
        }
        SeriesId::WbarProdKoa => {
            even_base(2, order)?.try_mul(&jacobi_triple(au, 2 * ku + 2, order)?)
        }
        SeriesId::WbarProdKea => {
            even_base(2, order)?.try_mul(&jacobi_triple(au + 1, 2 * ku + 2, order)?)
        }
        SeriesId::Master => Err(Error::Unknown("master is trivariate; use eval_master".into())),
    }
}

/// The even-modulus multisum with the linear term started at `N_{a+1}`
/// instead of `N_a`. It agrees with [`SeriesId::BressoudSum`] only when
/// `a = k`; kept so reports can show where the two part ways.
pub fn bressoud_sum_shifted(k: u32, a: u32, order: usize) -> Result<TruncatedSeries> {
    check_ka(k, a)?;
    multisum(k, order, Denominators::EvenLast, |big, _| tail(big, a + 1, k))
}

/// `(-q^c; q^2)_∞ / (q^2; q^2)_∞`.
fn even_base(c: usize, order: usize) -> Result<TruncatedSeries> {
    let num = pochhammer(c, 2, 1, 1, Span::Infinite, order)?;
    num.try_mul(&qpoch_inf(2, 2, order).inverse()?)
}

/// The trivariate series
/// `sum q^{sum N^2} x^{sum N} prod (-yq)_{n_r} / prod (q^2;q^2)_{n_r}`.
pub fn eval_master(k: u32, order: usize) -> Result<TrivariateSeries> {
    if k < 2 {
        return Err(Error::Parameters(format!("k = {k} must be at least 2")));
    }
    let mut out = TrivariateSeries::new(order);
    let mut tuples = Vec::new();
    for_each_tuple(k, order, |big| tuples.push(big.to_vec()));
    for big in tuples {
        let small = small_counts(&big);
        let e: usize = big.iter().map(|n| n * n).sum();
        let m: usize = big.iter().sum();
        // Polynomial in y with series coefficients, starting from q^e.
        let mut poly = vec![TruncatedSeries::one(order).shift(e)];
        for &n in &small {
            for i in 1..=n {
                // Multiply by (1 + y q^i).
                let mut next = vec![TruncatedSeries::zero(order); poly.len() + 1];
                for (l, s) in poly.iter().enumerate() {
                    next[l] = next[l].try_add(s)?;
                    next[l + 1] = next[l + 1].try_add(&s.shift(i))?;
                }
                poly = next;
            }
            if n > 0 {
                let inv = qpoch_inv(2, 2, n, order)?;
                for s in &mut poly {
                    *s = s.try_mul(&inv)?;
                }
            }
        }
        for (l, s) in poly.iter().enumerate() {
            out.add_term(l, m, s)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn coeffs(id: SeriesId, k: u32, a: u32, order: usize) -> Vec<i64> {
        eval_series(id, k, a, order).unwrap().to_i64s().unwrap()
    }

    /// Partitions of n into parts from `allowed`, by the standard recurrence.
    fn restricted(order: usize, allowed: impl Fn(usize) -> bool) -> Vec<i64> {
        let mut p = vec![0i64; order + 1];
        p[0] = 1;
        for part in (1..=order).filter(|&v| allowed(v)) {
            for n in part..=order {
                p[n] += p[n - part];
            }
        }
        p
    }

    #[test]
    fn ids_round_trip() {
        for id in SeriesId::ALL {
            assert_eq!(id.name().parse::<SeriesId>().unwrap(), id);
        }
        assert!("nope".parse::<SeriesId>().is_err());
    }

    #[test]
    fn rogers_ramanujan() {
        let expect = restricted(20, |v| v % 5 == 1 || v % 5 == 4);
        assert_eq!(coeffs(SeriesId::AgProd, 2, 2, 20), expect);
        assert_eq!(coeffs(SeriesId::AgSum, 2, 2, 20), expect);
    }

    #[test]
    fn order_zero_is_one() {
        for id in [SeriesId::AgSum, SeriesId::AgProd, SeriesId::BressoudSum, SeriesId::WSumSame] {
            assert_eq!(coeffs(id, 3, 1, 0), vec![1]);
        }
    }

    #[test]
    fn sums_equal_products() {
        for k in 2..=4 {
            for a in 1..=k {
                assert_eq!(coeffs(SeriesId::AgSum, k, a, 25), coeffs(SeriesId::AgProd, k, a, 25));
                assert_eq!(
                    coeffs(SeriesId::BressoudSum, k, a, 25),
                    coeffs(SeriesId::BressoudProd, k, a, 25)
                );
                let (sum, prod) = if k % 2 == a % 2 {
                    (SeriesId::WSumSame, SeriesId::WProdSame)
                } else {
                    (SeriesId::WSumDiff, SeriesId::WProdDiff)
                };
                assert_eq!(coeffs(sum, k, a, 25), coeffs(prod, k, a, 25), "W k={k} a={a}");
            }
        }
        assert_eq!(coeffs(SeriesId::WbarSumKoa, 3, 2, 25), coeffs(SeriesId::WbarProdKoa, 3, 2, 25));
        assert_eq!(coeffs(SeriesId::WbarSumKea, 4, 1, 25), coeffs(SeriesId::WbarProdKea, 4, 1, 25));
        assert_eq!(coeffs(SeriesId::WbarSumKea, 4, 3, 25), coeffs(SeriesId::WbarProdKea, 4, 3, 25));
    }

    #[test]
    fn shifted_even_modulus_sum() {
        assert_eq!(
            bressoud_sum_shifted(3, 3, 15).unwrap(),
            eval_series(SeriesId::BressoudSum, 3, 3, 15).unwrap()
        );
        // k = 2, a = 1: sum q^{N^2} / (q^2;q^2)_N = (-q; q^2)_∞ has q^1.
        assert_eq!(bressoud_sum_shifted(2, 1, 5).unwrap().coeff(1), BigInt::from(1));
        assert_eq!(coeffs(SeriesId::BressoudSum, 2, 1, 5), vec![1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn parity_prerequisites() {
        assert!(matches!(
            eval_series(SeriesId::WSumSame, 3, 2, 5),
            Err(Error::ParityPrerequisite(_))
        ));
        assert!(eval_series(SeriesId::QSumAeven, 3, 1, 5).is_err());
        assert!(eval_series(SeriesId::Master, 3, 1, 5).is_err());
    }

    #[test]
    fn master_small() {
        let m = eval_master(2, 4).unwrap();
        assert_eq!(m.coeff(0, 1, 1), BigInt::from(1));
        assert_eq!(m.coeff(0, 0, 0), BigInt::from(1));
        for n in 1..=4 {
            assert_eq!(m.coeff(0, 0, n), BigInt::from(0));
        }
        // k = 2: q x (1 + yq)/(1 - q^2) contributes y q^2 x.
        assert_eq!(m.coeff(1, 1, 2), BigInt::from(1));
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v["order"], 4);
        assert_eq!(v["terms"][0]["l"], 0);
        assert_eq!(v["terms"][0]["m"], 0);
    }

    #[test]
    fn tuples_are_pruned() {
        let mut count = 0;
        for_each_tuple(3, 4, |big| {
            assert!(big[0] >= big[1]);
            assert!(big.iter().map(|n| n * n).sum::<usize>() <= 4);
            count += 1;
        });
        // (0,0) (1,0) (1,1) (2,0)
        assert_eq!(count, 4);
    }
}
