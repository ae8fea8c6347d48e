//! Exact power series in `q` truncated at a fixed order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of `q^0..=q^order`, all exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedSeries {
    order: usize,
    #[serde(serialize_with = "ser_coeffs", deserialize_with = "de_coeffs")]
    coeffs: Vec<BigInt>,
}

/// Coefficients that fit in 64 bits are written as JSON numbers, larger
/// ones as decimal strings.
fn ser_coeffs<S: Serializer>(coeffs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(coeffs.len()))?;
    for c in coeffs {
        match c.to_i64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&c.to_string())?,
        }
    }
    seq.end()
}

fn de_coeffs<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Coeff {
        Small(i64),
        Text(String),
    }
    Vec::<Coeff>::deserialize(d)?
        .into_iter()
        .map(|c| match c {
            Coeff::Small(v) => Ok(BigInt::from(v)),
            Coeff::Text(t) => t.parse().map_err(de::Error::custom),
        })
        .collect()
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self { order, coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, 1)
    }

    /// `c q^e`, or zero when `e` exceeds the order.
    pub fn monomial(order: usize, e: usize, c: i64) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = BigInt::from(c);
        }
        s
    }

    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut c: Vec<BigInt> = coeffs.into_iter().take(order + 1).collect();
        c.resize(order + 1, BigInt::zero());
        Self { order, coeffs: c }
    }

    pub fn from_i64s(order: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(order, coeffs.iter().map(|&c| BigInt::from(c)))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order, other.order))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be `±1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !c0.abs().is_one() {
            return Err(Error::NotInvertible);
        }
        let mut inv = Self::zero(self.order);
        inv.coeffs[0] = c0.clone();
        for n in 1..=self.order {
            let mut acc = BigInt::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &inv.coeffs[n - i];
                }
            }
            // c0 is its own inverse.
            inv.coeffs[n] = -(acc * c0);
        }
        Ok(inv)
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: usize) -> Self {
        let mut out = Self::zero(self.order);
        if e <= self.order {
            out.coeffs[e..].clone_from_slice(&self.coeffs[..=self.order - e]);
        }
        out
    }

    /// Same series viewed at a different order (truncating or zero-padding).
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.iter().cloned())
    }

    /// In-place multiplication by `1 + sign q^e`.
    pub fn mul_binomial(&mut self, sign: i64, e: usize) {
        if e == 0 {
            let factor = BigInt::from(1 + sign);
            for c in &mut self.coeffs {
                *c *= &factor;
            }
            return;
        }
        for n in (e..=self.order).rev() {
            let t = &self.coeffs[n - e] * sign;
            self.coeffs[n] += t;
        }
    }

    /// In-place division by `1 + sign q^e` with `e >= 1`.
    pub fn div_binomial(&mut self, sign: i64, e: usize) -> Result<()> {
        if e == 0 {
            return Err(Error::NotInvertible);
        }
        for n in e..=self.order {
            let t = &self.coeffs[n - e] * sign;
            self.coeffs[n] -= t;
        }
        Ok(())
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match (n, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{a}q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{a}q^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            /// Panics on an order mismatch; use the `try_` form to recover.
            fn $m(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                self.$f(rhs).expect("series orders must match")
            }
        }
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(mut self) -> TruncatedSeries {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

/// Length of a Pochhammer product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Span {
    Finite(usize),
    Infinite,
}

/// `prod_i (1 + sign q^(c + d i))^power` over `i < n`, truncated at `order`.
///
/// With `sign = -1` this is `(q^c; q^d)_n` for `power = 1`. A zero constant
/// factor (`c = 0`, `sign = -1`) gives the zero series for `power = 1` and is
/// rejected for `power = -1`.
pub fn pochhammer(
    c: usize,
    d: usize,
    sign: i64,
    power: i32,
    n: Span,
    order: usize,
) -> Result<TruncatedSeries> {
    if d == 0 {
        return Err(Error::Parameters("Pochhammer step must be positive".into()));
    }
    if sign.abs() != 1 || power.abs() != 1 {
        return Err(Error::Parameters("sign and power must be ±1".into()));
    }
    let mut s = TruncatedSeries::one(order);
    let count = match n {
        Span::Finite(n) => n,
        Span::Infinite => {
            if c > order {
                0
            } else {
                (order - c) / d + 1
            }
        }
    };
    for i in 0..count {
        let e = c + d * i;
        if e > order && e > 0 {
            break;
        }
        if power == 1 {
            s.mul_binomial(sign, e);
        } else {
            s.div_binomial(sign, e)?;
        }
    }
    Ok(s)
}

/// `(q^c; q^d)_∞`, the usual infinite product with minus signs.
pub fn qpoch_inf(c: usize, d: usize, order: usize) -> TruncatedSeries {
    pochhammer(c, d, -1, 1, Span::Infinite, order).expect("valid parameters")
}

/// `1 / (q^c; q^d)_n`.
pub fn qpoch_inv(c: usize, d: usize, n: usize, order: usize) -> Result<TruncatedSeries> {
    pochhammer(c, d, -1, -1, Span::Finite(n), order)
}

/// Series in `q` indexed by `(l, m)`, the exponents of `y` and `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivariateSeries {
    order: usize,
    terms: BTreeMap<(usize, usize), TruncatedSeries>,
}

impl TrivariateSeries {
    pub fn new(order: usize) -> Self {
        Self { order, terms: BTreeMap::new() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Adds `s` to the `y^l x^m` component.
    pub fn add_term(&mut self, l: usize, m: usize, s: &TruncatedSeries) -> Result<()> {
        if s.order() != self.order {
            return Err(Error::OrderMismatch(self.order, s.order()));
        }
        if s.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry((l, m)).or_insert_with(|| TruncatedSeries::zero(s.order()));
        *slot = slot.try_add(s)?;
        Ok(())
    }

    /// Coefficient of `y^l x^m q^n`.
    pub fn coeff(&self, l: usize, m: usize, n: usize) -> BigInt {
        self.terms.get(&(l, m)).map(|s| s.coeff(n)).unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &TruncatedSeries)> {
        self.terms.iter().filter(|(_, s)| !s.is_zero())
    }

    /// All nonzero coefficients as `((l, m, n), c)`.
    pub fn entries(&self) -> BTreeMap<(usize, usize, usize), BigInt> {
        let mut out = BTreeMap::new();
        for (&(l, m), s) in self.terms() {
            for (n, c) in s.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.insert((l, m, n), c.clone());
                }
            }
        }
        out
    }
}

#[derive(Serialize)]
struct TermDoc<'a> {
    l: usize,
    m: usize,
    #[serde(serialize_with = "ser_coeffs")]
    coeffs: &'a [BigInt],
}

impl Serialize for TrivariateSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            order: usize,
            terms: Vec<TermDoc<'a>>,
        }
        Doc {
            order: self.order,
            terms: self
                .terms()
                .map(|(&(l, m), t)| TermDoc { l, m, coeffs: t.coeffs() })
                .collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(order: usize, c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64s(order, c)
    }

    /// Partition numbers by Euler's pentagonal recurrence.
    fn partition_numbers(n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut acc = 0;
            for j in 1.. {
                let g1 = j * (3 * j - 1) / 2;
                if g1 > m {
                    break;
                }
                let sign = if j % 2 == 1 { 1 } else { -1 };
                acc += sign * p[m - g1];
                let g2 = j * (3 * j + 1) / 2;
                if g2 <= m {
                    acc += sign * p[m - g2];
                }
            }
            p[m] = acc;
        }
        p
    }

    #[test]
    fn arithmetic() {
        let one = TruncatedSeries::one(5);
        assert_eq!(&one * &one, one);
        let geometric = s(5, &[1, 1, 1, 1, 1, 1]);
        assert_eq!(&s(5, &[1, -1]) * &geometric, one);
        assert_eq!(s(5, &[1, -1]).inverse().unwrap(), geometric);
        assert_eq!(s(5, &[1, 2]) + s(5, &[0, -2, 3]), s(5, &[1, 0, 3]));
        assert_eq!(-s(3, &[1, 2]), s(3, &[-1, -2]));
        assert!(s(3, &[2, 1]).inverse().is_err());
        assert!(s(3, &[1]).try_mul(&s(4, &[1])).is_err());
    }

    #[test]
    fn euler_product_counts_partitions() {
        let inv = qpoch_inf(1, 1, 30).inverse().unwrap();
        assert_eq!(inv.coeff(10), BigInt::from(42));
        assert_eq!(inv.to_i64s().unwrap(), partition_numbers(30));
        let direct = pochhammer(1, 1, -1, -1, Span::Infinite, 30).unwrap();
        assert_eq!(direct, inv);
    }

    #[test]
    fn small_pochhammers() {
        assert_eq!(pochhammer(1, 1, -1, 1, Span::Finite(1), 4).unwrap(), s(4, &[1, -1]));
        assert_eq!(pochhammer(1, 1, 1, 1, Span::Finite(2), 4).unwrap(), s(4, &[1, 1, 1, 1]));
        assert!(pochhammer(0, 3, -1, 1, Span::Infinite, 6).unwrap().is_zero());
        assert!(pochhammer(0, 3, -1, -1, Span::Infinite, 6).is_err());
    }

    #[test]
    fn pentagonal_in_even_powers() {
        let e = qpoch_inf(2, 2, 24);
        let euler = qpoch_inf(1, 1, 12);
        for n in 0..=24 {
            let expect = if n % 2 == 0 { euler.coeff(n / 2) } else { BigInt::zero() };
            assert_eq!(e.coeff(n), expect);
        }
    }

    #[test]
    fn shift_and_order() {
        assert_eq!(s(4, &[1, 1]).shift(3), s(4, &[0, 0, 0, 1, 1]));
        assert!(s(4, &[1, 1]).shift(5).is_zero());
        assert_eq!(s(4, &[1, 2, 3]).with_order(1), s(1, &[1, 2]));
    }

    #[test]
    fn json_round_trip() {
        let big = TruncatedSeries::from_coeffs(1, [BigInt::from(3), BigInt::from(u64::MAX) * 4]);
        let v = serde_json::to_value(&big).unwrap();
        assert_eq!(v["order"], 1);
        assert_eq!(v["coeffs"][0], 3);
        assert!(v["coeffs"][1].is_string());
        let back: TruncatedSeries = serde_json::from_value(v).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn display() {
        assert_eq!(s(3, &[1, -1, 0, 2]).to_string(), "1 - q + 2q^3 + O(q^4)");
        assert_eq!(TruncatedSeries::zero(0).to_string(), "0 + O(q^1)");
    }
}
