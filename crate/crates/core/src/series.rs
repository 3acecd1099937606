//! Exact truncated power series in `q` and in `(zeta, q)` over arbitrary-precision
//! integers, q-Pochhammer products, and bilateral-term expansion helpers.
//!
//! A [`QSeries`] is known exactly through `q^N` inclusive and silently drops higher
//! terms; mixing truncation orders always takes the minimum. A [`RankSeries`] carries,
//! for each power of `q`, a sparse Laurent polynomial in the rank variable `zeta`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("constant term must be +1 or -1 to invert")]
    NonUnitConstant,
    #[error("infinite Pochhammer product requires q-offset >= 1")]
    InfiniteProductAtZero,
    #[error("bilateral factor requires a nonzero q-exponent")]
    ZeroBilateralExponent,
}

/// Length of a q-Pochhammer product: `(a;q)_n` or the truncated `(a;q)_inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLength {
    Finite(usize),
    Infinite,
}

/// Describes `(s * zeta^e * q^j ; q^d)_len` with `s` in `{+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochSpec {
    pub sign: i8,
    pub zeta_exponent: i64,
    pub q_offset: usize,
    pub q_step: usize,
    pub length: PochLength,
}

impl PochSpec {
    pub fn new(sign: i8, zeta_exponent: i64, q_offset: usize, q_step: usize, length: PochLength) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        assert!(q_step >= 1, "q-step must be positive");
        PochSpec { sign, zeta_exponent, q_offset, q_step, length }
    }
}

// ---------------------------------------------------------------------------
// QSeries
// ---------------------------------------------------------------------------

/// Truncated formal power series in `q` with exact integer coefficients,
/// known through `q^order` inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { order, coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, BigInt::one(), 0)
    }

    /// `coeff * q^exp` (zero if `exp` exceeds the order).
    pub fn monomial(order: usize, coeff: BigInt, exp: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = coeff;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty());
        QSeries { order: coeffs.len() - 1, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        assert!(n <= self.order, "coefficient index {n} beyond truncation order {}", self.order);
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncated(&self, order: usize) -> QSeries {
        let order = order.min(self.order);
        QSeries { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add_assign_coeff(&mut self, n: usize, c: &BigInt) {
        if n <= self.order {
            self.coeffs[n] += c;
        }
    }

    pub fn scalar_mul(&self, c: &BigInt) -> QSeries {
        QSeries { order: self.order, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by `q^k`, truncating at the existing order.
    pub fn shift(&self, k: usize) -> QSeries {
        let mut out = Self::zero(self.order);
        if k > self.order {
            return out;
        }
        for n in 0..=self.order - k {
            out.coeffs[n + k] = self.coeffs[n].clone();
        }
        out
    }

    /// In-place multiplication by `(1 + c*q^w)`, `w >= 1`.
    pub fn mul_binomial(&mut self, c: &BigInt, w: usize) {
        assert!(w >= 1);
        if w > self.order || c.is_zero() {
            return;
        }
        for n in (w..=self.order).rev() {
            let t = &self.coeffs[n - w] * c;
            self.coeffs[n] += t;
        }
    }

    /// In-place division by `(1 + c*q^w)`, `w >= 1`.
    pub fn div_binomial(&mut self, c: &BigInt, w: usize) {
        assert!(w >= 1);
        if w > self.order || c.is_zero() {
            return;
        }
        for n in w..=self.order {
            let t = &self.coeffs[n - w] * c;
            self.coeffs[n] -= t;
        }
    }

    /// Multiplicative inverse through the truncation order. The constant term
    /// must be a unit (+1 or -1).
    pub fn invert(&self) -> Result<QSeries, SeriesError> {
        let u = &self.coeffs[0];
        if !(u == &BigInt::one() || u == &(-BigInt::one())) {
            return Err(SeriesError::NonUnitConstant);
        }
        let mut inv = QSeries::zero(self.order);
        inv.coeffs[0] = u.clone();
        for n in 1..=self.order {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv.coeffs[n - k];
                }
            }
            inv.coeffs[n] = -(acc * u);
        }
        Ok(inv)
    }

    /// Reduce every coefficient into `[0, m)`.
    pub fn reduce_mod(&self, m: u64) -> Vec<u64> {
        let m_big = BigInt::from(m);
        self.coeffs
            .iter()
            .map(|c| {
                let r = c % &m_big;
                let r = if r.is_negative() { r + &m_big } else { r };
                let (_, digits) = r.to_u64_digits();
                *digits.first().unwrap_or(&0)
            })
            .collect()
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let order = self.order.min(rhs.order);
        let mut out = QSeries::zero(order);
        for n in 0..=order {
            out.coeffs[n] = &self.coeffs[n] + &rhs.coeffs[n];
        }
        out
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let order = self.order.min(rhs.order);
        let mut out = QSeries::zero(order);
        for n in 0..=order {
            out.coeffs[n] = &self.coeffs[n] - &rhs.coeffs[n];
        }
        out
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let order = self.order.min(rhs.order);
        let mut out = QSeries::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if !rhs.coeffs[j].is_zero() {
                    out.coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
                }
            }
        }
        out
    }
}

/// `(s * q^j ; q^d)_len` as a pure q-series (no rank variable).
pub fn pochhammer_q(sign: i8, q_offset: usize, q_step: usize, length: PochLength, order: usize) -> Result<QSeries, SeriesError> {
    assert!(sign == 1 || sign == -1);
    assert!(q_step >= 1);
    let c = BigInt::from(-i64::from(sign));
    let mut out = QSeries::one(order);
    match length {
        PochLength::Infinite => {
            if q_offset == 0 {
                return Err(SeriesError::InfiniteProductAtZero);
            }
            let mut e = q_offset;
            while e <= order {
                out.mul_binomial(&c, e);
                e += q_step;
            }
        }
        PochLength::Finite(n) => {
            for k in 0..n {
                let e = q_offset + k * q_step;
                if e == 0 {
                    // factor (1 - s*q^0) = 1 - s
                    out = out.scalar_mul(&(BigInt::one() + &c));
                } else if e <= order {
                    out.mul_binomial(&c, e);
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// RankSeries
// ---------------------------------------------------------------------------

/// Truncated series in `q` whose coefficient at `q^n` is a sparse Laurent
/// polynomial in the rank variable `zeta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSeries {
    order: usize,
    coeffs: Vec<BTreeMap<i64, BigInt>>,
}

fn map_add(dst: &mut BTreeMap<i64, BigInt>, m: i64, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let e = dst.entry(m).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        dst.remove(&m);
    }
}

impl RankSeries {
    pub fn zero(order: usize) -> Self {
        RankSeries { order, coeffs: vec![BTreeMap::new(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, BigInt::one(), 0, 0)
    }

    /// `coeff * zeta^rank * q^exp`.
    pub fn monomial(order: usize, coeff: BigInt, rank: i64, exp: usize) -> Self {
        let mut s = Self::zero(order);
        s.add_term(exp, rank, coeff);
        s
    }

    pub fn from_qseries(f: &QSeries) -> Self {
        let mut s = Self::zero(f.order());
        for n in 0..=f.order() {
            if !f.coeff(n).is_zero() {
                s.coeffs[n].insert(0, f.coeff(n).clone());
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize, m: i64) -> BigInt {
        assert!(n <= self.order);
        self.coeffs[n].get(&m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn rank_map(&self, n: usize) -> &BTreeMap<i64, BigInt> {
        assert!(n <= self.order);
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|m| m.is_empty())
    }

    pub fn truncated(&self, order: usize) -> RankSeries {
        let order = order.min(self.order);
        RankSeries { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Accumulate `c * zeta^m * q^n` in place (no-op beyond the order).
    pub fn add_term(&mut self, n: usize, m: i64, c: BigInt) {
        if n <= self.order {
            map_add(&mut self.coeffs[n], m, c);
        }
    }

    /// Multiply by `q^k`, truncating at the existing order.
    pub fn shift(&self, k: usize) -> RankSeries {
        let mut out = Self::zero(self.order);
        if k > self.order {
            return out;
        }
        for n in 0..=self.order - k {
            out.coeffs[n + k] = self.coeffs[n].clone();
        }
        out
    }

    /// In-place multiplication by `(1 + c * zeta^e * q^w)`, `w >= 1`.
    pub fn mul_binomial(&mut self, c: &BigInt, e: i64, w: usize) {
        assert!(w >= 1);
        if w > self.order || c.is_zero() {
            return;
        }
        for n in (w..=self.order).rev() {
            let adds: Vec<(i64, BigInt)> =
                self.coeffs[n - w].iter().map(|(m, v)| (m + e, v * c)).collect();
            for (m, v) in adds {
                map_add(&mut self.coeffs[n], m, v);
            }
        }
    }

    /// In-place division by `(1 + c * zeta^e * q^w)`, `w >= 1`.
    pub fn div_binomial(&mut self, c: &BigInt, e: i64, w: usize) {
        assert!(w >= 1);
        if w > self.order || c.is_zero() {
            return;
        }
        for n in w..=self.order {
            let subs: Vec<(i64, BigInt)> =
                self.coeffs[n - w].iter().map(|(m, v)| (m + e, v * c)).collect();
            for (m, v) in subs {
                map_add(&mut self.coeffs[n], m, -v);
            }
        }
    }

    pub fn mul_qseries(&self, g: &QSeries) -> RankSeries {
        let order = self.order.min(g.order());
        let mut out = RankSeries::zero(order);
        for j in 0..=order {
            let gj = g.coeff(j);
            if gj.is_zero() {
                continue;
            }
            for i in 0..=order - j {
                for (m, v) in &self.coeffs[i] {
                    map_add(&mut out.coeffs[i + j], *m, v * gj);
                }
            }
        }
        out
    }

    pub fn scalar_mul(&self, c: &BigInt) -> RankSeries {
        let mut out = self.clone();
        for map in &mut out.coeffs {
            if c.is_zero() {
                map.clear();
            } else {
                for v in map.values_mut() {
                    *v *= c;
                }
            }
        }
        out
    }

    /// Multiplicative inverse; the constant coefficient must be the Laurent
    /// monomial `+1` or `-1` (rank 0).
    pub fn invert(&self) -> Result<RankSeries, SeriesError> {
        let c0 = &self.coeffs[0];
        let unit = match (c0.len(), c0.get(&0)) {
            (1, Some(u)) if u == &BigInt::one() => BigInt::one(),
            (1, Some(u)) if u == &(-BigInt::one()) => -BigInt::one(),
            _ => return Err(SeriesError::NonUnitConstant),
        };
        let mut inv = RankSeries::zero(self.order);
        inv.coeffs[0].insert(0, unit.clone());
        for n in 1..=self.order {
            let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
            for k in 1..=n {
                for (m1, v1) in &self.coeffs[k] {
                    for (m2, v2) in &inv.coeffs[n - k] {
                        map_add(&mut acc, m1 + m2, v1 * v2);
                    }
                }
            }
            for (m, v) in acc {
                map_add(&mut inv.coeffs[n], m, -(v.clone() * &unit));
            }
        }
        Ok(inv)
    }

    /// Specialize `zeta = 1`: the coefficient at `q^n` becomes the sum over ranks.
    pub fn specialize_zeta_one(&self) -> QSeries {
        let mut out = QSeries::zero(self.order);
        for n in 0..=self.order {
            let mut acc = BigInt::zero();
            for v in self.coeffs[n].values() {
                acc += v;
            }
            out.coeffs[n] = acc;
        }
        out
    }
}

impl Add for &RankSeries {
    type Output = RankSeries;
    fn add(self, rhs: &RankSeries) -> RankSeries {
        let order = self.order.min(rhs.order);
        let mut out = self.truncated(order);
        for n in 0..=order {
            for (m, v) in &rhs.coeffs[n] {
                map_add(&mut out.coeffs[n], *m, v.clone());
            }
        }
        out
    }
}

impl Sub for &RankSeries {
    type Output = RankSeries;
    fn sub(self, rhs: &RankSeries) -> RankSeries {
        let order = self.order.min(rhs.order);
        let mut out = self.truncated(order);
        for n in 0..=order {
            for (m, v) in &rhs.coeffs[n] {
                map_add(&mut out.coeffs[n], *m, -v.clone());
            }
        }
        out
    }
}

impl Neg for &RankSeries {
    type Output = RankSeries;
    fn neg(self) -> RankSeries {
        let mut out = self.clone();
        for map in &mut out.coeffs {
            for v in map.values_mut() {
                *v = -v.clone();
            }
        }
        out
    }
}

impl Mul for &RankSeries {
    type Output = RankSeries;
    fn mul(self, rhs: &RankSeries) -> RankSeries {
        let order = self.order.min(rhs.order);
        let mut out = RankSeries::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_empty() {
                continue;
            }
            for j in 0..=order - i {
                if rhs.coeffs[j].is_empty() {
                    continue;
                }
                for (m1, v1) in &self.coeffs[i] {
                    for (m2, v2) in &rhs.coeffs[j] {
                        map_add(&mut out.coeffs[i + j], m1 + m2, v1 * v2);
                    }
                }
            }
        }
        out
    }
}

/// `(s * zeta^e * q^j ; q^d)_len` as a rank series.
pub fn pochhammer(spec: &PochSpec, order: usize) -> Result<RankSeries, SeriesError> {
    let c = BigInt::from(-i64::from(spec.sign));
    let mut out = RankSeries::one(order);
    match spec.length {
        PochLength::Infinite => {
            if spec.q_offset == 0 {
                return Err(SeriesError::InfiniteProductAtZero);
            }
            let mut e = spec.q_offset;
            while e <= order {
                out.mul_binomial(&c, spec.zeta_exponent, e);
                e += spec.q_step;
            }
        }
        PochLength::Finite(n) => {
            for k in 0..n {
                let e = spec.q_offset + k * spec.q_step;
                if e == 0 {
                    // factor (1 - s * zeta^e0 * q^0)
                    let one = RankSeries::one(order);
                    let m = RankSeries::monomial(order, c.clone(), spec.zeta_exponent, 0);
                    out = &out * &(&one + &m);
                } else if e <= order {
                    out.mul_binomial(&c, spec.zeta_exponent, e);
                }
            }
        }
    }
    Ok(out)
}

/// Expand `1 / (1 + sign * zeta^e * q^w)` in nonnegative powers of `q`.
///
/// For `w > 0` this is the geometric series `sum_{k>=0} (-sign)^k zeta^{ek} q^{wk}`.
/// For `w < 0` the factor is rewritten through `zeta^{-1} q^{-w}`, giving
/// `sum_{k>=1} (-1)^{k-1} sign^k zeta^{-ek} q^{-wk}`.
pub fn expand_bilateral_factor(sign: i8, zeta_exponent: i64, q_exponent: i64, order: usize) -> Result<RankSeries, SeriesError> {
    assert!(sign == 1 || sign == -1);
    if q_exponent == 0 {
        return Err(SeriesError::ZeroBilateralExponent);
    }
    let s = i64::from(sign);
    let mut out = RankSeries::zero(order);
    if q_exponent > 0 {
        let w = q_exponent as usize;
        let mut k = 0usize;
        while k * w <= order {
            let c = if (k % 2 == 1) && sign == 1 { -BigInt::one() } else { BigInt::one() };
            out.add_term(k * w, zeta_exponent * k as i64, c);
            k += 1;
        }
    } else {
        let w = (-q_exponent) as usize;
        let mut k = 1usize;
        while k * w <= order {
            // coefficient (-1)^{k-1} * sign^k
            let s_pow = if k.is_multiple_of(2) { 1 } else { s };
            let v = if (k - 1).is_multiple_of(2) { s_pow } else { -s_pow };
            out.add_term(k * w, -zeta_exponent * k as i64, BigInt::from(v));
            k += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    const ORDER: usize = 20;

    fn arb_qseries() -> impl Strategy<Value = QSeries> {
        proptest::collection::vec(-6i64..=6, ORDER + 1)
            .prop_map(|v| QSeries::from_coeffs(v.into_iter().map(BigInt::from).collect()))
    }

    fn arb_rank_series() -> impl Strategy<Value = RankSeries> {
        proptest::collection::vec((0usize..=ORDER, -4i64..=4, -5i64..=5), 0..24).prop_map(|terms| {
            let mut s = RankSeries::zero(ORDER);
            for (n, m, c) in terms {
                s.add_term(n, m, big(c));
            }
            s
        })
    }

    #[test]
    fn invert_geometric_series() {
        let mut f = QSeries::one(8);
        f.add_assign_coeff(1, &big(-1));
        let inv = f.invert().unwrap();
        for n in 0..=8 {
            assert_eq!(inv.coeff(n), &BigInt::one());
        }
    }

    #[test]
    fn invert_requires_unit_constant() {
        let f = QSeries::monomial(8, big(1), 1);
        assert!(matches!(f.invert(), Err(SeriesError::NonUnitConstant)));
    }

    #[test]
    fn mul_div_binomial_roundtrip() {
        let mut f = QSeries::from_coeffs((0..=12).map(BigInt::from).collect());
        let orig = f.clone();
        f.mul_binomial(&big(3), 2);
        f.div_binomial(&big(3), 2);
        assert_eq!(f, orig);
    }

    #[test]
    fn pochhammer_infinite_euler_function() {
        // (q; q)_inf = 1 - q - q^2 + q^5 + q^7 - q^12 - ...
        let f = pochhammer_q(1, 1, 1, PochLength::Infinite, 15).unwrap();
        let expect = [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(f.coeff(n), &big(*e), "euler function at q^{n}");
        }
    }

    #[test]
    fn pochhammer_infinite_at_zero_offset_rejected() {
        assert!(matches!(
            pochhammer_q(1, 0, 2, PochLength::Infinite, 10),
            Err(SeriesError::InfiniteProductAtZero)
        ));
    }

    #[test]
    fn bilateral_negative_exponent_example() {
        // 1/(1 - zeta q^{-3}) = -zeta^{-1} q^3 - zeta^{-2} q^6 - ... as a
        // cleared Laurent expansion
        let f = expand_bilateral_factor(-1, 1, -3, 10).unwrap();
        assert_eq!(f.coeff(3, -1), big(-1));
        assert_eq!(f.coeff(6, -2), big(-1));
        assert_eq!(f.coeff(9, -3), big(-1));
        assert!(f.rank_map(0).is_empty());
        assert!(f.rank_map(4).is_empty());
    }

    #[test]
    fn bilateral_zero_exponent_rejected() {
        assert!(matches!(
            expand_bilateral_factor(-1, 1, 0, 10),
            Err(SeriesError::ZeroBilateralExponent)
        ));
    }

    #[test]
    fn bilateral_factor_times_its_binomial_is_one() {
        // expand_bilateral_factor(s, e, w) = 1 / (1 + s zeta^e q^w)
        for (sign, e, w) in [(-1i8, 1i64, 4i64), (-1, 2, -5), (1, 1, 3), (1, -1, -2)] {
            let order = 20;
            let f = expand_bilateral_factor(sign, e, w, order).unwrap();
            if w > 0 {
                let mut cleared = f;
                cleared.mul_binomial(&big(sign as i64), e, w as usize);
                assert_eq!(cleared, RankSeries::one(order), "sign {sign} e {e} w {w}");
            } else {
                // clear the negative power: (q^{|w|} + s zeta^e) f = q^{|w|}
                let aw = (-w) as usize;
                let mut tail = RankSeries::zero(order);
                for n in 0..=order {
                    for (m, c) in f.rank_map(n).clone() {
                        tail.add_term(n, m + e, big(sign as i64) * c);
                    }
                }
                let cleared = &f.shift(aw) + &tail;
                assert_eq!(
                    cleared,
                    RankSeries::monomial(order, BigInt::one(), 0, aw),
                    "sign {sign} e {e} w {w}"
                );
            }
        }
    }

    #[test]
    fn rank_series_specialization_collapses_ranks() {
        let mut s = RankSeries::zero(6);
        s.add_term(3, 2, big(5));
        s.add_term(3, -1, big(-2));
        s.add_term(5, 0, big(7));
        let q = s.specialize_zeta_one();
        assert_eq!(q.coeff(3), &big(3));
        assert_eq!(q.coeff(5), &big(7));
        assert_eq!(q.coeff(0), &BigInt::zero());
    }

    #[test]
    fn reduce_mod_matches_bigint_rem_euclid() {
        let f = QSeries::from_coeffs(vec![big(-7), big(10), big(-1), big(0), big(13)]);
        assert_eq!(f.reduce_mod(4), vec![1, 2, 3, 0, 1]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn qseries_ring_axioms(a in arb_qseries(), b in arb_qseries(), c in arb_qseries()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, QSeries::zero(ORDER));
            prop_assert_eq!(&a * &QSeries::one(ORDER), a.clone());
        }

        #[test]
        fn qseries_invert_is_two_sided(a in arb_qseries()) {
            let mut u = a.clone();
            u.add_assign_coeff(0, &(BigInt::one() - u.coeff(0)));
            let inv = u.invert().unwrap();
            prop_assert_eq!(&u * &inv, QSeries::one(ORDER));
            prop_assert_eq!(&inv * &u, QSeries::one(ORDER));
        }

        #[test]
        fn binomial_ops_match_full_multiplication(a in arb_qseries(), c in -5i64..=5, w in 1usize..=6) {
            let mut fast = a.clone();
            fast.mul_binomial(&big(c), w);
            let mut factor = QSeries::one(ORDER);
            factor.add_assign_coeff(w, &big(c));
            prop_assert_eq!(&fast, &(&a * &factor));
            let mut back = fast;
            back.div_binomial(&big(c), w);
            prop_assert_eq!(back, a);
        }

        #[test]
        fn rank_series_ring_axioms(a in arb_rank_series(), b in arb_rank_series(), c in arb_rank_series()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, RankSeries::zero(ORDER));
        }

        #[test]
        fn specialization_is_a_ring_homomorphism(a in arb_rank_series(), b in arb_rank_series()) {
            let sum = (&a + &b).specialize_zeta_one();
            prop_assert_eq!(&sum, &(&a.specialize_zeta_one() + &b.specialize_zeta_one()));
            let prod = (&a * &b).specialize_zeta_one();
            prop_assert_eq!(&prod, &(&a.specialize_zeta_one() * &b.specialize_zeta_one()));
        }

        #[test]
        fn rank_binomial_roundtrip(a in arb_rank_series(), c in -3i64..=3, e in -2i64..=2, w in 1usize..=5) {
            let mut f = a.clone();
            f.mul_binomial(&big(c), e, w);
            f.div_binomial(&big(c), e, w);
            prop_assert_eq!(f, a);
        }

        #[test]
        fn pochhammer_recurrence(n in 1usize..=6) {
            // (-zeta q; q^2)_n = (-zeta q; q^2)_{n-1} * (1 + zeta q^{2n-1})
            let spec_n = PochSpec::new(-1, 1, 1, 2, PochLength::Finite(n));
            let spec_prev = PochSpec::new(-1, 1, 1, 2, PochLength::Finite(n - 1));
            let full = pochhammer(&spec_n, ORDER).unwrap();
            let mut grown = pochhammer(&spec_prev, ORDER).unwrap();
            grown.mul_binomial(&BigInt::one(), 1, 2 * n - 1);
            prop_assert_eq!(full, grown);
        }
    }
}
