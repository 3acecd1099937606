//! Bailey pairs used by the double-sum generating-function forms, and a
//! truncated-series checker for the defining relation
//! `beta_n = sum_{k=0}^n alpha_k / ((Q; Q)_{n-k} (aQ; Q)_{n+k})`.
//!
//! All three pairs live at base `Q = q^2`; the two-variable ones carry `zeta`
//! through [`RankSeries`] expansions, so the relation is checked as an exact
//! identity of truncated rank-refined series.

use crate::series::{QSeries, RankSeries};
use num_bigint::BigInt;
use num_traits::One;

/// A Bailey pair relative to `(a, q^2)`, with `alpha_n` and `beta_n` realized
/// as truncated series expansions.
pub struct BaileyPair {
    /// Identifier used in reports.
    pub name: &'static str,
    /// `j` such that `a q^2 = q^j`: the second relation denominator is
    /// `(q^j; q^2)_{n+k}`.
    pub aq_offset: usize,
    alpha: Box<dyn Fn(usize, usize) -> RankSeries + Sync>,
    beta: Box<dyn Fn(usize, usize) -> RankSeries + Sync>,
}

impl BaileyPair {
    pub fn alpha(&self, n: usize, order: usize) -> RankSeries {
        (self.alpha)(n, order)
    }

    pub fn beta(&self, n: usize, order: usize) -> RankSeries {
        (self.beta)(n, order)
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn sign_pow(n: usize) -> BigInt {
    if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `1 / (q^j; q^2)_n` as a pure-q expansion.
fn inv_poch_q(j: usize, n: usize, order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    for i in 0..n {
        s.div_binomial(&big(-1), j + 2 * i);
    }
    s
}

/// Pair relative to `(q^2, q^2)` whose `beta_n` is the reciprocal peak
/// denominator `1 / (zq, z^{-1}q; q^2)_{n+1}`:
/// `alpha_n = (-1)^n q^{n^2+n} (1 - q^{4n+2}) / ((1-q^2)(1-zq^{2n+1})(1-z^{-1}q^{2n+1}))`.
pub fn pair_peak_denominator() -> BaileyPair {
    BaileyPair {
        name: "peak-denominator",
        aq_offset: 4,
        alpha: Box::new(|n, order| {
            let w = 2 * n + 1;
            let mut s = RankSeries::monomial(order, sign_pow(n), 0, n * n + n);
            if s.is_zero() {
                return s;
            }
            // (1 - q^{4n+2}) = (1 - q^{2w})
            s = &s - &s.shift(2 * w);
            s.div_binomial(&big(-1), 0, 2);
            s.div_binomial(&big(-1), 1, w);
            s.div_binomial(&big(-1), -1, w);
            s
        }),
        beta: Box::new(|n, order| {
            let mut s = RankSeries::one(order);
            for i in 0..=n {
                let w = 2 * i + 1;
                s.div_binomial(&big(-1), 1, w);
                s.div_binomial(&big(-1), -1, w);
            }
            s
        }),
    }
}

/// Pair relative to `(1, q^2)` specialized at `w = -zq`:
/// `alpha_0 = 1`, `alpha_n = (z^n + z^{-n}) q^{n^2}` for `n >= 1`, and
/// `beta_n = (-zq, -z^{-1}q; q^2)_n / (q^2; q^2)_{2n}`.
pub fn pair_theta() -> BaileyPair {
    BaileyPair {
        name: "theta",
        aq_offset: 2,
        alpha: Box::new(|n, order| {
            if n == 0 {
                return RankSeries::one(order);
            }
            let a = RankSeries::monomial(order, BigInt::one(), n as i64, n * n);
            let b = RankSeries::monomial(order, BigInt::one(), -(n as i64), n * n);
            &a + &b
        }),
        beta: Box::new(|n, order| {
            let mut s = RankSeries::one(order);
            for i in 0..n {
                let w = 2 * i + 1;
                s.mul_binomial(&big(1), 1, w);
                s.mul_binomial(&big(1), -1, w);
            }
            for i in 0..2 * n {
                s.div_binomial(&big(-1), 0, 2 + 2 * i);
            }
            s
        }),
    }
}

/// Pentagonal-number pair relative to `(q^2, q^2)`:
/// `alpha_n = q^{4n^2+2n} (1 - q^{4n+2}) / (1 - q^2) * sum_{j=-n}^n (-1)^j q^{-j(3j+1)}`,
/// `beta_n = 1`. The `q`-exponents `4n^2 + 2n - j(3j+1)` are nonnegative on
/// `|j| <= n`, so `alpha_n` expands in nonnegative powers.
pub fn pair_pentagonal() -> BaileyPair {
    BaileyPair {
        name: "pentagonal",
        aq_offset: 4,
        alpha: Box::new(|n, order| {
            let ni = n as i64;
            let base = 4 * ni * ni + 2 * ni;
            let mut pent = RankSeries::zero(order);
            for j in -ni..=ni {
                let e = base - j * (3 * j + 1);
                assert!(e >= 0, "pentagonal exponent underflow at n={n}, j={j}");
                if e as usize <= order {
                    pent.add_term(e as usize, 0, sign_pow(j.unsigned_abs() as usize));
                }
            }
            if pent.is_zero() {
                return pent;
            }
            let mut s = &pent - &pent.shift(4 * n + 2);
            s.div_binomial(&big(-1), 0, 2);
            s
        }),
        beta: Box::new(|_, order| RankSeries::one(order)),
    }
}

/// Outcome of checking the defining relation for one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaileyCheck {
    pub name: String,
    pub n_max: usize,
    pub order: usize,
    pub pass: bool,
    /// First `n` where the relation failed, if any.
    pub first_failure: Option<usize>,
}

/// Verify `beta_n = sum_{k=0}^n alpha_k / ((q^2;q^2)_{n-k} (q^j;q^2)_{n+k})`
/// through `q^order` for all `n <= n_max`.
pub fn bailey_check(pair: &BaileyPair, n_max: usize, order: usize) -> BaileyCheck {
    bailey_check_perturbed(pair, n_max, order, None)
}

/// Same as [`bailey_check`] but optionally adds `q^0` noise to one
/// `alpha_k`, as a negative control proving the checker can fail.
pub fn bailey_check_perturbed(
    pair: &BaileyPair,
    n_max: usize,
    order: usize,
    perturb_alpha_at: Option<usize>,
) -> BaileyCheck {
    let mut first_failure = None;
    for n in 0..=n_max {
        let mut rhs = RankSeries::zero(order);
        for k in 0..=n {
            let mut alpha = pair.alpha(k, order);
            if perturb_alpha_at == Some(k) {
                alpha.add_term(0, 0, BigInt::one());
            }
            let denom = &inv_poch_q(2, n - k, order) * &inv_poch_q(pair.aq_offset, n + k, order);
            rhs = &rhs + &alpha.mul_qseries(&denom);
        }
        if rhs != pair.beta(n, order) && first_failure.is_none() {
            first_failure = Some(n);
        }
    }
    BaileyCheck {
        name: pair.name.to_string(),
        n_max,
        order,
        pass: first_failure.is_none(),
        first_failure,
    }
}

pub fn all_pairs() -> Vec<BaileyPair> {
    vec![pair_peak_denominator(), pair_theta(), pair_pentagonal()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pairs_satisfy_relation_small() {
        for pair in all_pairs() {
            let check = bailey_check(&pair, 6, 40);
            assert!(check.pass, "{}: first failure at n={:?}", check.name, check.first_failure);
        }
    }

    #[test]
    fn perturbed_pair_fails() {
        for pair in all_pairs() {
            let check = bailey_check_perturbed(&pair, 6, 40, Some(2));
            assert!(!check.pass, "{}: perturbation not detected", check.name);
            assert_eq!(check.first_failure, Some(2));
        }
    }

    #[test]
    fn theta_alpha_anchor() {
        let pair = pair_theta();
        let a2 = pair.alpha(2, 10);
        assert_eq!(a2.coeff(4, 2), BigInt::from(1));
        assert_eq!(a2.coeff(4, -2), BigInt::from(1));
        assert_eq!(a2.coeff(4, 0), BigInt::from(0));
    }

    #[test]
    fn pentagonal_alpha_is_pure_q() {
        let pair = pair_pentagonal();
        for n in 0..=5 {
            let a = pair.alpha(n, 60);
            for e in 0..=60usize {
                for m in a.rank_map(e).keys() {
                    assert_eq!(*m, 0, "zeta^{m} term in pentagonal alpha_{n}");
                }
            }
        }
    }
}
