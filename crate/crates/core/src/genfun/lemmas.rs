//! Truncated-series verification of the supporting identities behind the
//! generating-function forms: the partial-fraction split, the Appell-sum
//! reflection, the bilateral series transformation, negative-index Pochhammer
//! symbols, the q-binomial theorem and a Jackson-transform instance at the
//! specializations actually used, a false-theta expansion, the three Bailey
//! insertion formulas, and the monotonicity rewrites with their positivity
//! consequences.

use super::bailey::{pair_pentagonal, pair_peak_denominator, pair_theta};
use super::{appell_false_theta_sum, appell_rank_sum, inv_q2_q2_inf, ou_counts, ou_star_counts};
use crate::series::{QSeries, RankSeries};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Result of one identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl LemmaCheck {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        LemmaCheck {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
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

/// `(1 - q^{2w})/((1 - z q^w)(1 - z^{-1} q^w)) = 1/(1 - z q^w) + z^{-1}q^w/(1 - z^{-1}q^w)`
/// for the odd exponents `w` used by the double-sum rearrangement.
fn check_partial_fraction(order: usize) -> LemmaCheck {
    let mut pass = true;
    for r in 0..5usize {
        let w = 2 * r + 1;
        if w > order {
            break;
        }
        let mut lhs = RankSeries::one(order);
        lhs = &lhs - &lhs.shift(2 * w);
        lhs.div_binomial(&big(-1), 1, w);
        lhs.div_binomial(&big(-1), -1, w);

        let mut a = RankSeries::one(order);
        a.div_binomial(&big(-1), 1, w);
        let mut b = RankSeries::monomial(order, BigInt::one(), -1, w);
        b.div_binomial(&big(-1), -1, w);
        if lhs != &a + &b {
            pass = false;
        }
    }
    LemmaCheck::new("partial-fraction", pass, format!("w = 1,3,..,9 through q^{order}"))
}

/// `sum_{n>=0} q^{2n^2+2n+1} / (-zq, -z^{-1}q; q^2)_{n+1}`
/// `= 1/(q^2;q^2)_inf * sum_{n in Z} (-1)^n q^{3n^2+3n+1} / (1 + z q^{2n+1})`.
fn check_appell_reflection(order: usize) -> LemmaCheck {
    let mut lhs = RankSeries::zero(order);
    let mut inv = RankSeries::one(order);
    let mut n = 0usize;
    while 2 * n * n + 2 * n < order {
        let w = 2 * n + 1;
        inv.div_binomial(&big(1), 1, w);
        inv.div_binomial(&big(1), -1, w);
        lhs = &lhs + &inv.shift(2 * n * n + 2 * n + 1);
        n += 1;
    }
    let rhs = appell_false_theta_sum(order).mul_qseries(&inv_q2_q2_inf(order));
    LemmaCheck::new("appell-reflection", lhs == rhs, format!("through q^{order}"))
}

/// Bilateral transformation instance:
/// `1/(q^2;q^2)_inf * sum_{n in Z} z^{-n} q^{n^2+2n+1} / (1 + z q^{2n+1})`
/// `= sum_{n>=0} (-zq, -z^{-1}q; q^2)_n q^{2n+1} + sum_{n>=1} q^{2n^2-2n+1} / (-zq, -z^{-1}q; q^2)_n`.
fn check_bilateral_transform(order: usize) -> LemmaCheck {
    let lhs = appell_rank_sum(order).mul_qseries(&inv_q2_q2_inf(order));

    let mut rhs = super::gf(super::Family::OuStar, super::Form::Direct, order).unwrap();
    let mut inv = RankSeries::one(order);
    let mut n = 1usize;
    while 2 * n * n - 2 * n < order {
        let w = 2 * n - 1;
        inv.div_binomial(&big(1), 1, w);
        inv.div_binomial(&big(1), -1, w);
        rhs = &rhs + &inv.shift(2 * n * n - 2 * n + 1);
        n += 1;
    }
    LemmaCheck::new("bilateral-transform", lhs == rhs, format!("through q^{order}"))
}

/// Negative-index Pochhammer recurrence: with
/// `P_{-n} = z^{-n} q^{n^2} / (-z^{-1}q; q^2)_n` (the closed form of
/// `(-zq; q^2)_{-n}`), check `P_{-n} (q^{2n-1} + z) = P_{-n+1} q^{2n-1}`.
fn check_negative_pochhammer(order: usize) -> LemmaCheck {
    let p = |n: usize, order: usize| -> RankSeries {
        let mut s = RankSeries::monomial(order, BigInt::one(), -(n as i64), n * n);
        for i in 0..n {
            s.div_binomial(&big(1), -1, 2 * i + 1);
        }
        s
    };
    let mut pass = true;
    for n in 1..=6usize {
        let w = 2 * n - 1;
        if n * n + w > order {
            break;
        }
        // q^w + z = z (1 + z^{-1} q^w)
        let mut lhs = p(n, order);
        lhs.mul_binomial(&BigInt::one(), -1, w);
        let lhs = &lhs * &RankSeries::monomial(order, BigInt::one(), 1, 0);
        let rhs = p(n - 1, order).shift(w);
        if lhs != rhs {
            pass = false;
        }
    }
    LemmaCheck::new("negative-pochhammer", pass, "recurrence for n = 1..6")
}

/// `(q^2;q^2)_n / ((q^2;q^2)_m (q^2;q^2)_{n-m})` as a truncated series (it is
/// in fact a polynomial, the Gaussian binomial coefficient in base `q^2`).
fn gaussian_binomial(n: usize, m: usize, order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    for i in m + 1..=n {
        s.mul_binomial(&big(-1), 2 * i);
    }
    for i in 1..=(n - m) {
        s.div_binomial(&big(-1), 2 * i);
    }
    s
}

/// q-binomial theorem at the specialization used for the strict monotonicity
/// rewrite: `(-q^3; q^2)_n = sum_{m=0}^n [n choose m]_{q^2} q^{m^2+2m}`.
fn check_q_binomial(order: usize) -> LemmaCheck {
    let mut pass = true;
    for n in 0..=8usize {
        let mut lhs = QSeries::one(order);
        for i in 0..n {
            lhs.mul_binomial(&big(1), 2 * i + 3);
        }
        let mut rhs = QSeries::zero(order);
        for m in 0..=n {
            if m * m + 2 * m > order {
                break;
            }
            rhs = &rhs + &gaussian_binomial(n, m, order).shift(m * m + 2 * m);
        }
        if lhs != rhs {
            pass = false;
        }
    }
    LemmaCheck::new("q-binomial", pass, format!("n = 0..8 through q^{order}"))
}

/// Jackson-transform instance: for each fixed `m`,
/// `sum_{n>=0} (-q^{2m+3}, q^{2m+2}; q^2)_n q^{2n} / (q^2;q^2)_n`
/// `= 1/(q^2;q^2)_m * sum_{n>=0} q^{n^2+(2m+4)n} / ((q^2;q^2)_n (1 - q^{2n+2m+2}))`.
fn check_jackson_instance(order: usize) -> LemmaCheck {
    let mut pass = true;
    for m in 0..5usize {
        let mut lhs = QSeries::zero(order);
        let mut prod = QSeries::one(order);
        let mut n = 0usize;
        while 2 * n <= order {
            if n >= 1 {
                prod.mul_binomial(&big(1), 2 * m + 2 * n + 1);
                prod.mul_binomial(&big(-1), 2 * m + 2 * n);
                prod.div_binomial(&big(-1), 2 * n);
            }
            lhs = &lhs + &prod.shift(2 * n);
            n += 1;
        }

        let mut rhs = QSeries::zero(order);
        let mut inv = QSeries::one(order);
        let mut n = 0usize;
        while n * n + (2 * m + 4) * n <= order {
            if n >= 1 {
                inv.div_binomial(&big(-1), 2 * n);
            }
            let mut term = inv.clone();
            term.div_binomial(&big(-1), 2 * n + 2 * m + 2);
            rhs = &rhs + &term.shift(n * n + (2 * m + 4) * n);
            n += 1;
        }
        for i in 1..=m {
            rhs.div_binomial(&big(-1), 2 * i);
        }
        if lhs != rhs {
            pass = false;
        }
    }
    LemmaCheck::new("jackson-transform", pass, format!("m = 0..4 through q^{order}"))
}

/// `sum_{n>=0} (q;q^2)_n q^n = sum_{n>=0} (-1)^n q^{3n^2+2n} (1 + q^{2n+1})`.
fn check_false_theta(order: usize) -> LemmaCheck {
    let mut lhs = QSeries::zero(order);
    let mut prod = QSeries::one(order);
    let mut n = 0usize;
    while n <= order {
        if n >= 1 {
            prod.mul_binomial(&big(-1), 2 * n - 1);
        }
        lhs = &lhs + &prod.shift(n);
        n += 1;
    }
    let mut rhs = QSeries::zero(order);
    let mut n = 0usize;
    while 3 * n * n + 2 * n <= order {
        let e = 3 * n * n + 2 * n;
        rhs.add_assign_coeff(e, &sign_pow(n));
        if e + 2 * n < order {
            rhs.add_assign_coeff(e + 2 * n + 1, &sign_pow(n));
        }
        n += 1;
    }
    LemmaCheck::new("false-theta", lhs == rhs, format!("through q^{order}"))
}

/// `1 / ((q^j; q^2)_inf)` through the given order.
fn inv_poch_inf_q(j: usize, order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    let mut w = j;
    while w <= order {
        s.div_binomial(&big(-1), w);
        w += 2;
    }
    s
}

/// First insertion formula, at base `q^2` with `a = q^2` and the
/// peak-denominator pair:
/// `sum_{n>=0} q^{2n} beta_n = 1/((q^4, q^2; q^2)_inf) sum_{n,r>=0} (-1)^n q^{n^2+3n+2(2n+1)r} alpha_r`.
fn check_insertion_linear(order: usize) -> LemmaCheck {
    let pair = pair_peak_denominator();
    let mut lhs = RankSeries::zero(order);
    let mut inv = RankSeries::one(order);
    let mut n = 0usize;
    while 2 * n <= order {
        let w = 2 * n + 1;
        inv.div_binomial(&big(-1), 1, w);
        inv.div_binomial(&big(-1), -1, w);
        lhs = &lhs + &inv.shift(2 * n);
        n += 1;
    }

    let mut rhs = RankSeries::zero(order);
    let mut r = 0usize;
    while r * r + r <= order {
        let alpha = pair.alpha(r, order);
        let mut n = 0usize;
        while n * n + 3 * n + 2 * (2 * n + 1) * r <= order {
            let e = n * n + 3 * n + 2 * (2 * n + 1) * r;
            rhs = &rhs + &alpha.shift(e).scalar_mul(&sign_pow(n));
            n += 1;
        }
        r += 1;
    }
    let pref = &inv_poch_inf_q(4, order) * &inv_poch_inf_q(2, order);
    let rhs = rhs.mul_qseries(&pref);
    LemmaCheck::new("insertion-linear", lhs == rhs, format!("through q^{order}"))
}

/// Second insertion formula, at base `q^2` with `a = 1` and the theta pair:
/// `sum_{n>=0} (q^2;q^2)_{2n} q^{2n} beta_n = 1/(q^2;q^2)_inf sum_{n,r>=0} (-1)^n q^{3n^2+3n+2(2n+1)r} alpha_r`.
fn check_insertion_cubic(order: usize) -> LemmaCheck {
    let pair = pair_theta();
    let mut lhs = RankSeries::zero(order);
    let mut prod = RankSeries::one(order);
    let mut n = 0usize;
    while 2 * n <= order {
        if n >= 1 {
            // (q^2;q^2)_{2n} beta_n telescopes to (-zq, -z^{-1}q; q^2)_n
            prod.mul_binomial(&big(1), 1, 2 * n - 1);
            prod.mul_binomial(&big(1), -1, 2 * n - 1);
        }
        lhs = &lhs + &prod.shift(2 * n);
        n += 1;
    }

    let mut rhs = RankSeries::zero(order);
    let mut r = 0usize;
    while r * r <= order {
        let alpha = pair.alpha(r, order);
        let mut n = 0usize;
        while 3 * n * n + 3 * n + 2 * (2 * n + 1) * r <= order {
            let e = 3 * n * n + 3 * n + 2 * (2 * n + 1) * r;
            rhs = &rhs + &alpha.shift(e).scalar_mul(&sign_pow(n));
            n += 1;
        }
        r += 1;
    }
    let rhs = rhs.mul_qseries(&inv_q2_q2_inf(order));
    LemmaCheck::new("insertion-cubic", lhs == rhs, format!("through q^{order}"))
}

/// Third insertion formula, at base `q^2` with `a = q^2`,
/// `(b, c) = (-zq, -z^{-1}q)`, and the pentagonal pair:
/// `sum_{n>=0} (-zq, -z^{-1}q; q^2)_n q^{2n}`
/// `= ((-z^{-1}q^3, -zq^3; q^2)_inf / ((q^4, q^2; q^2)_inf))`
/// `  * sum_{n>=0} ((1+zq)(1+z^{-1}q) q^{2n} / ((1+z^{-1}q^{2n+1})(1+zq^{2n+1}))) alpha_n`.
fn check_insertion_product(order: usize) -> LemmaCheck {
    let pair = pair_pentagonal();
    let mut lhs = RankSeries::zero(order);
    let mut prod = RankSeries::one(order);
    let mut n = 0usize;
    while 2 * n <= order {
        if n >= 1 {
            prod.mul_binomial(&big(1), 1, 2 * n - 1);
            prod.mul_binomial(&big(1), -1, 2 * n - 1);
        }
        lhs = &lhs + &prod.shift(2 * n);
        n += 1;
    }

    let mut rhs = RankSeries::zero(order);
    let mut n = 0usize;
    // alpha_n has leading exponent 4n^2+2n - n(3n+1) = n^2 + n
    while n * n + n + 2 * n <= order {
        let mut term = pair.alpha(n, order).shift(2 * n);
        term.mul_binomial(&big(1), 1, 1);
        term.mul_binomial(&big(1), -1, 1);
        term.div_binomial(&big(1), -1, 2 * n + 1);
        term.div_binomial(&big(1), 1, 2 * n + 1);
        rhs = &rhs + &term;
        n += 1;
    }
    let mut pref = RankSeries::one(order);
    let mut w = 3usize;
    while w <= order {
        pref.mul_binomial(&big(1), -1, w);
        pref.mul_binomial(&big(1), 1, w);
        w += 2;
    }
    let pref = pref.mul_qseries(&(&inv_poch_inf_q(4, order) * &inv_poch_inf_q(2, order)));
    let rhs = &rhs * &pref;
    LemmaCheck::new("insertion-product", lhs == rhs, format!("through q^{order}"))
}

/// `(1-q) sum ou(n) q^n = sum_{n>=0} q^{2n+1} / ((q^3;q^2)_n (q;q^2)_{n+1})`,
/// whose coefficients are all nonnegative (hence `ou` is monotone).
fn check_monotone_rewrite(order: usize) -> LemmaCheck {
    let table = ou_counts(order);
    let lhs = &table - &table.shift(1);

    let mut rhs = QSeries::zero(order);
    let mut inv = QSeries::one(order);
    // running value of 1 / ((q^3;q^2)_n (q;q^2)_{n+1})
    inv.div_binomial(&big(-1), 1);
    let mut n = 0usize;
    while 2 * n < order {
        if n >= 1 {
            inv.div_binomial(&big(-1), 2 * n + 1);
            inv.div_binomial(&big(-1), 2 * n + 1);
        }
        rhs = &rhs + &inv.shift(2 * n + 1);
        n += 1;
    }
    let nonneg = (0..=order).all(|i| !rhs.coeff(i).is_negative());
    LemmaCheck::new(
        "monotone-rewrite",
        lhs == rhs && nonneg,
        format!("equality and nonnegativity through q^{order}"),
    )
}

/// Strict-family positivity rewrite:
/// `(1-q) sum ou*(n) q^n = q(1-q) + q^3 (1-q^2)(1+q) * S` with
/// `S = sum_{n,m>=0} q^{n^2+4n+m^2+4m+2nm} (-q^3;q^2)_m / ((q^2;q^2)_n (q^2;q^2)_m (1-q^{2n+2m+2}))`,
/// whose right-hand side has coefficient `1` at `q`, `-1` at `q^2`, and
/// nonnegative coefficients from `q^3` on.
pub fn positivity_check_strict(order: usize) -> LemmaCheck {
    let table = ou_star_counts(order);
    let lhs = &table - &table.shift(1);

    let mut s = QSeries::zero(order);
    let mut inv_n = QSeries::one(order);
    let mut n = 0usize;
    while n * n + 4 * n <= order {
        if n >= 1 {
            inv_n.div_binomial(&big(-1), 2 * n);
        }
        let mut poch_m = QSeries::one(order);
        let mut inv_m = QSeries::one(order);
        let mut m = 0usize;
        while n * n + 4 * n + m * m + 4 * m + 2 * n * m <= order {
            if m >= 1 {
                poch_m.mul_binomial(&big(1), 2 * m + 1);
                inv_m.div_binomial(&big(-1), 2 * m);
            }
            let mut term = &(&inv_n * &poch_m) * &inv_m;
            term.div_binomial(&big(-1), 2 * n + 2 * m + 2);
            s = &s + &term.shift(n * n + 4 * n + m * m + 4 * m + 2 * n * m);
            m += 1;
        }
        n += 1;
    }
    // q^3 (1-q^2)(1+q) S = (q^3 + q^4 - q^5 - q^6) S
    let mut rhs = &(&s.shift(3) + &s.shift(4)) - &(&s.shift(5) + &s.shift(6));
    rhs.add_assign_coeff(1, &BigInt::one());
    if order >= 2 {
        rhs.add_assign_coeff(2, &-BigInt::one());
    }

    let mut shape = true;
    if order >= 2 {
        shape &= rhs.coeff(1) == &BigInt::one() && rhs.coeff(2) == &-BigInt::one();
    }
    for i in 3..=order {
        shape &= !rhs.coeff(i).is_negative();
    }
    shape &= rhs.coeff(0).is_zero();
    LemmaCheck::new(
        "positivity-strict",
        lhs == rhs && shape,
        format!("equality and sign pattern through q^{order}"),
    )
}

/// Run every identity check at the given truncation order.
pub fn lemma_identities(order: usize) -> Vec<LemmaCheck> {
    vec![
        check_partial_fraction(order),
        check_appell_reflection(order),
        check_bilateral_transform(order),
        check_negative_pochhammer(order),
        check_q_binomial(order),
        check_jackson_instance(order),
        check_false_theta(order),
        check_insertion_linear(order),
        check_insertion_cubic(order),
        check_insertion_product(order),
        check_monotone_rewrite(order),
        positivity_check_strict(order),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_lemmas_pass_at_q40() {
        for check in lemma_identities(40) {
            assert!(check.pass, "{} failed ({})", check.name, check.detail);
        }
    }

    #[test]
    fn strict_positivity_sign_pattern() {
        let check = positivity_check_strict(30);
        assert!(check.pass, "{}", check.detail);
    }
}
