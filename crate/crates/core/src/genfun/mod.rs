//! Every generating-function form of the rank-refined odd unimodal and odd
//! strongly unimodal counting series, as truncated [`RankSeries`] producers,
//! plus fast exact coefficient tables at `zeta = 1`.
//!
//! Forms for the odd unimodal family:
//!   * `direct`    - sum over peaks of `q^{2n+1} / (zq, z^{-1}q; q^2)_{n+1}`
//!   * `ramanujan` - partial theta plus an infinite-product piece
//!   * `hecke`     - indefinite quadratic double sum with Appell-type denominators
//!
//! Forms for the odd strongly unimodal family:
//!   * `direct`    - `sum (-zq, -z^{-1}q; q^2)_n q^{2n+1}`
//!   * `appell`    - two bilateral Appell-type sums over the product `(q^2;q^2)_inf`
//!   * `hecke`     - plain indefinite quadratic double sum
//!   * `hecke2`    - double sum over the even sublattice with quadratic form
//!     `Q(r,s) = r^2/4 + 7rs/2 + s^2/4 + 3r/2 + 5s/2 + 1`

pub mod bailey;
pub mod lemmas;

use crate::series::{pochhammer_q, PochLength, QSeries, RankSeries};
use num_bigint::BigInt;
use num_traits::One;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Ou,
    OuStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Direct,
    Ramanujan,
    Hecke,
    Appell,
    Hecke2,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GenfunError {
    #[error("form {form:?} is not defined for family {family:?}")]
    UnsupportedForm { family: Family, form: Form },
}

pub fn forms_for(family: Family) -> &'static [Form] {
    match family {
        Family::Ou => &[Form::Direct, Form::Ramanujan, Form::Hecke],
        Family::OuStar => &[Form::Direct, Form::Appell, Form::Hecke, Form::Hecke2],
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

/// `1 / (q^2; q^2)_inf` through the given order.
fn inv_q2_q2_inf(order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    let mut e = 2usize;
    while e <= order {
        s.div_binomial(&big(-1), e);
        e += 2;
    }
    s
}

/// The two-variable generating function in the requested form.
pub fn gf(family: Family, form: Form, order: usize) -> Result<RankSeries, GenfunError> {
    match (family, form) {
        (Family::Ou, Form::Direct) => Ok(ou_direct(order)),
        (Family::Ou, Form::Ramanujan) => Ok(ou_ramanujan(order)),
        (Family::Ou, Form::Hecke) => Ok(ou_hecke(order)),
        (Family::OuStar, Form::Direct) => Ok(ou_star_direct(order)),
        (Family::OuStar, Form::Appell) => Ok(ou_star_appell(order)),
        (Family::OuStar, Form::Hecke) => Ok(ou_star_hecke(order)),
        (Family::OuStar, Form::Hecke2) => Ok(ou_star_hecke2(order)),
        _ => Err(GenfunError::UnsupportedForm { family, form }),
    }
}

/// `sum_{n>=0} q^{2n+1} / (zq, z^{-1}q; q^2)_{n+1}`.
fn ou_direct(order: usize) -> RankSeries {
    let mut acc = RankSeries::zero(order);
    let mut inv = RankSeries::one(order);
    let mut n = 0usize;
    while 2 * n < order {
        let w = 2 * n + 1;
        inv.div_binomial(&big(-1), 1, w);
        inv.div_binomial(&big(-1), -1, w);
        acc = &acc + &inv.shift(w);
        n += 1;
    }
    acc
}

/// Partial theta plus product form.
fn ou_ramanujan(order: usize) -> RankSeries {
    let mut part1 = RankSeries::zero(order);
    let mut n = 0usize;
    while 3 * n * n + 2 * n <= order {
        let e = 3 * n * n + 2 * n;
        let s = sign_pow(n + 1);
        part1.add_term(e, 3 * n as i64 + 1, s.clone());
        part1.add_term(e + 2 * n + 1, 3 * n as i64 + 2, s);
        n += 1;
    }

    let mut prod = RankSeries::one(order);
    let mut w = 1usize;
    while w <= order {
        prod.div_binomial(&big(-1), 1, w);
        prod.div_binomial(&big(-1), -1, w);
        w += 2;
    }
    let mut theta = RankSeries::zero(order);
    let mut n = 0usize;
    while n * n + n <= order {
        theta.add_term(n * n + n, 2 * n as i64 + 1, sign_pow(n));
        n += 1;
    }
    &part1 + &(&prod * &theta)
}

/// Hecke-type double sum for the odd unimodal family:
/// `q/(q^2;q^2)_inf^2 (sum_{n,r>=0} - sum_{n,r<0}) (-1)^{n+r} q^{n^2+3n+4nr+r^2+3r} / (1 - z q^{2r+1})`.
///
/// Both quadrants land on the same exponent formula after re-indexing the
/// negative one by `(n, r) -> (-n-1, -r-1)`; only the rank expansion differs.
fn ou_hecke(order: usize) -> RankSeries {
    let mut lattice = RankSeries::zero(order);
    let mut r = 0usize;
    while r * r + 3 * r <= order {
        let mut n = 0usize;
        loop {
            let e = n * n + 3 * n + 4 * n * r + r * r + 3 * r;
            if e > order {
                break;
            }
            let s = sign_pow(n + r);
            // positive quadrant: geometric expansion of 1/(1 - z q^{2r+1})
            let mut k = 0usize;
            while e + (2 * r + 1) * k <= order {
                lattice.add_term(e + (2 * r + 1) * k, k as i64, s.clone());
                k += 1;
            }
            // negative quadrant, re-indexed: subtracted, with
            // 1/(1 - z q^{-(2r+1)}) = -sum_{k>=1} z^{-k} q^{(2r+1)k}
            let mut k = 1usize;
            while e + (2 * r + 1) * k <= order {
                lattice.add_term(e + (2 * r + 1) * k, -(k as i64), s.clone());
                k += 1;
            }
            n += 1;
        }
        r += 1;
    }
    let mut pref = inv_q2_q2_inf(order);
    pref = (&pref * &pref).shift(1);
    lattice.mul_qseries(&pref)
}

/// `sum_{n>=0} (-zq, -z^{-1}q; q^2)_n q^{2n+1}`.
fn ou_star_direct(order: usize) -> RankSeries {
    let mut acc = RankSeries::zero(order);
    let mut prod = RankSeries::one(order);
    let mut n = 0usize;
    while 2 * n < order {
        if n >= 1 {
            let w = 2 * n - 1;
            prod.mul_binomial(&big(1), 1, w);
            prod.mul_binomial(&big(1), -1, w);
        }
        acc = &acc + &prod.shift(2 * n + 1);
        n += 1;
    }
    acc
}

/// Bilateral sum `sum_{n in Z} (-1)^n q^{3n^2+3n+1} / (1 + z q^{2n+1})`,
/// expanded in nonnegative powers of `q`.
pub(crate) fn appell_false_theta_sum(order: usize) -> RankSeries {
    let mut acc = RankSeries::zero(order);
    // n >= 0
    let mut n = 0usize;
    while 3 * n * n + 3 * n < order {
        let e = 3 * n * n + 3 * n + 1;
        let mut k = 0usize;
        while e + (2 * n + 1) * k <= order {
            acc.add_term(e + (2 * n + 1) * k, k as i64, sign_pow(n + k));
            k += 1;
        }
        n += 1;
    }
    // n = -m-1, m >= 0; exponent is again 3m^2+3m+1 and the denominator
    // 1 + z q^{-(2m+1)} expands as sum_{k>=1} (-1)^{k-1} z^{-k} q^{(2m+1)k}
    let mut m = 0usize;
    while 3 * m * m + 3 * m + 2 <= order {
        let e = 3 * m * m + 3 * m + 1;
        let mut k = 1usize;
        while e + (2 * m + 1) * k <= order {
            acc.add_term(e + (2 * m + 1) * k, -(k as i64), sign_pow(m + k));
            k += 1;
        }
        m += 1;
    }
    acc
}

/// Bilateral sum `sum_{n in Z} z^{-n} q^{n^2+2n+1} / (1 + z q^{2n+1})`.
pub(crate) fn appell_rank_sum(order: usize) -> RankSeries {
    let mut acc = RankSeries::zero(order);
    let mut n = 0usize;
    while (n + 1) * (n + 1) <= order {
        let e = (n + 1) * (n + 1);
        let mut k = 0usize;
        while e + (2 * n + 1) * k <= order {
            acc.add_term(e + (2 * n + 1) * k, k as i64 - n as i64, sign_pow(k));
            k += 1;
        }
        n += 1;
    }
    // n = -m-1, m >= 0: exponent m^2, rank prefactor z^{m+1}
    let mut m = 0usize;
    while m * m + 2 * m < order {
        let e = m * m;
        let mut k = 1usize;
        while e + (2 * m + 1) * k <= order {
            acc.add_term(e + (2 * m + 1) * k, m as i64 + 1 - k as i64, sign_pow(k + 1));
            k += 1;
        }
        m += 1;
    }
    acc
}

/// Appell-type form: `(-S_A + S_B) / (q^2;q^2)_inf` with `S_A` the false-theta
/// Appell sum and `S_B` the rank-weighted one.
fn ou_star_appell(order: usize) -> RankSeries {
    let sa = appell_false_theta_sum(order);
    let sb = appell_rank_sum(order);
    (&sb - &sa).mul_qseries(&inv_q2_q2_inf(order))
}

/// `q/(q^2;q^2)_inf (sum_{n,r>=0} - sum_{n,r<0}) (-1)^n z^r q^{3n^2+3n+4nr+r^2+2r}`.
fn ou_star_hecke(order: usize) -> RankSeries {
    let mut lattice = RankSeries::zero(order);
    // positive quadrant
    let mut r = 0usize;
    while r * r + 2 * r <= order {
        let mut n = 0usize;
        loop {
            let e = 3 * n * n + 3 * n + 4 * n * r + r * r + 2 * r;
            if e > order {
                break;
            }
            lattice.add_term(e, r as i64, sign_pow(n));
            n += 1;
        }
        r += 1;
    }
    // negative quadrant re-indexed by (n, r) -> (-n-1, -r-1); the subtraction
    // and the sign of (-1)^{-n-1} cancel
    let mut r = 0usize;
    while r * r + 4 * r + 3 <= order {
        let mut n = 0usize;
        loop {
            let e = 3 * n * n + 7 * n + 4 * n * r + r * r + 4 * r + 3;
            if e > order {
                break;
            }
            lattice.add_term(e, -(r as i64) - 1, sign_pow(n));
            n += 1;
        }
        r += 1;
    }
    lattice.mul_qseries(&inv_q2_q2_inf(order).shift(1))
}

/// `Q(r,s) = r^2/4 + 7rs/2 + s^2/4 + 3r/2 + 5s/2 + 1` for `r = s (mod 2)`.
/// Returns the exact integer value; the parity constraint makes the quarter
/// denominators clear.
pub fn hecke2_exponent(r: i64, s: i64) -> i64 {
    let four_q = r * r + 14 * r * s + s * s + 6 * r + 10 * s + 4;
    assert!(
        (r - s) % 2 == 0 && four_q % 4 == 0,
        "lattice point ({r},{s}) violates the parity constraint"
    );
    four_q / 4
}

/// Even-sublattice double-sum form with the indefinite quadratic `Q(r,s)`.
fn ou_star_hecke2(order: usize) -> RankSeries {
    let iorder = order as i64;
    let mut lattice = RankSeries::zero(order);
    // Q is strictly increasing in each variable on both cones, so each row
    // (fixed r) can stop at the first out-of-range exponent. Row minima are
    // only monotone within one parity class, so the outer loops break after
    // two consecutive out-of-range rows.
    //
    // positive cone: r, s >= 0 with r = s (mod 2)
    for r in 0.. {
        if hecke2_exponent(r, r % 2) > iorder {
            if r > 0 && hecke2_exponent(r - 1, (r - 1) % 2) > iorder {
                break;
            }
            continue;
        }
        let mut s = r % 2;
        while hecke2_exponent(r, s) <= iorder {
            let e = hecke2_exponent(r, s) as usize;
            let sgn = sign_pow(((r - s) / 2).unsigned_abs() as usize);
            let w = (r + s + 1) as usize;
            // 1/(1 + z q^w) = sum_{k>=0} (-1)^k z^k q^{wk}
            let mut k = 0usize;
            while e + w * k <= order {
                let c = if k.is_multiple_of(2) { sgn.clone() } else { -sgn.clone() };
                lattice.add_term(e + w * k, k as i64, c);
                k += 1;
            }
            s += 2;
        }
    }
    // negative cone: r = -a, s = -b with a, b >= 1, a = b (mod 2); subtracted.
    // Here r+s+1 = 1-a-b < 0, so 1/(1 + z q^{1-a-b}) is rewritten as
    // sum_{k>=1} (-1)^{k-1} z^{-k} q^{(a+b-1)k}; a point contributes only
    // when Q(-a,-b) + (a+b-1) fits in range.
    let reach = |a: i64| {
        let first_b = if a % 2 == 1 { 1 } else { 2 };
        hecke2_exponent(-a, -first_b) + a + first_b - 1
    };
    for a in 1.. {
        let first_b = if a % 2 == 1 { 1 } else { 2 };
        if reach(a) > iorder {
            if a > 1 && reach(a - 1) > iorder {
                break;
            }
            continue;
        }
        let mut b = first_b;
        while hecke2_exponent(-a, -b) + a + b - 1 <= iorder {
            let e = hecke2_exponent(-a, -b) as usize;
            let sgn = sign_pow(((b - a) / 2).unsigned_abs() as usize);
            let w = (a + b - 1) as usize;
            let mut k = 1usize;
            while e + w * k <= order {
                // the cone subtraction flips (-1)^{k-1} to (-1)^k
                let c = if k.is_multiple_of(2) { sgn.clone() } else { -sgn.clone() };
                lattice.add_term(e + w * k, -(k as i64), c);
                k += 1;
            }
            b += 2;
        }
    }
    // prefactor (-zq, -z^{-1}q; q^2)_inf / (q^2;q^2)_inf^2
    let mut pref = RankSeries::one(order);
    let mut w = 1usize;
    while w <= order {
        pref.mul_binomial(&big(1), 1, w);
        pref.mul_binomial(&big(1), -1, w);
        w += 2;
    }
    let invsq = {
        let i = inv_q2_q2_inf(order);
        &i * &i
    };
    &lattice * &pref.mul_qseries(&invsq)
}

/// Exact `ou(n)` table through `q^order` (the `zeta = 1` specialization of the
/// direct form, computed incrementally).
pub fn ou_counts(order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    let mut inv = QSeries::one(order);
    let mut n = 0usize;
    while 2 * n < order {
        let w = 2 * n + 1;
        inv.div_binomial(&big(-1), w);
        inv.div_binomial(&big(-1), w);
        acc = &acc + &inv.shift(w);
        n += 1;
    }
    acc
}

/// Exact `ou*(n)` table through `q^order`.
pub fn ou_star_counts(order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    let mut prod = QSeries::one(order);
    let mut n = 0usize;
    while 2 * n < order {
        if n >= 1 {
            let w = 2 * n - 1;
            prod.mul_binomial(&big(1), w);
            prod.mul_binomial(&big(1), w);
        }
        acc = &acc + &prod.shift(2 * n + 1);
        n += 1;
    }
    acc
}

/// Exact `u(n)` / `u*(n)` tables, for the ordinary variants.
pub fn u_counts(order: usize, strict: bool) -> QSeries {
    let mut acc = QSeries::zero(order);
    let mut prod = QSeries::one(order);
    let mut c = 1usize;
    while c <= order {
        if strict {
            // side parts are distinct and strictly below the peak
            if c >= 2 {
                prod.mul_binomial(&big(1), c - 1);
                prod.mul_binomial(&big(1), c - 1);
            }
        } else {
            // side parts may repeat and may equal the peak
            prod.div_binomial(&big(-1), c);
            prod.div_binomial(&big(-1), c);
        }
        acc = &acc + &prod.shift(c);
        c += 1;
    }
    acc
}

/// Pure-q Pochhammer helper: `(sign * q^j; q^d)_n`.
pub fn poch_finite_q(sign: i8, j: usize, d: usize, n: usize, order: usize) -> QSeries {
    pochhammer_q(sign, j, d, PochLength::Finite(n), order).expect("finite product")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{count_table, CountKind};

    #[test]
    fn ou_direct_rank_coefficients_at_weight_four() {
        let f = gf(Family::Ou, Form::Direct, 8).unwrap();
        assert_eq!(f.coeff(4, 3), BigInt::from(1));
        assert_eq!(f.coeff(4, 1), BigInt::from(2));
        assert_eq!(f.coeff(4, -1), BigInt::from(2));
        assert_eq!(f.coeff(4, -3), BigInt::from(1));
        assert_eq!(f.coeff(4, 0), BigInt::from(0));
    }

    #[test]
    fn ou_star_direct_count_at_weight_four() {
        let f = gf(Family::OuStar, Form::Direct, 8).unwrap();
        assert_eq!(f.specialize_zeta_one().coeff(4), &BigInt::from(2));
        assert_eq!(f.coeff(4, 1), BigInt::from(1));
        assert_eq!(f.coeff(4, -1), BigInt::from(1));
    }

    #[test]
    fn constant_term_is_zero() {
        for family in [Family::Ou, Family::OuStar] {
            for &form in forms_for(family) {
                let f = gf(family, form, 6).unwrap();
                assert!(f.rank_map(0).is_empty(), "{family:?}/{form:?} has a q^0 term");
            }
        }
    }

    #[test]
    fn all_forms_agree_to_q25() {
        for family in [Family::Ou, Family::OuStar] {
            let forms = forms_for(family);
            let base = gf(family, forms[0], 25).unwrap();
            for &form in &forms[1..] {
                let other = gf(family, form, 25).unwrap();
                assert_eq!(base, other, "{family:?}: {:?} vs {form:?}", forms[0]);
            }
        }
    }

    #[test]
    fn unsupported_forms_are_rejected() {
        assert!(gf(Family::Ou, Form::Appell, 10).is_err());
        assert!(gf(Family::Ou, Form::Hecke2, 10).is_err());
        assert!(gf(Family::OuStar, Form::Ramanujan, 10).is_err());
    }

    #[test]
    fn matches_enumeration_oracle_to_30() {
        let ou = count_table(CountKind::Ou, 30, true);
        let oustar = count_table(CountKind::OuStar, 30, true);
        let fou = gf(Family::Ou, Form::Direct, 30).unwrap();
        let foustar = gf(Family::OuStar, Form::Direct, 30).unwrap();
        let cou = fou.specialize_zeta_one();
        let coustar = foustar.specialize_zeta_one();
        for n in 0..=30 {
            assert_eq!(cou.coeff(n), &ou.counts[n], "ou({n})");
            assert_eq!(coustar.coeff(n), &oustar.counts[n], "ou*({n})");
        }
        // rank-refined comparison through weight 25
        for n in 0..=25 {
            assert_eq!(fou.rank_map(n), &ou.rank_counts.as_ref().unwrap()[n], "ou ranks at {n}");
            assert_eq!(foustar.rank_map(n), &oustar.rank_counts.as_ref().unwrap()[n], "ou* ranks at {n}");
        }
    }

    #[test]
    fn rank_support_is_bounded_by_weight() {
        for family in [Family::Ou, Family::OuStar] {
            let f = gf(family, Form::Direct, 20).unwrap();
            for n in 0..=20usize {
                for m in f.rank_map(n).keys() {
                    assert!(m.unsigned_abs() as usize <= n, "{family:?} |{m}| > {n}");
                }
            }
        }
    }

    #[test]
    fn fast_tables_match_forms() {
        let f = gf(Family::Ou, Form::Direct, 40).unwrap().specialize_zeta_one();
        assert_eq!(f, ou_counts(40));
        let f = gf(Family::OuStar, Form::Direct, 40).unwrap().specialize_zeta_one();
        assert_eq!(f, ou_star_counts(40));
    }

    #[test]
    fn u_tables_anchor_values() {
        let u = u_counts(6, false);
        assert_eq!(u.coeff(4), &BigInt::from(12));
        let ustar = u_counts(6, true);
        assert_eq!(ustar.coeff(4), &BigInt::from(4));
    }

    #[test]
    fn hecke2_exponents_are_integral_in_range() {
        for r in -20i64..=20 {
            for s in (-20i64..=20).filter(|s| (s - r) % 2 == 0) {
                let four_q = r * r + 14 * r * s + s * s + 6 * r + 10 * s + 4;
                assert_eq!(four_q % 4, 0, "Q({r},{s}) not integral");
            }
        }
    }
}
