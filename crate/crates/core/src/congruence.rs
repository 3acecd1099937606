//! Mod-4 arithmetic of the strict odd unimodal counts: parity via a classical
//! theta identity, the bridge to a third-order mock theta function, product
//! congruences in arithmetic progressions, residue-class generation for the
//! prime-square congruence family, and an empirical progression scanner.

use crate::series::QSeries;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Coefficients of the third-order mock theta function
/// `nu(q) = sum_{n>=0} (q; q^2)_n (-q)^n`.
pub fn nu_coeffs(order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    let mut prod = QSeries::one(order);
    for n in 0..=order {
        if n >= 1 {
            prod.mul_binomial(&big(-1), 2 * n - 1);
        }
        let term = prod.shift(n);
        acc = if n % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Coefficients of `(q^4; q^4)_inf^3 / (q^2; q^2)_inf^2`, the even-odd
/// partition product.
pub fn eo_coeffs(order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    let mut e = 4usize;
    while e <= order {
        for _ in 0..3 {
            s.mul_binomial(&big(-1), e);
        }
        e += 4;
    }
    let mut e = 2usize;
    while e <= order {
        for _ in 0..2 {
            s.div_binomial(&big(-1), e);
        }
        e += 2;
    }
    s
}

fn is_square(v: u64) -> bool {
    let r = (v as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|x| x * x == v)
}

/// Report from a coefficient-by-coefficient check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub pass: bool,
    pub checked: usize,
    pub first_failure: Option<usize>,
}

impl CheckReport {
    fn from_failure(checked: usize, first_failure: Option<usize>) -> Self {
        CheckReport {
            pass: first_failure.is_none(),
            checked,
            first_failure,
        }
    }
}

/// The count of weight `n` is odd exactly when `6n - 2` is a perfect square.
/// `table` must hold the strict-family counts through its order.
pub fn parity_check(table: &QSeries) -> CheckReport {
    let mut first = None;
    for n in 1..=table.order() {
        let odd = table.coeff(n) % 2 != BigInt::zero();
        let square = is_square(6 * n as u64 - 2);
        if odd != square {
            first = Some(n);
            break;
        }
    }
    CheckReport::from_failure(table.order(), first)
}

/// Modulo 4, `(-q; q^2)_n^2 - (-q^2; q^4)_n` is an odd polynomial: every
/// even-exponent coefficient is divisible by 4.
pub fn odd_polynomial_check(n_max: usize) -> CheckReport {
    let order = 4 * n_max;
    let mut sq = QSeries::one(order);
    let mut single = QSeries::one(order);
    let mut first = None;
    for n in 1..=n_max {
        sq.mul_binomial(&big(1), 2 * n - 1);
        sq.mul_binomial(&big(1), 2 * n - 1);
        single.mul_binomial(&big(1), 4 * n - 2);
        let diff = &sq - &single;
        let even_ok = (0..=order)
            .step_by(2)
            .all(|i| (diff.coeff(i) % 4u8).is_zero());
        if !even_ok && first.is_none() {
            first = Some(n);
        }
    }
    CheckReport::from_failure(n_max, first)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("need at least one prime")]
    Empty,
    #[error("{0} is not a prime >= 5")]
    BadPrime(u64),
}

/// An arithmetic-progression congruence family: counts vanish mod `modulus`'s
/// companion constant 4 on `modulus * n + r` for every `r` in `residues`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceFamily {
    pub primes: Vec<u64>,
    pub modulus: u64,
    pub residues: Vec<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u128;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(a | p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let r = pow_mod(a, (p - 1) / 2, p);
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Residue classes of the prime-square congruence family for the strict
/// counts: with `P2` the product of the squared primes and `p` the last prime,
/// every admissible `j` contributes the class
/// `2 (P2 / p) j + (8 P2 + 1)/3  (j odd)` or `2 (P2 / p) j + (2 P2 + 1)/3
/// (j even)` modulo `4 P2`. Admissible means `j != 0 (mod p)`, and when
/// `p = 7, 13 (mod 24)` additionally `(3j | p) = -1`.
pub fn prime_square_residues(primes: &[u64]) -> Result<CongruenceFamily, CongruenceError> {
    if primes.is_empty() {
        return Err(CongruenceError::Empty);
    }
    for &p in primes {
        if p < 5 || !is_prime(p) {
            return Err(CongruenceError::BadPrime(p));
        }
    }
    let p_last = *primes.last().unwrap();
    let p2: u64 = primes.iter().map(|p| p * p).product();
    let modulus = 4 * p2;
    let step = 2 * (p2 / p_last); // coefficient of j in the offset
    let needs_legendre = p_last % 24 == 7 || p_last % 24 == 13;

    let mut residues: Vec<u64> = Vec::new();
    // the offset depends on j only through j mod 2*p_last
    for j in 1..2 * p_last {
        if j % p_last == 0 {
            continue;
        }
        if needs_legendre && legendre(3 * j, p_last) != -1 {
            continue;
        }
        let constant = if j % 2 == 1 {
            (8 * p2 + 1) / 3
        } else {
            (2 * p2 + 1) / 3
        };
        let r = (step * j + constant) % modulus;
        if !residues.contains(&r) {
            residues.push(r);
        }
    }
    residues.sort_unstable();
    Ok(CongruenceFamily {
        primes: primes.to_vec(),
        modulus,
        residues,
    })
}

/// Outcome of checking one congruence family against an exact table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: CongruenceFamily,
    pub pass: bool,
    pub witnesses: usize,
    /// `(residue, n)` of the first violated witness, if any.
    pub first_failure: Option<(u64, usize)>,
}

/// Check `table[modulus * n + r] = 0 (mod 4)` for every residue and every
/// witness that fits in the table.
pub fn verify_family(family: &CongruenceFamily, table: &QSeries) -> FamilyReport {
    let mut witnesses = 0usize;
    let mut first_failure = None;
    for &r in &family.residues {
        let mut idx = r as usize;
        while idx <= table.order() {
            witnesses += 1;
            if !(table.coeff(idx) % 4u8).is_zero() && first_failure.is_none() {
                first_failure = Some((r, idx));
            }
            idx += family.modulus as usize;
        }
    }
    FamilyReport {
        family: family.clone(),
        pass: first_failure.is_none(),
        witnesses,
        first_failure,
    }
}

/// One residue class found by scanning a table for vanishing mod 4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanHit {
    pub residue: u64,
    pub witnesses: usize,
    /// False when fewer witnesses than requested fit in the table.
    pub confident: bool,
}

/// Find all residues `r` mod `modulus` with `table[modulus * n + r] = 0 (mod 4)`
/// for every witness in the table. Hits with fewer than `min_witnesses`
/// checks are flagged as low-confidence rather than dropped.
pub fn scan(modulus: u64, table: &QSeries, min_witnesses: usize) -> Vec<ScanHit> {
    let mut hits = Vec::new();
    for r in 0..modulus {
        let mut idx = r as usize;
        let mut witnesses = 0usize;
        let mut all_zero = true;
        while idx <= table.order() {
            witnesses += 1;
            if !(table.coeff(idx) % 4u8).is_zero() {
                all_zero = false;
                break;
            }
            idx += modulus as usize;
        }
        if all_zero && witnesses > 0 {
            hits.push(ScanHit {
                residue: r,
                witnesses,
                confident: witnesses >= min_witnesses,
            });
        }
    }
    hits
}

/// `count(2n+1) = (-1)^n c(n) (mod 4)` where `c` are the mock theta
/// coefficients; `table` holds the strict counts.
pub fn mock_relation_check(table: &QSeries) -> CheckReport {
    let order = table.order();
    let n_max = order.saturating_sub(1) / 2;
    let c = nu_coeffs(n_max);
    let four = big(4);
    let mut first = None;
    for n in 0..=n_max {
        let lhs = table.coeff(2 * n + 1);
        let rhs = if n % 2 == 0 {
            c.coeff(n).clone()
        } else {
            -c.coeff(n)
        };
        let mut d = (lhs - rhs) % &four;
        if d.is_negative() {
            d += &four;
        }
        if !d.is_zero() && first.is_none() {
            first = Some(n);
        }
    }
    CheckReport::from_failure(n_max, first)
}

/// Even-index mock theta coefficients match the even-odd product:
/// `c(2n) = EO(2n)` exactly.
pub fn mock_product_bridge(order: usize) -> CheckReport {
    let c = nu_coeffs(order);
    let eo = eo_coeffs(order);
    let mut first = None;
    for n in (0..=order).step_by(2) {
        if c.coeff(n) != eo.coeff(n) {
            first = Some(n);
            break;
        }
    }
    CheckReport::from_failure(order / 2, first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::ou_star_counts;

    #[test]
    fn nu_prefix() {
        let c = nu_coeffs(8);
        let expect = [1i64, -1, 2, -2, 2, -3, 4, -4, 5];
        for (n, &v) in expect.iter().enumerate() {
            assert_eq!(c.coeff(n), &big(v), "c({n})");
        }
    }

    #[test]
    fn parity_holds_to_400() {
        let table = ou_star_counts(400);
        let report = parity_check(&table);
        assert!(report.pass, "first failure at {:?}", report.first_failure);
    }

    #[test]
    fn odd_polynomial_to_8() {
        let report = odd_polynomial_check(8);
        assert!(report.pass, "first failure at n = {:?}", report.first_failure);
    }

    #[test]
    fn residues_for_five() {
        let fam = prime_square_residues(&[5]).unwrap();
        assert_eq!(fam.modulus, 100);
        assert_eq!(fam.residues, vec![37, 57, 77, 97]);
    }

    #[test]
    fn residues_for_seven() {
        let fam = prime_square_residues(&[7]).unwrap();
        assert_eq!(fam.modulus, 196);
        assert_eq!(fam.residues, vec![61, 89, 145]);
    }

    #[test]
    fn residues_for_eleven() {
        let fam = prime_square_residues(&[11]).unwrap();
        assert_eq!(fam.modulus, 484);
        assert_eq!(fam.residues, vec![37, 125, 169, 213, 257, 301, 345, 389, 433, 477]);
    }

    #[test]
    fn bad_inputs_rejected() {
        assert_eq!(prime_square_residues(&[]).unwrap_err(), CongruenceError::Empty);
        assert_eq!(prime_square_residues(&[4]).unwrap_err(), CongruenceError::BadPrime(4));
        assert_eq!(prime_square_residues(&[3]).unwrap_err(), CongruenceError::BadPrime(3));
        assert_eq!(prime_square_residues(&[5, 9]).unwrap_err(), CongruenceError::BadPrime(9));
    }

    #[test]
    fn family_five_verifies_on_table() {
        let table = ou_star_counts(800);
        let fam = prime_square_residues(&[5]).unwrap();
        let report = verify_family(&fam, &table);
        assert!(report.pass, "failure at {:?}", report.first_failure);
        assert!(report.witnesses >= 28);
    }

    #[test]
    fn scan_mod_50_finds_refined_classes() {
        let table = ou_star_counts(600);
        let hits = scan(50, &table, 5);
        let residues: Vec<u64> = hits.iter().map(|h| h.residue).collect();
        assert!(residues.contains(&37));
        assert!(residues.contains(&47));
        assert!(hits.iter().all(|h| h.confident));
    }

    #[test]
    fn mock_relation_to_400() {
        let table = ou_star_counts(401);
        let report = mock_relation_check(&table);
        assert!(report.pass, "first failure at n = {:?}", report.first_failure);
    }

    #[test]
    fn product_bridge_to_200() {
        let report = mock_product_bridge(200);
        assert!(report.pass, "first failure at {:?}", report.first_failure);
    }

    #[test]
    fn legendre_anchors() {
        assert_eq!(legendre(3, 7), -1);
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(7, 7), 0);
        assert_eq!(legendre(3, 13), 1);
    }
}
