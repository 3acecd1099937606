//! Floating-point validation of the asymptotic main terms: the Tauberian
//! main-term evaluator, numerical evaluation of the generating functions on
//! the real and complex axis, Euler-Maclaurin summation in one and two
//! dimensions, the `E`/`beta` special-function pair, and the termwise
//! indefinite-theta decomposition check.

use crate::genfun::Family;
use crate::series::QSeries;
use num_complex::Complex64;
use num_traits::Signed;
use libm::erfc;
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum AsympError {
    #[error("n must be >= 1")]
    ZeroIndex,
    #[error("gamma must be positive, got {0}")]
    NonPositiveGamma(f64),
    #[error("t must lie in [0.01, 1], got {0}")]
    TOutOfRange(f64),
    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),
    #[error("z = {0} is outside the right half-plane wedge")]
    OutsideWedge(Complex64),
    #[error("beta requires a nonnegative argument, got {0}")]
    NegativeBetaArgument(f64),
}

/// Parameters `(lambda, beta, gamma)` of the Tauberian main-term formula
/// `b(n) ~ lambda gamma^{beta/2+1/4} / (2 sqrt(pi) n^{beta/2+3/4}) e^{2 sqrt(gamma n)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InghamParams {
    pub lambda: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// The parameter triple realized by each family's generating function.
pub fn ingham_params(family: Family) -> InghamParams {
    match family {
        Family::Ou => InghamParams {
            lambda: 0.25,
            beta: 0.0,
            gamma: PI * PI / 6.0,
        },
        Family::OuStar => InghamParams {
            lambda: 0.5,
            beta: 0.0,
            gamma: PI * PI / 12.0,
        },
    }
}

/// Natural log of the Tauberian main term; computed in log-space so that
/// large `n` never overflows.
pub fn log_ingham_main_term(p: &InghamParams, n: u64) -> Result<f64, AsympError> {
    if n == 0 {
        return Err(AsympError::ZeroIndex);
    }
    if p.gamma <= 0.0 {
        return Err(AsympError::NonPositiveGamma(p.gamma));
    }
    let nf = n as f64;
    Ok(p.lambda.ln() + (p.beta / 2.0 + 0.25) * p.gamma.ln() - (2.0 * PI.sqrt()).ln()
        - (p.beta / 2.0 + 0.75) * nf.ln()
        + 2.0 * (p.gamma * nf).sqrt())
}

pub fn ingham_main_term(p: &InghamParams, n: u64) -> Result<f64, AsympError> {
    log_ingham_main_term(p, n).map(f64::exp)
}

/// Natural log of the displayed main term:
/// `exp(pi sqrt(2n/3)) / (2^{13/4} 3^{1/4} n^{3/4})` for the weak family and
/// `exp(pi sqrt(n/3)) / (2^{5/2} 3^{1/4} n^{3/4})` for the strict one.
pub fn log_main_term(family: Family, n: u64) -> Result<f64, AsympError> {
    if n == 0 {
        return Err(AsympError::ZeroIndex);
    }
    let nf = n as f64;
    let ln2 = 2f64.ln();
    let ln3 = 3f64.ln();
    Ok(match family {
        Family::Ou => PI * (2.0 * nf / 3.0).sqrt() - 3.25 * ln2 - 0.25 * ln3 - 0.75 * nf.ln(),
        Family::OuStar => PI * (nf / 3.0).sqrt() - 2.5 * ln2 - 0.25 * ln3 - 0.75 * nf.ln(),
    })
}

pub fn main_term(family: Family, n: u64) -> Result<f64, AsympError> {
    log_main_term(family, n).map(f64::exp)
}

const MAX_TERMS: usize = 1_000_000;

/// Evaluate the defining generating function (at rank variable 1) at
/// `q = e^{-t}`, summing until the next term falls below `1e-16` of the
/// running sum.
pub fn eval_f(family: Family, t: f64) -> Result<f64, AsympError> {
    if !(0.01..=1.0).contains(&t) {
        return Err(AsympError::TOutOfRange(t));
    }
    let z = eval_f_complex(family, Complex64::new(t, 0.0))?;
    Ok(z.re)
}

/// Complex-argument version of [`eval_f`], used for the wedge bound smoke
/// checks: evaluates at `q = e^{-z}` with `Re z > 0`.
pub fn eval_f_complex(family: Family, z: Complex64) -> Result<Complex64, AsympError> {
    if z.re <= 0.0 {
        return Err(AsympError::OutsideWedge(z));
    }
    let q = (-z).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    // running product: 1/(q;q^2)_{n+1}^2 for the weak family,
    // (-q;q^2)_n^2 for the strict one
    let mut prod = Complex64::new(1.0, 0.0);
    for n in 0..MAX_TERMS {
        let term = match family {
            Family::Ou => {
                let factor = Complex64::new(1.0, 0.0) - q.powf(2.0 * n as f64 + 1.0);
                prod /= factor * factor;
                q.powf(2.0 * n as f64 + 1.0) * prod
            }
            Family::OuStar => {
                if n >= 1 {
                    let factor = Complex64::new(1.0, 0.0) + q.powf(2.0 * n as f64 - 1.0);
                    prod *= factor * factor;
                }
                q.powf(2.0 * n as f64 + 1.0) * prod
            }
        };
        sum += term;
        if term.norm() < 1e-16 * sum.norm().max(1e-300) {
            return Ok(sum);
        }
    }
    Err(AsympError::NoConvergence(MAX_TERMS))
}

/// `eval_f` normalized by the predicted exponential growth: tends to 1 as
/// `t -> 0` (the constants are `1/4` and `1/2` respectively).
pub fn eval_f_ratio(family: Family, t: f64) -> Result<f64, AsympError> {
    let f = eval_f(family, t)?;
    Ok(match family {
        Family::Ou => f * 4.0 * (-PI * PI / (6.0 * t)).exp(),
        Family::OuStar => f * 2.0 * (-PI * PI / (12.0 * t)).exp(),
    })
}

// ---------------------------------------------------------------------------
// Bernoulli polynomials
// ---------------------------------------------------------------------------

/// Bernoulli numbers `B_0 .. B_12` (odd indices beyond 1 vanish).
const BERNOULLI: [f64; 13] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
];

fn binomial(n: usize, k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// The `n`-th Bernoulli polynomial `B_n(x)`, `n <= 12`.
pub fn bernoulli_poly(n: usize, x: f64) -> f64 {
    assert!(n < BERNOULLI.len(), "Bernoulli polynomial degree {n} not tabulated");
    let mut acc = 0.0;
    for (k, b) in BERNOULLI.iter().enumerate().take(n + 1) {
        acc += binomial(n, k) * b * x.powi((n - k) as i32);
    }
    acc
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin summation
// ---------------------------------------------------------------------------

/// A smooth, rapidly decaying test function with analytically known data: its
/// values, derivatives at the origin, and tail integral.
pub trait SmoothFunction: Sync {
    fn value(&self, w: Complex64) -> Complex64;
    /// `f^(k)(0)`.
    fn derivative_at_zero(&self, k: usize) -> f64;
    /// `int_0^inf f(w) dw` along the positive real axis.
    fn integral(&self) -> f64;
}

/// `f(w) = e^{-c w^2}`.
pub struct Gaussian {
    pub c: f64,
}

impl SmoothFunction for Gaussian {
    fn value(&self, w: Complex64) -> Complex64 {
        (-self.c * w * w).exp()
    }

    fn derivative_at_zero(&self, k: usize) -> f64 {
        if k % 2 == 1 {
            return 0.0;
        }
        let m = k / 2;
        // (2m)! (-c)^m / m!
        let mut acc = (-self.c).powi(m as i32);
        for i in m + 1..=k {
            acc *= i as f64;
        }
        acc
    }

    fn integral(&self) -> f64 {
        0.5 * (PI / self.c).sqrt()
    }
}

/// `f(w) = e^{-a w^2 - b w}`, the Gaussian-with-drift shape that appears in
/// the double-sum rewrites; for `b != 0` no derivative at the origin
/// vanishes, so empirical convergence orders are not accidentally boosted.
pub struct GaussianLinear {
    pub a: f64,
    pub b: f64,
}

impl SmoothFunction for GaussianLinear {
    fn value(&self, w: Complex64) -> Complex64 {
        (-self.a * w * w - self.b * w).exp()
    }

    fn derivative_at_zero(&self, k: usize) -> f64 {
        // d_{k+1} = -(b d_k + 2 a k d_{k-1}) from f' = -(2aw + b) f
        let mut prev = 0.0;
        let mut cur = 1.0;
        for j in 0..k {
            let next = -(self.b * cur + 2.0 * self.a * j as f64 * prev);
            prev = cur;
            cur = next;
        }
        cur
    }

    fn integral(&self) -> f64 {
        let s = self.a.sqrt();
        (self.b * self.b / (4.0 * self.a)).exp() * PI.sqrt() / (2.0 * s)
            * erfc(self.b / (2.0 * s))
    }
}

/// `f(w) = e^{-c w}`.
pub struct ExpDecay {
    pub c: f64,
}

impl SmoothFunction for ExpDecay {
    fn value(&self, w: Complex64) -> Complex64 {
        (-self.c * w).exp()
    }

    fn derivative_at_zero(&self, k: usize) -> f64 {
        (-self.c).powi(k as i32)
    }

    fn integral(&self) -> f64 {
        1.0 / self.c
    }
}

fn require_wedge(z: Complex64) -> Result<(), AsympError> {
    if z.re <= 0.0 || !z.is_finite() {
        return Err(AsympError::OutsideWedge(z));
    }
    Ok(())
}

/// Left-hand side `sum_{m>=0} f((m+a)z)`, summed directly.
pub fn shifted_sum_1d(f: &dyn SmoothFunction, a: f64, z: Complex64) -> Result<Complex64, AsympError> {
    require_wedge(z)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 0..MAX_TERMS {
        let term = f.value((m as f64 + a) * z);
        sum += term;
        if m > 4 && term.norm() < 1e-18 * (1.0 + sum.norm()) {
            return Ok(sum);
        }
    }
    Err(AsympError::NoConvergence(MAX_TERMS))
}

/// Right-hand side of the shifted Euler-Maclaurin formula with `n_terms`
/// boundary terms:
/// `z^{-1} int_0^inf f - sum_{n<N} B_{n+1}(a) f^{(n)}(0) z^n / (n+1)!`;
/// the omitted remainder is `O(z^N)`.
pub fn euler_maclaurin_1d(
    f: &dyn SmoothFunction,
    a: f64,
    z: Complex64,
    n_terms: usize,
) -> Result<Complex64, AsympError> {
    require_wedge(z)?;
    let mut rhs = Complex64::new(f.integral(), 0.0) / z;
    let mut factorial = 1.0; // (n+1)!
    let mut zpow = Complex64::new(1.0, 0.0);
    for n in 0..n_terms {
        factorial *= (n + 1) as f64;
        rhs -= bernoulli_poly(n + 1, a) * f.derivative_at_zero(n) * zpow / factorial;
        zpow *= z;
    }
    Ok(rhs)
}

/// Direct double sum `sum_{m in N_0^2} g((m_1+a_1)z) h((m_2+a_2)z)` for a
/// separable integrand.
pub fn shifted_sum_2d(
    g: &dyn SmoothFunction,
    h: &dyn SmoothFunction,
    a: (f64, f64),
    z: Complex64,
) -> Result<Complex64, AsympError> {
    Ok(shifted_sum_1d(g, a.0, z)? * shifted_sum_1d(h, a.1, z)?)
}

/// Four-term right-hand side of the two-dimensional Euler-Maclaurin formula
/// for a separable integrand `f(w_1, w_2) = g(w_1) h(w_2)`:
/// the double integral over `z^2`, the two mixed boundary sums over `z`, and
/// the doubly-discrete Bernoulli block; remainder `O(z^N)`.
pub fn euler_maclaurin_2d(
    g: &dyn SmoothFunction,
    h: &dyn SmoothFunction,
    a: (f64, f64),
    z: Complex64,
    n_terms: usize,
) -> Result<Complex64, AsympError> {
    require_wedge(z)?;
    let mut rhs = Complex64::new(g.integral() * h.integral(), 0.0) / (z * z);

    // Each one-dimensional truncation is multiplied by the other factor's
    // leading z^{-1} term, so the boundary and doubly-discrete blocks must be
    // carried one order further than requested to keep the total error O(z^N).
    let boundary = |f: &dyn SmoothFunction, af: f64, other_integral: f64| {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut factorial = 1.0;
        let mut zpow = Complex64::new(1.0, 0.0);
        for n in 0..=n_terms {
            factorial *= (n + 1) as f64;
            acc += bernoulli_poly(n + 1, af) * f.derivative_at_zero(n) * other_integral * zpow
                / factorial;
            zpow *= z;
        }
        acc
    };
    rhs -= boundary(g, a.0, h.integral()) / z;
    rhs -= boundary(h, a.1, g.integral()) / z;

    let mut fact1 = 1.0;
    let mut zpow1 = Complex64::new(1.0, 0.0);
    for n1 in 0..=n_terms {
        fact1 *= (n1 + 1) as f64;
        let mut fact2 = 1.0;
        let mut zpow2 = zpow1;
        for n2 in 0..=n_terms - n1 {
            fact2 *= (n2 + 1) as f64;
            rhs += bernoulli_poly(n1 + 1, a.0)
                * bernoulli_poly(n2 + 1, a.1)
                * g.derivative_at_zero(n1)
                * h.derivative_at_zero(n2)
                * zpow2
                / (fact1 * fact2);
            zpow2 *= z;
        }
        zpow1 *= z;
    }
    Ok(rhs)
}

// ---------------------------------------------------------------------------
// Special functions and the theta decomposition
// ---------------------------------------------------------------------------

/// `beta(x) = erfc(sqrt(pi x))` for `x >= 0`.
pub fn special_beta(x: f64) -> Result<f64, AsympError> {
    if x < 0.0 {
        return Err(AsympError::NegativeBetaArgument(x));
    }
    Ok(erfc((PI * x).sqrt()))
}

/// `E(x) = sgn(x) (1 - beta(x^2))`, the odd error-function companion.
pub fn special_e(x: f64) -> f64 {
    let b = erfc((PI * x * x).sqrt());
    x.signum() * (1.0 - b) * if x == 0.0 { 0.0 } else { 1.0 }
}

/// The specific indefinite quadratic-form data of the strict-family theta
/// decomposition: `Q(n) = 3n_1^2 + 4n_1n_2 + n_2^2` with its characteristic
/// vectors and offsets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaData {
    pub matrix: [[f64; 2]; 2],
    pub c1: [f64; 2],
    pub c2: [f64; 2],
    pub offset: [f64; 2],
    pub phase: [f64; 2],
}

impl Default for ThetaData {
    fn default() -> Self {
        ThetaData {
            matrix: [[6.0, 4.0], [4.0, 2.0]],
            c1: [1.0, -2.0],
            c2: [2.0, -3.0],
            offset: [0.5, 0.0],
            phase: [-0.25, 0.5],
        }
    }
}

impl ThetaData {
    /// `Q(x) = x^T A x / 2`.
    pub fn quad(&self, x: [f64; 2]) -> f64 {
        self.bilinear(x, x) / 2.0
    }

    /// `B(x, y) = x^T A y = Q(x+y) - Q(x) - Q(y)`.
    pub fn bilinear(&self, x: [f64; 2], y: [f64; 2]) -> f64 {
        let mut acc = 0.0;
        for (xi, row) in x.iter().zip(&self.matrix) {
            for (yj, a) in y.iter().zip(row) {
                acc += xi * a * yj;
            }
        }
        acc
    }
}

fn theta_residual(td: &ThetaData, v: f64, box_radius: i64, flip_beta_sign: bool) -> f64 {
    let q1 = td.quad(td.c1);
    let q2 = td.quad(td.c2);
    let mut worst: f64 = 0.0;
    for k1 in -box_radius..=box_radius {
        for k2 in -box_radius..=box_radius {
            let n = [k1 as f64 + td.offset[0], k2 as f64 + td.offset[1]];
            let b1 = td.bilinear(td.c1, n);
            let b2 = td.bilinear(td.c2, n);
            let lhs = b1.signum() - if b2 == 0.0 { 0.0 } else { b2.signum() };
            // n_1 = -B(c_1, n)/2, n_2 = B(c_2, n)/2
            let n1 = -b1 / 2.0;
            let n2 = b2 / 2.0;
            let sgn2 = if n2 == 0.0 { 0.0 } else { n2.signum() };
            let beta2_sign = if flip_beta_sign { -sgn2 } else { sgn2 };
            let rhs = special_e(b1 * (v / -q1).sqrt()) - special_e(b2 * (v / -q2).sqrt())
                - n1.signum() * erfc((PI * 4.0 * n1 * n1 * v).sqrt())
                - beta2_sign * erfc((PI * 4.0 * n2 * n2 * v / 3.0).sqrt());
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

/// Maximum termwise residual of the holomorphic/nonholomorphic split over the
/// lattice box `|k_i| <= box_radius`: the identity is exact, so the residual
/// is floating-point noise.
pub fn theta_decomposition_check(td: &ThetaData, v: f64, box_radius: i64) -> f64 {
    theta_residual(td, v, box_radius, false)
}

/// Negative control: flipping the sign of one `beta` term must produce an
/// order-one residual.
pub fn theta_decomposition_control(td: &ThetaData, v: f64, box_radius: i64) -> f64 {
    theta_residual(td, v, box_radius, true)
}

/// The nonholomorphic tail evaluated on the positive imaginary axis as a
/// double sum; it behaves like `sqrt(pi/t)` as `t -> 0`.
pub fn theta_minus(t: f64) -> f64 {
    let st = t.sqrt();
    let cap = (40.0 / st).ceil() as usize + 8;
    let mut total = 0.0;
    for delta in 0..2usize {
        let sgn_d = if delta == 0 { 1.0 } else { -1.0 };
        for n1 in 0..cap {
            let x1 = (n1 as f64 + delta as f64 / 2.0 + 0.25) * st;
            // beyond this the erfc damping makes every term < e^{-2x1^2}
            if x1 * x1 > 350.0 {
                break;
            }
            let b1 = erfc((8.0 * x1 * x1).sqrt());
            for n2 in 0..cap {
                let x2 = (n2 as f64 + 1.0) * st;
                let b2 = erfc((2.0 * x2 * x2 / 3.0).sqrt());
                let gauss = -12.0 * x1 * x1 - x2 * x2;
                let e_plus = gauss - 8.0 * x1 * x2;
                let e_minus = gauss + 8.0 * x1 * x2;
                let mut term = 0.0;
                if e_plus > -745.0 {
                    term += (b1 + b2) * e_plus.exp();
                }
                // e_minus can be positive near x2 = 4 x1; there the erfc
                // factors decay faster, and once they underflow the exact
                // term is below e^{-2 x1^2}, so skipping is safe
                if e_minus > -745.0 && e_minus < 700.0 {
                    term += (b1 - b2) * e_minus.exp();
                }
                total += 2.0 * sgn_d * term;
            }
        }
    }
    total
}

/// Ingham hypothesis helper: the table is weakly increasing from index
/// `from` on.
pub fn monotone_from(table: &QSeries, from: usize) -> bool {
    (from.max(1)..=table.order()).all(|n| !(table.coeff(n) - table.coeff(n - 1)).is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{ou_counts, ou_star_counts};

    fn assert_close(a: f64, b: f64, rel: f64) {
        assert!((a - b).abs() <= rel * a.abs().max(b.abs()), "{a} vs {b}");
    }

    #[test]
    fn main_term_matches_ingham_form() {
        for family in [Family::Ou, Family::OuStar] {
            let p = ingham_params(family);
            for n in [1u64, 4, 100, 4000] {
                let a = main_term(family, n).unwrap();
                let b = ingham_main_term(&p, n).unwrap();
                assert_close(a, b, 1e-12);
            }
        }
    }

    #[test]
    fn log_main_term_anchor() {
        let expect = PI * (200.0f64 / 3.0).sqrt()
            - 3.25 * 2f64.ln()
            - 0.25 * 3f64.ln()
            - 0.75 * 100f64.ln();
        assert_close(log_main_term(Family::Ou, 100).unwrap(), expect, 1e-14);
    }

    #[test]
    fn ingham_anchor_and_linearity() {
        let p = InghamParams { lambda: 1.0, beta: 0.0, gamma: 1.0 };
        let expect = 2f64.exp() / (2.0 * PI.sqrt());
        assert_close(ingham_main_term(&p, 1).unwrap(), expect, 1e-14);
        let doubled = InghamParams { lambda: 2.0, ..p };
        assert_close(
            ingham_main_term(&doubled, 7).unwrap(),
            2.0 * ingham_main_term(&p, 7).unwrap(),
            1e-13,
        );
        assert!(ingham_main_term(&p, 0).is_err());
        let bad = InghamParams { gamma: -1.0, ..p };
        assert!(ingham_main_term(&bad, 3).is_err());
    }

    #[test]
    fn eval_f_matches_exact_table_at_moderate_t() {
        // at t = 0.5 the series is dominated by small n, so the exact table
        // truncated at q^80 reproduces it to high accuracy
        let t: f64 = 0.5;
        let q = (-t).exp();
        for (family, table) in [(Family::Ou, ou_counts(80)), (Family::OuStar, ou_star_counts(80))] {
            let mut direct = 0.0;
            for n in 0..=80usize {
                let c: f64 = table.coeff(n).to_string().parse().unwrap();
                direct += c * q.powi(n as i32);
            }
            assert_close(eval_f(family, t).unwrap(), direct, 1e-10);
        }
    }

    #[test]
    fn eval_f_rejects_out_of_range() {
        assert!(eval_f(Family::Ou, 0.001).is_err());
        assert!(eval_f(Family::Ou, 2.0).is_err());
        assert!(eval_f(Family::Ou, 1.0).unwrap() > 0.0);
    }

    #[test]
    fn eval_f_ratio_approaches_one() {
        for family in [Family::Ou, Family::OuStar] {
            let mut prev = f64::INFINITY;
            for t in [0.3, 0.2, 0.1, 0.05] {
                let gap = (eval_f_ratio(family, t).unwrap() - 1.0).abs();
                assert!(gap < prev, "{family:?}: ratio not improving at t={t}");
                prev = gap;
            }
            assert!(prev < 0.2, "{family:?}: final gap {prev}");
        }
    }

    #[test]
    fn bernoulli_anchors() {
        assert_close(bernoulli_poly(1, 0.25), -0.25, 1e-15);
        assert_close(bernoulli_poly(1, 0.75), 0.25, 1e-15);
        assert!(bernoulli_poly(1, 0.5).abs() < 1e-15);
        assert_close(bernoulli_poly(2, 0.0), 1.0 / 6.0, 1e-15);
    }

    #[test]
    fn euler_maclaurin_geometric_anchor() {
        // sum e^{-mz} = 1/(1 - e^{-z}) = 1/z + 1/2 + O(z)
        let f = ExpDecay { c: 1.0 };
        let z = Complex64::new(0.01, 0.0);
        let direct = shifted_sum_1d(&f, 0.0, z).unwrap();
        let expect = 1.0 / (1.0 - (-z).exp().re);
        assert_close(direct.re, expect, 1e-12);
        let approx = euler_maclaurin_1d(&f, 0.0, z, 2).unwrap();
        assert!((direct - approx).norm() < 1e-4);
    }

    #[test]
    fn euler_maclaurin_order_1d() {
        // the drift term keeps every derivative at the origin nonzero, so
        // the observed order matches the truncation exactly
        let f = GaussianLinear { a: 1.0, b: 1.0 };
        for n_terms in [2usize, 3, 4] {
            let err_at = |z: f64| {
                let z = Complex64::new(z, 0.0);
                (shifted_sum_1d(&f, 0.25, z).unwrap()
                    - euler_maclaurin_1d(&f, 0.25, z, n_terms).unwrap())
                .norm()
            };
            let slope = (err_at(0.1) / err_at(0.05)).log2();
            assert!(
                (slope - n_terms as f64).abs() <= 0.3,
                "N={n_terms}: observed order {slope}"
            );
        }
    }

    #[test]
    fn euler_maclaurin_order_2d() {
        let g = Gaussian { c: 1.0 };
        let h = Gaussian { c: 1.0 };
        let n_terms = 3usize;
        let err_at = |z: f64| {
            let z = Complex64::new(z, 0.0);
            (shifted_sum_2d(&g, &h, (0.25, 1.0), z).unwrap()
                - euler_maclaurin_2d(&g, &h, (0.25, 1.0), z, n_terms).unwrap())
            .norm()
        };
        let slope = (err_at(0.1) / err_at(0.05)).log2();
        assert!((slope - n_terms as f64).abs() <= 0.4, "observed order {slope}");
    }

    #[test]
    fn half_shift_kills_first_boundary_term() {
        // For the Gaussian at a = (1/2, 1/2) every correction term vanishes
        // (odd Bernoulli polynomials are zero at 1/2 and odd derivatives are
        // zero at the origin), so the N=1 formula is exact up to exponentially
        // small corrections; a quarter shift leaves a visible O(z) error.
        let g = Gaussian { c: 1.0 };
        let err_at = |a: f64, z: f64| {
            let z = Complex64::new(z, 0.0);
            (shifted_sum_2d(&g, &g, (a, a), z).unwrap()
                - euler_maclaurin_2d(&g, &g, (a, a), z, 1).unwrap())
            .norm()
        };
        let half = err_at(0.5, 0.1);
        let quarter = err_at(0.25, 0.1);
        assert!(half < 1e-9, "half-shift error {half}");
        assert!(quarter > 1e3 * half, "quarter-shift error {quarter} vs {half}");
    }

    #[test]
    fn alternating_sum_limit_is_half() {
        // sum (-1)^n e^{-(n^2+n)z} -> -B_1(1/4) + B_1(3/4) = 1/2
        let z = 1e-3;
        let mut sum = 0.0;
        let mut n = 0u32;
        loop {
            let term = (-((n * n + n) as f64) * z).exp();
            if term < 1e-18 {
                break;
            }
            sum += if n.is_multiple_of(2) { term } else { -term };
            n += 1;
        }
        assert!((sum - 0.5).abs() < 1e-3, "limit estimate {sum}");
    }

    #[test]
    fn special_functions_shape() {
        assert_eq!(special_e(0.0), 0.0);
        assert_close(special_beta(0.0).unwrap(), 1.0, 1e-15);
        assert!(special_beta(-0.5).is_err());
        assert!((special_e(10.0) - 1.0).abs() < 1e-15);
        for i in 1..=1000 {
            let x = (i as f64) * 0.004 - 2.0;
            assert!(
                (special_e(x) + special_e(-x)).abs() < 1e-15,
                "E not odd at {x}"
            );
        }
        for i in 1..=40 {
            let x = 1.0 + i as f64 * 0.1;
            let tail = 1.0 - special_e(x);
            assert!(tail <= 2.0 * (-PI * x * x).exp(), "tail too fat at {x}");
        }
    }

    #[test]
    fn theta_data_invariants() {
        let td = ThetaData::default();
        assert_eq!(td.quad(td.c1), -1.0);
        assert_eq!(td.quad(td.c2), -3.0);
        assert!(td.bilinear(td.c1, td.c2) < 0.0);
        assert_eq!(td.quad([1.0, 1.0]), 8.0); // 3 + 4 + 1
    }

    #[test]
    fn theta_decomposition_is_termwise_exact() {
        let td = ThetaData::default();
        for v in [0.1, 0.5, 1.0] {
            let residual = theta_decomposition_check(&td, v, 30);
            assert!(residual < 1e-10, "residual {residual} at v={v}");
        }
    }

    #[test]
    fn theta_decomposition_control_fails() {
        let td = ThetaData::default();
        let residual = theta_decomposition_control(&td, 0.5, 10);
        assert!(residual > 0.01, "control residual only {residual}");
    }

    #[test]
    fn theta_minus_tracks_sqrt_pi_over_t() {
        let gap = |t: f64| (theta_minus(t) / (PI / t).sqrt() - 1.0).abs();
        assert!(gap(0.02) < gap(0.2), "{} vs {}", gap(0.02), gap(0.2));
        assert!(gap(0.02) < 0.2, "gap {}", gap(0.02));
    }

    #[test]
    fn wedge_bound_smoke() {
        // |F(e^{-z})| e^{-gamma/|z|} stays bounded along z = x(1 + i/2)
        let p = ingham_params(Family::OuStar);
        let mut prev = f64::INFINITY;
        let mut bounded = true;
        for x in [0.4, 0.2, 0.1, 0.05] {
            let z = Complex64::new(x, x / 2.0);
            let val = eval_f_complex(Family::OuStar, z).unwrap().norm()
                * (-p.gamma / z.norm()).exp();
            bounded &= val < 10.0;
            prev = prev.min(val);
        }
        assert!(bounded);
        assert!(eval_f_complex(Family::Ou, Complex64::new(-0.1, 0.0)).is_err());
    }

    #[test]
    fn monotonicity_hypothesis_from_tables() {
        assert!(monotone_from(&ou_counts(300), 1));
        assert!(monotone_from(&ou_star_counts(300), 3));
        assert!(!monotone_from(&ou_star_counts(10), 1)); // ou*(2) = 0 < ou*(1)
    }
}
