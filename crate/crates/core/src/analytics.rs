//! Threshold constants, first and weighted second moment formulas, and the
//! Laplace-method conditions used to pick the weight γ.
//!
//! Notation: ψ(γ) = ((γ+γ⁻¹)/2)^k − (2γ)^{−k} is the expected weight of one
//! edge under a balanced partition, f(α) the joint weight of one edge under
//! two balanced partitions with overlap fraction α, and
//! g(α) = f(α/2)^{2r} / (α^α (1−α)^{1−α}).

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::solvergen::neumaier_sum;

pub const LAPLACE_GRID: usize = 10_000;
pub const SECOND_DIFFERENCE_STEP: f64 = 1e-4;
const FIRST_MOMENT_GRID: usize = 100_000;
const GAMMA_SWEEP: usize = 400;
const GAMMA_SWEEP_MIN: f64 = 1e-3;
const GOLDEN_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentParams {
    pub k: u32,
    pub r: f64,
    pub gamma: f64,
    pub alpha: f64,
}

impl MomentParams {
    pub fn new(k: u32, r: f64, gamma: f64, alpha: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("k must be at least 2, got {k}")));
        }
        check_gamma(gamma)?;
        if !(r >= 0.0) {
            return Err(Error::Domain(format!(
                "density must be non-negative, got {r}"
            )));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Domain(format!(
                "alpha must lie in [0, 1], got {alpha}"
            )));
        }
        Ok(MomentParams { k, r, gamma, alpha })
    }

    pub fn psi(&self) -> f64 {
        psi_unchecked(self.gamma, self.k)
    }

    /// f at α/2, the overlap argument used by g.
    pub fn f_half_alpha(&self) -> f64 {
        f_unchecked(self.alpha / 2.0, self.gamma, self.k)
    }

    pub fn g(&self) -> Result<f64> {
        g_alpha(self.alpha, self.gamma, self.k, self.r)
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "gamma must be positive, got {gamma}"
        )))
    }
}

fn psi_unchecked(gamma: f64, k: u32) -> f64 {
    let k = k as i32;
    ((gamma + gamma.recip()) / 2.0).powi(k) - (2.0 * gamma).powi(-k)
}

pub fn psi(gamma: f64, k: u32) -> Result<f64> {
    check_gamma(gamma)?;
    Ok(psi_unchecked(gamma, k))
}

fn f_unchecked(alpha: f64, gamma: f64, k: u32) -> f64 {
    let k = k as i32;
    let g2 = gamma * gamma;
    let a = 1.0 - 2.0 * alpha + alpha * (g2 + g2.recip());
    let b = alpha / g2 + (1.0 - 2.0 * alpha) / 2.0;
    a.powi(k) - 2.0 * b.powi(k) + alpha.powi(k) * gamma.powi(-2 * k)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=0.5).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "alpha must lie in [0, 1/2], got {alpha}"
        )))
    }
}

pub fn f_alpha(alpha: f64, gamma: f64, k: u32) -> Result<f64> {
    check_gamma(gamma)?;
    check_alpha(alpha)?;
    Ok(f_unchecked(alpha, gamma, k))
}

fn f_derivative_unchecked(alpha: f64, gamma: f64, k: u32) -> f64 {
    let kf = k as f64;
    let k = k as i32;
    let g2 = gamma * gamma;
    let a = 1.0 - 2.0 * alpha + alpha * (g2 + g2.recip());
    let da = (gamma - gamma.recip()).powi(2);
    let b = alpha / g2 + (1.0 - 2.0 * alpha) / 2.0;
    let db = g2.recip() - 1.0;
    kf * (a.powi(k - 1) * da - 2.0 * b.powi(k - 1) * db + alpha.powi(k - 1) * gamma.powi(-2 * k))
}

/// ∂f/∂α.
pub fn f_alpha_derivative(alpha: f64, gamma: f64, k: u32) -> Result<f64> {
    check_gamma(gamma)?;
    check_alpha(alpha)?;
    Ok(f_derivative_unchecked(alpha, gamma, k))
}

/// x ln x with 0 ln 0 = 0.
fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

fn ln_g_unchecked(alpha: f64, gamma: f64, k: u32, r: f64) -> Option<f64> {
    let f = f_unchecked(alpha / 2.0, gamma, k);
    if !(f > 0.0) {
        return None;
    }
    let phi = if r == 0.0 { 0.0 } else { 2.0 * r * f.ln() };
    Some(phi - xlnx(alpha) - xlnx(1.0 - alpha))
}

pub fn g_alpha(alpha: f64, gamma: f64, k: u32, r: f64) -> Result<f64> {
    check_gamma(gamma)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    ln_g_unchecked(alpha, gamma, k, r)
        .map(f64::exp)
        .ok_or_else(|| Error::Domain(format!("f({}) is not positive", alpha / 2.0)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceReport {
    pub passed: bool,
    pub grid_max_location: f64,
    pub g_at_half: f64,
    pub ln_g_at_half: f64,
    pub second_difference_at_half: f64,
    pub failure_reason: Option<String>,
}

pub fn laplace_check(k: u32, r: f64, gamma: f64, grid_size: usize) -> LaplaceReport {
    let fail = |reason: String, loc: f64| LaplaceReport {
        passed: false,
        grid_max_location: loc,
        g_at_half: f64::NAN,
        ln_g_at_half: f64::NAN,
        second_difference_at_half: f64::NAN,
        failure_reason: Some(reason),
    };
    if !(gamma > 0.0 && gamma.is_finite()) {
        return fail(format!("gamma must be positive, got {gamma}"), f64::NAN);
    }
    if grid_size < 1000 {
        return fail(
            format!("grid of {grid_size} points is below 1000"),
            f64::NAN,
        );
    }
    let Some(ln_half) = ln_g_unchecked(0.5, gamma, k, r) else {
        return fail("f(1/4) is not positive".into(), f64::NAN);
    };

    let mut best = (0.5, ln_half);
    let mut rival: Option<f64> = None;
    for i in 0..=grid_size {
        let alpha = i as f64 / grid_size as f64;
        if alpha == 0.5 {
            continue;
        }
        let Some(v) = ln_g_unchecked(alpha, gamma, k, r) else {
            return fail(format!("f({}) is not positive", alpha / 2.0), alpha);
        };
        if v > best.1 {
            best = (alpha, v);
        }
        if v >= ln_half && rival.is_none() {
            rival = Some(alpha);
        }
    }

    let h = SECOND_DIFFERENCE_STEP;
    let (Some(up), Some(down)) = (
        ln_g_unchecked(0.5 + h, gamma, k, r),
        ln_g_unchecked(0.5 - h, gamma, k, r),
    ) else {
        return fail("f is not positive next to 1/4".into(), best.0);
    };
    let g_half = ln_half.exp();
    // g(1/2+h) − 2g(1/2) + g(1/2−h), relative to g(1/2) and without cancellation
    let second = g_half * ((up - ln_half).exp_m1() + (down - ln_half).exp_m1()) / (h * h);

    let failure_reason = if let Some(alpha) = rival {
        Some(format!("g({alpha}) is not below g(1/2)"))
    } else if !(second < 0.0) {
        Some(format!(
            "second difference at 1/2 is {second}, not negative"
        ))
    } else {
        None
    };
    LaplaceReport {
        passed: failure_reason.is_none(),
        grid_max_location: best.0,
        g_at_half: g_half,
        ln_g_at_half: ln_half,
        second_difference_at_half: second,
        failure_reason,
    }
}

/// A γ ∈ (0, 1] for which g peaks at α = 1/2, if the search finds one.
///
/// A maximum at 1/2 needs f'(1/4) = 0. The search minimises |f'(1/4)| over a
/// log-spaced sweep of γ, refines the best bracket by golden-section search
/// in ln γ, and returns the refined γ only if it passes [`laplace_check`].
pub fn find_gamma(k: u32, r: f64) -> Option<f64> {
    if k < 2 || !(r >= 0.0) {
        return None;
    }
    let objective = |ln_gamma: f64| f_derivative_unchecked(0.25, ln_gamma.exp(), k).abs();
    let lo = GAMMA_SWEEP_MIN.ln();
    let step = -lo / (GAMMA_SWEEP - 1) as f64;
    let sweep: Vec<f64> = (0..GAMMA_SWEEP).map(|i| lo + step * i as f64).collect();
    let best = (0..GAMMA_SWEEP)
        .min_by(|&i, &j| objective(sweep[i]).total_cmp(&objective(sweep[j])))
        .unwrap();
    let mut a = sweep[best.saturating_sub(1)];
    let mut b = sweep[(best + 1).min(GAMMA_SWEEP - 1)];
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    for _ in 0..GOLDEN_ITERATIONS {
        if objective(c) < objective(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - inv_phi * (b - a);
        d = a + inv_phi * (b - a);
    }
    let gamma = ((a + b) / 2.0).exp().min(1.0);
    laplace_check(k, r, gamma, LAPLACE_GRID)
        .passed
        .then_some(gamma)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdConstants {
    pub k: u32,
    /// 2^{k−1} ln 2; above it there are no disjoint covers a.s.
    pub upper: f64,
    /// 2^{k−1} ln 2 − (k+1) ln 2 − 1.
    pub lower: f64,
    /// 2^{k−1} ln 2 − (k+1) ln 2 − 1/2 − 3/(2k).
    pub ap_condition: f64,
    /// Root of 2 (1 − 2^{−k})^{2r} = 1.
    pub first_moment_root: f64,
}

pub fn constants(k: u32) -> Result<ThresholdConstants> {
    if k < 2 {
        return Err(Error::Domain(format!("k must be at least 2, got {k}")));
    }
    let kf = k as f64;
    let upper = 2f64.powi(k as i32 - 1) * LN_2;
    Ok(ThresholdConstants {
        k,
        upper,
        lower: upper - (kf + 1.0) * LN_2 - 1.0,
        ap_condition: upper - (kf + 1.0) * LN_2 - 0.5 - 1.5 / kf,
        first_moment_root: LN_2 / (-2.0 * (-(2f64.powi(-(k as i32)))).ln_1p()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstMomentRate {
    pub rate_at_half: f64,
    pub max_rate: f64,
    pub argmax: f64,
}

/// H(x) + r ln((1 − x^k)(1 − (1 − x)^k)): the exponential rate of the
/// expected number of covers with a fraction x of Red vertices.
pub fn first_moment_rate_at(x: f64, k: u32, r: f64) -> f64 {
    let k = k as i32;
    let entropy = -xlnx(x) - xlnx(1.0 - x);
    let edges = (-x.powi(k)).ln_1p() + (-(1.0 - x).powi(k)).ln_1p();
    if r == 0.0 {
        entropy
    } else {
        entropy + r * edges
    }
}

pub fn first_moment_rate(k: u32, r: f64) -> Result<FirstMomentRate> {
    if k < 1 || !(r >= 0.0) {
        return Err(Error::Domain(format!(
            "need k ≥ 1 and r ≥ 0, got k={k}, r={r}"
        )));
    }
    let rate_at_half = first_moment_rate_at(0.5, k, r);
    let (mut argmax, mut max_rate) = (0.5, rate_at_half);
    for i in 1..FIRST_MOMENT_GRID {
        let x = i as f64 / FIRST_MOMENT_GRID as f64;
        let v = first_moment_rate_at(x, k, r);
        if v > max_rate {
            argmax = x;
            max_rate = v;
        }
    }
    Ok(FirstMomentRate {
        rate_at_half,
        max_rate,
        argmax,
    })
}

/// ln Γ(x + 1) = ln x!.
fn ln_factorial(x: f64) -> f64 {
    libm::lgamma(x + 1.0)
}

pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n as f64) - ln_factorial(k as f64) - ln_factorial((n - k) as f64)
}

pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY || max.is_nan() {
        return max;
    }
    max + neumaier_sum(xs.iter().map(|&x| (x - max).exp())).ln()
}

/// Prefactor in front of ψ^{2rn} in the closed form of E[X].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefactorConvention {
    /// C(n, n/2), the number of balanced partitions.
    Balanced,
    /// 2 C(n, n/2).
    Doubled,
}

impl PrefactorConvention {
    pub fn name(self) -> &'static str {
        match self {
            PrefactorConvention::Balanced => "balanced",
            PrefactorConvention::Doubled => "doubled",
        }
    }
}

fn check_even(n: u64) -> Result<()> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "n must be even and positive, got {n}"
        )));
    }
    Ok(())
}

/// ln E[X] for rn edges per colour drawn with replacement.
pub fn expected_weighted_x(
    n: u64,
    k: u32,
    r: f64,
    gamma: f64,
    convention: PrefactorConvention,
) -> Result<f64> {
    check_even(n)?;
    let psi = psi(gamma, k)?;
    if !(psi > 0.0) {
        return Err(Error::Domain(format!(
            "psi({gamma}) = {psi} is not positive"
        )));
    }
    let edges = if r == 0.0 {
        0.0
    } else {
        2.0 * r * n as f64 * psi.ln()
    };
    let extra = match convention {
        PrefactorConvention::Balanced => 0.0,
        PrefactorConvention::Doubled => LN_2,
    };
    Ok(ln_binomial(n, n / 2) + extra + edges)
}

/// E[X²] / E[X]² = Σ_z C(n/2, z)² f(z/n)^{2rn} / (C(n, n/2) ψ^{4rn}).
///
/// C(n, n/2) is written as Σ_z C(n/2, z)² so numerator and denominator share
/// one log-sum-exp shape; at r = 0 the two agree bit for bit.
pub fn second_moment_ratio(n: u64, k: u32, r: f64, gamma: f64) -> Result<f64> {
    check_even(n)?;
    let psi = psi(gamma, k)?;
    if !(r >= 0.0) {
        return Err(Error::Domain(format!(
            "density must be non-negative, got {r}"
        )));
    }
    let half = n / 2;
    let rn = r * n as f64;
    let mut weights = Vec::with_capacity(half as usize + 1);
    let mut terms = Vec::with_capacity(half as usize + 1);
    for z in 0..=half {
        let w = 2.0 * ln_binomial(half, z);
        let f = f_unchecked(z as f64 / n as f64, gamma, k);
        if !(f > 0.0) {
            return Err(Error::Domain(format!("f({z}/{n}) = {f} is not positive")));
        }
        let t = if r == 0.0 {
            0.0
        } else {
            2.0 * rn * (f.ln() - 2.0 * psi.ln())
        };
        weights.push(w);
        terms.push(w + t);
    }
    Ok((log_sum_exp(&terms) - log_sum_exp(&weights)).exp())
}

fn check_c(c: f64) -> Result<()> {
    if (0.0..1.0).contains(&c) {
        Ok(())
    } else {
        Err(Error::Domain(format!("c must lie in [0, 1), got {c}")))
    }
}

/// (2c/n) (1/(1 − c))³, the bound on the expected number of odd bicycles in
/// G(n, c/n) per colour.
pub fn bicycle_expectation_bound(c: f64, n: u64) -> Result<f64> {
    check_c(c)?;
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    Ok(2.0 * c / n as f64 * (1.0 - c).powi(-3))
}

/// e^{−4/(1−c)}, the FKG lower bound on the probability of having no
/// alternating cycle.
pub fn alt_cycle_free_lower_bound(c: f64) -> Result<f64> {
    check_c(c)?;
    Ok((-4.0 / (1.0 - c)).exp())
}
