//! Monte Carlo harness: satisfiability probabilities over random instances,
//! density scans, threshold bisection, and the FKG and moment checks.
//!
//! Trial `t` at grid point `g` samples with seed
//! `derive(derive(master, LABEL_GRID, g), LABEL_TRIAL, t)`. Nested scans use
//! grid point 0 for every density, so one trial sees a growing sequence of
//! instances. Trials run on the current rayon pool and are collected in trial
//! order, which makes every output independent of the worker count.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::analytics::{self, PrefactorConvention};
use crate::error::{Error, Result};
use crate::hypergraph::{verify_assignment, Mode, TwoColouredHypergraph};
use crate::reduction::{covers_to_colouring, lists_to_hypergraphs, verify_list_colouring};
use crate::sampler::{sample, sample_lists, SampleConfig};
use crate::solver2::{check_certificate, decide2, greedy_peel, Decision2, PeelOutcome};
use crate::solvergen::{brute_force, dpll, weighted_balanced_X, DecisionGen};
use crate::stream::{derive, LABEL_GRID, LABEL_TRIAL};

/// z for a two-sided 95% interval.
pub const Z95: f64 = 1.959963984540054;

pub const CSV_HEADER: &str =
    "k,n,model,param,density,trials,sat,p_hat,ci_lo,ci_hi,seed,solver,mode,wall_ms";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Decide2,
    Dpll,
    Brute,
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Decide2 => "decide2",
            Solver::Dpll => "dpll",
            Solver::Brute => "brute",
        }
    }
}

impl FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "decide2" => Ok(Solver::Decide2),
            "dpll" => Ok(Solver::Dpll),
            "brute" => Ok(Solver::Brute),
            other => Err(Error::Config(format!("unknown solver `{other}`"))),
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One grid point: edges per colour, edge probability, or palette size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param {
    M(usize),
    P(f64),
    S(usize),
}

impl Param {
    pub fn model(self) -> &'static str {
        match self {
            Param::M(_) => "m",
            Param::P(_) => "p",
            Param::S(_) => "lists",
        }
    }

    /// m/n for the m-model, expected edges per colour over n for the
    /// p-model, and s/n for list schemes.
    pub fn density(self, n: usize, k: usize) -> f64 {
        match self {
            Param::M(m) => m as f64 / n as f64,
            Param::P(p) => p * crate::sampler::binomial(n, k) / n as f64,
            Param::S(s) => s as f64 / n as f64,
        }
    }

    fn value(self) -> f64 {
        match self {
            Param::M(m) | Param::S(m) => m as f64,
            Param::P(p) => p,
        }
    }

    /// The parameter as written in the `param` column.
    pub fn label(self) -> String {
        match self {
            Param::M(m) | Param::S(m) => m.to_string(),
            Param::P(p) => fmt_g6(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    pub trials: usize,
    pub seed: u64,
    pub solver: Solver,
    /// Reuse one seed per trial across the grid (m-model only).
    pub nested: bool,
    /// Fill the `wall_ms` column; off keeps output byte-reproducible.
    pub record_timing: bool,
}

impl ExperimentConfig {
    pub fn new(n: usize, k: usize, solver: Solver) -> Self {
        ExperimentConfig {
            n,
            k,
            mode: Mode::Simple,
            trials: 100,
            seed: 0,
            solver,
            nested: false,
            record_timing: false,
        }
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn nested(mut self, nested: bool) -> Self {
        self.nested = nested;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.n < 1 || self.k < 1 {
            return Err(Error::Config("n and k must be positive".into()));
        }
        if self.solver == Solver::Decide2 && (self.k != 2 || self.mode != Mode::Simple) {
            return Err(Error::Config(format!(
                "decide2 needs k = 2 in simple mode (k = {}, mode = {})",
                self.k,
                self.mode.name()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdRecord {
    pub k: usize,
    pub n: usize,
    pub param: Param,
    pub density: f64,
    pub trials: usize,
    pub sat: usize,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seed: u64,
    pub solver: Solver,
    pub mode: Mode,
    pub wall_ms: Option<f64>,
}

impl ThresholdRecord {
    fn new(cfg: &ExperimentConfig, param: Param, sat: usize, wall_ms: Option<f64>) -> Self {
        let (ci_lo, ci_hi) = wilson(sat, cfg.trials, Z95);
        ThresholdRecord {
            k: cfg.k,
            n: cfg.n,
            param,
            density: param.density(cfg.n, cfg.k),
            trials: cfg.trials,
            sat,
            p_hat: sat as f64 / cfg.trials as f64,
            ci_lo,
            ci_hi,
            seed: cfg.seed,
            solver: cfg.solver,
            mode: cfg.mode,
            wall_ms,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.k,
            self.n,
            self.param.model(),
            self.param.label(),
            fmt_g6(self.density),
            self.trials,
            self.sat,
            fmt_g6(self.p_hat),
            fmt_g6(self.ci_lo),
            fmt_g6(self.ci_hi),
            self.seed,
            self.solver,
            self.mode.name(),
            self.wall_ms.map(fmt_g6).unwrap_or_default(),
        )
    }
}

pub fn write_csv<W: Write>(mut out: W, records: &[ThresholdRecord]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

pub fn to_csv(records: &[ThresholdRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, records).expect("writing to memory");
    String::from_utf8(buf).expect("csv is ascii")
}

/// C's `%.6g`.
pub fn fmt_g6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        strip_zeros(&format!("{x:.*}", (5 - exp) as usize)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Wilson score interval for `sat` successes in `trials`.
pub fn wilson(sat: usize, trials: usize, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = sat as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (
        (centre - half).max(0.0).min(p),
        (centre + half).min(1.0).max(p),
    )
}

fn trial_seed(master: u64, grid_index: u64, trial: u64) -> u64 {
    derive(derive(master, LABEL_GRID, grid_index), LABEL_TRIAL, trial)
}

/// Solves `h`, re-checking the witness the solver returns.
pub fn solve(h: &TwoColouredHypergraph, solver: Solver) -> Result<bool> {
    match solver {
        Solver::Decide2 => match decide2(h)? {
            Decision2::Sat(a) => {
                assert!(
                    verify_assignment(h, &a)?,
                    "decide2 assignment fails verification"
                );
                Ok(true)
            }
            Decision2::Unsat(cert) => {
                assert!(
                    check_certificate(h, &cert),
                    "decide2 certificate fails the check"
                );
                Ok(false)
            }
        },
        Solver::Dpll => Ok(dpll(h)?.is_sat()),
        Solver::Brute => match brute_force(h)? {
            DecisionGen::Sat(a) => {
                assert!(verify_assignment(h, &a)?);
                Ok(true)
            }
            DecisionGen::Unsat => Ok(false),
        },
    }
}

fn run_trial(cfg: &ExperimentConfig, param: Param, seed: u64) -> Result<bool> {
    match param {
        Param::M(m) => solve(
            &sample(&SampleConfig::with_m(cfg.n, cfg.k, m, cfg.mode, seed))?,
            cfg.solver,
        ),
        Param::P(p) => {
            if cfg.mode != Mode::Simple {
                return Err(Error::Config("the p-model draws simple edges only".into()));
            }
            solve(
                &sample(&SampleConfig::with_p(cfg.n, cfg.k, p, seed))?,
                cfg.solver,
            )
        }
        Param::S(s) => {
            let lists = sample_lists(cfg.n, cfg.k, s, seed)?;
            let h = lists_to_hypergraphs(&lists);
            let sat = match cfg.solver {
                Solver::Decide2 => match decide2(&h)? {
                    Decision2::Sat(a) => Some(a),
                    Decision2::Unsat(cert) => {
                        assert!(check_certificate(&h, &cert));
                        None
                    }
                },
                Solver::Dpll => match dpll(&h)? {
                    DecisionGen::Sat(a) => Some(a),
                    DecisionGen::Unsat => None,
                },
                Solver::Brute => match brute_force(&h)? {
                    DecisionGen::Sat(a) => Some(a),
                    DecisionGen::Unsat => None,
                },
            };
            match sat {
                Some(a) => {
                    let colouring = covers_to_colouring(&lists, &a)?;
                    assert!(verify_list_colouring(&lists, &colouring));
                    Ok(true)
                }
                None => Ok(false),
            }
        }
    }
}

fn estimate_at(cfg: &ExperimentConfig, param: Param, grid_index: u64) -> Result<ThresholdRecord> {
    cfg.validate()?;
    let start = Instant::now();
    let outcomes = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(cfg, param, trial_seed(cfg.seed, grid_index, t)))
        .collect::<Result<Vec<bool>>>()?;
    let sat = outcomes.iter().filter(|&&s| s).count();
    let wall = cfg
        .record_timing
        .then(|| start.elapsed().as_secs_f64() * 1e3);
    Ok(ThresholdRecord::new(cfg, param, sat, wall))
}

pub fn estimate_probability(cfg: &ExperimentConfig, param: Param) -> Result<ThresholdRecord> {
    estimate_at(cfg, param, 0)
}

/// One record per grid point; the grid must be nonempty, ascending and of a
/// single model.
pub fn scan(cfg: &ExperimentConfig, grid: &[Param]) -> Result<Vec<ThresholdRecord>> {
    cfg.validate()?;
    let Some(first) = grid.first() else {
        return Err(Error::Config("empty grid".into()));
    };
    if grid.iter().any(|p| p.model() != first.model()) {
        return Err(Error::Config("grid mixes models".into()));
    }
    if grid.windows(2).any(|w| w[0].value() > w[1].value()) {
        return Err(Error::Config("grid is not ascending".into()));
    }
    if cfg.nested {
        return nested_scan(cfg, grid);
    }
    grid.iter()
        .enumerate()
        .map(|(i, &p)| estimate_at(cfg, p, i as u64))
        .collect()
}

/// Every trial samples once at the largest m and solves its prefixes, so the
/// instances of one trial are nested. Sat at a larger m must imply Sat at
/// every smaller one.
fn nested_scan(cfg: &ExperimentConfig, grid: &[Param]) -> Result<Vec<ThresholdRecord>> {
    let ms: Vec<usize> = grid
        .iter()
        .map(|p| match p {
            Param::M(m) => Ok(*m),
            _ => Err(Error::Config("nested scans need the m-model".into())),
        })
        .collect::<Result<_>>()?;
    let top = *ms.last().unwrap();
    let start = Instant::now();
    let rows = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| -> Result<Vec<bool>> {
            let seed = trial_seed(cfg.seed, 0, t);
            let full = sample(&SampleConfig::with_m(cfg.n, cfg.k, top, cfg.mode, seed))?;
            let sats = ms
                .iter()
                .map(|&m| solve(&full.prefix(m, m), cfg.solver))
                .collect::<Result<Vec<bool>>>()?;
            assert!(
                sats.windows(2).all(|w| w[0] || !w[1]),
                "trial {t}: Sat at a larger m but not at a smaller one"
            );
            Ok(sats)
        })
        .collect::<Result<Vec<_>>>()?;
    let wall = cfg
        .record_timing
        .then(|| start.elapsed().as_secs_f64() * 1e3);
    Ok(grid
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let sat = rows.iter().filter(|r| r[i]).count();
            ThresholdRecord::new(cfg, p, sat, wall)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocateStatus {
    /// Bracket narrower than the tolerance.
    Converged,
    /// Ran out of rounds first; the bracket is still valid.
    BudgetExhausted,
    /// The initial endpoints do not straddle the target.
    InvalidBracket,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdLocation {
    pub estimate: f64,
    pub lo: f64,
    pub hi: f64,
    pub status: LocateStatus,
    pub records: Vec<ThresholdRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocateOptions {
    pub target: f64,
    pub tol: f64,
    /// Initial densities m/n; the CI at `lo` must lie above the target and
    /// the CI at `hi` below it.
    pub lo: f64,
    pub hi: f64,
    pub max_rounds: usize,
}

impl LocateOptions {
    pub fn new(lo: f64, hi: f64) -> Self {
        LocateOptions {
            target: 0.5,
            tol: 0.02,
            lo,
            hi,
            max_rounds: 20,
        }
    }
}

/// Bisection on the density m/n of the m-model. Each midpoint moves the
/// flank on its side of the target, judged by the point estimate.
pub fn locate_threshold(cfg: &ExperimentConfig, opts: &LocateOptions) -> Result<ThresholdLocation> {
    cfg.validate()?;
    if !(opts.lo < opts.hi) || opts.lo < 0.0 {
        return Err(Error::Config(format!(
            "bad bracket [{}, {}]",
            opts.lo, opts.hi
        )));
    }
    if !(opts.tol > 0.0) || !(0.0..=1.0).contains(&opts.target) {
        return Err(Error::Config(
            "tol must be positive and target a probability".into(),
        ));
    }
    let n = cfg.n;
    let mut grid_index = 0u64;
    let mut point = |d: f64| -> Result<ThresholdRecord> {
        grid_index += 1;
        estimate_at(cfg, Param::M((d * n as f64).round() as usize), grid_index)
    };
    let (mut lo, mut hi) = (opts.lo, opts.hi);
    let lo_rec = point(lo)?;
    let hi_rec = point(hi)?;
    let valid = lo_rec.ci_lo > opts.target && hi_rec.ci_hi < opts.target;
    let mut records = vec![lo_rec, hi_rec];
    let finish = |lo: f64, hi: f64, status, records| ThresholdLocation {
        estimate: (lo + hi) / 2.0,
        lo,
        hi,
        status,
        records,
    };
    if !valid {
        return Ok(finish(lo, hi, LocateStatus::InvalidBracket, records));
    }
    for _ in 0..opts.max_rounds {
        if hi - lo < opts.tol {
            return Ok(finish(lo, hi, LocateStatus::Converged, records));
        }
        let mid = (lo + hi) / 2.0;
        let rec = point(mid)?;
        if rec.p_hat >= opts.target {
            lo = mid;
        } else {
            hi = mid;
        }
        records.push(rec);
    }
    let status = if hi - lo < opts.tol {
        LocateStatus::Converged
    } else {
        LocateStatus::BudgetExhausted
    };
    Ok(finish(lo, hi, status, records))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SharpnessRow {
    pub n: usize,
    /// Density where the probability falls to `hi`.
    pub at_hi: ThresholdLocation,
    /// Density where the probability falls to `lo`.
    pub at_lo: ThresholdLocation,
    /// Difference of the two estimates, in density units (m/n).
    pub width: f64,
}

/// Transition window per n: the density distance between the points where
/// the probability is `hi` and where it is `lo`.
pub fn sharpness_width(
    cfg: &ExperimentConfig,
    n_list: &[usize],
    lo: f64,
    hi: f64,
    opts: &LocateOptions,
) -> Result<Vec<SharpnessRow>> {
    if !(lo < hi) || lo <= 0.0 || hi >= 1.0 {
        return Err(Error::Config(format!(
            "need 0 < lo < hi < 1, got lo={lo}, hi={hi}"
        )));
    }
    n_list
        .iter()
        .map(|&n| {
            let c = ExperimentConfig { n, ..cfg.clone() };
            let at_hi = locate_threshold(
                &c,
                &LocateOptions {
                    target: hi,
                    ..*opts
                },
            )?;
            let at_lo = locate_threshold(
                &c,
                &LocateOptions {
                    target: lo,
                    ..*opts
                },
            )?;
            Ok(SharpnessRow {
                n,
                width: at_lo.estimate - at_hi.estimate,
                at_hi,
                at_lo,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FkgReport {
    pub n: usize,
    pub c: f64,
    pub trials: usize,
    pub greedy_sat: usize,
    pub decide2_sat: usize,
    /// Trials where greedy peeling succeeded but decide2 said Unsat.
    pub violations: usize,
    pub p_greedy: f64,
    pub p_decide2: f64,
    pub bound: f64,
    /// The bound is below machine epsilon and says nothing at any trial count.
    pub vacuous: bool,
}

/// G(n, c/n) per colour: greedy peeling against decide2 and the FKG bound.
pub fn fkg_experiment(n: usize, c: f64, trials: usize, seed: u64) -> Result<FkgReport> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Config(format!("need 0 < c < 1, got {c}")));
    }
    if trials < 1 || n < 2 {
        return Err(Error::Config("need n >= 2 and trials >= 1".into()));
    }
    let p = c / n as f64;
    let outcomes = (0..trials as u64)
        .into_par_iter()
        .map(|t| -> Result<(bool, bool)> {
            let h = sample(&SampleConfig::with_p(n, 2, p, trial_seed(seed, 0, t)))?;
            let greedy = match greedy_peel(&h)? {
                PeelOutcome::Sat(a) => {
                    assert!(verify_assignment(&h, &a)?);
                    true
                }
                PeelOutcome::Stuck(_) => false,
            };
            Ok((greedy, solve(&h, Solver::Decide2)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let greedy_sat = outcomes.iter().filter(|o| o.0).count();
    let decide2_sat = outcomes.iter().filter(|o| o.1).count();
    let violations = outcomes.iter().filter(|o| o.0 && !o.1).count();
    let bound = analytics::alt_cycle_free_lower_bound(c)?;
    Ok(FkgReport {
        n,
        c,
        trials,
        greedy_sat,
        decide2_sat,
        violations,
        p_greedy: greedy_sat as f64 / trials as f64,
        p_decide2: decide2_sat as f64 / trials as f64,
        bound,
        vacuous: bound < f64::EPSILON,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub n: usize,
    pub k: usize,
    /// Edges per colour, round(r n).
    pub m: usize,
    pub gamma: f64,
    pub trials: usize,
    pub mean: f64,
    pub std_error: f64,
    pub balanced: f64,
    pub doubled: f64,
    /// |mean − prediction| / std_error (infinite for a mismatch at zero error).
    pub z_balanced: f64,
    pub z_doubled: f64,
    /// The convention within three standard errors, if exactly one is.
    pub supported: Option<PrefactorConvention>,
}

pub const MOMENT_MAX_N: usize = 14;

/// Monte Carlo mean of the weighted balanced count X against the two closed
/// forms of E[X]. Edges are drawn with replacement.
pub fn moment_validation(
    n: usize,
    k: usize,
    r: f64,
    gamma: f64,
    trials: usize,
    seed: u64,
    mode: Mode,
) -> Result<MomentReport> {
    if mode != Mode::Replacement {
        return Err(Error::Config(
            "moment validation needs replacement mode; the closed form assumes it".into(),
        ));
    }
    if !n.is_multiple_of(2) || n == 0 || n > MOMENT_MAX_N {
        return Err(Error::Config(format!(
            "need even n in 2..={MOMENT_MAX_N}, got {n}"
        )));
    }
    if trials < 2 || !(r >= 0.0) || k < 1 {
        return Err(Error::Config("need trials >= 2, r >= 0 and k >= 1".into()));
    }
    let m = (r * n as f64).round() as usize;
    let xs = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let h = sample(&SampleConfig::with_m(n, k, m, mode, trial_seed(seed, 0, t)))?;
            weighted_balanced_X(&h, gamma)
        })
        .collect::<Result<Vec<f64>>>()?;
    let count = trials as f64;
    let mean = crate::solvergen::neumaier_sum(xs.iter().copied()) / count;
    let var = crate::solvergen::neumaier_sum(xs.iter().map(|x| (x - mean).powi(2))) / (count - 1.0);
    let std_error = (var / count).sqrt();
    let r_eff = m as f64 / n as f64;
    let predict =
        |c| analytics::expected_weighted_x(n as u64, k as u32, r_eff, gamma, c).map(f64::exp);
    let balanced = predict(PrefactorConvention::Balanced)?;
    let doubled = predict(PrefactorConvention::Doubled)?;
    let z = |target: f64| {
        let gap = (mean - target).abs();
        if std_error > 0.0 {
            gap / std_error
        } else if gap <= 1e-9 * target.abs() {
            0.0
        } else {
            f64::INFINITY
        }
    };
    let (z_balanced, z_doubled) = (z(balanced), z(doubled));
    let supported = match (z_balanced <= 3.0, z_doubled <= 3.0) {
        (true, false) => Some(PrefactorConvention::Balanced),
        (false, true) => Some(PrefactorConvention::Doubled),
        _ => None,
    };
    Ok(MomentReport {
        n,
        k,
        m,
        gamma,
        trials,
        mean,
        std_error,
        balanced,
        doubled,
        z_balanced,
        z_doubled,
        supported,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g6_formatting() {
        assert_eq!(fmt_g6(0.0), "0");
        assert_eq!(fmt_g6(0.5), "0.5");
        assert_eq!(fmt_g6(1.0), "1");
        assert_eq!(fmt_g6(2.772588722), "2.77259");
        assert_eq!(fmt_g6(123456789.0), "1.23457e+08");
        assert_eq!(fmt_g6(0.000012345678), "1.23457e-05");
        assert_eq!(fmt_g6(0.0001), "0.0001");
        assert_eq!(fmt_g6(999999.5), "1e+06");
        assert_eq!(fmt_g6(-0.25), "-0.25");
        assert_eq!(fmt_g6(100000.0), "100000");
    }

    #[test]
    fn wilson_contains_estimate() {
        for trials in [1, 7, 100] {
            for sat in 0..=trials {
                let (lo, hi) = wilson(sat, trials, Z95);
                let p = sat as f64 / trials as f64;
                assert!(lo <= p && p <= hi && lo >= 0.0 && hi <= 1.0);
            }
        }
    }

    #[test]
    fn decide2_rejects_other_k() {
        let cfg = ExperimentConfig::new(10, 3, Solver::Decide2);
        assert!(estimate_probability(&cfg, Param::M(5)).is_err());
    }

    #[test]
    fn empty_and_unsorted_grids_are_refused() {
        let cfg = ExperimentConfig::new(10, 2, Solver::Decide2).trials(2);
        assert!(scan(&cfg, &[]).is_err());
        assert!(scan(&cfg, &[Param::M(5), Param::M(3)]).is_err());
        assert!(scan(&cfg, &[Param::M(5), Param::P(0.1)]).is_err());
    }

    #[test]
    fn moment_validation_refuses_simple_mode() {
        assert!(moment_validation(8, 3, 1.0, 0.9, 10, 0, Mode::Simple).is_err());
    }

    #[test]
    fn header_and_row_shape() {
        let cfg = ExperimentConfig::new(20, 2, Solver::Decide2)
            .trials(3)
            .seed(9);
        let recs = scan(&cfg, &[Param::M(4), Param::M(8)]).unwrap();
        let csv = to_csv(&recs);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("2,20,m,4,0.2,3,"));
        assert!(lines[1].ends_with(",9,decide2,simple,"));
    }
}
