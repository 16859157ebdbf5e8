//! `dcl`: command-line front end for dcl-core.
//!
//! Exit codes: 0 SAT (or success), 1 UNSAT (or a failed check), 2 usage
//! error, 3 I/O or parse error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use dcl_core::analytics::{self, PrefactorConvention, LAPLACE_GRID};
use dcl_core::experiments::{
    self, ExperimentConfig, LocateOptions, LocateStatus, Param, Solver, ThresholdRecord,
};
use dcl_core::reduction::export_dimacs;
use dcl_core::sampler::{sample, SampleConfig};
use dcl_core::solver2::{check_certificate, decide2, Decision2, OddBicycleCertificate};
use dcl_core::solvergen::{brute_force, dpll, DecisionGen};
use dcl_core::{read_instance, verify_assignment, write_instance, Mode, TwoColouredHypergraph};

#[derive(Parser)]
#[command(
    name = "dcl",
    version,
    about = "Disjoint covers of random hypergraph pairs"
)]
struct Cli {
    /// Worker threads for experiments (default: all cores).
    #[arg(long, global = true, env = "DCL_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Simple,
    Replacement,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Simple => Mode::Simple,
            ModeArg::Replacement => Mode::Replacement,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Decide2,
    Dpll,
    Brute,
}

impl From<SolverArg> for Solver {
    fn from(s: SolverArg) -> Solver {
        match s {
            SolverArg::Decide2 => Solver::Decide2,
            SolverArg::Dpll => Solver::Dpll,
            SolverArg::Brute => Solver::Brute,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random pair of k-uniform hypergraphs.
    Sample(SampleArgs),
    /// Decide a k = 2 instance; prints an assignment or an odd bicycle.
    Decide(DecideArgs),
    /// Decide an instance of any k.
    Solve(SolveArgs),
    /// Check an odd-bicycle certificate against an instance.
    BicycleCheck(BicycleCheckArgs),
    /// Write the instance as same-sign CNF in DIMACS format.
    ExportDimacs(ExportArgs),
    /// Threshold constants and moment formulas.
    Analytic {
        #[command(subcommand)]
        what: Analytic,
    },
    /// Bisect for the density where the Sat probability crosses a target.
    Threshold(ThresholdArgs),
    /// Estimate the Sat probability over a grid of parameters.
    Scan(ScanArgs),
    /// Random list schemes on K_{n,n}, solved through the reduction.
    Listcolor(ListcolorArgs),
    /// Monte Carlo check of the closed form for E[X].
    ValidateMoments(MomentArgs),
    /// Greedy peeling against decide2 in G(n, c/n), with the FKG bound.
    Fkg(FkgArgs),
    /// Width of the transition window for several n.
    Sharpness(SharpnessArgs),
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Edges per colour.
    #[arg(long, group = "size")]
    m: Option<usize>,
    /// Edges per colour as a multiple of n.
    #[arg(long, group = "size")]
    r: Option<f64>,
    /// Edge probability per colour.
    #[arg(long, group = "size")]
    p: Option<f64>,
    #[arg(long, value_enum, default_value = "simple")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecideArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Also write the certificate of an UNSAT instance here.
    #[arg(long)]
    cert: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "dpll")]
    solver: SolverArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct BicycleCheckArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    cert: PathBuf,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Analytic {
    /// upper, lower, AP condition and first-moment root for k.
    Constants {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    Psi {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        k: u32,
    },
    F {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        k: u32,
    },
    G {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: f64,
    },
    Laplace {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = LAPLACE_GRID)]
        grid: usize,
    },
    FindGamma {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: f64,
    },
    FirstMoment {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: f64,
    },
    /// ln E[X] under both prefactor conventions.
    ExpectedX {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        gamma: f64,
    },
    /// E[X²] / E[X]².
    Ratio {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        gamma: f64,
    },
    /// Bounds for G(n, c/n) per colour.
    Bicycle {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Default: decide2 for k = 2, dpll otherwise.
    #[arg(long, value_enum)]
    solver: Option<SolverArg>,
    #[arg(long, value_enum, default_value = "simple")]
    mode: ModeArg,
    /// Fill the wall_ms column (output is then no longer reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl ExperimentArgs {
    fn config(&self) -> ExperimentConfig {
        let solver = self.solver.map(Solver::from).unwrap_or(if self.k == 2 {
            Solver::Decide2
        } else {
            Solver::Dpll
        });
        let mut cfg = ExperimentConfig::new(self.n, self.k, solver)
            .trials(self.trials)
            .seed(self.seed)
            .mode(self.mode.into());
        cfg.record_timing = self.timing;
        cfg
    }
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    exp: ExperimentArgs,
    #[arg(long, default_value_t = 0.5)]
    target: f64,
    #[arg(long, default_value_t = 0.02)]
    tol: f64,
    /// Lower end of the initial density bracket.
    #[arg(long, default_value_t = 0.0)]
    lo: f64,
    /// Upper end (default: 1 for k = 2, 1.25 · 2^{k−1} ln 2 otherwise).
    #[arg(long)]
    hi: Option<f64>,
    #[arg(long, default_value_t = 20)]
    rounds: usize,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    exp: ExperimentArgs,
    /// Densities m/n, comma separated.
    #[arg(long, value_delimiter = ',', group = "grid")]
    densities: Option<Vec<f64>>,
    /// Edges per colour, comma separated.
    #[arg(long, value_delimiter = ',', group = "grid")]
    m: Option<Vec<usize>>,
    /// Edge probabilities, comma separated.
    #[arg(long, value_delimiter = ',', group = "grid")]
    p: Option<Vec<f64>>,
    /// Palette sizes for list schemes, comma separated.
    #[arg(long, value_delimiter = ',', group = "grid")]
    s: Option<Vec<usize>>,
    /// One seed per trial across the grid (m-model only).
    #[arg(long)]
    nested: bool,
}

#[derive(Args)]
struct ListcolorArgs {
    #[command(flatten)]
    exp: ExperimentArgs,
    /// Palette sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    s: Vec<usize>,
}

#[derive(Args)]
struct MomentArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: f64,
    #[arg(long)]
    gamma: f64,
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "replacement")]
    mode: ModeArg,
}

#[derive(Args)]
struct FkgArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    c: f64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SharpnessArgs {
    #[command(flatten)]
    exp: ExperimentArgs,
    /// Further values of n, comma separated (--n is measured first).
    #[arg(long = "n-list", value_delimiter = ',')]
    n_list: Vec<usize>,
    #[arg(long = "p-lo", default_value_t = 0.1)]
    p_lo: f64,
    #[arg(long = "p-hi", default_value_t = 0.9)]
    p_hi: f64,
    #[arg(long, default_value_t = 0.01)]
    tol: f64,
    #[arg(long, default_value_t = 0.0)]
    lo: f64,
    #[arg(long)]
    hi: Option<f64>,
}

/// Error classes mapped onto exit codes.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return 2;
        }
        if cause.is::<io::Error>() {
            return 3;
        }
        if let Some(e) = cause.downcast_ref::<dcl_core::Error>() {
            return match e {
                dcl_core::Error::Parse { .. }
                | dcl_core::Error::EdgeCountMismatch { .. }
                | dcl_core::Error::Invalid(_)
                | dcl_core::Error::Io(_) => 3,
                _ => 2,
            };
        }
    }
    3
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        pool = pool.num_threads(w);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(3);
        }
    };
    match pool.install(|| run(cli.command)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn load(path: &Path) -> anyhow::Result<TwoColouredHypergraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Sample(a) => sample_cmd(a),
        Command::Decide(a) => decide_cmd(a),
        Command::Solve(a) => solve_cmd(a),
        Command::BicycleCheck(a) => {
            let h = load(&a.input)?;
            let text = fs::read_to_string(&a.cert)
                .with_context(|| format!("reading {}", a.cert.display()))?;
            let cert: OddBicycleCertificate = text.parse()?;
            if check_certificate(&h, &cert) {
                println!("valid");
                Ok(0)
            } else {
                println!("invalid");
                Ok(1)
            }
        }
        Command::ExportDimacs(a) => {
            let h = load(&a.input)?;
            emit(a.out.as_deref(), &export_dimacs(&h))?;
            Ok(0)
        }
        Command::Analytic { what } => analytic_cmd(what),
        Command::Threshold(a) => threshold_cmd(a),
        Command::Scan(a) => scan_cmd(a),
        Command::Listcolor(a) => {
            let cfg = a.exp.config();
            let grid: Vec<Param> = a.s.iter().map(|&s| Param::S(s)).collect();
            let records = experiments::scan(&cfg, &grid)?;
            report_records(&a.exp, &records)?;
            Ok(0)
        }
        Command::ValidateMoments(a) => {
            let rep = experiments::moment_validation(
                a.n,
                a.k,
                a.r,
                a.gamma,
                a.trials,
                a.seed,
                a.mode.into(),
            )?;
            let supported = rep
                .supported
                .map(PrefactorConvention::name)
                .unwrap_or("none");
            print_pairs(&[
                ("n", rep.n.to_string()),
                ("k", rep.k.to_string()),
                ("m", rep.m.to_string()),
                ("gamma", fmt(rep.gamma)),
                ("trials", rep.trials.to_string()),
                ("mean", fmt(rep.mean)),
                ("std_error", fmt(rep.std_error)),
                ("balanced", fmt(rep.balanced)),
                ("doubled", fmt(rep.doubled)),
                ("z_balanced", fmt(rep.z_balanced)),
                ("z_doubled", fmt(rep.z_doubled)),
                ("supported", supported.to_string()),
            ]);
            Ok(0)
        }
        Command::Fkg(a) => {
            let rep = experiments::fkg_experiment(a.n, a.c, a.trials, a.seed)?;
            print_pairs(&[
                ("n", rep.n.to_string()),
                ("c", fmt(rep.c)),
                ("trials", rep.trials.to_string()),
                ("p_greedy", fmt(rep.p_greedy)),
                ("p_decide2", fmt(rep.p_decide2)),
                ("violations", rep.violations.to_string()),
                ("bound", format!("{:e}", rep.bound)),
                ("vacuous", rep.vacuous.to_string()),
            ]);
            Ok(u8::from(rep.violations > 0))
        }
        Command::Sharpness(a) => {
            let cfg = a.exp.config();
            let hi = a.hi.unwrap_or_else(|| default_hi(cfg.k));
            let opts = LocateOptions {
                tol: a.tol,
                ..LocateOptions::new(a.lo, hi)
            };
            let mut ns = vec![a.exp.n];
            ns.extend(&a.n_list);
            let rows = experiments::sharpness_width(&cfg, &ns, a.p_lo, a.p_hi, &opts)?;
            let mut text = String::from("n,at_hi,at_lo,width\n");
            for r in rows {
                text.push_str(&format!(
                    "{},{},{},{}\n",
                    r.n,
                    experiments::fmt_g6(r.at_hi.estimate),
                    experiments::fmt_g6(r.at_lo.estimate),
                    experiments::fmt_g6(r.width)
                ));
            }
            emit(a.exp.out.as_deref(), &text)?;
            Ok(0)
        }
    }
}

fn sample_cmd(a: SampleArgs) -> anyhow::Result<u8> {
    let cfg = match (a.m, a.r, a.p) {
        (Some(m), None, None) => SampleConfig::with_m(a.n, a.k, m, a.mode.into(), a.seed),
        (None, Some(r), None) => SampleConfig::with_m(
            a.n,
            a.k,
            (r * a.n as f64).round() as usize,
            a.mode.into(),
            a.seed,
        ),
        (None, None, Some(p)) => {
            if a.mode != ModeArg::Simple {
                bail!(Usage("the p-model draws simple edges only".into()));
            }
            SampleConfig::with_p(a.n, a.k, p, a.seed)
        }
        _ => bail!(Usage("give exactly one of --m, --r, --p".into())),
    };
    let h = sample(&cfg)?;
    emit(a.out.as_deref(), &write_instance(&h))?;
    Ok(0)
}

fn decide_cmd(a: DecideArgs) -> anyhow::Result<u8> {
    let h = load(&a.input)?;
    if h.k() != 2 {
        bail!(Usage(format!(
            "decide handles k = 2 only (k = {}); use solve",
            h.k()
        )));
    }
    match decide2(&h)? {
        Decision2::Sat(assignment) => {
            anyhow::ensure!(
                verify_assignment(&h, &assignment)?,
                "assignment failed verification"
            );
            match a.format {
                Format::Text => println!("SAT\n{assignment}"),
                Format::Csv => println!("result,assignment\nSAT,{assignment}"),
            }
            Ok(0)
        }
        Decision2::Unsat(cert) => {
            anyhow::ensure!(check_certificate(&h, &cert), "certificate failed its check");
            let join = |xs: &[u32]| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
            match a.format {
                Format::Text => println!("UNSAT\n{cert}"),
                Format::Csv => println!(
                    "result,cycle1,cycle2,path\nUNSAT,{},{},{}",
                    join(&cert.cycle_a),
                    join(&cert.cycle_b),
                    join(&cert.path)
                ),
            }
            if let Some(path) = &a.cert {
                fs::write(path, format!("{cert}\n"))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(1)
        }
    }
}

fn solve_cmd(a: SolveArgs) -> anyhow::Result<u8> {
    let h = load(&a.input)?;
    let decision = match Solver::from(a.solver) {
        Solver::Dpll => dpll(&h)?,
        Solver::Brute => brute_force(&h)?,
        Solver::Decide2 => match decide2(&h)? {
            Decision2::Sat(x) => DecisionGen::Sat(x),
            Decision2::Unsat(_) => DecisionGen::Unsat,
        },
    };
    match decision {
        DecisionGen::Sat(assignment) => {
            anyhow::ensure!(
                verify_assignment(&h, &assignment)?,
                "assignment failed verification"
            );
            match a.format {
                Format::Text => println!("SAT\n{assignment}"),
                Format::Csv => println!("result,assignment\nSAT,{assignment}"),
            }
            Ok(0)
        }
        DecisionGen::Unsat => {
            match a.format {
                Format::Text => println!("UNSAT"),
                Format::Csv => println!("result,assignment\nUNSAT,"),
            }
            Ok(1)
        }
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.6}")
}

fn print_pairs(pairs: &[(&str, String)]) {
    for (k, v) in pairs {
        println!("{k}={v}");
    }
}

fn print_pairs_as(format: Format, pairs: &[(&str, String)]) {
    match format {
        Format::Text => print_pairs(pairs),
        Format::Csv => {
            let keys: Vec<&str> = pairs.iter().map(|p| p.0).collect();
            let vals: Vec<&str> = pairs.iter().map(|p| p.1.as_str()).collect();
            println!("{}\n{}", keys.join(","), vals.join(","));
        }
    }
}

fn analytic_cmd(what: Analytic) -> anyhow::Result<u8> {
    match what {
        Analytic::Constants { k, format } => {
            let c = analytics::constants(k)?;
            print_pairs_as(
                format,
                &[
                    ("k", k.to_string()),
                    ("upper", fmt(c.upper)),
                    ("lower", fmt(c.lower)),
                    ("ap_condition", fmt(c.ap_condition)),
                    ("first_moment_root", fmt(c.first_moment_root)),
                ],
            );
        }
        Analytic::Psi { gamma, k } => print_pairs(&[("psi", fmt(analytics::psi(gamma, k)?))]),
        Analytic::F { alpha, gamma, k } => {
            print_pairs(&[("f", fmt(analytics::f_alpha(alpha, gamma, k)?))])
        }
        Analytic::G { alpha, gamma, k, r } => print_pairs(&[(
            "g",
            format!("{:e}", analytics::g_alpha(alpha, gamma, k, r)?),
        )]),
        Analytic::Laplace { k, r, gamma, grid } => {
            let rep = analytics::laplace_check(k, r, gamma, grid);
            print_pairs(&[
                ("passed", rep.passed.to_string()),
                ("grid_max_location", fmt(rep.grid_max_location)),
                ("g_at_half", format!("{:e}", rep.g_at_half)),
                (
                    "second_difference_at_half",
                    format!("{:e}", rep.second_difference_at_half),
                ),
                (
                    "failure_reason",
                    rep.failure_reason.unwrap_or_else(|| "none".into()),
                ),
            ]);
            return Ok(u8::from(!rep.passed));
        }
        Analytic::FindGamma { k, r } => match analytics::find_gamma(k, r) {
            Some(g) => print_pairs(&[("gamma", format!("{g:.12}"))]),
            None => {
                print_pairs(&[("gamma", "none".into())]);
                return Ok(1);
            }
        },
        Analytic::FirstMoment { k, r } => {
            let rate = analytics::first_moment_rate(k, r)?;
            print_pairs(&[
                ("rate_at_half", fmt(rate.rate_at_half)),
                ("max_rate", fmt(rate.max_rate)),
                ("argmax", fmt(rate.argmax)),
            ]);
        }
        Analytic::ExpectedX { n, k, r, gamma } => {
            let b = analytics::expected_weighted_x(n, k, r, gamma, PrefactorConvention::Balanced)?;
            let d = analytics::expected_weighted_x(n, k, r, gamma, PrefactorConvention::Doubled)?;
            print_pairs(&[("ln_balanced", fmt(b)), ("ln_doubled", fmt(d))]);
        }
        Analytic::Ratio { n, k, r, gamma } => {
            let ratio = analytics::second_moment_ratio(n, k, r, gamma)?;
            print_pairs(&[
                ("ratio", fmt(ratio)),
                ("prob_lower_bound", fmt(ratio.recip())),
            ]);
        }
        Analytic::Bicycle { c, n } => print_pairs(&[
            (
                "bicycle_expectation_bound",
                fmt(analytics::bicycle_expectation_bound(c, n)?),
            ),
            (
                "alt_cycle_free_lower_bound",
                format!("{:e}", analytics::alt_cycle_free_lower_bound(c)?),
            ),
        ]),
    }
    Ok(0)
}

fn default_hi(k: usize) -> f64 {
    if k == 2 {
        1.0
    } else {
        1.25 * 2f64.powi(k as i32 - 1) * std::f64::consts::LN_2
    }
}

fn threshold_cmd(a: ThresholdArgs) -> anyhow::Result<u8> {
    let cfg = a.exp.config();
    let opts = LocateOptions {
        target: a.target,
        tol: a.tol,
        lo: a.lo,
        hi: a.hi.unwrap_or_else(|| default_hi(cfg.k)),
        max_rounds: a.rounds,
    };
    let loc = experiments::locate_threshold(&cfg, &opts)?;
    let status = match loc.status {
        LocateStatus::Converged => "converged",
        LocateStatus::BudgetExhausted => "budget_exhausted",
        LocateStatus::InvalidBracket => "invalid_bracket",
    };
    if let Some(path) = &a.exp.out {
        emit(Some(path), &experiments::to_csv(&loc.records))?;
    }
    print_pairs_as(
        a.exp.format,
        &[
            ("estimate", fmt(loc.estimate)),
            ("lo", fmt(loc.lo)),
            ("hi", fmt(loc.hi)),
            ("status", status.into()),
        ],
    );
    Ok(0)
}

fn scan_cmd(a: ScanArgs) -> anyhow::Result<u8> {
    let mut cfg = a.exp.config();
    cfg.nested = a.nested;
    let grid: Vec<Param> = if let Some(ds) = &a.densities {
        ds.iter()
            .map(|d| Param::M((d * cfg.n as f64).round() as usize))
            .collect()
    } else if let Some(ms) = &a.m {
        ms.iter().map(|&m| Param::M(m)).collect()
    } else if let Some(ps) = &a.p {
        ps.iter().map(|&p| Param::P(p)).collect()
    } else if let Some(ss) = &a.s {
        ss.iter().map(|&s| Param::S(s)).collect()
    } else {
        bail!(Usage(
            "give a grid with --densities, --m, --p or --s".into()
        ));
    };
    let records = experiments::scan(&cfg, &grid)?;
    report_records(&a.exp, &records)?;
    Ok(0)
}

fn report_records(exp: &ExperimentArgs, records: &[ThresholdRecord]) -> anyhow::Result<()> {
    if let Some(path) = &exp.out {
        emit(Some(path), &experiments::to_csv(records))?;
    }
    match exp.format {
        Format::Csv if exp.out.is_none() => emit(None, &experiments::to_csv(records))?,
        Format::Csv => {}
        Format::Text => {
            for r in records {
                println!(
                    "{}={} density={} sat={}/{} p_hat={} ci=[{}, {}]",
                    r.param.model(),
                    r.param.label(),
                    experiments::fmt_g6(r.density),
                    r.sat,
                    r.trials,
                    experiments::fmt_g6(r.p_hat),
                    experiments::fmt_g6(r.ci_lo),
                    experiments::fmt_g6(r.ci_hi),
                );
            }
        }
    }
    Ok(())
}
