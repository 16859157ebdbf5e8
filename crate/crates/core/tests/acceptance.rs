//! One line per acceptance criterion, `PASS` or `FAIL`, with the measured
//! values. Exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{naive_verify, permutation, random_sized};
use dcl_core::analytics::{
    constants, f_alpha, find_gamma, laplace_check, psi, second_moment_ratio, PrefactorConvention,
    LAPLACE_GRID,
};
use dcl_core::experiments::{
    estimate_probability, fkg_experiment, moment_validation, ExperimentConfig, Param, Solver,
};
use dcl_core::solver2::{check_certificate, decide2, Decision2};
use dcl_core::solvergen::{brute_force, dpll, DecisionGen};
use dcl_core::stream::Stream;
use dcl_core::{verify_assignment, Colour, Edge, Mode, TwoColouredHypergraph};

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn oracle_k2() -> Outcome {
    let mut s = Stream::new(2024);
    let (mut agree, mut sat, mut bad_witness) = (0, 0, 0);
    let total = 5000;
    for _ in 0..total {
        let h = random_sized(&mut s, 2, 2, 12, 3.0, Mode::Simple);
        let brute = brute_force(&h).unwrap().is_sat();
        match decide2(&h).unwrap() {
            Decision2::Sat(a) => {
                sat += 1;
                agree += usize::from(brute);
                bad_witness += usize::from(!naive_verify(&h, &a));
            }
            Decision2::Unsat(cert) => {
                agree += usize::from(!brute);
                bad_witness += usize::from(!check_certificate(&h, &cert));
            }
        }
    }
    outcome(
        agree == total && bad_witness == 0,
        format!("{agree}/{total} agree, {sat} sat, {bad_witness} bad witnesses"),
    )
}

fn oracle_general() -> Outcome {
    let mut s = Stream::new(2025);
    let total = 2000;
    let mut parts = Vec::new();
    let mut pass = true;
    for k in 2..=4usize {
        let max_density = 2.0 * constants(k as u32).unwrap().upper;
        let (mut agree, mut sat) = (0, 0);
        for _ in 0..total {
            let h = random_sized(&mut s, k, k, 16, max_density, Mode::Simple);
            let brute = brute_force(&h).unwrap().is_sat();
            match dpll(&h).unwrap() {
                DecisionGen::Sat(a) => {
                    sat += 1;
                    agree += usize::from(brute && naive_verify(&h, &a));
                }
                DecisionGen::Unsat => agree += usize::from(!brute),
            }
        }
        pass &= agree == total;
        parts.push(format!("k={k}: {agree}/{total} agree ({sat} sat)"));
    }
    outcome(pass, parts.join(", "))
}

fn k2_threshold() -> Outcome {
    let cfg = ExperimentConfig::new(2000, 2, Solver::Decide2)
        .trials(400)
        .seed(1);
    let below = estimate_probability(&cfg, Param::M(700)).unwrap();
    let above = estimate_probability(&cfg, Param::M(1300)).unwrap();
    outcome(
        below.p_hat >= 0.95 && above.p_hat <= 0.05,
        format!(
            "p(0.35n)={} (>=0.95), p(0.65n)={} (<=0.05)",
            below.p_hat, above.p_hat
        ),
    )
}

fn list_colouring() -> Outcome {
    let cfg = ExperimentConfig::new(1000, 2, Solver::Decide2)
        .trials(200)
        .seed(1);
    let wide = estimate_probability(&cfg, Param::S(3000)).unwrap();
    let narrow = estimate_probability(&cfg, Param::S(1500)).unwrap();
    outcome(
        wide.p_hat >= 0.90 && narrow.p_hat <= 0.10,
        format!(
            "p(s=3n)={} (>=0.90), p(s=1.5n)={} (<=0.10)",
            wide.p_hat, narrow.p_hat
        ),
    )
}

fn k3_bracket() -> Outcome {
    let cfg = ExperimentConfig::new(200, 3, Solver::Dpll)
        .trials(200)
        .seed(1);
    let low = estimate_probability(&cfg, Param::M(200)).unwrap();
    let high = estimate_probability(&cfg, Param::M(600)).unwrap();
    outcome(
        low.p_hat >= 0.90 && high.p_hat <= 0.20,
        format!(
            "p(r=1)={} (>=0.90), p(r=3)={} (<=0.20)",
            low.p_hat, high.p_hat
        ),
    )
}

fn moments() -> Outcome {
    let rep = moment_validation(8, 3, 1.0, 0.9, 100_000, 1, Mode::Replacement).unwrap();
    let supported = rep
        .supported
        .map(PrefactorConvention::name)
        .unwrap_or("none");
    outcome(
        rep.supported.is_some(),
        format!(
            "mean={:.5} se={:.5}; C(n,n/2) form {:.5} (z={:.2}), 2C(n,n/2) form {:.5} (z={:.2}); supported: {supported}",
            rep.mean, rep.std_error, rep.balanced, rep.z_balanced, rep.doubled, rep.z_doubled
        ),
    )
}

fn identities() -> Outcome {
    let mut worst_quarter = 0f64;
    let mut worst_unit = 0f64;
    for k in 2..=8u32 {
        for i in 1..=10 {
            let gamma = i as f64 / 10.0;
            let p = psi(gamma, k).unwrap();
            let f = f_alpha(0.25, gamma, k).unwrap();
            worst_quarter = worst_quarter.max((f - p * p).abs() / (p * p));
        }
        for i in 0..=100 {
            let alpha = i as f64 / 200.0;
            let want = 1.0 - 2f64.powi(1 - k as i32) + alpha.powi(k as i32);
            worst_unit = worst_unit.max((f_alpha(alpha, 1.0, k).unwrap() - want).abs());
        }
    }
    let vandermonde = [10u64, 100, 1000, 10_000].iter().all(|&n| {
        [0.5, 1.0]
            .iter()
            .all(|&g| second_moment_ratio(n, 4, 0.0, g).unwrap() == 1.0)
    });
    let root = constants(3).unwrap().first_moment_root;
    outcome(
        worst_quarter < 1e-12 && worst_unit < 1e-12 && vandermonde && (root - 2.59545).abs() < 1e-4,
        format!(
            "max rel |f(1/4)-psi^2|={worst_quarter:.1e}, max |f(a,1)-(1-2^(1-k)+a^k)|={worst_unit:.1e}, \
             ratio(r=0)==1: {vandermonde}, first_moment_root(3)={root:.6}"
        ),
    )
}

fn laplace() -> Outcome {
    let g7 = find_gamma(7, 38.0);
    let pass7 = g7.is_some_and(|g| laplace_check(7, 38.0, g, LAPLACE_GRID).passed);
    let fail4 = !laplace_check(4, 10.0, 1.0, LAPLACE_GRID).passed;
    let (ratio_ok, ratio_text) = match find_gamma(4, 1.0) {
        Some(g) => {
            let r800 = second_moment_ratio(800, 4, 1.0, g).unwrap();
            let r1600 = second_moment_ratio(1600, 4, 1.0, g).unwrap();
            let q = r1600 / r800;
            (
                (0.8..=1.2).contains(&q),
                format!("gamma(4,1)={g:.6}, ratio(1600)/ratio(800)={q:.6}"),
            )
        }
        None => (false, "find_gamma(4,1) found nothing".into()),
    };
    outcome(
        pass7 && fail4 && ratio_ok,
        format!("find_gamma(7,38)={g7:?} passes: {pass7}; laplace_check(4,10,1) fails: {fail4}; {ratio_text}"),
    )
}

fn fkg() -> Outcome {
    let rep = fkg_experiment(500, 0.5, 2000, 1).unwrap();
    outcome(
        rep.violations == 0 && rep.p_greedy >= rep.bound,
        format!(
            "violations={}, p(greedy)={}, p(decide2)={}, bound={:.4e}",
            rep.violations, rep.p_greedy, rep.p_decide2, rep.bound
        ),
    )
}

fn sat_assignment(h: &TwoColouredHypergraph) -> Option<dcl_core::Assignment> {
    if h.k() == 2 {
        match decide2(h).unwrap() {
            Decision2::Sat(a) => Some(a),
            Decision2::Unsat(cert) => {
                assert!(check_certificate(h, &cert));
                None
            }
        }
    } else {
        match dpll(h).unwrap() {
            DecisionGen::Sat(a) => Some(a),
            DecisionGen::Unsat => None,
        }
    }
}

fn properties() -> Outcome {
    let cases = 1000;
    let mut s = Stream::new(77);
    let (mut mono, mut swap, mut relabel) = (0, 0, 0);
    for i in 0..cases {
        let k = 2 + i % 2;
        let h = random_sized(
            &mut s,
            k,
            k.max(3),
            14,
            if k == 2 { 1.0 } else { 4.0 },
            Mode::Simple,
        );
        let base = sat_assignment(&h);

        let edge = Edge::new(
            s.subset(h.n() as u32, k as u32),
            if s.below(2) == 0 {
                Colour::Red
            } else {
                Colour::Blue
            },
        );
        let bigger = sat_assignment(&h.with_edge(edge));
        mono += usize::from(bigger.is_none() || base.is_some());

        let swapped = h.swap_colours();
        swap += usize::from(match (&base, sat_assignment(&swapped)) {
            (Some(a), Some(b)) => {
                verify_assignment(&swapped, &a.flip()).unwrap()
                    && verify_assignment(&h, &b.flip()).unwrap()
            }
            (None, None) => true,
            _ => false,
        });

        let perm = permutation(&mut s, h.n());
        let renamed = h.relabel(&perm);
        relabel += usize::from(match (&base, sat_assignment(&renamed)) {
            (Some(a), Some(_)) => verify_assignment(&renamed, &a.relabel(&perm)).unwrap(),
            (None, None) => true,
            _ => false,
        });
    }
    outcome(
        mono == cases && swap == cases && relabel == cases,
        format!("edge addition {mono}/{cases}, colour swap {swap}/{cases}, relabelling {relabel}/{cases}"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence k=2", Duration::from_secs(60), oracle_k2),
        (
            "oracle equivalence general",
            Duration::from_secs(120),
            oracle_general,
        ),
        ("k=2 threshold", Duration::from_secs(300), k2_threshold),
        (
            "list-colouring front end",
            Duration::from_secs(300),
            list_colouring,
        ),
        ("k=3 bracket", Duration::from_secs(600), k3_bracket),
        ("moment validation", Duration::from_secs(300), moments),
        ("analytic identities", Duration::MAX, identities),
        ("Laplace machinery", Duration::MAX, laplace),
        ("FKG chain", Duration::MAX, fkg),
        (
            "monotonicity and duality properties",
            Duration::MAX,
            properties,
        ),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let pass = o.pass && took <= budget;
        failed += usize::from(!pass);
        let verdict = if pass { "PASS" } else { "FAIL" };
        let time = if took > budget {
            format!(
                "{:.1}s, over the {}s budget",
                took.as_secs_f64(),
                budget.as_secs()
            )
        } else {
            format!("{:.1}s", took.as_secs_f64())
        };
        println!("{verdict} {name}: {} [{time}]", o.detail);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
