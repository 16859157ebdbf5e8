//! Exact solvers for any k: exhaustive search, DPLL, and the exhaustive
//! counters used as expectation oracles.

mod dpll;

pub use dpll::{dpll, dpll_with_stats, DpllStats};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hypergraph::{Assignment, Colour, TwoColouredHypergraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionGen {
    Sat(Assignment),
    Unsat,
}

impl DecisionGen {
    pub fn is_sat(&self) -> bool {
        matches!(self, DecisionGen::Sat(_))
    }
}

pub const BRUTE_FORCE_MAX_N: usize = 30;
pub const COUNT_MAX_N: usize = 24;
pub const WEIGHTED_MAX_N: usize = 20;

fn check(h: &TwoColouredHypergraph, limit: usize) -> Result<()> {
    if h.n() > limit {
        return Err(Error::TooLarge { n: h.n(), limit });
    }
    let report = h.validate();
    if !report.is_ok() {
        return Err(Error::Invalid(report));
    }
    Ok(())
}

/// Edges as bit masks in which vertex `v` (1-based) owns bit `n - v`, so that
/// counting upwards through "Blue" masks walks assignments lexicographically
/// with Red < Blue and vertex 1 most significant.
struct MaskedEdges {
    red: Vec<u32>,
    blue: Vec<u32>,
}

impl MaskedEdges {
    fn new(h: &TwoColouredHypergraph) -> Self {
        let n = h.n() as u32;
        let mask = |colour| -> Vec<u32> {
            h.edges(colour)
                .iter()
                .map(|e| e.vertices().iter().fold(0u32, |m, &v| m | 1 << (n - v)))
                .collect()
        };
        MaskedEdges {
            red: mask(Colour::Red),
            blue: mask(Colour::Blue),
        }
    }

    #[inline]
    fn covers(&self, blue_set: u32, full: u32) -> bool {
        let red_set = !blue_set & full;
        self.red.iter().all(|&e| e & red_set != 0) && self.blue.iter().all(|&e| e & blue_set != 0)
    }
}

fn to_assignment(n: usize, blue_set: u32) -> Assignment {
    Assignment::new(
        (0..n)
            .map(|i| {
                if blue_set >> (n - 1 - i) & 1 == 1 {
                    Colour::Blue
                } else {
                    Colour::Red
                }
            })
            .collect(),
    )
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Tries all 2^n assignments; returns the lexicographically first cover.
pub fn brute_force(h: &TwoColouredHypergraph) -> Result<DecisionGen> {
    check(h, BRUTE_FORCE_MAX_N)?;
    let n = h.n();
    let edges = MaskedEdges::new(h);
    let full = full_mask(n);
    for blue_set in 0..=full {
        if edges.covers(blue_set, full) {
            return Ok(DecisionGen::Sat(to_assignment(n, blue_set)));
        }
    }
    Ok(DecisionGen::Unsat)
}

pub fn count_all_covers(h: &TwoColouredHypergraph) -> Result<u64> {
    check(h, COUNT_MAX_N)?;
    let edges = MaskedEdges::new(h);
    let full = full_mask(h.n());
    Ok((0..=full).filter(|&b| edges.covers(b, full)).count() as u64)
}

/// Number of balanced covers, tallied by the total edge weight exponent
/// Σ_e W(σ, e). W counts a replacement-mode vertex once per occurrence.
pub fn balanced_cover_exponents(h: &TwoColouredHypergraph) -> Result<BTreeMap<i64, u64>> {
    check(h, WEIGHTED_MAX_N)?;
    let n = h.n();
    if !n.is_multiple_of(2) {
        return Err(Error::Config(format!(
            "balanced partitions need even n, got {n}"
        )));
    }
    // Red σ(v) contributes (red occurrences − blue occurrences), Blue the negation.
    let mut lean = vec![0i64; n];
    for e in h.all_edges() {
        let sign = if e.colour() == Colour::Red { 1 } else { -1 };
        for &v in e.vertices() {
            lean[v as usize - 1] += sign;
        }
    }
    let edges = MaskedEdges::new(h);
    let full = full_mask(n);
    let mut tally = BTreeMap::new();
    for blue_set in 0..=full {
        if blue_set.count_ones() as usize != n / 2 || !edges.covers(blue_set, full) {
            continue;
        }
        let exponent: i64 = (0..n)
            .map(|i| {
                if blue_set >> (n - 1 - i) & 1 == 1 {
                    -lean[i]
                } else {
                    lean[i]
                }
            })
            .sum();
        *tally.entry(exponent).or_insert(0) += 1;
    }
    Ok(tally)
}

/// X = Σ over balanced covers σ of Π_e γ^{W(σ, e)}.
///
/// The exponent tally is exact integer arithmetic; the final sum of
/// `count · γ^S` terms uses Neumaier compensated summation.
#[allow(non_snake_case)]
pub fn weighted_balanced_X(h: &TwoColouredHypergraph, gamma: f64) -> Result<f64> {
    if gamma.is_nan() || gamma <= 0.0 {
        return Err(Error::Domain(format!(
            "gamma must be positive, got {gamma}"
        )));
    }
    let tally = balanced_cover_exponents(h)?;
    Ok(neumaier_sum(
        tally
            .iter()
            .map(|(&s, &count)| count as f64 * gamma.powi(s as i32)),
    ))
}

pub(crate) fn neumaier_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
