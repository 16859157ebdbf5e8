#![allow(dead_code)]

use dcl_core::stream::Stream;
use dcl_core::{Assignment, Colour, Mode, TwoColouredHypergraph};

/// Random instance with the given number of edges per colour, drawn
/// directly here rather than through the crate's sampler.
pub fn random_instance(
    s: &mut Stream,
    n: usize,
    k: usize,
    red: usize,
    blue: usize,
    mode: Mode,
) -> TwoColouredHypergraph {
    let mut draw = |count: usize| -> Vec<Vec<u32>> {
        (0..count)
            .map(|_| match mode {
                Mode::Simple => s.subset(n as u32, k as u32),
                Mode::Replacement => (0..k).map(|_| s.below(n as u64) as u32 + 1).collect(),
            })
            .collect()
    };
    let r = draw(red);
    let b = draw(blue);
    TwoColouredHypergraph::new(n, k, mode, r, b)
}

/// Random instance with n in `n_range` and density m/n uniform in `[0, max_density]`.
pub fn random_sized(
    s: &mut Stream,
    k: usize,
    n_lo: usize,
    n_hi: usize,
    max_density: f64,
    mode: Mode,
) -> TwoColouredHypergraph {
    let n = n_lo + s.below((n_hi - n_lo + 1) as u64) as usize;
    let mut count = || (s.unit() * max_density * n as f64).round() as usize;
    let (red, blue) = (count(), count());
    random_instance(s, n, k, red, blue, mode)
}

fn covers(h: &TwoColouredHypergraph, colours: &[Colour]) -> bool {
    let ok = |c: Colour| {
        h.edges(c)
            .iter()
            .all(|e| e.vertices().iter().any(|&v| colours[v as usize - 1] == c))
    };
    ok(Colour::Red) && ok(Colour::Blue)
}

fn assignments(n: usize) -> impl Iterator<Item = Vec<Colour>> {
    (0u64..1 << n).map(move |bits| {
        (0..n)
            .map(|i| {
                if bits >> i & 1 == 1 {
                    Colour::Blue
                } else {
                    Colour::Red
                }
            })
            .collect()
    })
}

/// Exhaustive satisfiability, independent of the crate's solvers.
pub fn naive_sat(h: &TwoColouredHypergraph) -> bool {
    assignments(h.n()).any(|a| covers(h, &a))
}

pub fn naive_count(h: &TwoColouredHypergraph) -> u64 {
    assignments(h.n()).filter(|a| covers(h, a)).count() as u64
}

pub fn naive_verify(h: &TwoColouredHypergraph, a: &Assignment) -> bool {
    a.len() == h.n() && covers(h, a.colours())
}

/// Uniform permutation of 1..=n (Fisher–Yates).
pub fn permutation(s: &mut Stream, n: usize) -> Vec<u32> {
    let mut p: Vec<u32> = (1..=n as u32).collect();
    for i in (1..n).rev() {
        let j = s.below(i as u64 + 1) as usize;
        p.swap(i, j);
    }
    p
}
