//! Seeded generators for the three random models: H_k(n, m) pairs,
//! H_k(n, p) pairs and random list schemes.
//!
//! Red, blue, left and right draws each use their own sub-stream (see
//! [`crate::stream`]), so the colours are independent and the output depends
//! only on the configuration and the seed.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::hypergraph::{ListScheme, Mode, TwoColouredHypergraph};
use crate::stream::{Stream, LABEL_BLUE, LABEL_LEFT, LABEL_RED, LABEL_RIGHT};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeModel {
    /// Exactly `m` edges per colour.
    Count(usize),
    /// Every possible edge independently with probability `p`, per colour.
    Prob(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    pub n: usize,
    pub k: usize,
    pub model: EdgeModel,
    pub mode: Mode,
    pub seed: u64,
}

impl SampleConfig {
    pub fn with_m(n: usize, k: usize, m: usize, mode: Mode, seed: u64) -> Self {
        SampleConfig {
            n,
            k,
            model: EdgeModel::Count(m),
            mode,
            seed,
        }
    }

    pub fn with_p(n: usize, k: usize, p: f64, seed: u64) -> Self {
        SampleConfig {
            n,
            k,
            model: EdgeModel::Prob(p),
            mode: Mode::Simple,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if self.n < 1 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if self.mode == Mode::Simple && self.n < self.k {
            return Err(Error::Config(format!(
                "simple mode needs n >= k (n = {}, k = {})",
                self.n, self.k
            )));
        }
        if self.n > u32::MAX as usize {
            return Err(Error::Config("n does not fit vertex ids".into()));
        }
        match self.model {
            EdgeModel::Count(m) => {
                if self.mode == Mode::Simple && (m as f64) > binomial(self.n, self.k) {
                    return Err(Error::Config(format!(
                        "m = {m} exceeds C({}, {}) distinct edges",
                        self.n, self.k
                    )));
                }
            }
            EdgeModel::Prob(p) => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Config(format!("p = {p} is not a probability")));
                }
                if self.mode != Mode::Simple {
                    return Err(Error::Config("the p-model draws simple edges only".into()));
                }
            }
        }
        Ok(())
    }

    /// Edges per colour divided by n (expected count for the p-model).
    pub fn density(&self) -> f64 {
        match self.model {
            EdgeModel::Count(m) => m as f64 / self.n as f64,
            EdgeModel::Prob(p) => p * binomial(self.n, self.k) / self.n as f64,
        }
    }
}

/// C(n, k) as a float; saturates to infinity.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k)
        .fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
        .round()
}

pub fn sample(cfg: &SampleConfig) -> Result<TwoColouredHypergraph> {
    match cfg.model {
        EdgeModel::Count(_) => sample_pair_m(cfg),
        EdgeModel::Prob(_) => sample_pair_p(cfg),
    }
}

pub fn sample_pair_m(cfg: &SampleConfig) -> Result<TwoColouredHypergraph> {
    cfg.validate()?;
    let EdgeModel::Count(m) = cfg.model else {
        return Err(Error::Config("sample_pair_m needs an edge count".into()));
    };
    let draw = |label| {
        let mut s = Stream::keyed(cfg.seed, label, 0);
        match cfg.mode {
            Mode::Simple => distinct_edges(&mut s, cfg.n as u32, cfg.k as u32, m),
            Mode::Replacement => (0..m)
                .map(|_| {
                    (0..cfg.k)
                        .map(|_| s.below(cfg.n as u64) as u32 + 1)
                        .collect()
                })
                .collect(),
        }
    };
    Ok(TwoColouredHypergraph::new(
        cfg.n,
        cfg.k,
        cfg.mode,
        draw(LABEL_RED),
        draw(LABEL_BLUE),
    ))
}

// The first m distinct k-sets of an i.i.d. uniform sequence: a uniform
// m-subset, and a prefix of the draw for every larger m.
fn distinct_edges(s: &mut Stream, n: u32, k: u32, m: usize) -> Vec<Vec<u32>> {
    let mut seen = HashSet::with_capacity(m);
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let e = s.subset(n, k);
        if seen.insert(e.clone()) {
            out.push(e);
        }
    }
    out
}

pub fn sample_pair_p(cfg: &SampleConfig) -> Result<TwoColouredHypergraph> {
    cfg.validate()?;
    let EdgeModel::Prob(p) = cfg.model else {
        return Err(Error::Config("sample_pair_p needs a probability".into()));
    };
    let draw = |label| {
        let mut s = Stream::keyed(cfg.seed, label, 0);
        bernoulli_edges(&mut s, cfg.n as u32, cfg.k, p)
    };
    Ok(TwoColouredHypergraph::new(
        cfg.n,
        cfg.k,
        Mode::Simple,
        draw(LABEL_RED),
        draw(LABEL_BLUE),
    ))
}

// Walks the k-subsets of 1..=n in lexicographic order, jumping over runs of
// rejected edges with geometric skip lengths.
fn bernoulli_edges(s: &mut Stream, n: u32, k: usize, p: f64) -> Vec<Vec<u32>> {
    if p <= 0.0 {
        return Vec::new();
    }
    let log_q = (-p).ln_1p();
    let skip = |s: &mut Stream| -> u64 {
        if p >= 1.0 {
            return 0;
        }
        // 1 - unit() lies in (0, 1]
        let g = ((1.0 - s.unit()).ln() / log_q).floor();
        if g >= u64::MAX as f64 {
            u64::MAX
        } else {
            g as u64
        }
    };
    let mut comb: Vec<u32> = (1..=k as u32).collect();
    let mut out = Vec::new();
    let mut gap = skip(s);
    loop {
        if gap == 0 {
            out.push(comb.clone());
            gap = skip(s);
        } else {
            gap -= 1;
        }
        if !next_combination(&mut comb, n) {
            break;
        }
    }
    out
}

fn next_combination(comb: &mut [u32], n: u32) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - (k - 1 - i) as u32 {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn sample_lists(n: usize, k: usize, s: usize, seed: u64) -> Result<ListScheme> {
    if k < 1 || s < k {
        return Err(Error::Config(format!(
            "need s >= k >= 1 (k = {k}, s = {s})"
        )));
    }
    if s > u32::MAX as usize {
        return Err(Error::Config("palette does not fit colour ids".into()));
    }
    let draw = |label| {
        let mut st = Stream::keyed(seed, label, 0);
        (0..n)
            .map(|_| st.subset(s as u32, k as u32))
            .collect::<Vec<_>>()
    };
    ListScheme::new(k, s, draw(LABEL_LEFT), draw(LABEL_RIGHT))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturated_simple_draw_takes_every_pair() {
        let h = sample_pair_m(&SampleConfig::with_m(4, 2, 6, Mode::Simple, 3)).unwrap();
        let mut red: Vec<_> = h
            .red_edges()
            .iter()
            .map(|e| e.vertices().to_vec())
            .collect();
        red.sort();
        let all: Vec<Vec<u32>> = vec![
            vec![1, 2],
            vec![1, 3],
            vec![1, 4],
            vec![2, 3],
            vec![2, 4],
            vec![3, 4],
        ];
        assert_eq!(red, all);
    }

    #[test]
    fn m_model_is_deterministic() {
        let cfg = SampleConfig::with_m(10, 3, 5, Mode::Simple, 99);
        assert_eq!(sample_pair_m(&cfg).unwrap(), sample_pair_m(&cfg).unwrap());
        let other = SampleConfig { seed: 100, ..cfg };
        assert_ne!(sample_pair_m(&cfg).unwrap(), sample_pair_m(&other).unwrap());
    }

    #[test]
    fn simple_draw_has_distinct_edges() {
        for seed in 0..50 {
            let h = sample_pair_m(&SampleConfig::with_m(10, 2, 5, Mode::Simple, seed)).unwrap();
            for c in [crate::Colour::Red, crate::Colour::Blue] {
                let set: HashSet<_> = h.edges(c).iter().map(|e| e.vertices().to_vec()).collect();
                assert_eq!(set.len(), 5);
            }
            assert!(h.validate().is_ok());
        }
    }

    #[test]
    fn too_many_edges_is_rejected() {
        assert!(sample_pair_m(&SampleConfig::with_m(4, 2, 7, Mode::Simple, 0)).is_err());
        // replacement mode has no cap
        assert!(sample_pair_m(&SampleConfig::with_m(4, 2, 7, Mode::Replacement, 0)).is_ok());
    }

    #[test]
    fn larger_m_extends_smaller_m() {
        let small = sample_pair_m(&SampleConfig::with_m(30, 3, 10, Mode::Simple, 5)).unwrap();
        let large = sample_pair_m(&SampleConfig::with_m(30, 3, 25, Mode::Simple, 5)).unwrap();
        assert_eq!(large.prefix(10, 10), small);
    }

    #[test]
    fn p_extremes() {
        let h = sample_pair_p(&SampleConfig::with_p(7, 3, 0.0, 1)).unwrap();
        assert_eq!(h.num_edges(), 0);
        let h = sample_pair_p(&SampleConfig::with_p(7, 3, 1.0, 1)).unwrap();
        assert_eq!(h.red_edges().len(), 35);
        assert_eq!(h.blue_edges().len(), 35);
    }

    #[test]
    fn p_out_of_range_is_rejected() {
        assert!(sample_pair_p(&SampleConfig::with_p(7, 3, 1.5, 1)).is_err());
    }

    #[test]
    fn full_palette_forces_the_lists() {
        let l = sample_lists(5, 3, 3, 11).unwrap();
        assert!(l
            .left()
            .iter()
            .chain(l.right())
            .all(|x| x == &vec![1, 2, 3]));
        assert!(sample_lists(5, 4, 3, 11).is_err());
    }

    #[test]
    fn lists_are_deterministic() {
        assert_eq!(
            sample_lists(20, 2, 9, 4).unwrap(),
            sample_lists(20, 2, 9, 4).unwrap()
        );
    }

    #[test]
    fn combinations_walk_in_order() {
        let mut c = vec![1, 2];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all.last().unwrap(), &vec![3, 4]);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(100, 2), 4950.0);
        assert_eq!(binomial(3, 5), 0.0);
    }
}
