//! Exact decision procedure for coloured graphs (k = 2).
//!
//! Vertices are inserted one at a time while a pair of disjoint covers of the
//! inserted part is maintained. Colouring the new vertex `v` with `target`
//! may force flips: a neighbour across an edge of the colour `v` gave up must
//! take that colour, which forces its own neighbours, and so on. The flipped
//! set is exactly the set reachable from `v` by paths whose edge colours and
//! current vertex colours alternate. If the flips close up consistently the
//! new colouring covers everything; otherwise the BFS tree together with the
//! clashing edge contains an odd alternating cycle joined to `v` by an
//! alternating path, which forces `v` to the opposite colour. When both
//! targets fail, the two structures combine into an odd bicycle.

mod certificate;
mod cycles;
mod peel;

pub use certificate::{check_certificate, OddBicycleCertificate};
pub use cycles::{count_alternating_cycles, has_even_alternating_cycle, AuxiliaryDigraph};
pub use peel::{greedy_peel, PeelOutcome};

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::hypergraph::{Assignment, Colour, Mode, TwoColouredHypergraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision2 {
    Sat(Assignment),
    Unsat(OddBicycleCertificate),
}

impl Decision2 {
    pub fn is_sat(&self) -> bool {
        matches!(self, Decision2::Sat(_))
    }
}

/// 0-based adjacency of a coloured graph; parallel edges are kept.
pub(crate) struct ColouredGraph {
    pub adj: Vec<Vec<(u32, Colour)>>,
}

impl ColouredGraph {
    pub fn build(h: &TwoColouredHypergraph) -> Result<Self> {
        require_graph(h)?;
        let mut adj = vec![Vec::new(); h.n()];
        for e in h.all_edges() {
            let (a, b) = (e.vertices()[0] - 1, e.vertices()[1] - 1);
            adj[a as usize].push((b, e.colour()));
            adj[b as usize].push((a, e.colour()));
        }
        Ok(ColouredGraph { adj })
    }
}

pub(crate) fn require_graph(h: &TwoColouredHypergraph) -> Result<()> {
    if h.k() != 2 {
        return Err(Error::Unsupported(format!(
            "the k = 2 solver got a {}-uniform instance",
            h.k()
        )));
    }
    if h.mode() != Mode::Simple {
        return Err(Error::Unsupported(
            "the k = 2 solver needs simple mode (no self-loops)".into(),
        ));
    }
    let report = h.validate();
    if !report.is_ok() {
        return Err(Error::Invalid(report));
    }
    Ok(())
}

/// An odd alternating cycle hanging off `stem[0]`, forcing `stem[0]`.
#[derive(Debug)]
struct Lollipop {
    /// Root to anchor, both included.
    stem: Vec<u32>,
    /// Anchor first.
    cycle: Vec<u32>,
}

struct Inserter {
    graph: ColouredGraph,
    sigma: Vec<Colour>,
    inserted: Vec<bool>,
    parent: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    queue: VecDeque<u32>,
    flipped: Vec<u32>,
}

const NO_PARENT: u32 = u32::MAX;

impl Inserter {
    fn new(graph: ColouredGraph) -> Self {
        let n = graph.adj.len();
        Inserter {
            graph,
            sigma: vec![Colour::Red; n],
            inserted: vec![false; n],
            parent: vec![NO_PARENT; n],
            stamp: vec![0; n],
            epoch: 0,
            queue: VecDeque::new(),
            flipped: Vec::new(),
        }
    }

    fn in_flip_set(&self, x: u32) -> bool {
        self.stamp[x as usize] == self.epoch
    }

    /// Tries to colour the freshly inserted `v` with `target`. On success the
    /// colouring is updated; on failure `sigma` is untouched (except `v`).
    fn try_colour(&mut self, v: u32, target: Colour) -> std::result::Result<(), Lollipop> {
        self.epoch += 1;
        self.sigma[v as usize] = target.flip();
        self.stamp[v as usize] = self.epoch;
        self.parent[v as usize] = NO_PARENT;
        self.flipped.clear();
        self.flipped.push(v);
        self.queue.clear();
        self.queue.push_back(v);

        while let Some(x) = self.queue.pop_front() {
            let given_up = self.sigma[x as usize];
            for i in 0..self.graph.adj[x as usize].len() {
                let (y, c) = self.graph.adj[x as usize][i];
                if c != given_up || !self.inserted[y as usize] {
                    continue;
                }
                if self.in_flip_set(y) {
                    if self.sigma[y as usize] == c {
                        return Err(self.lollipop(x, y));
                    }
                } else if self.sigma[y as usize] != c {
                    self.stamp[y as usize] = self.epoch;
                    self.parent[y as usize] = x;
                    self.flipped.push(y);
                    self.queue.push_back(y);
                }
            }
        }
        for &x in &self.flipped {
            self.sigma[x as usize] = self.sigma[x as usize].flip();
        }
        Ok(())
    }

    fn root_path(&self, mut x: u32) -> Vec<u32> {
        let mut path = vec![x];
        while self.parent[x as usize] != NO_PARENT {
            x = self.parent[x as usize];
            path.push(x);
        }
        path.reverse();
        path
    }

    // `x` and `y` are both in the flip set and were coloured with the colour
    // of the edge between them, so tree paths to them have equal parity.
    fn lollipop(&self, x: u32, y: u32) -> Lollipop {
        let px = self.root_path(x);
        let py = self.root_path(y);
        let common = px.iter().zip(&py).take_while(|(a, b)| a == b).count();
        let stem = px[..common].to_vec();
        let mut cycle = px[common - 1..].to_vec();
        cycle.extend(py[common..].iter().rev());
        Lollipop { stem, cycle }
    }
}

pub fn decide2(h: &TwoColouredHypergraph) -> Result<Decision2> {
    let graph = ColouredGraph::build(h)?;
    let n = h.n();
    let mut ins = Inserter::new(graph);

    for v in 0..n as u32 {
        ins.inserted[v as usize] = true;
        let forced_blue = match ins.try_colour(v, Colour::Red) {
            Ok(()) => continue,
            Err(l) => l,
        };
        let forced_red = match ins.try_colour(v, Colour::Blue) {
            Ok(()) => continue,
            Err(l) => l,
        };
        let mut path: Vec<u32> = forced_blue.stem.iter().rev().copied().collect();
        path.extend(&forced_red.stem[1..]);
        let one_based = |xs: &[u32]| xs.iter().map(|x| x + 1).collect::<Vec<_>>();
        let cert = OddBicycleCertificate {
            cycle_a: one_based(&forced_blue.cycle),
            cycle_b: one_based(&forced_red.cycle),
            path: one_based(&path),
        }
        .tighten();
        debug_assert!(check_certificate(h, &cert));
        return Ok(Decision2::Unsat(cert));
    }

    let a = Assignment::new(ins.sigma);
    debug_assert!(crate::verify_assignment(h, &a).unwrap());
    Ok(Decision2::Sat(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify_assignment;

    pub(crate) fn graph(n: usize, red: &[[u32; 2]], blue: &[[u32; 2]]) -> TwoColouredHypergraph {
        TwoColouredHypergraph::new(
            n,
            2,
            Mode::Simple,
            red.iter().map(|e| e.to_vec()).collect(),
            blue.iter().map(|e| e.to_vec()).collect(),
        )
    }

    pub(crate) fn bicycle6() -> TwoColouredHypergraph {
        graph(
            6,
            &[[1, 2], [3, 1], [4, 5], [6, 4]],
            &[[2, 3], [5, 6], [1, 4]],
        )
    }

    #[test]
    fn triangle_is_sat() {
        let h = graph(3, &[[1, 2], [3, 1]], &[[2, 3]]);
        match decide2(&h).unwrap() {
            Decision2::Sat(a) => {
                assert!(verify_assignment(&h, &a).unwrap());
                assert_eq!(a.get(1), Colour::Red);
            }
            other => panic!("expected SAT, got {other:?}"),
        }
    }

    #[test]
    fn minimal_bicycle_is_unsat_with_a_valid_certificate() {
        let h = bicycle6();
        match decide2(&h).unwrap() {
            Decision2::Unsat(cert) => {
                assert!(check_certificate(&h, &cert), "{cert}");
                let distinct: std::collections::HashSet<_> = cert.path.iter().collect();
                assert_eq!(distinct.len(), cert.path.len(), "{cert}");
            }
            other => panic!("expected UNSAT, got {other:?}"),
        }
    }

    #[test]
    fn bowtie_is_unsat() {
        // red-anchored and blue-anchored triangles sharing their anchor
        let h = graph(5, &[[1, 2], [3, 1], [4, 5]], &[[2, 3], [1, 4], [5, 1]]);
        match decide2(&h).unwrap() {
            Decision2::Unsat(cert) => assert!(check_certificate(&h, &cert), "{cert}"),
            other => panic!("expected UNSAT, got {other:?}"),
        }
    }

    #[test]
    fn empty_graph_is_sat() {
        let h = graph(4, &[], &[]);
        assert!(decide2(&h).unwrap().is_sat());
        let h = graph(0, &[], &[]);
        assert!(decide2(&h).unwrap().is_sat());
    }

    #[test]
    fn parallel_red_and_blue_edge() {
        let h = graph(2, &[[1, 2]], &[[1, 2]]);
        match decide2(&h).unwrap() {
            Decision2::Sat(a) => assert_ne!(a.get(1), a.get(2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_hypergraphs_and_replacement_mode() {
        let h = TwoColouredHypergraph::new(3, 3, Mode::Simple, vec![vec![1, 2, 3]], vec![]);
        assert!(matches!(decide2(&h), Err(Error::Unsupported(_))));
        let h = TwoColouredHypergraph::new(3, 2, Mode::Replacement, vec![vec![1, 1]], vec![]);
        assert!(matches!(decide2(&h), Err(Error::Unsupported(_))));
    }
}
