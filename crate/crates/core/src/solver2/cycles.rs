use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::hypergraph::{Colour, TwoColouredHypergraph};

/// Directed bipartite graph on `a_1..a_n, b_1..b_n`: a red edge {i, j}
/// gives arcs a_i → b_j and a_j → b_i, a blue edge gives b_i → a_j and
/// b_j → a_i. Directed cycles are closed even alternating walks.
#[derive(Debug, Clone)]
pub struct AuxiliaryDigraph {
    n: usize,
    /// Node `i` is a_{i+1}, node `n + i` is b_{i+1}.
    out: Vec<Vec<usize>>,
}

impl AuxiliaryDigraph {
    pub fn build(h: &TwoColouredHypergraph) -> Result<Self> {
        super::require_graph(h)?;
        let n = h.n();
        let mut out = vec![Vec::new(); 2 * n];
        for e in h.all_edges() {
            let (i, j) = (e.vertices()[0] as usize - 1, e.vertices()[1] as usize - 1);
            match e.colour() {
                Colour::Red => {
                    out[i].push(n + j);
                    out[j].push(n + i);
                }
                Colour::Blue => {
                    out[n + i].push(j);
                    out[n + j].push(i);
                }
            }
        }
        Ok(AuxiliaryDigraph { n, out })
    }

    pub fn node_count(&self) -> usize {
        2 * self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn has_cycle(&self) -> bool {
        let mut indeg = vec![0usize; self.out.len()];
        for arcs in &self.out {
            for &t in arcs {
                indeg[t] += 1;
            }
        }
        let mut queue: VecDeque<usize> = (0..self.out.len()).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop_front() {
            removed += 1;
            for &t in &self.out[v] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        removed < self.out.len()
    }
}

pub fn has_even_alternating_cycle(h: &TwoColouredHypergraph) -> Result<bool> {
    Ok(AuxiliaryDigraph::build(h)?.has_cycle())
}

const MAX_COUNT_N: usize = 64;

/// Number of alternating cycles on exactly `l` distinct vertices. A cycle is
/// a cyclic vertex sequence up to rotation and reflection together with a
/// colour for each of its edges; when a pair carries both a red and a blue
/// edge, each usable colour gives a different cycle. Even cycles alternate
/// everywhere, odd cycles everywhere but at one anchor vertex.
pub fn count_alternating_cycles(h: &TwoColouredHypergraph, l: usize) -> Result<u64> {
    super::require_graph(h)?;
    let n = h.n();
    if l < 3 || l > n {
        return Err(Error::Config(format!("cycle length {l} outside 3..={n}")));
    }
    if n > MAX_COUNT_N {
        return Err(Error::TooLarge {
            n,
            limit: MAX_COUNT_N,
        });
    }
    // bit 0: red edge present, bit 1: blue edge present
    let mut pair = vec![0u8; n * n];
    for e in h.all_edges() {
        let (i, j) = (e.vertices()[0] as usize - 1, e.vertices()[1] as usize - 1);
        let bit = 1 << (e.colour() as u8);
        pair[i * n + j] |= bit;
        pair[j * n + i] |= bit;
    }
    let allowed_same = l % 2;
    let mut counter = CycleCounter {
        n,
        l,
        pair,
        allowed_same,
        seq: Vec::with_capacity(l),
        colours: Vec::with_capacity(l),
        used: vec![false; n],
        total: 0,
    };
    for start in 0..n {
        counter.seq.push(start);
        counter.used[start] = true;
        counter.extend(0);
        counter.used[start] = false;
        counter.seq.pop();
    }
    Ok(counter.total)
}

struct CycleCounter {
    n: usize,
    l: usize,
    pair: Vec<u8>,
    allowed_same: usize,
    seq: Vec<usize>,
    colours: Vec<u8>,
    used: Vec<bool>,
    total: u64,
}

impl CycleCounter {
    fn extend(&mut self, same: usize) {
        let start = self.seq[0];
        let last = *self.seq.last().unwrap();
        if self.seq.len() == self.l {
            // closing edge last -> start; reflection: second vertex < last vertex
            if self.seq[1] > last {
                return;
            }
            let mask = self.pair[last * self.n + start];
            for c in 0..2u8 {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let at_last = usize::from(*self.colours.last().unwrap() == c);
                let at_start = usize::from(self.colours[0] == c);
                if same + at_last + at_start == self.allowed_same {
                    self.total += 1;
                }
            }
            return;
        }
        for next in start + 1..self.n {
            if self.used[next] {
                continue;
            }
            let mask = self.pair[last * self.n + next];
            for c in 0..2u8 {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let extra = match self.colours.last() {
                    Some(&prev) => usize::from(prev == c),
                    None => 0,
                };
                if same + extra > self.allowed_same {
                    continue;
                }
                self.used[next] = true;
                self.seq.push(next);
                self.colours.push(c);
                self.extend(same + extra);
                self.colours.pop();
                self.seq.pop();
                self.used[next] = false;
            }
        }
    }
}
