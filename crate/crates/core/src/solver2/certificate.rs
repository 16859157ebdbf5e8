//! Odd bicycles: the UNSAT witnesses of the k = 2 solver.
//!
//! An odd alternating cycle `c0 c1 … c(p-1)` (p odd) alternates edge colours
//! except at its anchor `c0`, whose two cycle edges share a colour α. Any
//! pair of disjoint covers must colour the anchor α. An alternating path
//! leaving the anchor with colour ¬α then forces every vertex it enters to
//! the colour of the entering edge. The certificate is unsatisfiable when
//! the path ends at the other cycle's anchor having entered it with the
//! colour opposite to that anchor's α.
//!
//! The argument uses each cycle on its own, so the cycles may share vertices.
//! When both anchors coincide the path is the single anchor vertex and the
//! two anchor colours must differ.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::{Colour, TwoColouredHypergraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddBicycleCertificate {
    /// Anchor first.
    pub cycle_a: Vec<u32>,
    /// Anchor first.
    pub cycle_b: Vec<u32>,
    /// From `cycle_a[0]` to `cycle_b[0]`.
    pub path: Vec<u32>,
}

struct EdgeSet(HashSet<(u32, u32, Colour)>);

impl EdgeSet {
    fn new(h: &TwoColouredHypergraph) -> Self {
        EdgeSet(
            h.all_edges()
                .filter(|e| e.vertices().len() == 2)
                .map(|e| (e.vertices()[0], e.vertices()[1], e.colour()))
                .collect(),
        )
    }

    fn has(&self, a: u32, b: u32, c: Colour) -> bool {
        self.0.contains(&(a.min(b), a.max(b), c))
    }
}

/// Anchor colours under which `cycle` is an odd alternating cycle.
fn anchor_colours(edges: &EdgeSet, cycle: &[u32]) -> Vec<Colour> {
    let p = cycle.len();
    if p < 3 || p.is_multiple_of(2) {
        return Vec::new();
    }
    let distinct: HashSet<_> = cycle.iter().collect();
    if distinct.len() != p {
        return Vec::new();
    }
    [Colour::Red, Colour::Blue]
        .into_iter()
        .filter(|&alpha| {
            (0..p).all(|i| {
                // edge i joins c_i and c_{i+1}; p is odd so the closing edge is even
                let want = if i % 2 == 0 { alpha } else { alpha.flip() };
                edges.has(cycle[i], cycle[(i + 1) % p], want)
            })
        })
        .collect()
}

fn path_fits(edges: &EdgeSet, path: &[u32], alpha_a: Colour, alpha_b: Colour) -> bool {
    if path.len() == 1 {
        return alpha_a != alpha_b;
    }
    let mut colour = alpha_a.flip();
    for w in path.windows(2) {
        if !edges.has(w[0], w[1], colour) {
            return false;
        }
        colour = colour.flip();
    }
    // `colour` has been flipped once past the last edge
    colour == alpha_b
}

pub fn check_certificate(h: &TwoColouredHypergraph, cert: &OddBicycleCertificate) -> bool {
    if h.k() != 2 {
        return false;
    }
    let n = h.n() as u32;
    let in_range = |xs: &[u32]| xs.iter().all(|&v| v >= 1 && v <= n);
    if !in_range(&cert.cycle_a) || !in_range(&cert.cycle_b) || !in_range(&cert.path) {
        return false;
    }
    let (Some(&a), Some(&b)) = (cert.cycle_a.first(), cert.cycle_b.first()) else {
        return false;
    };
    if cert.path.first() != Some(&a) || cert.path.last() != Some(&b) {
        return false;
    }
    if cert.path.len() == 1 && a != b {
        return false;
    }
    let edges = EdgeSet::new(h);
    let alphas_a = anchor_colours(&edges, &cert.cycle_a);
    let alphas_b = anchor_colours(&edges, &cert.cycle_b);
    alphas_a.iter().any(|&x| {
        alphas_b
            .iter()
            .any(|&y| path_fits(&edges, &cert.path, x, y))
    })
}

impl OddBicycleCertificate {
    /// Makes the path simple. The path alternates in colour, so a closed
    /// stretch of odd length is itself an odd alternating cycle whose anchor
    /// is entered with the other colour: it replaces `cycle_b` and the path
    /// stops there. Closed stretches of even length are cut out.
    pub(crate) fn tighten(mut self) -> Self {
        loop {
            let mut first = std::collections::HashMap::new();
            let repeat = self
                .path
                .iter()
                .enumerate()
                .find_map(|(j, &v)| first.insert(v, j).map(|i| (i, j)));
            let Some((i, j)) = repeat else {
                return self;
            };
            if (j - i) % 2 == 1 {
                self.cycle_b = self.path[i..j].to_vec();
                self.path.truncate(i + 1);
                return self;
            }
            self.path.drain(i + 1..=j);
        }
    }
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for OddBicycleCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cycle1: {}", join(&self.cycle_a))?;
        writeln!(f, "cycle2: {}", join(&self.cycle_b))?;
        write!(f, "path: {}", join(&self.path))
    }
}

impl FromStr for OddBicycleCertificate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut fields: [Option<Vec<u32>>; 3] = [None, None, None];
        for (idx, raw) in s.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: idx + 1, msg };
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| err("expected `<field>: <vertices>`".into()))?;
            let slot = match key.trim() {
                "cycle1" => 0,
                "cycle2" => 1,
                "path" => 2,
                other => return Err(err(format!("unknown field `{other}`"))),
            };
            let verts = rest
                .split_ascii_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<Vec<u32>, _>>()
                .map_err(|e| err(format!("bad vertex id: {e}")))?;
            fields[slot] = Some(verts);
        }
        let [Some(cycle_a), Some(cycle_b), Some(path)] = fields else {
            return Err(Error::Parse {
                line: s.lines().count().max(1),
                msg: "certificate needs cycle1, cycle2 and path".into(),
            });
        };
        Ok(OddBicycleCertificate {
            cycle_a,
            cycle_b,
            path,
        })
    }
}
