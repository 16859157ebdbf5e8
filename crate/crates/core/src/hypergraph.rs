//! Instances: a red and a blue k-uniform hypergraph on the same vertex set.
//!
//! Vertex ids are 1-based throughout the public surface. An assignment is a
//! pair of *disjoint covers* when every red edge has a Red vertex and every
//! blue edge has a Blue vertex.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn flip(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Colour::Red => 'R',
            Colour::Blue => 'B',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Colour::Red => "red",
            Colour::Blue => "blue",
        }
    }
}

/// How edges are drawn: `Simple` edges are k-sets, `Replacement` edges are
/// k-multisets (k independent vertex draws).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Simple,
    Replacement,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Simple => "simple",
            Mode::Replacement => "replacement",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(Mode::Simple),
            "replacement" => Ok(Mode::Replacement),
            other => Err(Error::Config(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    vertices: Vec<u32>,
    colour: Colour,
}

impl Edge {
    pub fn new(mut vertices: Vec<u32>, colour: Colour) -> Self {
        vertices.sort_unstable();
        Edge { vertices, colour }
    }

    /// Sorted vertex ids, with multiplicity.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn colour(&self) -> Colour {
        self.colour
    }

    /// Distinct vertex ids. Cover semantics only look at this set.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(i, v)| *i == 0 || self.vertices[i - 1] != **v)
            .map(|(_, v)| *v)
    }

    pub fn contains(&self, v: u32) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    WrongArity { expected: usize, got: usize },
    OutOfRange { vertex: u32 },
    RepeatedVertex { vertex: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub colour: Colour,
    pub index: usize,
    pub rule: Rule,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} edge {}: ", self.colour.name(), self.index)?;
        match &self.rule {
            Rule::WrongArity { expected, got } => {
                write!(f, "has {got} vertices, expected {expected}")
            }
            Rule::OutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            Rule::RepeatedVertex { vertex } => {
                write!(f, "repeated vertex {vertex} in simple mode")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// H = H1 ∪ H2 on vertices 1..=n; H1 red, H2 blue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoColouredHypergraph {
    n: usize,
    k: usize,
    mode: Mode,
    red: Vec<Edge>,
    blue: Vec<Edge>,
}

impl TwoColouredHypergraph {
    /// Builds an instance without checking it; see [`validate`](Self::validate)
    /// and [`checked`](Self::checked).
    pub fn new(n: usize, k: usize, mode: Mode, red: Vec<Vec<u32>>, blue: Vec<Vec<u32>>) -> Self {
        TwoColouredHypergraph {
            n,
            k,
            mode,
            red: red.into_iter().map(|e| Edge::new(e, Colour::Red)).collect(),
            blue: blue
                .into_iter()
                .map(|e| Edge::new(e, Colour::Blue))
                .collect(),
        }
    }

    pub fn checked(
        n: usize,
        k: usize,
        mode: Mode,
        red: Vec<Vec<u32>>,
        blue: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let h = Self::new(n, k, mode, red, blue);
        let report = h.validate();
        if report.is_ok() {
            Ok(h)
        } else {
            Err(Error::Invalid(report))
        }
    }

    pub fn empty(n: usize, k: usize, mode: Mode) -> Self {
        Self::new(n, k, mode, Vec::new(), Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn red_edges(&self) -> &[Edge] {
        &self.red
    }

    pub fn blue_edges(&self) -> &[Edge] {
        &self.blue
    }

    pub fn edges(&self, colour: Colour) -> &[Edge] {
        match colour {
            Colour::Red => &self.red,
            Colour::Blue => &self.blue,
        }
    }

    /// Red edges followed by blue edges.
    pub fn all_edges(&self) -> impl Iterator<Item = &Edge> {
        self.red.iter().chain(self.blue.iter())
    }

    pub fn num_edges(&self) -> usize {
        self.red.len() + self.blue.len()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (colour, edges) in [(Colour::Red, &self.red), (Colour::Blue, &self.blue)] {
            for (index, e) in edges.iter().enumerate() {
                let mut push = |rule| {
                    violations.push(Violation {
                        colour,
                        index,
                        rule,
                    })
                };
                if e.vertices.len() != self.k {
                    push(Rule::WrongArity {
                        expected: self.k,
                        got: e.vertices.len(),
                    });
                }
                for &v in &e.vertices {
                    if v == 0 || v as usize > self.n {
                        push(Rule::OutOfRange { vertex: v });
                    }
                }
                if self.mode == Mode::Simple {
                    for w in e.vertices.windows(2) {
                        if w[0] == w[1] {
                            push(Rule::RepeatedVertex { vertex: w[0] });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Sorts both edge lists lexicographically by vertex list.
    pub fn canonicalize(&self) -> Self {
        let mut h = self.clone();
        h.red.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        h.blue.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        h
    }

    pub fn swap_colours(&self) -> Self {
        let recolour = |edges: &[Edge], c: Colour| -> Vec<Edge> {
            edges
                .iter()
                .map(|e| Edge {
                    vertices: e.vertices.clone(),
                    colour: c,
                })
                .collect()
        };
        TwoColouredHypergraph {
            n: self.n,
            k: self.k,
            mode: self.mode,
            red: recolour(&self.blue, Colour::Red),
            blue: recolour(&self.red, Colour::Blue),
        }
    }

    /// Renames vertex `v` to `perm[v - 1]`; `perm` is a permutation of 1..=n.
    pub fn relabel(&self, perm: &[u32]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length");
        let map = |edges: &[Edge]| -> Vec<Edge> {
            edges
                .iter()
                .map(|e| {
                    Edge::new(
                        e.vertices.iter().map(|&v| perm[v as usize - 1]).collect(),
                        e.colour,
                    )
                })
                .collect()
        };
        TwoColouredHypergraph {
            n: self.n,
            k: self.k,
            mode: self.mode,
            red: map(&self.red),
            blue: map(&self.blue),
        }
    }

    /// Returns a copy with `edge` appended to the list of its colour.
    pub fn with_edge(&self, edge: Edge) -> Self {
        let mut h = self.clone();
        match edge.colour {
            Colour::Red => h.red.push(edge),
            Colour::Blue => h.blue.push(edge),
        }
        h
    }

    /// Returns a copy with the `index`-th edge of `colour` removed.
    pub fn without_edge(&self, colour: Colour, index: usize) -> Self {
        let mut h = self.clone();
        match colour {
            Colour::Red => h.red.remove(index),
            Colour::Blue => h.blue.remove(index),
        };
        h
    }

    /// Sub-instance made of the first `red` red edges and `blue` blue edges.
    pub fn prefix(&self, red: usize, blue: usize) -> Self {
        TwoColouredHypergraph {
            n: self.n,
            k: self.k,
            mode: self.mode,
            red: self.red[..red].to_vec(),
            blue: self.blue[..blue].to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    colours: Vec<Colour>,
}

impl Assignment {
    pub fn new(colours: Vec<Colour>) -> Self {
        Assignment { colours }
    }

    pub fn uniform(n: usize, c: Colour) -> Self {
        Assignment {
            colours: vec![c; n],
        }
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    /// Colour of the 1-based vertex `v`.
    pub fn get(&self, v: u32) -> Colour {
        self.colours[v as usize - 1]
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn flip(&self) -> Self {
        Assignment {
            colours: self.colours.iter().map(|c| c.flip()).collect(),
        }
    }

    /// Companion of [`TwoColouredHypergraph::relabel`].
    pub fn relabel(&self, perm: &[u32]) -> Self {
        let mut colours = vec![Colour::Red; self.colours.len()];
        for (i, &c) in self.colours.iter().enumerate() {
            colours[perm[i] as usize - 1] = c;
        }
        Assignment { colours }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.colours {
            write!(f, "{}", c.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Assignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                'R' | 'r' => Ok(Colour::Red),
                'B' | 'b' => Ok(Colour::Blue),
                _ => Err(Error::Parse {
                    line: 1,
                    msg: format!("bad colour `{ch}` at position {}", i + 1),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Assignment::new)
    }
}

/// True iff `a` is a pair of disjoint covers of `h`.
pub fn verify_assignment(h: &TwoColouredHypergraph, a: &Assignment) -> Result<bool> {
    if a.len() != h.n() {
        return Err(Error::LengthMismatch {
            expected: h.n(),
            got: a.len(),
        });
    }
    Ok(h.all_edges()
        .all(|e| e.vertices().iter().any(|&v| a.get(v) == e.colour())))
}

/// K_{n,n} list-colouring instance: every vertex on each side carries a
/// k-subset of the palette 1..=s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListScheme {
    n: usize,
    k: usize,
    s: usize,
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
}

impl ListScheme {
    pub fn new(k: usize, s: usize, left: Vec<Vec<u32>>, right: Vec<Vec<u32>>) -> Result<Self> {
        if left.len() != right.len() {
            return Err(Error::Config(format!(
                "sides differ in size: {} left, {} right",
                left.len(),
                right.len()
            )));
        }
        let normalize = |lists: Vec<Vec<u32>>| -> Result<Vec<Vec<u32>>> {
            lists
                .into_iter()
                .map(|mut l| {
                    l.sort_unstable();
                    let distinct = l.windows(2).all(|w| w[0] != w[1]);
                    if l.len() != k || !distinct || l.iter().any(|&c| c == 0 || c as usize > s) {
                        Err(Error::Config(format!(
                            "list {l:?} is not a {k}-subset of 1..={s}"
                        )))
                    } else {
                        Ok(l)
                    }
                })
                .collect()
        };
        Ok(ListScheme {
            n: left.len(),
            k,
            s,
            left: normalize(left)?,
            right: normalize(right)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn left(&self) -> &[Vec<u32>] {
        &self.left
    }

    pub fn right(&self) -> &[Vec<u32>] {
        &self.right
    }
}
