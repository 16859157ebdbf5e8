//! DPLL over the same-sign CNF view: a red edge is a clause "some vertex is
//! Red", a blue edge "some vertex is Blue".
//!
//! Counters are updated eagerly on assignment and undone in trail order.
//! Unit propagation fires when every vertex but one of an unsatisfied edge
//! has the wrong colour; a vertex whose unsatisfied edges all have one colour
//! takes that colour. Branching picks the unassigned vertex in the most
//! unsatisfied edges (lowest id on ties), Red first. No learning.

use super::DecisionGen;
use crate::error::{Error, Result};
use crate::hypergraph::{Assignment, Colour, TwoColouredHypergraph};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DpllStats {
    pub decisions: u64,
    pub propagations: u64,
    pub pure_assignments: u64,
    pub conflicts: u64,
}

const UNASSIGNED: u8 = 2;

struct Clause {
    colour: u8,
    start: u32,
    len: u32,
}

struct Decision {
    var: u32,
    colour: u8,
    trail_len: usize,
    flipped: bool,
}

struct Solver {
    clauses: Vec<Clause>,
    lits: Vec<u32>,
    occ: Vec<Vec<u32>>,
    sat_count: Vec<u32>,
    false_count: Vec<u32>,
    /// active[2 * v + c]: unsatisfied clauses of colour c containing v.
    active: Vec<u32>,
    value: Vec<u8>,
    trail: Vec<u32>,
    units: Vec<u32>,
    unsatisfied: usize,
    stats: DpllStats,
}

impl Solver {
    fn new(h: &TwoColouredHypergraph) -> Self {
        let n = h.n();
        let mut clauses = Vec::with_capacity(h.num_edges());
        let mut lits = Vec::new();
        let mut occ = vec![Vec::new(); n];
        let mut active = vec![0u32; 2 * n];
        for e in h.all_edges() {
            let id = clauses.len() as u32;
            let start = lits.len() as u32;
            let colour = e.colour() as u8;
            for v in e.support() {
                let v = v - 1;
                lits.push(v);
                occ[v as usize].push(id);
                active[2 * v as usize + colour as usize] += 1;
            }
            clauses.push(Clause {
                colour,
                start,
                len: lits.len() as u32 - start,
            });
        }
        let units = clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len == 1)
            .map(|(i, _)| i as u32)
            .collect();
        Solver {
            unsatisfied: clauses.len(),
            sat_count: vec![0; clauses.len()],
            false_count: vec![0; clauses.len()],
            clauses,
            lits,
            occ,
            active,
            value: vec![UNASSIGNED; n],
            trail: Vec::with_capacity(n),
            units,
            stats: DpllStats::default(),
        }
    }

    fn lits_of(&self, c: u32) -> &[u32] {
        let cl = &self.clauses[c as usize];
        &self.lits[cl.start as usize..(cl.start + cl.len) as usize]
    }

    /// Returns false if some clause became falsified.
    fn assign(&mut self, v: u32, colour: u8) -> bool {
        self.value[v as usize] = colour;
        self.trail.push(v);
        let mut ok = true;
        for i in 0..self.occ[v as usize].len() {
            let c = self.occ[v as usize][i];
            let ci = c as usize;
            let cl_colour = self.clauses[ci].colour;
            if cl_colour == colour {
                self.sat_count[ci] += 1;
                if self.sat_count[ci] == 1 {
                    self.unsatisfied -= 1;
                    let cl = &self.clauses[ci];
                    for &u in &self.lits[cl.start as usize..(cl.start + cl.len) as usize] {
                        if u != v && self.value[u as usize] == UNASSIGNED {
                            self.active[2 * u as usize + cl_colour as usize] -= 1;
                        }
                    }
                }
            } else {
                self.false_count[ci] += 1;
                if self.sat_count[ci] == 0 {
                    let len = self.clauses[ci].len;
                    if self.false_count[ci] == len {
                        ok = false;
                    } else if self.false_count[ci] + 1 == len {
                        self.units.push(c);
                    }
                }
            }
        }
        ok
    }

    fn unassign_to(&mut self, trail_len: usize) {
        while self.trail.len() > trail_len {
            let v = self.trail.pop().unwrap();
            let colour = self.value[v as usize];
            for i in 0..self.occ[v as usize].len() {
                let ci = self.occ[v as usize][i] as usize;
                let cl_colour = self.clauses[ci].colour;
                if cl_colour == colour {
                    if self.sat_count[ci] == 1 {
                        self.unsatisfied += 1;
                        let cl = &self.clauses[ci];
                        for &u in &self.lits[cl.start as usize..(cl.start + cl.len) as usize] {
                            if u != v && self.value[u as usize] == UNASSIGNED {
                                self.active[2 * u as usize + cl_colour as usize] += 1;
                            }
                        }
                    }
                    self.sat_count[ci] -= 1;
                } else {
                    self.false_count[ci] -= 1;
                }
            }
            self.value[v as usize] = UNASSIGNED;
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(c) = self.units.pop() {
            if self.sat_count[c as usize] > 0 {
                continue;
            }
            let colour = self.clauses[c as usize].colour;
            let free = self
                .lits_of(c)
                .iter()
                .copied()
                .find(|&u| self.value[u as usize] == UNASSIGNED);
            match free {
                Some(u) => {
                    self.stats.propagations += 1;
                    if !self.assign(u, colour) {
                        return false;
                    }
                }
                None => return false,
            }
        }
        true
    }

    fn assign_pure(&mut self) -> bool {
        let mut any = false;
        for v in 0..self.value.len() {
            if self.value[v] != UNASSIGNED {
                continue;
            }
            let (red, blue) = (self.active[2 * v], self.active[2 * v + 1]);
            let colour = match (red > 0, blue > 0) {
                (true, false) => Colour::Red as u8,
                (false, true) => Colour::Blue as u8,
                _ => continue,
            };
            self.stats.pure_assignments += 1;
            // every clause of the other colour containing v is satisfied
            let ok = self.assign(v as u32, colour);
            debug_assert!(ok);
            any = true;
        }
        any
    }

    fn pick_branch(&self) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        for v in 0..self.value.len() {
            if self.value[v] != UNASSIGNED {
                continue;
            }
            let degree = self.active[2 * v] + self.active[2 * v + 1];
            if degree > 0 && best.is_none_or(|(_, d)| degree > d) {
                best = Some((v as u32, degree));
            }
        }
        best.map(|(v, _)| v)
    }

    fn solve(&mut self) -> bool {
        let mut decisions: Vec<Decision> = Vec::new();
        loop {
            if !self.propagate() {
                self.stats.conflicts += 1;
                self.units.clear();
                if !self.backtrack(&mut decisions) {
                    return false;
                }
                continue;
            }
            if self.unsatisfied == 0 {
                return true;
            }
            if self.assign_pure() {
                continue;
            }
            // an unsatisfied clause always keeps an unassigned member
            let v = self
                .pick_branch()
                .expect("unsatisfied clause without a free vertex");
            self.stats.decisions += 1;
            decisions.push(Decision {
                var: v,
                colour: Colour::Red as u8,
                trail_len: self.trail.len(),
                flipped: false,
            });
            if !self.assign(v, Colour::Red as u8) {
                self.stats.conflicts += 1;
                self.units.clear();
                if !self.backtrack(&mut decisions) {
                    return false;
                }
            }
        }
    }

    /// Unwinds to the most recent unflipped decision and flips it, repeating
    /// while the flip itself falsifies a clause. Returns false when the
    /// decision stack runs out.
    fn backtrack(&mut self, decisions: &mut Vec<Decision>) -> bool {
        loop {
            let Some(d) = decisions.pop() else {
                return false;
            };
            self.unassign_to(d.trail_len);
            if d.flipped {
                continue;
            }
            let colour = 1 - d.colour;
            decisions.push(Decision {
                colour,
                flipped: true,
                ..d
            });
            if self.assign(d.var, colour) {
                return true;
            }
            self.units.clear();
            self.stats.conflicts += 1;
        }
    }
}

pub fn dpll(h: &TwoColouredHypergraph) -> Result<DecisionGen> {
    dpll_with_stats(h).map(|(d, _)| d)
}

pub fn dpll_with_stats(h: &TwoColouredHypergraph) -> Result<(DecisionGen, DpllStats)> {
    let report = h.validate();
    if !report.is_ok() {
        return Err(Error::Invalid(report));
    }
    let mut s = Solver::new(h);
    if !s.solve() {
        return Ok((DecisionGen::Unsat, s.stats));
    }
    let colours = s
        .value
        .iter()
        .map(|&c| {
            if c == Colour::Blue as u8 {
                Colour::Blue
            } else {
                Colour::Red
            }
        })
        .collect();
    let a = Assignment::new(colours);
    if !crate::verify_assignment(h, &a)? {
        panic!("dpll produced an assignment that is not a cover");
    }
    Ok((DecisionGen::Sat(a), s.stats))
}
