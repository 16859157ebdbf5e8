//! List colourings of K_{n,n} as disjoint covers, and disjoint covers as
//! same-sign CNF.
//!
//! The palette becomes the vertex set: left lists are red edges, right lists
//! are blue edges. A colour coloured Red may be used on the left side, a
//! colour coloured Blue on the right, and no colour is used on both sides.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{verify_assignment, Assignment, Colour, ListScheme, Mode};
use crate::TwoColouredHypergraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListColouring {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

pub fn lists_to_hypergraphs(l: &ListScheme) -> TwoColouredHypergraph {
    TwoColouredHypergraph::new(
        l.s(),
        l.k(),
        Mode::Simple,
        l.left().to_vec(),
        l.right().to_vec(),
    )
}

/// Picks, for each vertex, the smallest colour of its list on the right side
/// of the partition.
pub fn covers_to_colouring(l: &ListScheme, a: &Assignment) -> Result<ListColouring> {
    let h = lists_to_hypergraphs(l);
    if !verify_assignment(&h, a)? {
        return Err(Error::NotDisjointCovers);
    }
    let pick = |lists: &[Vec<u32>], side: Colour| -> Vec<u32> {
        lists
            .iter()
            .map(|list| {
                *list
                    .iter()
                    .find(|&&c| a.get(c) == side)
                    .expect("verified cover has an eligible colour")
            })
            .collect()
    };
    Ok(ListColouring {
        left: pick(l.left(), Colour::Red),
        right: pick(l.right(), Colour::Blue),
    })
}

pub fn verify_list_colouring(l: &ListScheme, f: &ListColouring) -> bool {
    if f.left.len() != l.n() || f.right.len() != l.n() {
        return false;
    }
    let members = |lists: &[Vec<u32>], chosen: &[u32]| {
        lists
            .iter()
            .zip(chosen)
            .all(|(list, c)| list.binary_search(c).is_ok())
    };
    if !members(l.left(), &f.left) || !members(l.right(), &f.right) {
        return false;
    }
    let mut used_left = vec![false; l.s() + 1];
    for &c in &f.left {
        used_left[c as usize] = true;
    }
    f.right.iter().all(|&c| !used_left[c as usize])
}

/// DIMACS CNF with one variable per vertex (true = Red): red edges become
/// positive clauses, blue edges negative clauses.
pub fn export_dimacs(h: &TwoColouredHypergraph) -> String {
    let h = h.canonicalize();
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", h.n(), h.num_edges());
    for e in h.all_edges() {
        let sign = if e.colour() == Colour::Red { "" } else { "-" };
        for v in e.vertices() {
            let _ = write!(out, "{sign}{v} ");
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scheme(k: usize, s: usize, left: Vec<Vec<u32>>, right: Vec<Vec<u32>>) -> ListScheme {
        ListScheme::new(k, s, left, right).unwrap()
    }

    #[test]
    fn lists_map_directly_to_edges() {
        let l = scheme(2, 4, vec![vec![1, 2]], vec![vec![3, 4]]);
        let h = lists_to_hypergraphs(&l);
        assert_eq!(h.n(), 4);
        assert_eq!(h.red_edges()[0].vertices(), &[1, 2]);
        assert_eq!(h.blue_edges()[0].vertices(), &[3, 4]);
        assert_eq!((h.red_edges().len(), h.blue_edges().len()), (1, 1));
    }

    #[test]
    fn single_colour_lists_conflict() {
        let l = scheme(1, 1, vec![vec![1]], vec![vec![1]]);
        let h = lists_to_hypergraphs(&l);
        for a in ["R", "B"] {
            assert!(!verify_assignment(&h, &a.parse().unwrap()).unwrap());
        }
    }

    #[test]
    fn covers_give_proper_colourings() {
        let l = scheme(2, 4, vec![vec![1, 2]], vec![vec![3, 4]]);
        let f = covers_to_colouring(&l, &"RRBB".parse().unwrap()).unwrap();
        assert_eq!(
            f,
            ListColouring {
                left: vec![1],
                right: vec![3]
            }
        );
        assert!(verify_list_colouring(&l, &f));

        let l = scheme(2, 2, vec![vec![1, 2]], vec![vec![1, 2]]);
        let f = covers_to_colouring(&l, &"RB".parse().unwrap()).unwrap();
        assert_eq!(
            f,
            ListColouring {
                left: vec![1],
                right: vec![2]
            }
        );
        assert!(verify_list_colouring(&l, &f));
    }

    #[test]
    fn non_covers_are_rejected() {
        let l = scheme(2, 4, vec![vec![1, 2]], vec![vec![3, 4]]);
        let err = covers_to_colouring(&l, &"BBRR".parse().unwrap()).unwrap_err();
        assert_eq!(err.to_string(), "assignment is not disjoint covers");
    }

    #[test]
    fn colouring_checks() {
        let l = scheme(1, 2, vec![vec![1]], vec![vec![1]]);
        assert!(!verify_list_colouring(
            &l,
            &ListColouring {
                left: vec![1],
                right: vec![1]
            }
        ));
        let l = scheme(2, 4, vec![vec![1, 2]], vec![vec![3, 4]]);
        assert!(!verify_list_colouring(
            &l,
            &ListColouring {
                left: vec![3],
                right: vec![4]
            }
        ));
    }

    #[test]
    fn dimacs_encoding() {
        let h = TwoColouredHypergraph::new(3, 2, Mode::Simple, vec![vec![1, 2]], vec![vec![2, 3]]);
        assert_eq!(export_dimacs(&h), "p cnf 3 2\n1 2 0\n-2 -3 0\n");
        assert_eq!(
            export_dimacs(&TwoColouredHypergraph::empty(5, 2, Mode::Simple)),
            "p cnf 5 0\n"
        );
    }
}
