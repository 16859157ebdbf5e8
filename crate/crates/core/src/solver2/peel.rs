use std::collections::VecDeque;

use crate::error::Result;
use crate::hypergraph::{Assignment, Colour, TwoColouredHypergraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeelOutcome {
    Sat(Assignment),
    /// Sorted 1-based ids; every member sees both colours inside the core.
    Stuck(Vec<u32>),
}

/// Repeatedly removes a vertex whose surviving edges all have one colour,
/// colouring it with that colour (Red when it has none left).
pub fn greedy_peel(h: &TwoColouredHypergraph) -> Result<PeelOutcome> {
    super::require_graph(h)?;
    let n = h.n();
    let edges: Vec<(usize, usize, Colour)> = h
        .all_edges()
        .map(|e| {
            (
                e.vertices()[0] as usize - 1,
                e.vertices()[1] as usize - 1,
                e.colour(),
            )
        })
        .collect();
    let mut incident = vec![Vec::new(); n];
    let mut live = [vec![0usize; n], vec![0usize; n]];
    for (i, &(a, b, c)) in edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
        live[c as usize][a] += 1;
        live[c as usize][b] += 1;
    }

    let mut colour = vec![Colour::Red; n];
    let mut removed = vec![false; n];
    let mut edge_alive = vec![true; edges.len()];
    let mut queued = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    let peelable = |live: &[Vec<usize>; 2], v: usize| live[0][v] == 0 || live[1][v] == 0;
    for v in 0..n {
        if peelable(&live, v) {
            queued[v] = true;
            queue.push_back(v);
        }
    }

    while let Some(v) = queue.pop_front() {
        removed[v] = true;
        colour[v] = if live[Colour::Red as usize][v] > 0 {
            Colour::Red
        } else if live[Colour::Blue as usize][v] > 0 {
            Colour::Blue
        } else {
            Colour::Red
        };
        for &i in &incident[v] {
            if !edge_alive[i] {
                continue;
            }
            edge_alive[i] = false;
            let (a, b, c) = edges[i];
            live[c as usize][a] -= 1;
            live[c as usize][b] -= 1;
            let other = if a == v { b } else { a };
            if !removed[other] && !queued[other] && peelable(&live, other) {
                queued[other] = true;
                queue.push_back(other);
            }
        }
    }

    if removed.iter().all(|&r| r) {
        let a = Assignment::new(colour);
        debug_assert!(crate::verify_assignment(h, &a).unwrap());
        Ok(PeelOutcome::Sat(a))
    } else {
        Ok(PeelOutcome::Stuck(
            (0..n)
                .filter(|&v| !removed[v])
                .map(|v| v as u32 + 1)
                .collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver2::tests::graph;
    use crate::verify_assignment;

    #[test]
    fn red_only_graph_peels_to_red() {
        let h = graph(5, &[[1, 2], [2, 3]], &[]);
        match greedy_peel(&h).unwrap() {
            PeelOutcome::Sat(a) => {
                assert!(verify_assignment(&h, &a).unwrap());
                for v in 1..=3 {
                    assert_eq!(a.get(v), Colour::Red);
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn odd_triangle_peels_from_its_anchor() {
        let h = graph(3, &[[1, 2], [3, 1]], &[[2, 3]]);
        match greedy_peel(&h).unwrap() {
            PeelOutcome::Sat(a) => {
                assert!(verify_assignment(&h, &a).unwrap());
                assert_eq!(a.get(1), Colour::Red);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn even_alternating_square_is_stuck() {
        let h = graph(4, &[[1, 2], [3, 4]], &[[2, 3], [4, 1]]);
        assert_eq!(
            greedy_peel(&h).unwrap(),
            PeelOutcome::Stuck(vec![1, 2, 3, 4])
        );
    }

    #[test]
    fn core_excludes_pendant_vertices() {
        let h = graph(6, &[[1, 2], [3, 4], [4, 5]], &[[2, 3], [4, 1], [5, 6]]);
        assert_eq!(
            greedy_peel(&h).unwrap(),
            PeelOutcome::Stuck(vec![1, 2, 3, 4])
        );
    }
}
