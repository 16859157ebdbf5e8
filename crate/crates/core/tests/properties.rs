mod common;

use proptest::prelude::*;

use dcl_core::solver2::{check_certificate, decide2, Decision2};
use dcl_core::solvergen::{dpll, DecisionGen};
use dcl_core::{
    read_instance, verify_assignment, write_instance, Assignment, Colour, Edge, Mode,
    TwoColouredHypergraph,
};

fn instance(k: usize, max_n: usize, max_m: usize) -> impl Strategy<Value = TwoColouredHypergraph> {
    (k.max(2)..=max_n).prop_flat_map(move |n| {
        let edge = proptest::sample::subsequence((1..=n as u32).collect::<Vec<_>>(), k);
        (
            Just(n),
            proptest::collection::vec(edge.clone(), 0..=max_m),
            proptest::collection::vec(edge, 0..=max_m),
        )
            .prop_map(move |(n, red, blue)| {
                TwoColouredHypergraph::new(n, k, Mode::Simple, red, blue)
            })
    })
}

fn sat2(h: &TwoColouredHypergraph) -> Option<Assignment> {
    match decide2(h).unwrap() {
        Decision2::Sat(a) => Some(a),
        Decision2::Unsat(cert) => {
            assert!(check_certificate(h, &cert));
            None
        }
    }
}

fn sat3(h: &TwoColouredHypergraph) -> Option<Assignment> {
    match dpll(h).unwrap() {
        DecisionGen::Sat(a) => Some(a),
        DecisionGen::Unsat => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn instance_text_round_trips(h in instance(3, 9, 8)) {
        let text = write_instance(&h);
        let back = read_instance(&text).unwrap();
        prop_assert_eq!(write_instance(&back), text);
        prop_assert_eq!(back.canonicalize(), h.canonicalize());
    }

    #[test]
    fn colour_swap_flips_the_answer(h in instance(2, 10, 12)) {
        let swapped = h.swap_colours();
        match (sat2(&h), sat2(&swapped)) {
            (Some(a), Some(b)) => {
                prop_assert!(verify_assignment(&swapped, &a.flip()).unwrap());
                prop_assert!(verify_assignment(&h, &b.flip()).unwrap());
            }
            (None, None) => {}
            _ => prop_assert!(false, "swap changed satisfiability"),
        }
    }

    #[test]
    fn relabelling_preserves_the_answer(h in instance(3, 9, 10), seed in any::<u64>()) {
        let mut s = dcl_core::stream::Stream::new(seed);
        let perm = common::permutation(&mut s, h.n());
        let g = h.relabel(&perm);
        match (sat3(&h), sat3(&g)) {
            (Some(a), Some(_)) => prop_assert!(verify_assignment(&g, &a.relabel(&perm)).unwrap()),
            (None, None) => {}
            _ => prop_assert!(false, "relabelling changed satisfiability"),
        }
    }

    #[test]
    fn adding_an_edge_never_helps(h in instance(2, 9, 10), extra in any::<(u32, u32, bool)>()) {
        let n = h.n() as u32;
        let (a, b) = (extra.0 % n + 1, extra.1 % n + 1);
        prop_assume!(a != b);
        let colour = if extra.2 { Colour::Red } else { Colour::Blue };
        let bigger = h.with_edge(Edge::new(vec![a, b], colour));
        if sat2(&bigger).is_some() {
            prop_assert!(sat2(&h).is_some());
        }
    }

    #[test]
    fn assignment_text_round_trips(bits in proptest::collection::vec(any::<bool>(), 0..40)) {
        let a = Assignment::new(bits.iter().map(|&b| if b { Colour::Blue } else { Colour::Red }).collect());
        prop_assert_eq!(a.to_string().parse::<Assignment>().unwrap(), a);
    }

    #[test]
    fn dpll_and_decide2_agree(h in instance(2, 14, 16)) {
        prop_assert_eq!(sat2(&h).is_some(), sat3(&h).is_some());
    }
}
