use proptest::prelude::*;

use gmu_core::ages::{self, age_members, age_members_by_subsets, bound_from_word_bound, bounds_of_catalog};
use gmu_core::canon::isomorphic;
use gmu_core::verify::{describe_small_graph, first_long_word_bound};
use gmu_core::{FiniteWord, Graph, WordStream};

fn counts_by_order(spec: &str, max_order: usize) -> Vec<usize> {
    let s: WordStream = spec.parse().unwrap();
    // Every induced subgraph on 7 vertices of a period-2 or period-3 word
    // graph already occurs on 30 consecutive vertices.
    let slow = age_members_by_subsets(&s, max_order, 29).unwrap();
    let fast = age_members(&s, max_order, 120).unwrap();
    assert!(slow.classes.keys().eq(fast.classes.keys()), "{spec}");
    let report = bounds_of_catalog(&fast, true).unwrap();
    (1..=max_order).map(|k| report.count_of_order(k)).collect()
}

#[test]
fn periodic_bound_counts_by_order() {
    assert_eq!(counts_by_order("periodic:01", 7), [0, 0, 0, 2, 1, 8, 0]);
    assert_eq!(counts_by_order("periodic:011", 7), [0, 0, 0, 1, 1, 24, 2]);
}

#[test]
fn subdivided_claw_bounds_the_011_age() {
    let s: WordStream = "periodic:011".parse().unwrap();
    let report = ages::age_bounds(&s, 7, 120).unwrap();
    let claw = Graph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]);
    let found = report
        .bounds
        .iter()
        .filter(|g| g.order() == 7)
        .any(|g| isomorphic(g, &claw).unwrap());
    assert!(found);
}

#[test]
fn path_age_bounds_include_c4() {
    let s: WordStream = "periodic:1".parse().unwrap();
    let report = ages::age_bounds(&s, 7, 30).unwrap();
    let names: Vec<String> = report.bounds.iter().map(describe_small_graph).collect();
    assert_eq!(names, ["K3", "K1,3", "C4", "C5", "C6", "C7"]);
    assert_eq!(report.complete_up_to, Some(7));
}

#[test]
fn one_letter_extension_of_a_word_bound_still_embeds() {
    let s = WordStream::Fibonacci;
    let w = first_long_word_bound(&s, 10, 24, 400).unwrap().unwrap();
    assert_eq!(w.to_string(), "1010010100101");
    let t = bound_from_word_bound(&s, &w, 400).unwrap();
    assert_eq!(t.extended.to_string(), "01010010100101");
    assert!(t.embeds_in_window);
    assert!(!t.verified);
}

proptest! {
    /// Swapping `-1` and `0` turns `G_{a b x}` into `G_{a b' x}`.
    #[test]
    fn second_letter_is_invisible_up_to_isomorphism(bits in prop::collection::vec(0u8..2, 2..14)) {
        let mut flipped = bits.clone();
        flipped[1] ^= 1;
        let g = Graph::from_word(&FiniteWord::new(bits).unwrap());
        let h = Graph::from_word(&FiniteWord::new(flipped).unwrap());
        prop_assert!(isomorphic(&g, &h).unwrap());
    }
}
