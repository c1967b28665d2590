use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use gmu_core::canon::{canonical_form, isomorphic};
use gmu_core::embed::{all_embeddings, embeds, DEFAULT_NODE_LIMIT};
use gmu_core::realizer::{build_realizer, interval_confinement_check, verify_realizer, ConfinementVerdict};
use gmu_core::structure::classify_modules_gw;
use gmu_core::words::{complement_word, factor_set, word_bounds};
use gmu_core::{FiniteWord, Graph, WordStream};

fn word(max_len: usize) -> impl Strategy<Value = FiniteWord> {
    prop::collection::vec(0u8..2, 1..=max_len).prop_map(|b| FiniteWord::new(b).unwrap())
}

fn graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            let edges: Vec<(usize, usize)> = pairs.zip(bits).filter(|(_, on)| *on).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges)
        })
    })
}

fn shuffled(g: &Graph, seed: u64) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(&mut StdRng::seed_from_u64(seed));
    let mut h = Graph::empty(g.order());
    for a in 0..g.order() {
        for b in a + 1..g.order() {
            if g.has_edge(a, b) {
                h.add_edge(perm[a], perm[b]);
            }
        }
    }
    h
}

proptest! {
    #[test]
    fn complement_word_gives_complement_graph(w in word(20)) {
        prop_assert_eq!(Graph::from_word(&complement_word(&w)), Graph::from_word(&w).complement());
    }

    #[test]
    fn modules_agree_with_complement(g in graph(10)) {
        prop_assert_eq!(g.nontrivial_modules(20).unwrap(), g.complement().nontrivial_modules(20).unwrap());
    }

    #[test]
    fn closure_primality_matches_subset_scan(g in graph(10)) {
        prop_assert_eq!(g.is_prime_by_closure(), g.is_prime(20).unwrap());
    }

    #[test]
    fn canonical_form_ignores_labelling(g in graph(12), seed in any::<u64>()) {
        let h = shuffled(&g, seed);
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        prop_assert!(isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn canonical_graph_is_isomorphic(g in graph(9)) {
        let key = canonical_form(&g).unwrap();
        prop_assert!(isomorphic(&g, &key.to_graph()).unwrap());
    }

    #[test]
    fn embedding_is_reflexive_and_transitive(g in graph(10), seed in any::<u64>()) {
        prop_assert!(embeds(&g, &g).unwrap().is_some());
        let mut rng = StdRng::seed_from_u64(seed);
        let mut idx: Vec<usize> = (0..g.order()).collect();
        idx.shuffle(&mut rng);
        let mid = g.induced_indices(&idx[..g.order().div_ceil(2) + g.order() / 4]);
        let small = mid.induced_indices(&(0..mid.order() / 2).collect::<Vec<_>>());
        prop_assert!(embeds(&mid, &g).unwrap().is_some());
        prop_assert!(embeds(&small, &mid).unwrap().is_some());
        prop_assert!(embeds(&small, &g).unwrap().is_some());
    }

    #[test]
    fn every_listed_embedding_is_valid(p in graph(4), h in graph(8)) {
        let all = all_embeddings(&p, &h, DEFAULT_NODE_LIMIT).unwrap();
        prop_assert!(all.iter().all(|e| e.is_valid(&p, &h)));
        prop_assert_eq!(all.is_empty(), embeds(&p, &h).unwrap().is_none());
    }

    #[test]
    fn text_and_json_round_trip(w in word(12)) {
        let g = Graph::from_word(&w);
        prop_assert_eq!(&g.to_text().parse::<Graph>().unwrap(), &g);
        prop_assert_eq!(&Graph::from_json(&g.to_json()).unwrap(), &g);
    }

    #[test]
    fn classification_matches_brute_force_beyond_the_sweep(w in word(17)) {
        let fast: Vec<Vec<i64>> = classify_modules_gw(&w).unwrap().into_iter().map(|m| m.witness).collect();
        prop_assert_eq!(fast, Graph::from_word(&w).nontrivial_modules(20).unwrap());
    }

    #[test]
    fn realizers_of_long_words(w in word(40)) {
        let r = build_realizer(&w).unwrap();
        prop_assert!(verify_realizer(&Graph::from_word(&w), &r));
        if w.len() >= 3 {
            prop_assert_eq!(interval_confinement_check(&w, &r).unwrap(), ConfinementVerdict::Pass);
        }
    }

    #[test]
    fn factor_sets_are_factor_closed(seed in word(6), max_len in 1usize..8) {
        let s = WordStream::periodic(seed).unwrap();
        let f = factor_set(&s, max_len, 60).unwrap();
        for u in &f {
            if !u.is_empty() {
                prop_assert!(f.contains(&u.slice(1..u.len())));
                prop_assert!(f.contains(&u.slice(0..u.len() - 1)));
            }
        }
    }

    #[test]
    fn word_bounds_are_minimal_non_factors(seed in word(5)) {
        let s = WordStream::periodic(seed).unwrap();
        let f = factor_set(&s, 8, 60).unwrap();
        for b in word_bounds(&s, 8, 60).unwrap() {
            prop_assert!(!f.contains(&b));
            prop_assert!(f.contains(&b.slice(1..b.len())));
            prop_assert!(f.contains(&b.slice(0..b.len() - 1)));
        }
    }
}
