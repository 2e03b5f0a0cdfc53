use onion_debruijn::{
    build_layer_graph, check_increasing_order, check_zero_cascade, hierholzer_circuit,
    infinite_onion_stream, is_de_bruijn, is_onion_prefix, layered_onion_stream, prefer_max_string,
    reverse_string, windows, word_rank, word_unrank, DeBruijnString, EdgePolicy, Params, Symbol,
};
use proptest::prelude::*;

fn small_params() -> impl Strategy<Value = (u64, usize)> {
    (1u64..=6, 1usize..=4)
}

fn policy() -> impl Strategy<Value = EdgePolicy> {
    prop_oneof![
        Just(EdgePolicy::MaxSymbolFirst),
        Just(EdgePolicy::MinSymbolFirst),
        any::<u64>().prop_map(EdgePolicy::SeededRandom),
    ]
}

proptest! {
    #[test]
    fn rank_round_trips((k, n) in small_params(), seed in any::<u64>()) {
        let params = Params::new(n, k).unwrap();
        let rank = (seed % params.word_count() as u64) as usize;
        let word = word_unrank(rank, &params).unwrap();
        prop_assert_eq!(word.len(), n);
        prop_assert!(word.iter().all(|&s| s < k));
        prop_assert_eq!(word_rank(&word, &params).unwrap(), rank);
    }

    #[test]
    fn window_count_matches_length(s in proptest::collection::vec(0u64..5, 1..40), n in 1usize..6) {
        match windows(&s, n) {
            Ok(iter) => prop_assert_eq!(iter.count(), s.len() - n + 1),
            Err(_) => prop_assert!(s.len() < n),
        }
    }

    #[test]
    fn reversal_is_an_involution_and_reverses_windows(
        s in proptest::collection::vec(0u64..4, 2..30),
        n in 1usize..4,
    ) {
        let r = reverse_string(&s);
        prop_assert_eq!(reverse_string(&r), s.clone());
        prop_assume!(s.len() >= n);
        let mut forward: Vec<Vec<Symbol>> = windows(&s, n).unwrap()
            .map(reverse_string)
            .collect();
        let mut backward: Vec<Vec<Symbol>> = windows(&r, n).unwrap().map(|w| w.to_vec()).collect();
        forward.sort();
        backward.sort();
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn generated_strings_pass_the_oracle((k, n) in small_params()) {
        let s = prefer_max_string(k, n).unwrap();
        prop_assert!(is_de_bruijn(s.symbols(), k, n).passed);
        prop_assert!(is_de_bruijn(s.reversed().symbols(), k, n).passed);
        prop_assert!(check_zero_cascade(&s).passed);
        prop_assert!(DeBruijnString::from_symbols(s.params(), s.symbols().to_vec()).is_ok());
    }

    #[test]
    fn smaller_alphabet_string_is_a_suffix((k, n) in (2u64..=6, 1usize..=4)) {
        let larger = prefer_max_string(k, n).unwrap();
        let smaller = prefer_max_string(k - 1, n).unwrap();
        prop_assert_eq!(
            &larger.symbols()[larger.len() - smaller.len()..],
            smaller.symbols()
        );
    }

    #[test]
    fn greedy_stream_prefixes_are_onion((k, n) in small_params()) {
        let mut stream = infinite_onion_stream(n).unwrap();
        let len = Params::new(n, k).unwrap().string_len();
        let prefix = stream.prefix(len).unwrap().to_vec();
        prop_assert!(is_onion_prefix(&prefix, n, k).unwrap().passed);
        let mut forward = prefix;
        forward.reverse();
        let direct = prefer_max_string(k, n).unwrap();
        prop_assert_eq!(forward.as_slice(), direct.symbols());
    }

    #[test]
    fn layered_streams_are_onion_under_any_policy(
        (k, n) in small_params(),
        policy in policy(),
    ) {
        let mut stream = layered_onion_stream(n, policy).unwrap();
        let len = Params::new(n, k).unwrap().string_len();
        let prefix = stream.prefix(len).unwrap().to_vec();
        prop_assert!(is_onion_prefix(&prefix, n, k).unwrap().passed);
        let (ordering, _) = check_increasing_order(&prefix, n, k).unwrap();
        prop_assert!(ordering.passed);
    }

    #[test]
    fn circuits_consume_each_layer_edge_once(
        (k, n) in (2u64..=6, 1usize..=4),
        policy in policy(),
    ) {
        let g = build_layer_graph(k, n).unwrap();
        let circuit = hierholzer_circuit(&g, &vec![0; n - 1], policy).unwrap();
        prop_assert_eq!(circuit.edge_ranks().len(), g.edge_count());
        let mut ranks = circuit.edge_ranks().to_vec();
        ranks.sort_unstable();
        ranks.dedup();
        prop_assert_eq!(ranks.len(), g.edge_count());
        let params = Params::new(n, k).unwrap();
        let top = k - 1;
        for word in circuit.edge_words() {
            prop_assert!(word.contains(&top));
            prop_assert!(word_rank(&word, &params).is_ok());
        }
    }
}

#[test]
fn streams_disagree_but_both_verify() {
    let mut greedy = infinite_onion_stream(2).unwrap();
    let mut layered = layered_onion_stream(2, EdgePolicy::MaxSymbolFirst).unwrap();
    let a = greedy.prefix(10).unwrap().to_vec();
    let b = layered.prefix(10).unwrap().to_vec();
    assert_ne!(a, b);
    assert!(is_onion_prefix(&a, 2, 3).unwrap().passed);
    assert!(is_onion_prefix(&b, 2, 3).unwrap().passed);
}
