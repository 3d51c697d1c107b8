//! Property suites for cross-cutting invariants of the data model,
//! analyzers, and ranking transforms.

use proptest::prelude::*;

use zbench_core::analysis::{
    split_word, window_spans, WindowConfig, WordpieceVocab, CONTINUATION_PREFIX, UNKNOWN_TOKEN,
};
use zbench_core::data::{read_run, write_run, Ranking};
use zbench_core::rankops::{hybrid_average, maxp_aggregate, minmax_normalize, FusionConfig};

fn ranking_strategy() -> impl Strategy<Value = Ranking> {
    proptest::collection::btree_map(
        "[a-z][a-z0-9]{0,6}",
        proptest::collection::btree_map("[A-Za-z0-9_.:-]{1,10}", -1.0e12f64..1.0e12, 1..20),
        1..8,
    )
    .prop_map(|queries| {
        let mut r = Ranking::new("prop");
        for (qid, docs) in queries {
            let mut hits: Vec<(String, f64)> = docs.into_iter().collect();
            hits.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            r.insert_query(qid, hits);
        }
        r
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn run_file_round_trip(ranking in ranking_strategy()) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.txt");
        write_run(&ranking, &path).unwrap();
        let back = read_run(&path).unwrap();
        prop_assert_eq!(back, ranking);
    }

    #[test]
    fn wordpiece_reconstructs_decomposable_words(
        word in "[a-z]{1,12}",
        include_whole in any::<bool>(),
    ) {
        // Single-character pieces guarantee a decomposition exists.
        let mut tokens = vec![UNKNOWN_TOKEN.to_string()];
        let chars: Vec<char> = word.chars().collect();
        tokens.push(chars[0].to_string());
        for c in "abcdefghijklmnopqrstuvwxyz".chars() {
            tokens.push(format!("{CONTINUATION_PREFIX}{c}"));
        }
        if include_whole {
            tokens.push(word.clone());
        }
        tokens.sort();
        tokens.dedup();
        let vocab = WordpieceVocab::from_tokens(tokens).unwrap();
        let pieces = split_word(&word, &vocab).expect("decomposition exists");
        let rebuilt: String = pieces
            .iter()
            .map(|p| p.trim_start_matches(CONTINUATION_PREFIX))
            .collect();
        prop_assert_eq!(rebuilt, word.clone());
        if include_whole {
            prop_assert_eq!(pieces, vec![word]);
        }
    }

    #[test]
    fn windows_tile_and_never_nest(
        n in 1usize..300,
        (window, stride) in (1usize..=20).prop_flat_map(|w| (Just(w), 1usize..=w)),
    ) {
        let cfg = WindowConfig::new(window, stride).unwrap();
        let spans = window_spans(n, cfg);
        prop_assert!(!spans.is_empty());
        prop_assert_eq!(spans[0].0, 0);
        prop_assert_eq!(spans.last().unwrap().1, n);
        for pair in spans.windows(2) {
            // Consecutive windows overlap or touch (coverage) and strictly
            // extend to the right (no containment).
            prop_assert!(pair[1].0 <= pair[0].1);
            prop_assert!(pair[1].0 > pair[0].0);
            prop_assert!(pair[1].1 > pair[0].1);
        }
    }

    #[test]
    fn minmax_bounds_order_and_idempotence(
        scores in proptest::collection::vec(-1.0e6f64..1.0e6, 1..40),
    ) {
        let entries: Vec<(String, f64)> = scores
            .iter()
            .enumerate()
            .map(|(i, &s)| (format!("d{i}"), s))
            .collect();
        let once = minmax_normalize(entries).unwrap();
        for window in once.windows(2) {
            let raw_cmp = scores[once.iter().position(|e| e.0 == window[0].0).unwrap()]
                .total_cmp(&scores[once.iter().position(|e| e.0 == window[1].0).unwrap()]);
            let norm_cmp = window[0].1.total_cmp(&window[1].1);
            // Order (as a weak relation) is preserved entry-by-entry.
            if raw_cmp == std::cmp::Ordering::Less {
                prop_assert!(norm_cmp != std::cmp::Ordering::Greater);
            }
            if raw_cmp == std::cmp::Ordering::Greater {
                prop_assert!(norm_cmp != std::cmp::Ordering::Less);
            }
        }
        for (_, s) in &once {
            prop_assert!((0.0..=1.0).contains(s));
        }
        let twice = minmax_normalize(once.clone()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn maxp_equals_group_by_max(
        per_doc in proptest::collection::btree_map(
            "[a-z]{1,6}",
            proptest::collection::vec(0.0f64..100.0, 1..4),
            1..50,
        ),
    ) {
        let mut hits: Vec<(String, f64)> = Vec::new();
        for (doc, passage_scores) in &per_doc {
            for (w, score) in passage_scores.iter().enumerate() {
                hits.push((format!("{doc}#{w}"), *score));
            }
        }
        hits.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let mut run = Ranking::new("passages");
        run.insert_query("q1".to_string(), hits);

        let out = maxp_aggregate(&run, "#").unwrap();
        let docs = out.get("q1").unwrap();
        prop_assert_eq!(docs.len(), per_doc.len());

        let mut expected: Vec<(String, f64)> = per_doc
            .iter()
            .map(|(doc, scores)| {
                (doc.clone(), scores.iter().copied().fold(f64::NEG_INFINITY, f64::max))
            })
            .collect();
        expected.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let got: Vec<(String, f64)> = docs.iter().map(|d| (d.doc_id.clone(), d.score)).collect();
        prop_assert_eq!(got, expected);
    }
}

/// Ordering of a fused run as (query, doc ids) pairs.
fn ordering_of(run: &Ranking) -> Vec<(String, Vec<String>)> {
    run.iter()
        .map(|(qid, docs)| {
            (qid.to_string(), docs.iter().map(|d| d.doc_id.clone()).collect())
        })
        .collect()
}

#[test]
fn fusion_invariant_under_positive_affine_transforms() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for round in 0..100 {
        // Scores on a coarse grid keep adjacent fused values well separated
        // relative to float rounding.
        let mut make_run = |tag: &str| {
            let mut run = Ranking::new(tag);
            for q in 0..rng.random_range(1..=4) {
                let n = rng.random_range(1..=30);
                let mut hits: Vec<(String, f64)> = (0..n)
                    .map(|i| {
                        (format!("d{i:02}"), rng.random_range(0..100_000) as f64 / 1000.0)
                    })
                    .collect();
                hits.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
                run.insert_query(format!("q{q}"), hits);
            }
            run
        };
        let run_a = make_run("a");
        let run_b = make_run("b");
        let cfg = FusionConfig::default();
        let (base, _) = hybrid_average(&run_a, &run_b, &cfg).unwrap();

        let scale = rng.random_range(0.1..10.0);
        let shift = rng.random_range(-5.0..5.0);
        let transform = |run: &Ranking, tag: &str| {
            let mut out = Ranking::new(tag);
            for (qid, docs) in run.iter() {
                let hits: Vec<(String, f64)> = docs
                    .iter()
                    .map(|d| (d.doc_id.clone(), scale * d.score + shift))
                    .collect();
                out.insert_query(qid.to_string(), hits);
            }
            out
        };

        let (after_a, _) = hybrid_average(&transform(&run_a, "a2"), &run_b, &cfg).unwrap();
        assert_eq!(ordering_of(&base), ordering_of(&after_a), "round {round}, side a");
        let (after_b, _) = hybrid_average(&run_a, &transform(&run_b, "b2"), &cfg).unwrap();
        assert_eq!(ordering_of(&base), ordering_of(&after_b), "round {round}, side b");
    }
}

#[test]
fn fusion_weights_one_zero_reproduce_side_a_ordering() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(123);
    for _ in 0..20 {
        let mut run_a = Ranking::new("a");
        let mut run_b = Ranking::new("b");
        let n = rng.random_range(2..=40);
        let mut hits: Vec<(String, f64)> = (0..n)
            .map(|i| (format!("d{i:02}"), rng.random_range(0..100_000) as f64))
            .collect();
        hits.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        run_a.insert_query("q".to_string(), hits.clone());
        hits.reverse();
        let rescored: Vec<(String, f64)> = hits
            .into_iter()
            .enumerate()
            .map(|(i, (d, _))| (d, 1000.0 - i as f64))
            .collect();
        run_b.insert_query("q".to_string(), rescored);

        let cfg = FusionConfig { weight_a: 1.0, weight_b: 0.0, ..FusionConfig::default() };
        let (fused, _) = hybrid_average(&run_a, &run_b, &cfg).unwrap();
        assert_eq!(ordering_of(&fused), ordering_of(&run_a));
    }
}
