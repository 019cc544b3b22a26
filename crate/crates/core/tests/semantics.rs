//! Semantic queries against the hand-built fixture lexicons and the toy
//! corpus. Expected numbers are scalar hand evaluations over the fixture
//! spectra and overlaps, frozen here.

use dsem_core::conllu::parse_corpus_str;
use dsem_core::fixtures;
use dsem_core::ingest::{build_lexicon, IngestConfig};
use dsem_core::semantics::{
    ambiguity, disambiguate, entailment_score, sense_correlation, similarity,
    subsystem_mutual_information, suggestions, top_similar,
};
use dsem_core::{Lexicon, QueryError, SolverConfig};

const TOY_CORPUS: &str = include_str!("data/toy.conllu");

fn toy_lexicon() -> Lexicon {
    let documents = parse_corpus_str(TOY_CORPUS).unwrap();
    let config = IngestConfig {
        relations: vec!["nsubj".into(), "obj".into()],
        vocabulary_size: 8,
        include_head_contexts: true,
        min_count: 1,
    };
    build_lexicon(&documents, &config, 0).unwrap()
}

fn fast_solver() -> SolverConfig {
    SolverConfig {
        restarts: 4,
        ..SolverConfig::default()
    }
}

// --- hand-built four-dimensional fixture ---------------------------------

#[test]
fn fixture_ambiguity_matches_spectrum_entropy() {
    let lexicon = fixtures::semantics_lexicon();
    assert!((ambiguity(&lexicon, "book").unwrap() - 1.7427376486136672).abs() < 1e-10);
    assert!((ambiguity(&lexicon, "schedule").unwrap() - 1.3509697683379733).abs() < 1e-10);
}

#[test]
fn fixture_similarity_matches_hand_value() {
    let lexicon = fixtures::semantics_lexicon();
    let value = similarity(&lexicon, "book", "schedule").unwrap();
    assert!((value - 0.9540149656225301).abs() < 1e-8, "got {value}");
    let flipped = similarity(&lexicon, "schedule", "book").unwrap();
    assert!((value - flipped).abs() < 1e-12);
    assert!(value > 0.0 && value < 1.0);
}

#[test]
fn fixture_self_similarity_is_one() {
    let lexicon = fixtures::semantics_lexicon();
    assert!((similarity(&lexicon, "book", "book").unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn fixture_entailment_is_finite_and_asymmetric() {
    let lexicon = fixtures::semantics_lexicon();
    // scores are S(other-word ‖ first-word)
    let schedule_covers_book = entailment_score(&lexicon, "schedule", "book").unwrap();
    let book_covers_schedule = entailment_score(&lexicon, "book", "schedule").unwrap();
    assert!((schedule_covers_book - 0.2703377949018537).abs() < 1e-8);
    assert!((book_covers_schedule - 0.27949597437730134).abs() < 1e-8);
    assert!(schedule_covers_book < book_covers_schedule);
    assert!(entailment_score(&lexicon, "book", "book").unwrap().abs() < 1e-9);
}

#[test]
fn fixture_disambiguation_matches_hand_distribution() {
    let lexicon = fixtures::semantics_lexicon();
    let result = disambiguate(&lexicon, "schedule", "book").unwrap();
    let expected_sense_probs = [0.5, 0.25, 0.15, 0.1];
    let expected_probs = [0.64, 0.12, 0.08, 0.16];
    assert_eq!(result.senses.len(), 4);
    for (sense, (&sense_prob, &prob)) in expected_sense_probs
        .iter()
        .zip(&expected_probs)
        .enumerate()
    {
        assert_eq!(result.senses[sense].sense, sense);
        assert!((result.senses[sense].sense_probability - sense_prob).abs() < 1e-8);
        assert!((result.senses[sense].probability - prob).abs() < 1e-8);
    }
    assert!((result.statistical_outcome - 0.378).abs() < 1e-8);
}

#[test]
fn fixture_self_measurement_returns_own_spectrum() {
    let lexicon = fixtures::semantics_lexicon();
    let result = disambiguate(&lexicon, "book", "book").unwrap();
    for sense in &result.senses {
        assert!((sense.probability - sense.sense_probability).abs() < 1e-9);
    }
}

#[test]
fn fixture_sense_distributions_always_normalize() {
    let lexicon = fixtures::semantics_lexicon();
    let words = ["book", "schedule"];
    for context in words {
        for target in words {
            let result = disambiguate(&lexicon, context, target).unwrap();
            let total: f64 = result.senses.iter().map(|s| s.probability).sum();
            assert!((total - 1.0).abs() < 1e-9, "{context}->{target}: {total}");
        }
    }
}

// --- entangled two-relation fixture --------------------------------------

#[test]
fn entangled_sense_decomposes_as_two_one_one() {
    let lexicon = fixtures::entangled_lexicon();
    let result =
        sense_correlation(&lexicon, "reserve", 0, ("nsubj", "obj"), &fast_solver()).unwrap();
    assert!((result.total - 2.0).abs() < 1e-9);
    let report = result.report.expect("within solver cap");
    assert!((report.quantum - 1.0).abs() <= 0.02);
    assert!((report.classical - 1.0).abs() <= 0.02);
}

#[test]
fn product_sense_has_no_correlation() {
    let lexicon = fixtures::entangled_lexicon();
    let result =
        sense_correlation(&lexicon, "print", 0, ("nsubj", "obj"), &fast_solver()).unwrap();
    assert!(result.total.abs() < 1e-9);
    let report = result.report.expect("within solver cap");
    assert!(report.quantum <= 0.01);
    assert!(report.classical.abs() <= 0.02);
}

#[test]
fn sense_correlation_usage_errors() {
    let lexicon = fixtures::entangled_lexicon();
    assert!(matches!(
        sense_correlation(&lexicon, "reserve", 5, ("nsubj", "obj"), &fast_solver()),
        Err(QueryError::Core(dsem_core::CoreError::SenseOutOfRange { .. }))
    ));
    assert!(matches!(
        sense_correlation(&lexicon, "reserve", 0, ("nsubj", "amod"), &fast_solver()),
        Err(QueryError::UnknownRelation { .. })
    ));
    assert!(matches!(
        sense_correlation(&lexicon, "reserve", 0, ("nsubj", "nsubj"), &fast_solver()),
        Err(QueryError::DuplicateRelation(_))
    ));
}

// --- toy corpus ------------------------------------------------------------

#[test]
fn toy_ambiguity_values() {
    let lexicon = toy_lexicon();
    assert!((ambiguity(&lexicon, "book").unwrap() - 1.5).abs() < 1e-10);
    // reserve occurs in a single document: one sense, zero ambiguity.
    assert!(ambiguity(&lexicon, "reserve").unwrap().abs() < 1e-10);
}

#[test]
fn toy_ambiguity_is_bounded_by_log_rank() {
    let lexicon = toy_lexicon();
    for (word, operator) in lexicon.entries() {
        let rank = operator.spectrum().unwrap().rank();
        let bound = (rank as f64).log2();
        let value = ambiguity(&lexicon, word).unwrap();
        assert!(value <= bound + 1e-9, "{word}: {value} > log2 {rank}");
    }
}

#[test]
fn toy_similarity_values() {
    let lexicon = toy_lexicon();
    // book and schedule share two of book's three sense cells:
    // √(0.5·0.5) + √(0.25·0.5), by hand.
    let overlapping = similarity(&lexicon, "book", "schedule").unwrap();
    assert!((overlapping - 0.8535533905932737).abs() < 1e-9, "got {overlapping}");

    // dog's contexts live on different coordinates entirely.
    assert!(similarity(&lexicon, "dog", "book").unwrap().abs() < 1e-9);

    assert!((similarity(&lexicon, "police", "police").unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn toy_entailment_direction() {
    let lexicon = toy_lexicon();
    // schedule's senses sit inside book's span: finite information gap,
    // computed by hand as 0.5 bits.
    let book_covers_schedule = entailment_score(&lexicon, "book", "schedule").unwrap();
    assert!((book_covers_schedule - 0.5).abs() < 1e-9, "got {book_covers_schedule}");

    // book's judge/date sense lies outside schedule's span.
    let schedule_covers_book = entailment_score(&lexicon, "schedule", "book").unwrap();
    assert_eq!(schedule_covers_book, f64::INFINITY);
}

#[test]
fn toy_disambiguation_aggregates_to_hand_levels() {
    let lexicon = toy_lexicon();
    let result = disambiguate(&lexicon, "schedule", "book").unwrap();
    let total: f64 = result.senses.iter().map(|s| s.probability).sum();
    assert!((total - 1.0).abs() < 1e-9);

    // The 0.25 eigenvalue is doubly degenerate, so only the per-level
    // aggregation is basis-invariant: the schedule context puts half its
    // weight on the leading sense and half on the 0.25 level.
    let leading: f64 = result
        .senses
        .iter()
        .filter(|s| (s.sense_probability - 0.5).abs() < 1e-9)
        .map(|s| s.probability)
        .sum();
    let quarter_level: f64 = result
        .senses
        .iter()
        .filter(|s| (s.sense_probability - 0.25).abs() < 1e-9)
        .map(|s| s.probability)
        .sum();
    assert!((leading - 0.5).abs() < 1e-9);
    assert!((quarter_level - 0.5).abs() < 1e-9);
    assert!((result.statistical_outcome - 0.375).abs() < 1e-9);
}

#[test]
fn toy_mutual_information_between_relations() {
    let lexicon = toy_lexicon();
    // book: marginals diag(0.5, 0.25, 0.25) on each side, joint entropy
    // 1.5, so 1.5 + 1.5 − 1.5.
    let book = subsystem_mutual_information(&lexicon, "book", ("nsubj", "obj")).unwrap();
    assert!((book - 1.5).abs() < 1e-9, "got {book}");

    // reserve is the pure two-neighborhood superposition: 1 + 1 − 0.
    let reserve = subsystem_mutual_information(&lexicon, "reserve", ("nsubj", "obj")).unwrap();
    assert!((reserve - 2.0).abs() < 1e-9, "got {reserve}");
}

#[test]
fn toy_sense_correlation_above_solver_cap_keeps_total() {
    let lexicon = toy_lexicon();
    let result =
        sense_correlation(&lexicon, "reserve", 0, ("nsubj", "obj"), &fast_solver()).unwrap();
    assert!((result.total - 2.0).abs() < 1e-9);
    // factor dimensions are 9 each, above the default cap of 4
    assert!(result.report.is_none());
}

#[test]
fn toy_top_similar_ranks_schedule_then_reserve() {
    let lexicon = toy_lexicon();
    let top = top_similar(&lexicon, "book", 2).unwrap();
    assert_eq!(top[0].0, "schedule");
    assert!((top[0].1 - 0.8535533905932737).abs() < 1e-9);
    assert_eq!(top[1].0, "reserve");
    assert!((top[1].1 - 0.6035533905932737).abs() < 1e-9);
}

#[test]
fn unknown_word_suggests_close_spellings() {
    let lexicon = toy_lexicon();
    match similarity(&lexicon, "bok", "schedule") {
        Err(QueryError::UnknownWord { word, suggestions }) => {
            assert_eq!(word, "bok");
            assert!(suggestions.contains(&"book".to_string()));
        }
        other => panic!("expected unknown-word error, got {other:?}"),
    }
    assert!(suggestions(&lexicon, "polce").contains(&"police".to_string()));
}

#[test]
fn queries_are_reproducible_from_saved_lexicon() {
    let lexicon = toy_lexicon();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("toy.dsem");
    lexicon.save(&path).unwrap();
    let loaded = Lexicon::load(&path).unwrap();

    for word in ["book", "schedule", "dog"] {
        assert_eq!(
            ambiguity(&lexicon, word).unwrap().to_bits(),
            ambiguity(&loaded, word).unwrap().to_bits()
        );
    }
    assert_eq!(
        similarity(&lexicon, "book", "schedule").unwrap().to_bits(),
        similarity(&loaded, "book", "schedule").unwrap().to_bits()
    );
    let a = disambiguate(&lexicon, "schedule", "book").unwrap();
    let b = disambiguate(&loaded, "schedule", "book").unwrap();
    assert_eq!(a, b);
}
