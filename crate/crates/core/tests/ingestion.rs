//! End-to-end ingestion pipeline over the bundled toy corpus.

use dsem_core::conllu::{parse_corpus_str, Document};
use dsem_core::ingest::{build_document_ket, build_lexicon, build_vocabularies, IngestConfig};
use dsem_core::quantum::von_neumann_entropy;

const TOY_CORPUS: &str = include_str!("data/toy.conllu");

fn toy_documents() -> Vec<Document> {
    parse_corpus_str(TOY_CORPUS).expect("bundled corpus parses")
}

fn toy_config() -> IngestConfig {
    IngestConfig {
        relations: vec!["nsubj".into(), "obj".into()],
        vocabulary_size: 8,
        include_head_contexts: true,
        min_count: 1,
    }
}

#[test]
fn corpus_has_nine_documents() {
    let documents = toy_documents();
    assert_eq!(documents.len(), 9);
    assert_eq!(documents[0].id.as_deref(), Some("b1"));
    assert_eq!(documents[8].id.as_deref(), Some("r1"));
    assert_eq!(documents[8].sentences.len(), 2);
}

#[test]
fn lexicon_has_expected_word_list() {
    let lexicon = build_lexicon(&toy_documents(), &toy_config(), 0).unwrap();
    let words: Vec<&str> = lexicon.words().collect();
    assert_eq!(
        words,
        [
            "book", "cat", "chase", "customer", "date", "dog", "judge", "police", "reserve",
            "schedule", "thief", "ticket"
        ]
    );
    assert_eq!(lexicon.space_dim(), 81);
    assert_eq!(lexicon.subsystem_dims(), vec![9, 9]);
}

#[test]
fn every_operator_passes_full_density_validation() {
    let lexicon = build_lexicon(&toy_documents(), &toy_config(), 0).unwrap();
    for (word, operator) in lexicon.entries() {
        operator
            .validate()
            .unwrap_or_else(|e| panic!("operator for {word:?} failed validation: {e}"));
    }
}

#[test]
fn engineered_book_spectrum_is_half_quarter_quarter() {
    let lexicon = build_lexicon(&toy_documents(), &toy_config(), 0).unwrap();
    let book = lexicon.get("book").unwrap();
    let spectrum = book.spectrum().unwrap();
    assert_eq!(spectrum.rank(), 3);
    assert!((spectrum.eigenvalue(0) - 0.5).abs() < 1e-12);
    assert!((spectrum.eigenvalue(1) - 0.25).abs() < 1e-12);
    assert!((spectrum.eigenvalue(2) - 0.25).abs() < 1e-12);
    assert!((von_neumann_entropy(book).unwrap() - 1.5).abs() < 1e-10);
}

#[test]
fn document_permutation_leaves_operators_unchanged() {
    let documents = toy_documents();
    let mut reversed = documents.clone();
    reversed.reverse();
    let config = toy_config();
    let forward = build_lexicon(&documents, &config, 0).unwrap();
    let backward = build_lexicon(&reversed, &config, 0).unwrap();
    for (word, operator) in forward.entries() {
        let other = backward.get(word).expect("same word set");
        assert!(
            operator.matrix().max_abs_diff(other.matrix()) < 1e-12,
            "operator for {word:?} changed under document permutation"
        );
    }
}

#[test]
fn document_duplication_leaves_operators_unchanged() {
    let documents = toy_documents();
    let mut doubled = documents.clone();
    doubled.extend(documents.iter().cloned());
    let config = toy_config();
    let base = build_lexicon(&documents, &config, 0).unwrap();
    let twice = build_lexicon(&doubled, &config, 0).unwrap();
    for (word, operator) in base.entries() {
        let other = twice.get(word).expect("same word set");
        assert!(
            operator.matrix().max_abs_diff(other.matrix()) < 1e-12,
            "operator for {word:?} changed under document duplication"
        );
    }
}

#[test]
fn ingestion_is_deterministic() {
    let config = toy_config();
    let first = build_lexicon(&toy_documents(), &config, 7).unwrap();
    let second = build_lexicon(&toy_documents(), &config, 7).unwrap();
    assert_eq!(first.to_bytes(), second.to_bytes());
}

#[test]
fn save_load_round_trip_is_bit_exact() {
    let lexicon = build_lexicon(&toy_documents(), &toy_config(), 0).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("toy.dsem");
    lexicon.save(&path).unwrap();
    let loaded = dsem_core::Lexicon::load(&path).unwrap();
    assert_eq!(loaded.to_bytes(), lexicon.to_bytes());
}

#[test]
fn function_words_have_no_context_and_are_absent() {
    let documents = toy_documents();
    let config = toy_config();
    let vocabularies = build_vocabularies(&documents, &config).unwrap();
    // Determiners only attach via det edges, which no configured relation
    // tracks.
    assert!(build_document_ket("the", &documents[0], &vocabularies, &config).is_none());
    // book never occurs in the dog documents.
    assert!(build_document_ket("book", &documents[6], &vocabularies, &config).is_none());
}

#[test]
fn reserve_document_ket_splits_between_two_neighborhoods() {
    let documents = toy_documents();
    let config = toy_config();
    let vocabularies = build_vocabularies(&documents, &config).unwrap();
    let ket = build_document_ket("reserve", &documents[8], &vocabularies, &config).unwrap();
    assert_eq!(ket.occurrences, 2);
    let nonzero: Vec<f64> = (0..ket.ket.dim())
        .map(|i| ket.ket.amplitude(i).re)
        .filter(|a| a.abs() > 1e-12)
        .collect();
    let expected = std::f64::consts::FRAC_1_SQRT_2;
    assert_eq!(nonzero.len(), 2);
    for amplitude in nonzero {
        assert!((amplitude - expected).abs() < 1e-12);
    }
}
