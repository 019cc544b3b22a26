//! Hand-built lexicons with closed-form measure values. The test suites
//! and the command-line examples use them as known-answer references.

use crate::ingest::RelationVocabulary;
use crate::lexicon::{Lexicon, Provenance};
use crate::operator::{DensityOperator, Ket};

/// Four-dimensional lexicon holding "book" and "schedule".
///
/// One relation (`ctx`) with vocabulary `[ticket, venue, isaiah]` plus the
/// null dimension. Both operators have full support and distinct
/// eigenvalues, so every spectral quantity is unambiguous:
///
/// - `book`: eigenvalues (0.5, 0.25, 0.15, 0.1) with eigenkets
///   (1,1,0,0)/√2, e₂, e₃, (1,−1,0,0)/√2 — the leading sense is the
///   "booking a ticket/venue" superposition.
/// - `schedule`: eigenvalues (0.7, 0.12, 0.1, 0.08) with eigenkets
///   (2,1,0,0)/√5, e₂, (1,−2,0,0)/√5, e₃ — the leading sense leans on the
///   same two context dimensions.
///
/// Closed forms (scalar arithmetic over the spectra and the overlap
/// matrix, whose only nontrivial entries are 0.9/0.1 in the shared plane):
/// fidelity 0.9540149656225301, S(book‖schedule) 0.2703377949018537,
/// S(schedule‖book) 0.27949597437730134, and measuring book against the
/// schedule state gives sense probabilities (0.64, 0.12, 0.08, 0.16) with
/// statistical outcome 0.378.
pub fn semantics_lexicon() -> Lexicon {
    let vocabulary = RelationVocabulary::from_stored(
        "ctx".to_string(),
        vec!["ticket".into(), "venue".into(), "isaiah".into()],
    );
    let provenance = Provenance {
        corpus_crc: 0,
        vocabulary_size: 3,
        relations: vec!["ctx".to_string()],
        include_head_contexts: true,
    };
    let mut lexicon = Lexicon::new(vec![vocabulary], provenance);

    let v = Ket::unit_from_real(&[1.0, 1.0, 0.0, 0.0]).expect("nonzero");
    let v_perp = Ket::unit_from_real(&[1.0, -1.0, 0.0, 0.0]).expect("nonzero");
    let e2 = Ket::basis(4, 2);
    let e3 = Ket::basis(4, 3);
    let book = DensityOperator::from_eigensystem(&[
        (0.5, v),
        (0.25, e2.clone()),
        (0.15, e3.clone()),
        (0.1, v_perp),
    ])
    .expect("valid spectrum");

    let b1 = Ket::unit_from_real(&[2.0, 1.0, 0.0, 0.0]).expect("nonzero");
    let b2 = Ket::unit_from_real(&[1.0, -2.0, 0.0, 0.0]).expect("nonzero");
    let schedule =
        DensityOperator::from_eigensystem(&[(0.7, b1), (0.12, e2), (0.1, b2), (0.08, e3)])
            .expect("valid spectrum");

    lexicon.insert("book".to_string(), book).expect("fits space");
    lexicon
        .insert("schedule".to_string(), schedule)
        .expect("fits space");
    lexicon
}

/// Minimal two-relation lexicon (factor dimension 2 each, total 4) whose
/// word "reserve" is the maximally entangled ket across the two relation
/// subsystems, and whose word "print" is a pure product ket.
///
/// Sense 0 of "reserve" therefore decomposes as total 2, quantum 1,
/// classical 1; sense 0 of "print" carries no correlation at all.
pub fn entangled_lexicon() -> Lexicon {
    let nsubj = RelationVocabulary::from_stored("nsubj".to_string(), vec!["customer".into()]);
    let obj = RelationVocabulary::from_stored("obj".to_string(), vec!["ticket".into()]);
    let provenance = Provenance {
        corpus_crc: 0,
        vocabulary_size: 1,
        relations: vec!["nsubj".to_string(), "obj".to_string()],
        include_head_contexts: true,
    };
    let mut lexicon = Lexicon::new(vec![nsubj, obj], provenance);

    let entangled = Ket::unit_from_real(&[1.0, 0.0, 0.0, 1.0]).expect("nonzero");
    lexicon
        .insert(
            "reserve".to_string(),
            DensityOperator::from_pure(&entangled).expect("pure state"),
        )
        .expect("fits space");

    let product = Ket::basis(4, 0);
    lexicon
        .insert(
            "print".to_string(),
            DensityOperator::from_pure(&product).expect("pure state"),
        )
        .expect("fits space");
    lexicon
}
