//! Building lexical density operators from a dependency-parsed corpus.
//!
//! Each dependency relation gets a vector space whose dimensions are the
//! most frequent words seen on either end of that relation, plus one
//! reserved "null" dimension for occurrences with no in-vocabulary
//! neighbor under the relation. A word's context profile in one document
//! is a unit ket in the tensor product of those spaces; its density
//! operator is the trace-normalized sum of the outer products of its
//! document kets.

use std::collections::{BTreeMap, HashMap};

use crate::conllu::Document;
use crate::error::CoreError;
use crate::lexicon::{Lexicon, Provenance};
use crate::operator::{max_dim, DensityOperator, Ket};

/// Ingestion parameters. Defaults: relations {nsubj, obj, amod}, nine
/// vocabulary words per relation, neighbors collected in both directions.
#[derive(Debug, Clone)]
pub struct IngestConfig {
    /// Dependency relations that define the tensor factors, in order.
    pub relations: Vec<String>,
    /// Words per relation vocabulary (the factor dimension is this plus
    /// the null dimension).
    pub vocabulary_size: usize,
    /// Also treat a target's syntactic head as a neighbor, not just its
    /// dependents.
    pub include_head_contexts: bool,
    /// Only build operators for lemmas occurring at least this often.
    pub min_count: usize,
}

impl Default for IngestConfig {
    fn default() -> Self {
        Self {
            relations: vec!["nsubj".into(), "obj".into(), "amod".into()],
            vocabulary_size: 9,
            include_head_contexts: true,
            min_count: 1,
        }
    }
}

/// Ranked vocabulary for one dependency relation. Exactly
/// `vocabulary_size` entries, most frequent first; missing entries are
/// reserved filler dimensions that no corpus word maps to.
#[derive(Debug, Clone)]
pub struct RelationVocabulary {
    relation: String,
    words: Vec<String>,
    index: HashMap<String, usize>,
}

impl RelationVocabulary {
    fn new(relation: String, ranked: Vec<String>, size: usize) -> Self {
        let mut words = ranked;
        let real = words.len().min(size);
        words.truncate(real);
        for filler in real..size {
            words.push(format!("__filler_{filler}__"));
        }
        Self::from_stored(relation, words)
    }

    /// Rebuild from a stored word list (fillers included). Filler entries
    /// are excluded from the lookup index so no corpus lemma maps to them.
    pub(crate) fn from_stored(relation: String, words: Vec<String>) -> Self {
        let index = words
            .iter()
            .enumerate()
            .filter(|(_, w)| !is_filler(w))
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Self {
            relation,
            words,
            index,
        }
    }

    pub fn relation(&self) -> &str {
        &self.relation
    }

    /// The ranked word list (fillers included), length `vocabulary_size`.
    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// Factor dimension: vocabulary size plus the null dimension.
    pub fn dim(&self) -> usize {
        self.words.len() + 1
    }

    /// Index of the reserved null dimension.
    pub fn null_index(&self) -> usize {
        self.words.len()
    }

    /// Dimension index of an in-vocabulary lemma.
    pub fn index_of(&self, lemma: &str) -> Option<usize> {
        self.index.get(lemma).copied()
    }
}

/// A word's dependency-context profile within one document: a unit ket in
/// the tensor-product context space.
#[derive(Debug, Clone)]
pub struct DocumentKet {
    pub word: String,
    pub document_id: Option<String>,
    pub ket: Ket,
    /// Occurrences of the word that contributed context mass.
    pub occurrences: usize,
}

/// Rank the `vocabulary_size` most frequent lemmas seen as either endpoint
/// of each relation. Ties break lexicographically; short vocabularies are
/// padded with reserved fillers.
pub fn build_vocabularies(
    documents: &[Document],
    config: &IngestConfig,
) -> Result<Vec<RelationVocabulary>, CoreError> {
    if config.relations.is_empty() {
        return Err(CoreError::EmptyInput { what: "relations" });
    }
    if config.vocabulary_size == 0 {
        return Err(CoreError::EmptyInput {
            what: "vocabulary size",
        });
    }

    let mut counts: Vec<BTreeMap<&str, u64>> =
        config.relations.iter().map(|_| BTreeMap::new()).collect();
    for document in documents {
        for sentence in &document.sentences {
            for token in &sentence.tokens {
                if token.head == 0 {
                    continue;
                }
                let Some(slot) = config.relations.iter().position(|r| *r == token.deprel)
                else {
                    continue;
                };
                let head = &sentence.tokens[token.head - 1];
                *counts[slot].entry(token.lemma.as_str()).or_insert(0) += 1;
                *counts[slot].entry(head.lemma.as_str()).or_insert(0) += 1;
            }
        }
    }

    Ok(config
        .relations
        .iter()
        .zip(counts)
        .map(|(relation, tally)| {
            let mut ranked: Vec<(&str, u64)> = tally.into_iter().collect();
            ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
            let words = ranked
                .into_iter()
                .take(config.vocabulary_size)
                .map(|(w, _)| w.to_string())
                .collect();
            RelationVocabulary::new(relation.clone(), words, config.vocabulary_size)
        })
        .collect())
}

/// Context profile of `word` within one document.
///
/// Every occurrence contributes amplitude to the tensor coordinate of its
/// neighbors: per relation, in-vocabulary neighbors split one unit of mass
/// equally, and a relation with no in-vocabulary neighbor falls back to
/// the null dimension. Occurrences with no in-vocabulary neighbor under
/// any relation carry no contextual information and are dropped. Returns
/// `None` (the absent-word signal) when nothing contributed.
pub fn build_document_ket(
    word: &str,
    document: &Document,
    vocabularies: &[RelationVocabulary],
    config: &IngestConfig,
) -> Option<DocumentKet> {
    let dims: Vec<usize> = vocabularies.iter().map(RelationVocabulary::dim).collect();
    let total_dim: usize = dims.iter().product();
    let mut amplitudes = vec![0.0f64; total_dim];
    let mut occurrences = 0usize;

    for sentence in &document.sentences {
        for (position, token) in sentence.tokens.iter().enumerate() {
            if token.lemma != word {
                continue;
            }
            // Per relation: in-vocabulary neighbor indices with multiplicity.
            let mut slots: Vec<Vec<usize>> = vec![Vec::new(); vocabularies.len()];
            for other in &sentence.tokens {
                if other.head == position + 1 {
                    if let Some(slot) = slot_of(vocabularies, &other.deprel) {
                        if let Some(idx) = vocabularies[slot].index_of(&other.lemma) {
                            slots[slot].push(idx);
                        }
                    }
                }
            }
            if config.include_head_contexts && token.head > 0 {
                if let Some(slot) = slot_of(vocabularies, &token.deprel) {
                    let head = &sentence.tokens[token.head - 1];
                    if let Some(idx) = vocabularies[slot].index_of(&head.lemma) {
                        slots[slot].push(idx);
                    }
                }
            }

            if slots.iter().all(Vec::is_empty) {
                continue;
            }
            occurrences += 1;

            // Factor amplitudes: equal split over alternatives, null
            // dimension when a relation slot is empty.
            let factors: Vec<Vec<(usize, f64)>> = slots
                .iter()
                .enumerate()
                .map(|(slot, neighbor_indices)| {
                    if neighbor_indices.is_empty() {
                        vec![(vocabularies[slot].null_index(), 1.0)]
                    } else {
                        let share = 1.0 / neighbor_indices.len() as f64;
                        let mut merged: BTreeMap<usize, f64> = BTreeMap::new();
                        for &idx in neighbor_indices {
                            *merged.entry(idx).or_insert(0.0) += share;
                        }
                        merged.into_iter().collect()
                    }
                })
                .collect();

            accumulate_tensor(&mut amplitudes, &factors, &dims);
        }
    }

    if occurrences == 0 {
        return None;
    }
    let ket = Ket::unit_from_real(&amplitudes).ok()?;
    Some(DocumentKet {
        word: word.to_string(),
        document_id: document.id.clone(),
        ket,
        occurrences,
    })
}

fn slot_of(vocabularies: &[RelationVocabulary], deprel: &str) -> Option<usize> {
    vocabularies.iter().position(|v| v.relation() == deprel)
}

fn is_filler(word: &str) -> bool {
    word.starts_with("__filler_") && word.ends_with("__")
}

/// Add the tensor product of sparse factor vectors into a dense
/// accumulator.
fn accumulate_tensor(amplitudes: &mut [f64], factors: &[Vec<(usize, f64)>], dims: &[usize]) {
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let mut cursor = vec![0usize; factors.len()];
    loop {
        let mut flat = 0usize;
        let mut value = 1.0f64;
        for (slot, &pick) in cursor.iter().enumerate() {
            let (idx, weight) = factors[slot][pick];
            flat += idx * strides[slot];
            value *= weight;
        }
        amplitudes[flat] += value;

        // Advance the mixed-radix cursor over factor alternatives.
        let mut slot = factors.len();
        loop {
            if slot == 0 {
                return;
            }
            slot -= 1;
            cursor[slot] += 1;
            if cursor[slot] < factors[slot].len() {
                break;
            }
            cursor[slot] = 0;
        }
    }
}

/// Trace-normalized sum of the outer products of a word's document kets.
pub fn build_lexical_density_operator(
    kets: &[DocumentKet],
) -> Result<DensityOperator, CoreError> {
    if kets.is_empty() {
        return Err(CoreError::EmptyInput {
            what: "document kets",
        });
    }
    let vectors: Vec<Ket> = kets.iter().map(|k| k.ket.clone()).collect();
    let weights = vec![1.0; vectors.len()];
    DensityOperator::from_mixture(&vectors, &weights)
}

/// Run the whole pipeline: vocabularies, per-word document kets, and one
/// density operator per qualifying lemma.
pub fn build_lexicon(
    documents: &[Document],
    config: &IngestConfig,
    corpus_crc: u32,
) -> Result<Lexicon, CoreError> {
    if documents.is_empty() {
        return Err(CoreError::EmptyInput { what: "documents" });
    }
    let vocabularies = build_vocabularies(documents, config)?;
    let space_dim: usize = vocabularies.iter().map(RelationVocabulary::dim).product();
    if space_dim > max_dim() {
        return Err(CoreError::Capacity {
            requested: space_dim,
            limit: max_dim(),
        });
    }

    let mut lemma_counts: BTreeMap<&str, usize> = BTreeMap::new();
    for document in documents {
        for sentence in &document.sentences {
            for token in &sentence.tokens {
                *lemma_counts.entry(token.lemma.as_str()).or_insert(0) += 1;
            }
        }
    }

    let provenance = Provenance {
        corpus_crc,
        vocabulary_size: config.vocabulary_size,
        relations: config.relations.clone(),
        include_head_contexts: config.include_head_contexts,
    };
    let mut lexicon = Lexicon::new(vocabularies, provenance);

    for (lemma, count) in lemma_counts {
        if count < config.min_count {
            continue;
        }
        let kets: Vec<DocumentKet> = documents
            .iter()
            .filter_map(|doc| build_document_ket(lemma, doc, lexicon.vocabularies(), config))
            .collect();
        if kets.is_empty() {
            continue;
        }
        let operator = build_lexical_density_operator(&kets)?
            .with_subsystems(&lexicon.subsystem_dims())?;
        lexicon.insert(lemma.to_string(), operator)?;
    }

    Ok(lexicon)
}
