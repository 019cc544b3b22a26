//! Word-level queries over a lexicon: ambiguity, similarity, entailment,
//! disambiguation against a context word, and correlation between the
//! relation subsystems of a sense.

use crate::correlation::{
    classical_correlation, total_correlation, CorrelationReport, SolverConfig,
};
use crate::error::QueryError;
use crate::lexicon::Lexicon;
use crate::operator::DensityOperator;
use crate::quantum::{
    fidelity, measurement_probabilities, quantum_relative_entropy, statistical_outcome,
    von_neumann_entropy,
};

/// Word ambiguity in bits: the von Neumann entropy of its operator, each
/// sense's information weighted by the sense probability.
pub fn ambiguity(lexicon: &Lexicon, word: &str) -> Result<f64, QueryError> {
    let operator = lookup(lexicon, word)?;
    Ok(von_neumann_entropy(operator)?)
}

/// Similarity in `[0,1]`: fidelity between the two word operators. Symmetric.
pub fn similarity(lexicon: &Lexicon, left: &str, right: &str) -> Result<f64, QueryError> {
    let a = lookup(lexicon, left)?;
    let b = lookup(lexicon, right)?;
    Ok(fidelity(a, b)?)
}

/// Entailment score S(ŵ₂‖ŵ₁): the information `word1` lacks to cover
/// `word2`'s meaning spectrum. Lower means `word1` covers `word2` better;
/// +∞ when `word2` has senses entirely outside `word1`'s span. Asymmetric.
pub fn entailment_score(
    lexicon: &Lexicon,
    word1: &str,
    word2: &str,
) -> Result<f64, QueryError> {
    let w1 = lookup(lexicon, word1)?;
    let w2 = lookup(lexicon, word2)?;
    Ok(quantum_relative_entropy(w2, w1)?)
}

/// One sense of the target word in a disambiguation result.
#[derive(Debug, Clone, PartialEq)]
pub struct SenseProbability {
    /// Index into the target operator's descending spectrum.
    pub sense: usize,
    /// The sense's own probability (the eigenvalue).
    pub sense_probability: f64,
    /// Probability the context assigns to this sense.
    pub probability: f64,
}

/// Pre-collapse measurement statistics of a target word against a context
/// word. No collapse is performed; only the outcome distribution and the
/// statistical outcome value are reported.
#[derive(Debug, Clone, PartialEq)]
pub struct Disambiguation {
    pub senses: Vec<SenseProbability>,
    pub statistical_outcome: f64,
}

/// Measure the target word's sense observable on the context word's state:
/// each sense eigenket |aᵢ⟩ of the target receives probability
/// ⟨aᵢ|ŵ_ctx|aᵢ⟩.
pub fn disambiguate(
    lexicon: &Lexicon,
    context: &str,
    target: &str,
) -> Result<Disambiguation, QueryError> {
    let ctx = lookup(lexicon, context)?;
    let tgt = lookup(lexicon, target)?;
    let distribution = measurement_probabilities(tgt, ctx)?;
    let outcomes = distribution.outcomes().expect("outcomes always attached");
    let senses = distribution
        .probs()
        .iter()
        .zip(outcomes)
        .enumerate()
        .map(|(sense, (&probability, &sense_probability))| SenseProbability {
            sense,
            sense_probability,
            probability,
        })
        .collect();
    Ok(Disambiguation {
        senses,
        statistical_outcome: statistical_outcome(tgt, ctx)?,
    })
}

/// Correlation between two relation subsystems of one sense of a word.
/// `report` is `None` when the subsystem dimensions exceed the solver cap;
/// the total correlation is still reported in that case.
#[derive(Debug, Clone)]
pub struct SenseCorrelation {
    pub word: String,
    pub sense: usize,
    pub relations: (String, String),
    pub total: f64,
    pub report: Option<CorrelationReport>,
}

/// Form the pure state of the chosen sense eigenket, trace out every
/// subsystem except the named relation pair, and decompose the remaining
/// correlation.
pub fn sense_correlation(
    lexicon: &Lexicon,
    word: &str,
    sense: usize,
    relation_pair: (&str, &str),
    config: &SolverConfig,
) -> Result<SenseCorrelation, QueryError> {
    let operator = lookup(lexicon, word)?;
    let spectrum = operator.spectrum().map_err(QueryError::Core)?;
    let rank = spectrum.rank();
    if sense >= rank {
        return Err(QueryError::Core(crate::error::CoreError::SenseOutOfRange {
            index: sense,
            rank,
        }));
    }

    let left = subsystem_index(lexicon, relation_pair.0)?;
    let right = subsystem_index(lexicon, relation_pair.1)?;
    if left == right {
        return Err(QueryError::DuplicateRelation(relation_pair.0.to_string()));
    }

    let pure = DensityOperator::from_pure(spectrum.eigenket(sense))
        .and_then(|op| op.with_subsystems(&lexicon.subsystem_dims()))
        .map_err(QueryError::Core)?;
    let reduced = pure.reduce_to(&[left, right]).map_err(QueryError::Core)?;

    let total = total_correlation(&reduced).map_err(QueryError::Core)?;
    let within_cap = reduced
        .subsystem_dims()
        .iter()
        .all(|&d| d <= config.max_subsystem_dim);
    let report = if within_cap {
        Some(classical_correlation(&reduced, config).map_err(QueryError::Core)?)
    } else {
        None
    };

    Ok(SenseCorrelation {
        word: word.to_string(),
        sense,
        relations: (relation_pair.0.to_string(), relation_pair.1.to_string()),
        total,
        report,
    })
}

/// Quantum mutual information (total correlation, in bits) between two
/// relation subsystems of a word's operator.
pub fn subsystem_mutual_information(
    lexicon: &Lexicon,
    word: &str,
    relation_pair: (&str, &str),
) -> Result<f64, QueryError> {
    let operator = lookup(lexicon, word)?;
    let left = subsystem_index(lexicon, relation_pair.0)?;
    let right = subsystem_index(lexicon, relation_pair.1)?;
    if left == right {
        return Err(QueryError::DuplicateRelation(relation_pair.0.to_string()));
    }
    let reduced = operator.reduce_to(&[left, right]).map_err(QueryError::Core)?;
    Ok(total_correlation(&reduced)?)
}

/// The `count` most similar words to `word`, by fidelity, descending; ties
/// break alphabetically. The word itself is excluded.
pub fn top_similar(
    lexicon: &Lexicon,
    word: &str,
    count: usize,
) -> Result<Vec<(String, f64)>, QueryError> {
    let target = lookup(lexicon, word)?;
    let mut scored: Vec<(String, f64)> = Vec::new();
    for (other, operator) in lexicon.entries() {
        if other == word {
            continue;
        }
        scored.push((other.to_string(), fidelity(target, operator)?));
    }
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    scored.truncate(count);
    Ok(scored)
}

/// Look a word up, or fail with nearest-spelling suggestions.
pub fn lookup<'a>(lexicon: &'a Lexicon, word: &str) -> Result<&'a DensityOperator, QueryError> {
    lexicon.get(word).ok_or_else(|| QueryError::UnknownWord {
        word: word.to_string(),
        suggestions: suggestions(lexicon, word),
    })
}

/// Up to three closest spellings by edit distance.
pub fn suggestions(lexicon: &Lexicon, word: &str) -> Vec<String> {
    let cutoff = (word.chars().count() / 3).max(2);
    let mut scored: Vec<(usize, &str)> = lexicon
        .words()
        .map(|candidate| (edit_distance(word, candidate), candidate))
        .filter(|&(distance, _)| distance <= cutoff)
        .collect();
    scored.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(b.1)));
    scored.into_iter().take(3).map(|(_, w)| w.to_string()).collect()
}

fn subsystem_index(lexicon: &Lexicon, label: &str) -> Result<usize, QueryError> {
    lexicon
        .vocabularies()
        .iter()
        .position(|v| v.relation() == label)
        .ok_or_else(|| QueryError::UnknownRelation {
            label: label.to_string(),
            available: lexicon
                .vocabularies()
                .iter()
                .map(|v| v.relation().to_string())
                .collect(),
        })
}

fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut previous: Vec<usize> = (0..=b.len()).collect();
    let mut current = vec![0usize; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        current[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let substitution = previous[j] + usize::from(ca != cb);
            current[j + 1] = substitution.min(previous[j + 1] + 1).min(current[j] + 1);
        }
        std::mem::swap(&mut previous, &mut current);
    }
    previous[b.len()]
}
