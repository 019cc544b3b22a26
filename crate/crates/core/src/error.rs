//! Error types for the operator, corpus, lexicon and query layers.

use thiserror::Error;

/// Errors from the operator substrate and the measures built on it.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum CoreError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error(
        "matrix is not Hermitian: entries ({row},{col}) and ({col},{row}) differ by {deviation:.3e}"
    )]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("trace is {trace:.12} but a density operator must have trace 1")]
    TraceNotOne { trace: f64 },

    #[error("eigenvalue {value:.6e} is negative beyond tolerance; operator is not positive semidefinite")]
    NegativeEigenvalue { value: f64 },

    #[error("eigendecomposition did not converge")]
    EigenFailure,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("requested dimension {requested} exceeds the configured maximum {limit}")]
    Capacity { requested: usize, limit: usize },

    #[error("subsystem dimensions {dims:?} do not multiply to the operator dimension {dim}")]
    BadSubsystemDims { dims: Vec<usize>, dim: usize },

    #[error("operator is monopartite; the operation needs at least two subsystems")]
    Monopartite,

    #[error("operation needs a bipartite operator but this one has {subsystems} subsystems")]
    NotBipartite { subsystems: usize },

    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },

    #[error("subsystem dimension {dim} exceeds the solver cap {cap}")]
    SolverCap { dim: usize, cap: usize },

    #[error("mixture weights are all zero")]
    ZeroWeights,

    #[error("negative weight {value} in a mixture")]
    NegativeWeight { value: f64 },

    #[error("ket norm is {norm:.6e}; cannot normalize a (near-)zero vector")]
    ZeroNorm { norm: f64 },

    #[error("probabilities sum to {sum:.12}, expected 1")]
    ProbabilitiesNotNormalized { sum: f64 },

    #[error("negative probability {value}")]
    NegativeProbability { value: f64 },

    #[error("distribution has no outcome values attached")]
    MissingOutcomes,

    #[error("distribution lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty input: {what}")]
    EmptyInput { what: &'static str },

    #[error("sense index {index} out of range: operator has {rank} senses")]
    SenseOutOfRange { index: usize, rank: usize },
}

/// Errors while reading a dependency-parsed corpus.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("line {line}: head index {head} out of range for a sentence of {len} tokens")]
    DanglingHead { line: usize, head: usize, len: usize },

    #[error("corpus contains no documents")]
    NoDocuments,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors while saving or loading a `.dsem` lexicon file.
#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("not a lexicon file: bad magic bytes {found:02x?}")]
    BadMagic { found: [u8; 4] },

    #[error("unsupported lexicon format version {found}; this reader supports version {supported}")]
    UnsupportedVersion { found: u32, supported: u32 },

    #[error("checksum mismatch: stored {stored:08x}, computed {computed:08x}")]
    ChecksumMismatch { stored: u32, computed: u32 },

    #[error("file truncated: needed {needed} more bytes for {what}")]
    Truncated { needed: usize, what: &'static str },

    #[error("invalid lexicon contents: {0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors from lexicon-level queries.
#[derive(Debug, Error)]
pub enum QueryError {
    #[error("unknown word {word:?}{}", format_suggestions(suggestions))]
    UnknownWord {
        word: String,
        suggestions: Vec<String>,
    },

    #[error("unknown relation {label:?}; lexicon relations are {available:?}")]
    UnknownRelation {
        label: String,
        available: Vec<String>,
    },

    #[error("relation pair must name two distinct relations, got {0:?} twice")]
    DuplicateRelation(String),

    #[error(transparent)]
    Core(#[from] CoreError),
}

fn format_suggestions(suggestions: &[String]) -> String {
    if suggestions.is_empty() {
        String::new()
    } else {
        format!(" (did you mean: {}?)", suggestions.join(", "))
    }
}
