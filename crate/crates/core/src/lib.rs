//! Word meanings as density operators, with the classical and quantum
//! information measures that act on them.
//!
//! The crate is organized in layers:
//!
//! - [`operator`]: complex linear-algebra substrate (Hermitian
//!   eigendecomposition, operator functions, tensor products, partial
//!   traces, density-operator validation).
//! - [`classical`]: probability distributions and the classical measures
//!   (Shannon entropy, expectation, Bhattacharyya, KL divergence, mutual
//!   information).
//! - [`quantum`]: the quantum counterparts over density operators
//!   (von Neumann entropy, measurement statistics, fidelity, quantum
//!   relative entropy, soft-alignment weights).
//! - [`correlation`]: correlation decomposition of bipartite states,
//!   including relative entropy of entanglement via a multi-restart
//!   pattern-search solver.
//! - [`conllu`] and [`ingest`]: building lexical density operators from
//!   dependency-parsed corpora.
//! - [`lexicon`]: the persistent `.dsem` lexicon format.
//! - [`semantics`]: word-level queries (ambiguity, similarity, entailment,
//!   disambiguation, sense correlation) over a loaded lexicon.
//! - [`oracles`]: independent reference routes for the measures, used by
//!   the self-test harness and the test suites.

pub mod classical;
pub mod conllu;
pub mod correlation;
pub mod error;
pub mod fixtures;
pub mod ingest;
pub mod lexicon;
pub mod operator;
pub mod oracles;
pub mod quantum;
pub mod sampling;
pub mod selftest;
pub mod semantics;

pub use classical::{JointDistribution, ProbabilityDistribution};
pub use correlation::{CorrelationReport, SeparableState, SolverConfig};
pub use error::{CoreError, CorpusError, LexiconError, QueryError};
pub use lexicon::Lexicon;
pub use operator::{Complex64, ComplexMatrix, DensityOperator, Ket, Spectrum};

#[cfg(test)]
pub(crate) fn test_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
