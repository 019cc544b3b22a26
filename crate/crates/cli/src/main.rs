//! `dsem`: build density-operator lexicons from dependency-parsed corpora
//! and query information-theoretic measures over them.
//!
//! Exit codes: 0 success, 1 usage, 2 input/parse, 3 capacity/io,
//! 4 unknown word or relation, 5 self-test failure.

mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dsem_core::conllu::parse_corpus;
use dsem_core::error::{CoreError, CorpusError, LexiconError, QueryError};
use dsem_core::ingest::{build_lexicon, IngestConfig};
use dsem_core::quantum::von_neumann_entropy;
use dsem_core::selftest::{self, FaultMode, SelftestConfig};
use dsem_core::semantics;
use dsem_core::{Lexicon, SolverConfig};

use format::{fmt_value, sig9, CorrelationDetails, QueryReport, ReportValue, SenseLine, TopkLine};

#[derive(Parser)]
#[command(
    name = "dsem",
    version,
    about = "Word meanings as density operators: lexicon building and information-theoretic queries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a lexicon from CoNLL-U corpora and write a .dsem file
    Build(BuildArgs),
    /// Run a measure query against a lexicon file
    Query(QueryArgs),
    /// Run the embedded invariant suite
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// CoNLL-U corpus files (documents split at `# newdoc` or file ends)
    #[arg(required = true)]
    corpus: Vec<PathBuf>,

    /// Output lexicon path
    #[arg(short, long)]
    output: PathBuf,

    /// Dependency relations defining the tensor factors, in order
    #[arg(long, value_delimiter = ',', default_value = "nsubj,obj,amod")]
    relations: Vec<String>,

    /// Vocabulary words per relation (each factor gets one extra null
    /// dimension)
    #[arg(long, default_value_t = 9)]
    dim: usize,

    /// Collect only dependents as context neighbors, not heads
    #[arg(long)]
    dependents_only: bool,

    /// Minimum corpus count for a lemma to receive an operator
    #[arg(long, default_value_t = 1)]
    min_count: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args)]
struct QueryArgs {
    /// Lexicon file written by `dsem build`
    lexicon: PathBuf,

    #[command(subcommand)]
    query: QueryCommand,

    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutputFormat,

    /// Seed for every stochastic component (entanglement-solver restarts)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Entanglement-solver restarts
    #[arg(long, global = true, default_value_t = 16)]
    restarts: usize,

    /// Entanglement-solver sweep cap per restart
    #[arg(long, global = true, default_value_t = 5000)]
    max_sweeps: usize,
}

#[derive(Subcommand)]
enum QueryCommand {
    /// Word ambiguity: von Neumann entropy in bits
    Entropy { word: String },
    /// Fidelity between two word operators, in `[0,1]`
    Similarity { word1: String, word2: String },
    /// How well word1 covers word2's meaning spectrum (lower is better)
    Entails { word1: String, word2: String },
    /// Measure the target word's senses against a context word
    Disambiguate { context: String, target: String },
    /// Correlation decomposition of one sense across a relation pair
    Correlate {
        word: String,
        /// Sense index into the word's descending spectrum
        #[arg(long)]
        sense: usize,
        /// Two relation labels, comma separated
        #[arg(long)]
        pair: String,
    },
    /// Quantum mutual information between two relation subsystems
    Mutinfo {
        word: String,
        /// Two relation labels, comma separated
        #[arg(long)]
        pair: String,
    },
    /// The k most similar words by fidelity
    Topk {
        word: String,
        #[arg(short = 'k', long = "k", default_value_t = 5)]
        count: usize,
    },
}

#[derive(Args)]
struct SelftestArgs {
    /// Seed for every randomized check and the entanglement solver
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Entanglement-solver restarts
    #[arg(long, default_value_t = 16)]
    restarts: usize,

    /// Entanglement-solver sweep cap per restart
    #[arg(long, default_value_t = 5000)]
    max_sweeps: usize,

    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let code = match error.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };

    let outcome = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Query(args) => cmd_query(args),
        Command::Selftest(args) => cmd_selftest(args),
    };

    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<CorpusError> for Failure {
    fn from(error: CorpusError) -> Self {
        Self {
            code: 2,
            message: error.to_string(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(error: CoreError) -> Self {
        let code = match error {
            CoreError::Capacity { .. } | CoreError::SolverCap { .. } => 3,
            _ => 1,
        };
        Self {
            code,
            message: error.to_string(),
        }
    }
}

impl From<LexiconError> for Failure {
    fn from(error: LexiconError) -> Self {
        let code = match error {
            LexiconError::Io(_) => 3,
            LexiconError::Core(CoreError::Capacity { .. } | CoreError::SolverCap { .. }) => 3,
            _ => 2,
        };
        Self {
            code,
            message: error.to_string(),
        }
    }
}

impl From<QueryError> for Failure {
    fn from(error: QueryError) -> Self {
        match error {
            QueryError::UnknownWord { .. } | QueryError::UnknownRelation { .. } => Self {
                code: 4,
                message: error.to_string(),
            },
            QueryError::DuplicateRelation(_) => Self {
                code: 1,
                message: error.to_string(),
            },
            QueryError::Core(core) => core.into(),
        }
    }
}

fn cmd_build(args: BuildArgs) -> Result<u8, Failure> {
    let mut hasher = crc32fast::Hasher::new();
    let mut documents = Vec::new();
    for path in &args.corpus {
        let bytes = std::fs::read(path).map_err(|e| Failure {
            code: 3,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        hasher.update(&bytes);
        let parsed = parse_corpus(bytes.as_slice()).map_err(|e| Failure {
            code: 2,
            message: format!("{}: {e}", path.display()),
        })?;
        documents.extend(parsed);
    }
    if documents.is_empty() {
        return Err(Failure::input("no documents in the given corpora"));
    }

    let config = IngestConfig {
        relations: args.relations,
        vocabulary_size: args.dim,
        include_head_contexts: !args.dependents_only,
        min_count: args.min_count,
    };
    let lexicon = build_lexicon(&documents, &config, hasher.finalize())?;
    lexicon.save(&args.output)?;

    println!("lexicon {}", args.output.display());
    println!("words {}", lexicon.len());
    println!("space_dim {}", lexicon.space_dim());
    for vocabulary in lexicon.vocabularies() {
        println!("subsystem {} {}", vocabulary.relation(), vocabulary.dim());
    }
    println!("corpus_crc {:08x}", lexicon.provenance().corpus_crc);
    println!("lexicon_hash {:08x}", lexicon.content_crc());
    for (word, operator) in lexicon.entries() {
        let rank = operator.spectrum().map_err(Failure::from)?.rank();
        let entropy = von_neumann_entropy(operator)?;
        println!("word {word} rank {rank} entropy {}", fmt_value(sig9(entropy)));
    }
    Ok(0)
}

fn parse_relation_pair(raw: &str) -> Result<(String, String), Failure> {
    let mut parts = raw.split(',').map(str::trim);
    match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) if !a.is_empty() && !b.is_empty() => {
            Ok((a.to_string(), b.to_string()))
        }
        _ => Err(Failure::usage(format!(
            "--pair expects two comma-separated relation labels, got {raw:?}"
        ))),
    }
}

fn cmd_query(args: QueryArgs) -> Result<u8, Failure> {
    let lexicon = Lexicon::load(&args.lexicon)?;
    let lexicon_hash = format!("{:08x}", lexicon.content_crc());
    let solver = SolverConfig {
        restarts: args.restarts,
        max_sweeps: args.max_sweeps,
        seed: args.seed,
        ..SolverConfig::default()
    };

    let report = match &args.query {
        QueryCommand::Entropy { word } => QueryReport {
            measure: "entropy",
            args: vec![word.clone()],
            lexicon_hash,
            seed: args.seed,
            value: ReportValue::from(semantics::ambiguity(&lexicon, word)?),
            senses: None,
            correlation: None,
            topk: None,
        },
        QueryCommand::Similarity { word1, word2 } => QueryReport {
            measure: "similarity",
            args: vec![word1.clone(), word2.clone()],
            lexicon_hash,
            seed: args.seed,
            value: ReportValue::from(semantics::similarity(&lexicon, word1, word2)?),
            senses: None,
            correlation: None,
            topk: None,
        },
        QueryCommand::Entails { word1, word2 } => QueryReport {
            measure: "entails",
            args: vec![word1.clone(), word2.clone()],
            lexicon_hash,
            seed: args.seed,
            value: ReportValue::from(semantics::entailment_score(&lexicon, word1, word2)?),
            senses: None,
            correlation: None,
            topk: None,
        },
        QueryCommand::Disambiguate { context, target } => {
            let result = semantics::disambiguate(&lexicon, context, target)?;
            // Rows that are neither a sense (zero eigenvalue) nor assigned
            // any probability carry no information; drop them from output.
            let senses = result
                .senses
                .iter()
                .filter(|s| s.sense_probability > 1e-12 || s.probability > 1e-12)
                .map(|s| SenseLine {
                    sense: s.sense,
                    sense_probability: sig9(s.sense_probability),
                    probability: sig9(s.probability),
                })
                .collect();
            QueryReport {
                measure: "disambiguate",
                args: vec![context.clone(), target.clone()],
                lexicon_hash,
                seed: args.seed,
                value: ReportValue::from(result.statistical_outcome),
                senses: Some(senses),
                correlation: None,
                topk: None,
            }
        }
        QueryCommand::Correlate { word, sense, pair } => {
            let (left, right) = parse_relation_pair(pair)?;
            let result =
                semantics::sense_correlation(&lexicon, word, *sense, (&left, &right), &solver)?;
            QueryReport {
                measure: "correlate",
                args: vec![word.clone(), sense.to_string(), left, right],
                lexicon_hash,
                seed: args.seed,
                value: ReportValue::from(result.total),
                senses: None,
                correlation: Some(CorrelationDetails {
                    total: sig9(result.total),
                    quantum: result.report.as_ref().map(|r| sig9(r.quantum)),
                    classical: result.report.as_ref().map(|r| sig9(r.classical)),
                    converged: result.report.as_ref().map(|r| r.converged),
                    solver_iterations: result.report.as_ref().map(|r| r.solver_iterations),
                }),
                topk: None,
            }
        }
        QueryCommand::Mutinfo { word, pair } => {
            let (left, right) = parse_relation_pair(pair)?;
            QueryReport {
                measure: "mutinfo",
                args: vec![word.clone(), left.clone(), right.clone()],
                lexicon_hash,
                seed: args.seed,
                value: ReportValue::from(semantics::subsystem_mutual_information(
                    &lexicon,
                    word,
                    (&left, &right),
                )?),
                senses: None,
                correlation: None,
                topk: None,
            }
        }
        QueryCommand::Topk { word, count } => {
            let ranked = semantics::top_similar(&lexicon, word, *count)?;
            QueryReport {
                measure: "topk",
                args: vec![word.clone(), count.to_string()],
                lexicon_hash,
                seed: args.seed,
                value: ReportValue::from(ranked.len() as f64),
                senses: None,
                correlation: None,
                topk: Some(
                    ranked
                        .into_iter()
                        .enumerate()
                        .map(|(i, (word, value))| TopkLine {
                            rank: i + 1,
                            word,
                            value: sig9(value),
                        })
                        .collect(),
                ),
            }
        }
    };

    match args.format {
        OutputFormat::Text => print!("{}", report.to_text()),
        OutputFormat::Json => println!("{}", report.to_json()),
    }
    Ok(0)
}

fn cmd_selftest(args: SelftestArgs) -> Result<u8, Failure> {
    let fault = match args.inject_fault.as_deref() {
        None => None,
        Some("entropy-sign") => Some(FaultMode::EntropySign),
        Some(other) => {
            return Err(Failure::usage(format!("unknown fault mode {other:?}")));
        }
    };
    let config = SelftestConfig {
        seed: args.seed,
        restarts: args.restarts,
        max_sweeps: args.max_sweeps,
        fault,
    };

    let results = selftest::run(&config);
    let mut failures = Vec::new();
    for check in &results {
        let status = if check.passed { "PASS" } else { "FAIL" };
        println!("check {}: {status} ({})", check.name, check.detail);
        if !check.passed {
            failures.push(check.name);
        }
    }
    println!(
        "selftest: {}/{} checks passed",
        results.len() - failures.len(),
        results.len()
    );
    if failures.is_empty() {
        Ok(0)
    } else {
        eprintln!("failed checks: {}", failures.join(", "));
        Ok(5)
    }
}
