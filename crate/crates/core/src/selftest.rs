//! Embedded invariant suite behind the CLI's `selftest` command: classical
//! reduction laws, trace-form oracles, generalization-map identities,
//! measurement normalization, and the Bell-state entanglement benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classical::{bhattacharyya, kl_divergence, ProbabilityDistribution};
use crate::correlation::{
    relative_entropy_of_entanglement, total_correlation, SeparableState, SolverConfig,
};
use crate::operator::{DensityOperator, Ket};
use crate::oracles;
use crate::quantum::{
    fidelity, measurement_probabilities, quantum_relative_entropy, statistical_outcome,
    von_neumann_entropy,
};
use crate::sampling;

/// Deliberate fault injections used to demonstrate that the harness
/// catches broken invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaultMode {
    /// Flip the sign of entropy values inside the nonnegativity check.
    EntropySign,
}

#[derive(Debug, Clone)]
pub struct SelftestConfig {
    pub seed: u64,
    pub restarts: usize,
    pub max_sweeps: usize,
    pub fault: Option<FaultMode>,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        let solver = SolverConfig::default();
        Self {
            seed: 0,
            restarts: solver.restarts,
            max_sweeps: solver.max_sweeps,
            fault: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Run every embedded check. All pass on a healthy build.
pub fn run(config: &SelftestConfig) -> Vec<CheckResult> {
    vec![
        entropy_nonnegativity(config),
        classical_reduction(config),
        trace_oracles(config),
        generalization_maps(config),
        measurement_normalization(config),
        partial_trace_roundtrip(config),
        bell_entanglement(config),
        separable_entanglement(config),
    ]
}

fn rng_for(config: &SelftestConfig, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(stream.wrapping_mul(0x9E37_79B9)))
}

fn entropy_nonnegativity(config: &SelftestConfig) -> CheckResult {
    let mut rng = rng_for(config, 1);
    let flip = if config.fault == Some(FaultMode::EntropySign) {
        -1.0
    } else {
        1.0
    };
    let mut worst: f64 = f64::INFINITY;
    for dim in 2..=6 {
        for _ in 0..8 {
            let state = sampling::random_density(&mut rng, dim);
            let entropy = flip * von_neumann_entropy(&state).expect("valid state");
            worst = worst.min(entropy);
            if entropy < -1e-12 || entropy > (dim as f64).log2() + 1e-9 {
                return CheckResult {
                    name: "entropy-nonnegativity",
                    passed: false,
                    detail: format!("entropy {entropy:.9} out of [0, log2 dim] at dim {dim}"),
                };
            }
        }
    }
    CheckResult {
        name: "entropy-nonnegativity",
        passed: true,
        detail: format!("min entropy {worst:.9}"),
    }
}

fn classical_reduction(config: &SelftestConfig) -> CheckResult {
    let mut rng = rng_for(config, 2);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let dim = 2 + (rand::Rng::random_range(&mut rng, 0..7usize));
        let (a, b, spectrum_a, spectrum_b) = sampling::random_commuting_pair(&mut rng, dim);
        let (aligned_a, aligned_b) = align_descending(&spectrum_a, &spectrum_b);
        let x = ProbabilityDistribution::new(aligned_a).expect("normalized");
        let y = ProbabilityDistribution::new(aligned_b).expect("normalized");

        let fidelity_gap =
            (fidelity(&a, &b).expect("same dims") - bhattacharyya(&x, &y).expect("same len")).abs();
        let divergence_gap = (quantum_relative_entropy(&a, &b).expect("same dims")
            - kl_divergence(&x, &y).expect("same len"))
        .abs();
        let outcome_classical: f64 = x
            .probs()
            .iter()
            .zip(y.probs())
            .map(|(&p, &q)| p * q)
            .sum();
        let outcome_gap =
            (statistical_outcome(&a, &b).expect("same dims") - outcome_classical).abs();
        worst = worst.max(fidelity_gap).max(divergence_gap).max(outcome_gap);
    }
    CheckResult {
        name: "classical-reduction",
        passed: worst <= 1e-8,
        detail: format!("max deviation {worst:.3e}"),
    }
}

/// A commuting pair shares its eigenbasis, so the classical comparison
/// aligns both spectra by the shared basis vector, ordered the way the
/// spectral decomposition orders them (descending in the first spectrum,
/// ties following the second).
fn align_descending(spectrum_a: &[f64], spectrum_b: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut order: Vec<usize> = (0..spectrum_a.len()).collect();
    order.sort_by(|&i, &j| {
        spectrum_a[j]
            .total_cmp(&spectrum_a[i])
            .then(spectrum_b[j].total_cmp(&spectrum_b[i]))
    });
    (
        order.iter().map(|&i| spectrum_a[i]).collect(),
        order.iter().map(|&i| spectrum_b[i]).collect(),
    )
}

fn trace_oracles(config: &SelftestConfig) -> CheckResult {
    let mut rng = rng_for(config, 3);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let dim = 2 + (rand::Rng::random_range(&mut rng, 0..7usize));
        let a = sampling::random_density(&mut rng, dim);
        let b = sampling::random_density(&mut rng, dim);
        let entropy_gap = (von_neumann_entropy(&a).expect("valid")
            - oracles::entropy_trace(&a).expect("valid"))
        .abs();
        let fidelity_gap = (fidelity(&a, &b).expect("same dims")
            - oracles::fidelity_trace(&a, &b).expect("same dims"))
        .abs();
        let outcome_gap = (statistical_outcome(&a, &b).expect("same dims")
            - oracles::statistical_outcome_trace(&a, &b).expect("same dims"))
        .abs();
        worst = worst.max(entropy_gap).max(fidelity_gap).max(outcome_gap);
    }
    CheckResult {
        name: "trace-oracles",
        passed: worst <= 1e-8,
        detail: format!("max deviation {worst:.3e}"),
    }
}

fn generalization_maps(config: &SelftestConfig) -> CheckResult {
    let mut rng = rng_for(config, 4);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let dim = 2 + (rand::Rng::random_range(&mut rng, 0..7usize));
        let a = sampling::random_density(&mut rng, dim);
        let b = sampling::random_density(&mut rng, dim);
        let outcome_gap = (statistical_outcome(&a, &b).expect("same dims")
            - oracles::outcome_via_alignment_map(&a, &b).expect("same dims"))
        .abs();
        let fidelity_gap = (fidelity(&a, &b).expect("same dims")
            - oracles::fidelity_via_alignment_map(&a, &b).expect("same dims"))
        .abs();
        let divergence_gap = (quantum_relative_entropy(&a, &b).expect("same dims")
            - oracles::relative_entropy_via_alignment_map(&a, &b).expect("same dims"))
        .abs();
        worst = worst.max(outcome_gap).max(fidelity_gap).max(divergence_gap);
    }
    CheckResult {
        name: "generalization-maps",
        passed: worst <= 1e-8,
        detail: format!("max deviation {worst:.3e}"),
    }
}

fn measurement_normalization(config: &SelftestConfig) -> CheckResult {
    let mut rng = rng_for(config, 5);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let dim = 2 + (rand::Rng::random_range(&mut rng, 0..7usize));
        let a = sampling::random_density(&mut rng, dim);
        let b = sampling::random_density(&mut rng, dim);
        let distribution = measurement_probabilities(&a, &b).expect("same dims");
        let total: f64 = distribution.probs().iter().sum();
        worst = worst.max((total - 1.0).abs());
    }
    CheckResult {
        name: "measurement-normalization",
        passed: worst <= 1e-9,
        detail: format!("max |sum - 1| = {worst:.3e}"),
    }
}

fn partial_trace_roundtrip(config: &SelftestConfig) -> CheckResult {
    let mut rng = rng_for(config, 6);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let da = 2 + (rand::Rng::random_range(&mut rng, 0..3usize));
        let db = 2 + (rand::Rng::random_range(&mut rng, 0..3usize));
        let a = sampling::random_density(&mut rng, da);
        let b = sampling::random_density(&mut rng, db);
        let joint = a.tensor(&b).expect("within capacity");
        let back = joint.partial_trace(0).expect("bipartite");
        worst = worst.max(back.matrix().max_abs_diff(a.matrix()));
    }
    CheckResult {
        name: "partial-trace-roundtrip",
        passed: worst <= 1e-9,
        detail: format!("max deviation {worst:.3e}"),
    }
}

fn solver_config(config: &SelftestConfig) -> SolverConfig {
    SolverConfig {
        restarts: config.restarts,
        max_sweeps: config.max_sweeps,
        seed: config.seed,
        ..SolverConfig::default()
    }
}

/// Bell state: total correlation exactly 2 bits, entanglement 1 bit.
fn bell_entanglement(config: &SelftestConfig) -> CheckResult {
    let bell = bell_state();
    let total = total_correlation(&bell).expect("bipartite");
    let ree = relative_entropy_of_entanglement(&bell, &solver_config(config)).expect("qubits");
    let passed = (total - 2.0).abs() <= 1e-6 && (ree.quantum - 1.0).abs() <= 0.02;
    CheckResult {
        name: "bell-entanglement",
        passed,
        detail: format!("total {:.9}, quantum {:.9}", total, ree.quantum),
    }
}

/// The classically correlated mixture ½(|00⟩⟨00| + |11⟩⟨11|) is separable,
/// so its entanglement is zero.
fn separable_entanglement(config: &SelftestConfig) -> CheckResult {
    let mixture = SeparableState::new(
        vec![0.5, 0.5],
        vec![Ket::basis(2, 0), Ket::basis(2, 1)],
        vec![Ket::basis(2, 0), Ket::basis(2, 1)],
    )
    .expect("well-formed mixture")
    .assemble()
    .expect("valid state");
    let ree =
        relative_entropy_of_entanglement(&mixture, &solver_config(config)).expect("qubits");
    CheckResult {
        name: "separable-entanglement",
        passed: ree.quantum <= 0.01,
        detail: format!("quantum {:.9}", ree.quantum),
    }
}

/// (|00⟩ + |11⟩)/√2 as a bipartite density operator.
pub fn bell_state() -> DensityOperator {
    let ket = Ket::unit_from_real(&[1.0, 0.0, 0.0, 1.0]).expect("nonzero");
    DensityOperator::from_pure(&ket)
        .expect("pure state")
        .with_subsystems(&[2, 2])
        .expect("4 = 2x2")
}
