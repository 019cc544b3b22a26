//! Property suites over randomized inputs: spectral round trips, operator
//! function inverses, tensor/partial-trace consistency, and the classical
//! measure identities.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dsem_core::classical::{
    bhattacharyya, kl_divergence, mutual_information, shannon_entropy, JointDistribution,
    ProbabilityDistribution,
};
use dsem_core::operator::{
    commutator_deviation, spectral_decompose, Complex64, ComplexMatrix, DensityOperator,
};
use dsem_core::sampling;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random Hermitian matrix driven by a proptest-chosen seed and dimension.
fn hermitian(seed: u64, dim: usize) -> ComplexMatrix {
    let mut rng = rng(seed);
    let entries: Vec<Complex64> = (0..dim * dim)
        .map(|_| {
            Complex64::new(
                rand::Rng::random_range(&mut rng, -1.0..1.0),
                rand::Rng::random_range(&mut rng, -1.0..1.0),
            )
        })
        .collect();
    let raw = ComplexMatrix::from_row_major(dim, dim, entries).unwrap();
    raw.add(&raw.adjoint()).scale(0.5)
}

fn normalized(weights: Vec<f64>) -> Vec<f64> {
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / total).collect()
}

fn distribution_strategy(max_len: usize) -> impl Strategy<Value = ProbabilityDistribution> {
    prop::collection::vec(1e-6..1.0f64, 1..=max_len)
        .prop_map(|raw| ProbabilityDistribution::new(normalized(raw)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn spectral_round_trip_reconstructs_hermitian_input(seed in any::<u64>(), dim in 1usize..=12) {
        let matrix = hermitian(seed, dim);
        let spectrum = spectral_decompose(&matrix).unwrap();
        prop_assert!(spectrum.reconstruct().max_abs_diff(&matrix) < 1e-8);
        prop_assert!(spectrum.orthonormality_deviation() < 1e-8);
        for window in spectrum.eigenvalues().windows(2) {
            prop_assert!(window[0] >= window[1]);
        }
    }

    #[test]
    fn operator_sqrt_squares_to_input(seed in any::<u64>(), dim in 1usize..=8) {
        let state = sampling::random_density(&mut rng(seed), dim);
        let root = state.sqrt().unwrap();
        prop_assert!(root.mul(&root).max_abs_diff(state.matrix()) < 1e-8);
        prop_assert!(root.hermitian_deviation(1e-9).is_none());
    }

    #[test]
    fn operator_log2_inverts_exponentiation_on_support(seed in any::<u64>(), dim in 1usize..=8) {
        let state = sampling::random_density(&mut rng(seed), dim);
        let spectrum = state.spectrum().unwrap();
        // 2^(log2 A) rebuilt eigenvalue-wise over the support.
        let log = state.log2().unwrap();
        let log_spectrum = spectral_decompose(&log).unwrap();
        let rebuilt = log_spectrum.map_eigenvalues(|l| Some(2f64.powf(l)));
        // Full-support states only: zero eigenvalues would map to 2^0.
        prop_assume!(spectrum.rank() == dim);
        prop_assert!(rebuilt.max_abs_diff(state.matrix()) < 1e-7);
    }

    #[test]
    fn partial_trace_inverts_tensor_product(seed in any::<u64>(), da in 2usize..=8, db in 2usize..=8) {
        let mut rng = rng(seed);
        let a = sampling::random_density(&mut rng, da);
        let b = sampling::random_density(&mut rng, db);
        let joint = a.tensor(&b).unwrap();
        prop_assert!(joint.partial_trace(0).unwrap().matrix().max_abs_diff(a.matrix()) < 1e-9);
        prop_assert!(joint.partial_trace(1).unwrap().matrix().max_abs_diff(b.matrix()) < 1e-9);
    }

    #[test]
    fn tensor_product_of_states_is_a_state(seed in any::<u64>(), da in 1usize..=6, db in 1usize..=6) {
        let mut rng = rng(seed);
        let a = sampling::random_density(&mut rng, da);
        let b = sampling::random_density(&mut rng, db);
        let joint = a.tensor(&b).unwrap();
        prop_assert!(joint.validate().is_ok());
    }

    #[test]
    fn commutator_deviation_is_symmetric(seed in any::<u64>(), dim in 2usize..=6) {
        let mut rng = rng(seed);
        let a = sampling::random_density(&mut rng, dim);
        let b = sampling::random_density(&mut rng, dim);
        let forward = commutator_deviation(&a, &b).unwrap();
        let backward = commutator_deviation(&b, &a).unwrap();
        prop_assert!((forward - backward).abs() < 1e-12);
    }

    #[test]
    fn shannon_entropy_of_uniform_is_log2_n(n in 1usize..=64) {
        let x = ProbabilityDistribution::uniform(n);
        prop_assert!((shannon_entropy(&x) - (n as f64).log2()).abs() < 1e-12);
    }

    #[test]
    fn bhattacharyya_is_symmetric_and_bounded(
        raw_x in prop::collection::vec(1e-6..1.0f64, 1..=16),
        raw_y in prop::collection::vec(1e-6..1.0f64, 1..=16),
    ) {
        prop_assume!(raw_x.len() == raw_y.len());
        let x = ProbabilityDistribution::new(normalized(raw_x)).unwrap();
        let y = ProbabilityDistribution::new(normalized(raw_y)).unwrap();
        let forward = bhattacharyya(&x, &y).unwrap();
        let backward = bhattacharyya(&y, &x).unwrap();
        prop_assert!((forward - backward).abs() < 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&forward));
    }

    #[test]
    fn kl_divergence_is_nonnegative_on_full_support(
        raw_x in prop::collection::vec(1e-6..1.0f64, 2..=16),
        seed in any::<u64>(),
    ) {
        let len = raw_x.len();
        let x = ProbabilityDistribution::new(normalized(raw_x)).unwrap();
        let mut rng = rng(seed);
        let y = ProbabilityDistribution::new(sampling::random_spectrum(&mut rng, len)).unwrap();
        let divergence = kl_divergence(&x, &y).unwrap();
        prop_assert!(divergence >= -1e-12);
    }

    #[test]
    fn mutual_information_two_forms_agree(
        raw in prop::collection::vec(1e-9..1.0f64, 4..=256),
        rows in 2usize..=16,
    ) {
        prop_assume!(raw.len() % rows == 0);
        let cols = raw.len() / rows;
        prop_assume!((2..=16).contains(&cols));
        let table = normalized(raw);
        let joint = JointDistribution::new(rows, cols, table.clone()).unwrap();
        let via_entropies = mutual_information(&joint);

        // Independent route: the log-ratio sum.
        let px = joint.marginal_rows();
        let py = joint.marginal_cols();
        let mut via_ratio = 0.0;
        for i in 0..rows {
            for j in 0..cols {
                let p = joint.prob(i, j);
                if p > 1e-15 {
                    via_ratio += p * (p / (px.prob(i) * py.prob(j))).log2();
                }
            }
        }
        prop_assert!((via_entropies - via_ratio).abs() < 1e-10);
        prop_assert!(via_entropies >= -1e-10);
    }

    #[test]
    fn product_distributions_have_zero_mutual_information(
        x in distribution_strategy(8),
        y in distribution_strategy(8),
    ) {
        let joint = JointDistribution::product(&x, &y);
        prop_assert!(mutual_information(&joint).abs() < 1e-10);
    }
}

/// The spot check at the top of the documented dimension range.
#[test]
fn spectral_round_trip_at_dim_64() {
    let matrix = hermitian(0xD5E4, 64);
    let spectrum = spectral_decompose(&matrix).unwrap();
    assert!(spectrum.reconstruct().max_abs_diff(&matrix) < 1e-8);
    assert!(spectrum.orthonormality_deviation() < 1e-8);
}

/// Mixtures of random kets always validate as density operators.
#[test]
fn random_mixtures_validate() {
    let mut rng = rng(99);
    for _ in 0..20 {
        let dim = rand::Rng::random_range(&mut rng, 2..10usize);
        let count = rand::Rng::random_range(&mut rng, 1..6usize);
        let kets: Vec<_> = (0..count).map(|_| sampling::random_ket(&mut rng, dim)).collect();
        let weights: Vec<f64> = (0..count)
            .map(|_| rand::Rng::random_range(&mut rng, 0.1..2.0))
            .collect();
        DensityOperator::from_mixture(&kets, &weights)
            .unwrap()
            .validate()
            .unwrap();
    }
}
