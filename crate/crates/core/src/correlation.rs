//! Correlation decomposition of bipartite states: total correlation from
//! entropies, quantum correlation as the relative-entropy distance to the
//! nearest separable state, and the classical remainder.
//!
//! The entanglement solver minimizes S(C‖D(θ)) over an unconstrained
//! parameterization of mixtures of pure product states, using
//! coordinate-wise pattern search from multiple deterministic random
//! restarts. The objective is convex in D but the parameterization is not,
//! so restarts guard against local minima.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CoreError;
use crate::operator::{Complex64, ComplexMatrix, DensityOperator, Ket};
use crate::quantum::{quantum_relative_entropy, von_neumann_entropy};

/// Epsilon floor inside the objective's logarithm, guarding support
/// violations during the search.
const LOG_FLOOR: f64 = 1e-12;
/// Initial pattern-search step.
const INITIAL_STEP: f64 = 0.5;
/// Smallest pattern-search step before a stalled sweep counts as
/// convergence.
const MIN_STEP: f64 = 1e-5;

/// Convex mixture of pure product states, Σₖ γₖ |uₖ⟩⟨uₖ| ⊗ |vₖ⟩⟨vₖ|.
///
/// Every separable state admits such a decomposition, so restricting the
/// factors to pure states loses no generality.
#[derive(Debug, Clone)]
pub struct SeparableState {
    weights: Vec<f64>,
    left_kets: Vec<Ket>,
    right_kets: Vec<Ket>,
}

impl SeparableState {
    /// Build from component weights and factor kets. Weights must be
    /// nonnegative with positive total (they are normalized to sum to 1);
    /// kets are normalized to unit norm.
    pub fn new(
        weights: Vec<f64>,
        left_kets: Vec<Ket>,
        right_kets: Vec<Ket>,
    ) -> Result<Self, CoreError> {
        if weights.is_empty() {
            return Err(CoreError::EmptyInput {
                what: "separable components",
            });
        }
        if weights.len() != left_kets.len() || weights.len() != right_kets.len() {
            return Err(CoreError::LengthMismatch {
                left: weights.len(),
                right: left_kets.len().max(right_kets.len()),
            });
        }
        if let Some(&w) = weights.iter().find(|&&w| w < 0.0 || !w.is_finite()) {
            return Err(CoreError::NegativeWeight { value: w });
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(CoreError::ZeroWeights);
        }

        let dim_left = left_kets[0].dim();
        let dim_right = right_kets[0].dim();
        let mut unit_left = Vec::with_capacity(left_kets.len());
        let mut unit_right = Vec::with_capacity(right_kets.len());
        for (l, r) in left_kets.iter().zip(&right_kets) {
            if l.dim() != dim_left {
                return Err(CoreError::DimensionMismatch {
                    left: dim_left,
                    right: l.dim(),
                });
            }
            if r.dim() != dim_right {
                return Err(CoreError::DimensionMismatch {
                    left: dim_right,
                    right: r.dim(),
                });
            }
            unit_left.push(l.normalized()?);
            unit_right.push(r.normalized()?);
        }

        Ok(Self {
            weights: weights.into_iter().map(|w| w / total).collect(),
            left_kets: unit_left,
            right_kets: unit_right,
        })
    }

    pub fn component_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn left_kets(&self) -> &[Ket] {
        &self.left_kets
    }

    pub fn right_kets(&self) -> &[Ket] {
        &self.right_kets
    }

    pub fn dim_left(&self) -> usize {
        self.left_kets[0].dim()
    }

    pub fn dim_right(&self) -> usize {
        self.right_kets[0].dim()
    }

    /// Assemble the bipartite density operator the mixture describes.
    pub fn assemble(&self) -> Result<DensityOperator, CoreError> {
        let dim = self.dim_left() * self.dim_right();
        let mut matrix = ComplexMatrix::zeros(dim, dim);
        for ((&weight, left), right) in self
            .weights
            .iter()
            .zip(&self.left_kets)
            .zip(&self.right_kets)
        {
            if weight == 0.0 {
                continue;
            }
            let product = left.tensor(right);
            let factor = Complex64::new(weight, 0.0);
            for i in 0..dim {
                for j in 0..dim {
                    matrix.add_assign_at(
                        i,
                        j,
                        factor * product.amplitude(i) * product.amplitude(j).conj(),
                    );
                }
            }
        }
        DensityOperator::from_matrix(matrix)?
            .with_subsystems(&[self.dim_left(), self.dim_right()])
    }
}

/// Entanglement-solver settings, exposed on the command line.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Independent random restarts of the pattern search.
    pub restarts: usize,
    /// Sweep cap per restart.
    pub max_sweeps: usize,
    /// A sweep improving the objective by less than this relative amount
    /// (at the smallest step size) ends the restart as converged.
    pub rel_tol: f64,
    /// Seed for the deterministic restart streams.
    pub seed: u64,
    /// Largest subsystem dimension the solver accepts per side.
    pub max_subsystem_dim: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_sweeps: 5000,
            rel_tol: 1e-7,
            seed: 0,
            max_subsystem_dim: 4,
        }
    }
}

/// Full correlation decomposition of a bipartite state.
#[derive(Debug, Clone)]
pub struct CorrelationReport {
    /// S(A) + S(B) − S(C), in bits.
    pub total: f64,
    /// Relative entropy of entanglement, in bits.
    pub quantum: f64,
    /// total − quantum, in bits.
    pub classical: f64,
    /// The separable state achieving the reported quantum value.
    pub nearest_separable: SeparableState,
    /// Pattern-search sweeps summed over all restarts.
    pub solver_iterations: usize,
    /// False when every restart hit the sweep cap instead of stalling out.
    pub converged: bool,
}

/// Result of the entanglement minimization alone.
#[derive(Debug, Clone)]
pub struct ReeOutcome {
    pub quantum: f64,
    pub nearest_separable: SeparableState,
    pub solver_iterations: usize,
    pub converged: bool,
}

/// S(A) + S(B) − S(C) for a bipartite state. Equals S(C‖A⊗B); zero exactly
/// for product states.
pub fn total_correlation(c: &DensityOperator) -> Result<f64, CoreError> {
    let (a, b) = reductions(c)?;
    Ok(von_neumann_entropy(&a)? + von_neumann_entropy(&b)? - von_neumann_entropy(c)?)
}

/// Whether the state factors as the tensor product of its reductions, and
/// the largest entry deviation from that product.
pub fn is_product_state(c: &DensityOperator) -> Result<(bool, f64), CoreError> {
    let (a, b) = reductions(c)?;
    let product = a.tensor(&b)?;
    let deviation = c.matrix().max_abs_diff(product.matrix());
    Ok((deviation < 1e-8, deviation))
}

/// Relative entropy of entanglement: the minimum of S(C‖D) over separable
/// states D, found by pattern search from `config.restarts` deterministic
/// random starts.
pub fn relative_entropy_of_entanglement(
    c: &DensityOperator,
    config: &SolverConfig,
) -> Result<ReeOutcome, CoreError> {
    minimize(c, config, None)
}

/// Same minimization, but the first restart starts from the given
/// separable state instead of a random point.
pub fn relative_entropy_of_entanglement_seeded(
    c: &DensityOperator,
    config: &SolverConfig,
    warm_start: &SeparableState,
) -> Result<ReeOutcome, CoreError> {
    minimize(c, config, Some(warm_start))
}

/// Full decomposition: total correlation, its quantum share from the
/// entanglement solver, and the classical remainder.
pub fn classical_correlation(
    c: &DensityOperator,
    config: &SolverConfig,
) -> Result<CorrelationReport, CoreError> {
    let total = total_correlation(c)?;
    let ree = relative_entropy_of_entanglement(c, config)?;
    Ok(CorrelationReport {
        total,
        quantum: ree.quantum,
        classical: total - ree.quantum,
        nearest_separable: ree.nearest_separable,
        solver_iterations: ree.solver_iterations,
        converged: ree.converged,
    })
}

fn reductions(c: &DensityOperator) -> Result<(DensityOperator, DensityOperator), CoreError> {
    match c.subsystem_dims().len() {
        0 | 1 => Err(CoreError::Monopartite),
        2 => Ok((c.reduce_to(&[0])?, c.reduce_to(&[1])?)),
        n => Err(CoreError::NotBipartite { subsystems: n }),
    }
}

// ---------------------------------------------------------------------------
// Solver internals
// ---------------------------------------------------------------------------

/// Unconstrained parameterization of a separable mixture: per component, a
/// softmax weight parameter followed by the raw real/imaginary parts of the
/// two factor kets (normalized on assembly).
struct Parameterization {
    dim_left: usize,
    dim_right: usize,
    components: usize,
}

impl Parameterization {
    fn new(dim_left: usize, dim_right: usize) -> Self {
        let product = dim_left * dim_right;
        Self {
            dim_left,
            dim_right,
            // Carathéodory bound on the separable convex hull.
            components: product * product,
        }
    }

    fn params_per_component(&self) -> usize {
        1 + 2 * self.dim_left + 2 * self.dim_right
    }

    fn param_count(&self) -> usize {
        self.components * self.params_per_component()
    }

    fn random_params(&self, rng: &mut impl Rng) -> Vec<f64> {
        (0..self.param_count())
            .map(|_| rng.random_range(-1.0..1.0))
            .collect()
    }

    /// Encode an existing separable state, padding with near-zero-weight
    /// random components up to the solver's component count.
    fn encode(&self, state: &SeparableState, rng: &mut impl Rng) -> Vec<f64> {
        let mut params = Vec::with_capacity(self.param_count());
        for k in 0..self.components {
            if k < state.component_count() {
                params.push(state.weights()[k].max(1e-12).ln());
                push_ket(&mut params, &state.left_kets()[k], self.dim_left);
                push_ket(&mut params, &state.right_kets()[k], self.dim_right);
            } else {
                params.push(-30.0);
                for _ in 0..2 * (self.dim_left + self.dim_right) {
                    params.push(rng.random_range(-1.0..1.0));
                }
            }
        }
        params
    }

    fn decode(&self, params: &[f64]) -> SeparableState {
        let stride = self.params_per_component();
        let mut raw_weights = Vec::with_capacity(self.components);
        let mut left = Vec::with_capacity(self.components);
        let mut right = Vec::with_capacity(self.components);
        let max_w = params
            .iter()
            .step_by(stride)
            .fold(f64::NEG_INFINITY, |m, &w| m.max(w));
        for k in 0..self.components {
            let chunk = &params[k * stride..(k + 1) * stride];
            raw_weights.push((chunk[0] - max_w).exp());
            left.push(read_ket(&chunk[1..], self.dim_left));
            right.push(read_ket(&chunk[1 + 2 * self.dim_left..], self.dim_right));
        }
        SeparableState::new(raw_weights, left, right)
            .expect("decoded parameters always form a valid mixture")
    }

    /// Assemble the mixture matrix directly, without validation, for the
    /// inner objective loop.
    fn assemble_matrix(&self, params: &[f64]) -> DMatrix<Complex64> {
        let dim = self.dim_left * self.dim_right;
        let stride = self.params_per_component();
        let max_w = params
            .iter()
            .step_by(stride)
            .fold(f64::NEG_INFINITY, |m, &w| m.max(w));
        let mut weights = Vec::with_capacity(self.components);
        let mut total = 0.0;
        for k in 0..self.components {
            let w = (params[k * stride] - max_w).exp();
            total += w;
            weights.push(w);
        }

        let mut matrix = DMatrix::<Complex64>::zeros(dim, dim);
        let mut product = vec![Complex64::new(0.0, 0.0); dim];
        for k in 0..self.components {
            let weight = weights[k] / total;
            if weight < 1e-300 {
                continue;
            }
            let chunk = &params[k * stride..(k + 1) * stride];
            let left = read_ket(&chunk[1..], self.dim_left);
            let right = read_ket(&chunk[1 + 2 * self.dim_left..], self.dim_right);
            let mut idx = 0;
            for i in 0..self.dim_left {
                for j in 0..self.dim_right {
                    product[idx] = left.amplitude(i) * right.amplitude(j);
                    idx += 1;
                }
            }
            for i in 0..dim {
                let wi = product[i] * weight;
                for j in 0..dim {
                    matrix[(i, j)] += wi * product[j].conj();
                }
            }
        }
        matrix
    }
}

fn push_ket(params: &mut Vec<f64>, ket: &Ket, dim: usize) {
    for i in 0..dim {
        let amp = ket.amplitude(i);
        params.push(amp.re);
        params.push(amp.im);
    }
}

/// Read a unit ket from interleaved re/im parameters; a degenerate
/// all-zero chunk falls back to the first basis ket.
fn read_ket(params: &[f64], dim: usize) -> Ket {
    let mut amplitudes = Vec::with_capacity(dim);
    for i in 0..dim {
        amplitudes.push(Complex64::new(params[2 * i], params[2 * i + 1]));
    }
    Ket::unit(amplitudes).unwrap_or_else(|_| Ket::basis(dim, 0))
}

/// S(C‖D(θ)) with an epsilon floor inside the logarithm.
struct Objective {
    c_matrix: DMatrix<Complex64>,
    neg_entropy_c: f64,
    parameterization: Parameterization,
}

impl Objective {
    fn evaluate(&self, params: &[f64]) -> f64 {
        let d = self.parameterization.assemble_matrix(params);
        let eigen = nalgebra::linalg::SymmetricEigen::new(d);
        let dim = self.c_matrix.nrows();
        let mut cross = 0.0;
        for j in 0..dim {
            let column = eigen.eigenvectors.column(j);
            // ⟨d_j| C |d_j⟩
            let mut q = 0.0;
            for r in 0..dim {
                let mut row = Complex64::new(0.0, 0.0);
                for s in 0..dim {
                    row += self.c_matrix[(r, s)] * column[s];
                }
                q += (column[r].conj() * row).re;
            }
            cross += eigen.eigenvalues[j].max(LOG_FLOOR).log2() * q.max(0.0);
        }
        self.neg_entropy_c - cross
    }
}

struct RestartResult {
    value: f64,
    params: Vec<f64>,
    sweeps: usize,
    converged: bool,
}

fn minimize(
    c: &DensityOperator,
    config: &SolverConfig,
    warm_start: Option<&SeparableState>,
) -> Result<ReeOutcome, CoreError> {
    let (a, b) = reductions(c)?;
    for side in [a.dim(), b.dim()] {
        if side > config.max_subsystem_dim {
            return Err(CoreError::SolverCap {
                dim: side,
                cap: config.max_subsystem_dim,
            });
        }
    }
    if let Some(state) = warm_start {
        if state.dim_left() != a.dim() || state.dim_right() != b.dim() {
            return Err(CoreError::DimensionMismatch {
                left: state.dim_left() * state.dim_right(),
                right: c.dim(),
            });
        }
    }

    let parameterization = Parameterization::new(a.dim(), b.dim());
    let objective = Objective {
        c_matrix: c.matrix().as_dmatrix().clone(),
        neg_entropy_c: -von_neumann_entropy(c)?,
        parameterization,
    };

    let restarts = config.restarts.max(1);
    let mut results = Vec::with_capacity(restarts);
    for restart in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(
            config
                .seed
                .wrapping_add((restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        );
        let initial = match (restart, warm_start) {
            (0, Some(state)) => objective.parameterization.encode(state, &mut rng),
            _ => objective.parameterization.random_params(&mut rng),
        };
        results.push(pattern_search(&objective, initial, config));
    }

    // Deterministic reduction: min by value, ties by restart index.
    let best_index = results
        .iter()
        .enumerate()
        .min_by(|(i, x), (j, y)| x.value.total_cmp(&y.value).then(i.cmp(j)))
        .map(|(i, _)| i)
        .expect("at least one restart");
    let best = &results[best_index];

    let nearest = objective.parameterization.decode(&best.params);
    let assembled = nearest.assemble()?;
    let exact = quantum_relative_entropy(c, &assembled)?;
    let quantum = if exact.is_finite() { exact } else { best.value };

    Ok(ReeOutcome {
        quantum: quantum.max(0.0),
        nearest_separable: nearest,
        solver_iterations: results.iter().map(|r| r.sweeps).sum(),
        converged: best.converged,
    })
}

/// Coordinate-wise pattern search with a halving step schedule.
fn pattern_search(objective: &Objective, mut params: Vec<f64>, config: &SolverConfig) -> RestartResult {
    let mut value = objective.evaluate(&params);
    let mut step = INITIAL_STEP;
    let mut sweeps = 0;
    let mut converged = false;

    while sweeps < config.max_sweeps {
        sweeps += 1;
        let before = value;
        for i in 0..params.len() {
            let original = params[i];
            params[i] = original + step;
            let up = objective.evaluate(&params);
            if up < value {
                value = up;
                continue;
            }
            params[i] = original - step;
            let down = objective.evaluate(&params);
            if down < value {
                value = down;
            } else {
                params[i] = original;
            }
        }
        // The true minimum is never below zero; once the objective is
        // numerically indistinguishable from it there is nothing to gain.
        if value < 1e-9 {
            converged = true;
            break;
        }
        // Objective values are bits at desk scale, so the denominator
        // floor makes the stall test behave sensibly near zero.
        let improvement = (before - value) / before.abs().max(1.0);
        if improvement < config.rel_tol {
            if step <= MIN_STEP {
                converged = true;
                break;
            }
            step *= 0.5;
        }
    }

    RestartResult {
        value,
        params,
        sweeps,
        converged,
    }
}
