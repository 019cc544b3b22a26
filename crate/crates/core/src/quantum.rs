//! Quantum generalizations of the classical measures, over density
//! operators: von Neumann entropy, projective-measurement statistics,
//! fidelity, quantum relative entropy and the soft-alignment weight matrix
//! coupling two eigenbases.
//!
//! Every measure here is computed through the spectral decompositions of
//! its arguments; [`crate::oracles`] holds independent trace-form routes
//! used to cross-check them.

use crate::classical::{entropy_of, expected_value, ProbabilityDistribution};
use crate::error::CoreError;
use crate::operator::{DensityOperator, TOL_DEGENERACY, TOL_ZERO};

/// Alignment weights below this threshold are treated as no overlap when
/// detecting support violations.
const WEIGHT_TOL: f64 = 1e-12;

/// −Σᵢ αᵢ log₂ αᵢ over the support. In [0, log₂ dim] bits and invariant
/// under basis change.
pub fn von_neumann_entropy(a: &DensityOperator) -> Result<f64, CoreError> {
    Ok(entropy_of(a.spectrum()?.eigenvalues()))
}

/// Probabilities pᵢ = ⟨aᵢ|B|aᵢ⟩ of measuring observable `a`'s i-th eigenket
/// on state `b`, with `a`'s eigenvalues attached as outcome values.
///
/// When `a` has degenerate eigenvalues the per-eigenket probabilities
/// depend on the basis chosen inside each eigenspace;
/// [`measurement_by_eigenvalue`] gives the basis-invariant aggregation.
pub fn measurement_probabilities(
    a: &DensityOperator,
    b: &DensityOperator,
) -> Result<ProbabilityDistribution, CoreError> {
    check_dims(a, b)?;
    let spectrum = a.spectrum()?;
    let probs: Vec<f64> = spectrum
        .eigenkets()
        .iter()
        .map(|ket| snap_probability(b.matrix().quadratic_form(ket).re))
        .collect();
    ProbabilityDistribution::with_outcomes(probs, spectrum.eigenvalues().to_vec())
}

/// Measurement statistics aggregated per distinct eigenvalue of the
/// observable (eigenvalues closer than the degeneracy tolerance form one
/// level). Basis-invariant even for degenerate observables.
pub fn measurement_by_eigenvalue(
    a: &DensityOperator,
    b: &DensityOperator,
) -> Result<ProbabilityDistribution, CoreError> {
    let per_ket = measurement_probabilities(a, b)?;
    let outcomes = per_ket.outcomes().expect("outcomes always attached");

    let mut grouped_probs: Vec<f64> = Vec::new();
    let mut grouped_values: Vec<f64> = Vec::new();
    for (&p, &value) in per_ket.probs().iter().zip(outcomes) {
        match grouped_values.last() {
            Some(&last) if (last - value).abs() <= TOL_DEGENERACY => {
                *grouped_probs.last_mut().expect("nonempty") += p;
            }
            _ => {
                grouped_values.push(value);
                grouped_probs.push(p);
            }
        }
    }
    ProbabilityDistribution::with_outcomes(grouped_probs, grouped_values)
}

/// Statistical outcome of measuring observable `a` on state `b` without
/// collapse: Σᵢ αᵢ pᵢ = Σᵢⱼ αᵢ βⱼ |⟨aᵢ|bⱼ⟩|².
pub fn statistical_outcome(
    a: &DensityOperator,
    b: &DensityOperator,
) -> Result<f64, CoreError> {
    let distribution = measurement_probabilities(a, b)?;
    expected_value(&distribution)
}

/// Fidelity Σᵢⱼ √(αᵢ βⱼ) |⟨aᵢ|bⱼ⟩|², the overlap-weighted generalization
/// of the Bhattacharyya coefficient. Symmetric, in `[0,1]`, and 1 when the
/// operators are equal.
pub fn fidelity(a: &DensityOperator, b: &DensityOperator) -> Result<f64, CoreError> {
    check_dims(a, b)?;
    let sa = a.spectrum()?;
    let sb = b.spectrum()?;
    let weights = alignment_weights(a, b)?;
    let mut total = 0.0;
    for (i, &alpha) in sa.eigenvalues().iter().enumerate() {
        if alpha <= TOL_ZERO {
            continue;
        }
        for (j, &beta) in sb.eigenvalues().iter().enumerate() {
            if beta <= TOL_ZERO {
                continue;
            }
            total += (alpha * beta).sqrt() * weights[i][j];
        }
    }
    Ok(total.clamp(0.0, 1.0))
}

/// Quantum relative entropy S(A‖B) = Σᵢ αᵢ log₂ αᵢ − Σᵢⱼ αᵢ log₂(βⱼ) Wᵢⱼ,
/// in bits. Returns +∞ when `a`'s support is not contained in `b`'s.
pub fn quantum_relative_entropy(
    a: &DensityOperator,
    b: &DensityOperator,
) -> Result<f64, CoreError> {
    check_dims(a, b)?;
    let betas = b.spectrum()?.eigenvalues().to_vec();
    relative_entropy_with_betas(a, b, &betas, true)
}

/// Relative entropy with `b`'s zero eigenvalues replaced by `epsilon` and
/// renormalized, so the result is finite even across support violations.
pub fn quantum_relative_entropy_smoothed(
    a: &DensityOperator,
    b: &DensityOperator,
    epsilon: f64,
) -> Result<f64, CoreError> {
    check_dims(a, b)?;
    let mut betas: Vec<f64> = b
        .spectrum()?
        .eigenvalues()
        .iter()
        .map(|&v| if v <= TOL_ZERO { epsilon } else { v })
        .collect();
    let total: f64 = betas.iter().sum();
    for beta in &mut betas {
        *beta /= total;
    }
    relative_entropy_with_betas(a, b, &betas, false)
}

fn relative_entropy_with_betas(
    a: &DensityOperator,
    b: &DensityOperator,
    betas: &[f64],
    infinity_on_violation: bool,
) -> Result<f64, CoreError> {
    let sa = a.spectrum()?;
    let weights = alignment_weights(a, b)?;

    let entropy_term: f64 = sa
        .eigenvalues()
        .iter()
        .filter(|&&alpha| alpha > TOL_ZERO)
        .map(|&alpha| alpha * alpha.log2())
        .sum();

    let mut cross_term = 0.0;
    for (i, &alpha) in sa.eigenvalues().iter().enumerate() {
        if alpha <= TOL_ZERO {
            continue;
        }
        for (j, &beta) in betas.iter().enumerate() {
            let weight = weights[i][j];
            if weight <= WEIGHT_TOL {
                continue;
            }
            if beta <= TOL_ZERO {
                if infinity_on_violation {
                    return Ok(f64::INFINITY);
                }
                continue;
            }
            cross_term += alpha * beta.log2() * weight;
        }
    }

    // Nonnegative up to numerical noise; snap the noise away.
    let value = entropy_term - cross_term;
    Ok(if value < 0.0 && value > -1e-9 { 0.0 } else { value })
}

/// The weight matrix Wᵢⱼ = |⟨aᵢ|bⱼ⟩|² coupling the eigenbases of the two
/// operators. Rows index `a`'s eigenkets, columns `b`'s. Doubly stochastic
/// because both bases are orthonormal and complete.
pub fn soft_alignment_weights(
    a: &DensityOperator,
    b: &DensityOperator,
) -> Result<Vec<Vec<f64>>, CoreError> {
    check_dims(a, b)?;
    alignment_weights(a, b)
}

fn alignment_weights(
    a: &DensityOperator,
    b: &DensityOperator,
) -> Result<Vec<Vec<f64>>, CoreError> {
    let sa = a.spectrum()?;
    let sb = b.spectrum()?;
    Ok(sa
        .eigenkets()
        .iter()
        .map(|ai| {
            sb.eigenkets()
                .iter()
                .map(|bj| snap_probability(ai.inner_product(bj).norm_sqr()))
                .collect()
        })
        .collect())
}

fn snap_probability(p: f64) -> f64 {
    if p < 0.0 && p > -1e-9 {
        0.0
    } else if p > 1.0 && p < 1.0 + 1e-9 {
        1.0
    } else {
        p
    }
}

fn check_dims(a: &DensityOperator, b: &DensityOperator) -> Result<(), CoreError> {
    if a.dim() != b.dim() {
        return Err(CoreError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}
