//! Independent reference routes for the measures in [`crate::quantum`].
//!
//! Each function here reaches the same quantity as its counterpart through
//! a different computational path (matrix traces instead of spectral sums,
//! or the classical formulas fed with soft-alignment substitutions). They
//! exist so the self-test harness and the test suites can cross-check the
//! primary implementations; nothing in the crate computes through them.

use crate::error::CoreError;
use crate::operator::{DensityOperator, TOL_ZERO};
use crate::quantum::soft_alignment_weights;

/// Tr(A·B), the trace route to the statistical outcome. No
/// eigendecomposition involved.
pub fn statistical_outcome_trace(
    a: &DensityOperator,
    b: &DensityOperator,
) -> Result<f64, CoreError> {
    check_dims(a, b)?;
    Ok(a.matrix().mul(b.matrix()).trace().re)
}

/// Tr(√A·√B), the trace route to fidelity.
pub fn fidelity_trace(a: &DensityOperator, b: &DensityOperator) -> Result<f64, CoreError> {
    check_dims(a, b)?;
    Ok(a.sqrt()?.mul(&b.sqrt()?).trace().re)
}

/// −Tr(A·log₂A), the trace route to von Neumann entropy.
pub fn entropy_trace(a: &DensityOperator) -> Result<f64, CoreError> {
    Ok(-a.matrix().mul(&a.log2()?).trace().re)
}

/// Tr(A·log₂A) − Tr(A·log₂B), the trace route to relative entropy. Only
/// meaningful when `a`'s support lies inside `b`'s (the operator logarithm
/// is taken on the support), so callers compare it on full-support cases.
pub fn relative_entropy_trace(
    a: &DensityOperator,
    b: &DensityOperator,
) -> Result<f64, CoreError> {
    check_dims(a, b)?;
    let first = a.matrix().mul(&a.log2()?).trace().re;
    let second = a.matrix().mul(&b.log2()?).trace().re;
    Ok(first - second)
}

/// Statistical outcome obtained by substituting the soft-alignment image
/// βᵢ ↦ Σⱼ βⱼ Wᵢⱼ into the classical expectation Σᵢ αᵢ βᵢ.
pub fn outcome_via_alignment_map(
    a: &DensityOperator,
    b: &DensityOperator,
) -> Result<f64, CoreError> {
    let alphas = a.spectrum()?.eigenvalues().to_vec();
    let betas = b.spectrum()?.eigenvalues().to_vec();
    let weights = soft_alignment_weights(a, b)?;
    Ok(alphas
        .iter()
        .enumerate()
        .map(|(i, &alpha)| {
            let mapped: f64 = betas
                .iter()
                .enumerate()
                .map(|(j, &beta)| beta * weights[i][j])
                .sum();
            alpha * mapped
        })
        .sum())
}

/// Fidelity obtained by substituting √βᵢ ↦ Σⱼ √βⱼ Wᵢⱼ into the classical
/// Bhattacharyya sum Σᵢ √αᵢ √βᵢ.
pub fn fidelity_via_alignment_map(
    a: &DensityOperator,
    b: &DensityOperator,
) -> Result<f64, CoreError> {
    let alphas = a.spectrum()?.eigenvalues().to_vec();
    let betas = b.spectrum()?.eigenvalues().to_vec();
    let weights = soft_alignment_weights(a, b)?;
    Ok(alphas
        .iter()
        .enumerate()
        .map(|(i, &alpha)| {
            let mapped: f64 = betas
                .iter()
                .enumerate()
                .map(|(j, &beta)| beta.max(0.0).sqrt() * weights[i][j])
                .sum();
            alpha.max(0.0).sqrt() * mapped
        })
        .sum())
}

/// Relative entropy obtained by substituting log₂βᵢ ↦ Σⱼ log₂(βⱼ) Wᵢⱼ into
/// the classical divergence Σᵢ αᵢ (log₂αᵢ − log₂βᵢ). Requires `b` to have
/// full support.
pub fn relative_entropy_via_alignment_map(
    a: &DensityOperator,
    b: &DensityOperator,
) -> Result<f64, CoreError> {
    let alphas = a.spectrum()?.eigenvalues().to_vec();
    let betas = b.spectrum()?.eigenvalues().to_vec();
    let weights = soft_alignment_weights(a, b)?;
    let mut total = 0.0;
    for (i, &alpha) in alphas.iter().enumerate() {
        if alpha <= TOL_ZERO {
            continue;
        }
        let mapped_log: f64 = betas
            .iter()
            .enumerate()
            .filter(|&(_, &beta)| beta > TOL_ZERO)
            .map(|(j, &beta)| beta.log2() * weights[i][j])
            .sum();
        total += alpha * (alpha.log2() - mapped_log);
    }
    Ok(total)
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
