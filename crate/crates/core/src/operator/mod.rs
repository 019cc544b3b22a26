//! Complex linear-algebra substrate: matrices, kets, Hermitian
//! eigendecomposition and density operators.

mod density;
mod ket;
mod matrix;
mod spectrum;

pub use density::{commutator_deviation, DensityOperator};
pub use ket::Ket;
pub use matrix::ComplexMatrix;
pub use spectrum::{spectral_decompose, Spectrum};

/// Complex scalar used throughout the crate.
pub type Complex64 = num_complex::Complex<f64>;

/// Tolerance for Hermiticity checks.
pub const TOL_HERMITIAN: f64 = 1e-10;
/// Tolerance for the unit-trace check on density operators.
pub const TOL_TRACE: f64 = 1e-10;
/// Eigenvalues in `[-TOL_EIG_CLAMP, 0)` are clamped to 0; anything more
/// negative fails validation.
pub const TOL_EIG_CLAMP: f64 = 1e-10;
/// Eigenvalues at or below this threshold are treated as outside the
/// support (the 0·log₂0 = 0 convention).
pub const TOL_ZERO: f64 = 1e-12;
/// Tolerance for unit-norm checks on kets.
pub const TOL_NORM: f64 = 1e-10;
/// Eigenvalues closer than this are treated as one degenerate level when
/// aggregating measurement statistics.
pub const TOL_DEGENERACY: f64 = 1e-9;

const DEFAULT_MAX_DIM: usize = 4096;

/// Largest allowed operator dimension. Defaults to 4096; the `DSEM_MAX_DIM`
/// environment variable overrides it (read once per process).
pub fn max_dim() -> usize {
    static MAX_DIM: std::sync::OnceLock<usize> = std::sync::OnceLock::new();
    *MAX_DIM.get_or_init(|| {
        std::env::var("DSEM_MAX_DIM")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MAX_DIM)
    })
}
