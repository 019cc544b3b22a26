use std::sync::OnceLock;

use super::{
    max_dim, spectral_decompose, Complex64, ComplexMatrix, Ket, Spectrum, TOL_EIG_CLAMP,
    TOL_HERMITIAN, TOL_TRACE, TOL_ZERO,
};
use crate::error::CoreError;

/// Trace-1 positive semidefinite Hermitian operator, possibly carrying a
/// tensor factorization of its space in `subsystem_dims`.
///
/// The spectral decomposition is computed on first use and cached; the
/// once-only initialization makes concurrent readers observe a single
/// consistent decomposition. Eigenvalues in `[-1e-10, 0)` are clamped to
/// zero at that point; anything more negative is reported as a validation
/// error by whichever operation first needed the spectrum.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    subsystem_dims: Vec<usize>,
    spectrum: OnceLock<Result<Spectrum, CoreError>>,
}

impl DensityOperator {
    /// Validate a raw matrix (square, Hermitian, unit trace) as a
    /// monopartite density operator. Positive semidefiniteness is checked
    /// when the spectrum is first computed.
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self, CoreError> {
        if !matrix.is_square() {
            return Err(CoreError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if let Some((row, col, deviation)) = matrix.hermitian_deviation(TOL_HERMITIAN) {
            return Err(CoreError::NotHermitian {
                row,
                col,
                deviation,
            });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TOL_TRACE || trace.im.abs() > TOL_TRACE {
            return Err(CoreError::TraceNotOne { trace: trace.re });
        }
        let dim = matrix.rows();
        Ok(Self {
            matrix,
            subsystem_dims: vec![dim],
            spectrum: OnceLock::new(),
        })
    }

    /// Reinterpret the space as a tensor product with the given factor
    /// dimensions. Their product must equal the operator dimension.
    pub fn with_subsystems(mut self, dims: &[usize]) -> Result<Self, CoreError> {
        let product: usize = dims.iter().product();
        if dims.is_empty() || product != self.dim() || dims.contains(&0) {
            return Err(CoreError::BadSubsystemDims {
                dims: dims.to_vec(),
                dim: self.dim(),
            });
        }
        self.subsystem_dims = dims.to_vec();
        Ok(self)
    }

    /// |k⟩⟨k| for a unit ket (non-unit input is normalized).
    pub fn from_pure(ket: &Ket) -> Result<Self, CoreError> {
        let unit = ket.normalized()?;
        Self::from_matrix(unit.projector())
    }

    /// Trace-normalized weighted mixture Σᵢ wᵢ|kᵢ⟩⟨kᵢ| / Tr(·).
    pub fn from_mixture(kets: &[Ket], weights: &[f64]) -> Result<Self, CoreError> {
        if kets.is_empty() {
            return Err(CoreError::EmptyInput { what: "mixture kets" });
        }
        if kets.len() != weights.len() {
            return Err(CoreError::LengthMismatch {
                left: kets.len(),
                right: weights.len(),
            });
        }
        let dim = kets[0].dim();
        for ket in kets {
            if ket.dim() != dim {
                return Err(CoreError::DimensionMismatch {
                    left: dim,
                    right: ket.dim(),
                });
            }
        }
        if let Some(&w) = weights.iter().find(|&&w| w < 0.0) {
            return Err(CoreError::NegativeWeight { value: w });
        }

        let mut sum = ComplexMatrix::zeros(dim, dim);
        for (ket, &weight) in kets.iter().zip(weights) {
            if weight == 0.0 {
                continue;
            }
            let factor = Complex64::new(weight, 0.0);
            for i in 0..dim {
                for j in 0..dim {
                    sum.add_assign_at(i, j, factor * ket.amplitude(i) * ket.amplitude(j).conj());
                }
            }
        }
        let trace = sum.trace().re;
        if trace <= TOL_ZERO {
            return Err(CoreError::ZeroWeights);
        }
        Self::from_matrix(sum.scale(1.0 / trace))
    }

    /// Identity / dim.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_matrix(ComplexMatrix::identity(dim).scale(1.0 / dim as f64))
            .expect("maximally mixed state is always valid")
    }

    /// Diagonal density operator with the given spectrum in the
    /// computational basis.
    pub fn from_diagonal(probs: &[f64]) -> Result<Self, CoreError> {
        Self::from_matrix(ComplexMatrix::from_real_diagonal(probs))
    }

    /// Σᵢ αᵢ|aᵢ⟩⟨aᵢ| from explicit eigenpairs.
    pub fn from_eigensystem(pairs: &[(f64, Ket)]) -> Result<Self, CoreError> {
        if pairs.is_empty() {
            return Err(CoreError::EmptyInput { what: "eigenpairs" });
        }
        let dim = pairs[0].1.dim();
        let mut matrix = ComplexMatrix::zeros(dim, dim);
        for (value, ket) in pairs {
            if ket.dim() != dim {
                return Err(CoreError::DimensionMismatch {
                    left: dim,
                    right: ket.dim(),
                });
            }
            let factor = Complex64::new(*value, 0.0);
            for i in 0..dim {
                for j in 0..dim {
                    matrix.add_assign_at(i, j, factor * ket.amplitude(i) * ket.amplitude(j).conj());
                }
            }
        }
        Self::from_matrix(matrix)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.subsystem_dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// The cached spectral decomposition, computing it on first call.
    pub fn spectrum(&self) -> Result<&Spectrum, CoreError> {
        self.spectrum
            .get_or_init(|| spectral_decompose(&self.matrix).and_then(clamp_spectrum))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Full validation: shape, Hermiticity, trace, positive
    /// semidefiniteness, orthonormal eigenbasis and spectral
    /// reconstruction of the stored matrix.
    pub fn validate(&self) -> Result<(), CoreError> {
        if let Some((row, col, deviation)) = self.matrix.hermitian_deviation(TOL_HERMITIAN) {
            return Err(CoreError::NotHermitian {
                row,
                col,
                deviation,
            });
        }
        let trace = self.matrix.trace();
        if (trace.re - 1.0).abs() > TOL_TRACE || trace.im.abs() > TOL_TRACE {
            return Err(CoreError::TraceNotOne { trace: trace.re });
        }
        let spectrum = self.spectrum()?;
        let ortho = spectrum.orthonormality_deviation();
        if ortho > 1e-8 {
            return Err(CoreError::EigenFailure);
        }
        let reconstruction = spectrum.reconstruct().max_abs_diff(&self.matrix);
        if reconstruction > 1e-8 {
            return Err(CoreError::EigenFailure);
        }
        Ok(())
    }

    /// Unique positive square root, Σᵢ √αᵢ |aᵢ⟩⟨aᵢ|.
    pub fn sqrt(&self) -> Result<ComplexMatrix, CoreError> {
        Ok(self.spectrum()?.map_eigenvalues(|a| Some(a.max(0.0).sqrt())))
    }

    /// Base-2 operator logarithm on the support: eigenvalues at or below
    /// the support threshold are excluded from the spectral sum.
    pub fn log2(&self) -> Result<ComplexMatrix, CoreError> {
        Ok(self
            .spectrum()?
            .map_eigenvalues(|a| (a > TOL_ZERO).then(|| a.log2())))
    }

    /// A ⊗ B. Subsystem dimension lists concatenate.
    pub fn tensor(&self, other: &Self) -> Result<Self, CoreError> {
        let requested = self
            .dim()
            .checked_mul(other.dim())
            .ok_or(CoreError::Capacity {
                requested: usize::MAX,
                limit: max_dim(),
            })?;
        if requested > max_dim() {
            return Err(CoreError::Capacity {
                requested,
                limit: max_dim(),
            });
        }
        let mut dims = self.subsystem_dims.clone();
        dims.extend_from_slice(&other.subsystem_dims);
        Self::from_matrix(self.matrix.kron(&other.matrix))?.with_subsystems(&dims)
    }

    /// Partial trace keeping one subsystem.
    pub fn partial_trace(&self, keep: usize) -> Result<Self, CoreError> {
        if self.subsystem_dims.len() < 2 {
            return Err(CoreError::Monopartite);
        }
        self.reduce_to(&[keep])
    }

    /// Partial trace keeping the named subsystems, in the order given.
    pub fn reduce_to(&self, keep: &[usize]) -> Result<Self, CoreError> {
        let count = self.subsystem_dims.len();
        if keep.is_empty() {
            return Err(CoreError::EmptyInput { what: "kept subsystems" });
        }
        for &k in keep {
            if k >= count {
                return Err(CoreError::SubsystemOutOfRange { index: k, count });
            }
        }
        let mut seen = vec![false; count];
        for &k in keep {
            if seen[k] {
                return Err(CoreError::SubsystemOutOfRange { index: k, count });
            }
            seen[k] = true;
        }

        let traced: Vec<usize> = (0..count).filter(|i| !seen[*i]).collect();
        if traced.is_empty() {
            // Keeping everything is a permutation of subsystems.
            return self.permute_subsystems(keep);
        }

        let strides = strides(&self.subsystem_dims);
        let kept_dims: Vec<usize> = keep.iter().map(|&k| self.subsystem_dims[k]).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&t| self.subsystem_dims[t]).collect();
        let out_dim: usize = kept_dims.iter().product();
        let traced_total: usize = traced_dims.iter().product();

        let mut out = ComplexMatrix::zeros(out_dim, out_dim);
        let mut row_multi = vec![0usize; kept_dims.len()];
        for row in 0..out_dim {
            unflatten(row, &kept_dims, &mut row_multi);
            let row_base: usize = row_multi
                .iter()
                .zip(keep)
                .map(|(&idx, &k)| idx * strides[k])
                .sum();
            let mut col_multi = vec![0usize; kept_dims.len()];
            for col in 0..out_dim {
                unflatten(col, &kept_dims, &mut col_multi);
                let col_base: usize = col_multi
                    .iter()
                    .zip(keep)
                    .map(|(&idx, &k)| idx * strides[k])
                    .sum();
                let mut acc = Complex64::new(0.0, 0.0);
                let mut t_multi = vec![0usize; traced_dims.len()];
                for t in 0..traced_total {
                    unflatten(t, &traced_dims, &mut t_multi);
                    let offset: usize = t_multi
                        .iter()
                        .zip(&traced)
                        .map(|(&idx, &sub)| idx * strides[sub])
                        .sum();
                    acc += self.matrix.get(row_base + offset, col_base + offset);
                }
                out.set(row, col, acc);
            }
        }
        Self::from_matrix(out)?.with_subsystems(&kept_dims)
    }

    fn permute_subsystems(&self, order: &[usize]) -> Result<Self, CoreError> {
        let strides_in = strides(&self.subsystem_dims);
        let dims_out: Vec<usize> = order.iter().map(|&k| self.subsystem_dims[k]).collect();
        let dim = self.dim();
        let mut out = ComplexMatrix::zeros(dim, dim);
        let mut row_multi = vec![0usize; dims_out.len()];
        let mut col_multi = vec![0usize; dims_out.len()];
        for row in 0..dim {
            unflatten(row, &dims_out, &mut row_multi);
            let src_row: usize = row_multi
                .iter()
                .zip(order)
                .map(|(&idx, &k)| idx * strides_in[k])
                .sum();
            for col in 0..dim {
                unflatten(col, &dims_out, &mut col_multi);
                let src_col: usize = col_multi
                    .iter()
                    .zip(order)
                    .map(|(&idx, &k)| idx * strides_in[k])
                    .sum();
                out.set(row, col, self.matrix.get(src_row, src_col));
            }
        }
        Self::from_matrix(out)?.with_subsystems(&dims_out)
    }
}

/// Largest entry magnitude of AB − BA. Zero (within tolerance) exactly when
/// the operators are compatible.
pub fn commutator_deviation(a: &DensityOperator, b: &DensityOperator) -> Result<f64, CoreError> {
    if a.dim() != b.dim() {
        return Err(CoreError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let ab = a.matrix().mul(b.matrix());
    let ba = b.matrix().mul(a.matrix());
    Ok(ab.max_abs_diff(&ba))
}

fn clamp_spectrum(spectrum: Spectrum) -> Result<Spectrum, CoreError> {
    let mut eigenvalues = spectrum.eigenvalues().to_vec();
    for value in &mut eigenvalues {
        if *value < -TOL_EIG_CLAMP {
            return Err(CoreError::NegativeEigenvalue { value: *value });
        }
        if *value < 0.0 {
            *value = 0.0;
        }
    }
    Ok(Spectrum::from_parts(eigenvalues, spectrum.eigenkets().to_vec()))
}

/// Row-major strides for a list of factor dimensions.
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    strides
}

/// Decompose `flat` into a multi-index over `dims` (row-major).
fn unflatten(flat: usize, dims: &[usize], out: &mut [usize]) {
    let mut rest = flat;
    for i in (0..dims.len()).rev() {
        out[i] = rest % dims[i];
        rest /= dims[i];
    }
}
