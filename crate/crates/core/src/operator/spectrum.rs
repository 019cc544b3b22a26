use std::cmp::Ordering;

use nalgebra::linalg::SymmetricEigen;

use super::{Complex64, ComplexMatrix, Ket, TOL_HERMITIAN, TOL_ZERO};
use crate::error::CoreError;

/// Eigenvalue/eigenket pairs of a Hermitian operator, eigenvalues sorted
/// descending and eigenkets forming an orthonormal basis.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenkets: Vec<Ket>,
}

impl Spectrum {
    pub(crate) fn from_parts(eigenvalues: Vec<f64>, eigenkets: Vec<Ket>) -> Self {
        debug_assert_eq!(eigenvalues.len(), eigenkets.len());
        Self {
            eigenvalues,
            eigenkets,
        }
    }

    /// Number of eigenpairs (the operator dimension).
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, index: usize) -> f64 {
        self.eigenvalues[index]
    }

    pub fn eigenkets(&self) -> &[Ket] {
        &self.eigenkets
    }

    pub fn eigenket(&self, index: usize) -> &Ket {
        &self.eigenkets[index]
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &Ket)> {
        self.eigenvalues.iter().copied().zip(self.eigenkets.iter())
    }

    /// Indices of eigenvalues above the support threshold.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.eigenvalues[i] > TOL_ZERO)
            .collect()
    }

    /// Number of eigenvalues above the support threshold.
    pub fn rank(&self) -> usize {
        self.support().len()
    }

    /// Σᵢ f(αᵢ) |aᵢ⟩⟨aᵢ|. Eigenvalues for which `f` returns `None` are
    /// skipped, which is how the support convention for the operator
    /// logarithm is applied.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> Option<f64>) -> ComplexMatrix {
        let dim = self.eigenkets.first().map_or(0, Ket::dim);
        let mut out = ComplexMatrix::zeros(dim, dim);
        for (value, ket) in self.iter() {
            let Some(mapped) = f(value) else { continue };
            if mapped == 0.0 {
                continue;
            }
            let factor = Complex64::new(mapped, 0.0);
            for i in 0..dim {
                for j in 0..dim {
                    out.add_assign_at(i, j, factor * ket.amplitude(i) * ket.amplitude(j).conj());
                }
            }
        }
        out
    }

    /// Σᵢ αᵢ |aᵢ⟩⟨aᵢ|.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_eigenvalues(Some)
    }

    /// Largest pairwise deviation from orthonormality, ⟨aᵢ|aⱼ⟩ − δᵢⱼ.
    pub fn orthonormality_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.len() {
            for j in i..self.len() {
                let expected = if i == j { 1.0 } else { 0.0 };
                let dev = (self.eigenkets[i].inner_product(&self.eigenkets[j])
                    - Complex64::new(expected, 0.0))
                .norm();
                worst = worst.max(dev);
            }
        }
        worst
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come back sorted descending. Ties are broken by comparing the
/// eigenkets lexicographically after phase canonicalization (first nonzero
/// amplitude made real and positive), so repeated calls on identical input
/// produce identical output.
pub fn spectral_decompose(matrix: &ComplexMatrix) -> Result<Spectrum, CoreError> {
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

    let n = matrix.rows();
    if n == 0 {
        return Ok(Spectrum::from_parts(Vec::new(), Vec::new()));
    }

    let eigen = SymmetricEigen::try_new(matrix.as_dmatrix().clone(), 1.0e-13, 100_000)
        .ok_or(CoreError::EigenFailure)?;

    let mut pairs: Vec<(f64, Ket)> = (0..n)
        .map(|k| {
            let column = eigen.eigenvectors.column(k);
            let ket = canonical_phase(Ket::new(column.iter().copied().collect()));
            (eigen.eigenvalues[k], ket)
        })
        .collect();

    pairs.sort_by(|a, b| match b.0.total_cmp(&a.0) {
        Ordering::Equal => lexicographic(&a.1, &b.1),
        other => other,
    });

    let (eigenvalues, eigenkets) = pairs.into_iter().unzip();
    Ok(Spectrum::from_parts(eigenvalues, eigenkets))
}

/// Multiply by a global phase so the first nonzero amplitude is real and
/// positive.
fn canonical_phase(mut ket: Ket) -> Ket {
    let Some(first) = ket.amplitudes().iter().find(|z| z.norm() > TOL_ZERO) else {
        return ket;
    };
    let phase = first / first.norm();
    let correction = phase.conj();
    for i in 0..ket.dim() {
        *ket.amplitude_mut(i) *= correction;
    }
    ket
}

fn lexicographic(a: &Ket, b: &Ket) -> Ordering {
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        match x.re.total_cmp(&y.re) {
            Ordering::Equal => {}
            other => return other,
        }
        match x.im.total_cmp(&y.im) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}
