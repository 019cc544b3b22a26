use nalgebra::DVector;

use super::{Complex64, ComplexMatrix, TOL_NORM};
use crate::error::CoreError;

/// Complex column vector. Constructors that promise unit norm enforce it.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    inner: DVector<Complex64>,
}

impl Ket {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        Self {
            inner: DVector::from_vec(amplitudes),
        }
    }

    pub fn from_real(amplitudes: &[f64]) -> Self {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Normalized copy of the given amplitudes; fails on a (near-)zero vector.
    pub fn unit(amplitudes: Vec<Complex64>) -> Result<Self, CoreError> {
        Self::new(amplitudes).normalized()
    }

    pub fn unit_from_real(amplitudes: &[f64]) -> Result<Self, CoreError> {
        Self::from_real(amplitudes).normalized()
    }

    /// Computational basis ket |index⟩ in the given dimension.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self::new(amplitudes)
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    pub fn dim(&self) -> usize {
        self.inner.len()
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.inner[index]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.inner.as_slice()
    }

    pub(crate) fn amplitude_mut(&mut self, index: usize) -> &mut Complex64 {
        &mut self.inner[index]
    }

    pub fn norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= TOL_NORM
    }

    pub fn normalized(&self) -> Result<Self, CoreError> {
        let norm = self.norm();
        if norm <= TOL_NORM {
            return Err(CoreError::ZeroNorm { norm });
        }
        Ok(Self {
            inner: &self.inner / Complex64::new(norm, 0.0),
        })
    }

    /// ⟨self|other⟩ with the left argument conjugated.
    pub fn inner_product(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim());
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |self⟩⟨self|.
    pub fn projector(&self) -> ComplexMatrix {
        self.outer_with(self)
    }

    /// |self⟩⟨other|.
    pub fn outer_with(&self, other: &Self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), other.dim(), |i, j| {
            self.inner[i] * other.inner[j].conj()
        })
    }

    /// |self⟩ ⊗ |other⟩ with `self` on the slow index.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in self.inner.iter() {
            for b in other.inner.iter() {
                amplitudes.push(a * b);
            }
        }
        Self::new(amplitudes)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self {
            inner: &self.inner + &other.inner,
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            inner: &self.inner * factor,
        }
    }
}
