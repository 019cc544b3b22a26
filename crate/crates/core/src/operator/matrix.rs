use nalgebra::DMatrix;

use super::{Complex64, Ket, TOL_HERMITIAN};
use crate::error::CoreError;

/// Dense complex matrix. The substrate for every operator in the crate.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl ComplexMatrix {
    /// Build from entries given in row-major order.
    /// Fails unless `entries.len() == rows * cols`.
    pub fn from_row_major(
        rows: usize,
        cols: usize,
        entries: Vec<Complex64>,
    ) -> Result<Self, CoreError> {
        if entries.len() != rows * cols {
            return Err(CoreError::DimensionMismatch {
                left: rows * cols,
                right: entries.len(),
            });
        }
        Ok(Self {
            inner: DMatrix::from_row_iterator(rows, cols, entries),
        })
    }

    /// Build from real entries in row-major order.
    pub fn from_real_row_major(
        rows: usize,
        cols: usize,
        entries: &[f64],
    ) -> Result<Self, CoreError> {
        Self::from_row_major(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        Self {
            inner: DMatrix::from_fn(rows, cols, f),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            inner: DMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            inner: DMatrix::identity(dim, dim),
        }
    }

    /// Diagonal matrix with the given real diagonal.
    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.inner[(row, col)] = value;
    }

    pub(crate) fn add_assign_at(&mut self, row: usize, col: usize, value: Complex64) {
        self.inner[(row, col)] += value;
    }

    pub fn trace(&self) -> Complex64 {
        self.inner.diagonal().iter().sum()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            inner: &self.inner * Complex64::new(factor, 0.0),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rows(), other.rows());
        assert_eq!(self.cols(), other.cols());
        Self {
            inner: &self.inner + &other.inner,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.rows(), other.rows());
        assert_eq!(self.cols(), other.cols());
        Self {
            inner: &self.inner - &other.inner,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols(), other.rows());
        Self {
            inner: &self.inner * &other.inner,
        }
    }

    /// Kronecker product, with `self` on the slow (left) index.
    pub fn kron(&self, other: &Self) -> Self {
        Self {
            inner: self.inner.kronecker(&other.inner),
        }
    }

    /// ⟨k| M |k⟩.
    pub fn quadratic_form(&self, ket: &Ket) -> Complex64 {
        assert_eq!(self.rows(), ket.dim());
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.rows() {
            let mut row = Complex64::new(0.0, 0.0);
            for j in 0..self.cols() {
                row += self.inner[(i, j)] * ket.amplitude(j);
            }
            acc += ket.amplitude(i).conj() * row;
        }
        acc
    }

    /// Largest entry magnitude.
    pub fn max_abs_entry(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.rows(), other.rows());
        assert_eq!(self.cols(), other.cols());
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `None` if Hermitian within `tol`, else the offending entry pair and
    /// its deviation.
    pub fn hermitian_deviation(&self, tol: f64) -> Option<(usize, usize, f64)> {
        if !self.is_square() {
            return Some((0, 0, f64::INFINITY));
        }
        let n = self.rows();
        let mut worst: Option<(usize, usize, f64)> = None;
        for i in 0..n {
            for j in i..n {
                let dev = (self.inner[(i, j)] - self.inner[(j, i)].conj()).norm();
                if dev > tol && worst.map_or(true, |(_, _, w)| dev > w) {
                    worst = Some((i, j, dev));
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation(TOL_HERMITIAN).is_none()
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<Complex64> {
        let (r, c) = (self.rows(), self.cols());
        let mut out = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                out.push(self.inner[(i, j)]);
            }
        }
        out
    }

    pub(crate) fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub(crate) fn from_dmatrix(inner: DMatrix<Complex64>) -> Self {
        Self { inner }
    }
}
