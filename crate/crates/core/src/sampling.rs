//! Deterministic random generation of kets, unitaries and density
//! operators, used by the self-test harness, the property suites and the
//! benchmarks. Everything is driven by a caller-supplied RNG so runs are
//! reproducible from a seed.

use nalgebra::DMatrix;
use rand::Rng;

use crate::operator::{Complex64, ComplexMatrix, DensityOperator, Ket};

/// Standard normal sample via Box-Muller.
fn normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.random_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn complex_normal(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(normal(rng), normal(rng))
}

/// Matrix with independent complex-normal entries.
fn ginibre(rng: &mut impl Rng, dim: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |_, _| complex_normal(rng))
}

/// Haar-distributed random unitary (QR of a Ginibre matrix with the phase
/// convention fixed from R's diagonal).
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let (q, r) = ginibre(rng, dim).qr().unpack();
    let phases = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    ComplexMatrix::from_dmatrix(q * phases)
}

/// Random unit ket with complex-normal amplitudes.
pub fn random_ket(rng: &mut impl Rng, dim: usize) -> Ket {
    loop {
        let ket = Ket::new((0..dim).map(|_| complex_normal(rng)).collect());
        if let Ok(unit) = ket.normalized() {
            return unit;
        }
    }
}

/// Random full-rank spectrum: exponentially distributed weights normalized
/// to 1.
pub fn random_spectrum(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    let mut weights: Vec<f64> = (0..dim)
        .map(|_| -(rng.random_range(f64::MIN_POSITIVE..1.0f64)).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    weights
}

/// Random density operator from the Hilbert-Schmidt ensemble, GG†/Tr(GG†).
pub fn random_density(rng: &mut impl Rng, dim: usize) -> DensityOperator {
    loop {
        let g = ginibre(rng, dim);
        let product = &g * g.adjoint();
        let trace: Complex64 = product.diagonal().iter().sum();
        if trace.re <= f64::EPSILON {
            continue;
        }
        let matrix = ComplexMatrix::from_dmatrix(product / Complex64::new(trace.re, 0.0));
        if let Ok(op) = DensityOperator::from_matrix(matrix) {
            return op;
        }
    }
}

/// Pair of commuting density operators: a shared random eigenbasis with two
/// independent random spectra.
pub fn random_commuting_pair(
    rng: &mut impl Rng,
    dim: usize,
) -> (DensityOperator, DensityOperator, Vec<f64>, Vec<f64>) {
    let basis = random_unitary(rng, dim);
    let spectrum_a = random_spectrum(rng, dim);
    let spectrum_b = random_spectrum(rng, dim);
    let build = |spectrum: &[f64]| {
        let diag = ComplexMatrix::from_real_diagonal(spectrum);
        let rotated = basis.mul(&diag).mul(&basis.adjoint());
        DensityOperator::from_matrix(symmetrize(rotated))
            .expect("rotated diagonal state is valid")
    };
    (
        build(&spectrum_a),
        build(&spectrum_b),
        spectrum_a,
        spectrum_b,
    )
}

/// Random bipartite density operator with the given factor dimensions.
pub fn random_bipartite(rng: &mut impl Rng, dim_left: usize, dim_right: usize) -> DensityOperator {
    random_density(rng, dim_left * dim_right)
        .with_subsystems(&[dim_left, dim_right])
        .expect("dimensions multiply by construction")
}

/// Random separable state as an explicit mixture of `components` pure
/// product states.
pub fn random_separable(
    rng: &mut impl Rng,
    dim_left: usize,
    dim_right: usize,
    components: usize,
) -> crate::correlation::SeparableState {
    let weights = random_spectrum(rng, components);
    let left = (0..components).map(|_| random_ket(rng, dim_left)).collect();
    let right = (0..components)
        .map(|_| random_ket(rng, dim_right))
        .collect();
    crate::correlation::SeparableState::new(weights, left, right)
        .expect("sampled components are well-formed")
}

/// Conjugate a density operator by a unitary, U ρ U†.
pub fn conjugate(state: &DensityOperator, unitary: &ComplexMatrix) -> DensityOperator {
    let rotated = unitary.mul(state.matrix()).mul(&unitary.adjoint());
    DensityOperator::from_matrix(symmetrize(rotated))
        .expect("unitary conjugation preserves validity")
        .with_subsystems(state.subsystem_dims())
        .expect("dimensions unchanged")
}

/// Average a matrix with its adjoint to scrub the tiny Hermiticity drift
/// left by floating-point conjugation.
fn symmetrize(m: ComplexMatrix) -> ComplexMatrix {
    m.add(&m.adjoint()).scale(0.5)
}
