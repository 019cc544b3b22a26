//! Classical probability distributions and the information measures the
//! quantum layer generalizes: Shannon entropy, expectation, Bhattacharyya
//! coefficient, KL divergence and mutual information. All logarithms are
//! base 2, so entropies and divergences are in bits.

use crate::error::CoreError;
use crate::operator::TOL_ZERO;

const TOL_SUM: f64 = 1e-10;

/// Discrete distribution, optionally carrying real outcome values so an
/// expectation can be taken.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    probs: Vec<f64>,
    outcomes: Option<Vec<f64>>,
}

impl ProbabilityDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self, CoreError> {
        validate_probs(&probs)?;
        Ok(Self {
            probs,
            outcomes: None,
        })
    }

    pub fn with_outcomes(probs: Vec<f64>, outcomes: Vec<f64>) -> Result<Self, CoreError> {
        if probs.len() != outcomes.len() {
            return Err(CoreError::LengthMismatch {
                left: probs.len(),
                right: outcomes.len(),
            });
        }
        validate_probs(&probs)?;
        Ok(Self {
            probs,
            outcomes: Some(outcomes),
        })
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            probs: vec![1.0 / n as f64; n],
            outcomes: None,
        }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, index: usize) -> f64 {
        self.probs[index]
    }

    pub fn outcomes(&self) -> Option<&[f64]> {
        self.outcomes.as_deref()
    }

    /// Copy with probabilities at or below the support threshold replaced
    /// by `epsilon`, renormalized. Used to keep divergences finite on
    /// sparse corpus data.
    pub fn smoothed(&self, epsilon: f64) -> Self {
        let mut probs: Vec<f64> = self
            .probs
            .iter()
            .map(|&p| if p <= TOL_ZERO { epsilon } else { p })
            .collect();
        let total: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= total;
        }
        Self {
            probs,
            outcomes: self.outcomes.clone(),
        }
    }
}

/// Joint distribution over two finite variables, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    table: Vec<f64>,
    rows: usize,
    cols: usize,
}

impl JointDistribution {
    pub fn new(rows: usize, cols: usize, table: Vec<f64>) -> Result<Self, CoreError> {
        if table.len() != rows * cols {
            return Err(CoreError::LengthMismatch {
                left: rows * cols,
                right: table.len(),
            });
        }
        validate_probs(&table)?;
        Ok(Self { table, rows, cols })
    }

    /// Product of two marginals, p(x,y) = p(x)·p(y).
    pub fn product(x: &ProbabilityDistribution, y: &ProbabilityDistribution) -> Self {
        let mut table = Vec::with_capacity(x.len() * y.len());
        for &px in x.probs() {
            for &py in y.probs() {
                table.push(px * py);
            }
        }
        Self {
            table,
            rows: x.len(),
            cols: y.len(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prob(&self, row: usize, col: usize) -> f64 {
        self.table[row * self.cols + col]
    }

    pub fn marginal_rows(&self) -> ProbabilityDistribution {
        let probs = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.prob(i, j)).sum())
            .collect();
        ProbabilityDistribution {
            probs,
            outcomes: None,
        }
    }

    pub fn marginal_cols(&self) -> ProbabilityDistribution {
        let probs = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.prob(i, j)).sum())
            .collect();
        ProbabilityDistribution {
            probs,
            outcomes: None,
        }
    }

    fn flat(&self) -> ProbabilityDistribution {
        ProbabilityDistribution {
            probs: self.table.clone(),
            outcomes: None,
        }
    }
}

fn validate_probs(probs: &[f64]) -> Result<(), CoreError> {
    if probs.is_empty() {
        return Err(CoreError::EmptyInput {
            what: "probabilities",
        });
    }
    if let Some(&p) = probs.iter().find(|&&p| p < 0.0 || !p.is_finite()) {
        return Err(CoreError::NegativeProbability { value: p });
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > TOL_SUM {
        return Err(CoreError::ProbabilitiesNotNormalized { sum });
    }
    Ok(())
}

/// −Σ p log₂ p with the 0·log₂0 = 0 convention. In [0, log₂ n].
pub fn shannon_entropy(x: &ProbabilityDistribution) -> f64 {
    entropy_of(x.probs())
}

pub(crate) fn entropy_of(probs: &[f64]) -> f64 {
    // The `+ 0.0` turns the -0.0 of a zero sum into plain zero.
    -probs
        .iter()
        .filter(|&&p| p > TOL_ZERO)
        .map(|&p| p * p.log2())
        .sum::<f64>()
        + 0.0
}

/// Σ xᵢ p(xᵢ). Needs outcome values attached to the distribution.
pub fn expected_value(x: &ProbabilityDistribution) -> Result<f64, CoreError> {
    let outcomes = x.outcomes().ok_or(CoreError::MissingOutcomes)?;
    Ok(outcomes
        .iter()
        .zip(x.probs())
        .map(|(&v, &p)| v * p)
        .sum())
}

/// Σᵢ √(p(xᵢ)·p(yᵢ)). In `[0,1]`, and 1 exactly when the distributions are
/// equal index by index.
pub fn bhattacharyya(
    x: &ProbabilityDistribution,
    y: &ProbabilityDistribution,
) -> Result<f64, CoreError> {
    check_lengths(x, y)?;
    Ok(x.probs()
        .iter()
        .zip(y.probs())
        .map(|(&px, &py)| (px * py).sqrt())
        .sum())
}

/// Σᵢ p(xᵢ) log₂(p(xᵢ)/p(yᵢ)). Returns +∞ when `x` puts mass where `y` has
/// none; asymmetric in general.
pub fn kl_divergence(
    x: &ProbabilityDistribution,
    y: &ProbabilityDistribution,
) -> Result<f64, CoreError> {
    check_lengths(x, y)?;
    let mut total = 0.0;
    for (&px, &py) in x.probs().iter().zip(y.probs()) {
        if px <= TOL_ZERO {
            continue;
        }
        if py <= TOL_ZERO {
            return Ok(f64::INFINITY);
        }
        total += px * (px / py).log2();
    }
    Ok(total)
}

/// KL divergence after replacing zero probabilities in both arguments with
/// `epsilon` and renormalizing. Always finite for positive `epsilon`.
pub fn kl_divergence_smoothed(
    x: &ProbabilityDistribution,
    y: &ProbabilityDistribution,
    epsilon: f64,
) -> Result<f64, CoreError> {
    check_lengths(x, y)?;
    kl_divergence(&x.smoothed(epsilon), &y.smoothed(epsilon))
}

/// I(X;Y) = H(X) + H(Y) − H(X,Y), in bits. Zero exactly for product
/// distributions.
pub fn mutual_information(joint: &JointDistribution) -> f64 {
    let hx = shannon_entropy(&joint.marginal_rows());
    let hy = shannon_entropy(&joint.marginal_cols());
    let hxy = shannon_entropy(&joint.flat());
    hx + hy - hxy
}

fn check_lengths(
    x: &ProbabilityDistribution,
    y: &ProbabilityDistribution,
) -> Result<(), CoreError> {
    if x.len() != y.len() {
        return Err(CoreError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(())
}
