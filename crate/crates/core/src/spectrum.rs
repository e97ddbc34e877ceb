use crate::banded::BandedSymmetricMatrix;
use crate::eigen::{symmetric_eigenvalues, tridiagonal_eigenvalues};
use crate::error::{Error, Result};

/// Extreme eigenvalues of an SPD matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralInterval {
    lambda_min: f64,
    lambda_max: f64,
}

impl SpectralInterval {
    pub fn new(lambda_min: f64, lambda_max: f64) -> Result<Self> {
        if !(lambda_min > 0.0) || !lambda_min.is_finite() {
            return Err(Error::NotPositiveDefinite { lambda_min });
        }
        if !(lambda_max >= lambda_min) || !lambda_max.is_finite() {
            return Err(Error::InvalidMatrix(format!("lambda_max {lambda_max:e} below lambda_min {lambda_min:e}")));
        }
        Ok(Self { lambda_min, lambda_max })
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn kappa(&self) -> f64 {
        self.lambda_max / self.lambda_min
    }

    pub fn width(&self) -> f64 {
        self.lambda_max - self.lambda_min
    }

    pub fn is_degenerate(&self) -> bool {
        self.lambda_max == self.lambda_min
    }

    /// Interval multiplied by a positive constant.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.lambda_min * factor, self.lambda_max * factor)
    }

    /// Extremes of the Kronecker sum `A (x) I + I (x) B`.
    pub fn kronecker_sum(&self, other: &SpectralInterval) -> Self {
        Self { lambda_min: self.lambda_min + other.lambda_min, lambda_max: self.lambda_max + other.lambda_max }
    }
}

/// All eigenvalues of `m`, ascending.
pub fn eigenvalues(m: &BandedSymmetricMatrix) -> Vec<f64> {
    if m.bandwidth() <= 1 {
        let n = m.order();
        let mut sub = vec![0.0; n];
        if m.bandwidth() == 1 {
            sub[..n - 1].copy_from_slice(m.diagonal(1));
        }
        tridiagonal_eigenvalues(m.diagonal(0), &sub)
    } else {
        symmetric_eigenvalues(&m.to_dense_rows(), m.order())
    }
}

/// Smallest and largest eigenvalues, without any definiteness requirement.
pub fn eigenvalue_range(m: &BandedSymmetricMatrix) -> (f64, f64) {
    let eig = eigenvalues(m);
    (eig[0], eig[eig.len() - 1])
}

/// Extreme eigenvalues of an SPD matrix; fails if `lambda_min <= 0`.
pub fn extreme_eigenvalues(m: &BandedSymmetricMatrix) -> Result<SpectralInterval> {
    let (lo, hi) = eigenvalue_range(m);
    SpectralInterval::new(lo, hi)
}
