//! Classical monotone exponential bound for inverses of banded SPD matrices.

use crate::error::{Error, Result};
use crate::spectrum::SpectralInterval;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemkoConstants {
    pub kappa: f64,
    /// `(sqrt(kappa) - 1) / (sqrt(kappa) + 1)`.
    pub q: f64,
    /// `(1 + sqrt(kappa))^2 / (2 lambda_max)` of the rescaled matrix.
    pub gamma_hat: f64,
    /// `max(1 / lambda_min, gamma_hat)` of the rescaled matrix.
    pub gamma: f64,
    /// Rescaling factor: the largest diagonal entry of `S`.
    pub d: f64,
}

impl DemkoConstants {
    /// Constants of `S / d`, whose diagonal is bounded by one.
    pub fn new(spec_s: &SpectralInterval, d: f64) -> Result<Self> {
        if !(d > 0.0) {
            return Err(Error::InvalidSettings(format!("diagonal scale must be positive, got {d:e}")));
        }
        let unit = spec_s.scaled(1.0 / d)?;
        let kappa = unit.kappa();
        let root = kappa.sqrt();
        let q = (root - 1.0) / (root + 1.0);
        let gamma_hat = (1.0 + root).powi(2) / (2.0 * unit.lambda_max());
        let gamma = gamma_hat.max(1.0 / unit.lambda_min());
        Ok(Self { kappa, q, gamma_hat, gamma, d })
    }
}

/// `gamma q^(dist / band_s) / d`: bound on `|(S^{-1})_{r,c}|` with `|r - c| = dist`.
pub fn demko_bound(spec_s: &SpectralInterval, band_s: usize, dist: usize, d: f64) -> Result<f64> {
    if band_s == 0 {
        return Err(Error::Inapplicable("bandwidth of S must be at least 1"));
    }
    let c = DemkoConstants::new(spec_s, d)?;
    Ok(c.gamma * c.q.powf(dist as f64 / band_s as f64) / d)
}
