//! Closed-form bounds obtained by majorizing the frequency integrands.

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::grid::{MeshCase, MeshSeparation};
use crate::spectrum::SpectralInterval;

/// Constants of the `1/sqrt(n)` asymptotic bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    /// `sqrt(kappa^2 + 1) / (2 lambda_min)`.
    pub gamma0_case_i: f64,
    /// `kappa sqrt(kappa^2 + 1) / 2`.
    pub gamma0_case_ii: f64,
    pub gamma0: f64,
}

impl BoundConstants {
    pub fn new(spec: &SpectralInterval) -> Self {
        let kappa = spec.kappa();
        let root = kappa.hypot(1.0);
        let gamma0_case_i = root / (2.0 * spec.lambda_min());
        let gamma0_case_ii = kappa * root / 2.0;
        Self { gamma0_case_i, gamma0_case_ii, gamma0: gamma0_case_i.max(gamma0_case_ii) }
    }
}

fn reduced_distance(sep: &MeshSeparation) -> Result<usize> {
    match sep.reduced() {
        None => Err(Error::Inapplicable("closed-form bounds do not cover the diagonal case")),
        Some(0) => Err(Error::Inapplicable("closed-form bounds need a positive reduced mesh distance")),
        Some(n) => Ok(n),
    }
}

/// Explicit bound for `M` tridiagonal, valid when the reduced distance is positive.
pub fn explicit_entry_bound(spec: &SpectralInterval, sep: &MeshSeparation) -> Result<f64> {
    let nn = reduced_distance(sep)? as f64;
    let (lo, hi) = (spec.lambda_min(), spec.lambda_max());
    let norm2 = hi * hi + lo * lo;
    let ln_ratio = (hi - lo).ln() - 0.5 * norm2.ln();
    let (shift, denominator, tail) = match sep.case {
        MeshCase::BothDiffer => (2.0, (hi * lo).powi(2), (2.0 * nn / (nn + 4.0)).sqrt()),
        MeshCase::OneEqual => (1.0, hi * lo * lo, (2.0 * nn / (nn + 2.0)).sqrt()),
        MeshCase::Diagonal => unreachable!(),
    };
    // (hi - lo)^(n + shift) / norm2^(n/2), evaluated in log space
    let power = (nn * ln_ratio + shift * (hi - lo).ln()).exp();
    Ok(power * norm2.sqrt() / denominator / nn.sqrt() * tail / (2.0 * SQRT_2))
}

/// `gamma0_case / sqrt(n)`, the distance-only form of the explicit bound.
pub fn asymptotic_entry_bound(spec: &SpectralInterval, sep: &MeshSeparation) -> Result<f64> {
    let nn = reduced_distance(sep)? as f64;
    let c = BoundConstants::new(spec);
    let gamma = match sep.case {
        MeshCase::BothDiffer => c.gamma0_case_i,
        MeshCase::OneEqual => c.gamma0_case_ii,
        MeshCase::Diagonal => unreachable!(),
    };
    Ok(gamma / nn.sqrt())
}

/// Bound on `|(L^{-T})_{k,t}|`, `S = L L^T`, for `k <= t`: `gamma0 * band_S / sqrt(n)`.
pub fn inverse_cholesky_factor_bound(spec: &SpectralInterval, sep: &MeshSeparation, band_s: usize) -> Result<f64> {
    let nn = reduced_distance(sep)? as f64;
    Ok(BoundConstants::new(spec).gamma0 * band_s as f64 / nn.sqrt())
}
