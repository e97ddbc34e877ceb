//! Decay of the entries of the shifted resolvent `(i omega I + M)^{-1}`.
//!
//! Shifting the spectrum `[lambda_min, lambda_max]` of `M` by `i omega` puts it
//! on the segment `[lambda_1, lambda_2]`. Mapping that segment onto `[-1, 1]`
//! sends the pole of `1/z` to the point `-a`; the confocal ellipse through it
//! has parameter `R = alpha_R + beta_R > 1`, and entries at band distance `d`
//! decay like `R^{-d/b}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectrum::SpectralInterval;

/// Clamp window for `cos psi` / `sin psi` rounding excursions.
const TRIG_SLACK: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedSpectrumGeometry {
    pub omega: f64,
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    /// `(lambda_1 + lambda_2) / (lambda_2 - lambda_1)`.
    pub a: Complex64,
    /// `(|lambda_1| + |lambda_2|) / |lambda_2 - lambda_1|`.
    pub alpha: f64,
    /// `alpha + sqrt(alpha^2 - 1)`.
    pub r: f64,
    pub alpha_r: f64,
    pub beta_r: f64,
    pub psi: f64,
    /// Constant `B(a)` of the shifted-resolvent bound.
    pub b_of_a: f64,
    cos_psi: f64,
    width: f64,
}

/// Resolvent geometry of `spec` shifted by `i omega`.
pub fn geometry_at(spec: &SpectralInterval, omega: f64) -> Result<ShiftedSpectrumGeometry> {
    let (lo, hi) = (spec.lambda_min(), spec.lambda_max());
    if spec.is_degenerate() {
        return Err(Error::DegenerateSpectrum(lo));
    }
    let width = hi - lo;
    let lambda1 = Complex64::new(lo, omega);
    let lambda2 = Complex64::new(hi, omega);
    let a = (lambda1 + lambda2) / (lambda2 - lambda1);
    let (m1, m2) = (lambda1.norm(), lambda2.norm());
    let alpha = (m1 + m2) / width;

    // alpha^2 - 1 without cancellation: ((|l1| + |l2|)^2 - (l2 - l1)^2) / width^2
    let alpha_sq_m1 = 2.0 * (omega * omega + m1 * m2 + lo * hi) / (width * width);
    let beta_r = alpha_sq_m1.sqrt();
    let r = alpha + beta_r;
    // the ellipse through `a` has semi-axes alpha_R = alpha, beta_R = sqrt(alpha^2 - 1)
    let alpha_r = alpha;

    let cos_psi = (a.re / alpha_r).clamp(-1.0 - TRIG_SLACK, 1.0 + TRIG_SLACK).clamp(-1.0, 1.0);
    let sin_psi = (a.im / beta_r).clamp(-1.0 - TRIG_SLACK, 1.0 + TRIG_SLACK).clamp(-1.0, 1.0);
    let psi = sin_psi.atan2(cos_psi);

    let root = (alpha_r * alpha_r - cos_psi * cos_psi).sqrt();
    let b_of_a = r / (beta_r * root * (alpha_r + root));

    Ok(ShiftedSpectrumGeometry { omega, lambda1, lambda2, a, alpha, r, alpha_r, beta_r, psi, b_of_a, cos_psi, width })
}

impl ShiftedSpectrumGeometry {
    pub fn cos_psi(&self) -> f64 {
        self.cos_psi
    }

    /// `R^2 / (R^2 - 1)^2`, evaluated as `1 / (4 beta_R^2)`.
    pub fn decay_factor(&self) -> f64 {
        0.25 / (self.beta_r * self.beta_r)
    }

    pub fn ln_r(&self) -> f64 {
        self.r.ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreundMode {
    /// `B(a)` as stated.
    Full,
    /// `B(a)` replaced by its majorant `1 / beta_R^2`.
    Simplified,
}

/// Bound on `|e_l^T (i omega I + M)^{-1} e_i|` for `|l - i| = dist >= 1`, `M` `b`-banded.
pub fn freund_entry_bound(geom: &ShiftedSpectrumGeometry, dist: usize, b: usize, mode: FreundMode) -> Result<f64> {
    if dist == 0 {
        return Err(Error::Inapplicable("equal indices: use the resolvent diagonal bound"));
    }
    if b == 0 {
        return Err(Error::Inapplicable("bandwidth must be at least 1"));
    }
    let constant = match mode {
        FreundMode::Full => geom.b_of_a,
        FreundMode::Simplified => 1.0 / (geom.beta_r * geom.beta_r),
    };
    let exponent = 1.0 - dist as f64 / b as f64;
    Ok(2.0 / geom.width * constant * (exponent * geom.ln_r()).exp())
}

/// `1 / |lambda_min + i omega|`, valid for every diagonal resolvent entry.
pub fn resolvent_diagonal_bound(spec: &SpectralInterval, omega: f64) -> f64 {
    1.0 / spec.lambda_min().hypot(omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn spec(lo: f64, hi: f64) -> SpectralInterval {
        SpectralInterval::new(lo, hi).unwrap()
    }

    #[test]
    fn real_point_geometry() {
        let g = geometry_at(&spec(1.0, 3.0), 0.0).unwrap();
        assert_relative_eq!(g.alpha, 2.0, max_relative = 1e-15);
        assert_relative_eq!(g.r, 2.0 + 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(g.beta_r, 3f64.sqrt(), max_relative = 1e-15);
        assert_eq!(g.psi, 0.0);
        assert_relative_eq!(g.b_of_a, 1.0 / 3.0, max_relative = 1e-14);
        assert_eq!(g.a, Complex64::new(2.0, 0.0));
    }

    #[test]
    fn shifted_geometry() {
        let g = geometry_at(&spec(1.0, 3.0), 2.0).unwrap();
        let alpha = (5f64.sqrt() + 13f64.sqrt()) / 2.0;
        assert_relative_eq!(g.alpha, alpha, max_relative = 1e-15);
        assert!((g.alpha - 2.9208).abs() < 1e-4);
        assert_relative_eq!(g.r, alpha + (alpha * alpha - 1.0).sqrt(), max_relative = 1e-14);
        assert!((g.r - 5.6651).abs() < 1e-4);
    }

    #[test]
    fn high_frequency_expansion() {
        for (lo, hi) in [(1.0, 3.0), (0.04, 1.96), (0.5, 0.6)] {
            let s = spec(lo, hi);
            let omega = 1e6;
            let g = geometry_at(&s, omega).unwrap();
            let lead = 2.0 * omega / (hi - lo);
            assert!((g.alpha / lead - 1.0).abs() < 1e-3);
            assert!((g.r / (2.0 * g.alpha) - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn degenerate_spectrum_rejected() {
        assert_eq!(geometry_at(&spec(2.0, 2.0), 1.0), Err(Error::DegenerateSpectrum(2.0)));
    }

    #[test]
    fn freund_examples() {
        let g = geometry_at(&spec(1.0, 3.0), 0.0).unwrap();
        let r = 2.0 + 3f64.sqrt();
        assert_relative_eq!(freund_entry_bound(&g, 1, 1, FreundMode::Full).unwrap(), 1.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(
            freund_entry_bound(&g, 2, 1, FreundMode::Full).unwrap(),
            1.0 / (3.0 * r),
            max_relative = 1e-12
        );
        assert!((freund_entry_bound(&g, 2, 1, FreundMode::Full).unwrap() - 0.089316).abs() < 1e-6);
        assert_relative_eq!(freund_entry_bound(&g, 2, 2, FreundMode::Full).unwrap(), 1.0 / 3.0, max_relative = 1e-12);
        assert!(freund_entry_bound(&g, 0, 1, FreundMode::Full).is_err());
    }

    #[test]
    fn resolvent_diagonal_examples() {
        assert_eq!(resolvent_diagonal_bound(&spec(1.0, 2.0), 0.0), 1.0);
        assert_relative_eq!(resolvent_diagonal_bound(&spec(1.0, 2.0), 3f64.sqrt()), 0.5, max_relative = 1e-15);
        assert_eq!(resolvent_diagonal_bound(&spec(0.5, 2.0), 0.0), 2.0);
    }

    #[test]
    fn freund_bounds_true_resolvent_entries() {
        // dense complex solve of (i omega I + M) x = e_col by Gaussian elimination
        let m = crate::banded::make_preset("fd-laplacian", 12).unwrap().scale_by_diagonal().unwrap();
        let s = crate::spectrum::extreme_eigenvalues(&m).unwrap();
        let n = m.order();
        for omega in [0.0, 0.05, 0.3, 2.0, 40.0] {
            let g = geometry_at(&s, omega).unwrap();
            let col = 3;
            let mut a: Vec<Vec<Complex64>> = (0..n)
                .map(|r| (0..n).map(|c| Complex64::new(m.get(r, c), if r == c { omega } else { 0.0 })).collect())
                .collect();
            let mut rhs: Vec<Complex64> = (0..n).map(|r| Complex64::new((r == col) as u8 as f64, 0.0)).collect();
            for p in 0..n {
                for r in p + 1..n {
                    let f = a[r][p] / a[p][p];
                    for c in p..n {
                        let v = a[p][c];
                        a[r][c] -= f * v;
                    }
                    let v = rhs[p];
                    rhs[r] -= f * v;
                }
            }
            let mut x = vec![Complex64::new(0.0, 0.0); n];
            for r in (0..n).rev() {
                let acc: Complex64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
                x[r] = (rhs[r] - acc) / a[r][r];
            }
            for (row, v) in x.iter().enumerate() {
                let dist = row.abs_diff(col);
                let bound = if dist == 0 {
                    resolvent_diagonal_bound(&s, omega)
                } else {
                    freund_entry_bound(&g, dist, 1, FreundMode::Full).unwrap()
                };
                assert!(v.norm() <= bound * (1.0 + 1e-12), "omega={omega} row={row}: {} > {bound}", v.norm());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn geometry_identities(lo in 1e-3f64..10.0, spread in 1e-2f64..50.0, omega in 0.0f64..1e3) {
            let s = spec(lo, lo + spread);
            let g = geometry_at(&s, omega).unwrap();
            prop_assert!(g.r > 1.0);
            prop_assert!((g.alpha_r * g.alpha_r - g.beta_r * g.beta_r - 1.0).abs() <= 1e-12 * g.alpha_r * g.alpha_r);
            prop_assert!(((g.alpha_r + g.beta_r) / g.r - 1.0).abs() <= 1e-15);
            prop_assert!(((g.r + 1.0 / g.r) / 2.0 / g.alpha_r - 1.0).abs() <= 1e-13);
            prop_assert!(g.cos_psi().abs() <= 1.0);
            prop_assert!(g.b_of_a <= 1.0 / (g.beta_r * g.beta_r) * (1.0 + 1e-14));
            let back = Complex64::new(g.alpha_r * g.psi.cos(), g.beta_r * g.psi.sin());
            prop_assert!((back - g.a).norm() <= 1e-9 * g.a.norm().max(1.0));
        }

        #[test]
        fn decay_factor_identity(lo in 1e-1f64..10.0, spread in 1e-1f64..20.0, omega in 0.0f64..1e2) {
            let g = geometry_at(&spec(lo, lo + spread), omega).unwrap();
            let r2 = g.r * g.r;
            let direct = r2 / ((r2 - 1.0) * (r2 - 1.0));
            let via_alpha = 1.0 / (4.0 * (g.alpha * g.alpha - 1.0));
            prop_assert!((direct / via_alpha - 1.0).abs() <= 1e-13, "{} vs {}", direct, via_alpha);
            prop_assert!((g.decay_factor() / via_alpha - 1.0).abs() <= 1e-13);
        }

        #[test]
        fn simplified_dominates_full(lo in 1e-3f64..10.0, spread in 1e-3f64..50.0, omega in 0.0f64..1e3, dist in 1usize..40, b in 1usize..4) {
            let g = geometry_at(&spec(lo, lo + spread), omega).unwrap();
            let full = freund_entry_bound(&g, dist, b, FreundMode::Full).unwrap();
            let simple = freund_entry_bound(&g, dist, b, FreundMode::Simplified).unwrap();
            prop_assert!(full > 0.0 || (dist as f64 / b as f64) * g.ln_r() > 700.0);
            prop_assert!(full <= simple * (1.0 + 1e-14));
        }
    }
}
