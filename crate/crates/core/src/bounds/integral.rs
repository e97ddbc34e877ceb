//! Frequency-integral bounds on `|(S^{-1})_{k,t}|`.
//!
//! Column `t` of `S^{-1}` reshaped to a grid solves a Lyapunov (or Sylvester)
//! equation whose solution is `1/(2 pi) int (i w I + M)^{-1} e_i e_j^T (i w I + M)^{-*} dw`.
//! Bounding both resolvent factors entrywise leaves a scalar integral over
//! `w`, which is evaluated by adaptive quadrature.

use std::f64::consts::PI;

use super::geometry::geometry_at;
use crate::error::{Error, Result};
use crate::grid::{mesh_separation, MeshCase, MeshSeparation};
use crate::quadrature::{integrate_real_line, IntegralEstimate, QuadratureSettings};
use crate::spectrum::SpectralInterval;

/// Integral bound for an entry with grid distances `d_row = |l - i|`, `d_col = |m - j|`
/// and `M` of half-bandwidth `b`.
///
/// The diagonal case is the closed form `1 / (2 lambda_min)`; the other two cases
/// integrate the resolvent-decay integrand numerically. The estimate may be
/// flagged as not converged; it is not turned into an error here.
pub fn integral_bound_by_distance(
    spec: &SpectralInterval,
    d_row: usize,
    d_col: usize,
    b: usize,
    settings: &QuadratureSettings,
) -> Result<IntegralEstimate> {
    if b == 0 {
        return Err(Error::Inapplicable("bandwidth must be at least 1"));
    }
    let sep = MeshSeparation::from_distances(d_row, d_col);
    if sep.case == MeshCase::Diagonal {
        return Ok(IntegralEstimate::exact(0.5 / spec.lambda_min()));
    }
    if spec.is_degenerate() {
        return Err(Error::DegenerateSpectrum(spec.lambda_min()));
    }
    let width = spec.width();
    let lo2 = spec.lambda_min() * spec.lambda_min();
    let reach = (d_row as f64 + d_col as f64) / b as f64;

    match sep.case {
        MeshCase::BothDiffer => {
            let prefactor = 64.0 / (2.0 * PI * width * width);
            let exponent = reach - 2.0;
            integrate_checked(
                |omega| {
                    let g = geometry_at(spec, omega)?;
                    let h = g.decay_factor();
                    Ok(prefactor * h * h * (-exponent * g.ln_r()).exp())
                },
                settings,
            )
        }
        MeshCase::OneEqual => {
            let prefactor = 8.0 / (2.0 * PI * width);
            let exponent = reach - 1.0;
            integrate_checked(
                |omega| {
                    let g = geometry_at(spec, omega)?;
                    Ok(prefactor / (lo2 + omega * omega).sqrt() * g.decay_factor() * (-exponent * g.ln_r()).exp())
                },
                settings,
            )
        }
        MeshCase::Diagonal => unreachable!(),
    }
}

/// Integral bound on `|(S^{-1})_{k,t}|` for `S = M (x) I + I (x) M`, `M` of order `n`
/// and half-bandwidth `b`; `k`, `t` are 1-based.
pub fn integral_entry_bound(
    spec: &SpectralInterval,
    k: usize,
    t: usize,
    n: usize,
    b: usize,
    settings: &QuadratureSettings,
) -> Result<IntegralEstimate> {
    let sep = mesh_separation(k, t, n)?;
    integral_bound_by_distance(spec, sep.d_row, sep.d_col, b, settings)
}

/// Spectra of the two factors of `S_g = M1 (x) I + I (x) M2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SylvesterSpectraPair {
    pub spec1: SpectralInterval,
    pub spec2: SpectralInterval,
    /// `(lambda_max(M1) - lambda_min(M1)) (lambda_max(M2) - lambda_min(M2))`.
    pub delta12: f64,
}

impl SylvesterSpectraPair {
    pub fn new(spec1: SpectralInterval, spec2: SpectralInterval) -> Result<Self> {
        for s in [&spec1, &spec2] {
            if s.is_degenerate() {
                return Err(Error::DegenerateSpectrum(s.lambda_min()));
            }
        }
        Ok(Self { spec1, spec2, delta12: spec1.width() * spec2.width() })
    }
}

/// Integral bound for an entry of `S_g^{-1}` with `M1`, `M2` tridiagonal.
///
/// With the column-stacking vec convention, the reshaped column solves
/// `M2 X + X M1 = E`: the within-block distance `d_row` decays with the
/// resolvent of `M2` and the block distance `d_col` with that of `M1`.
/// Both distances must be at least one.
pub fn sylvester_integral_bound(
    pair: &SylvesterSpectraPair,
    d_row: usize,
    d_col: usize,
    settings: &QuadratureSettings,
) -> Result<IntegralEstimate> {
    if d_row == 0 || d_col == 0 {
        return Err(Error::Inapplicable("the two-matrix bound needs l != i and m != j"));
    }
    let prefactor = 64.0 / (2.0 * PI * pair.delta12);
    let e_block = d_col as f64 - 1.0;
    let e_within = d_row as f64 - 1.0;
    integrate_checked(
        |omega| {
            let g1 = geometry_at(&pair.spec1, omega)?;
            let g2 = geometry_at(&pair.spec2, omega)?;
            let log_decay = -(e_block * g1.ln_r() + e_within * g2.ln_r());
            Ok(prefactor * g1.decay_factor() * g2.decay_factor() * log_decay.exp())
        },
        settings,
    )
}

// Quadrature over a fallible integrand; the first evaluation error wins.
fn integrate_checked<F>(mut f: F, settings: &QuadratureSettings) -> Result<IntegralEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut failure = None;
    let estimate = integrate_real_line(
        |omega| match f(omega) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        settings,
    );
    match failure {
        Some(e) => Err(e),
        None => estimate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec(lo: f64, hi: f64) -> SpectralInterval {
        SpectralInterval::new(lo, hi).unwrap()
    }

    #[test]
    fn diagonal_case_closed_form() {
        let s = spec(0.52025350, 1.47974650);
        let r = integral_entry_bound(&s, 35, 35, 10, 1, &QuadratureSettings::default()).unwrap();
        assert_eq!(r.value, 0.5 / 0.52025350);
        assert!((r.value - 0.9610700).abs() < 1e-7);
        assert_eq!(r.panels, 0);
    }

    #[test]
    fn two_by_two_laplacian_entries() {
        // S for tridiag(-1, 2, -1), n = 2 has column 1 equal to (7, 2, 2, 1) / 24
        let s = spec(1.0, 3.0);
        let q = QuadratureSettings::default();
        let corner = integral_entry_bound(&s, 4, 1, 2, 1, &q).unwrap();
        assert!(corner.converged);
        assert!(corner.value >= 1.0 / 24.0);
        let edge = integral_entry_bound(&s, 2, 1, 2, 1, &q).unwrap();
        assert!(edge.value >= 2.0 / 24.0);
    }

    #[test]
    fn case_one_matches_hand_quadrature() {
        // independent composite Simpson on omega in [0, 2000] plus analytic tail
        let s = spec(1.0, 3.0);
        let (d_row, d_col) = (2, 3);
        let integrand = |w: f64| {
            let m1 = (1.0 + w * w).sqrt();
            let m2 = (9.0 + w * w).sqrt();
            let alpha = (m1 + m2) / 2.0;
            let r = alpha + (alpha * alpha - 1.0).sqrt();
            let h = r * r / ((r * r - 1.0) * (r * r - 1.0));
            64.0 / (2.0 * PI * 4.0) * h * h * r.powf(-((d_row + d_col) as f64 - 2.0))
        };
        let (upper, steps) = (2000.0, 2_000_000);
        let hstep = upper / steps as f64;
        let mut acc = integrand(0.0) + integrand(upper);
        for i in 1..steps {
            acc += integrand(i as f64 * hstep) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let simpson = 2.0 * acc * hstep / 3.0;
        let got = integral_bound_by_distance(&s, d_row, d_col, 1, &QuadratureSettings::default()).unwrap();
        // the tail beyond 2000 decays like w^-7 and is negligible
        assert_relative_eq!(got.value, simpson, max_relative = 1e-9);
    }

    #[test]
    fn degenerate_and_bandwidth_errors() {
        let q = QuadratureSettings::default();
        assert!(matches!(integral_bound_by_distance(&spec(1.0, 1.0), 1, 1, 1, &q), Err(Error::DegenerateSpectrum(_))));
        assert!(integral_bound_by_distance(&spec(1.0, 1.0), 0, 0, 1, &q).is_ok());
        assert!(integral_bound_by_distance(&spec(1.0, 2.0), 1, 1, 0, &q).is_err());
        assert!(integral_entry_bound(&spec(1.0, 2.0), 0, 1, 3, 1, &q).is_err());
    }

    #[test]
    fn symmetric_in_k_and_t() {
        let s = spec(0.081, 3.92);
        let q = QuadratureSettings::default();
        for &(k, t) in &[(3, 47), (12, 88), (35, 36), (1, 100)] {
            let a = integral_entry_bound(&s, k, t, 10, 1, &q).unwrap();
            let b = integral_entry_bound(&s, t, k, 10, 1, &q).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn banded_exponent_scaling() {
        // with b = 2, distances (2, 2) give the same exponent as (1, 1) with b = 1
        let s = spec(0.3, 2.0);
        let q = QuadratureSettings::default();
        let a = integral_bound_by_distance(&s, 2, 2, 2, &q).unwrap();
        let b = integral_bound_by_distance(&s, 1, 1, 1, &q).unwrap();
        assert_relative_eq!(a.value, b.value, max_relative = 1e-12);
    }

    #[test]
    fn sylvester_reduces_to_single_matrix() {
        let s = spec(1.0, 3.0);
        let pair = SylvesterSpectraPair::new(s, s).unwrap();
        let q = QuadratureSettings::default();
        let two = sylvester_integral_bound(&pair, 2, 2, &q).unwrap();
        let one = integral_bound_by_distance(&s, 2, 2, 1, &q).unwrap();
        assert_relative_eq!(two.value, one.value, max_relative = 1e-12);
    }

    #[test]
    fn sylvester_errors_and_prefactor() {
        let q = QuadratureSettings::default();
        let pair = SylvesterSpectraPair::new(spec(1.0, 3.0), spec(2.0, 4.0)).unwrap();
        assert_eq!(pair.delta12, 4.0);
        assert!(sylvester_integral_bound(&pair, 0, 2, &q).is_err());
        assert!(sylvester_integral_bound(&pair, 2, 0, &q).is_err());
        assert!(SylvesterSpectraPair::new(spec(1.0, 1.0), spec(2.0, 4.0)).is_err());

        let wide = SylvesterSpectraPair::new(spec(1.0, 3.0), spec(2.0, 6.0)).unwrap();
        assert_eq!(wide.delta12, 2.0 * pair.delta12);
        assert_eq!(64.0 / wide.delta12, 0.5 * (64.0 / pair.delta12));
    }
}
