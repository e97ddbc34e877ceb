//! Adaptive Gauss-Kronrod (7/15) integration of even functions over the
//! whole real line.
//!
//! The half line `[0, inf)` is mapped onto `(0, 1)` with `omega = tau / (1 - tau)`,
//! the mapped integrand is integrated with globally adaptive bisection of the
//! panel carrying the largest error estimate, and the result is doubled.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Kronrod abscissae on [-1, 1], positive half, descending; `XGK[7] = 0`.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the odd-indexed Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Number of equal panels the unit interval starts with.
const INITIAL_PANELS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 1e-9, max_subdivisions: 2000 }
    }
}

impl QuadratureSettings {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        Self { abs_tol, rel_tol, ..Self::default() }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) || self.max_subdivisions == 0 {
            return Err(Error::InvalidSettings(format!(
                "quadrature settings need positive tolerances and at least one subdivision: {self:?}"
            )));
        }
        Ok(self)
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
    pub converged: bool,
}

impl IntegralEstimate {
    /// An exactly known value.
    pub fn exact(value: f64) -> Self {
        Self { value, error: 0.0, panels: 0, converged: true }
    }

    /// Multiplies value and error estimate by a non-negative constant.
    pub fn scaled(self, factor: f64) -> Self {
        Self { value: self.value * factor, error: self.error * factor.abs(), ..self }
    }

    /// `Err` when the estimate is flagged as not converged.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::QuadratureNotConverged { value: self.value, error: self.error })
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // largest error first; ties broken by position so the order is total and deterministic
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One Gauss-Kronrod 7/15 panel on `[a, b]`: `(kronrod, |kronrod - gauss|)`.
fn gauss_kronrod_15<F>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (idx, (&x, &wk)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx)? + f(center + dx)?;
        kronrod += wk * pair;
        if idx % 2 == 1 {
            gauss += WG[idx / 2] * pair;
        }
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).abs()))
}

/// Globally adaptive integration of `f` over `[a, b]`.
pub fn integrate_interval<F>(mut f: F, a: f64, b: f64, settings: &QuadratureSettings) -> Result<IntegralEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut heap = BinaryHeap::new();
    let width = (b - a) / INITIAL_PANELS as f64;
    for p in 0..INITIAL_PANELS {
        let lo = a + width * p as f64;
        let hi = if p + 1 == INITIAL_PANELS { b } else { lo + width };
        let (value, error) = gauss_kronrod_15(&mut f, lo, hi)?;
        heap.push(Panel { a: lo, b: hi, value, error });
    }

    let mut panels = INITIAL_PANELS;
    loop {
        let (value, error) = totals(&heap);
        if error <= settings.target(value) {
            return Ok(IntegralEstimate { value, error, panels, converged: true });
        }
        if panels >= settings.max_subdivisions.max(INITIAL_PANELS) {
            return Ok(IntegralEstimate { value, error, panels, converged: false });
        }
        let worst = heap.pop().expect("panel heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // cannot bisect further in floating point
            heap.push(worst);
            let (value, error) = totals(&heap);
            return Ok(IntegralEstimate { value, error, panels, converged: false });
        }
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gauss_kronrod_15(&mut f, lo, hi)?;
            heap.push(Panel { a: lo, b: hi, value, error });
        }
        panels += 1;
    }
}

// Sum in a fixed (positional) order so the result does not depend on heap layout.
fn totals(heap: &BinaryHeap<Panel>) -> (f64, f64) {
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    panels.iter().fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
}

/// `integral_{-inf}^{inf} f(omega) d omega` for an even `f`, sampling only `omega >= 0`.
///
/// Non-convergence is reported through [`IntegralEstimate::converged`]; a
/// non-finite sample is an error.
pub fn integrate_real_line<F>(mut f: F, settings: &QuadratureSettings) -> Result<IntegralEstimate>
where
    F: FnMut(f64) -> f64,
{
    let half_settings = QuadratureSettings { abs_tol: 0.5 * settings.abs_tol, ..*settings };
    let mapped = |tau: f64| {
        let gap = 1.0 - tau;
        let omega = tau / gap;
        let y = f(omega) / (gap * gap);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteSample { omega })
        }
    };
    let half = integrate_interval(mapped, 0.0, 1.0, &half_settings)?;
    Ok(half.scaled(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn tight() -> QuadratureSettings {
        QuadratureSettings { abs_tol: 1e-15, rel_tol: 1e-12, max_subdivisions: 4000 }
    }

    #[test]
    fn examples() {
        let s = QuadratureSettings::default();
        let r = integrate_real_line(|w| 1.0 / (1.0 + w * w), &s).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.value, PI, max_relative = 1e-10);

        let r = integrate_real_line(|w| 1.0 / (4.0 + w * w), &s).unwrap();
        assert_relative_eq!(r.value, PI / 2.0, max_relative = 1e-10);

        let r = integrate_real_line(|w| (1.0 + w * w).powi(-2), &s).unwrap();
        assert_relative_eq!(r.value, PI / 2.0, max_relative = 1e-10);
    }

    #[test]
    fn pi_over_lambda_law() {
        for lambda in [0.04, 0.5, 1.0, 3.0, 10.0] {
            let r = integrate_real_line(|w| 1.0 / (lambda * lambda + w * w), &tight()).unwrap();
            assert!(r.converged);
            assert_relative_eq!(r.value, PI / lambda, max_relative = 1e-10);
        }
    }

    #[test]
    fn converged_flag_matches_error_contract() {
        let s = QuadratureSettings::default();
        let r = integrate_real_line(|w| 1.0 / (0.01 + w * w).sqrt() / (1.0 + w * w), &s).unwrap();
        assert!(r.converged);
        assert!(r.error <= s.abs_tol.max(s.rel_tol * r.value.abs()));
    }

    #[test]
    fn reports_non_convergence() {
        let s = QuadratureSettings { abs_tol: 1e-300, rel_tol: 1e-300, max_subdivisions: 12 };
        let r = integrate_real_line(|w| 1.0 / (1e-4 + w * w), &s).unwrap();
        assert!(!r.converged);
        assert!(r.panels <= 12);
        assert!(r.value > 0.0);
        assert!(r.require_converged().is_err());
    }

    #[test]
    fn non_finite_sample_is_an_error() {
        let s = QuadratureSettings::default();
        let r = integrate_real_line(|w| if w > 5.0 { f64::NAN } else { 1.0 }, &s);
        assert!(matches!(r, Err(Error::NonFiniteSample { .. })));
    }

    #[test]
    fn deterministic() {
        let s = QuadratureSettings::default();
        let f = |w: f64| (1.0 + w * w).powf(-1.3) * (1.0 + 0.5 * (w * 0.1).cos());
        let a = integrate_real_line(f, &s).unwrap();
        let b = integrate_real_line(f, &s).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn settings_validation() {
        assert!(QuadratureSettings::with_tolerances(0.0, 1e-9).is_err());
        assert!(QuadratureSettings::with_tolerances(1e-12, -1.0).is_err());
        assert!(QuadratureSettings { max_subdivisions: 0, ..Default::default() }.validated().is_err());
        assert!(QuadratureSettings::with_tolerances(1e-10, 1e-8).is_ok());
    }

    #[test]
    fn finite_interval() {
        let r = integrate_interval(|x| Ok(x.sin()), 0.0, PI, &QuadratureSettings::default()).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-12);
    }
}
