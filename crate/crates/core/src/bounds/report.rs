use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::closed_form::{asymptotic_entry_bound, explicit_entry_bound};
use super::demko::{demko_bound, DemkoConstants};
use super::integral::integral_bound_by_distance;
use crate::banded::BandedSymmetricMatrix;
use crate::error::Result;
use crate::grid::{mesh_separation, GridPoint, GridShape, MeshCase, MeshSeparation};
use crate::quadrature::{IntegralEstimate, QuadratureSettings};
use crate::spectrum::{extreme_eigenvalues, SpectralInterval};

/// Every bound available for one entry `(k, t)` of `S^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntryBoundReport {
    pub k: usize,
    pub t: usize,
    /// Grid point `(l, m)` of `k`.
    pub row_point: GridPoint,
    pub separation: MeshSeparation,
    pub integral: IntegralEstimate,
    /// `None` where the closed form does not apply.
    pub explicit: Option<f64>,
    pub asymptotic: Option<f64>,
    pub demko: f64,
    pub exact: Option<f64>,
}

/// Tolerances for [`EntryBoundReport::violations`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportChecks {
    pub envelope_rel: f64,
    pub envelope_abs: f64,
    pub chain_rel: f64,
    /// Whether to require `explicit <= asymptotic`. The case-ii asymptotic
    /// constant only dominates when `lambda_max >= 1`.
    pub asymptotic_link: bool,
}

impl Default for ReportChecks {
    fn default() -> Self {
        Self { envelope_rel: 1e-6, envelope_abs: 1e-14, chain_rel: 1e-8, asymptotic_link: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    /// `|exact| > integral (1 + rel) + abs`.
    Envelope {
        exact: f64,
        bound: f64,
    },
    IntegralAboveExplicit {
        integral: f64,
        explicit: f64,
    },
    ExplicitAboveAsymptotic {
        explicit: f64,
        asymptotic: f64,
    },
    NotConverged {
        value: f64,
        error: f64,
    },
}

impl EntryBoundReport {
    pub fn with_exact(mut self, exact: f64) -> Self {
        self.exact = Some(exact.abs());
        self
    }

    pub fn violations(&self, checks: &ReportChecks) -> Vec<Violation> {
        let mut out = Vec::new();
        let integral = self.integral.value;
        if !self.integral.converged {
            out.push(Violation::NotConverged { value: integral, error: self.integral.error });
        }
        if let Some(exact) = self.exact {
            if exact > integral * (1.0 + checks.envelope_rel) + checks.envelope_abs {
                out.push(Violation::Envelope { exact, bound: integral });
            }
        }
        if let Some(explicit) = self.explicit {
            if integral > explicit * (1.0 + checks.chain_rel) {
                out.push(Violation::IntegralAboveExplicit { integral, explicit });
            }
            if let (true, Some(asymptotic)) = (checks.asymptotic_link, self.asymptotic) {
                if explicit > asymptotic * (1.0 + checks.chain_rel) {
                    out.push(Violation::ExplicitAboveAsymptotic { explicit, asymptotic });
                }
            }
        }
        out
    }

    /// Copy with every bound divided by `factor` (the exact value is kept).
    pub fn with_bounds_divided(mut self, factor: f64) -> Self {
        self.integral = self.integral.scaled(1.0 / factor);
        self.explicit = self.explicit.map(|v| v / factor);
        self.asymptotic = self.asymptotic.map(|v| v / factor);
        self.demko /= factor;
        self
    }
}

/// Precomputed bounds for `S = M (x) I + I (x) M`.
///
/// All bounds depend on `(k, t)` only through the mesh case and the raw grid
/// distance, so one quadrature per distinct `(case, raw)` pair suffices.
#[derive(Debug, Clone)]
pub struct KroneckerBoundModel {
    n: usize,
    b: usize,
    spec: SpectralInterval,
    demko: DemkoConstants,
    integrals: BTreeMap<(MeshCase, usize), IntegralEstimate>,
}

impl KroneckerBoundModel {
    pub fn new(m: &BandedSymmetricMatrix, settings: &QuadratureSettings) -> Result<Self> {
        let spec = extreme_eigenvalues(m)?;
        Self::from_spectrum(spec, m.order(), m.bandwidth(), m.max_diagonal(), settings)
    }

    /// Model from the spectrum of `M`, its order, half-bandwidth and largest diagonal entry.
    pub fn from_spectrum(
        spec: SpectralInterval,
        n: usize,
        b: usize,
        max_diagonal: f64,
        settings: &QuadratureSettings,
    ) -> Result<Self> {
        let b = b.max(1);
        let demko = DemkoConstants::new(&spec.scaled(2.0)?, 2.0 * max_diagonal)?;
        let mut integrals = BTreeMap::new();
        for d_row in 0..n {
            for d_col in 0..n {
                let sep = MeshSeparation::from_distances(d_row, d_col);
                if let Entry::Vacant(slot) = integrals.entry((sep.case, sep.raw())) {
                    slot.insert(integral_bound_by_distance(&spec, d_row, d_col, b, settings)?);
                }
            }
        }
        Ok(Self { n, b, spec, demko, integrals })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.b
    }

    pub fn spectrum(&self) -> &SpectralInterval {
        &self.spec
    }

    /// Bandwidth of `S`, `n * b`.
    pub fn band_s(&self) -> usize {
        self.n * self.b
    }

    pub fn demko_constants(&self) -> &DemkoConstants {
        &self.demko
    }

    /// The case-ii asymptotic constant dominates the explicit bound only when `lambda_max >= 1`.
    pub fn asymptotic_dominates_explicit(&self) -> bool {
        self.spec.lambda_max() >= 1.0
    }

    pub fn integral_for(&self, sep: &MeshSeparation) -> IntegralEstimate {
        self.integrals[&(sep.case, sep.raw())]
    }

    pub fn entry(&self, k: usize, t: usize) -> Result<EntryBoundReport> {
        let separation = mesh_separation(k, t, self.n)?;
        let row_point = GridShape::square(self.n).point(k)?;
        // closed forms are stated for tridiagonal M only
        let closed = |f: fn(&SpectralInterval, &MeshSeparation) -> Result<f64>| {
            if self.b == 1 {
                f(&self.spec, &separation).ok()
            } else {
                None
            }
        };
        Ok(EntryBoundReport {
            k,
            t,
            row_point,
            separation,
            integral: self.integral_for(&separation),
            explicit: closed(explicit_entry_bound),
            asymptotic: closed(asymptotic_entry_bound),
            demko: demko_bound(&self.spec.scaled(2.0)?, self.band_s(), k.abs_diff(t), self.demko.d)?,
            exact: None,
        })
    }

    /// Reports for every row `k` of column `t`, ascending in `k`.
    pub fn column(&self, t: usize) -> Result<Vec<EntryBoundReport>> {
        (1..=self.n * self.n).map(|k| self.entry(k, t)).collect()
    }
}
