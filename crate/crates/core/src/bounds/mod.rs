//! Upper bounds on the entries of `S^{-1}` for Kronecker sums `S`.

mod closed_form;
mod demko;
mod geometry;
mod integral;
mod report;

pub use closed_form::{asymptotic_entry_bound, explicit_entry_bound, inverse_cholesky_factor_bound, BoundConstants};
pub use demko::{demko_bound, DemkoConstants};
pub use geometry::{freund_entry_bound, geometry_at, resolvent_diagonal_bound, FreundMode, ShiftedSpectrumGeometry};
pub use integral::{integral_bound_by_distance, integral_entry_bound, sylvester_integral_bound, SylvesterSpectraPair};
pub use report::{EntryBoundReport, KroneckerBoundModel, ReportChecks, Violation};
