//! Oscillation-aware upper bounds on the entries of `S^{-1}` for Kronecker
//! sums `S = M (x) I + I (x) M` (and `M1 (x) I + I (x) M2`) of banded SPD
//! matrices, together with a dense oracle to check them against.
//!
//! Indices in the public API are 1-based, matching the usual grid notation
//! `t = i + n (j - 1)`.

pub mod banded;
pub mod bounds;
pub mod eigen;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod quadrature;
pub mod spectrum;

pub use banded::{make_preset, BandedSymmetricMatrix, Preset};
pub use bounds::{
    asymptotic_entry_bound, demko_bound, explicit_entry_bound, freund_entry_bound, geometry_at,
    integral_bound_by_distance, integral_entry_bound, inverse_cholesky_factor_bound, resolvent_diagonal_bound,
    sylvester_integral_bound, BoundConstants, DemkoConstants, EntryBoundReport, FreundMode, KroneckerBoundModel,
    ReportChecks, ShiftedSpectrumGeometry, SylvesterSpectraPair, Violation,
};
pub use error::{Error, Result};
pub use grid::{grid_of_linear, linear_of_grid, mesh_separation, GridPoint, GridShape, MeshCase, MeshSeparation};
pub use oracle::{
    assemble_kronecker_sum, cholesky, inverse_column, inverse_transpose_factor_entry, lyapunov_residual,
    CholeskyFactor, DenseMatrix,
};
pub use quadrature::{integrate_real_line, IntegralEstimate, QuadratureSettings};
pub use spectrum::{extreme_eigenvalues, SpectralInterval};
