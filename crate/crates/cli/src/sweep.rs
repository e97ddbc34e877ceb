use kronbound::{
    assemble_kronecker_sum, cholesky, BandedSymmetricMatrix, CholeskyFactor, EntryBoundReport, Error,
    KroneckerBoundModel, QuadratureSettings,
};
use rayon::prelude::*;

/// `M`, its bound model and the dense factor of `S = M (x) I + I (x) M`.
pub struct Problem {
    pub m: BandedSymmetricMatrix,
    pub model: KroneckerBoundModel,
    pub factor: CholeskyFactor,
}

impl Problem {
    pub fn new(m: BandedSymmetricMatrix, settings: &QuadratureSettings) -> kronbound::Result<Self> {
        let model = KroneckerBoundModel::new(&m, settings)?;
        let factor = cholesky(&assemble_kronecker_sum(&m, &m)?)?;
        Ok(Self { m, model, factor })
    }

    /// Bound reports of column `t` with the exact entries attached, ascending in `k`.
    pub fn column(&self, t: usize) -> kronbound::Result<Vec<EntryBoundReport>> {
        let exact = self.factor.inverse_column(t)?;
        let reports = self.model.column(t)?;
        if let Some(r) = reports.iter().find(|r| !r.integral.converged) {
            return Err(Error::QuadratureNotConverged { value: r.integral.value, error: r.integral.error });
        }
        Ok(reports.into_iter().zip(exact).map(|(r, x)| r.with_exact(x)).collect())
    }

    /// Columns computed in parallel, returned in the order requested.
    pub fn columns(&self, ts: &[usize]) -> kronbound::Result<Vec<Vec<EntryBoundReport>>> {
        ts.par_iter().map(|&t| self.column(t)).collect()
    }
}
