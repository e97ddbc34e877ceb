use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args;
use kronbound::{make_preset, BandedSymmetricMatrix, QuadratureSettings};

/// Where the matrix `M` comes from.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct MatrixSource {
    /// Built-in matrix: fd-laplacian, dd, legendre or ninepoint.
    #[arg(long)]
    pub preset: Option<String>,

    /// Banded matrix in the plain-text diagonal format.
    #[arg(long, value_name = "PATH")]
    pub matrix_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub source: MatrixSource,

    /// Order of `M` (required with --preset; checked against a matrix file).
    #[arg(long)]
    pub n: Option<usize>,

    /// Apply the symmetric diagonal scaling D^{-1/2} M D^{-1/2}.
    #[arg(long)]
    pub scale_diag: bool,
}

impl MatrixArgs {
    pub fn load(&self) -> anyhow::Result<BandedSymmetricMatrix> {
        let m = match (&self.source.preset, &self.source.matrix_file) {
            (Some(name), None) => {
                let Some(n) = self.n else { bail!("--preset needs --n") };
                make_preset(name, n)?
            }
            (None, Some(path)) => {
                let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
                let m: BandedSymmetricMatrix = text.parse().with_context(|| format!("in {}", path.display()))?;
                if let Some(n) = self.n.filter(|&n| n != m.order()) {
                    bail!("--n {n} does not match the file's order {}", m.order());
                }
                m
            }
            _ => bail!("give exactly one of --preset and --matrix-file"),
        };
        Ok(if self.scale_diag { m.scale_by_diagonal()? } else { m })
    }
}

#[derive(Debug, Clone, Args)]
pub struct QuadratureArgs {
    /// Absolute tolerance of the frequency quadrature.
    #[arg(long, default_value_t = QuadratureSettings::default().abs_tol)]
    pub tol_abs: f64,

    /// Relative tolerance of the frequency quadrature.
    #[arg(long, default_value_t = QuadratureSettings::default().rel_tol)]
    pub tol_rel: f64,
}

impl QuadratureArgs {
    pub fn settings(&self) -> anyhow::Result<QuadratureSettings> {
        Ok(QuadratureSettings::with_tolerances(self.tol_abs, self.tol_rel)?)
    }
}

/// Checks 1-based column indices against the order `n^2` of `S`.
pub fn check_columns(columns: &[usize], order_s: usize) -> anyhow::Result<()> {
    if let Some(&t) = columns.iter().find(|&&t| t == 0 || t > order_s) {
        bail!("column {t} is outside 1..={order_s}");
    }
    Ok(())
}
