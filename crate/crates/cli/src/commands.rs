use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, ValueEnum};
use kronbound::{
    inverse_cholesky_factor_bound, lyapunov_residual, make_preset, DenseMatrix, EntryBoundReport, MeshCase,
    QuadratureSettings, ReportChecks, Violation,
};
use rayon::prelude::*;

use crate::csv;
use crate::source::{check_columns, MatrixArgs, QuadratureArgs};
use crate::sweep::Problem;

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,

    /// Column `t` of `S^{-1}` to report (1-based, repeatable).
    #[arg(long = "column", value_name = "T", required = true)]
    pub columns: Vec<usize>,

    #[command(flatten)]
    pub quadrature: QuadratureArgs,

    /// Output directory; one `column_<t>.csv` per column.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

pub fn bounds(args: &BoundsArgs) -> anyhow::Result<()> {
    let m = args.matrix.load()?;
    let settings = args.quadrature.settings()?;
    check_columns(&args.columns, m.order() * m.order())?;
    let problem = Problem::new(m, &settings)?;
    let tables = problem.columns(&args.columns)?;
    fs::create_dir_all(&args.out).with_context(|| format!("cannot create {}", args.out.display()))?;
    for (t, reports) in args.columns.iter().zip(&tables) {
        let path = args.out.join(format!("column_{t}.csv"));
        csv::write(&path, &csv::bounds_table(reports))?;
        println!("{}", path.display());
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,

    /// Columns to check (1-based, repeatable); all columns when omitted.
    #[arg(long = "column", value_name = "T")]
    pub columns: Vec<usize>,

    #[command(flatten)]
    pub quadrature: QuadratureArgs,

    /// Relative slack of the upper-envelope check.
    #[arg(long, default_value_t = 1e-6)]
    pub envelope_rel: f64,

    /// Divide every bound by this factor before checking.
    #[arg(long, hide = true, default_value_t = 1.0)]
    pub bound_divisor: f64,
}

const LYAPUNOV_TOL: f64 = 1e-10;
const SYMMETRY_TOL: f64 = 1e-12;
const SHOWN_VIOLATIONS: usize = 20;

#[derive(Default)]
struct CaseSummary {
    entries: usize,
    // smallest bound / |exact| seen for integral, explicit, asymptotic, demko
    tightest: [Option<f64>; 4],
}

impl CaseSummary {
    fn add(&mut self, r: &EntryBoundReport) {
        self.entries += 1;
        let Some(exact) = r.exact.filter(|&x| x > 0.0) else { return };
        let bounds = [Some(r.integral.value), r.explicit, r.asymptotic, Some(r.demko)];
        for (slot, b) in self.tightest.iter_mut().zip(bounds) {
            if let Some(b) = b {
                let ratio = b / exact;
                *slot = Some(slot.map_or(ratio, |s: f64| s.min(ratio)));
            }
        }
    }
}

/// Returns whether every property held.
pub fn verify(args: &VerifyArgs) -> anyhow::Result<bool> {
    let m = args.matrix.load()?;
    let settings = args.quadrature.settings()?;
    let order_s = m.order() * m.order();
    let columns: Vec<usize> = if args.columns.is_empty() { (1..=order_s).collect() } else { args.columns.clone() };
    check_columns(&columns, order_s)?;
    if !(args.bound_divisor > 0.0) {
        anyhow::bail!("--bound-divisor must be positive");
    }
    let problem = Problem::new(m, &settings)?;
    let model = &problem.model;
    let checks = ReportChecks {
        envelope_rel: args.envelope_rel,
        asymptotic_link: model.asymptotic_dominates_explicit(),
        ..ReportChecks::default()
    };
    let cholesky_applies = model.bandwidth() == 1 && model.asymptotic_dominates_explicit();
    let tables = problem.columns(&columns)?;

    let per_column: Vec<(Vec<String>, f64, f64)> = columns
        .par_iter()
        .zip(&tables)
        .map(|(&t, reports)| check_column(&problem, t, reports, &checks, args.bound_divisor, cholesky_applies))
        .collect::<anyhow::Result<_>>()?;

    let mut problems: Vec<String> = Vec::new();
    let (mut worst_residual, mut worst_cholesky) = (0.0f64, 0.0f64);
    for (p, res, chol) in per_column {
        problems.extend(p);
        worst_residual = worst_residual.max(res);
        worst_cholesky = worst_cholesky.max(chol);
    }
    let position: BTreeMap<usize, usize> = columns.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    for (&a, &ia) in &position {
        for (&b, &ib) in position.range(a + 1..) {
            let (x, y) = (tables[ia][b - 1].exact, tables[ib][a - 1].exact);
            if let (Some(x), Some(y)) = (x, y) {
                if (x - y).abs() > SYMMETRY_TOL {
                    problems.push(format!("(k={b}, t={a}): inverse not symmetric, {x:e} vs {y:e}"));
                }
            }
        }
    }

    let mut summary: BTreeMap<MeshCase, CaseSummary> = BTreeMap::new();
    for r in tables.iter().flatten() {
        summary.entry(r.separation.case).or_default().add(&r.with_bounds_divided(args.bound_divisor));
    }
    let spec = model.spectrum();
    println!(
        "M: order {}, half-bandwidth {}, spectrum [{:e}, {:e}]; {} column(s) checked",
        model.order(),
        model.bandwidth(),
        spec.lambda_min(),
        spec.lambda_max(),
        columns.len()
    );
    println!(
        "{:<11} {:>7} {:>14} {:>14} {:>14} {:>14}",
        "case", "entries", "integral", "explicit", "asymptotic", "demko"
    );
    for (case, s) in &summary {
        let cells: Vec<String> =
            s.tightest.iter().map(|v| v.map_or_else(|| "-".to_string(), |v| format!("{v:.6e}"))).collect();
        println!(
            "{:<11} {:>7} {:>14} {:>14} {:>14} {:>14}",
            case.label(),
            s.entries,
            cells[0],
            cells[1],
            cells[2],
            cells[3]
        );
    }
    println!("(columns show the smallest bound/|exact| ratio; values below 1 break the envelope)");
    println!("max Lyapunov residual: {worst_residual:e}");
    if cholesky_applies {
        println!("max |L^-T| / bound: {worst_cholesky:e}");
    } else {
        println!("inverse Cholesky factor bound: not applicable (needs tridiagonal M with lambda_max >= 1)");
    }
    if !checks.asymptotic_link {
        println!("explicit <= asymptotic: not checked (lambda_max < 1)");
    }
    for p in problems.iter().take(SHOWN_VIOLATIONS) {
        println!("violation {p}");
    }
    if problems.len() > SHOWN_VIOLATIONS {
        println!("... {} more violation(s)", problems.len() - SHOWN_VIOLATIONS);
    }
    println!("{}", if problems.is_empty() { "PASS" } else { "FAIL" });
    Ok(problems.is_empty())
}

fn describe(v: &Violation) -> String {
    match v {
        Violation::Envelope { exact, bound } => format!("|exact| {exact:e} exceeds integral bound {bound:e}"),
        Violation::IntegralAboveExplicit { integral, explicit } => {
            format!("integral {integral:e} exceeds explicit {explicit:e}")
        }
        Violation::ExplicitAboveAsymptotic { explicit, asymptotic } => {
            format!("explicit {explicit:e} exceeds asymptotic {asymptotic:e}")
        }
        Violation::NotConverged { value, error } => format!("quadrature not converged ({value:e} +- {error:e})"),
    }
}

fn check_column(
    problem: &Problem,
    t: usize,
    reports: &[EntryBoundReport],
    checks: &ReportChecks,
    divisor: f64,
    cholesky_applies: bool,
) -> anyhow::Result<(Vec<String>, f64, f64)> {
    let model = &problem.model;
    let n = model.order();
    let mut problems = Vec::new();
    for r in reports {
        let divided = r.with_bounds_divided(divisor);
        for v in divided.violations(checks) {
            problems.push(format!("(k={}, t={t}): {}", r.k, describe(&v)));
        }
        let mirror = model.entry(t, r.k)?;
        if (mirror.integral.value, mirror.explicit, mirror.asymptotic, mirror.demko)
            != (r.integral.value, r.explicit, r.asymptotic, r.demko)
        {
            problems.push(format!("(k={}, t={t}): bounds differ from those of (k={t}, t={})", r.k, r.k));
        }
    }

    let exact: Vec<f64> = problem.factor.inverse_column(t)?;
    let x = DenseMatrix::from_vec_columns(&exact, n, n)?;
    let residual = lyapunov_residual(&problem.m, &problem.m, &x, t)?;
    if residual > LYAPUNOV_TOL {
        problems.push(format!("(t={t}): Lyapunov residual {residual:e}"));
    }

    let mut worst_cholesky = 0.0f64;
    if cholesky_applies {
        let column = problem.factor.inverse_transpose_column(t)?;
        for r in &reports[..t] {
            if !r.separation.reduced().is_some_and(|v| v > 0) {
                continue;
            }
            let bound = inverse_cholesky_factor_bound(model.spectrum(), &r.separation, model.band_s())? / divisor;
            let v = column[r.k - 1].abs();
            worst_cholesky = worst_cholesky.max(v / bound);
            if v > bound {
                problems.push(format!("(k={}, t={t}): |L^-T| {v:e} exceeds {bound:e}", r.k));
            }
        }
    }
    Ok((problems, residual, worst_cholesky))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    Ex0,
    Ex1,
    Ex2,
    Penta,
}

impl FigureName {
    /// Preset, column and whether the Demko curve is included.
    fn setup(self) -> (&'static str, usize, bool) {
        match self {
            FigureName::Ex0 => ("dd", 55, true),
            FigureName::Ex1 => ("fd-laplacian", 35, false),
            FigureName::Ex2 => ("legendre", 35, false),
            FigureName::Penta => ("ninepoint", 55, false),
        }
    }

    fn file_stem(self) -> &'static str {
        match self {
            FigureName::Ex0 => "ex0",
            FigureName::Ex1 => "ex1",
            FigureName::Ex2 => "ex2",
            FigureName::Penta => "penta",
        }
    }
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub name: FigureName,

    #[command(flatten)]
    pub quadrature: QuadratureArgs,

    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

/// Order of `M` in every figure (`S` has order 100).
pub const FIGURE_ORDER: usize = 10;

pub fn figure(args: &FigureArgs) -> anyhow::Result<()> {
    let settings = args.quadrature.settings()?;
    let (preset, t, demko) = args.name.setup();
    let reports = figure_column(preset, t, &settings)?;
    let diag = &reports[t - 1];
    let scale = [diag.exact.unwrap_or(f64::NAN), diag.integral.value, diag.demko];

    fs::create_dir_all(&args.out).with_context(|| format!("cannot create {}", args.out.display()))?;
    let stem = args.name.file_stem();
    write_figure(&args.out, &format!("{stem}.csv"), &csv::figure_table(&reports, demko, Some(scale)))?;
    if args.name == FigureName::Ex0 {
        write_figure(&args.out, &format!("{stem}_raw.csv"), &csv::figure_table(&reports, demko, None))?;
    }
    Ok(())
}

fn figure_column(preset: &str, t: usize, settings: &QuadratureSettings) -> anyhow::Result<Vec<EntryBoundReport>> {
    let m = make_preset(preset, FIGURE_ORDER)?.scale_by_diagonal()?;
    Ok(Problem::new(m, settings)?.column(t)?)
}

fn write_figure(dir: &Path, name: &str, contents: &str) -> anyhow::Result<()> {
    let path = dir.join(name);
    csv::write(&path, contents)?;
    println!("{}", path.display());
    Ok(())
}
