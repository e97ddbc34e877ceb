//! CSV emission: header row, `.` decimal point, LF line endings, numbers in
//! shortest round-trip scientific notation, empty fields for missing values.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::Context;
use kronbound::EntryBoundReport;

pub const BOUNDS_HEADER: &str = "k,ell,m,case,exact_abs,integral,explicit,asymptotic,demko";

pub fn number(v: f64) -> String {
    format!("{v:e}")
}

fn optional(v: Option<f64>) -> String {
    v.map(number).unwrap_or_default()
}

fn push_row(out: &mut String, fields: &[String]) {
    out.push_str(&fields.join(","));
    out.push('\n');
}

fn row_prefix(r: &EntryBoundReport) -> Vec<String> {
    vec![r.k.to_string(), r.row_point.i.to_string(), r.row_point.j.to_string(), r.separation.case.label().to_string()]
}

pub fn bounds_table(reports: &[EntryBoundReport]) -> String {
    let mut out = String::new();
    writeln!(out, "{BOUNDS_HEADER}").unwrap();
    for r in reports {
        let mut fields = row_prefix(r);
        fields.extend([
            optional(r.exact),
            number(r.integral.value),
            optional(r.explicit),
            optional(r.asymptotic),
            number(r.demko),
        ]);
        push_row(&mut out, &fields);
    }
    out
}

/// Figure table: `|exact|`, the integral bound and optionally the Demko bound,
/// each divided by `scale` when given (one factor per curve).
pub fn figure_table(reports: &[EntryBoundReport], demko: bool, scale: Option<[f64; 3]>) -> String {
    let [se, si, sd] = scale.unwrap_or([1.0; 3]);
    let mut out = String::from("k,ell,m,case,exact_abs,integral");
    out.push_str(if demko { ",demko\n" } else { "\n" });
    for r in reports {
        let mut fields = row_prefix(r);
        fields.push(number(r.exact.unwrap_or(f64::NAN) / se));
        fields.push(number(r.integral.value / si));
        if demko {
            fields.push(number(r.demko / sd));
        }
        push_row(&mut out, &fields);
    }
    out
}

pub fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}
