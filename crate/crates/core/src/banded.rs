//! Symmetric banded matrices stored by diagonals, plus the preset generators
//! for the standard test operators.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A symmetric `b`-banded matrix of order `n`.
///
/// Only the main diagonal and the `b` upper diagonals are stored; diagonal
/// `d` has length `n - d`. Entries with `|i - j| > b` are exactly zero.
/// Positive definiteness is not checked here.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedSymmetricMatrix {
    n: usize,
    diagonals: Vec<Vec<f64>>,
}

impl BandedSymmetricMatrix {
    /// Builds a matrix from its diagonals, main diagonal first.
    pub fn from_diagonals(diagonals: Vec<Vec<f64>>) -> Result<Self> {
        let n = diagonals.first().map(Vec::len).ok_or_else(|| Error::InvalidMatrix("no diagonals given".into()))?;
        if n == 0 {
            return Err(Error::InvalidMatrix("order must be at least 1".into()));
        }
        if diagonals.len() > n {
            return Err(Error::InvalidMatrix(format!(
                "half-bandwidth {} must be below the order {n}",
                diagonals.len() - 1
            )));
        }
        for (d, diag) in diagonals.iter().enumerate() {
            if diag.len() != n - d {
                return Err(Error::InvalidMatrix(format!(
                    "diagonal {d} has length {}, expected {}",
                    diag.len(),
                    n - d
                )));
            }
            if let Some(v) = diag.iter().find(|v| !v.is_finite()) {
                return Err(Error::InvalidMatrix(format!("non-finite entry {v} on diagonal {d}")));
            }
        }
        Ok(Self { n, diagonals })
    }

    /// Constant-coefficient banded Toeplitz matrix; `coeffs[d]` fills diagonal `d`.
    pub fn toeplitz(n: usize, coeffs: &[f64]) -> Result<Self> {
        Self::from_diagonals(coeffs.iter().enumerate().map(|(d, &c)| vec![c; n.saturating_sub(d)]).collect())
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::toeplitz(n, &[1.0])
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Half-bandwidth `b`.
    pub fn bandwidth(&self) -> usize {
        self.diagonals.len() - 1
    }

    pub fn diagonal(&self, d: usize) -> &[f64] {
        &self.diagonals[d]
    }

    pub fn diagonals(&self) -> &[Vec<f64>] {
        &self.diagonals
    }

    /// Entry `(i, j)` with 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "entry ({i}, {j}) outside order {}", self.n);
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let d = hi - lo;
        if d > self.bandwidth() {
            0.0
        } else {
            self.diagonals[d][lo]
        }
    }

    pub fn max_diagonal(&self) -> f64 {
        self.diagonals[0].iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Row-major dense copy.
    pub fn to_dense_rows(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for (d, diag) in self.diagonals.iter().enumerate() {
            for (r, &v) in diag.iter().enumerate() {
                out[r * n + r + d] = v;
                out[(r + d) * n + r] = v;
            }
        }
        out
    }

    /// `y = M x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y: Vec<f64> = self.diagonals[0].iter().zip(x).map(|(a, b)| a * b).collect();
        for (d, diag) in self.diagonals.iter().enumerate().skip(1) {
            for (r, &v) in diag.iter().enumerate() {
                y[r] += v * x[r + d];
                y[r + d] += v * x[r];
            }
        }
        y
    }

    /// Symmetric Jacobi scaling `D^{-1/2} M D^{-1/2}`, `D = diag(M)`.
    ///
    /// The main diagonal of the result is set to exactly one, which makes
    /// the operation idempotent in floating point.
    pub fn scale_by_diagonal(&self) -> Result<Self> {
        let main = &self.diagonals[0];
        if let Some((row, &value)) = main.iter().enumerate().find(|(_, &v)| v <= 0.0) {
            return Err(Error::NonPositiveDiagonal { row: row + 1, value });
        }
        let mut diagonals = Vec::with_capacity(self.diagonals.len());
        diagonals.push(vec![1.0; self.n]);
        for (d, diag) in self.diagonals.iter().enumerate().skip(1) {
            diagonals.push(diag.iter().enumerate().map(|(r, &v)| v / (main[r] * main[r + d]).sqrt()).collect());
        }
        Self::from_diagonals(diagonals)
    }
}

/// Parses the plain-text matrix format: a header line `n b`, then `b + 1`
/// lines holding diagonal `d` (main diagonal first) with `n - d` entries each.
impl FromStr for BandedSymmetricMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let header: Vec<&str> = header.split_whitespace().collect();
        let parse_usize =
            |s: &str| s.parse::<usize>().map_err(|e| Error::Parse { line: hline, msg: format!("`{s}`: {e}") });
        let (n, b) = match header.as_slice() {
            [n, b] => (parse_usize(n)?, parse_usize(b)?),
            _ => return Err(Error::Parse { line: hline, msg: "header must be `n b`".into() }),
        };
        if n == 0 || b >= n {
            return Err(Error::Parse { line: hline, msg: format!("need n >= 1 and b < n, got n={n} b={b}") });
        }

        let mut diagonals = Vec::with_capacity(b + 1);
        for d in 0..=b {
            let (line, body) = lines
                .next()
                .ok_or_else(|| Error::Parse { line: hline + d + 1, msg: format!("missing diagonal {d}") })?;
            let values = body
                .split_whitespace()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Parse { line, msg: format!("`{s}`: {e}") }))
                .collect::<Result<Vec<_>>>()?;
            if values.len() != n - d {
                return Err(Error::Parse {
                    line,
                    msg: format!("diagonal {d} has {} entries, expected {}", values.len(), n - d),
                });
            }
            diagonals.push(values);
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, msg: "trailing content after the last diagonal".into() });
        }
        Self::from_diagonals(diagonals)
    }
}

/// Writes the same text format accepted by [`FromStr`].
impl fmt::Display for BandedSymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.bandwidth())?;
        for diag in &self.diagonals {
            let row: Vec<String> = diag.iter().map(|v| format!("{v:e}")).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The named operators used throughout the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `tridiag(-1, 2, -1)`: second-order finite differences.
    FdLaplacian,
    /// `tridiag(-0.5, 2, -0.5)`: strongly diagonally dominant.
    DiagonallyDominant,
    /// Babuska-Shen Legendre stiffness matrix (even degrees).
    Legendre,
    /// `pentadiag(1/12, -4/3, 15/6, -4/3, 1/12)`: fourth-order differences.
    NinePoint,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::FdLaplacian, Preset::DiagonallyDominant, Preset::Legendre, Preset::NinePoint];

    pub fn name(self) -> &'static str {
        match self {
            Preset::FdLaplacian => "fd-laplacian",
            Preset::DiagonallyDominant => "dd",
            Preset::Legendre => "legendre",
            Preset::NinePoint => "ninepoint",
        }
    }

    pub fn min_order(self) -> usize {
        match self {
            Preset::NinePoint => 3,
            _ => 2,
        }
    }

    pub fn build(self, n: usize) -> Result<BandedSymmetricMatrix> {
        if n < self.min_order() {
            return Err(Error::OrderTooSmall { name: self.name().into(), n, min: self.min_order() });
        }
        match self {
            Preset::FdLaplacian => BandedSymmetricMatrix::toeplitz(n, &[2.0, -1.0]),
            Preset::DiagonallyDominant => BandedSymmetricMatrix::toeplitz(n, &[2.0, -0.5]),
            Preset::NinePoint => BandedSymmetricMatrix::toeplitz(n, &[15.0 / 6.0, -4.0 / 3.0, 1.0 / 12.0]),
            Preset::Legendre => {
                let gamma = (1..=n)
                    .map(|k| {
                        let k = k as f64;
                        2.0 / ((4.0 * k - 3.0) * (4.0 * k + 1.0))
                    })
                    .collect();
                let delta = (1..n)
                    .map(|k| {
                        let k = k as f64;
                        -1.0 / ((4.0 * k + 1.0) * ((4.0 * k - 1.0) * (4.0 * k + 3.0)).sqrt())
                    })
                    .collect();
                BandedSymmetricMatrix::from_diagonals(vec![gamma, delta])
            }
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Builds a preset by name at order `n`.
pub fn make_preset(name: &str, n: usize) -> Result<BandedSymmetricMatrix> {
    name.parse::<Preset>()?.build(n)
}
