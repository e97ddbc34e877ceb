//! Dense ground truth for desk-scale problems: Kronecker-sum assembly,
//! Cholesky factorization, exact inverse columns and inverse-factor entries.

use crate::banded::BandedSymmetricMatrix;
use crate::error::{Error, Result};
use crate::grid::GridShape;

/// Largest operator order the dense oracle will assemble.
pub const DENSE_ORDER_CAP: usize = 10_000;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} values for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_banded(m: &BandedSymmetricMatrix) -> Self {
        Self { rows: m.order(), cols: m.order(), data: m.to_dense_rows() }
    }

    /// Inverse of the column-stacking vec: `x[r + rows * c]` becomes entry `(r, c)`.
    pub fn from_vec_columns(x: &[f64], rows: usize, cols: usize) -> Result<Self> {
        if x.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} into {rows}x{cols}", x.len())));
        }
        let mut out = Self::zeros(rows, cols);
        for c in 0..cols {
            for r in 0..rows {
                out.data[r * cols + c] = x[r + rows * c];
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// 0-based entry.
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn inf_norm(&self) -> f64 {
        self.data.chunks(self.cols.max(1)).map(|row| row.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let scale = self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        (0..self.rows).all(|r| (0..r).all(|c| (self.get(r, c) - self.get(c, r)).abs() <= rel_tol * scale))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        self.data.chunks(self.cols).map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0.0 {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }
}

/// `M1 (x) I + I (x) M2` with the vec convention of [`GridShape`]: the
/// within-block index runs over the order of `M2`, the block index over the order of `M1`.
pub fn assemble_kronecker_sum(m1: &BandedSymmetricMatrix, m2: &BandedSymmetricMatrix) -> Result<DenseMatrix> {
    let (n1, n2) = (m1.order(), m2.order());
    let order = n1
        .checked_mul(n2)
        .filter(|&o| o <= DENSE_ORDER_CAP)
        .ok_or(Error::TooLarge { order: n1.saturating_mul(n2), cap: DENSE_ORDER_CAP })?;
    let mut s = DenseMatrix::zeros(order, order);
    for c in 0..n1 {
        for r in 0..n2 {
            let p = r + n2 * c;
            for c2 in c.saturating_sub(m1.bandwidth())..n1.min(c + m1.bandwidth() + 1) {
                let q = r + n2 * c2;
                s.data[p * order + q] += m1.get(c, c2);
            }
            for r2 in r.saturating_sub(m2.bandwidth())..n2.min(r + m2.bandwidth() + 1) {
                let q = r2 + n2 * c;
                s.data[p * order + q] += m2.get(r, r2);
            }
        }
    }
    Ok(s)
}

/// Lower-triangular Cholesky factor `L` with `A = L L^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct CholeskyFactor {
    l: DenseMatrix,
}

/// Cholesky factorization of a symmetric matrix (only the lower triangle is read).
pub fn cholesky(a: &DenseMatrix) -> Result<CholeskyFactor> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch(format!("cholesky of a {}x{} matrix", a.rows, a.cols)));
    }
    let n = a.rows;
    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut pivot = a.get(j, j);
        for k in 0..j {
            pivot -= l.get(j, k) * l.get(j, k);
        }
        if !(pivot > 0.0) {
            return Err(Error::NonPositivePivot { row: j + 1, pivot });
        }
        let diag = pivot.sqrt();
        l.set(j, j, diag);
        for i in j + 1..n {
            let mut v = a.get(i, j);
            for k in 0..j {
                v -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, v / diag);
        }
    }
    Ok(CholeskyFactor { l })
}

impl CholeskyFactor {
    pub fn order(&self) -> usize {
        self.l.rows
    }

    pub fn l(&self) -> &DenseMatrix {
        &self.l
    }

    /// Solves `L y = b`.
    pub fn forward(&self, b: &[f64]) -> Vec<f64> {
        let n = self.order();
        let mut y = b.to_vec();
        for i in 0..n {
            let row = &self.l.data[i * n..i * n + i];
            let acc: f64 = row.iter().zip(&y[..i]).map(|(a, b)| a * b).sum();
            y[i] = (y[i] - acc) / self.l.get(i, i);
        }
        y
    }

    /// Solves `L^T x = y`.
    pub fn backward(&self, y: &[f64]) -> Vec<f64> {
        let n = self.order();
        let mut x = y.to_vec();
        for i in (0..n).rev() {
            let mut acc = 0.0;
            for k in i + 1..n {
                acc += self.l.get(k, i) * x[k];
            }
            x[i] = (x[i] - acc) / self.l.get(i, i);
        }
        x
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        self.backward(&self.forward(b))
    }

    fn check_index(&self, t: usize) -> Result<()> {
        if t == 0 || t > self.order() {
            return Err(Error::IndexOutOfRange { index: t, max: self.order() });
        }
        Ok(())
    }

    /// Column `t` (1-based) of `A^{-1}`.
    pub fn inverse_column(&self, t: usize) -> Result<Vec<f64>> {
        self.check_index(t)?;
        let mut e = vec![0.0; self.order()];
        e[t - 1] = 1.0;
        Ok(self.solve(&e))
    }

    /// Column `t` (1-based) of `L^{-T}`; entries below position `t` are zero.
    pub fn inverse_transpose_column(&self, t: usize) -> Result<Vec<f64>> {
        self.check_index(t)?;
        let n = self.order();
        let mut x = vec![0.0; n];
        x[t - 1] = 1.0 / self.l.get(t - 1, t - 1);
        for i in (0..t - 1).rev() {
            let mut acc = 0.0;
            for k in i + 1..t {
                acc += self.l.get(k, i) * x[k];
            }
            x[i] = -acc / self.l.get(i, i);
        }
        Ok(x)
    }

    /// `(L^{-T})_{k,t}`, 1-based.
    pub fn inverse_transpose_entry(&self, k: usize, t: usize) -> Result<f64> {
        self.check_index(k)?;
        if k > t {
            self.check_index(t)?;
            return Ok(0.0);
        }
        Ok(self.inverse_transpose_column(t)?[k - 1])
    }

    pub fn reconstruct(&self) -> DenseMatrix {
        self.l.matmul(&self.l.transpose()).expect("square factor")
    }
}

/// Column `t` (1-based) of `A^{-1}` for SPD `A`.
pub fn inverse_column(a: &DenseMatrix, t: usize) -> Result<Vec<f64>> {
    cholesky(a)?.inverse_column(t)
}

pub fn inverse_transpose_factor_entry(l: &CholeskyFactor, k: usize, t: usize) -> Result<f64> {
    l.inverse_transpose_entry(k, t)
}

/// `||M2 X + X M1 - e_i e_j^T||_F` where `X` is `order(M2) x order(M1)` and
/// `(i, j)` is the grid point of `t`.
pub fn lyapunov_residual(
    m1: &BandedSymmetricMatrix,
    m2: &BandedSymmetricMatrix,
    xt: &DenseMatrix,
    t: usize,
) -> Result<f64> {
    let (rows, cols) = (m2.order(), m1.order());
    if xt.rows != rows || xt.cols != cols {
        return Err(Error::DimensionMismatch(format!("X is {}x{}, expected {rows}x{cols}", xt.rows, xt.cols)));
    }
    let p = GridShape { rows, cols }.point(t)?;
    let mut acc = 0.0;
    for r in 0..rows {
        for c in 0..cols {
            let mut v = 0.0;
            for k in r.saturating_sub(m2.bandwidth())..rows.min(r + m2.bandwidth() + 1) {
                v += m2.get(r, k) * xt.get(k, c);
            }
            for k in c.saturating_sub(m1.bandwidth())..cols.min(c + m1.bandwidth() + 1) {
                v += xt.get(r, k) * m1.get(k, c);
            }
            if r + 1 == p.i && c + 1 == p.j {
                v -= 1.0;
            }
            acc += v * v;
        }
    }
    Ok(acc.sqrt())
}
