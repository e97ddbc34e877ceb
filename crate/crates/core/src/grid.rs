//! 1-based maps between linear indices of a Kronecker-sum operator and
//! points on the underlying grid, and the mesh-distance classification of
//! an entry `(k, t)`.
//!
//! The vec convention stacks columns: linear index `t` lives at grid row
//! `i = t - rows*floor((t-1)/rows)` and grid column `j = floor((t-1)/rows) + 1`.

use crate::error::{Error, Result};

/// A point on a grid with 1-based coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridPoint {
    /// Row (within-block) index.
    pub i: usize,
    /// Column (block) index.
    pub j: usize,
}

/// Rectangular grid shape: `rows` is the within-block extent, `cols` the
/// number of blocks. Square grids have `rows == cols == n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridShape {
    pub rows: usize,
    pub cols: usize,
}

impl GridShape {
    pub fn square(n: usize) -> Self {
        Self { rows: n, cols: n }
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, t: usize) -> Result<GridPoint> {
        if t == 0 || t > self.len() {
            return Err(Error::IndexOutOfRange { index: t, max: self.len() });
        }
        let block = (t - 1) / self.rows;
        Ok(GridPoint { i: t - self.rows * block, j: block + 1 })
    }

    pub fn linear(&self, p: GridPoint) -> Result<usize> {
        if p.i == 0 || p.i > self.rows {
            return Err(Error::IndexOutOfRange { index: p.i, max: self.rows });
        }
        if p.j == 0 || p.j > self.cols {
            return Err(Error::IndexOutOfRange { index: p.j, max: self.cols });
        }
        Ok(p.i + self.rows * (p.j - 1))
    }
}

pub fn grid_of_linear(t: usize, n: usize) -> Result<GridPoint> {
    GridShape::square(n).point(t)
}

pub fn linear_of_grid(i: usize, j: usize, n: usize) -> Result<usize> {
    GridShape::square(n).linear(GridPoint { i, j })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MeshCase {
    /// `l != i` and `m != j`.
    BothDiffer,
    /// Exactly one of `l == i`, `m == j`.
    OneEqual,
    /// `l == i` and `m == j`.
    Diagonal,
}

impl MeshCase {
    pub fn label(self) -> &'static str {
        match self {
            MeshCase::BothDiffer => "BothDiffer",
            MeshCase::OneEqual => "OneEqual",
            MeshCase::Diagonal => "Diagonal",
        }
    }
}

/// Grid separation between the row point `(l, m)` of `k` and the column
/// point `(i, j)` of `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeshSeparation {
    pub case: MeshCase,
    /// `|l - i|`.
    pub d_row: usize,
    /// `|m - j|`.
    pub d_col: usize,
}

impl MeshSeparation {
    pub fn from_distances(d_row: usize, d_col: usize) -> Self {
        let case = match (d_row == 0, d_col == 0) {
            (true, true) => MeshCase::Diagonal,
            (false, false) => MeshCase::BothDiffer,
            _ => MeshCase::OneEqual,
        };
        Self { case, d_row, d_col }
    }

    /// `|l - i| + |m - j|`.
    pub fn raw(&self) -> usize {
        self.d_row + self.d_col
    }

    /// `raw - 2`, defined for `BothDiffer` only.
    pub fn n2(&self) -> Option<usize> {
        (self.case == MeshCase::BothDiffer).then(|| self.raw() - 2)
    }

    /// `raw - 1`, defined for `OneEqual` only.
    pub fn n1(&self) -> Option<usize> {
        (self.case == MeshCase::OneEqual).then(|| self.raw() - 1)
    }

    /// The case-appropriate reduced distance (`n2` or `n1`); `None` on the diagonal.
    pub fn reduced(&self) -> Option<usize> {
        self.n2().or(self.n1())
    }
}

pub fn mesh_separation_on(k: usize, t: usize, shape: GridShape) -> Result<MeshSeparation> {
    let row = shape.point(k)?;
    let col = shape.point(t)?;
    Ok(MeshSeparation::from_distances(row.i.abs_diff(col.i), row.j.abs_diff(col.j)))
}

pub fn mesh_separation(k: usize, t: usize, n: usize) -> Result<MeshSeparation> {
    mesh_separation_on(k, t, GridShape::square(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn grid_examples() {
        assert_eq!(grid_of_linear(1, 10).unwrap(), GridPoint { i: 1, j: 1 });
        assert_eq!(grid_of_linear(35, 10).unwrap(), GridPoint { i: 5, j: 4 });
        assert_eq!(grid_of_linear(55, 10).unwrap(), GridPoint { i: 5, j: 6 });
        assert_eq!(grid_of_linear(100, 10).unwrap(), GridPoint { i: 10, j: 10 });
        assert_eq!(linear_of_grid(1, 1, 10).unwrap(), 1);
        assert_eq!(linear_of_grid(5, 4, 10).unwrap(), 35);
        assert_eq!(linear_of_grid(10, 10, 10).unwrap(), 100);
    }

    #[test]
    fn out_of_range() {
        assert_eq!(grid_of_linear(0, 10), Err(Error::IndexOutOfRange { index: 0, max: 100 }));
        assert_eq!(grid_of_linear(101, 10), Err(Error::IndexOutOfRange { index: 101, max: 100 }));
        assert!(linear_of_grid(11, 1, 10).is_err());
        assert!(linear_of_grid(1, 0, 10).is_err());
        assert!(mesh_separation(1, 17, 4).is_err());
    }

    #[test]
    fn separation_examples() {
        let s = mesh_separation(7, 7, 10).unwrap();
        assert_eq!((s.case, s.raw()), (MeshCase::Diagonal, 0));
        assert_eq!(s.reduced(), None);

        let s = mesh_separation(100, 1, 10).unwrap();
        assert_eq!(s.case, MeshCase::BothDiffer);
        assert_eq!(s.n2(), Some(16));
        assert_eq!(s.n1(), None);

        let s = mesh_separation(2, 1, 2).unwrap();
        assert_eq!(s.case, MeshCase::OneEqual);
        assert_eq!(s.n1(), Some(0));
    }

    #[test]
    fn secondary_diagonal() {
        let n = 10;
        let t = 30;
        let k = n * n - t;
        assert_eq!(grid_of_linear(k, n).unwrap(), GridPoint { i: 10, j: 7 });
        assert_eq!(grid_of_linear(t, n).unwrap(), GridPoint { i: 10, j: 3 });
        let s = mesh_separation(k, t, n).unwrap();
        assert_eq!(s.case, MeshCase::OneEqual);
        assert_eq!(s.n1(), Some(3));

        // closed form in terms of linear indices only
        let fl = |x: usize| ((x - 1) / n) as i64;
        let (ki, ti, ni) = (k as i64, t as i64, n as i64);
        let raw = (ki - ti - ni * (fl(k) - fl(t))).abs() + (fl(k) - fl(t)).abs();
        assert_eq!(raw as usize, s.raw());
    }

    #[test]
    fn separation_is_symmetric_exhaustive() {
        for n in 1..=12 {
            for k in 1..=n * n {
                for t in 1..=n * n {
                    let a = mesh_separation(k, t, n).unwrap();
                    assert_eq!(a, mesh_separation(t, k, n).unwrap());
                    match a.case {
                        MeshCase::Diagonal => assert_eq!(k, t),
                        MeshCase::BothDiffer => assert!(a.d_row > 0 && a.d_col > 0),
                        MeshCase::OneEqual => assert!((a.d_row == 0) != (a.d_col == 0)),
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..60, seed in any::<u64>()) {
            let t = (seed % (n * n) as u64) as usize + 1;
            let p = grid_of_linear(t, n).unwrap();
            prop_assert!(p.i >= 1 && p.i <= n && p.j >= 1 && p.j <= n);
            prop_assert_eq!(linear_of_grid(p.i, p.j, n).unwrap(), t);
        }

        #[test]
        fn rectangular_round_trip(rows in 1usize..20, cols in 1usize..20, seed in any::<u64>()) {
            let shape = GridShape { rows, cols };
            let t = (seed % shape.len() as u64) as usize + 1;
            let p = shape.point(t).unwrap();
            prop_assert!(p.i <= rows && p.j <= cols);
            prop_assert_eq!(shape.linear(p).unwrap(), t);
        }
    }
}
