//! Dense symmetric eigenvalues: Householder reduction to tridiagonal form
//! followed by the implicit-shift QL iteration.

const MAX_QL_SWEEPS: usize = 60;

/// Reduces a row-major symmetric `n x n` matrix to tridiagonal form.
///
/// Returns `(diag, sub)` where `sub[i]` couples rows `i` and `i + 1`;
/// `sub` has length `n` with a trailing zero.
pub fn householder_tridiagonal(a: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), n * n, "matrix storage does not match order");
    let mut w = a.to_vec();
    let mut sub = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|r| w[r * n + k].powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            sub[k] = 0.0;
            continue;
        }
        let x0 = w[(k + 1) * n + k];
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for r in k + 1..n {
            v[r] = w[r * n + k];
        }
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n).map(|r| v[r] * v[r]).sum::<f64>().sqrt();
        for r in k + 1..n {
            v[r] /= vnorm;
        }

        // trailing block <- H A H with H = I - 2 v v^T, via p = A v, q = p - (v.p) v
        for r in k + 1..n {
            p[r] = (k + 1..n).map(|c| w[r * n + c] * v[c]).sum();
        }
        let vp: f64 = (k + 1..n).map(|r| v[r] * p[r]).sum();
        for r in k + 1..n {
            p[r] -= vp * v[r];
        }
        for r in k + 1..n {
            for c in k + 1..n {
                w[r * n + c] -= 2.0 * (v[r] * p[c] + p[r] * v[c]);
            }
        }
        sub[k] = alpha;
    }
    if n >= 2 {
        sub[n - 2] = w[(n - 1) * n + n - 2];
    }
    let diag = (0..n).map(|r| w[r * n + r]).collect();
    (diag, sub)
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL, sorted ascending.
///
/// `sub[i]` is the coupling between `i` and `i + 1`; its last entry is ignored.
pub fn tridiagonal_eigenvalues(diag: &[f64], sub: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(&sub[..n.saturating_sub(1)]);

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            assert!(sweeps <= MAX_QL_SWEEPS, "QL iteration failed to converge");

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    d
}

/// All eigenvalues of a row-major symmetric matrix, ascending.
pub fn symmetric_eigenvalues(a: &[f64], n: usize) -> Vec<f64> {
    let (d, e) = householder_tridiagonal(a, n);
    tridiagonal_eigenvalues(&d, &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constant_tridiagonal_closed_form() {
        let n = 25;
        let eig = tridiagonal_eigenvalues(&vec![2.0; n], &vec![-1.0; n]);
        let mut expect: Vec<f64> =
            (1..=n).map(|k| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos()).collect();
        expect.sort_by(f64::total_cmp);
        for (a, b) in eig.iter().zip(&expect) {
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
    }

    #[test]
    fn agrees_with_nalgebra_on_dense_input() {
        let n = 9;
        let mut a = vec![0.0; n * n];
        for r in 0..n {
            for c in 0..=r {
                let v = ((r * 7 + c * 3) as f64).sin() + if r == c { 3.0 } else { 0.0 };
                a[r * n + c] = v;
                a[c * n + r] = v;
            }
        }
        let ours = symmetric_eigenvalues(&a, n);
        let mut theirs: Vec<f64> =
            nalgebra::DMatrix::from_row_slice(n, n, &a).symmetric_eigenvalues().iter().copied().collect();
        theirs.sort_by(f64::total_cmp);
        for (x, y) in ours.iter().zip(&theirs) {
            assert!((x - y).abs() <= 1e-12 * 6.0, "{x} vs {y}");
        }
    }

    #[test]
    fn trivial_orders() {
        assert_eq!(symmetric_eigenvalues(&[5.0], 1), vec![5.0]);
        let e = symmetric_eigenvalues(&[2.0, 1.0, 1.0, 2.0], 2);
        assert_relative_eq!(e[0], 1.0, max_relative = 1e-15);
        assert_relative_eq!(e[1], 3.0, max_relative = 1e-15);
        assert!(symmetric_eigenvalues(&[], 0).is_empty());
    }

    #[test]
    fn already_diagonal_blocks() {
        // decoupled blocks exercise the deflation path
        let d = [4.0, 1.0, 3.0, 2.0];
        let e = [0.0, 0.5, 0.0, 0.0];
        let eig = tridiagonal_eigenvalues(&d, &e);
        // block [[1, .5], [.5, 3]] has eigenvalues 2 -+ sqrt(1.25)
        let lo = 2.0 - 1.25f64.sqrt();
        let hi = 2.0 + 1.25f64.sqrt();
        assert_relative_eq!(eig[0], lo, max_relative = 1e-14);
        assert_relative_eq!(eig[1], 2.0, max_relative = 1e-14);
        assert_relative_eq!(eig[2], hi, max_relative = 1e-14);
        assert_relative_eq!(eig[3], 4.0, max_relative = 1e-14);
    }
}
