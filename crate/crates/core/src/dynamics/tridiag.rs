//! Symmetric tridiagonal eigensolver: implicit-shift QL with eigenvector
//! accumulation, after the classic `tql2` formulation.

use crate::error::{Error, Result};

/// Off-diagonal entries below `REL_TOL * ||T||` are treated as zero.
pub const REL_TOL: f64 = 1e-14;

/// Total QL sweeps allowed per unit of dimension.
pub const SWEEPS_PER_DIM: usize = 50;

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal
/// `diag` and sub/super-diagonal `offdiag` (`offdiag.len() == diag.len() - 1`).
///
/// Returns eigenvalues in ascending order and the eigenvector matrix in
/// row-major layout, column `j` belonging to eigenvalue `j`. Each column is
/// sign-normalised so that its largest-magnitude entry is positive.
pub fn eigh_tridiagonal(diag: &[f64], offdiag: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::Config("empty tridiagonal matrix".into()));
    }
    if offdiag.len() + 1 != n {
        return Err(Error::Config(format!(
            "off-diagonal length {} does not match dimension {n}",
            offdiag.len()
        )));
    }

    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }

    let cap = SWEEPS_PER_DIM * n;
    let mut sweeps = 0usize;
    let mut tst1 = 0.0f64;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        loop {
            let mut m = l;
            while m + 1 < n {
                if e[m].abs() <= REL_TOL * tst1 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > cap {
                return Err(Error::Numeric(format!(
                    "tridiagonal QL did not converge within {cap} sweeps (n = {n})"
                )));
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
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
                for k in 0..n {
                    let row = k * n;
                    let zf = z[row + i + 1];
                    z[row + i + 1] = s * z[row + i] + c * zf;
                    z[row + i] = c * z[row + i] - s * zf;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values: Vec<f64> = order.iter().map(|&j| d[j]).collect();
    let mut vectors = vec![0.0; n * n];
    for (col, &j) in order.iter().enumerate() {
        let mut pivot = 0usize;
        for k in 0..n {
            if z[k * n + j].abs() > z[pivot * n + j].abs() {
                pivot = k;
            }
        }
        let sign = if z[pivot * n + j] < 0.0 { -1.0 } else { 1.0 };
        for k in 0..n {
            vectors[k * n + col] = sign * z[k * n + j];
        }
    }
    Ok((values, vectors))
}
