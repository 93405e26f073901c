#![allow(dead_code)]

use tsense_core::{Complex64, FockConfig, InteractionKind};

pub type Mat = Vec<Vec<Complex64>>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Every configuration of `kind` with each occupation at most `max`.
pub fn configs_up_to(kind: InteractionKind, max: u64) -> Vec<FockConfig> {
    let mut out = Vec::new();
    match kind {
        InteractionKind::I => {
            for a in 0..=max {
                for b in 0..=max {
                    for cc in 0..=max {
                        out.push(FockConfig::new(vec![a, b, cc]));
                    }
                }
            }
        }
        InteractionKind::II => {
            for a in 0..=max {
                for b in 0..=max {
                    out.push(FockConfig::new(vec![a, b]));
                }
            }
        }
    }
    out
}

/// Every configuration of `kind` with exactly `n` quanta.
pub fn configs_with_total(kind: InteractionKind, n: u64) -> Vec<FockConfig> {
    configs_up_to(kind, n).into_iter().filter(|c| c.total() == n).collect()
}

pub fn zeros(n: usize) -> Mat {
    vec![vec![c(0.0); n]; n]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0);
    }
    m
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == c(0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// `exp(-i s H)` for a real symmetric tridiagonal `H`, by scaling and squaring
/// a truncated Taylor series.
pub fn expm_tridiagonal(diag: &[f64], off: &[f64], s: f64) -> Mat {
    let n = diag.len();
    let mut h = zeros(n);
    for i in 0..n {
        h[i][i] = c(diag[i]);
    }
    for (i, &g) in off.iter().enumerate() {
        h[i][i + 1] = c(g);
        h[i + 1][i] = c(g);
    }
    let norm: f64 = h.iter().map(|r| r.iter().map(|x| x.norm()).sum::<f64>()).fold(0.0, f64::max) * s.abs();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let factor = Complex64::new(0.0, -s * scale);
    let a: Mat = h.iter().map(|r| r.iter().map(|x| x * factor).collect()).collect();
    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..=30 {
        term = matmul(&term, &a);
        let inv = 1.0 / k as f64;
        for row in term.iter_mut() {
            for x in row.iter_mut() {
                *x *= inv;
            }
        }
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}
