//! Reference formulas written out independently of `tsense-core`, used by
//! the acceptance suite to check the library's numbers.

use tsense_core::{Complex64, FockConfig};

/// Single excited mode `a` under interaction I.
pub fn f0_one_mode_a(n_a: u64) -> f64 {
    4.0 * n_a as f64
}

/// Single excited mode `b'` under interaction II.
pub fn f0_one_mode_b_prime(n_b: u64) -> f64 {
    let n = n_b as f64;
    4.0 * n * (n - 1.0)
}

/// Mode `a` with one of `b`, `c` excited.
pub fn f0_two_mode_with_a(n_a: u64, n_other: u64) -> f64 {
    let (a, o) = (n_a as f64, n_other as f64);
    4.0 * (a * o + a)
}

/// Modes `b` and `c` excited, `a` in vacuum.
pub fn f0_two_mode_without_a(n_b: u64, n_c: u64) -> f64 {
    4.0 * (n_b * n_c) as f64
}

pub fn f0_three_mode(occ: &[u64]) -> f64 {
    let (a, b, c) = (occ[0] as f64, occ[1] as f64, occ[2] as f64);
    4.0 * (a * (b + 1.0) * (c + 1.0) + (a + 1.0) * b * c)
}

pub fn f0_degenerate(occ: &[u64]) -> f64 {
    let (a, b) = (occ[0] as f64, occ[1] as f64);
    4.0 * (b * (b - 1.0) * (a + 1.0) + (b + 1.0) * (b + 2.0) * a)
}

/// Coherent-state QFI formulas as published.
pub fn qfi_coherent_published_i(alpha: &[Complex64]) -> f64 {
    let n: Vec<f64> = alpha.iter().map(|x| x.norm_sqr()).collect();
    4.0 * (n[0] * n[1] + n[0] * n[2] + n[1] * n[2] + n[0])
}

pub fn qfi_coherent_published_ii(alpha: &[Complex64]) -> f64 {
    let n: Vec<f64> = alpha.iter().map(|x| x.norm_sqr()).collect();
    4.0 * (n[1] * n[1] + 3.0 * n[0] * n[1] + 2.0 * n[0])
}

/// Even split across a, b, c with the excess on a first.
pub fn three_mode_pattern(n: u64) -> Vec<FockConfig> {
    let q = n / 3;
    let mut v = match n % 3 {
        0 => vec![vec![q, q, q]],
        1 => vec![vec![q + 1, q, q]],
        _ => vec![vec![q + 1, q + 1, q], vec![q + 1, q, q + 1]],
    };
    v.sort();
    v.into_iter().map(FockConfig::new).collect()
}

/// Two thirds of the quanta in `b'`.
pub fn degenerate_pattern(n: u64) -> FockConfig {
    let q = n / 3;
    FockConfig::new(match n % 3 {
        0 => vec![q, 2 * q],
        1 => vec![q, 2 * q + 1],
        _ => vec![q + 1, 2 * q + 1],
    })
}

/// Mode `a` plus one of `b`, `c`, with `a` taking the odd quantum.
pub fn two_mode_pattern(n: u64) -> Vec<FockConfig> {
    let (hi, lo) = (n.div_ceil(2), n / 2);
    let mut v = vec![vec![hi, lo, 0], vec![hi, 0, lo]];
    v.sort();
    v.dedup();
    v.into_iter().map(FockConfig::new).collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|(x, y)| (x.ln(), y.ln())).unzip();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `exp(-i s H)` for a real symmetric tridiagonal `H` by scaling and squaring
/// a Taylor series.
pub fn expm_tridiagonal(diag: &[f64], off: &[f64], s: f64) -> Vec<Vec<Complex64>> {
    let n = diag.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut h = vec![vec![zero; n]; n];
    for i in 0..n {
        h[i][i] = Complex64::new(diag[i], 0.0);
    }
    for (i, &g) in off.iter().enumerate() {
        h[i][i + 1] = Complex64::new(g, 0.0);
        h[i + 1][i] = Complex64::new(g, 0.0);
    }
    let norm = h.iter().map(|r| r.iter().map(|x| x.norm()).sum::<f64>()).fold(0.0, f64::max) * s.abs();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let mul = |a: &Vec<Vec<Complex64>>, b: &Vec<Vec<Complex64>>| {
        let mut out = vec![vec![zero; n]; n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    };
    let factor = Complex64::new(0.0, -s * scale);
    let a: Vec<Vec<Complex64>> = h.iter().map(|r| r.iter().map(|x| x * factor).collect()).collect();
    let mut result = vec![vec![zero; n]; n];
    let mut term = vec![vec![zero; n]; n];
    for i in 0..n {
        result[i][i] = Complex64::new(1.0, 0.0);
        term[i][i] = Complex64::new(1.0, 0.0);
    }
    for k in 1..=30 {
        term = mul(&term, &a);
        for row in term.iter_mut() {
            for x in row.iter_mut() {
                *x /= k as f64;
            }
        }
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = mul(&result, &result);
    }
    result
}
