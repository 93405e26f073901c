//! Optimal Fock configurations for a fixed number of quanta.
//!
//! Exhaustive enumeration over integer compositions is the ground truth.
//! The continuous Lagrange relaxation of the closed-form zero-coupling
//! Fisher information is kept alongside it to check the rounding heuristic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::{FockConfig, InteractionKind};
use crate::par::{self, Execution};

pub const NEWTON_TOL: f64 = 1e-10;
pub const NEWTON_MAX_ITER: usize = 200;
pub const SCALING_MAX_N: u64 = 200;

/// Limit on how many modes may hold quanta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeConstraint {
    Unconstrained,
    AtMost(usize),
}

impl ModeConstraint {
    fn limit(self, kind: InteractionKind) -> Result<usize> {
        match self {
            ModeConstraint::Unconstrained => Ok(kind.mode_count()),
            ModeConstraint::AtMost(k) if (1..=kind.mode_count()).contains(&k) => Ok(k),
            ModeConstraint::AtMost(k) => Err(Error::Config(format!(
                "interaction {kind} has {} modes, cannot excite at most {k}",
                kind.mode_count()
            ))),
        }
    }
}

/// Preparation approaches compared in the scaling curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExcitationScheme {
    OneMode,
    TwoMode,
    ThreeMode,
}

impl ExcitationScheme {
    pub fn constraint(self, kind: InteractionKind) -> Result<ModeConstraint> {
        match (self, kind) {
            (ExcitationScheme::OneMode, _) => Ok(ModeConstraint::AtMost(1)),
            (ExcitationScheme::TwoMode, _) => Ok(ModeConstraint::AtMost(2)),
            (ExcitationScheme::ThreeMode, InteractionKind::I) => Ok(ModeConstraint::Unconstrained),
            (ExcitationScheme::ThreeMode, InteractionKind::II) => {
                Err(Error::Config("interaction II has only two modes".into()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalResult {
    pub n: u64,
    pub kind: InteractionKind,
    /// Every argmax configuration, sorted lexicographically.
    pub maximizers: Vec<FockConfig>,
    pub f0: f64,
    /// Continuous optimum of the unconstrained relaxation; `None` when the
    /// relaxed problem has no interior stationary point (small N).
    pub relaxation: Option<Vec<f64>>,
    /// Leading-order large-N prediction.
    pub asymptote: f64,
}

/// Integer bracket of the zero-coupling Fisher information (`F₀ = 4t² · bracket`).
pub fn closed_form_bracket(occ: &[u64], kind: InteractionKind) -> u128 {
    let n: Vec<u128> = occ.iter().map(|&x| x as u128).collect();
    match kind {
        InteractionKind::I => n[0] * (n[1] + 1) * (n[2] + 1) + (n[0] + 1) * n[1] * n[2],
        InteractionKind::II => {
            n[1] * n[1].saturating_sub(1) * (n[0] + 1) + (n[1] + 1) * (n[1] + 2) * n[0]
        }
    }
}

fn compositions(kind: InteractionKind, n: u64) -> Vec<Vec<u64>> {
    match kind {
        InteractionKind::I => (0..=n)
            .flat_map(|a| (0..=n - a).map(move |b| vec![a, b, n - a - b]))
            .collect(),
        InteractionKind::II => (0..=n).map(|a| vec![a, n - a]).collect(),
    }
}

pub fn optimize_config(kind: InteractionKind, n: u64, constraint: ModeConstraint, time: f64) -> Result<OptimalResult> {
    let limit = constraint.limit(kind)?;
    let mut best = 0u128;
    let mut maximizers: Vec<FockConfig> = Vec::new();
    for occ in compositions(kind, n) {
        if occ.iter().filter(|&&x| x > 0).count() > limit {
            continue;
        }
        let score = closed_form_bracket(&occ, kind);
        if maximizers.is_empty() || score > best {
            best = score;
            maximizers.clear();
            maximizers.push(FockConfig::new(occ));
        } else if score == best {
            maximizers.push(FockConfig::new(occ));
        }
    }
    maximizers.sort();
    let relaxation = if n == 0 {
        Some(vec![0.0; kind.mode_count()])
    } else {
        lagrange_relaxation(kind, n as f64).ok()
    };
    Ok(OptimalResult {
        n,
        kind,
        maximizers,
        f0: 4.0 * time * time * best as f64,
        relaxation,
        asymptote: asymptotic_prediction(kind, n, time),
    })
}

/// Value, gradient and Hessian of the continuous bracket.
fn bracket_derivatives(kind: InteractionKind, x: &[f64]) -> (f64, Vec<f64>, Vec<Vec<f64>>) {
    match kind {
        InteractionKind::I => {
            let (a, b, c) = (x[0], x[1], x[2]);
            let f = a * (b + 1.0) * (c + 1.0) + (a + 1.0) * b * c;
            let grad = vec![
                (b + 1.0) * (c + 1.0) + b * c,
                a * (c + 1.0) + (a + 1.0) * c,
                a * (b + 1.0) + (a + 1.0) * b,
            ];
            let hess = vec![
                vec![0.0, 2.0 * c + 1.0, 2.0 * b + 1.0],
                vec![2.0 * c + 1.0, 0.0, 2.0 * a + 1.0],
                vec![2.0 * b + 1.0, 2.0 * a + 1.0, 0.0],
            ];
            (f, grad, hess)
        }
        InteractionKind::II => {
            let (a, b) = (x[0], x[1]);
            let f = b * (b - 1.0) * (a + 1.0) + (b + 1.0) * (b + 2.0) * a;
            let grad = vec![2.0 * b * b + 2.0 * b + 2.0, (2.0 * b - 1.0) * (a + 1.0) + (2.0 * b + 3.0) * a];
            let hess = vec![vec![0.0, 4.0 * b + 2.0], vec![4.0 * b + 2.0, 4.0 * a + 2.0]];
            (f, grad, hess)
        }
    }
}

/// Solves `A x = b` in place by Gaussian elimination with partial pivoting.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[pivot][col].abs() < 1e-300 {
            return Err(Error::Numeric("singular Newton system".into()));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Ok(x)
}

fn stationarity_residual(kind: InteractionKind, x: &[f64], lambda: f64, weights: &[f64], budget: f64) -> Vec<f64> {
    let (_, grad, _) = bracket_derivatives(kind, x);
    let mut r: Vec<f64> = grad.iter().zip(weights).map(|(g, w)| g - lambda * w).collect();
    r.push(x.iter().zip(weights).map(|(xi, w)| xi * w).sum::<f64>() - budget);
    r
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Continuous optimum of the zero-coupling Fisher information subject to
/// `Σ nᵢ = total`.
pub fn lagrange_relaxation(kind: InteractionKind, total: f64) -> Result<Vec<f64>> {
    lagrange_relaxation_weighted(kind, total, &vec![1.0; kind.mode_count()])
}

/// Same as [`lagrange_relaxation`] under the weighted budget `Σ wᵢ nᵢ = budget`
/// (for example mode energies).
pub fn lagrange_relaxation_weighted(kind: InteractionKind, budget: f64, weights: &[f64]) -> Result<Vec<f64>> {
    let m = kind.mode_count();
    if weights.len() != m || weights.iter().any(|w| !(*w > 0.0)) {
        return Err(Error::Config(format!("need {m} positive constraint weights")));
    }
    if !(budget > 0.0) || !budget.is_finite() {
        return Err(Error::Config(format!("budget must be positive, got {budget}")));
    }
    let wsum: f64 = weights.iter().sum();
    let mut x = vec![budget / wsum; m];
    let (_, grad, _) = bracket_derivatives(kind, &x);
    let mut lambda = grad.iter().zip(weights).map(|(g, w)| g * w).sum::<f64>()
        / weights.iter().map(|w| w * w).sum::<f64>();

    let mut r = stationarity_residual(kind, &x, lambda, weights, budget);
    for _ in 0..NEWTON_MAX_ITER {
        let rn = norm(&r);
        if rn < NEWTON_TOL {
            return Ok(x);
        }
        let (_, _, hess) = bracket_derivatives(kind, &x);
        let mut jac = vec![vec![0.0; m + 1]; m + 1];
        for i in 0..m {
            jac[i][..m].copy_from_slice(&hess[i]);
            jac[i][m] = -weights[i];
            jac[m][i] = weights[i];
        }
        let step = solve_dense(jac, r.iter().map(|v| -v).collect())?;

        let mut scale = 1.0;
        loop {
            let xt: Vec<f64> = x.iter().zip(&step).map(|(xi, d)| xi + scale * d).collect();
            let lt = lambda + scale * step[m];
            let rt = stationarity_residual(kind, &xt, lt, weights, budget);
            if norm(&rt) <= rn || scale < 1e-8 {
                x = xt;
                lambda = lt;
                r = rt;
                break;
            }
            scale *= 0.5;
        }
    }
    if norm(&r) < NEWTON_TOL {
        return Ok(x);
    }
    Err(Error::Numeric(format!(
        "Lagrange relaxation did not converge in {NEWTON_MAX_ITER} iterations (residual {})",
        norm(&r)
    )))
}

/// Integer configurations obtained by rounding each component of `relaxation`
/// down or up, keeping only those with exactly `total` quanta.
pub fn rounding_candidates(relaxation: &[f64], total: u64) -> Vec<FockConfig> {
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for &x in relaxation {
        let lo = x.floor().max(0.0) as u64;
        let hi = x.ceil().max(0.0) as u64;
        let options: Vec<u64> = if lo == hi { vec![lo] } else { vec![lo, hi] };
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    let mut configs: Vec<FockConfig> = out
        .into_iter()
        .filter(|c| c.iter().sum::<u64>() == total)
        .map(FockConfig::new)
        .collect();
    configs.sort();
    configs.dedup();
    configs
}

/// Leading-order optimal Fisher information: `8t²N³/27` (I), `32t²N³/27` (II).
pub fn asymptotic_prediction(kind: InteractionKind, n: u64, time: f64) -> f64 {
    let n3 = (n as f64).powi(3);
    let c = match kind {
        InteractionKind::I => 8.0,
        InteractionKind::II => 32.0,
    };
    c * time * time * n3 / 27.0
}

/// Constrained optimal `F₀` for every `N` in `1..=n_max`.
pub fn scaling_table(kind: InteractionKind, n_max: u64, scheme: ExcitationScheme, time: f64) -> Result<Vec<(u64, f64)>> {
    scaling_table_with(kind, n_max, scheme, time, Execution::default())
}

pub fn scaling_table_with(
    kind: InteractionKind,
    n_max: u64,
    scheme: ExcitationScheme,
    time: f64,
    exec: Execution,
) -> Result<Vec<(u64, f64)>> {
    if n_max > SCALING_MAX_N {
        return Err(Error::Config(format!("n_max {n_max} exceeds {SCALING_MAX_N}")));
    }
    let constraint = scheme.constraint(kind)?;
    let limit = constraint.limit(kind)?;
    Ok(par::map_indexed(n_max as usize, exec, |i| {
        let n = i as u64 + 1;
        let best = compositions(kind, n)
            .into_iter()
            .filter(|occ| occ.iter().filter(|&&x| x > 0).count() <= limit)
            .map(|occ| closed_form_bracket(&occ, kind))
            .max()
            .unwrap_or(0);
        (n, 4.0 * time * time * best as f64)
    }))
}
