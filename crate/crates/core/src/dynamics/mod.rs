//! Exact evolution on a ladder through the spectral decomposition of its
//! generator, with analytic derivatives in the coupling.
//!
//! With `G = V Λ Vᵀ` the amplitudes after coupling `θ` for time `t` are
//! `c = V exp(-iθtΛ) Vᵀ ψ₀`, so `∂c/∂θ` and `∂²c/∂θ²` only pick up factors
//! `(-i t λ_j)` and `(-i t λ_j)²` inside the same sum.

pub mod tridiag;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::Ladder;

/// Eigen-decomposition of a ladder generator.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    /// Row-major, column `j` is the eigenvector of `eigenvalues[j]`.
    vectors: Vec<f64>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Component `k` of eigenvector `j`.
    pub fn vector(&self, k: usize, j: usize) -> f64 {
        self.vectors[k * self.dim() + j]
    }

    /// Coefficients `Vᵀ ψ` of a state in the eigenbasis.
    pub fn project(&self, state: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        (0..n)
            .map(|j| (0..n).map(|k| state[k] * self.vector(k, j)).sum())
            .collect()
    }
}

/// Coupling strength and interaction time. Only their product enters the
/// dynamics; the time also scales the derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionParams {
    pub coupling: f64,
    pub time: f64,
}

impl EvolutionParams {
    pub fn new(coupling: f64, time: f64) -> Result<Self> {
        if !(time > 0.0) || !time.is_finite() {
            return Err(Error::Config(format!("interaction time must be positive, got {time}")));
        }
        if !coupling.is_finite() {
            return Err(Error::Config(format!("coupling must be finite, got {coupling}")));
        }
        Ok(EvolutionParams { coupling, time })
    }

    /// Coupling `θ` at unit time.
    pub fn at(coupling: f64) -> Self {
        EvolutionParams { coupling, time: 1.0 }
    }
}

/// Ladder amplitudes and their first two coupling derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSet {
    pub amps: Vec<Complex64>,
    pub damps: Vec<Complex64>,
    pub d2amps: Vec<Complex64>,
}

impl AmplitudeSet {
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Population of one measured-mode occupation with its derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeProbability {
    pub occupation: u64,
    pub p: f64,
    pub dp: f64,
    pub d2p: f64,
}

pub fn diagonalize(ladder: &Ladder) -> Result<Spectrum> {
    let (eigenvalues, vectors) = tridiag::eigh_tridiagonal(ladder.diag(), ladder.offdiag())?;
    Ok(Spectrum { eigenvalues, vectors })
}

/// Evolves the ladder's basis state `root_index`.
pub fn evolve(spectrum: &Spectrum, root_index: usize, params: EvolutionParams) -> AmplitudeSet {
    let coeffs: Vec<Complex64> = (0..spectrum.dim())
        .map(|j| Complex64::new(spectrum.vector(root_index, j), 0.0))
        .collect();
    evolve_projected(spectrum, &coeffs, params)
}

/// Evolves an arbitrary initial amplitude vector over the ladder basis.
pub fn evolve_state(spectrum: &Spectrum, initial: &[Complex64], params: EvolutionParams) -> AmplitudeSet {
    evolve_projected(spectrum, &spectrum.project(initial), params)
}

/// Evolves a state already expressed in the eigenbasis (`coeffs = Vᵀ ψ₀`).
pub fn evolve_projected(spectrum: &Spectrum, coeffs: &[Complex64], params: EvolutionParams) -> AmplitudeSet {
    let n = spectrum.dim();
    let t = params.time;
    let theta = params.coupling;
    let mut phased = Vec::with_capacity(n);
    let mut dphased = Vec::with_capacity(n);
    let mut d2phased = Vec::with_capacity(n);
    for (j, &lambda) in spectrum.eigenvalues().iter().enumerate() {
        let rate = Complex64::new(0.0, -t * lambda);
        let e = (rate * theta).exp() * coeffs[j];
        phased.push(e);
        dphased.push(e * rate);
        d2phased.push(e * rate * rate);
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); n];
    let mut damps = amps.clone();
    let mut d2amps = amps.clone();
    for k in 0..n {
        for j in 0..n {
            let v = spectrum.vector(k, j);
            amps[k] += phased[j] * v;
            damps[k] += dphased[j] * v;
            d2amps[k] += d2phased[j] * v;
        }
    }
    AmplitudeSet { amps, damps, d2amps }
}

/// Measured-mode populations with `p' = 2Re(c̄ c')` and
/// `p'' = 2Re(c̄ c'') + 2|c'|²`, ordered by occupation.
pub fn outcome_probabilities(amps: &AmplitudeSet, ladder: &Ladder) -> Vec<OutcomeProbability> {
    (0..ladder.dim())
        .map(|k| {
            let c = amps.amps[k];
            let dc = amps.damps[k];
            let d2c = amps.d2amps[k];
            OutcomeProbability {
                occupation: ladder.measured_of(k),
                p: c.norm_sqr(),
                dp: 2.0 * (c.conj() * dc).re,
                d2p: 2.0 * (c.conj() * d2c).re + 2.0 * dc.norm_sqr(),
            }
        })
        .collect()
}

/// `G ψ` for a state on the ladder.
pub fn apply_generator(ladder: &Ladder, state: &[Complex64]) -> Vec<Complex64> {
    let g = ladder.offdiag();
    let n = ladder.dim();
    (0..n)
        .map(|k| {
            let mut acc = state[k] * ladder.diag()[k];
            if k > 0 {
                acc += state[k - 1] * g[k - 1];
            }
            if k + 1 < n {
                acc += state[k + 1] * g[k];
            }
            acc
        })
        .collect()
}
