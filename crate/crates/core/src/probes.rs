//! Probe states as weighted collections of ladder components.
//!
//! Every probe is block diagonal in the conserved-charge sectors once the
//! measured populations are concerned: mixtures are incoherent by
//! construction, and the sectors of a coherent product are orthogonal on
//! every measured-mode outcome, so outcome statistics are weighted sums over
//! components.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, HashSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::{build_ladder, FockConfig, InteractionKind, Ladder};

/// Largest per-mode noise population accepted for noisy probes.
pub const MAX_EPS: f64 = 0.25;

/// Default hard cap on Fock states enumerated for a coherent probe.
pub const DEFAULT_STATE_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Probe {
    PureFock {
        config: FockConfig,
    },
    /// Product of per-mode mixtures `(1-2ε)|n⟩⟨n| + ε(|n+1⟩⟨n+1| + |n-1⟩⟨n-1|)`.
    NoisyFock {
        nominal: FockConfig,
        eps: Vec<f64>,
    },
    /// Product of coherent states, truncated once `cutoff_mass` of the
    /// Poisson weight has been enumerated.
    CoherentProduct {
        amplitudes: Vec<Complex64>,
        cutoff_mass: f64,
    },
}

impl Probe {
    pub fn pure(config: impl Into<FockConfig>) -> Self {
        Probe::PureFock { config: config.into() }
    }

    pub fn noisy(nominal: impl Into<FockConfig>, eps: Vec<f64>) -> Self {
        Probe::NoisyFock { nominal: nominal.into(), eps }
    }

    /// Same noise level on every mode.
    pub fn noisy_uniform(nominal: impl Into<FockConfig>, eps: f64) -> Self {
        let nominal = nominal.into();
        let eps = vec![eps; nominal.occupations().len()];
        Probe::NoisyFock { nominal, eps }
    }

    pub fn coherent(amplitudes: Vec<Complex64>, cutoff_mass: f64) -> Self {
        Probe::CoherentProduct { amplitudes, cutoff_mass }
    }

    /// Real coherent amplitudes whose mean occupations are `means`.
    pub fn coherent_with_means(means: &[f64], cutoff_mass: f64) -> Self {
        let amplitudes = means.iter().map(|&m| Complex64::new(m.sqrt(), 0.0)).collect();
        Probe::CoherentProduct { amplitudes, cutoff_mass }
    }

    /// The Fock configuration when the probe is a pure Fock product.
    pub fn as_pure(&self) -> Option<&FockConfig> {
        match self {
            Probe::PureFock { config } => Some(config),
            _ => None,
        }
    }

    /// Nominal measured-mode occupation, used as the default reference of
    /// coarse-grained measurement schemes.
    pub fn nominal_measured(&self) -> u64 {
        match self {
            Probe::PureFock { config } => config.measured(),
            Probe::NoisyFock { nominal, .. } => nominal.measured(),
            Probe::CoherentProduct { amplitudes, .. } => amplitudes
                .first()
                .map(|a| a.norm_sqr().round() as u64)
                .unwrap_or(0),
        }
    }

    pub fn validate(&self, kind: InteractionKind) -> Result<()> {
        let modes = kind.mode_count();
        match self {
            Probe::PureFock { config } => config.validate(kind),
            Probe::NoisyFock { nominal, eps } => {
                nominal.validate(kind)?;
                if eps.len() != modes {
                    return Err(Error::Config(format!(
                        "noise needs {modes} per-mode values, got {}",
                        eps.len()
                    )));
                }
                if let Some(bad) = eps.iter().find(|e| !(0.0..=MAX_EPS).contains(*e)) {
                    return Err(Error::Config(format!("noise level {bad} outside [0, {MAX_EPS}]")));
                }
                Ok(())
            }
            Probe::CoherentProduct { amplitudes, cutoff_mass } => {
                if amplitudes.len() != modes {
                    return Err(Error::Config(format!(
                        "interaction {kind} needs {modes} coherent amplitudes, got {}",
                        amplitudes.len()
                    )));
                }
                if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
                    return Err(Error::Config("coherent amplitudes must be finite".into()));
                }
                if !(*cutoff_mass > 0.0 && *cutoff_mass < 1.0) {
                    return Err(Error::Config(format!("cutoff mass {cutoff_mass} outside (0, 1)")));
                }
                Ok(())
            }
        }
    }
}

/// One incoherent piece of a probe: a ladder and a normalised initial state on it.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub weight: f64,
    pub ladder: Ladder,
    pub initial: Vec<Complex64>,
}

impl Component {
    fn fock(weight: f64, ladder: Ladder) -> Self {
        let mut initial = vec![Complex64::new(0.0, 0.0); ladder.dim()];
        initial[ladder.root_index()] = Complex64::new(1.0, 0.0);
        Component { weight, ladder, initial }
    }

    /// Rung of the single occupied basis state, if the component is a Fock state.
    pub fn fock_root(&self) -> Option<usize> {
        let mut occupied = self.initial.iter().enumerate().filter(|(_, c)| c.norm_sqr() > 0.0);
        match (occupied.next(), occupied.next()) {
            (Some((k, _)), None) => Some(k),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedComponents {
    pub components: Vec<Component>,
    /// Probability mass kept before renormalisation (1 for Fock probes).
    pub retained_mass: f64,
}

impl WeightedComponents {
    pub fn total_weight(&self) -> f64 {
        self.components.iter().map(|c| c.weight).sum()
    }

    /// Mean occupation of `mode` over the decomposed ensemble.
    pub fn mean_occupation(&self, mode: usize) -> f64 {
        self.components
            .iter()
            .map(|c| {
                c.weight
                    * c.initial
                        .iter()
                        .zip(c.ladder.basis())
                        .map(|(a, cfg)| a.norm_sqr() * cfg.occupations()[mode] as f64)
                        .sum::<f64>()
            })
            .sum()
    }
}

pub fn decompose(probe: &Probe, kind: InteractionKind) -> Result<WeightedComponents> {
    decompose_with_cap(probe, kind, DEFAULT_STATE_CAP)
}

pub fn decompose_with_cap(probe: &Probe, kind: InteractionKind, state_cap: usize) -> Result<WeightedComponents> {
    probe.validate(kind)?;
    match probe {
        Probe::PureFock { config } => Ok(WeightedComponents {
            components: vec![Component::fock(1.0, build_ladder(kind, config)?)],
            retained_mass: 1.0,
        }),
        Probe::NoisyFock { nominal, eps } => decompose_noisy(kind, nominal, eps),
        Probe::CoherentProduct { amplitudes, cutoff_mass } => {
            decompose_coherent(kind, amplitudes, *cutoff_mass, state_cap)
        }
    }
}

/// Per-mode `(weight, occupation)` terms of the noisy mixture.
fn mode_terms(n: u64, eps: f64) -> Vec<(f64, u64)> {
    if eps == 0.0 {
        return vec![(1.0, n)];
    }
    if n == 0 {
        // no |−1⟩ neighbour: keep |0⟩ and |1⟩ and renormalise
        let norm = 1.0 - eps;
        return vec![((1.0 - 2.0 * eps) / norm, 0), (eps / norm, 1)];
    }
    vec![(eps, n - 1), (1.0 - 2.0 * eps, n), (eps, n + 1)]
}

fn decompose_noisy(kind: InteractionKind, nominal: &FockConfig, eps: &[f64]) -> Result<WeightedComponents> {
    let per_mode: Vec<Vec<(f64, u64)>> = nominal
        .occupations()
        .iter()
        .zip(eps)
        .map(|(&n, &e)| mode_terms(n, e))
        .collect();

    let mut terms: Vec<(f64, Vec<u64>)> = vec![(1.0, Vec::new())];
    for options in &per_mode {
        terms = terms
            .into_iter()
            .flat_map(|(w, occ)| {
                options.iter().map(move |&(wm, n)| {
                    let mut next = occ.clone();
                    next.push(n);
                    (w * wm, next)
                })
            })
            .collect();
    }

    let components = terms
        .into_iter()
        .map(|(w, occ)| Ok(Component::fock(w, build_ladder(kind, &FockConfig::new(occ))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightedComponents { components, retained_mass: 1.0 })
}

/// Log Poisson weights of one coherent mode, extended on demand.
struct PoissonMode {
    mean: f64,
    ln_mean: f64,
    ln_weights: Vec<f64>,
}

impl PoissonMode {
    fn new(mean: f64) -> Self {
        PoissonMode { mean, ln_mean: mean.ln(), ln_weights: vec![-mean] }
    }

    fn is_vacuum(&self) -> bool {
        self.mean == 0.0
    }

    fn peak(&self) -> u64 {
        self.mean.floor() as u64
    }

    fn ln_weight(&mut self, n: u64) -> f64 {
        let n = n as usize;
        while self.ln_weights.len() <= n {
            let k = self.ln_weights.len();
            let prev = self.ln_weights[k - 1];
            self.ln_weights.push(prev + self.ln_mean - (k as f64).ln());
        }
        self.ln_weights[n]
    }
}

#[derive(PartialEq)]
struct Candidate {
    ln_weight: f64,
    state: Vec<u64>,
}

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ln_weight
            .total_cmp(&other.ln_weight)
            .then_with(|| other.state.cmp(&self.state))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Fock product states in descending Poisson weight until `cutoff_mass` is
/// covered. Each mode's weight is unimodal, so every state has a neighbour
/// closer to the peak with larger weight and a best-first walk from the peak
/// visits states in exactly descending order.
fn enumerate_coherent(amplitudes: &[Complex64], cutoff_mass: f64, state_cap: usize) -> Result<Vec<(Vec<u64>, f64)>> {
    let mut modes: Vec<PoissonMode> = amplitudes.iter().map(|a| PoissonMode::new(a.norm_sqr())).collect();
    let start: Vec<u64> = modes.iter().map(PoissonMode::peak).collect();
    let ln_start = start.iter().zip(modes.iter_mut()).map(|(&n, m)| m.ln_weight(n)).sum();

    let mut heap = BinaryHeap::new();
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    heap.push(Candidate { ln_weight: ln_start, state: start });

    let mut out = Vec::new();
    let mut mass = 0.0;
    while mass < cutoff_mass {
        let Some(Candidate { ln_weight, state }) = heap.pop() else {
            break;
        };
        if out.len() >= state_cap {
            return Err(Error::Resource(format!(
                "coherent decomposition needs more than {state_cap} Fock states to cover mass {cutoff_mass} (reached {mass})"
            )));
        }
        let w = ln_weight.exp();
        mass += w;
        for i in 0..state.len() {
            if modes[i].is_vacuum() {
                continue;
            }
            for up in [true, false] {
                if !up && state[i] == 0 {
                    continue;
                }
                let mut next = state.clone();
                next[i] = if up { state[i] + 1 } else { state[i] - 1 };
                if seen.insert(next.clone()) {
                    let ln = next.iter().zip(modes.iter_mut()).map(|(&n, m)| m.ln_weight(n)).sum();
                    heap.push(Candidate { ln_weight: ln, state: next });
                }
            }
        }
        out.push((state, w));
    }
    if mass < cutoff_mass {
        return Err(Error::Numeric(format!(
            "coherent enumeration exhausted at mass {mass} below cutoff {cutoff_mass}"
        )));
    }
    Ok(out)
}

fn decompose_coherent(
    kind: InteractionKind,
    amplitudes: &[Complex64],
    cutoff_mass: f64,
    state_cap: usize,
) -> Result<WeightedComponents> {
    let phases: Vec<f64> = amplitudes.iter().map(|a| a.arg()).collect();
    let states = enumerate_coherent(amplitudes, cutoff_mass, state_cap)?;

    let mut sectors: BTreeMap<(u64, u64), Vec<(Vec<u64>, Complex64)>> = BTreeMap::new();
    for (state, w) in states {
        let phase: f64 = state.iter().zip(&phases).map(|(&n, &p)| n as f64 * p).sum();
        let amp = Complex64::from_polar(w.sqrt(), phase);
        sectors.entry(kind.charges(&state)).or_default().push((state, amp));
    }

    let mut components = Vec::with_capacity(sectors.len());
    let mut retained = 0.0;
    for members in sectors.into_values() {
        let ladder = build_ladder(kind, &FockConfig::new(members[0].0.clone()))?;
        let mut initial = vec![Complex64::new(0.0, 0.0); ladder.dim()];
        for (state, amp) in &members {
            initial[state[0] as usize] = *amp;
        }
        let weight: f64 = initial.iter().map(|c| c.norm_sqr()).sum();
        let norm = weight.sqrt();
        initial.iter_mut().for_each(|c| *c /= norm);
        retained += weight;
        components.push(Component { weight, ladder, initial });
    }
    for c in &mut components {
        c.weight /= retained;
    }
    Ok(WeightedComponents { components, retained_mass: retained })
}
