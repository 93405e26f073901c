//! Classical and quantum Fisher information for coupling estimation.
//!
//! Outcome probabilities are sums of measured-mode populations over the
//! cells of a [`MeasurementScheme`] partition. Outcomes whose probability
//! vanishes quadratically (every non-root outcome at zero coupling) use the
//! analytic limit `P'²/P → 2P''` instead of a small offset.

use serde::{Deserialize, Serialize};

use crate::dynamics::{apply_generator, diagonalize, evolve_projected, outcome_probabilities, EvolutionParams, Spectrum};
use crate::error::{Error, Result};
use crate::ladder::{build_ladder, FockConfig, InteractionKind, Ladder};
use crate::par::{self, Execution};
use crate::probes::{decompose, Probe};
use num_complex::Complex64;

/// Outcome probabilities below this use the quadratic-zero limit rule.
pub const ZERO_PROBABILITY: f64 = 1e-14;

/// Relative height a rise must exceed to count as the right wall of a
/// local minimum; differences below it are round-off on a flat profile.
pub const FLAT_TOLERANCE: f64 = 1e-9;

/// Relative bracket width at which golden-section refinement stops.
pub const REFINE_RTOL: f64 = 1e-4;

pub const DEFAULT_STEPS: usize = 401;
pub const DEFAULT_THETA_MAX: f64 = 1.0;

/// Outcome partition on the measured mode (a for kind I, a' for kind II).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type", content = "reference")]
pub enum MeasurementScheme {
    /// Every occupation is its own outcome.
    FullPnr,
    /// `{|n⟩⟨n|, I − |n⟩⟨n|}`.
    BinaryFock(u64),
    /// `{|n⟩, |n±1⟩, |n±2⟩, rest}`; negative occupations are dropped.
    SequentialS0(u64),
}

impl MeasurementScheme {
    /// Outcome cell of occupation `m`.
    pub fn outcome(&self, m: u64) -> u64 {
        match *self {
            MeasurementScheme::FullPnr => m,
            MeasurementScheme::BinaryFock(n) => u64::from(m != n),
            MeasurementScheme::SequentialS0(n) => m.abs_diff(n).min(3),
        }
    }

    pub fn outcome_count_hint(&self, occupations: usize) -> usize {
        match self {
            MeasurementScheme::FullPnr => occupations,
            MeasurementScheme::BinaryFock(_) => 2,
            MeasurementScheme::SequentialS0(_) => 4,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MeasurementScheme::FullPnr => "pnr",
            MeasurementScheme::BinaryFock(_) => "binary",
            MeasurementScheme::SequentialS0(_) => "s0",
        }
    }
}

/// Contribution of one outcome to the Fisher information.
pub fn fisher_term(p: f64, dp: f64, d2p: f64) -> f64 {
    if p < ZERO_PROBABILITY {
        if d2p > ZERO_PROBABILITY {
            2.0 * d2p
        } else {
            0.0
        }
    } else {
        dp * dp / p
    }
}

#[derive(Debug, Clone)]
struct PreparedComponent {
    weight: f64,
    ladder: Ladder,
    spectrum: Spectrum,
    coeffs: Vec<Complex64>,
    fock_root: Option<usize>,
}

/// A decomposed probe with every component diagonalised once, ready for
/// repeated evaluation at different couplings.
#[derive(Debug, Clone)]
pub struct PreparedProbe {
    kind: InteractionKind,
    components: Vec<PreparedComponent>,
    max_dim: usize,
}

impl PreparedProbe {
    pub fn new(probe: &Probe, kind: InteractionKind) -> Result<Self> {
        let wc = decompose(probe, kind)?;
        let components = wc
            .components
            .into_iter()
            .map(|c| {
                let spectrum = diagonalize(&c.ladder)?;
                let coeffs = spectrum.project(&c.initial);
                let fock_root = c.fock_root();
                Ok(PreparedComponent { weight: c.weight, ladder: c.ladder, spectrum, coeffs, fock_root })
            })
            .collect::<Result<Vec<_>>>()?;
        let max_dim = components.iter().map(|c| c.ladder.dim()).max().unwrap_or(0);
        Ok(PreparedProbe { kind, components, max_dim })
    }

    pub fn kind(&self) -> InteractionKind {
        self.kind
    }

    /// Mixture populations `[P, P', P'']` indexed by measured occupation.
    pub fn populations(&self, params: EvolutionParams) -> Vec<[f64; 3]> {
        let mut out = vec![[0.0; 3]; self.max_dim];
        for c in &self.components {
            if params.coupling == 0.0 {
                if let Some(root) = c.fock_root {
                    add_fock_origin(&mut out, c, root, params.time);
                    continue;
                }
            }
            let amps = evolve_projected(&c.spectrum, &c.coeffs, params);
            for o in outcome_probabilities(&amps, &c.ladder) {
                let slot = &mut out[o.occupation as usize];
                slot[0] += c.weight * o.p;
                slot[1] += c.weight * o.dp;
                slot[2] += c.weight * o.d2p;
            }
        }
        out
    }

    /// Outcome probabilities `[P, P', P'']` of the scheme, keyed by cell.
    pub fn outcomes(&self, scheme: MeasurementScheme, params: EvolutionParams) -> Vec<(u64, [f64; 3])> {
        let mut cells: Vec<(u64, [f64; 3])> = Vec::with_capacity(scheme.outcome_count_hint(self.max_dim));
        for (m, pop) in self.populations(params).into_iter().enumerate() {
            let key = scheme.outcome(m as u64);
            match cells.iter_mut().find(|(k, _)| *k == key) {
                Some((_, acc)) => {
                    for i in 0..3 {
                        acc[i] += pop[i];
                    }
                }
                None => cells.push((key, pop)),
            }
        }
        cells
    }

    pub fn fisher(&self, scheme: MeasurementScheme, params: EvolutionParams) -> f64 {
        self.outcomes(scheme, params)
            .iter()
            .map(|(_, [p, dp, d2p])| fisher_term(*p, *dp, *d2p))
            .sum()
    }
}

/// Populations of a Fock component at zero coupling from the second-order
/// expansion, using the exact squared couplings so that closed-form limits
/// come out exact.
fn add_fock_origin(out: &mut [[f64; 3]], c: &PreparedComponent, root: usize, time: f64) {
    let g2 = c.ladder.offdiag_sq();
    let t2 = time * time;
    let below = if root > 0 { g2[root - 1] } else { 0.0 };
    let above = g2.get(root).copied().unwrap_or(0.0);
    let slot = &mut out[c.ladder.measured_of(root) as usize];
    slot[0] += c.weight;
    slot[2] -= c.weight * 2.0 * t2 * (below + above);
    if root > 0 {
        out[c.ladder.measured_of(root - 1) as usize][2] += c.weight * 2.0 * t2 * below;
    }
    if root + 1 < c.ladder.dim() {
        out[c.ladder.measured_of(root + 1) as usize][2] += c.weight * 2.0 * t2 * above;
    }
}

/// Classical Fisher information of `scheme` at the coupling in `params`.
pub fn fisher(probe: &Probe, kind: InteractionKind, scheme: MeasurementScheme, params: EvolutionParams) -> Result<f64> {
    Ok(PreparedProbe::new(probe, kind)?.fisher(scheme, params))
}

/// Zero-coupling Fisher information of a Fock product from its occupations.
pub fn fisher_limit_closed_form(config: &FockConfig, kind: InteractionKind, time: f64) -> Result<f64> {
    config.validate(kind)?;
    let n: Vec<f64> = config.occupations().iter().map(|&x| x as f64).collect();
    let bracket = match kind {
        InteractionKind::I => n[0] * (n[1] + 1.0) * (n[2] + 1.0) + (n[0] + 1.0) * n[1] * n[2],
        InteractionKind::II => n[1] * (n[1] - 1.0) * (n[0] + 1.0) + (n[1] + 1.0) * (n[1] + 2.0) * n[0],
    };
    Ok(4.0 * time * time * bracket)
}

/// `4t² Var(G)` of a pure state on a ladder.
pub fn qfi_pure_state(ladder: &Ladder, state: &[Complex64], time: f64) -> f64 {
    let g_psi = apply_generator(ladder, state);
    let second: f64 = g_psi.iter().map(|c| c.norm_sqr()).sum();
    let first: Complex64 = state.iter().zip(&g_psi).map(|(a, b)| a.conj() * b).sum();
    4.0 * time * time * (second - first.norm_sqr())
}

/// Quantum Fisher information of a pure Fock product, from the generator variance.
///
/// On a Fock root `<G> = 0` and `<G²>` is the sum of the two squared couplings
/// touching the root.
pub fn qfi_variance(config: &FockConfig, kind: InteractionKind, time: f64) -> Result<f64> {
    let ladder = build_ladder(kind, config)?;
    let r = ladder.root_index();
    let g2 = ladder.offdiag_sq();
    let below = if r > 0 { g2[r - 1] } else { 0.0 };
    let above = g2.get(r).copied().unwrap_or(0.0);
    Ok(4.0 * time * time * (below + above))
}

/// Closed-form QFI of a coherent product with amplitudes `alpha`.
pub fn qfi_coherent(alpha: &[Complex64], kind: InteractionKind, time: f64) -> Result<f64> {
    if alpha.len() != kind.mode_count() {
        return Err(Error::Config(format!(
            "interaction {kind} needs {} coherent amplitudes, got {}",
            kind.mode_count(),
            alpha.len()
        )));
    }
    let n: Vec<f64> = alpha.iter().map(|a| a.norm_sqr()).collect();
    let bracket = match kind {
        InteractionKind::I => n[0] * n[1] + n[0] * n[2] + n[1] * n[2] + n[0],
        InteractionKind::II => n[1] * n[1] + 4.0 * n[0] * n[1] + 2.0 * n[0],
    };
    Ok(4.0 * time * time * bracket)
}

/// Cramér–Rao bound `1/sqrt(trials · F)`.
pub fn cramer_rao(fisher: f64, trials: u64) -> Result<f64> {
    if !(fisher > 0.0) || !fisher.is_finite() {
        return Err(Error::UndefinedBound(fisher));
    }
    if trials == 0 {
        return Err(Error::Config("at least one trial is required".into()));
    }
    Ok(1.0 / (trials as f64 * fisher).sqrt())
}

/// Fisher information on a uniform coupling grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityProfile {
    pub interaction: InteractionKind,
    pub probe: Probe,
    pub scheme: MeasurementScheme,
    pub time: f64,
    /// `(coupling, fisher)`, starting at zero coupling.
    pub grid: Vec<(f64, f64)>,
    /// Fisher information at zero coupling.
    pub f_zero: f64,
    /// Quantum Fisher information when it has a closed form for the probe.
    pub qfi_zero: Option<f64>,
}

impl SensitivityProfile {
    pub fn couplings(&self) -> impl Iterator<Item = f64> + '_ {
        self.grid.iter().map(|g| g.0)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.grid.iter().map(|g| g.1)
    }
}

fn qfi_for(probe: &Probe, kind: InteractionKind, time: f64) -> Result<Option<f64>> {
    match probe {
        Probe::PureFock { config } => qfi_variance(config, kind, time).map(Some),
        Probe::CoherentProduct { amplitudes, .. } => qfi_coherent(amplitudes, kind, time).map(Some),
        Probe::NoisyFock { .. } => Ok(None),
    }
}

/// Uniform grid of `steps` couplings on `[0, theta_max]`.
pub fn coupling_grid(theta_max: f64, steps: usize) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| if i + 1 == steps { theta_max } else { theta_max * i as f64 / last })
        .collect()
}

pub fn scan(
    probe: &Probe,
    kind: InteractionKind,
    scheme: MeasurementScheme,
    time: f64,
    theta_max: f64,
    steps: usize,
) -> Result<SensitivityProfile> {
    scan_with(probe, kind, scheme, time, theta_max, steps, Execution::default())
}

pub fn scan_with(
    probe: &Probe,
    kind: InteractionKind,
    scheme: MeasurementScheme,
    time: f64,
    theta_max: f64,
    steps: usize,
    exec: Execution,
) -> Result<SensitivityProfile> {
    if !(theta_max > 0.0) || !theta_max.is_finite() {
        return Err(Error::Config(format!("theta_max must be positive, got {theta_max}")));
    }
    if steps < 2 {
        return Err(Error::Config(format!("a scan needs at least 2 steps, got {steps}")));
    }
    EvolutionParams::new(0.0, time)?;
    let prepared = PreparedProbe::new(probe, kind)?;
    let thetas = coupling_grid(theta_max, steps);
    let values = par::map_indexed(steps, exec, |i| {
        prepared.fisher(scheme, EvolutionParams { coupling: thetas[i], time })
    });
    let grid: Vec<(f64, f64)> = thetas.into_iter().zip(values).collect();
    Ok(SensitivityProfile {
        interaction: kind,
        probe: probe.clone(),
        scheme,
        time,
        f_zero: grid[0].1,
        qfi_zero: qfi_for(probe, kind, time)?,
        grid,
    })
}

/// Upper edge of the usable sensing interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DynamicRange {
    At(f64),
    /// No local minimum of the Fisher information inside the scanned range.
    BeyondRange,
}

impl DynamicRange {
    pub fn value(self) -> Option<f64> {
        match self {
            DynamicRange::At(x) => Some(x),
            DynamicRange::BeyondRange => None,
        }
    }
}

/// Index of the first local minimum of `values`, ignoring rises smaller than
/// [`FLAT_TOLERANCE`] relative to the profile's magnitude.
pub fn first_local_minimum(values: &[f64]) -> Option<usize> {
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = FLAT_TOLERANCE * scale;
    (1..values.len().saturating_sub(1))
        .find(|&i| values[i] <= values[i - 1] + tol && values[i + 1] - values[i] > tol)
}

fn golden_section_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo <= REFINE_RTOL * 0.5 * (hi + lo).abs() {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// First local minimum of the profile, refined against `f` (the continuous
/// Fisher information) inside the bracketing grid cells.
pub fn dynamic_range_with(profile: &SensitivityProfile, f: impl Fn(f64) -> f64) -> Result<DynamicRange> {
    if profile.grid.len() < 3 {
        return Err(Error::Config("dynamic range needs at least 3 grid points".into()));
    }
    if !(profile.grid[1].1 > 0.0) {
        return Err(Error::Config("profile has no sensitivity away from zero coupling".into()));
    }
    let values: Vec<f64> = profile.values().collect();
    let Some(i) = first_local_minimum(&values) else {
        return Ok(DynamicRange::BeyondRange);
    };
    let lo = profile.grid[i - 1].0;
    let hi = profile.grid[i + 1].0;
    Ok(DynamicRange::At(golden_section_min(f, lo, hi)))
}

pub fn dynamic_range(profile: &SensitivityProfile) -> Result<DynamicRange> {
    let prepared = PreparedProbe::new(&profile.probe, profile.interaction)?;
    let time = profile.time;
    let scheme = profile.scheme;
    dynamic_range_with(profile, |theta| prepared.fisher(scheme, EvolutionParams { coupling: theta, time }))
}

/// Predicted dynamic range `sqrt(c / F(0))`, with `c = 24` for kind II and
/// for kind I with all three modes excited, `c = 16` otherwise.
pub fn dynamic_range_formula(config: &FockConfig, kind: InteractionKind, time: f64) -> Result<Option<f64>> {
    let f0 = fisher_limit_closed_form(config, kind, time)?;
    if f0 <= 0.0 {
        return Ok(None);
    }
    let prefactor = match kind {
        InteractionKind::I if config.occupations().iter().all(|&n| n > 0) => 24.0,
        InteractionKind::I => 16.0,
        InteractionKind::II => 24.0,
    };
    Ok(Some((prefactor / f0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pure(occ: &[u64]) -> Probe {
        Probe::pure(FockConfig::new(occ.to_vec()))
    }

    #[test]
    fn single_mode_limit() {
        let f = fisher(&pure(&[1, 0, 0]), InteractionKind::I, MeasurementScheme::BinaryFock(1), EvolutionParams::at(0.0))
            .unwrap();
        assert!((f - 4.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_single_mode_limit() {
        let f = fisher(&pure(&[0, 3]), InteractionKind::II, MeasurementScheme::SequentialS0(0), EvolutionParams::at(0.0))
            .unwrap();
        assert!((f - 24.0).abs() < 1e-12);
    }

    #[test]
    fn three_mode_limit() {
        for scheme in [MeasurementScheme::FullPnr, MeasurementScheme::BinaryFock(2), MeasurementScheme::SequentialS0(2)] {
            let f = fisher(&pure(&[2, 1, 1]), InteractionKind::I, scheme, EvolutionParams::at(0.0)).unwrap();
            assert!((f - 44.0).abs() < 1e-12, "{scheme:?}: {f}");
        }
    }

    #[test]
    fn vacuum_is_blind() {
        for theta in [0.0, 0.3, 1.0] {
            let f = fisher(&pure(&[0, 0, 0]), InteractionKind::I, MeasurementScheme::FullPnr, EvolutionParams::at(theta))
                .unwrap();
            assert_eq!(f, 0.0);
        }
    }

    #[test]
    fn closed_form_special_cases() {
        let t = 1.0;
        for na in 0..6u64 {
            let f = fisher_limit_closed_form(&FockConfig::new(vec![na, 0, 0]), InteractionKind::I, t).unwrap();
            assert_eq!(f, 4.0 * na as f64);
            for nb in 0..6u64 {
                let f = fisher_limit_closed_form(&FockConfig::new(vec![na, nb, 0]), InteractionKind::I, t).unwrap();
                assert_eq!(f, 4.0 * (na * nb + na) as f64);
                let f = fisher_limit_closed_form(&FockConfig::new(vec![0, na, nb]), InteractionKind::I, t).unwrap();
                assert_eq!(f, 4.0 * (na * nb) as f64);
            }
        }
        let f = fisher_limit_closed_form(&FockConfig::new(vec![1, 3]), InteractionKind::II, 2.0).unwrap();
        assert_eq!(f, 4.0 * 4.0 * 32.0);
    }

    #[test]
    fn qfi_examples() {
        let q = qfi_variance(&FockConfig::new(vec![2, 1, 1]), InteractionKind::I, 1.0).unwrap();
        assert!((q - 44.0).abs() < 1e-12);
        let q = qfi_variance(&FockConfig::new(vec![1, 3]), InteractionKind::II, 1.0).unwrap();
        assert!((q - 128.0).abs() < 1e-12);
        let q = qfi_variance(&FockConfig::new(vec![0, 0, 7]), InteractionKind::I, 1.0).unwrap();
        assert_eq!(q, 0.0);
    }

    #[test]
    fn zero_coupling_is_exact_and_continuous() {
        let cases = [(InteractionKind::I, vec![2, 1, 1], 44.0), (InteractionKind::II, vec![2, 3], 232.0)];
        for (kind, occ, want) in cases {
            let p = PreparedProbe::new(&pure(&occ), kind).unwrap();
            let n = occ[0];
            for sch in [MeasurementScheme::FullPnr, MeasurementScheme::BinaryFock(n), MeasurementScheme::SequentialS0(n)] {
                assert_eq!(p.fisher(sch, EvolutionParams::at(0.0)), want);
                let near = p.fisher(sch, EvolutionParams::at(1e-7));
                assert!((near - want).abs() < 1e-6 * want, "{sch:?}: {near}");
            }
            let spectral = p.populations(EvolutionParams::at(1e-300));
            let exact = p.populations(EvolutionParams::at(0.0));
            for (a, b) in spectral.iter().zip(&exact) {
                assert!((a[0] - b[0]).abs() < 1e-12 && (a[2] - b[2]).abs() < 1e-9 * want);
            }
        }
    }

    #[test]
    fn fock_qfi_equals_generator_variance() {
        for (kind, occ) in [(InteractionKind::I, vec![3, 2, 5]), (InteractionKind::II, vec![4, 7])] {
            let cfg = FockConfig::new(occ);
            let ladder = build_ladder(kind, &cfg).unwrap();
            let mut e = vec![Complex64::new(0.0, 0.0); ladder.dim()];
            e[ladder.root_index()] = Complex64::new(1.0, 0.0);
            let q = qfi_variance(&cfg, kind, 1.5).unwrap();
            assert!((qfi_pure_state(&ladder, &e, 1.5) - q).abs() < 1e-10 * q);
        }
    }

    #[test]
    fn coherent_qfi_examples() {
        let means = |m: &[f64]| m.iter().map(|x| Complex64::new(x.sqrt(), 0.0)).collect::<Vec<_>>();
        assert_eq!(qfi_coherent(&means(&[0.0, 0.0, 0.0]), InteractionKind::I, 1.0).unwrap(), 0.0);
        let q = qfi_coherent(&means(&[2.0, 2.0, 2.0]), InteractionKind::I, 1.0).unwrap();
        assert!((q - 56.0).abs() < 1e-12);
        let q = qfi_coherent(&means(&[2.0, 3.0]), InteractionKind::II, 1.0).unwrap();
        assert!((q - 148.0).abs() < 1e-12);
        assert!(qfi_coherent(&means(&[1.0]), InteractionKind::II, 1.0).is_err());
    }

    #[test]
    fn cramer_rao_examples() {
        assert_eq!(cramer_rao(4.0, 1).unwrap(), 0.5);
        assert!((cramer_rao(44.0, 100).unwrap() - 0.015_075_567_228_888_18).abs() < 1e-15);
        assert!(matches!(cramer_rao(0.0, 10), Err(Error::UndefinedBound(_))));
        assert!(cramer_rao(-1.0, 10).is_err());
        assert!(cramer_rao(1.0, 0).is_err());
    }

    #[test]
    fn scheme_cells() {
        let s0 = MeasurementScheme::SequentialS0(1);
        let cells: Vec<u64> = (0..6).map(|m| s0.outcome(m)).collect();
        assert_eq!(cells, vec![1, 0, 1, 2, 3, 3]);
        let bin = MeasurementScheme::BinaryFock(2);
        assert_eq!((0..4).map(|m| bin.outcome(m)).collect::<Vec<_>>(), vec![1, 1, 0, 1]);
    }

    #[test]
    fn limit_rule() {
        assert_eq!(fisher_term(0.0, 0.0, 3.0), 6.0);
        assert_eq!(fisher_term(0.0, 0.0, 1e-20), 0.0);
        assert!((fisher_term(0.5, 1.0, 0.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn scan_grid_and_metadata() {
        let p = scan(&pure(&[1, 1, 1]), InteractionKind::I, MeasurementScheme::FullPnr, 1.0, 1.0, 101).unwrap();
        assert_eq!(p.grid.len(), 101);
        assert_eq!(p.grid[0].0, 0.0);
        assert_eq!(p.grid[100].0, 1.0);
        assert!((p.f_zero - 24.0).abs() < 1e-12);
        assert!((p.qfi_zero.unwrap() - 24.0).abs() < 1e-12);
        assert!(p.values().all(|f| (0.0..=24.0 + 1e-6).contains(&f)));
    }

    #[test]
    fn scan_rejects_bad_grid() {
        let probe = pure(&[1, 1, 1]);
        assert!(scan(&probe, InteractionKind::I, MeasurementScheme::FullPnr, 1.0, 0.0, 10).is_err());
        assert!(scan(&probe, InteractionKind::I, MeasurementScheme::FullPnr, 1.0, 1.0, 1).is_err());
        assert!(scan(&probe, InteractionKind::I, MeasurementScheme::FullPnr, 0.0, 1.0, 10).is_err());
        assert!(scan(&pure(&[1, 1]), InteractionKind::I, MeasurementScheme::FullPnr, 1.0, 1.0, 10).is_err());
    }

    #[test]
    fn vacuum_profile_is_zero() {
        let p = scan(&pure(&[0, 0, 0]), InteractionKind::I, MeasurementScheme::SequentialS0(0), 1.0, 1.0, 21).unwrap();
        assert!(p.values().all(|f| f == 0.0));
    }

    #[test]
    fn monotone_profile_is_beyond_range() {
        let grid: Vec<(f64, f64)> = (0..50).map(|i| (i as f64 * 0.02, 1.0 + i as f64)).collect();
        let profile = SensitivityProfile {
            interaction: InteractionKind::I,
            probe: pure(&[1, 0, 0]),
            scheme: MeasurementScheme::FullPnr,
            time: 1.0,
            f_zero: grid[0].1,
            qfi_zero: None,
            grid,
        };
        assert_eq!(dynamic_range_with(&profile, |_| unreachable!()).unwrap(), DynamicRange::BeyondRange);
    }

    #[test]
    fn flat_profile_has_no_minimum() {
        let wiggle = [8.0, 8.000000000000004, 8.0, 8.000000000000002, 7.999999999999998, 8.0];
        assert_eq!(first_local_minimum(&wiggle), None);
        assert_eq!(first_local_minimum(&[3.0, 2.0, 1.0, 1.5, 0.5, 2.0]), Some(2));
    }

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let x = golden_section_min(|x| (x - 0.37).powi(2), 0.2, 0.6);
        assert!((x - 0.37).abs() < 1e-4);
    }

    #[test]
    fn formula_prefactors() {
        let t = 1.0;
        let f = |occ: &[u64], k| dynamic_range_formula(&FockConfig::new(occ.to_vec()), k, t).unwrap();
        assert!((f(&[4, 0, 0], InteractionKind::I).unwrap() - 1.0).abs() < 1e-15);
        assert!((f(&[0, 4], InteractionKind::II).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((f(&[2, 2, 2], InteractionKind::I).unwrap() - (24.0f64 / 120.0).sqrt()).abs() < 1e-15);
        assert_eq!(f(&[0, 0, 3], InteractionKind::I), None);
    }
}
