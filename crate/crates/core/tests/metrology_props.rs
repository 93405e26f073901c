mod common;

use common::configs_with_total;
use proptest::prelude::*;
use tsense_core::metrology::PreparedProbe;
use tsense_core::probes::decompose_with_cap;
use tsense_core::{
    decompose, fisher, fisher_limit_closed_form, qfi_coherent, qfi_variance, Complex64, EvolutionParams, FockConfig,
    InteractionKind, MeasurementScheme, Probe,
};

fn schemes(n: u64) -> [MeasurementScheme; 3] {
    [MeasurementScheme::BinaryFock(n), MeasurementScheme::SequentialS0(n), MeasurementScheme::FullPnr]
}

fn config_strategy(max: u64) -> impl Strategy<Value = (InteractionKind, FockConfig)> {
    prop_oneof![Just(InteractionKind::I), Just(InteractionKind::II)].prop_flat_map(move |kind| {
        prop::collection::vec(0..=max, kind.mode_count()).prop_map(move |occ| (kind, FockConfig::new(occ)))
    })
}

#[test]
fn zero_coupling_saturates_closed_form_under_every_scheme() {
    for kind in [InteractionKind::I, InteractionKind::II] {
        for n in 0..=8 {
            for cfg in configs_with_total(kind, n) {
                let prepared = PreparedProbe::new(&Probe::pure(cfg.clone()), kind).unwrap();
                let want = fisher_limit_closed_form(&cfg, kind, 1.0).unwrap();
                for scheme in schemes(cfg.measured()) {
                    let f = prepared.fisher(scheme, EvolutionParams::at(0.0));
                    assert!((f - want).abs() < 1e-6, "{cfg} {scheme:?}: {f} vs {want}");
                }
                let q = qfi_variance(&cfg, kind, 1.0).unwrap();
                assert!((q - want).abs() < 1e-9 * (1.0 + want));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn coarser_partitions_lose_information((kind, cfg) in config_strategy(6), theta in 0.0f64..2.0) {
        let prepared = PreparedProbe::new(&Probe::pure(cfg.clone()), kind).unwrap();
        let params = EvolutionParams::at(theta);
        let [b, s, p] = schemes(cfg.measured()).map(|sch| prepared.fisher(sch, params));
        let tol = 1e-9 * (1.0 + p);
        prop_assert!(b <= s + tol, "binary {b} > s0 {s}");
        prop_assert!(s <= p + tol, "s0 {s} > pnr {p}");
        // Any reference occupation, not just the root's.
        for n in 0..4 {
            for sch in [MeasurementScheme::BinaryFock(n), MeasurementScheme::SequentialS0(n)] {
                prop_assert!(prepared.fisher(sch, params) <= p + tol);
            }
        }
    }

    #[test]
    fn fisher_bounded_by_qfi_at_zero((kind, cfg) in config_strategy(8)) {
        let q = qfi_variance(&cfg, kind, 1.0).unwrap();
        let prepared = PreparedProbe::new(&Probe::pure(cfg.clone()), kind).unwrap();
        for sch in schemes(cfg.measured()) {
            prop_assert!(prepared.fisher(sch, EvolutionParams::at(0.0)) <= q * (1.0 + 1e-9) + 1e-9);
        }
    }

    #[test]
    fn quadratic_in_time((kind, cfg) in config_strategy(6), t in 0.1f64..4.0) {
        let probe = Probe::pure(cfg.clone());
        let sch = MeasurementScheme::SequentialS0(cfg.measured());
        let f1 = fisher(&probe, kind, sch, EvolutionParams::at(0.0)).unwrap();
        let ft = fisher(&probe, kind, sch, EvolutionParams::new(0.0, t).unwrap()).unwrap();
        prop_assert!((ft - t * t * f1).abs() < 1e-9 * (1.0 + ft));
    }

    #[test]
    fn b_and_c_are_interchangeable(a in 0u64..6, b in 0u64..6, c in 0u64..6, theta in 0.0f64..2.0) {
        let kind = InteractionKind::I;
        let params = EvolutionParams::at(theta);
        for sch in schemes(a) {
            let x = fisher(&Probe::pure(vec![a, b, c]), kind, sch, params).unwrap();
            let y = fisher(&Probe::pure(vec![a, c, b]), kind, sch, params).unwrap();
            prop_assert!((x - y).abs() < 1e-9 * (1.0 + x));
        }
    }

    #[test]
    fn noisy_weights_sum_to_one((kind, cfg) in config_strategy(5), eps in 0.0f64..0.25) {
        let wc = decompose(&Probe::noisy_uniform(cfg, eps), kind).unwrap();
        prop_assert!((wc.total_weight() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn noise_vanishes_continuously() {
    let cases = [
        (InteractionKind::I, vec![2u64, 2, 2]),
        (InteractionKind::II, vec![2, 3]),
        (InteractionKind::I, vec![2, 1, 1]),
    ];
    for (kind, occ) in cases {
        let cfg = FockConfig::new(occ.clone());
        for sch in schemes(cfg.measured()) {
            let params = EvolutionParams::at(0.2);
            let pure = fisher(&Probe::pure(cfg.clone()), kind, sch, params).unwrap();
            let gaps: Vec<f64> = [1e-2, 1e-3, 1e-4]
                .iter()
                .map(|&e| (fisher(&Probe::noisy_uniform(occ.clone(), e), kind, sch, params).unwrap() - pure).abs())
                .collect();
            assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{cfg} {sch:?}: {gaps:?}");
            assert!(gaps[2] < 1e-2 * pure, "{cfg} {sch:?}: {gaps:?}");
        }
    }
}

#[test]
fn noisy_regression_fixtures() {
    let thetas = [0.0, 0.1, 0.25, 0.5];
    let fixtures: [(InteractionKind, [u64; 3], usize, f64, MeasurementScheme, [f64; 4]); 5] = [
        (InteractionKind::I, [2, 2, 2], 3, 0.05, MeasurementScheme::SequentialS0(2),
            [4.9999999999999885, 78.27373791170592, 69.95656236376114, 10.478073116041603]),
        (InteractionKind::I, [2, 2, 2], 3, 0.1, MeasurementScheme::BinaryFock(2),
            [0.0, 46.99233143283048, 30.729022842454828, 0.6448181046331695]),
        (InteractionKind::I, [1, 0, 0], 3, 0.005, MeasurementScheme::FullPnr,
            [1.5151132547157925e-6, 2.677628527079407, 3.720746021583895, 3.9463492951219945]),
        (InteractionKind::II, [2, 3, 0], 2, 0.05, MeasurementScheme::SequentialS0(2),
            [8.900000000000013, 174.44271745304198, 78.27455313397343, 25.04877285570026]),
        (InteractionKind::II, [1, 3, 0], 2, 0.1, MeasurementScheme::BinaryFock(1),
            [0.0, 54.73593329226714, 18.98393225139436, 22.036285468162415]),
    ];
    for (kind, occ, modes, eps, sch, want) in fixtures {
        let probe = Probe::noisy_uniform(occ[..modes].to_vec(), eps);
        let prepared = PreparedProbe::new(&probe, kind).unwrap();
        for (theta, w) in thetas.iter().zip(want) {
            let f = prepared.fisher(sch, EvolutionParams::at(*theta));
            assert!((f - w).abs() <= 1e-9 * w.abs().max(1e-6), "{occ:?} eps {eps} at {theta}: {f} vs {w}");
        }
    }
}

/// `4 Var(G)` of a coherent product on a truncated Fock space.
fn coherent_variance_oracle(alpha: &[Complex64], kind: InteractionKind, cutoff: usize) -> f64 {
    let amp = |a: Complex64, n: usize| {
        let mut v = (-a.norm_sqr() / 2.0).exp();
        let mut z = Complex64::new(v, 0.0);
        for k in 1..=n {
            v = 1.0 / (k as f64).sqrt();
            z *= a * v;
        }
        z
    };
    let modes = alpha.len();
    let size = cutoff.pow(modes as u32);
    let occ_of = |mut i: usize| {
        let mut occ = vec![0usize; modes];
        for slot in occ.iter_mut().rev() {
            *slot = i % cutoff;
            i /= cutoff;
        }
        occ
    };
    let idx = |occ: &[usize]| occ.iter().fold(0, |acc, &n| acc * cutoff + n);
    let psi: Vec<Complex64> = (0..size)
        .map(|i| occ_of(i).iter().zip(alpha).map(|(&n, &a)| amp(a, n)).product())
        .collect();
    let mut g = vec![Complex64::new(0.0, 0.0); size];
    for (i, &x) in psi.iter().enumerate() {
        let o = occ_of(i);
        let (up, down): (Option<(Vec<usize>, f64)>, Option<(Vec<usize>, f64)>) = match kind {
            InteractionKind::I => (
                (o[1] > 0 && o[2] > 0)
                    .then(|| (vec![o[0] + 1, o[1] - 1, o[2] - 1], ((o[0] + 1) * o[1] * o[2]) as f64)),
                (o[0] > 0).then(|| (vec![o[0] - 1, o[1] + 1, o[2] + 1], (o[0] * (o[1] + 1) * (o[2] + 1)) as f64)),
            ),
            InteractionKind::II => (
                (o[1] > 1).then(|| (vec![o[0] + 1, o[1] - 2], ((o[0] + 1) * o[1] * (o[1] - 1)) as f64)),
                (o[0] > 0).then(|| (vec![o[0] - 1, o[1] + 2], (o[0] * (o[1] + 1) * (o[1] + 2)) as f64)),
            ),
        };
        for (target, m2) in [up, down].into_iter().flatten() {
            if target.iter().all(|&n| n < cutoff) {
                g[idx(&target)] += x * m2.sqrt();
            }
        }
    }
    let second: f64 = g.iter().map(|z| z.norm_sqr()).sum();
    let first: Complex64 = psi.iter().zip(&g).map(|(a, b)| a.conj() * b).sum();
    4.0 * (second - first.norm_sqr())
}

#[test]
fn coherent_qfi_matches_truncated_variance() {
    let cases = [
        (InteractionKind::I, vec![Complex64::new(2f64.sqrt(), 0.0); 3]),
        (InteractionKind::I, vec![Complex64::from_polar(1.2, 0.4), Complex64::from_polar(0.7, -1.0), Complex64::from_polar(1.5, 2.0)]),
        (InteractionKind::II, vec![Complex64::new(2f64.sqrt(), 0.0), Complex64::new(3f64.sqrt(), 0.0)]),
        (InteractionKind::II, vec![Complex64::from_polar(1.1, 0.3), Complex64::from_polar(1.6, 1.3)]),
    ];
    for (kind, alpha) in cases {
        let cutoff = if kind == InteractionKind::I { 24 } else { 40 };
        let oracle = coherent_variance_oracle(&alpha, kind, cutoff);
        let q = qfi_coherent(&alpha, kind, 1.0).unwrap();
        assert!((q - oracle).abs() < 1e-8 * q.max(1.0), "{kind} {alpha:?}: {q} vs {oracle}");
    }
}

#[test]
fn coherent_fisher_stays_below_its_qfi() {
    for (kind, means) in [(InteractionKind::I, vec![2.0, 2.0, 2.0]), (InteractionKind::II, vec![2.0, 3.0])] {
        let probe = Probe::coherent_with_means(&means, 1.0 - 1e-10);
        let alpha: Vec<Complex64> = means.iter().map(|m: &f64| Complex64::new(m.sqrt(), 0.0)).collect();
        let q = qfi_coherent(&alpha, kind, 1.0).unwrap();
        let prepared = PreparedProbe::new(&probe, kind).unwrap();
        for theta in [0.0, 1e-3, 0.05, 0.2, 0.5] {
            let f = prepared.fisher(MeasurementScheme::FullPnr, EvolutionParams::at(theta));
            assert!(f < q, "{kind} at {theta}: {f} vs {q}");
        }
    }
}

#[test]
fn coherent_ensemble_means_track_amplitudes() {
    for (kind, means) in [(InteractionKind::I, vec![2.0, 1.0, 3.0]), (InteractionKind::II, vec![2.0, 3.0])] {
        let probe = Probe::coherent_with_means(&means, 1.0 - 1e-8);
        let wc = decompose_with_cap(&probe, kind, 1_000_000).unwrap();
        for (mode, m) in means.iter().enumerate() {
            let got = wc.mean_occupation(mode);
            assert!((got - m).abs() < 0.01 * m, "{kind} mode {mode}: {got} vs {m}");
        }
    }
}

#[test]
fn sequential_and_parallel_scans_are_bit_identical() {
    use tsense_core::{scan_with, Execution};
    let probes = [
        (Probe::noisy_uniform(vec![3, 2, 2], 0.04), InteractionKind::I),
        (Probe::pure(vec![2, 6]), InteractionKind::II),
    ];
    for (probe, kind) in probes {
        let n = probe.nominal_measured();
        let run = |exec| scan_with(&probe, kind, MeasurementScheme::SequentialS0(n), 1.0, 1.5, 301, exec).unwrap();
        let (a, b) = (run(Execution::Sequential), run(Execution::Parallel));
        let bits = |p: &tsense_core::SensitivityProfile| p.grid.iter().map(|(t, f)| (t.to_bits(), f.to_bits())).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
    }
}
