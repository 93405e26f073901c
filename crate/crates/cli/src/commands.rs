use serde_json::json;
use tsense_core::metrology::{dynamic_range_formula, DEFAULT_THETA_MAX};
use tsense_core::{
    cramer_rao, dynamic_range, optimize_config, qfi_coherent, scaling_table, scan, Complex64, DynamicRange,
    ExcitationScheme, FockConfig, InteractionKind, MeasurementScheme, ModeConstraint, Probe,
};

use crate::config::{CommandName, RunConfig};
use crate::output::{meta_object, pretty, Cell, Table};
use crate::CliError;

pub fn run(cfg: &RunConfig) -> Result<String, CliError> {
    match cfg.command {
        CommandName::FisherScan => fisher_scan(cfg),
        CommandName::Optimize => optimize(cfg),
        CommandName::Scaling => scaling(cfg),
        CommandName::DynamicRange => dynamic_ranges(cfg),
        CommandName::NoiseScan => noise_scan(cfg),
        CommandName::CoherentCompare => coherent_compare(cfg),
    }
}

fn noisy_or_pure(state: &[u64], eps: Option<&Vec<f64>>, kind: InteractionKind) -> Result<Probe, CliError> {
    let probe = match eps {
        None => Probe::pure(state.to_vec()),
        Some(e) if e.len() == 1 => Probe::noisy_uniform(state.to_vec(), e[0]),
        Some(e) => Probe::noisy(state.to_vec(), e.clone()),
    };
    probe.validate(kind)?;
    Ok(probe)
}

fn reference_scheme(cfg: &RunConfig, probe: &Probe) -> MeasurementScheme {
    cfg.scheme.with_reference(cfg.reference.unwrap_or_else(|| probe.nominal_measured()))
}

fn fisher_scan(cfg: &RunConfig) -> Result<String, CliError> {
    let kind = cfg.interaction;
    let probe = match (&cfg.alpha, cfg.states.first()) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --state or --alpha, not both".into())),
        (Some(alpha), None) => {
            let p = Probe::coherent(alpha.clone(), cfg.cutoff_mass);
            p.validate(kind)?;
            p
        }
        (None, Some(state)) => noisy_or_pure(state, cfg.eps.first(), kind)?,
        (None, None) => unreachable!("validated"),
    };
    let scheme = reference_scheme(cfg, &probe);
    let profile = scan(&probe, kind, scheme, cfg.time, cfg.theta_max.unwrap_or(DEFAULT_THETA_MAX), cfg.steps)?;
    let mut table = Table::new(&["coupling", "fisher", "cramer_rao"]);
    table.meta("probe", &probe);
    table.meta("scheme", scheme);
    table.meta("f_zero", profile.f_zero);
    table.meta("qfi_zero", profile.qfi_zero);
    for &(theta, f) in &profile.grid {
        table.rows.push(vec![Cell::Num(theta), Cell::Num(f), Cell::opt(cramer_rao(f, cfg.trials).ok())]);
    }
    Ok(table.render(cfg))
}

fn optimize(cfg: &RunConfig) -> Result<String, CliError> {
    let n = cfg.total.expect("validated");
    let r = optimize_config(cfg.interaction, n, ModeConstraint::Unconstrained, cfg.time)?;
    let body = json!({
        "meta": meta_object(cfg, &[]),
        "n": r.n,
        "kind": r.kind,
        "maximizers": r.maximizers,
        "f0": r.f0,
        "relaxation": r.relaxation,
        "asymptote": r.asymptote,
    });
    Ok(pretty(&body))
}

fn scaling(cfg: &RunConfig) -> Result<String, CliError> {
    let kind = cfg.interaction;
    let n_max = cfg.n_max.expect("validated");
    let schemes: &[(&str, ExcitationScheme)] = match kind {
        InteractionKind::I => &[
            ("f0_one", ExcitationScheme::OneMode),
            ("f0_two", ExcitationScheme::TwoMode),
            ("f0_three", ExcitationScheme::ThreeMode),
        ],
        InteractionKind::II => &[("f0_one", ExcitationScheme::OneMode), ("f0_two", ExcitationScheme::TwoMode)],
    };
    let columns: Vec<Vec<(u64, f64)>> = schemes
        .iter()
        .map(|(_, s)| scaling_table(kind, n_max, *s, cfg.time))
        .collect::<Result<_, _>>()?;
    let mut names = vec!["n"];
    names.extend(schemes.iter().map(|(name, _)| *name));
    names.push("asymptote");
    let mut table = Table::new(&names);
    for i in 0..n_max as usize {
        let n = columns[0][i].0;
        let mut row = vec![Cell::Int(n)];
        row.extend(columns.iter().map(|c| Cell::Num(c[i].1)));
        row.push(Cell::Num(tsense_core::asymptotic_prediction(kind, n, cfg.time)));
        table.rows.push(row);
    }
    Ok(table.render(cfg))
}

fn dynamic_ranges(cfg: &RunConfig) -> Result<String, CliError> {
    let kind = cfg.interaction;
    let mut table = Table::new(&["config", "f_zero", "theta_min", "theta_min_formula", "theta_max"]);
    let mut schemes = Vec::new();
    for state in &cfg.states {
        let probe = noisy_or_pure(state, None, kind)?;
        let config = FockConfig::new(state.clone());
        let formula = dynamic_range_formula(&config, kind, cfg.time)?;
        let theta_max = cfg.theta_max.unwrap_or_else(|| formula.map_or(3.0, |f| 3.0 * f));
        let scheme = reference_scheme(cfg, &probe);
        let profile = scan(&probe, kind, scheme, cfg.time, theta_max, cfg.steps)?;
        // A probe with no sensitivity away from zero has no usable range.
        let found = if profile.grid[1].1 > 0.0 { dynamic_range(&profile)? } else { DynamicRange::BeyondRange };
        let label = state.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        table.rows.push(vec![
            Cell::Text(label),
            Cell::Num(profile.f_zero),
            Cell::opt(found.value()),
            Cell::opt(formula),
            Cell::Num(theta_max),
        ]);
        schemes.push(scheme);
    }
    table.meta("schemes", schemes);
    Ok(table.render(cfg))
}

fn noise_scan(cfg: &RunConfig) -> Result<String, CliError> {
    let kind = cfg.interaction;
    let state = &cfg.states[0];
    let pure = noisy_or_pure(state, None, kind)?;
    let scheme = reference_scheme(cfg, &pure);
    let theta_max = cfg.theta_max.unwrap_or(DEFAULT_THETA_MAX);
    let mut profiles = vec![scan(&pure, kind, scheme, cfg.time, theta_max, cfg.steps)?];
    let mut probes = Vec::new();
    for eps in &cfg.eps {
        let noisy = noisy_or_pure(state, Some(eps), kind)?;
        profiles.push(scan(&noisy, kind, scheme, cfg.time, theta_max, cfg.steps)?);
        probes.push(noisy);
    }
    let mut names = vec!["coupling".to_string(), "fisher_pure".to_string()];
    names.extend((1..=cfg.eps.len()).map(|i| format!("fisher_noisy_{i}")));
    let mut table = Table::new(&names.iter().map(String::as_str).collect::<Vec<_>>());
    table.meta("scheme", scheme);
    table.meta("noisy_probes", &probes);
    for i in 0..cfg.steps {
        let mut row = vec![Cell::Num(profiles[0].grid[i].0)];
        row.extend(profiles.iter().map(|p| Cell::Num(p.grid[i].1)));
        table.rows.push(row);
    }
    Ok(table.render(cfg))
}

fn coherent_compare(cfg: &RunConfig) -> Result<String, CliError> {
    let kind = cfg.interaction;
    let fock = noisy_or_pure(&cfg.states[0], None, kind)?;
    let alpha: Vec<Complex64> = match &cfg.alpha {
        Some(a) => a.clone(),
        None => cfg.states[0].iter().map(|&n| Complex64::new((n as f64).sqrt(), 0.0)).collect(),
    };
    let coherent = Probe::coherent(alpha.clone(), cfg.cutoff_mass);
    coherent.validate(kind)?;
    let scheme = reference_scheme(cfg, &fock);
    let theta_max = cfg.theta_max.unwrap_or(DEFAULT_THETA_MAX);
    let pf = scan(&fock, kind, scheme, cfg.time, theta_max, cfg.steps)?;
    let pc = scan(&coherent, kind, scheme, cfg.time, theta_max, cfg.steps)?;
    let q = qfi_coherent(&alpha, kind, cfg.time)?;
    let mut table = Table::new(&["coupling", "fisher_fock", "fisher_coherent", "qfi_coherent"]);
    table.meta("scheme", scheme);
    table.meta("coherent_probe", &coherent);
    for (a, b) in pf.grid.iter().zip(&pc.grid) {
        table.rows.push(vec![Cell::Num(a.0), Cell::Num(a.1), Cell::Num(b.1), Cell::Num(q)]);
    }
    Ok(table.render(cfg))
}
