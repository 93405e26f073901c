//! Run configuration: command-line flags layered over an optional JSON file.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use tsense_core::{Complex64, InteractionKind, MeasurementScheme};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    FisherScan,
    Optimize,
    Scaling,
    DynamicRange,
    NoiseScan,
    CoherentCompare,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandName::FisherScan => "fisher-scan",
            CommandName::Optimize => "optimize",
            CommandName::Scaling => "scaling",
            CommandName::DynamicRange => "dynamic-range",
            CommandName::NoiseScan => "noise-scan",
            CommandName::CoherentCompare => "coherent-compare",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SchemeName {
    Pnr,
    Binary,
    S0,
}

impl SchemeName {
    pub fn with_reference(self, n: u64) -> MeasurementScheme {
        match self {
            SchemeName::Pnr => MeasurementScheme::FullPnr,
            SchemeName::Binary => MeasurementScheme::BinaryFock(n),
            SchemeName::S0 => MeasurementScheme::SequentialS0(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Comma-separated occupations, e.g. `2,1,1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occupations(pub Vec<u64>);

impl FromStr for Occupations {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|e| format!("bad occupation {x:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Occupations)
    }
}

/// Comma-separated floats: one value broadcast to every mode or one per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatList(pub Vec<f64>);

impl FromStr for FloatList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| format!("bad number {x:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(FloatList)
    }
}

/// Comma-separated complex amplitudes in `re+imi` form, e.g. `1.2+0.3i,1.4`.
#[derive(Debug, Clone, PartialEq)]
pub struct Amplitudes(pub Vec<Complex64>);

impl FromStr for Amplitudes {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|x| {
                let x = x.trim();
                Complex64::from_str(x).map_err(|e| format!("bad amplitude {x:?}: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Amplitudes)
    }
}

fn parse_interaction(s: &str) -> Result<InteractionKind, String> {
    s.parse::<InteractionKind>().map_err(|e| e.to_string())
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Interaction kind, I (three-mode) or II (two-mode).
    #[arg(long, value_parser = parse_interaction)]
    pub interaction: Option<InteractionKind>,
    /// Fock occupations, measured mode first. Repeat for dynamic-range.
    #[arg(long = "state", value_name = "N,N[,N]")]
    pub states: Vec<Occupations>,
    /// Thermal-like noise level, broadcast or per mode. Repeat for noise-scan.
    #[arg(long = "eps", value_name = "EPS[,EPS..]")]
    pub eps: Vec<FloatList>,
    /// Coherent amplitudes as re+imi pairs.
    #[arg(long, value_name = "A,A[,A]")]
    pub alpha: Option<Amplitudes>,
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeName>,
    /// Reference occupation of the binary and s0 partitions (default: the
    /// probe's nominal measured occupation).
    #[arg(long)]
    pub reference: Option<u64>,
    /// Interaction time.
    #[arg(long)]
    pub time: Option<f64>,
    #[arg(long = "theta-max")]
    pub theta_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Total quanta for optimize.
    #[arg(long)]
    pub total: Option<u64>,
    #[arg(long = "n-max")]
    pub n_max: Option<u64>,
    /// Repetitions entering the Cramér–Rao bound.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Probability mass kept when truncating coherent probes.
    #[arg(long = "cutoff-mass")]
    pub cutoff_mass: Option<f64>,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// JSON config file; explicit flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandName,
    pub interaction: InteractionKind,
    pub states: Vec<Vec<u64>>,
    pub eps: Vec<Vec<f64>>,
    pub alpha: Option<Vec<Complex64>>,
    pub scheme: SchemeName,
    pub reference: Option<u64>,
    pub time: f64,
    /// `None` picks the command's own range.
    pub theta_max: Option<f64>,
    pub steps: usize,
    pub total: Option<u64>,
    pub n_max: Option<u64>,
    pub trials: u64,
    pub cutoff_mass: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

/// Config-file representation: every field optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub command: Option<CommandName>,
    pub interaction: Option<InteractionKind>,
    pub states: Option<Vec<Vec<u64>>>,
    pub eps: Option<Vec<Vec<f64>>>,
    pub alpha: Option<Vec<Complex64>>,
    pub scheme: Option<SchemeName>,
    pub reference: Option<u64>,
    pub time: Option<f64>,
    pub theta_max: Option<f64>,
    pub steps: Option<usize>,
    pub total: Option<u64>,
    pub n_max: Option<u64>,
    pub trials: Option<u64>,
    pub cutoff_mass: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

pub const DEFAULT_CUTOFF_MASS: f64 = 1.0 - 1e-10;

impl RunConfig {
    pub fn resolve(command: CommandName, flags: Flags, file: ConfigFile) -> Result<Self, CliError> {
        if let Some(c) = file.command {
            if c != command {
                return Err(CliError::Usage(format!(
                    "config file is for {}, not {}",
                    c.as_str(),
                    command.as_str()
                )));
            }
        }
        let interaction = flags
            .interaction
            .or(file.interaction)
            .ok_or_else(|| CliError::Usage("--interaction is required".into()))?;
        let states = if flags.states.is_empty() {
            file.states.unwrap_or_default()
        } else {
            flags.states.into_iter().map(|o| o.0).collect()
        };
        let eps = if flags.eps.is_empty() {
            file.eps.unwrap_or_default()
        } else {
            flags.eps.into_iter().map(|e| e.0).collect()
        };
        let default_format = match command {
            CommandName::Optimize => Format::Json,
            _ => Format::Csv,
        };
        let cfg = RunConfig {
            command,
            interaction,
            states,
            eps,
            alpha: flags.alpha.map(|a| a.0).or(file.alpha),
            scheme: flags.scheme.or(file.scheme).unwrap_or(SchemeName::S0),
            reference: flags.reference.or(file.reference),
            time: flags.time.or(file.time).unwrap_or(1.0),
            theta_max: flags.theta_max.or(file.theta_max),
            steps: flags.steps.or(file.steps).unwrap_or(tsense_core::metrology::DEFAULT_STEPS),
            total: flags.total.or(file.total),
            n_max: flags.n_max.or(file.n_max),
            trials: flags.trials.or(file.trials).unwrap_or(1),
            cutoff_mass: flags.cutoff_mass.or(file.cutoff_mass).unwrap_or(DEFAULT_CUTOFF_MASS),
            out: flags.out.or(file.out),
            format: flags.format.or(file.format).unwrap_or(default_format),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if !(self.time > 0.0) || !self.time.is_finite() {
            return usage(format!("--time must be positive, got {}", self.time));
        }
        if let Some(t) = self.theta_max {
            if !(t > 0.0) || !t.is_finite() {
                return usage(format!("--theta-max must be positive, got {t}"));
            }
        }
        if self.steps < 3 {
            return usage(format!("--steps must be at least 3, got {}", self.steps));
        }
        if self.trials == 0 {
            return usage("--trials must be at least 1".into());
        }
        if !(self.cutoff_mass > 0.0 && self.cutoff_mass < 1.0) {
            return usage(format!("--cutoff-mass must lie in (0, 1), got {}", self.cutoff_mass));
        }
        let single = |what: &str, n: usize| {
            if n > 1 {
                Err(CliError::Usage(format!("{} takes a single {what}", self.command.as_str())))
            } else {
                Ok(())
            }
        };
        match self.command {
            CommandName::FisherScan => {
                single("--state", self.states.len())?;
                single("--eps", self.eps.len())?;
                if self.states.is_empty() && self.alpha.is_none() {
                    return usage("fisher-scan needs --state or --alpha".into());
                }
            }
            CommandName::Optimize => {
                if self.total.is_none() {
                    return usage("optimize needs --total".into());
                }
                if self.format == Format::Csv {
                    return usage("optimize writes JSON only".into());
                }
            }
            CommandName::Scaling => {
                if self.n_max.is_none() {
                    return usage("scaling needs --n-max".into());
                }
            }
            CommandName::DynamicRange => {
                if self.states.is_empty() {
                    return usage("dynamic-range needs at least one --state".into());
                }
            }
            CommandName::NoiseScan => {
                single("--state", self.states.len())?;
                if self.states.is_empty() {
                    return usage("noise-scan needs --state".into());
                }
                if self.eps.is_empty() {
                    return usage("noise-scan needs at least one --eps".into());
                }
            }
            CommandName::CoherentCompare => {
                single("--state", self.states.len())?;
                if self.states.is_empty() {
                    return usage("coherent-compare needs --state".into());
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid config file: {e}")))
    }
}

impl From<RunConfig> for ConfigFile {
    fn from(c: RunConfig) -> Self {
        ConfigFile {
            command: Some(c.command),
            interaction: Some(c.interaction),
            states: Some(c.states),
            eps: Some(c.eps),
            alpha: c.alpha,
            scheme: Some(c.scheme),
            reference: c.reference,
            time: Some(c.time),
            theta_max: c.theta_max,
            steps: Some(c.steps),
            total: c.total,
            n_max: c.n_max,
            trials: Some(c.trials),
            cutoff_mass: Some(c.cutoff_mass),
            out: c.out,
            format: Some(c.format),
        }
    }
}

impl fmt::Display for SchemeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeName::Pnr => "pnr",
            SchemeName::Binary => "binary",
            SchemeName::S0 => "s0",
        })
    }
}
