//! Exact simulation and sensitivity analysis for the two trilinear bosonic
//! couplings `a†bc + h.c.` (kind I) and `a'†b'² + h.c.` (kind II).
//!
//! A Fock product state only ever explores a finite chain of product states
//! (a [`Ladder`]) fixed by the conserved charges of the coupling. The generator
//! restricted to that chain is a real symmetric tridiagonal matrix with zero
//! diagonal, so the evolution is computed from its spectral decomposition and
//! derivatives with respect to the coupling are exact.
//!
//! Module map:
//!
//! - [`ladder`]: invariant subspaces and their generator matrices.
//! - [`dynamics`]: spectral evolution and outcome probabilities with analytic derivatives.
//! - [`probes`]: pure, noisy and coherent probes as weighted ladder components.
//! - [`metrology`]: classical and quantum Fisher information, Cramér–Rao bounds, scans.
//! - [`optimize`]: optimal Fock configurations and asymptotic scaling.
//! - [`par`]: data-parallel map with a sequential fallback.

#![forbid(unsafe_code)]

pub mod dynamics;
pub mod error;
pub mod ladder;
pub mod metrology;
pub mod optimize;
pub mod par;
pub mod probes;

pub use dynamics::{
    diagonalize, evolve, evolve_state, outcome_probabilities, AmplitudeSet, EvolutionParams,
    OutcomeProbability, Spectrum,
};
pub use error::{Error, Result};
pub use ladder::{build_ladder, FockConfig, InteractionKind, Ladder};
pub use metrology::{
    cramer_rao, dynamic_range, fisher, fisher_limit_closed_form, qfi_coherent, qfi_variance, scan,
    scan_with, DynamicRange, PreparedProbe, MeasurementScheme, SensitivityProfile,
};
pub use optimize::{
    asymptotic_prediction, lagrange_relaxation, lagrange_relaxation_weighted, optimize_config,
    rounding_candidates, scaling_table, scaling_table_with, ExcitationScheme, ModeConstraint,
    OptimalResult,
};
pub use par::{configure_threads, Execution};
pub use probes::{decompose, Component, Probe, WeightedComponents};

pub use num_complex::Complex64;
