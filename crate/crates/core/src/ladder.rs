//! Invariant subspaces reachable from a Fock product state.
//!
//! For kind I the charges `n_a + n_b` and `n_a + n_c` are conserved, for kind II
//! the single charge `2 n_a' + n_b'`. Fixing the charges leaves exactly one
//! product state per value of the measured-mode occupation, and those states
//! start at measured occupation 0. Rung `k` of a ladder is therefore the state
//! whose measured mode holds `k` quanta, and the generator is tridiagonal in
//! that ordering.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which trilinear coupling drives the probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InteractionKind {
    /// Non-degenerate three-mode coupling `a†bc + a b†c†`.
    I,
    /// Degenerate two-mode coupling `a'†b'² + a'(b'†)²`.
    II,
}

impl InteractionKind {
    pub fn mode_count(self) -> usize {
        match self {
            InteractionKind::I => 3,
            InteractionKind::II => 2,
        }
    }

    /// Human-readable mode labels, measured mode first.
    pub fn mode_labels(self) -> &'static [&'static str] {
        match self {
            InteractionKind::I => &["a", "b", "c"],
            InteractionKind::II => &["a'", "b'"],
        }
    }

    /// Conserved charges of a configuration, assumed valid for this kind.
    pub fn charges(self, occupations: &[u64]) -> (u64, u64) {
        match self {
            InteractionKind::I => (
                occupations[0] + occupations[1],
                occupations[0] + occupations[2],
            ),
            InteractionKind::II => (2 * occupations[0] + occupations[1], 0),
        }
    }
}

impl fmt::Display for InteractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InteractionKind::I => f.write_str("I"),
            InteractionKind::II => f.write_str("II"),
        }
    }
}

impl std::str::FromStr for InteractionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "i" | "1" => Ok(InteractionKind::I),
            "II" | "ii" | "2" => Ok(InteractionKind::II),
            other => Err(Error::Config(format!("unknown interaction kind {other:?}"))),
        }
    }
}

/// Occupation numbers of a Fock product state, measured mode first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FockConfig(Vec<u64>);

impl FockConfig {
    pub fn new(occupations: impl Into<Vec<u64>>) -> Self {
        FockConfig(occupations.into())
    }

    pub fn occupations(&self) -> &[u64] {
        &self.0
    }

    pub fn measured(&self) -> u64 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn validate(&self, kind: InteractionKind) -> Result<()> {
        if self.0.len() != kind.mode_count() {
            return Err(Error::Config(format!(
                "interaction {kind} needs {} occupations, got {}",
                kind.mode_count(),
                self.0.len()
            )));
        }
        Ok(())
    }
}

impl From<Vec<u64>> for FockConfig {
    fn from(v: Vec<u64>) -> Self {
        FockConfig(v)
    }
}

impl<const N: usize> From<[u64; N]> for FockConfig {
    fn from(v: [u64; N]) -> Self {
        FockConfig(v.to_vec())
    }
}

impl fmt::Display for FockConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str(">")
    }
}

/// One invariant subspace with the generator restricted to it.
#[derive(Debug, Clone, PartialEq)]
pub struct Ladder {
    kind: InteractionKind,
    basis: Vec<FockConfig>,
    diag: Vec<f64>,
    offdiag: Vec<f64>,
    offdiag_sq: Vec<f64>,
    root_index: usize,
}

impl Ladder {
    pub fn kind(&self) -> InteractionKind {
        self.kind
    }

    pub fn basis(&self) -> &[FockConfig] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Always zero: the interaction-picture generator has no diagonal part.
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// `offdiag[k] = <basis[k+1]| G |basis[k]>`.
    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Squared couplings, exact integers (below 2^53) before any square root.
    pub fn offdiag_sq(&self) -> &[f64] {
        &self.offdiag_sq
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    pub fn root(&self) -> &FockConfig {
        &self.basis[self.root_index]
    }

    /// Rung whose measured mode holds `m` quanta.
    pub fn rung_of(&self, m: u64) -> Option<usize> {
        let k = usize::try_from(m).ok()?;
        (k < self.basis.len()).then_some(k)
    }

    /// Measured-mode occupation of rung `k`.
    pub fn measured_of(&self, k: usize) -> u64 {
        self.basis[k].measured()
    }

    pub fn charges(&self) -> (u64, u64) {
        self.kind.charges(self.root().occupations())
    }
}

/// Largest ladder that will be built.
pub const MAX_LADDER_DIM: u64 = 1 << 20;

fn checked_product(factors: &[u64]) -> Result<u64> {
    factors.iter().try_fold(1u64, |acc, &f| {
        acc.checked_mul(f)
            .ok_or_else(|| Error::Numeric(format!("matrix element overflow for factors {factors:?}")))
    })
}

/// Builds the ladder containing `root`.
pub fn build_ladder(kind: InteractionKind, root: &FockConfig) -> Result<Ladder> {
    root.validate(kind)?;
    let occ = root.occupations();
    let overflow = || Error::Numeric(format!("charge overflow for {root}"));
    let dim = match kind {
        InteractionKind::I => {
            occ[0].checked_add(occ[1]).ok_or_else(overflow)?;
            occ[0].checked_add(occ[2]).ok_or_else(overflow)?;
            occ[0] + occ[1].min(occ[2]) + 1
        }
        InteractionKind::II => {
            occ[0].checked_mul(2).and_then(|x| x.checked_add(occ[1])).ok_or_else(overflow)?;
            occ[0] + occ[1] / 2 + 1
        }
    };
    if dim > MAX_LADDER_DIM {
        return Err(Error::Resource(format!("ladder of {root} has {dim} rungs, limit is {MAX_LADDER_DIM}")));
    }
    let (basis, offdiag) = match kind {
        InteractionKind::I => {
            let (s1, s2) = kind.charges(occ);
            let top = s1.min(s2);
            let basis: Vec<FockConfig> = (0..=top)
                .map(|k| FockConfig(vec![k, s1 - k, s2 - k]))
                .collect();
            // a†bc takes rung k to k+1.
            let offdiag = (0..top)
                .map(|k| checked_product(&[k + 1, s1 - k, s2 - k]))
                .collect::<Result<Vec<_>>>()?;
            (basis, offdiag)
        }
        InteractionKind::II => {
            let (s, _) = kind.charges(occ);
            let top = s / 2;
            let basis: Vec<FockConfig> = (0..=top).map(|k| FockConfig(vec![k, s - 2 * k])).collect();
            // a'†b'² takes rung k to k+1.
            let offdiag = (0..top)
                .map(|k| {
                    let nb = s - 2 * k;
                    checked_product(&[k + 1, nb, nb - 1])
                })
                .collect::<Result<Vec<_>>>()?;
            (basis, offdiag)
        }
    };
    let offdiag_sq: Vec<f64> = offdiag.iter().map(|&p| p as f64).collect();
    let offdiag = offdiag_sq.iter().map(|p| p.sqrt()).collect();
    let root_index = occ[0] as usize;
    debug_assert_eq!(&basis[root_index], root);
    Ok(Ladder {
        kind,
        diag: vec![0.0; basis.len()],
        basis,
        offdiag,
        offdiag_sq,
        root_index,
    })
}
