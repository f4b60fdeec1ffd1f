//! Result type for norm-attainment decisions.

use serde::{Deserialize, Serialize};

use crate::numkit::Complex;

/// A vector certifying `‖T w‖ = ‖T‖ ‖w‖`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Coordinates in the operator's working basis.
    Vector { coords: Vec<Complex> },
    /// Standard basis vector `e_index` of ℓ²(ℕ), 1-based.
    BasisVector { index: usize },
    /// Vector `coords` supported on block `index` of a block-diagonal operator.
    Block { index: usize, coords: Vec<Complex> },
    /// Constant vector-valued function `f(z) ≡ value`.
    ConstantFunction { value: Box<Witness> },
    /// Fourier (Taylor) coefficients of a function in H².
    Series { coefficients: Vec<Complex> },
    /// Indicator of the arc `{e^{it} : start ≤ t < end}`.
    Indicator { start: f64, end: f64 },
}

/// Eigenpair `(‖T‖², h)` of `T T*` with its residual `‖T T* h − ‖T‖² h‖`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenCertificate {
    pub eigenvalue: f64,
    pub vector: Vec<Complex>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Attained {
        norm: f64,
        witness: Witness,
        /// `‖T w‖ / ‖w‖` as evaluated.
        ratio: f64,
        /// Largest defect among the checks that certify the witness.
        residual: f64,
        certificate: Option<EigenCertificate>,
    },
    NotAttained {
        norm: f64,
        /// Observed strict gap below the norm (relative to the declared limit for structured operators).
        gap: f64,
        prefix: Option<usize>,
        reason: String,
    },
    Inconclusive {
        evidence: String,
        lower: Option<f64>,
        upper: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    #[serde(alias = "Attained")]
    Attained,
    #[serde(alias = "NotAttained")]
    NotAttained,
    #[serde(alias = "Inconclusive")]
    Inconclusive,
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Attained { .. } => VerdictKind::Attained,
            Verdict::NotAttained { .. } => VerdictKind::NotAttained,
            Verdict::Inconclusive { .. } => VerdictKind::Inconclusive,
        }
    }

    pub fn is_attained(&self) -> bool {
        matches!(self, Verdict::Attained { .. })
    }

    pub fn norm(&self) -> Option<f64> {
        match self {
            Verdict::Attained { norm, .. } | Verdict::NotAttained { norm, .. } => Some(*norm),
            Verdict::Inconclusive { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Attained { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerdictKind::Attained => "Attained",
            VerdictKind::NotAttained => "NotAttained",
            VerdictKind::Inconclusive => "Inconclusive",
        })
    }
}
