//! Dense complex linear algebra: matrices, Hermitian eigensolvers, operator
//! norms and linear solves, all driven by a single [`TolerancePolicy`].

mod eig;
mod matrix;
mod solve;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use eig::{generalized_eig_max, hermitian_eig, normalize_phase, operator_norm, EigDecomposition};
pub use matrix::{inner, vec_norm, vec_scale, vec_sub, Complex, ComplexMatrix};
pub use solve::solve;

/// Absolute/relative tolerances and the iteration cap shared by every module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub abs_eps: f64,
    pub rel_eps: f64,
    /// Cap on eigensolver sweeps.
    pub max_iter: usize,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self { abs_eps: 1e-10, rel_eps: 1e-8, max_iter: 10_000 }
    }
}

impl TolerancePolicy {
    pub fn new(abs_eps: f64, rel_eps: f64, max_iter: usize) -> Result<Self> {
        let t = Self { abs_eps, rel_eps, max_iter };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_eps > 0.0 && self.abs_eps.is_finite()) {
            return Err(Error::Invalid(format!("abs_eps must be positive, got {}", self.abs_eps)));
        }
        if !(self.rel_eps > 0.0 && self.rel_eps.is_finite()) {
            return Err(Error::Invalid(format!("rel_eps must be positive, got {}", self.rel_eps)));
        }
        if self.max_iter == 0 {
            return Err(Error::Invalid("max_iter must be at least 1".into()));
        }
        Ok(())
    }

    /// `max(abs_eps, rel_eps · scale)`.
    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs_eps.max(self.rel_eps * scale.abs())
    }

    pub fn close(&self, a: f64, b: f64, scale: f64) -> bool {
        (a - b).abs() <= self.threshold(scale)
    }
}

pub fn c64(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub fn real(re: f64) -> Complex {
    Complex::new(re, 0.0)
}
