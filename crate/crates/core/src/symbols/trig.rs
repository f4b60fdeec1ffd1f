use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::SymbolSeries;
use crate::error::{Error, Result};
use crate::numkit::{c64, Complex};

/// `Σ_{k=-m}^{m} c_k e^{ikt}` stored as `[c_{-m}, …, c_m]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPolynomial {
    coefficients: Vec<Complex>,
}

impl TrigPolynomial {
    pub fn new(coefficients: Vec<Complex>) -> Result<Self> {
        if coefficients.len().is_multiple_of(2) {
            return Err(Error::Invalid(format!(
                "trig polynomial needs 2m+1 coefficients, got {}",
                coefficients.len()
            )));
        }
        if coefficients.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite("trig coefficients"));
        }
        Ok(Self { coefficients })
    }

    pub fn constant(c: Complex) -> Self {
        Self { coefficients: vec![c] }
    }

    /// `cos t = (z + z̄)/2`.
    pub fn cosine() -> Self {
        Self { coefficients: vec![c64(0.5, 0.0), c64(0.0, 0.0), c64(0.5, 0.0)] }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() / 2
    }

    pub fn coefficients(&self) -> &[Complex] {
        &self.coefficients
    }

    /// Coefficient `c_k`, zero outside `[-m, m]`.
    pub fn coeff(&self, k: i64) -> Complex {
        let m = self.degree() as i64;
        if k.abs() > m {
            c64(0.0, 0.0)
        } else {
            self.coefficients[(k + m) as usize]
        }
    }

    pub fn eval(&self, t: f64) -> Complex {
        let m = self.degree() as i64;
        (-m..=m).map(|k| self.coeff(k) * Complex::from_polar(1.0, k as f64 * t)).sum()
    }

    /// `|p|²` as a trig polynomial of degree 2m: `d_n = Σ_k c_{k+n} conj(c_k)`.
    pub fn modulus_squared(&self) -> TrigPolynomial {
        let m = self.degree() as i64;
        let coefficients = (-2 * m..=2 * m)
            .map(|n| (-m..=m).map(|k| self.coeff(k + n) * self.coeff(k).conj()).sum())
            .collect();
        TrigPolynomial { coefficients }
    }

    pub fn to_series(&self) -> SymbolSeries {
        SymbolSeries::laurent_polynomial(&self.coefficients).expect("odd length by construction")
    }
}

/// One arc `[start, end)` of the circle (angles in radians within `[0, 2π]`) carrying a constant value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub start: f64,
    pub end: f64,
    pub value: Complex,
}

/// Piecewise-constant symbol on disjoint arcs; zero off the arcs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseConstant {
    arcs: Vec<Arc>,
}

impl PiecewiseConstant {
    pub fn new(mut arcs: Vec<Arc>) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::Invalid("piecewise symbol needs at least one arc".into()));
        }
        for a in &arcs {
            if !(0.0 <= a.start && a.start < a.end && a.end <= 2.0 * PI + 1e-12) {
                return Err(Error::Invalid(format!("arc [{}, {}) is not a proper sub-arc of [0, 2π]", a.start, a.end)));
            }
        }
        arcs.sort_by(|a, b| a.start.total_cmp(&b.start));
        if arcs.windows(2).any(|w| w[1].start < w[0].end) {
            return Err(Error::Invalid("arcs overlap".into()));
        }
        Ok(Self { arcs })
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// `ess sup |φ|` together with an arc where it is attained (if the arcs
    /// cover the circle, or the maximum is positive, that arc has positive measure).
    pub fn sup(&self) -> (f64, Option<Arc>) {
        let best = self
            .arcs
            .iter()
            .copied()
            .max_by(|a, b| a.value.norm().total_cmp(&b.value.norm()))
            .expect("non-empty");
        let covered: f64 = self.arcs.iter().map(|a| a.end - a.start).sum();
        if best.value.norm() == 0.0 && covered < 2.0 * PI {
            // Everything is zero; the uncovered remainder works as well.
            return (0.0, Some(best));
        }
        (best.value.norm(), Some(best))
    }

    pub fn eval(&self, t: f64) -> Complex {
        let t = t.rem_euclid(2.0 * PI);
        self.arcs
            .iter()
            .find(|a| a.start <= t && t < a.end)
            .map_or(c64(0.0, 0.0), |a| a.value)
    }
}
