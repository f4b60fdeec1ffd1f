use serde::{Deserialize, Serialize};

use super::series::{SymbolSeries, TailCertificate};
use crate::error::{Error, Result};
use crate::numkit::{c64, Complex};

/// Zeros must keep this distance from the unit circle.
pub const ZERO_MARGIN: f64 = 1e-8;
const UNIMODULAR_TOL: f64 = 1e-10;
/// Points with `|z| ≤ 1 + BOUNDARY_SLACK` count as closed-disk points.
const BOUNDARY_SLACK: f64 = 1e-12;

/// Finite Blaschke product `c · Π (z − λᵢ)/(1 − conj(λᵢ) z)`.
///
/// Multiplicity is expressed by repeating a zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    zeros: Vec<Complex>,
    constant: Complex,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<Complex>, constant: Complex) -> Result<Self> {
        for (i, z) in zeros.iter().enumerate() {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite("Blaschke zeros"));
            }
            if z.norm() > 1.0 - ZERO_MARGIN {
                return Err(Error::Domain(format!(
                    "zero #{i} = {z} has modulus {} > 1 - {ZERO_MARGIN:e}",
                    z.norm()
                )));
            }
        }
        if (constant.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::Domain(format!("unimodular constant {constant} has modulus {}", constant.norm())));
        }
        Ok(Self { zeros, constant })
    }

    pub fn from_zeros(zeros: &[Complex]) -> Result<Self> {
        Self::new(zeros.to_vec(), c64(1.0, 0.0))
    }

    /// The single factor `b_λ`.
    pub fn factor(lambda: Complex) -> Result<Self> {
        Self::from_zeros(&[lambda])
    }

    /// Zero-free product: the unimodular constant itself.
    pub fn constant(c: Complex) -> Result<Self> {
        Self::new(Vec::new(), c)
    }

    pub fn zeros(&self) -> &[Complex] {
        &self.zeros
    }

    pub fn unimodular_constant(&self) -> Complex {
        self.constant
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn max_zero_modulus(&self) -> f64 {
        self.zeros.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Evaluation on the closed disk.
    pub fn eval(&self, z: Complex) -> Result<Complex> {
        if z.norm() > 1.0 + BOUNDARY_SLACK {
            return Err(Error::Domain(format!("|z| = {} > 1", z.norm())));
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex) -> Complex {
        self.zeros
            .iter()
            .fold(self.constant, |acc, &l| acc * (z - l) / (c64(1.0, 0.0) - l.conj() * z))
    }

    /// Boundary value at `e^{it}`.
    pub fn eval_boundary(&self, t: f64) -> Complex {
        self.eval_unchecked(Complex::from_polar(1.0, t))
    }

    /// Geometric coefficient certificate `|â(k)| ≤ bound · ratio^k` valid for every k ≥ 0.
    ///
    /// Uses the Cauchy estimate on the circle of radius `1/ratio` with
    /// `ratio = sqrt(max|λᵢ|)` (or 1/2 when every zero sits at the origin),
    /// where each factor is bounded by `(R + |λ|)/(1 − |λ| R)`.
    pub fn coefficient_certificate(&self) -> TailCertificate {
        let q = self.max_zero_modulus();
        let ratio = if q > 0.0 { q.sqrt() } else { 0.5 };
        let radius = 1.0 / ratio;
        let bound = self
            .zeros
            .iter()
            .map(|l| {
                let m = l.norm();
                (radius + m) / (1.0 - m * radius)
            })
            .product::<f64>();
        TailCertificate { bound, ratio }
    }

    /// Taylor coefficients `â(0..n_terms)` via truncated convolution of the factor series.
    ///
    /// A single factor expands as `â(0) = −λ`, `â(k) = (1 − |λ|²) conj(λ)^{k−1}`.
    /// Truncated analytic convolution is exact on the stored window.
    pub fn fourier(&self, n_terms: usize) -> Result<SymbolSeries> {
        if n_terms == 0 {
            return Err(Error::Invalid("n_terms must be at least 1".into()));
        }
        let mut acc = vec![c64(0.0, 0.0); n_terms];
        acc[0] = self.constant;
        for &l in &self.zeros {
            let factor = factor_series(l, n_terms);
            acc = truncated_convolution(&acc, &factor, n_terms);
        }
        // c·z^n is a polynomial: once stored in full there is no tail.
        let tail = if self.max_zero_modulus() == 0.0 && n_terms > self.degree() {
            TailCertificate::EXACT
        } else {
            self.coefficient_certificate()
        };
        Ok(SymbolSeries::analytic(acc, tail))
    }
}

fn factor_series(l: Complex, n: usize) -> Vec<Complex> {
    let mut out = Vec::with_capacity(n);
    out.push(-l);
    let w = 1.0 - l.norm_sqr();
    let mut p = c64(1.0, 0.0);
    for _ in 1..n {
        out.push(w * p);
        p *= l.conj();
    }
    out
}

pub(crate) fn truncated_convolution(a: &[Complex], b: &[Complex], n: usize) -> Vec<Complex> {
    let mut out = vec![c64(0.0, 0.0); n];
    for (i, &x) in a.iter().enumerate().take(n) {
        if x == c64(0.0, 0.0) {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Single-atom singular inner function `exp(−t (ζ + z)/(ζ − z))`.
///
/// Only point evaluation is supported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularInnerAtom {
    mass: f64,
    point: Complex,
}

impl SingularInnerAtom {
    pub fn new(mass: f64, point: Complex) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        if (point.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::Domain(format!("atom {point} is not on the unit circle")));
        }
        Ok(Self { mass, point })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn point(&self) -> Complex {
        self.point
    }

    /// Evaluation on the open disk.
    pub fn eval(&self, z: Complex) -> Result<Complex> {
        if z.norm() >= 1.0 {
            return Err(Error::Domain(format!("|z| = {} >= 1", z.norm())));
        }
        Ok((-self.mass * (self.point + z) / (self.point - z)).exp())
    }
}
