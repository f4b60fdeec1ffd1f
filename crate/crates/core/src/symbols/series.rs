use serde::{Deserialize, Serialize};

use super::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::numkit::{c64, Complex};

/// `|ĉ(±k)| ≤ bound · ratio^k` for every index outside the stored window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailCertificate {
    pub bound: f64,
    pub ratio: f64,
}

impl TailCertificate {
    pub const EXACT: TailCertificate = TailCertificate { bound: 0.0, ratio: 0.0 };

    pub fn at(&self, k: usize) -> f64 {
        if self.bound == 0.0 {
            0.0
        } else {
            self.bound * self.ratio.powi(k as i32)
        }
    }

    /// `Σ_{k ≥ from} bound · ratio^k`.
    pub fn sum_from(&self, from: usize) -> f64 {
        if self.bound == 0.0 {
            0.0
        } else {
            self.at(from) / (1.0 - self.ratio)
        }
    }

    /// The weaker of two certificates, valid for both.
    pub fn join(a: TailCertificate, b: TailCertificate) -> TailCertificate {
        TailCertificate { bound: a.bound.max(b.bound), ratio: a.ratio.max(b.ratio) }
    }
}

/// Fourier coefficients on the circle: `analytic[k] = ĉ(k)` for k ≥ 0 and
/// `coanalytic[k-1] = ĉ(−k)` for k ≥ 1, with a geometric tail certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolSeries {
    analytic: Vec<Complex>,
    coanalytic: Vec<Complex>,
    /// No negative frequencies at all (not merely none stored).
    analytic_only: bool,
    tail: TailCertificate,
    /// Bound on `Σ |stored − exact|` over the stored coefficients.
    stored_error: f64,
}

impl SymbolSeries {
    pub fn analytic(coeffs: Vec<Complex>, tail: TailCertificate) -> Self {
        Self { analytic: coeffs, coanalytic: Vec::new(), analytic_only: true, tail, stored_error: 0.0 }
    }

    pub fn two_sided(
        analytic: Vec<Complex>,
        coanalytic: Vec<Complex>,
        tail: TailCertificate,
        stored_error: f64,
    ) -> Result<Self> {
        if tail.ratio >= 1.0 || tail.ratio < 0.0 || tail.bound < 0.0 {
            return Err(Error::Invalid(format!("invalid tail certificate {tail:?}")));
        }
        if analytic.is_empty() {
            return Err(Error::Invalid("series needs at least the constant coefficient".into()));
        }
        Ok(Self { analytic, coanalytic, analytic_only: false, tail, stored_error })
    }

    pub fn constant(c: Complex) -> Self {
        Self::analytic(vec![c], TailCertificate::EXACT)
    }

    /// Exact two-sided polynomial `Σ_{k=-m}^{m} c_k e^{ikt}` from `coeffs = [c_{-m}, …, c_m]`.
    pub fn laurent_polynomial(coeffs: &[Complex]) -> Result<Self> {
        if coeffs.len().is_multiple_of(2) {
            return Err(Error::Invalid("coefficient array must have odd length 2m+1".into()));
        }
        let m = coeffs.len() / 2;
        let analytic = coeffs[m..].to_vec();
        let coanalytic: Vec<Complex> = coeffs[..m].iter().rev().copied().collect();
        let analytic_only = coanalytic.iter().all(|z| *z == c64(0.0, 0.0));
        Ok(Self {
            analytic,
            coanalytic: if analytic_only { Vec::new() } else { coanalytic },
            analytic_only,
            tail: TailCertificate::EXACT,
            stored_error: 0.0,
        })
    }

    pub fn is_analytic(&self) -> bool {
        self.analytic_only || (self.coanalytic.iter().all(|z| *z == c64(0.0, 0.0)) && self.tail.bound == 0.0)
    }

    pub fn analytic_coeffs(&self) -> &[Complex] {
        &self.analytic
    }

    pub fn coanalytic_coeffs(&self) -> &[Complex] {
        &self.coanalytic
    }

    pub fn tail(&self) -> TailCertificate {
        self.tail
    }

    pub fn stored_error(&self) -> f64 {
        self.stored_error
    }

    /// Stored coefficient ĉ(k); zero outside the window.
    pub fn coeff(&self, k: i64) -> Complex {
        if k >= 0 {
            self.analytic.get(k as usize).copied().unwrap_or_default()
        } else {
            self.coanalytic.get((-k - 1) as usize).copied().unwrap_or_default()
        }
    }

    /// Certified bound on |ĉ(k)| (stored value plus error, or the tail law outside the window).
    pub fn coeff_bound(&self, k: i64) -> f64 {
        let stored = if k >= 0 {
            (k as usize) < self.analytic.len()
        } else {
            ((-k) as usize) <= self.coanalytic.len()
        };
        if stored {
            self.coeff(k).norm() + self.stored_error
        } else if k < 0 && self.analytic_only {
            0.0
        } else {
            self.tail.at(k.unsigned_abs() as usize)
        }
    }

    /// Stored coefficients as `(k, ĉ(k))`, negative indices first.
    pub fn indexed(&self) -> Vec<(i64, Complex)> {
        let mut out: Vec<(i64, Complex)> =
            self.coanalytic.iter().enumerate().rev().map(|(i, &c)| (-(i as i64) - 1, c)).collect();
        out.extend(self.analytic.iter().enumerate().map(|(i, &c)| (i as i64, c)));
        out
    }

    /// Sup-norm bound on the omitted part of the series (tails plus stored-coefficient error).
    pub fn truncation_error(&self) -> f64 {
        let analytic_tail = self.tail.sum_from(self.analytic.len());
        let coanalytic_tail = if self.analytic_only { 0.0 } else { self.tail.sum_from(self.coanalytic.len() + 1) };
        analytic_tail + coanalytic_tail + self.stored_error
    }

    /// Partial sum at `e^{it}`.
    pub fn eval_boundary(&self, t: f64) -> Complex {
        self.indexed().iter().map(|&(k, c)| c * Complex::from_polar(1.0, k as f64 * t)).sum()
    }

    /// Partial sum of an analytic series at a disk point, with the certified tail `Σ_{k≥K} B ρ^k |z|^k`.
    pub fn eval_disk(&self, z: Complex) -> Result<(Complex, f64)> {
        if !self.is_analytic() {
            return Err(Error::NotAnalytic);
        }
        if z.norm() > 1.0 {
            return Err(Error::Domain(format!("|z| = {} > 1", z.norm())));
        }
        let mut value = c64(0.0, 0.0);
        let mut p = c64(1.0, 0.0);
        for &c in &self.analytic {
            value += c * p;
            p *= z;
        }
        let r = z.norm();
        let k = self.analytic.len();
        let tail = if self.tail.bound == 0.0 {
            0.0
        } else {
            self.tail.bound * (self.tail.ratio * r).powi(k as i32) / (1.0 - self.tail.ratio * r)
        };
        Ok((value, tail + self.stored_error))
    }

    /// Multiply by a scalar.
    pub fn scaled(&self, s: Complex) -> Self {
        let m = s.norm();
        Self {
            analytic: self.analytic.iter().map(|c| c * s).collect(),
            coanalytic: self.coanalytic.iter().map(|c| c * s).collect(),
            analytic_only: self.analytic_only,
            tail: TailCertificate { bound: self.tail.bound * m, ratio: self.tail.ratio },
            stored_error: self.stored_error * m,
        }
    }
}

/// Boundary function `conj(ψ) · θ`, so that `θ = φ ψ` with both factors inner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientSymbol {
    pub psi: BlaschkeProduct,
    pub theta: BlaschkeProduct,
}

impl QuotientSymbol {
    pub fn new(psi: BlaschkeProduct, theta: BlaschkeProduct) -> Self {
        Self { psi, theta }
    }

    pub fn eval_boundary(&self, t: f64) -> Complex {
        self.psi.eval_boundary(t).conj() * self.theta.eval_boundary(t)
    }

    /// Two-sided coefficients `φ̂(m) = Σ_k conj(ψ̂(k)) θ̂(m + k)` for `|m| < n_terms`.
    ///
    /// The inner sums run over an internal window of `2·n_terms + 32` Taylor
    /// coefficients; the dropped terms are charged to `stored_error`. The tail
    /// certificate comes from Cauchy estimates on an annulus around the circle:
    /// positive frequencies are controlled by θ on `|z| = 1/ρ_θ`, negative ones
    /// by ψ reflected through the circle.
    pub fn fourier(&self, n_terms: usize) -> Result<SymbolSeries> {
        if n_terms == 0 {
            return Err(Error::Invalid("n_terms must be at least 1".into()));
        }
        let window = 2 * n_terms + 32;
        let psi = self.psi.fourier(window)?;
        let theta = self.theta.fourier(window)?;
        // Polynomial factors (all zeros at the origin) of degree < n_terms have
        // no coefficients beyond any index the certificates are queried at.
        let envelope = |b: &BlaschkeProduct| {
            if b.max_zero_modulus() == 0.0 && b.degree() < n_terms {
                TailCertificate::EXACT
            } else {
                b.coefficient_certificate()
            }
        };
        let pc = envelope(&self.psi);
        let tc = envelope(&self.theta);
        let psi_c = psi.analytic_coeffs();
        let theta_c = theta.analytic_coeffs();

        let dropped = |m: i64| -> f64 {
            // Terms with k ≥ window or m + k ≥ window are absent from the sum;
            // each factor is bounded by its own envelope and by 1.
            if m >= 0 {
                pc.sum_from(window - m as usize).min(tc.sum_from(window))
            } else {
                pc.sum_from(window).min(tc.sum_from(window - m.unsigned_abs() as usize))
            }
        };

        let coefficient = |m: i64| -> Complex {
            let k0 = if m < 0 { (-m) as usize } else { 0 };
            (k0..window)
                .filter_map(|k| {
                    let j = m + k as i64;
                    (j >= 0 && (j as usize) < window).then(|| psi_c[k].conj() * theta_c[j as usize])
                })
                .sum()
        };

        let analytic: Vec<Complex> = (0..n_terms as i64).map(coefficient).collect();
        let coanalytic: Vec<Complex> = (1..n_terms as i64).map(|k| coefficient(-k)).collect();
        let stored_error: f64 = (-(n_terms as i64) + 1..n_terms as i64).map(dropped).sum();
        let tail = TailCertificate::join(pc, tc);
        SymbolSeries::two_sided(analytic, coanalytic, tail, stored_error)
    }
}
