//! Certified enclosures of `|φ(e^{it})|` over the whole circle.
//!
//! On each grid cell `|t − t_j| ≤ π/G` the squared modulus `h = |φ_K|²` of the
//! stored partial sum is bounded by its second-order Taylor polynomial at
//! `t_j` plus the remainder `H₃ δ³/6`. `H₃` is the smaller of `2 M₀M₃ + 6 M₁M₂`
//! (with `M_i = Σ |k|^i |ĉ(k)|`) and `Σ |m|³ |ĥ(m)|` computed from the exact
//! coefficients of `h`; the latter is tiny when `|φ|` is nearly constant.
//! The omitted part of the series adds at most the series' truncation error to `|φ|`.

use std::f64::consts::PI;

use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::SymbolSeries;
use crate::error::{Error, Result};
use crate::numkit::{c64, Complex, TolerancePolicy};

/// Minimum admissible grid.
pub const MIN_GRID: usize = 16;
/// Grid used by the inner-function test.
pub const INNER_GRID: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusEnclosure {
    /// Certified `lower ≤ ‖φ‖∞ ≤ upper`.
    pub sup_lower: f64,
    pub sup_upper: f64,
    /// Certified `lower ≤ ess inf |φ| ≤ upper`.
    pub inf_lower: f64,
    pub inf_upper: f64,
    /// Max / min of the sampled partial-sum modulus.
    pub sample_max: f64,
    pub sample_min: f64,
    pub truncation_error: f64,
    pub grid: usize,
}

impl ModulusEnclosure {
    /// Width of the band that certainly contains `|φ|` everywhere.
    pub fn spread(&self) -> f64 {
        self.sup_upper - self.inf_lower
    }
}

/// Values of `Σ ĉ(k) (ik)^d e^{ik t_j}` on the grid `t_j = 2πj/G`.
fn grid_values(coeffs: &[(i64, Complex)], grid: usize, derivative: u32) -> Vec<Complex> {
    let mut bins = vec![c64(0.0, 0.0); grid];
    for &(k, c) in coeffs {
        let factor = c64(0.0, k as f64).powu(derivative);
        bins[k.rem_euclid(grid as i64) as usize] += c * factor;
    }
    // rustfft's inverse transform is Σ X_b e^{+2πi b j / G}, unnormalized.
    let fft = FftPlanner::new().plan_fft_inverse(grid);
    fft.process(&mut bins);
    bins
}

/// `Σ |m|³ |ĥ(m)|` for `h = |Σ ĉ(k) e^{ikt}|²`, with a rounding allowance per coefficient.
fn squared_modulus_moment(coeffs: &[(i64, Complex)], m0: f64) -> f64 {
    let (lo, hi) = coeffs.iter().fold((0i64, 0i64), |(a, b), &(k, _)| (a.min(k), b.max(k)));
    let span = (hi - lo) as usize;
    // ĥ lives on [−span, span]; sample finely enough that nothing aliases.
    let size = (2 * span + 1).next_power_of_two().max(MIN_GRID);
    let shifted: Vec<(i64, Complex)> = coeffs.iter().map(|&(k, c)| (k - lo, c)).collect();
    let mut samples: Vec<Complex> = grid_values(&shifted, size, 0).iter().map(|v| c64(v.norm_sqr(), 0.0)).collect();
    FftPlanner::new().plan_fft_forward(size).process(&mut samples);
    let scale = 1.0 / size as f64;
    let slack = 32.0 * f64::EPSILON * (m0 * m0 + 1.0) * (size as f64).log2();
    (0..size)
        .map(|b| {
            let m = if b <= size / 2 { b as f64 } else { b as f64 - size as f64 };
            m.abs().powi(3) * ((samples[b] * scale).norm() + slack)
        })
        .sum()
}

pub fn modulus_enclosure(s: &SymbolSeries, grid: usize) -> Result<ModulusEnclosure> {
    if grid < MIN_GRID {
        return Err(Error::Invalid(format!("grid size {grid} < {MIN_GRID}")));
    }
    let coeffs = s.indexed();
    let moment = |i: i32| -> f64 { coeffs.iter().map(|&(k, c)| (k.abs() as f64).powi(i) * c.norm()).sum() };
    let (m0, m1, m2, m3) = (moment(0), moment(1), moment(2), moment(3));
    let delta = PI / grid as f64;
    // Floating-point allowance for the FFT evaluation of h.
    let rounding = 16.0 * f64::EPSILON * (m0 * m0 + 1.0) * (grid as f64).log2();
    let h3 = (2.0 * m0 * m3 + 6.0 * m1 * m2).min(squared_modulus_moment(&coeffs, m0));
    let remainder = h3 * delta.powi(3) / 6.0 + rounding;

    let f0 = grid_values(&coeffs, grid, 0);
    let f1 = grid_values(&coeffs, grid, 1);
    let f2 = grid_values(&coeffs, grid, 2);

    let mut sample_max: f64 = 0.0;
    let mut sample_min = f64::INFINITY;
    let mut cell_max: f64 = 0.0;
    let mut cell_min = f64::INFINITY;
    for j in 0..grid {
        let h = f0[j].norm_sqr();
        let h1 = 2.0 * (f0[j].conj() * f1[j]).re;
        let h2 = 2.0 * (f0[j].conj() * f2[j]).re + 2.0 * f1[j].norm_sqr();
        let quad = |x: f64| h + h1 * x + 0.5 * h2 * x * x;
        let mut hi = quad(-delta).max(quad(delta));
        let mut lo = quad(-delta).min(quad(delta));
        if h2 != 0.0 {
            let vertex = -h1 / h2;
            if vertex.abs() <= delta {
                hi = hi.max(quad(vertex));
                lo = lo.min(quad(vertex));
            }
        }
        hi = hi.max(h);
        lo = lo.min(h);
        sample_max = sample_max.max(h.sqrt());
        sample_min = sample_min.min(h.sqrt());
        cell_max = cell_max.max((hi + remainder).max(0.0).sqrt());
        cell_min = cell_min.min((lo - remainder).max(0.0).sqrt());
    }
    let e = s.truncation_error();
    Ok(ModulusEnclosure {
        sup_lower: (sample_max - e).max(0.0),
        sup_upper: cell_max + e,
        inf_lower: (cell_min - e).max(0.0),
        inf_upper: sample_min + e,
        sample_max,
        sample_min,
        truncation_error: e,
        grid,
    })
}

/// Certified `(lower, upper)` with `lower ≤ ‖φ‖∞ ≤ upper`.
pub fn sup_norm_certified(s: &SymbolSeries, grid: usize) -> Result<(f64, f64)> {
    let e = modulus_enclosure(s, grid)?;
    Ok((e.sup_lower, e.sup_upper))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerTest {
    pub inner: bool,
    pub tolerance: f64,
    pub enclosure: Option<ModulusEnclosure>,
}

/// Tolerance for the grid-based inner test: `max(1000·abs_eps, 1e-6)`.
pub fn inner_tolerance(tol: &TolerancePolicy) -> f64 {
    (tol.abs_eps * 1e3).max(1e-6)
}

/// `|φ| = 1` on the circle, certified on every cell of the 4096-point grid.
pub fn is_inner_series(s: &SymbolSeries, tol: &TolerancePolicy) -> Result<InnerTest> {
    if !s.is_analytic() {
        return Err(Error::NotAnalytic);
    }
    let tolerance = inner_tolerance(tol);
    let e = modulus_enclosure(s, INNER_GRID)?;
    let inner = e.inf_lower >= 1.0 - tolerance && e.sup_upper <= 1.0 + tolerance;
    Ok(InnerTest { inner, tolerance, enclosure: Some(e) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{BlaschkeProduct, QuotientSymbol, TailCertificate};

    fn cos_series() -> SymbolSeries {
        SymbolSeries::laurent_polynomial(&[c64(0.5, 0.0), c64(0.0, 0.0), c64(0.5, 0.0)]).unwrap()
    }

    #[test]
    fn constant_has_zero_slack() {
        let (lo, hi) = sup_norm_certified(&SymbolSeries::constant(c64(2.0, 0.0)), 64).unwrap();
        assert!((lo - 2.0).abs() < 1e-15);
        assert!((hi - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cosine_enclosure() {
        let (lo, hi) = sup_norm_certified(&cos_series(), 4096).unwrap();
        assert!(lo >= 1.0 - 1e-6);
        assert!(hi <= 1.0 + 1e-4);
        assert!(lo <= 1.0 && 1.0 <= hi);
    }

    #[test]
    fn quotient_enclosure_brackets_one() {
        let q = QuotientSymbol::new(
            BlaschkeProduct::factor(c64(0.5, 0.0)).unwrap(),
            BlaschkeProduct::factor(c64(0.3, 0.0)).unwrap(),
        );
        let s = q.fourier(64).unwrap();
        let (lo, hi) = sup_norm_certified(&s, 65536).unwrap();
        assert!(lo <= 1.0 + 1e-12 && hi >= 1.0 - 1e-12);
        assert!(1.0 - lo <= 1e-6 && hi - 1.0 <= 1e-6, "({lo}, {hi})");
    }

    #[test]
    fn grid_too_small() {
        assert!(sup_norm_certified(&cos_series(), 8).is_err());
    }

    #[test]
    fn unimodular_series_gets_a_tight_band() {
        let zeros = [c64(0.62, 0.0), c64(0.0, 0.67), c64(-0.6, -0.1), c64(0.25, 0.0), c64(-0.47, 0.3)];
        let s = BlaschkeProduct::from_zeros(&zeros).unwrap().fourier(256).unwrap();
        let e = modulus_enclosure(&s, INNER_GRID).unwrap();
        assert!(e.spread() < 1e-9, "{e:?}");
        assert!(is_inner_series(&s, &TolerancePolicy::default()).unwrap().inner);
    }

    #[test]
    fn inner_cases() {
        let tol = TolerancePolicy::default();
        let b = BlaschkeProduct::from_zeros(&[c64(0.5, 0.0), c64(-0.3, 0.0)]).unwrap();
        assert!(is_inner_series(&b.fourier(64).unwrap(), &tol).unwrap().inner);

        let affine = SymbolSeries::analytic(vec![c64(0.5, 0.0), c64(0.5, 0.0)], TailCertificate::EXACT);
        let t = is_inner_series(&affine, &tol).unwrap();
        assert!(!t.inner);
        assert!(t.enclosure.unwrap().inf_lower < 1e-3);

        let scaled = SymbolSeries::analytic(vec![c64(0.0, 0.0), c64(0.0, 0.0), c64(0.999, 0.0)], TailCertificate::EXACT);
        assert!(!is_inner_series(&scaled, &tol).unwrap().inner);

        assert!(matches!(is_inner_series(&cos_series(), &tol), Err(Error::NotAnalytic)));
    }
}
