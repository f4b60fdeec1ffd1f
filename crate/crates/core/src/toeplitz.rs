//! Toeplitz operators `T_φ = P L_φ |_{H²}` through their finite sections,
//! together with the attainment tests available for structured symbol classes:
//! unimodular quotients `conj(ψ)θ`, analytic symbols, Laurent operators with
//! trigonometric or piecewise-constant symbols, and constant operator symbols.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::{c64, operator_norm, vec_norm, Complex, ComplexMatrix, TolerancePolicy};
use crate::structured::{structured_na, StructuredOperator};
use crate::symbols::{
    inner_tolerance, is_inner_series, modulus_enclosure, AnalyticSymbol, PiecewiseConstant, QuotientSymbol,
    SymbolSeries, TrigPolynomial, INNER_GRID,
};
use crate::verdict::{Verdict, Witness};

/// Grid used for every sup-norm enclosure in this module.
pub const ENCLOSURE_GRID: usize = 4096;

/// `N × N` section `[ĉ(j − k)]` of a Toeplitz operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToeplitzTruncation {
    pub symbol: SymbolSeries,
    pub order: usize,
    pub matrix: ComplexMatrix,
    /// Bound on the coefficients omitted from the stored series.
    pub truncation_error: f64,
}

impl ToeplitzTruncation {
    pub fn norm(&self, tol: &TolerancePolicy) -> Result<f64> {
        operator_norm(&self.matrix, tol)
    }
}

pub fn toeplitz_truncation(s: &SymbolSeries, n: usize) -> Result<ToeplitzTruncation> {
    if n == 0 {
        return Err(Error::Invalid("truncation order must be at least 1".into()));
    }
    let matrix = ComplexMatrix::from_fn(n, n, |j, k| s.coeff(j as i64 - k as i64));
    Ok(ToeplitzTruncation { symbol: s.clone(), order: n, matrix, truncation_error: s.truncation_error() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NAWitnessReport {
    pub verdict: Verdict,
    /// Unit-normalized Taylor prefix of ψ.
    pub witness_coeffs: Vec<Complex>,
    /// `‖T_φ^{(N)} h‖ / ‖h‖`.
    pub ratio: f64,
    /// Certified upper bound on `‖φ‖∞` minus the ratio.
    pub bound_gap: f64,
    pub sup_upper: f64,
    /// Combined tail of ψ, θ and the stored symbol coefficients.
    pub truncation_error: f64,
    /// Largest entry of `T_θ − T_φ T_ψ` on the leading `N/2` block.
    pub identity_residual: f64,
    pub identity_bound: f64,
    pub order: usize,
}

/// The symbol `φ = conj(ψ)θ` attains: `T_φ ψ = P(θ |ψ|²) = θ`, so
/// `‖T_φ ψ‖ = ‖ψ‖ = 1 = ‖φ‖∞`, and `T_θ = T_φ T_ψ`.
pub fn brown_douglas_na(q: &QuotientSymbol, n: usize, tol: &TolerancePolicy) -> Result<NAWitnessReport> {
    if n < 2 {
        return Err(Error::InsufficientTruncation("order must be at least 2".into()));
    }
    let series = q.fourier(n)?;
    let tail_ratio = series.tail().ratio;
    if tail_ratio.powi(n as i32) > 1e-6 {
        return Err(Error::InsufficientTruncation(format!(
            "tail ratio {tail_ratio:.4}^{n} = {:.3e} > 1e-6",
            tail_ratio.powi(n as i32)
        )));
    }
    let t_phi = toeplitz_truncation(&series, n)?;
    let psi = q.psi.fourier(n)?;
    let theta = q.theta.fourier(n)?;
    let h = psi.analytic_coeffs().to_vec();
    let h_norm = vec_norm(&h);
    let th = t_phi.matrix.mul_vec(&h)?;
    let ratio = vec_norm(&th) / h_norm;
    let truncation_error =
        psi.tail().sum_from(n) + theta.tail().sum_from(n) + series.stored_error() + 1e-13 * n as f64;
    let slack = (10.0 * truncation_error).max(tol.rel_eps);
    let enclosure = modulus_enclosure(&series, ENCLOSURE_GRID)?;
    let sup_upper = enclosure.sup_upper;

    // T_θ = T_φ T_ψ on the leading block; the product misses Σ_{l ≥ N} φ̂(k − l) ψ̂(l − j).
    let half = n / 2;
    let t_psi = toeplitz_truncation(&psi, n)?;
    let t_theta = toeplitz_truncation(&theta, n)?;
    let product = t_phi.matrix.matmul(&t_psi.matrix)?;
    let mut identity_residual: f64 = 0.0;
    for k in 0..half {
        for j in 0..half {
            identity_residual = identity_residual.max((t_theta.matrix[(k, j)] - product[(k, j)]).norm());
        }
    }
    let psi_max = (0..n as i64).map(|k| psi.coeff_bound(k)).fold(0.0, f64::max).max(psi.tail().at(0));
    let phi_far: f64 = (n - half + 1..n).map(|m| series.coeff_bound(-(m as i64))).sum::<f64>()
        + series.tail().sum_from(n)
        + series.stored_error();
    let identity_bound = phi_far * psi_max + 1e-13 * n as f64;
    if identity_residual > identity_bound {
        return Err(Error::Inconsistent(format!(
            "T_θ − T_φ T_ψ residual {identity_residual:.3e} exceeds tail bound {identity_bound:.3e}"
        )));
    }
    if ratio < 1.0 - slack {
        return Err(Error::Inconsistent(format!("witness ratio {ratio} below 1 − {slack:.3e}")));
    }
    if ratio > sup_upper + t_phi.truncation_error {
        return Err(Error::Inconsistent(format!("witness ratio {ratio} exceeds the sup-norm enclosure {sup_upper}")));
    }
    let witness_coeffs: Vec<Complex> = h.iter().map(|z| z / h_norm).collect();
    let verdict = Verdict::Attained {
        norm: 1.0,
        witness: Witness::Series { coefficients: witness_coeffs.clone() },
        ratio,
        residual: (1.0 - ratio).abs().max(identity_residual),
        certificate: None,
    };
    Ok(NAWitnessReport {
        verdict,
        witness_coeffs,
        ratio,
        bound_gap: sup_upper - ratio,
        sup_upper,
        truncation_error,
        identity_residual,
        identity_bound,
        order: n,
    })
}

/// Terms used when an analytic symbol is expanded for the enclosure.
pub const ANALYTIC_TERMS: usize = 256;

/// `M_φ` on H² attains iff `φ/‖φ‖∞` is inner; the constant function 1 is
/// then a witness since `‖φ · 1‖₂ = ‖φ‖∞`.
pub fn analytic_na_check(s: &AnalyticSymbol, tol: &TolerancePolicy) -> Result<Verdict> {
    let series = match s {
        AnalyticSymbol::Blaschke(_) => {
            return Ok(Verdict::Attained {
                norm: 1.0,
                witness: Witness::Series { coefficients: vec![c64(1.0, 0.0)] },
                ratio: 1.0,
                residual: 0.0,
                certificate: None,
            });
        }
        AnalyticSymbol::Series(series) => series,
    };
    if !series.is_analytic() {
        return Err(Error::NotAnalytic);
    }
    let e = modulus_enclosure(series, INNER_GRID)?;
    let tau = inner_tolerance(tol);
    let upper = e.sup_upper;
    let l2 = vec_norm(series.analytic_coeffs());
    if upper <= tol.abs_eps {
        return Ok(Verdict::Attained {
            norm: 0.0,
            witness: Witness::Series { coefficients: vec![c64(1.0, 0.0)] },
            ratio: l2,
            residual: upper,
            certificate: None,
        });
    }
    let normalized = series.scaled(c64(1.0 / upper, 0.0));
    if is_inner_series(&normalized, tol)?.inner {
        return Ok(Verdict::Attained {
            norm: e.sample_max,
            witness: Witness::Series { coefficients: vec![c64(1.0, 0.0)] },
            ratio: l2,
            residual: (l2 - e.sample_max).abs().max(e.spread()),
            certificate: None,
        });
    }
    let variation = e.sup_lower - e.inf_upper;
    if variation > tau * upper {
        return Ok(Verdict::NotAttained {
            norm: e.sample_max,
            gap: variation,
            prefix: None,
            reason: format!(
                "|φ| is not constant on the circle: certified max ≥ {:.6} and min ≤ {:.6}, so φ/‖φ‖∞ is not inner",
                e.sup_lower, e.inf_upper
            ),
        });
    }
    Ok(Verdict::Inconclusive {
        evidence: format!(
            "modulus variation {variation:.3e} is within the enclosure slack {:.3e}",
            tau * upper
        ),
        lower: Some(e.sup_lower),
        upper: Some(upper),
    })
}

/// Laurent operator `L_φ` on L²: attains iff `|φ| = ‖φ‖∞` on a set of
/// positive measure. For a trigonometric polynomial that is the case iff
/// `|φ|²` is constant; otherwise the sup level set is finite.
pub fn laurent_na_check(p: &TrigPolynomial, tol: &TolerancePolicy) -> Result<Verdict> {
    let m = p.modulus_squared();
    let d0 = m.coeff(0).re;
    let deg = m.degree() as i64;
    let oscillation = (1..=deg).map(|k| m.coeff(k).norm()).fold(0.0, f64::max);
    if oscillation <= tol.threshold(d0) {
        let norm = d0.max(0.0).sqrt();
        return Ok(Verdict::Attained {
            norm,
            witness: Witness::Indicator { start: 0.0, end: 2.0 * PI },
            ratio: norm,
            residual: oscillation,
            certificate: None,
        });
    }
    let e = modulus_enclosure(&p.to_series(), ENCLOSURE_GRID)?;
    Ok(Verdict::NotAttained {
        norm: e.sample_max,
        gap: (e.sup_lower - e.inf_upper).max(0.0),
        prefix: None,
        reason: format!(
            "|φ|² has a non-zero Fourier coefficient of size {oscillation:.3e}; a non-constant trigonometric \
             polynomial reaches its maximum modulus on a finite set, which has measure zero"
        ),
    })
}

/// Piecewise-constant symbols always attain on an arc carrying the sup.
pub fn laurent_piecewise_na(p: &PiecewiseConstant) -> Verdict {
    let (sup, arc) = p.sup();
    let arc = arc.expect("non-empty arcs");
    Verdict::Attained {
        norm: sup,
        witness: Witness::Indicator { start: arc.start, end: arc.end },
        ratio: arc.value.norm(),
        residual: (arc.value.norm() - sup).abs(),
        certificate: None,
    }
}

/// `M_Φ` with `Φ ≡ A` attains iff `A` does: a constant function `f ≡ x`
/// carries an attaining `x`, and conversely an attaining `f` forces
/// `‖A f(z)‖ = ‖A‖ ‖f(z)‖` almost everywhere.
pub fn constant_symbol_na(op: &StructuredOperator, tol: &TolerancePolicy) -> Result<Verdict> {
    Ok(match structured_na(op, tol)? {
        Verdict::Attained { norm, witness, ratio, residual, certificate } => Verdict::Attained {
            norm,
            witness: Witness::ConstantFunction { value: Box::new(witness) },
            ratio,
            residual,
            certificate,
        },
        Verdict::NotAttained { norm, gap, prefix, reason } => Verdict::NotAttained {
            norm,
            gap,
            prefix,
            reason: format!(
                "constant operator symbol: an attaining f would give ‖A f(z)‖ = ‖A‖ ‖f(z)‖ for almost every z, \
                 but A does not attain ({reason})"
            ),
        },
        inconclusive => inconclusive,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub order: usize,
    pub norm: f64,
    /// Certified sup-norm upper bound minus the section norm.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub sup_lower: f64,
    pub sup_upper: f64,
    pub truncation_error: f64,
    /// Always `Inconclusive`: a trend is not a proof.
    pub verdict: Verdict,
}

/// Section norms for increasing orders, compared with the sup-norm enclosure.
pub fn na_criterion_scan(s: &SymbolSeries, orders: &[usize], tol: &TolerancePolicy) -> Result<ScanReport> {
    if orders.is_empty() {
        return Err(Error::Invalid("scan needs at least one order".into()));
    }
    let mut sorted = orders.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let e = modulus_enclosure(s, ENCLOSURE_GRID)?;
    let trunc = s.truncation_error();
    let mut rows = Vec::with_capacity(sorted.len());
    for &n in &sorted {
        let norm = toeplitz_truncation(s, n)?.norm(tol)?;
        if norm > e.sup_upper + trunc + tol.threshold(e.sup_upper) {
            return Err(Error::Inconsistent(format!(
                "section norm {norm} at N = {n} exceeds the sup-norm bound {}",
                e.sup_upper + trunc
            )));
        }
        if let Some(prev) = rows.last().map(|r: &ScanRow| r.norm) {
            if norm < prev - tol.threshold(prev) {
                return Err(Error::Inconsistent(format!("section norms decrease at N = {n}: {prev} then {norm}")));
            }
        }
        rows.push(ScanRow { order: n, norm, gap: e.sup_upper - norm });
    }
    let last = rows.last().expect("non-empty");
    let verdict = Verdict::Inconclusive {
        evidence: format!(
            "section norms nondecreasing over N ∈ {:?}, last {:.9} vs ‖φ‖∞ ∈ [{:.9}, {:.9}]",
            sorted, last.norm, e.sup_lower, e.sup_upper
        ),
        lower: Some(last.norm),
        upper: Some(e.sup_upper + trunc),
    };
    Ok(ScanReport { rows, sup_lower: e.sup_lower, sup_upper: e.sup_upper, truncation_error: trunc, verdict })
}
