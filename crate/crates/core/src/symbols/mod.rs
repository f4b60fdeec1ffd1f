//! Functions on the unit circle and disk: Blaschke products, singular inner
//! atoms, trigonometric and piecewise-constant symbols, and quotient symbols
//! `conj(ψ)·θ`, with Fourier coefficients carrying geometric tail certificates.

mod blaschke;
mod enclosure;
mod series;
mod trig;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::{c64, Complex, TolerancePolicy};

pub use blaschke::{BlaschkeProduct, SingularInnerAtom, ZERO_MARGIN};
pub use enclosure::{
    inner_tolerance, is_inner_series, modulus_enclosure, sup_norm_certified, InnerTest, ModulusEnclosure,
    INNER_GRID, MIN_GRID,
};
pub use series::{QuotientSymbol, SymbolSeries, TailCertificate};
pub use trig::{Arc, PiecewiseConstant, TrigPolynomial};

/// An analytic symbol: either a Blaschke product or an analytic series.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticSymbol {
    Blaschke(BlaschkeProduct),
    Series(SymbolSeries),
}

/// Inner test; Blaschke products are inner by construction.
pub fn is_inner(s: &AnalyticSymbol, tol: &TolerancePolicy) -> Result<InnerTest> {
    match s {
        AnalyticSymbol::Blaschke(_) => {
            Ok(InnerTest { inner: true, tolerance: inner_tolerance(tol), enclosure: None })
        }
        AnalyticSymbol::Series(series) => is_inner_series(series, tol),
    }
}

/// JSON complex number: either a bare real or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonComplex {
    Real(f64),
    Pair([f64; 2]),
}

impl From<JsonComplex> for Complex {
    fn from(j: JsonComplex) -> Complex {
        match j {
            JsonComplex::Real(re) => c64(re, 0.0),
            JsonComplex::Pair([re, im]) => c64(re, im),
        }
    }
}

impl From<Complex> for JsonComplex {
    fn from(z: Complex) -> Self {
        if z.im == 0.0 {
            JsonComplex::Real(z.re)
        } else {
            JsonComplex::Pair([z.re, z.im])
        }
    }
}

fn to_complex(v: &[JsonComplex]) -> Vec<Complex> {
    v.iter().map(|&z| z.into()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeSpec {
    pub zeros: Vec<JsonComplex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<JsonComplex>,
}

impl BlaschkeSpec {
    pub fn build(&self) -> Result<BlaschkeProduct> {
        let c = self.constant.map_or(c64(1.0, 0.0), Complex::from);
        BlaschkeProduct::new(to_complex(&self.zeros), c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcSpec {
    pub start: f64,
    pub end: f64,
    pub value: JsonComplex,
}

/// Serialized form of a symbol: `{"kind": ..., ...fields}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymbolSpec {
    Blaschke {
        zeros: Vec<JsonComplex>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        constant: Option<JsonComplex>,
    },
    /// `scale · B` for a Blaschke product `B` (not inner unless |scale| = 1).
    ScaledBlaschke { zeros: Vec<JsonComplex>, scale: f64 },
    /// Finite analytic polynomial `Σ_{k≥0} c_k z^k`.
    Series { coefficients: Vec<JsonComplex> },
    /// `[c_{-m}, …, c_m]`.
    Trig { coefficients: Vec<JsonComplex> },
    Quotient { psi: BlaschkeSpec, theta: BlaschkeSpec },
    SingularAtom { mass: f64, point: JsonComplex },
    Piecewise { arcs: Vec<ArcSpec> },
}

/// A parsed symbol.
#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    Blaschke(BlaschkeProduct),
    ScaledBlaschke { product: BlaschkeProduct, scale: f64 },
    Series(SymbolSeries),
    Trig(TrigPolynomial),
    Quotient(QuotientSymbol),
    SingularAtom(SingularInnerAtom),
    Piecewise(PiecewiseConstant),
}

impl SymbolSpec {
    pub fn build(&self) -> Result<Symbol> {
        Ok(match self {
            SymbolSpec::Blaschke { zeros, constant } => {
                Symbol::Blaschke(BlaschkeSpec { zeros: zeros.clone(), constant: *constant }.build()?)
            }
            SymbolSpec::ScaledBlaschke { zeros, scale } => {
                if !scale.is_finite() {
                    return Err(Error::NonFinite("scale"));
                }
                Symbol::ScaledBlaschke { product: BlaschkeProduct::from_zeros(&to_complex(zeros))?, scale: *scale }
            }
            SymbolSpec::Series { coefficients } => {
                if coefficients.is_empty() {
                    return Err(Error::Invalid("series needs at least one coefficient".into()));
                }
                Symbol::Series(SymbolSeries::analytic(to_complex(coefficients), TailCertificate::EXACT))
            }
            SymbolSpec::Trig { coefficients } => Symbol::Trig(TrigPolynomial::new(to_complex(coefficients))?),
            SymbolSpec::Quotient { psi, theta } => Symbol::Quotient(QuotientSymbol::new(psi.build()?, theta.build()?)),
            SymbolSpec::SingularAtom { mass, point } => {
                Symbol::SingularAtom(SingularInnerAtom::new(*mass, (*point).into())?)
            }
            SymbolSpec::Piecewise { arcs } => Symbol::Piecewise(PiecewiseConstant::new(
                arcs.iter().map(|a| Arc { start: a.start, end: a.end, value: a.value.into() }).collect(),
            )?),
        })
    }
}

impl Symbol {
    /// Analytic view with `n_terms` stored coefficients, when the symbol is analytic.
    pub fn as_analytic(&self, n_terms: usize) -> Result<AnalyticSymbol> {
        match self {
            Symbol::Blaschke(b) => Ok(AnalyticSymbol::Blaschke(b.clone())),
            Symbol::ScaledBlaschke { product, scale } => {
                Ok(AnalyticSymbol::Series(product.fourier(n_terms)?.scaled(c64(*scale, 0.0))))
            }
            Symbol::Series(s) if s.is_analytic() => Ok(AnalyticSymbol::Series(s.clone())),
            Symbol::Trig(p) if p.to_series().is_analytic() => Ok(AnalyticSymbol::Series(p.to_series())),
            _ => Err(Error::NotAnalytic),
        }
    }

    /// Fourier series with `n_terms` coefficients on each side, when available.
    pub fn series(&self, n_terms: usize) -> Result<SymbolSeries> {
        match self {
            Symbol::Blaschke(b) => b.fourier(n_terms),
            Symbol::ScaledBlaschke { product, scale } => Ok(product.fourier(n_terms)?.scaled(c64(*scale, 0.0))),
            Symbol::Series(s) => Ok(s.clone()),
            Symbol::Trig(p) => Ok(p.to_series()),
            Symbol::Quotient(q) => q.fourier(n_terms),
            Symbol::SingularAtom(_) | Symbol::Piecewise(_) => Err(Error::Invalid(
                "no certified Fourier expansion for singular atoms or piecewise symbols".into(),
            )),
        }
    }
}
