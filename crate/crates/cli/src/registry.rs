//! Built-in scenarios with their expected outcomes.
//!
//! `basis` records where each expected value comes from: a stated result,
//! a hand computation, a closed form, or a consistency requirement.

use std::f64::consts::{PI, SQRT_2};

use norm_attain::symbols::JsonComplex;
use norm_attain::VerdictKind::{self, Attained, Inconclusive, NotAttained};
use serde_json::{json, Value};

use crate::scenario::Expected;
use crate::Scenario;

pub struct Entry {
    pub id: &'static str,
    pub anchor: &'static str,
    pub basis: &'static str,
    pub spec: Value,
    pub expected: Expected,
}

fn verdict(kind: VerdictKind) -> Expected {
    Expected { verdict: Some(kind), ..Expected::default() }
}

fn with_norm(kind: VerdictKind, norm: f64, tolerance: f64) -> Expected {
    Expected { verdict: Some(kind), norm: Some(norm), tolerance: Some(tolerance), ..Expected::default() }
}

fn checks_only() -> Expected {
    Expected::default()
}

pub fn entries() -> Vec<Entry> {
    let e = |id, anchor, basis, spec, expected| Entry { id, anchor, basis, spec, expected };
    vec![
        // Idempotents.
        e(
            "idempotent-x0",
            "idempotent block form, X = 0 gives an orthogonal projection",
            "closed form: ‖T‖ = 1",
            json!({"kind": "idempotent", "x": [[0]]}),
            with_norm(Attained, 1.0, 1e-12),
        ),
        e(
            "idempotent-x2",
            "idempotent block form, ‖T‖² = 1 + ‖X‖²",
            "hand computation: ‖T‖ = √5, f = (0.2, 0.4)",
            json!({"kind": "idempotent", "x": [[2]]}),
            Expected {
                witness: Some(vec![JsonComplex::Real(0.2), JsonComplex::Real(0.4)]),
                ..with_norm(Attained, 5f64.sqrt(), 1e-12)
            },
        ),
        e(
            "idempotent-3x2",
            "idempotent block form, rectangular X",
            "closed form 1 + σmax(X)²; Buckholtz square identity",
            json!({"kind": "idempotent", "x": [[1, [0, 1]], [0.5, -2], [[0.3, -0.2], 0]]}),
            verdict(Attained),
        ),
        e(
            "idempotent-corpus",
            "idempotent norm formula, Buckholtz and compression characterizations",
            "consistency: every finite idempotent attains its norm",
            json!({"kind": "idempotent_corpus", "count": 50, "max_dim": 8}),
            checks_only(),
        ),
        e(
            "example21",
            "block-diagonal idempotent with x_n = 1 − 1/(2n+1)",
            "stated result: T does not attain its norm √2",
            json!({"kind": "example21", "far_block": 1_000_000}),
            with_norm(NotAttained, SQRT_2, 1e-15),
        ),
        // Model spaces.
        e(
            "model-single-zero",
            "compressed shift, one zero: ‖S_θ‖ = |θ(0)| < 1",
            "stated result: ‖S_θ‖ = |λ| = 0.5",
            json!({"kind": "model_space", "zeros": [0.5]}),
            with_norm(Attained, 0.5, 1e-10),
        ),
        e(
            "model-pm-half",
            "compressed shift, several zeros: ‖S_θ‖ = 1",
            "hand computation: g = S*f = (0.5, 0.5)",
            json!({"kind": "model_space", "zeros": [0.5, -0.5]}),
            Expected { witness: Some(vec![JsonComplex::Real(0.5), JsonComplex::Real(0.5)]), ..with_norm(Attained, 1.0, 1e-10) },
        ),
        e(
            "model-three-zeros",
            "compressed shift, several zeros: ‖S_θ‖ = 1",
            "stated result",
            json!({"kind": "model_space", "zeros": [0.3, -0.4, [0, 0.2]]}),
            with_norm(Attained, 1.0, 1e-8),
        ),
        e(
            "model-four-zeros",
            "defect identity S S* = I − c_θ(·,0) ⊗ c_θ(·,0)",
            "stated identity",
            json!({"kind": "model_space", "zeros": [0.1, 0.2, 0.3, 0.4]}),
            with_norm(Attained, 1.0, 1e-8),
        ),
        e(
            "model-near-boundary",
            "compressed shift, several zeros: ‖S_θ‖ = 1",
            "stated result",
            json!({"kind": "model_space", "zeros": [0.9, 0.95, 0.99]}),
            with_norm(Attained, 1.0, 1e-8),
        ),
        e(
            "model-corpus",
            "norm dichotomy |θ(0)| or 1 for finite Blaschke products",
            "stated result",
            json!({"kind": "model_corpus", "count": 30, "max_dim": 5}),
            checks_only(),
        ),
        e(
            "coefficient-z",
            "compressed shift for θ = z",
            "closed form: ‖S_θ‖ = 0",
            json!({"kind": "coefficient_model", "zeros": [0], "order": 8}),
            checks_only(),
        ),
        e(
            "coefficient-pm-half",
            "coefficient-space and kernel-basis routes agree",
            "cross-route oracle",
            json!({"kind": "coefficient_model", "zeros": [0.5, -0.5], "order": 256}),
            checks_only(),
        ),
        e(
            "coefficient-03-04",
            "coefficient-space and kernel-basis routes agree",
            "cross-route oracle",
            json!({"kind": "coefficient_model", "zeros": [0.3, -0.4], "order": 256}),
            checks_only(),
        ),
        e(
            "coefficient-repeated",
            "repeated zero b_λ²: ‖S_θ‖ = 1",
            "stated result",
            json!({"kind": "coefficient_model", "zeros": [0.5, 0.5], "order": 256}),
            checks_only(),
        ),
        e(
            "singular-witness",
            "singular inner θ: kernel combination vanishing at 0",
            "algebraic cancellation",
            json!({"kind": "singular_witness", "mass": 1.0, "point": 1.0,
                   "pairs": [[0.3, -0.3], [[0, 0.5], 0.2], [[-0.6, 0.1], [0.2, 0.7]]]}),
            checks_only(),
        ),
        // Toeplitz and multiplication operators.
        e(
            "quotient-b05-b03",
            "quotient of inner functions attains, T_θ = T_φ T_ψ",
            "geometric tail bound at N = 64",
            json!({"kind": "toeplitz_quotient", "psi": {"zeros": [0.5]}, "theta": {"zeros": [0.3]}, "order": 64}),
            with_norm(Attained, 1.0, 1e-12),
        ),
        e(
            "quotient-conj-b05",
            "quotient with θ = 1: T_φ b_{0.5} = 1",
            "hand identity",
            json!({"kind": "toeplitz_quotient", "psi": {"zeros": [0.5]}, "theta": {"zeros": []}, "order": 64}),
            with_norm(Attained, 1.0, 1e-12),
        ),
        e(
            "quotient-backward-shift",
            "quotient z̄: the backward shift attains at z²",
            "shift arithmetic",
            json!({"kind": "toeplitz_quotient", "psi": {"zeros": [0, 0]}, "theta": {"zeros": [0]}, "order": 16}),
            with_norm(Attained, 1.0, 1e-12),
        ),
        e(
            "scan-cos",
            "Toeplitz sections of cos t",
            "closed form cos(π/(N+1))",
            json!({"kind": "toeplitz_scan", "symbol": {"kind": "trig", "coefficients": [0.5, 0, 0.5]},
                   "orders": [3, 7, 15], "strict": true}),
            Expected {
                verdict: Some(Inconclusive),
                norms: Some(vec![(PI / 4.0).cos(), (PI / 8.0).cos(), (PI / 16.0).cos()]),
                tolerance: Some(1e-10),
                ..Expected::default()
            },
        ),
        e(
            "scan-one",
            "Toeplitz sections of the constant 1",
            "closed form",
            json!({"kind": "toeplitz_scan", "symbol": {"kind": "trig", "coefficients": [1]}, "orders": [1, 4, 16]}),
            Expected {
                verdict: Some(Inconclusive),
                norms: Some(vec![1.0, 1.0, 1.0]),
                tolerance: Some(1e-12),
                ..Expected::default()
            },
        ),
        e(
            "scan-quotient",
            "Toeplitz sections of conj(b_{0.5}) b_{0.3}",
            "sections approach ‖φ‖∞ = 1",
            json!({"kind": "toeplitz_scan",
                   "symbol": {"kind": "quotient", "psi": {"zeros": [0.5]}, "theta": {"zeros": [0.3]}},
                   "orders": [8, 16, 32, 64], "terms": 128}),
            verdict(Inconclusive),
        ),
        e(
            "analytic-inner",
            "analytic symbol attains iff φ/‖φ‖∞ is inner",
            "stated result",
            json!({"kind": "analytic", "symbol": {"kind": "blaschke", "zeros": [0.5, -0.3]}}),
            with_norm(Attained, 1.0, 1e-12),
        ),
        e(
            "analytic-inner-series",
            "analytic symbol attains iff φ/‖φ‖∞ is inner (series route)",
            "stated result",
            json!({"kind": "analytic", "symbol": {"kind": "blaschke", "zeros": [0.5, -0.3]}, "expand": true}),
            with_norm(Attained, 1.0, 1e-6),
        ),
        e(
            "analytic-scaled-inner",
            "scaled inner symbol 0.7·b_{0.2}",
            "stated result",
            json!({"kind": "analytic", "symbol": {"kind": "scaled_blaschke", "zeros": [0.2], "scale": 0.7}}),
            with_norm(Attained, 0.7, 1e-6),
        ),
        e(
            "analytic-affine",
            "(z + 1)/2 is not a multiple of an inner function",
            "explicit modulus variation",
            json!({"kind": "analytic", "symbol": {"kind": "series", "coefficients": [0.5, 0.5]}}),
            verdict(NotAttained),
        ),
        e(
            "analytic-corpus",
            "finite Blaschke products are inner and attain",
            "stated result",
            json!({"kind": "analytic_corpus", "count": 50, "max_dim": 5}),
            checks_only(),
        ),
        e(
            "laurent-z",
            "Laurent operator attains iff |φ| is constant",
            "constant modulus",
            json!({"kind": "laurent_trig", "coefficients": [0, 0, 1]}),
            with_norm(Attained, 1.0, 1e-12),
        ),
        e(
            "laurent-constant",
            "Laurent operator with constant symbol",
            "constant modulus",
            json!({"kind": "laurent_trig", "coefficients": [3]}),
            with_norm(Attained, 3.0, 1e-12),
        ),
        e(
            "laurent-cos",
            "Laurent operator of cos t",
            "|φ|² = (1 + cos 2t)/2 is not constant",
            json!({"kind": "laurent_trig", "coefficients": [0.5, 0, 0.5]}),
            verdict(NotAttained),
        ),
        e(
            "laurent-two-arcs",
            "piecewise-constant Laurent symbol attains on its top arc",
            "positive-measure arc",
            json!({"kind": "laurent_piecewise",
                   "arcs": [{"start": 0, "end": PI, "value": 1}, {"start": PI, "end": 2.0 * PI, "value": [0, 2]}]}),
            with_norm(Attained, 2.0, 1e-12),
        ),
        e(
            "constant-i-minus-k",
            "constant operator symbol I − K",
            "stated result",
            json!({"kind": "constant_symbol", "operator": {"kind": "diagonal", "entries": "one_minus_inv_n"}}),
            with_norm(NotAttained, 1.0, 1e-12),
        ),
        e(
            "constant-backward-shift",
            "constant operator symbol S*, witness f ≡ e₂",
            "stated result",
            json!({"kind": "constant_symbol", "operator": {"kind": "backward_shift"}}),
            with_norm(Attained, 1.0, 1e-12),
        ),
        e(
            "constant-finite",
            "constant matrix symbol",
            "finite dimension",
            json!({"kind": "constant_symbol", "operator": {"kind": "finite", "matrix": [[1, 2], [0, 0]]}}),
            with_norm(Attained, 5f64.sqrt(), 1e-12),
        ),
        // Structured operators.
        e(
            "diagonal-i-minus-k",
            "diag(1 − 1/n) does not attain",
            "stated result",
            json!({"kind": "diagonal", "entries": "one_minus_inv_n"}),
            with_norm(NotAttained, 1.0, 1e-12),
        ),
        e(
            "diagonal-table-attained",
            "diagonal attaining at a declared index",
            "declared metadata",
            json!({"kind": "diagonal", "entries": [0.5, 2, 1], "sup": 2, "attained_at": 2}),
            with_norm(Attained, 2.0, 1e-12),
        ),
        e(
            "backward-shift",
            "‖S* e₂‖ = 1 = ‖S*‖",
            "stated result",
            json!({"kind": "backward_shift"}),
            with_norm(Attained, 1.0, 1e-12),
        ),
        e(
            "finite-tts",
            "T T* = [[A, 0], [0, 0]] pattern",
            "closed form: ‖T‖ = √5",
            json!({"kind": "direct_sum", "a": {"kind": "finite", "matrix": [[1, 2], [0, 0]]},
                   "b": {"kind": "finite", "matrix": [[0]]}}),
            with_norm(Attained, 5f64.sqrt(), 1e-12),
        ),
        e(
            "sum-attained-dominates",
            "direct sum: an attaining summand with the larger norm",
            "max dominance",
            json!({"kind": "direct_sum", "a": {"kind": "finite", "matrix": [[2]]},
                   "b": {"kind": "diagonal", "entries": "one_minus_inv_n"}}),
            with_norm(Attained, 2.0, 1e-12),
        ),
        e(
            "sum-neither-attains",
            "direct sum of two non-attaining summands with equal norm",
            "max dominance",
            json!({"kind": "direct_sum", "a": {"kind": "diagonal", "entries": "one_minus_inv_n"},
                   "b": {"kind": "diagonal", "entries": "one_minus_inv_n"}}),
            with_norm(NotAttained, 1.0, 1e-12),
        ),
        e(
            "finite-corpus",
            "every finite matrix attains; TT* eigen-certificate",
            "finite dimension",
            json!({"kind": "finite_corpus", "count": 50, "max_dim": 8}),
            checks_only(),
        ),
    ]
}

/// The registry as runnable scenarios, in order.
pub fn registry() -> Vec<Scenario> {
    entries()
        .into_iter()
        .map(|e| {
            let spec = serde_json::from_value(e.spec.clone()).map_err(|err| format!("registry entry {}: {err}", e.id));
            Scenario {
                id: e.id.to_string(),
                kind: e.spec.get("kind").and_then(Value::as_str).unwrap_or("?").to_string(),
                anchor: Some(e.anchor.to_string()),
                spec,
                expected: Some(e.expected),
            }
        })
        .collect()
}
