//! Infinite diagonal and block-diagonal operators, the backward shift, and
//! finite matrices, with norm-attainment decided from a declared norm profile.
//!
//! The supremum of infinitely many entry norms is not computable, so
//! metadata-bearing operators carry a declared limit `L` that is checked
//! against a finite prefix before any verdict is issued. Verdicts for these
//! operators are certificates relative to the declared limit.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::{c64, hermitian_eig, operator_norm, vec_norm, vec_sub, Complex, ComplexMatrix, TolerancePolicy};
use crate::verdict::{EigenCertificate, Verdict, Witness};

pub const DEFAULT_VALIDATION_PREFIX: usize = 10_000;

/// Diagonal entry `d_n`, called with `n ≥ 1`.
pub type EntryProvider = Arc<dyn Fn(usize) -> Complex + Send + Sync>;
/// Diagonal block `B_n`, called with `n ≥ 0`.
pub type BlockProvider = Arc<dyn Fn(usize) -> ComplexMatrix + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Monotone {
    Increasing,
    Decreasing,
    #[default]
    None,
}

/// Declared norm profile of a diagonal or block-diagonal operator.
///
/// Indices use the provider's numbering: 1-based entries, 0-based blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormProfileMetadata {
    #[serde(rename = "sup")]
    pub declared_sup: f64,
    #[serde(default)]
    pub monotone: Monotone,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attained_at: Option<usize>,
    #[serde(default)]
    pub strictly_below_sup: bool,
    #[serde(rename = "prefix", default = "default_prefix")]
    pub validation_prefix: usize,
}

fn default_prefix() -> usize {
    DEFAULT_VALIDATION_PREFIX
}

impl NormProfileMetadata {
    pub fn strictly_below(declared_sup: f64, monotone: Monotone) -> Self {
        Self {
            declared_sup,
            monotone,
            attained_at: None,
            strictly_below_sup: true,
            validation_prefix: DEFAULT_VALIDATION_PREFIX,
        }
    }

    pub fn attained(declared_sup: f64, index: usize, monotone: Monotone) -> Self {
        Self {
            declared_sup,
            monotone,
            attained_at: Some(index),
            strictly_below_sup: false,
            validation_prefix: DEFAULT_VALIDATION_PREFIX,
        }
    }

    pub fn with_prefix(mut self, prefix: usize) -> Self {
        self.validation_prefix = prefix;
        self
    }

    fn check_shape(&self) -> Result<()> {
        if !(self.declared_sup.is_finite() && self.declared_sup >= 0.0) {
            return Err(Error::MetadataViolation(format!("declared sup {} is not a finite non-negative number", self.declared_sup)));
        }
        if self.attained_at.is_some() == self.strictly_below_sup {
            return Err(Error::MetadataViolation(
                "exactly one of attained_at and strictly_below_sup must be set".into(),
            ));
        }
        if self.validation_prefix == 0 {
            return Err(Error::MetadataViolation("validation prefix must be positive".into()));
        }
        Ok(())
    }
}

/// What the prefix check observed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileEvidence {
    pub prefix: usize,
    pub max_norm: f64,
    /// Index of the largest prefix norm.
    pub argmax: usize,
    /// `L − max_norm`.
    pub gap: f64,
}

#[derive(Clone)]
pub enum StructuredOperator {
    Finite(ComplexMatrix),
    Diagonal { entries: EntryProvider, metadata: NormProfileMetadata, label: String },
    BlockDiagonal { blocks: BlockProvider, metadata: NormProfileMetadata, label: String },
    /// `S*(a₁, a₂, a₃, …) = (a₂, a₃, …)` on ℓ².
    BackwardShift,
    DirectSum(Box<StructuredOperator>, Box<StructuredOperator>),
}

impl fmt::Debug for StructuredOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(m) => f.debug_tuple("Finite").field(m).finish(),
            Self::Diagonal { metadata, label, .. } => {
                f.debug_struct("Diagonal").field("label", label).field("metadata", metadata).finish()
            }
            Self::BlockDiagonal { metadata, label, .. } => {
                f.debug_struct("BlockDiagonal").field("label", label).field("metadata", metadata).finish()
            }
            Self::BackwardShift => f.write_str("BackwardShift"),
            Self::DirectSum(a, b) => f.debug_tuple("DirectSum").field(a).field(b).finish(),
        }
    }
}

impl StructuredOperator {
    pub fn diagonal(
        label: impl Into<String>,
        entries: impl Fn(usize) -> Complex + Send + Sync + 'static,
        metadata: NormProfileMetadata,
    ) -> Self {
        Self::Diagonal { entries: Arc::new(entries), metadata, label: label.into() }
    }

    pub fn block_diagonal(
        label: impl Into<String>,
        blocks: impl Fn(usize) -> ComplexMatrix + Send + Sync + 'static,
        metadata: NormProfileMetadata,
    ) -> Self {
        Self::BlockDiagonal { blocks: Arc::new(blocks), metadata, label: label.into() }
    }

    pub fn metadata(&self) -> Option<&NormProfileMetadata> {
        match self {
            Self::Diagonal { metadata, .. } | Self::BlockDiagonal { metadata, .. } => Some(metadata),
            _ => None,
        }
    }

    fn carries_metadata(&self) -> bool {
        match self {
            Self::Diagonal { .. } | Self::BlockDiagonal { .. } => true,
            Self::DirectSum(a, b) => a.carries_metadata() || b.carries_metadata(),
            _ => false,
        }
    }

    /// Entry or block norm at `index` (provider numbering).
    pub fn profile_norm(&self, index: usize, tol: &TolerancePolicy) -> Result<f64> {
        match self {
            Self::Diagonal { entries, .. } => {
                let d = entries(index);
                if !(d.re.is_finite() && d.im.is_finite()) {
                    return Err(Error::NonFinite("diagonal entry"));
                }
                Ok(d.norm())
            }
            Self::BlockDiagonal { blocks, .. } => operator_norm(&blocks(index), tol),
            _ => Err(Error::Invalid("only diagonal and block-diagonal operators have a norm profile".into())),
        }
    }

    fn first_index(&self) -> usize {
        match self {
            Self::Diagonal { .. } => 1,
            _ => 0,
        }
    }

    /// Check the declared profile against the prefix; contradictions are errors.
    pub fn validate(&self, tol: &TolerancePolicy) -> Result<ProfileEvidence> {
        let meta = self
            .metadata()
            .ok_or_else(|| Error::Invalid("operator carries no norm profile".into()))?;
        meta.check_shape()?;
        let l = meta.declared_sup;
        let first = self.first_index();
        let mut max_norm = f64::NEG_INFINITY;
        let mut argmax = first;
        let mut previous: Option<f64> = None;
        for index in first..first + meta.validation_prefix {
            let norm = self.profile_norm(index, tol)?;
            if norm > l + tol.abs_eps {
                return Err(Error::MetadataViolation(format!("norm {norm} at index {index} exceeds declared sup {l}")));
            }
            if meta.strictly_below_sup && norm >= l - tol.abs_eps {
                return Err(Error::MetadataViolation(format!(
                    "norm {norm} at index {index} reaches declared sup {l} although declared strictly below"
                )));
            }
            if let Some(p) = previous {
                let ok = match meta.monotone {
                    Monotone::Increasing if meta.strictly_below_sup => norm > p,
                    Monotone::Increasing => norm >= p,
                    Monotone::Decreasing => norm <= p,
                    Monotone::None => true,
                };
                if !ok {
                    return Err(Error::MetadataViolation(format!(
                        "norm profile not {:?} at index {index}: {p} then {norm}",
                        meta.monotone
                    )));
                }
            }
            if norm > max_norm {
                max_norm = norm;
                argmax = index;
            }
            previous = Some(norm);
        }
        if let Some(j) = meta.attained_at {
            if j < first {
                return Err(Error::MetadataViolation(format!("attained_at {j} precedes the first index {first}")));
            }
            let norm = self.profile_norm(j, tol)?;
            if (norm - l).abs() > tol.abs_eps {
                return Err(Error::MetadataViolation(format!(
                    "norm {norm} at declared attaining index {j} differs from declared sup {l}"
                )));
            }
        }
        Ok(ProfileEvidence { prefix: meta.validation_prefix, max_norm, argmax, gap: l - max_norm })
    }
}

/// Norm of a structured operator; metadata-bearing variants are validated first.
pub fn structured_norm(op: &StructuredOperator, tol: &TolerancePolicy) -> Result<f64> {
    match op {
        StructuredOperator::Finite(m) => operator_norm(m, tol),
        StructuredOperator::Diagonal { metadata, .. } | StructuredOperator::BlockDiagonal { metadata, .. } => {
            op.validate(tol)?;
            Ok(metadata.declared_sup)
        }
        StructuredOperator::BackwardShift => Ok(1.0),
        StructuredOperator::DirectSum(a, b) => Ok(structured_norm(a, tol)?.max(structured_norm(b, tol)?)),
    }
}

/// Finite matrices always attain their norm: `‖T‖²` is the top eigenvalue of
/// `T T*` with eigenvector `h`, and `f = T* h` satisfies `‖T f‖ = ‖T‖ ‖f‖`.
pub fn finite_na(t: &ComplexMatrix, tol: &TolerancePolicy) -> Result<Verdict> {
    let tts = t.matmul(&t.adjoint())?;
    let eig = hermitian_eig(&tts, tol)?;
    let lambda = eig.max_eigenvalue().max(0.0);
    let h = eig.top_vector();
    let residual = vec_norm(&vec_sub(&tts.mul_vec(&h)?, &h.iter().map(|z| z * lambda).collect::<Vec<_>>()));
    if residual > tol.threshold(lambda) {
        return Err(Error::Inconsistent(format!("eigenpair residual {residual:.3e} for ‖T‖² = {lambda}")));
    }
    let norm = lambda.sqrt();
    let f = t.adjoint().mul_vec(&h)?;
    let f_norm = vec_norm(&f);
    let (witness, ratio) = if f_norm > tol.abs_eps {
        let f: Vec<Complex> = f.iter().map(|z| z / f_norm).collect();
        let ratio = vec_norm(&t.mul_vec(&f)?);
        (f, ratio)
    } else {
        // T = 0: every vector attains.
        let mut e = vec![c64(0.0, 0.0); t.cols()];
        e[0] = c64(1.0, 0.0);
        (e, 0.0)
    };
    Ok(Verdict::Attained {
        norm,
        witness: Witness::Vector { coords: witness },
        ratio,
        residual: residual.max((ratio - norm).abs()),
        certificate: Some(EigenCertificate { eigenvalue: lambda, vector: h, residual }),
    })
}

/// Norm-attainment decision per structure.
pub fn structured_na(op: &StructuredOperator, tol: &TolerancePolicy) -> Result<Verdict> {
    match op {
        StructuredOperator::Finite(m) => finite_na(m, tol),
        StructuredOperator::Diagonal { entries, metadata, label } => {
            let evidence = op.validate(tol)?;
            match metadata.attained_at {
                Some(j) => Ok(Verdict::Attained {
                    norm: metadata.declared_sup,
                    witness: Witness::BasisVector { index: j },
                    ratio: entries(j).norm(),
                    residual: (entries(j).norm() - metadata.declared_sup).abs(),
                    certificate: None,
                }),
                None => Ok(not_attained(metadata, &evidence, label)),
            }
        }
        StructuredOperator::BlockDiagonal { blocks, metadata, label } => {
            let evidence = op.validate(tol)?;
            match metadata.attained_at {
                Some(j) => match finite_na(&blocks(j), tol)? {
                    Verdict::Attained { witness: Witness::Vector { coords }, ratio, certificate, .. } => {
                        Ok(Verdict::Attained {
                            norm: metadata.declared_sup,
                            witness: Witness::Block { index: j, coords },
                            ratio,
                            residual: (ratio - metadata.declared_sup).abs(),
                            certificate,
                        })
                    }
                    other => Ok(other),
                },
                None => Ok(not_attained(metadata, &evidence, label)),
            }
        }
        StructuredOperator::BackwardShift => Ok(Verdict::Attained {
            norm: 1.0,
            witness: Witness::BasisVector { index: 2 },
            ratio: 1.0,
            residual: 0.0,
            certificate: None,
        }),
        StructuredOperator::DirectSum(a, b) => {
            let va = structured_na(a, tol)?;
            let vb = structured_na(b, tol)?;
            combine_sum(va, vb, tol)
        }
    }
}

fn not_attained(meta: &NormProfileMetadata, ev: &ProfileEvidence, label: &str) -> Verdict {
    Verdict::NotAttained {
        norm: meta.declared_sup,
        gap: ev.gap,
        prefix: Some(ev.prefix),
        reason: format!(
            "{label}: every norm on the first {} indices lies strictly below the declared limit {} \
             (closest gap {:.3e} at index {}); certificate relative to declared limit",
            ev.prefix, meta.declared_sup, ev.gap, ev.argmax
        ),
    }
}

/// `‖A ⊕ B‖ = max(‖A‖, ‖B‖)`, attained iff a side achieving the max attains.
fn combine_sum(va: Verdict, vb: Verdict, tol: &TolerancePolicy) -> Result<Verdict> {
    let (na, nb) = match (va.norm(), vb.norm()) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            return Ok(Verdict::Inconclusive {
                evidence: "a summand is inconclusive".into(),
                lower: va.norm().into_iter().chain(vb.norm()).reduce(f64::max),
                upper: None,
            })
        }
    };
    let equal = tol.close(na, nb, na.max(nb));
    if equal {
        return Ok(match (&va, &vb) {
            (Verdict::Attained { .. }, _) => va,
            (_, Verdict::Attained { .. }) => vb,
            (
                Verdict::NotAttained { gap: ga, prefix: pa, reason: ra, .. },
                Verdict::NotAttained { gap: gb, prefix: pb, reason: rb, .. },
            ) => Verdict::NotAttained {
                norm: na.max(nb),
                gap: ga.min(*gb),
                prefix: pa.zip(*pb).map(|(x, y)| x.min(y)).or(*pa).or(*pb),
                reason: format!("direct sum, neither summand attains: [{ra}] and [{rb}]"),
            },
            _ => unreachable!("both norms known"),
        });
    }
    let (top, other_norm) = if na > nb { (va, nb) } else { (vb, na) };
    Ok(match top {
        Verdict::NotAttained { norm, gap, prefix, reason } => Verdict::NotAttained {
            norm,
            gap: gap.min(norm - other_norm),
            prefix,
            reason: format!("direct sum dominated by a summand that does not attain: {reason}"),
        },
        attained => attained,
    })
}

/// `A ⊕ B`; finite sums stay finite.
pub fn direct_sum(a: StructuredOperator, b: StructuredOperator) -> Result<StructuredOperator> {
    match (&a, &b) {
        (StructuredOperator::Finite(x), StructuredOperator::Finite(y)) => {
            Ok(StructuredOperator::Finite(ComplexMatrix::direct_sum(x, y)))
        }
        _ if a.carries_metadata() || b.carries_metadata() => Ok(StructuredOperator::DirectSum(Box::new(a), Box::new(b))),
        _ => Err(Error::IncompatibleSum(format!(
            "{} ⊕ {}: one summand must be finite-with-finite or carry a norm profile",
            variant_name(&a),
            variant_name(&b)
        ))),
    }
}

fn variant_name(op: &StructuredOperator) -> &'static str {
    match op {
        StructuredOperator::Finite(_) => "Finite",
        StructuredOperator::Diagonal { .. } => "Diagonal",
        StructuredOperator::BlockDiagonal { .. } => "BlockDiagonal",
        StructuredOperator::BackwardShift => "BackwardShift",
        StructuredOperator::DirectSum(..) => "DirectSum",
    }
}

/// `diag(1 − 1/n)`, the operator `I − K` for the compact `K = diag(1/n)`.
pub fn one_minus_inv_n_diagonal(prefix: usize) -> StructuredOperator {
    StructuredOperator::diagonal(
        "diag(1 − 1/n)",
        |n| c64(1.0 - 1.0 / n as f64, 0.0),
        NormProfileMetadata::strictly_below(1.0, Monotone::Increasing).with_prefix(prefix),
    )
}

/// Diagonal from a finite table `d_1..d_m`, continued by its last entry.
pub fn table_diagonal(table: Vec<Complex>, metadata: NormProfileMetadata) -> Result<StructuredOperator> {
    if table.is_empty() {
        return Err(Error::Invalid("diagonal table is empty".into()));
    }
    if table.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::NonFinite("diagonal table"));
    }
    let last = *table.last().expect("non-empty");
    Ok(StructuredOperator::diagonal(
        "tabulated diagonal",
        move |n| table.get(n - 1).copied().unwrap_or(last),
        metadata,
    ))
}

pub fn backward_shift() -> StructuredOperator {
    StructuredOperator::BackwardShift
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::VerdictKind;
    use approx::assert_abs_diff_eq;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn r(x: f64) -> Complex {
        c64(x, 0.0)
    }

    #[test]
    fn one_minus_inv_n_is_not_attained() {
        let op = one_minus_inv_n_diagonal(DEFAULT_VALIDATION_PREFIX);
        assert_eq!(structured_norm(&op, &tol()).unwrap(), 1.0);
        match structured_na(&op, &tol()).unwrap() {
            Verdict::NotAttained { norm, gap, prefix, reason } => {
                assert_eq!(norm, 1.0);
                assert_abs_diff_eq!(gap, 1e-4, epsilon = 1e-12);
                assert_eq!(prefix, Some(10_000));
                assert!(reason.contains("declared limit"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn backward_shift_attains_at_e2() {
        let op = backward_shift();
        assert_eq!(structured_norm(&op, &tol()).unwrap(), 1.0);
        let v = structured_na(&op, &tol()).unwrap();
        assert_eq!(v.witness(), Some(&Witness::BasisVector { index: 2 }));
    }

    #[test]
    fn contradictory_metadata_raises() {
        // Entry equal to the declared sup while claiming strictly below.
        let op = StructuredOperator::diagonal(
            "bad",
            |n| if n == 7 { r(1.0) } else { r(0.5) },
            NormProfileMetadata::strictly_below(1.0, Monotone::None).with_prefix(100),
        );
        assert!(matches!(structured_na(&op, &tol()), Err(Error::MetadataViolation(_))));
        assert!(matches!(structured_norm(&op, &tol()), Err(Error::MetadataViolation(_))));

        let op = StructuredOperator::diagonal(
            "bad",
            |_| r(0.5),
            NormProfileMetadata::attained(1.0, 3, Monotone::None).with_prefix(10),
        );
        assert!(matches!(structured_na(&op, &tol()), Err(Error::MetadataViolation(_))));

        let mut meta = NormProfileMetadata::strictly_below(1.0, Monotone::None);
        meta.attained_at = Some(1);
        let op = StructuredOperator::diagonal("bad", |_| r(0.5), meta);
        assert!(matches!(structured_na(&op, &tol()), Err(Error::MetadataViolation(_))));

        let op = StructuredOperator::diagonal(
            "bad",
            |n| r(1.0 / n as f64),
            NormProfileMetadata::strictly_below(2.0, Monotone::Increasing).with_prefix(10),
        );
        assert!(matches!(structured_na(&op, &tol()), Err(Error::MetadataViolation(_))));
    }

    #[test]
    fn attained_diagonal() {
        let op = table_diagonal(
            vec![r(0.2), r(0.9), r(0.4)],
            NormProfileMetadata::attained(0.9, 2, Monotone::None).with_prefix(50),
        )
        .unwrap();
        let v = structured_na(&op, &tol()).unwrap();
        assert_eq!(v.witness(), Some(&Witness::BasisVector { index: 2 }));
        assert_eq!(v.norm(), Some(0.9));
    }

    #[test]
    fn finite_certificate_satisfies_eigen_identity() {
        let t = ComplexMatrix::from_rows(&[vec![r(1.0), c64(0.0, 2.0)], vec![r(0.5), r(-1.0)], vec![r(0.0), c64(0.3, 0.3)]])
            .unwrap();
        match structured_na(&StructuredOperator::Finite(t.clone()), &tol()).unwrap() {
            Verdict::Attained { norm, witness: Witness::Vector { coords }, ratio, certificate: Some(c), .. } => {
                assert_abs_diff_eq!(norm, operator_norm(&t, &tol()).unwrap(), epsilon = 1e-12);
                assert!(c.residual <= 1e-8 * norm * norm);
                assert_abs_diff_eq!(ratio, norm, epsilon = 1e-10);
                assert_abs_diff_eq!(vec_norm(&coords), 1.0, epsilon = 1e-12);
            }
            other => panic!("{other:?}"),
        }
        let z = ComplexMatrix::zeros(2, 2);
        assert_eq!(structured_na(&StructuredOperator::Finite(z), &tol()).unwrap().norm(), Some(0.0));
    }

    #[test]
    fn direct_sum_rules() {
        let tol = tol();
        let a = StructuredOperator::Finite(ComplexMatrix::diagonal(&[r(5.0), r(0.0)]));
        let b = StructuredOperator::Finite(ComplexMatrix::zeros(1, 1));
        let s = direct_sum(a, b).unwrap();
        assert!(matches!(s, StructuredOperator::Finite(ref m) if m.rows() == 3));
        assert_abs_diff_eq!(structured_norm(&s, &tol).unwrap(), 5.0, epsilon = 1e-12);

        // Attained ⊕ NotAttained with smaller norm.
        let big = StructuredOperator::Finite(ComplexMatrix::diagonal(&[r(2.0)]));
        let s = direct_sum(big, one_minus_inv_n_diagonal(100)).unwrap();
        assert_eq!(structured_na(&s, &tol).unwrap().kind(), VerdictKind::Attained);
        assert_eq!(structured_norm(&s, &tol).unwrap(), 2.0);

        // NotAttained dominates a smaller attaining summand.
        let small = StructuredOperator::Finite(ComplexMatrix::diagonal(&[r(0.5)]));
        let s = direct_sum(small, one_minus_inv_n_diagonal(100)).unwrap();
        assert_eq!(structured_na(&s, &tol).unwrap().kind(), VerdictKind::NotAttained);

        let s = direct_sum(one_minus_inv_n_diagonal(100), one_minus_inv_n_diagonal(200)).unwrap();
        assert_eq!(structured_na(&s, &tol).unwrap().kind(), VerdictKind::NotAttained);

        // Equal norms, one side attains.
        let s = direct_sum(backward_shift(), one_minus_inv_n_diagonal(100)).unwrap();
        assert_eq!(structured_na(&s, &tol).unwrap().kind(), VerdictKind::Attained);

        let e = direct_sum(backward_shift(), StructuredOperator::Finite(ComplexMatrix::identity(1))).unwrap_err();
        assert!(matches!(e, Error::IncompatibleSum(_)));
    }

    #[test]
    fn longer_prefix_keeps_verdict() {
        let tol = tol();
        let kinds: Vec<_> = [10, 100, 1000, 10_000]
            .into_iter()
            .map(|p| structured_na(&one_minus_inv_n_diagonal(p), &tol).unwrap())
            .collect();
        assert!(kinds.iter().all(|v| v.kind() == VerdictKind::NotAttained));
        let gaps: Vec<f64> = kinds
            .iter()
            .map(|v| match v {
                Verdict::NotAttained { gap, .. } => *gap,
                _ => unreachable!(),
            })
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn metadata_json() {
        let m: NormProfileMetadata =
            serde_json::from_str(r#"{"sup": 1.0, "monotone": "increasing", "strictly_below_sup": true}"#).unwrap();
        assert_eq!(m, NormProfileMetadata::strictly_below(1.0, Monotone::Increasing));
    }
}
