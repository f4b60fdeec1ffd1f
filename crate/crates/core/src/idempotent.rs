//! Idempotents `T = [[I, X], [0, 0]]` with respect to `ran T ⊕ (ran T)^⊥`,
//! the self-adjoint Buckholtz operator `T + T* − I`, and two equivalent
//! norm-attainment tests.
//!
//! In block form `TT* = diag(I + XX*, 0)` and
//! `(T + T* − I)² = diag(I + XX*, I + X*X)`, so
//! `‖T‖² = ‖T + T* − I‖² = 1 + ‖X‖²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::{c64, hermitian_eig, operator_norm, vec_norm, vec_sub, Complex, ComplexMatrix, TolerancePolicy};
use crate::structured::{Monotone, NormProfileMetadata, StructuredOperator};
use crate::verdict::{EigenCertificate, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdempotentBlockForm {
    x: ComplexMatrix,
    t: ComplexMatrix,
    /// Unitary `U = [Q, Q⊥]` with `U* E U = T` when built from a general idempotent `E`.
    basis: Option<ComplexMatrix>,
}

impl IdempotentBlockForm {
    pub fn from_x(x: ComplexMatrix) -> Self {
        let (m, k) = (x.rows(), x.cols());
        let t = ComplexMatrix::from_blocks(
            &ComplexMatrix::identity(m),
            &x,
            &ComplexMatrix::zeros(k, m),
            &ComplexMatrix::zeros(k, k),
        )
        .expect("conforming blocks");
        Self { x, t, basis: None }
    }

    /// Canonicalize a square idempotent `E`: with `Q` an orthonormal basis of
    /// `ran E` and `Q⊥` of its complement, `X = Q* E Q⊥`.
    pub fn from_matrix(e: &ComplexMatrix, tol: &TolerancePolicy) -> Result<Self> {
        if !e.is_square() {
            return Err(Error::DimensionMismatch(format!("idempotent must be square, got {}x{}", e.rows(), e.cols())));
        }
        let n = e.rows();
        let scale = e.max_abs().powi(2).max(1.0);
        let defect = e.matmul(e)?.sub(e)?.max_abs();
        if defect > tol.threshold(scale) {
            return Err(Error::Invalid(format!("matrix is not idempotent: ‖E² − E‖ = {defect:.3e}")));
        }
        // ran E = ran EE*; eigenvalues above rel_eps·σmax² count toward the range.
        let eig = hermitian_eig(&e.matmul(&e.adjoint())?, tol)?;
        let cutoff = tol.rel_eps * eig.max_eigenvalue().max(0.0);
        let rank = eig.eigenvalues.iter().filter(|&&l| l > cutoff.max(tol.abs_eps)).count();
        if rank == 0 || rank == n {
            return Err(Error::Degenerate(format!("trivial idempotent of rank {rank} in dimension {n}")));
        }
        // Eigenvalues ascend, so the range sits in the last `rank` columns.
        let mut u = ComplexMatrix::zeros(n, n);
        for j in 0..rank {
            u.set_column(j, &eig.eigenvectors.column(n - 1 - j));
        }
        for j in 0..(n - rank) {
            u.set_column(rank + j, &eig.eigenvectors.column(j));
        }
        let conj = u.adjoint().matmul(e)?.matmul(&u)?;
        let x = conj.block(0, rank, rank, n);
        let mut form = Self::from_x(x);
        let mismatch = conj.sub(&form.t)?.max_abs();
        if mismatch > tol.threshold(scale) {
            return Err(Error::Inconsistent(format!("canonical form mismatch {mismatch:.3e}")));
        }
        form.basis = Some(u);
        Ok(form)
    }

    pub fn x(&self) -> &ComplexMatrix {
        &self.x
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.t
    }

    pub fn basis(&self) -> Option<&ComplexMatrix> {
        self.basis.as_ref()
    }

    pub fn range_dim(&self) -> usize {
        self.x.rows()
    }

    pub fn norm(&self, tol: &TolerancePolicy) -> Result<f64> {
        operator_norm(&self.t, tol)
    }

    /// Largest entry of `T² − T`.
    pub fn idempotency_residual(&self) -> f64 {
        self.t.matmul(&self.t).expect("square").sub(&self.t).expect("square").max_abs()
    }
}

pub fn idempotent_from_x(x: ComplexMatrix) -> IdempotentBlockForm {
    IdempotentBlockForm::from_x(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuckholtzOperator {
    pub matrix: ComplexMatrix,
}

impl BuckholtzOperator {
    /// Largest entry of `(T + T* − I)² − diag(I + XX*, I + X*X)`.
    pub fn square_residual(&self, form: &IdempotentBlockForm) -> Result<f64> {
        let x = form.x();
        let a = ComplexMatrix::identity(x.rows()).add(&x.matmul(&x.adjoint())?)?;
        let b = ComplexMatrix::identity(x.cols()).add(&x.adjoint().matmul(x)?)?;
        Ok(self.matrix.matmul(&self.matrix)?.sub(&ComplexMatrix::direct_sum(&a, &b))?.max_abs())
    }
}

pub fn buckholtz(t: &IdempotentBlockForm) -> BuckholtzOperator {
    let n = t.matrix().rows();
    let matrix = t
        .matrix()
        .add(&t.matrix().adjoint())
        .and_then(|s| s.sub(&ComplexMatrix::identity(n)))
        .expect("square");
    BuckholtzOperator { matrix }
}

/// `T` attains its norm iff `‖T‖` or `−‖T‖` is an eigenvalue of `T + T* − I`.
pub fn na_check_buckholtz(t: &IdempotentBlockForm, tol: &TolerancePolicy) -> Result<Verdict> {
    let norm = t.norm(tol)?;
    let b = buckholtz(t);
    let eig = hermitian_eig(&b.matrix, tol)?;
    let (lambda, v) = if eig.max_eigenvalue().abs() >= eig.min_eigenvalue().abs() {
        (eig.max_eigenvalue(), eig.top_vector())
    } else {
        (eig.min_eigenvalue(), eig.eigenvectors.column(0))
    };
    let allowed = tol.threshold(norm);
    if (lambda.abs() - norm).abs() > allowed {
        return Err(Error::Inconsistent(format!(
            "Buckholtz extreme eigenvalue {lambda} does not match ±‖T‖ = ±{norm}"
        )));
    }
    let bv = b.matrix.mul_vec(&v)?;
    let residual = vec_norm(&vec_sub(&bv, &v.iter().map(|z| z * lambda).collect::<Vec<_>>()));
    if residual > allowed {
        return Err(Error::Inconsistent(format!("Buckholtz eigenpair residual {residual:.3e}")));
    }
    Ok(Verdict::Attained {
        norm,
        ratio: vec_norm(&bv),
        residual: residual.max((lambda.abs() - norm).abs()),
        certificate: Some(EigenCertificate { eigenvalue: lambda, vector: v.clone(), residual }),
        witness: Witness::Vector { coords: v },
    })
}

/// Residuals of the compression characterization for a vector `f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionCertificate {
    pub f: Vec<Complex>,
    pub tf_norm: f64,
    /// `‖P_{ran T*} T f − f‖`.
    pub range_residual: f64,
    /// `‖T* P_⊥ T f − (‖T‖² − 1) f‖`.
    pub eigen_residual: f64,
}

/// Build `f = P_{ran T*} h` from the top eigenvector `h` of `TT*` and check
/// `Tf ≠ 0`, `P_{ran T*} T f = f` and `T* P_⊥ T f = (‖T‖² − 1) f`.
pub fn compression_certificate(t: &IdempotentBlockForm, tol: &TolerancePolicy) -> Result<CompressionCertificate> {
    let tm = t.matrix();
    let n = tm.rows();
    let tts = tm.matmul(&tm.adjoint())?;
    let top = hermitian_eig(&tts, tol)?;
    let h = top.top_vector();
    let norm_sq = top.max_eigenvalue();

    // ran T* = ran T*T; keep eigenvalues above rel_eps·σmax².
    let sts = hermitian_eig(&tm.adjoint().matmul(tm)?, tol)?;
    let cutoff = (tol.rel_eps * sts.max_eigenvalue()).max(tol.abs_eps);
    let mut p = ComplexMatrix::zeros(n, n);
    for (j, &l) in sts.eigenvalues.iter().enumerate() {
        if l > cutoff {
            let q = sts.eigenvectors.column(j);
            for r in 0..n {
                for c in 0..n {
                    p[(r, c)] += q[r] * q[c].conj();
                }
            }
        }
    }
    let p_perp = ComplexMatrix::identity(n).sub(&p)?;

    let f = p.mul_vec(&h)?;
    let tf = tm.mul_vec(&f)?;
    let tf_norm = vec_norm(&tf);
    if tf_norm <= tol.abs_eps {
        return Err(Error::Degenerate(format!("‖Tf‖ = {tf_norm:.3e} is below abs_eps")));
    }
    let range_residual = vec_norm(&vec_sub(&p.mul_vec(&tf)?, &f));
    let lhs = tm.adjoint().mul_vec(&p_perp.mul_vec(&tf)?)?;
    let rhs: Vec<Complex> = f.iter().map(|z| z * (norm_sq - 1.0)).collect();
    let eigen_residual = vec_norm(&vec_sub(&lhs, &rhs));
    Ok(CompressionCertificate { f, tf_norm, range_residual, eigen_residual })
}

pub fn na_check_compression(t: &IdempotentBlockForm, tol: &TolerancePolicy) -> Result<Verdict> {
    let norm = t.norm(tol)?;
    let c = compression_certificate(t, tol)?;
    let f_norm = vec_norm(&c.f);
    let allowed = tol.threshold(norm * norm * f_norm);
    let residual = c.range_residual.max(c.eigen_residual);
    if residual > allowed {
        return Err(Error::Inconsistent(format!(
            "compression identities fail: residual {residual:.3e} > {allowed:.3e}"
        )));
    }
    Ok(Verdict::Attained { norm, ratio: c.tf_norm / f_norm, residual, certificate: None, witness: Witness::Vector { coords: c.f } })
}

/// `x_n = 1 − 1/(2n+1)`.
pub fn example21_x(n: usize) -> f64 {
    1.0 - 1.0 / (2 * n + 1) as f64
}

/// Block `n` of the block-diagonal idempotent: `[[1, 0], [0, 0]]` for `n = 0`,
/// `[[1, 0], [x_n, 0]]` for `n ≥ 1`.
pub fn example21_block(n: usize) -> ComplexMatrix {
    let x = if n == 0 { 0.0 } else { example21_x(n) };
    ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![x, 0.0]]).expect("2x2")
}

/// The block-diagonal idempotent with block norms `√(1 + x_n²) ↑ √2`.
pub fn example21_operator(prefix_blocks: usize) -> Result<StructuredOperator> {
    if prefix_blocks == 0 {
        return Err(Error::Invalid("prefix must contain at least one block".into()));
    }
    Ok(StructuredOperator::block_diagonal(
        "block-diagonal idempotent with blocks [[1,0],[1 − 1/(2n+1),0]]",
        example21_block,
        NormProfileMetadata::strictly_below(std::f64::consts::SQRT_2, Monotone::Increasing).with_prefix(prefix_blocks),
    ))
}

/// Per-block Buckholtz operators `[[1, x_n], [x_n, −1]]` have spectrum
/// `±√(1 + x_n²)`, strictly inside `(−√2, √2)`, so neither `±√2` is an
/// eigenvalue of the sum.
pub fn example21_buckholtz_check(prefix_blocks: usize, tol: &TolerancePolicy) -> Result<Verdict> {
    if prefix_blocks == 0 {
        return Err(Error::Invalid("prefix must contain at least one block".into()));
    }
    let limit = std::f64::consts::SQRT_2;
    let mut previous_gap = f64::INFINITY;
    let mut min_gap = f64::INFINITY;
    for n in 0..prefix_blocks {
        let form = IdempotentBlockForm { x: ComplexMatrix::zeros(1, 1), t: example21_block(n), basis: None };
        let b = buckholtz(&form);
        let eig = hermitian_eig(&b.matrix, tol)?;
        let gap = limit - eig.spectral_radius();
        if gap <= 0.0 {
            return Err(Error::Inconsistent(format!("Buckholtz block {n} reaches ±√2")));
        }
        if gap >= previous_gap {
            return Err(Error::Inconsistent(format!("gaps not strictly decreasing at block {n}")));
        }
        previous_gap = gap;
        min_gap = min_gap.min(gap);
    }
    Ok(Verdict::NotAttained {
        norm: limit,
        gap: min_gap,
        prefix: Some(prefix_blocks),
        reason: format!(
            "Buckholtz blocks have spectrum ±√(1 + x_n²), strictly inside ±√2 on the first {prefix_blocks} blocks \
             with strictly decreasing gaps (smallest {min_gap:.3e}); x_n increases to 1, so neither ±√2 is an \
             eigenvalue; certificate relative to declared limit"
        ),
    })
}

/// Matrix from real rows.
pub fn real_matrix(rows: &[Vec<f64>]) -> Result<ComplexMatrix> {
    ComplexMatrix::from_real_rows(rows)
}

/// `X = [[s]]`.
pub fn scalar_x(s: f64) -> ComplexMatrix {
    ComplexMatrix::diagonal(&[c64(s, 0.0)])
}
