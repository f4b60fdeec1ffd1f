use serde::{Deserialize, Serialize};

use super::matrix::{vec_norm, Complex, ComplexMatrix};
use super::TolerancePolicy;
use crate::error::{Error, Result};

/// Spectrum of a Hermitian matrix: ascending eigenvalues and orthonormal eigenvector columns.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigDecomposition {
    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Unit eigenvector belonging to the largest eigenvalue.
    pub fn top_vector(&self) -> Vec<Complex> {
        self.eigenvectors.column(self.eigenvalues.len() - 1)
    }

    /// Spectral norm of the decomposed matrix.
    pub fn spectral_radius(&self) -> f64 {
        self.max_eigenvalue().abs().max(self.min_eigenvalue().abs())
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Sweeps visit pairs `(p, q)` in row order; each rotation first removes the
/// phase of `a[p][q]` and then applies the real symmetric Jacobi rotation.
/// Eigenvectors are phase-normalized so that their largest-modulus entry is
/// real and positive, which makes the output deterministic.
pub fn hermitian_eig(a: &ComplexMatrix, tol: &TolerancePolicy) -> Result<EigDecomposition> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigensolver needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let deviation = a.hermitian_deviation();
    let allowed = tol.threshold(a.max_abs());
    if deviation > allowed {
        return Err(Error::NotHermitian { deviation, allowed });
    }

    let n = a.rows();
    // Work on the exactly Hermitian part.
    let mut m = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)].conj()));
    for i in 0..n {
        m[(i, i)] = Complex::new(m[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);
    let fro = m.frobenius_norm();
    let target = f64::EPSILON * fro;

    let mut sweep = 0;
    loop {
        let off = off_diagonal_norm(&m);
        if off <= target || off == 0.0 {
            break;
        }
        if sweep >= tol.max_iter {
            return Err(Error::NoConvergence { sweeps: sweep, off_norm: off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q, sweep);
            }
        }
        sweep += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let mut vec = v.column(src);
        normalize_phase(&mut vec);
        eigenvectors.set_column(col, &vec);
    }
    Ok(EigDecomposition { eigenvalues, eigenvectors })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, sweep: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // After a few sweeps, entries negligible against the diagonal are dropped.
    if sweep > 3 && r <= 1e-3 * f64::EPSILON * (app.abs() + aqq.abs()) {
        m[(p, q)] = Complex::new(0.0, 0.0);
        m[(q, p)] = Complex::new(0.0, 0.0);
        return;
    }
    let phase = apq / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let vpp = Complex::new(c, 0.0);
    let vpq = Complex::new(s, 0.0);
    let vqp = -s * phase.conj();
    let vqq = c * phase.conj();

    let n = m.rows();
    for k in 0..n {
        let (akp, akq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = akp * vpp + akq * vqp;
        m[(k, q)] = akp * vpq + akq * vqq;
    }
    for k in 0..n {
        let (apk, aqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = vpp.conj() * apk + vqp.conj() * aqk;
        m[(q, k)] = vpq.conj() * apk + vqq.conj() * aqk;
    }
    m[(p, q)] = Complex::new(0.0, 0.0);
    m[(q, p)] = Complex::new(0.0, 0.0);
    m[(p, p)] = Complex::new(app - t * r, 0.0);
    m[(q, q)] = Complex::new(aqq + t * r, 0.0);

    for k in 0..n {
        let (wkp, wkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = wkp * vpp + wkq * vqp;
        v[(k, q)] = wkp * vpq + wkq * vqq;
    }
}

/// Scale to unit norm and rotate the phase so the largest entry is real positive.
pub fn normalize_phase(v: &mut [Complex]) {
    let norm = vec_norm(v);
    if norm == 0.0 {
        return;
    }
    let biggest = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    // First entry within a relative hair of the maximum, so ties break by index.
    let pivot = v
        .iter()
        .position(|z| z.norm() >= biggest * (1.0 - 1e-9))
        .unwrap_or(0);
    let rot = v[pivot].conj() / (v[pivot].norm() * norm);
    for z in v.iter_mut() {
        *z *= rot;
    }
}

/// Largest generalized eigenpair of `a x = λ g x` for Hermitian `a` and positive definite `g`.
pub fn generalized_eig_max(
    a: &ComplexMatrix,
    g: &ComplexMatrix,
    tol: &TolerancePolicy,
) -> Result<(f64, Vec<Complex>)> {
    if a.rows() != g.rows() || !a.is_square() || !g.is_square() {
        return Err(Error::DimensionMismatch("generalized pair must be square and conforming".into()));
    }
    let ge = hermitian_eig(g, tol)?;
    let min = ge.min_eigenvalue();
    if min <= tol.abs_eps {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min, threshold: tol.abs_eps });
    }
    let n = g.rows();
    // W = V Λ^{-1/2} gives W* G W = I.
    let w = ComplexMatrix::from_fn(n, n, |i, j| ge.eigenvectors[(i, j)] / ge.eigenvalues[j].sqrt());
    let reduced = w.adjoint().matmul(a)?.matmul(&w)?;
    let re = hermitian_eig(&reduced, tol)?;
    let lambda = re.max_eigenvalue();
    let mut x = w.mul_vec(&re.top_vector())?;
    normalize_phase(&mut x);

    let ax = a.mul_vec(&x)?;
    let gx = g.mul_vec(&x)?;
    let resid = vec_norm(&ax.iter().zip(&gx).map(|(p, q)| p - lambda * q).collect::<Vec<_>>());
    let bound = tol.threshold((a.frobenius_norm() + lambda.abs() * g.frobenius_norm()) * vec_norm(&x));
    if resid > bound {
        return Err(Error::Inconsistent(format!(
            "generalized eigenpair residual {resid:.3e} exceeds {bound:.3e}"
        )));
    }
    Ok((lambda, x))
}

/// Largest singular value.
pub fn operator_norm(a: &ComplexMatrix, tol: &TolerancePolicy) -> Result<f64> {
    let gram = if a.rows() >= a.cols() {
        a.adjoint().matmul(a)?
    } else {
        a.matmul(&a.adjoint())?
    };
    let e = hermitian_eig(&gram, tol)?;
    Ok(e.max_eigenvalue().max(0.0).sqrt())
}
