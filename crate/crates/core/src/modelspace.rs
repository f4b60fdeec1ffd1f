//! Model spaces `Q_θ = H² ⊖ θH²` of finite Blaschke products and the
//! compressed shift `S_θ = P_Q M_z |_Q`.
//!
//! For distinct zeros `λ₁..λₙ` the Szegő kernels `k_i = c(·, λ_i)` with
//! `c(z, w) = 1/(1 − z conj(w))` form a (non-orthogonal) basis of `Q_θ`.
//! A function `f = Σ a_i k_i` is stored as its coordinate vector `a`, and
//! `⟨f, g⟩ = b* G a` with the Gram matrix `G_ij = ⟨k_j, k_i⟩ = c(λ_i, λ_j)`.
//! In these coordinates `S_θ*` is diagonal: `S_θ* k_i = conj(λ_i) k_i`.
//!
//! Repeated zeros make the kernel basis degenerate; those are handled by the
//! [`CoefficientSpaceModel`], which works on truncated Taylor coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::{
    c64, generalized_eig_max, hermitian_eig, inner, operator_norm, solve, Complex, ComplexMatrix,
    TolerancePolicy,
};
use crate::symbols::{BlaschkeProduct, SingularInnerAtom};
use crate::verdict::{Verdict, Witness};

/// Zeros closer than this are treated as repeated.
pub const DISTINCT_ZERO_GAP: f64 = 1e-6;

/// Szegő kernel `c(z, w) = 1/(1 − z conj(w))`.
pub fn szego_kernel(z: Complex, w: Complex) -> Complex {
    c64(1.0, 0.0) / (c64(1.0, 0.0) - z * w.conj())
}

/// Coordinates of a function in the kernel basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelVector {
    pub coords: Vec<Complex>,
}

impl KernelVector {
    /// `f(0) = Σ a_i`, since `c(0, λ) = 1`.
    pub fn value_at_zero(&self) -> Complex {
        self.coords.iter().sum()
    }

    /// `f(z) = Σ a_i c(z, λ_i)`.
    pub fn eval(&self, space: &ModelSpace, z: Complex) -> Complex {
        self.coords.iter().zip(space.zeros()).map(|(a, &l)| a * szego_kernel(z, l)).sum()
    }
}

#[derive(Debug, Clone)]
pub struct ModelSpace {
    theta: BlaschkeProduct,
    gram: ComplexMatrix,
    tol: TolerancePolicy,
}

impl ModelSpace {
    /// Assemble the Gram matrix of the kernel basis; zeros must be pairwise distinct.
    pub fn new(theta: BlaschkeProduct, tol: TolerancePolicy) -> Result<Self> {
        let zeros = theta.zeros();
        let n = zeros.len();
        if n == 0 {
            return Err(Error::Invalid("model space of a zero-free product is trivial".into()));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if (zeros[i] - zeros[j]).norm() <= DISTINCT_ZERO_GAP {
                    return Err(Error::ClusteredZeros(i, j));
                }
            }
        }
        let gram = ComplexMatrix::from_fn(n, n, |i, j| szego_kernel(zeros[i], zeros[j]));
        let min = hermitian_eig(&gram, &tol)?.min_eigenvalue();
        if min <= tol.abs_eps {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: min, threshold: tol.abs_eps });
        }
        Ok(Self { theta, gram, tol })
    }

    pub fn from_zeros(zeros: &[Complex], tol: TolerancePolicy) -> Result<Self> {
        Self::new(BlaschkeProduct::from_zeros(zeros)?, tol)
    }

    pub fn theta(&self) -> &BlaschkeProduct {
        &self.theta
    }

    pub fn zeros(&self) -> &[Complex] {
        self.theta.zeros()
    }

    pub fn dimension(&self) -> usize {
        self.zeros().len()
    }

    pub fn gram(&self) -> &ComplexMatrix {
        &self.gram
    }

    /// `‖f‖² = a* G a`.
    pub fn norm_sq(&self, v: &[Complex]) -> f64 {
        let ga = self.gram.mul_vec(v).expect("coordinate length matches dimension");
        inner(&ga, v).re
    }

    pub fn norm(&self, v: &[Complex]) -> f64 {
        self.norm_sq(v).max(0.0).sqrt()
    }

    /// `S_θ*` in kernel coordinates: `diag(conj λ₁, …, conj λₙ)`.
    pub fn adjoint_shift_matrix(&self) -> ComplexMatrix {
        let d: Vec<Complex> = self.zeros().iter().map(|l| l.conj()).collect();
        ComplexMatrix::diagonal(&d)
    }

    /// `S_θ` in kernel coordinates, the Gram-adjoint of `D = S_θ*`: `G M = D* G`.
    pub fn shift_matrix(&self) -> Result<ComplexMatrix> {
        let d = self.adjoint_shift_matrix();
        solve(&self.gram, &d.adjoint().matmul(&self.gram)?, &self.tol)
    }

    /// `c_θ(·, 0) = 1 − θ(·) conj(θ(0))`, from `⟨c_θ(·,0), k_i⟩ = c_θ(λ_i, 0) = 1`.
    pub fn kernel_at_zero(&self) -> Result<KernelVector> {
        let n = self.dimension();
        let ones = ComplexMatrix::from_fn(n, 1, |_, _| c64(1.0, 0.0));
        let x = solve(&self.gram, &ones, &self.tol)?;
        Ok(KernelVector { coords: x.column(0) })
    }

    /// Gram-weighted operator norm of a coordinate matrix.
    pub fn weighted_norm(&self, a: &ComplexMatrix) -> Result<f64> {
        let form = a.adjoint().matmul(&self.gram)?.matmul(a)?;
        let form = hermitize(&form);
        let (l, _) = generalized_eig_max(&form, &self.gram, &self.tol)?;
        Ok(l.max(0.0).sqrt())
    }

    /// Gram-weighted norm of `S S* − (I − c_θ(·,0) ⊗ c_θ(·,0))`.
    pub fn defect_identity_residual(&self) -> Result<f64> {
        let n = self.dimension();
        let m = self.shift_matrix()?;
        let d = self.adjoint_shift_matrix();
        let x = self.kernel_at_zero()?;
        // (x ⊗ x) a = ⟨a, x⟩ x  ↦  x x* G a in coordinates.
        let xcol = ComplexMatrix::column_vector(&x.coords);
        let rank_one = xcol.matmul(&xcol.adjoint())?.matmul(&self.gram)?;
        let defect = ComplexMatrix::identity(n).sub(&rank_one)?;
        let residual = m.matmul(&d)?.sub(&defect)?;
        self.weighted_norm(&residual)
    }

    /// `‖S_θ‖ = ‖S_θ*‖` from the generalized problem `D* G D x = λ G x`.
    pub fn model_norm(&self) -> Result<f64> {
        let d = self.adjoint_shift_matrix();
        let form = hermitize(&d.adjoint().matmul(&self.gram)?.matmul(&d)?);
        let (l, _) = generalized_eig_max(&form, &self.gram, &self.tol)?;
        Ok(l.max(0.0).sqrt())
    }

    /// First pair `(p, q)` in input order with `|λ_p − λ_q| > 1e-6`.
    pub fn witness_pair(&self) -> Option<(usize, usize)> {
        let z = self.zeros();
        (0..z.len())
            .flat_map(|p| ((p + 1)..z.len()).map(move |q| (p, q)))
            .find(|&(p, q)| (z[p] - z[q]).norm() > DISTINCT_ZERO_GAP)
    }

    /// Norm-attainment witness for `S_θ`.
    ///
    /// For `n > 1`, `f = k_p − k_q` vanishes at the origin, so `f = z g` with
    /// `g = S_θ* f ∈ Q_θ` and `‖S_θ g‖ = ‖g‖`. For `n = 1` the kernel `k₁`
    /// is an eigenvector of `S_θ*` with eigenvalue `conj λ₁`, giving ratio `|λ₁|`.
    pub fn witness(&self) -> Result<ModelWitness> {
        let n = self.dimension();
        let norm = self.model_norm()?;
        let m = self.shift_matrix()?;
        let (f, g) = match self.witness_pair() {
            Some((p, q)) => {
                let mut f = vec![c64(0.0, 0.0); n];
                f[p] = c64(1.0, 0.0);
                f[q] = c64(-1.0, 0.0);
                let g = self.adjoint_shift_matrix().mul_vec(&f)?;
                (KernelVector { coords: f }, KernelVector { coords: g })
            }
            None => {
                let k = KernelVector { coords: vec![c64(1.0, 0.0)] };
                (k.clone(), k)
            }
        };
        let g_norm = self.norm(&g.coords);
        if g_norm <= self.tol.abs_eps {
            return Err(Error::Degenerate("witness vector vanishes".into()));
        }
        let ratio = self.norm(&m.mul_vec(&g.coords)?) / g_norm;
        Ok(ModelWitness { f_at_zero: f.value_at_zero(), f, g, ratio, norm })
    }

    /// Always `Attained`; the certificate is the witness and its ratio.
    pub fn na_witness(&self) -> Result<Verdict> {
        let w = self.witness()?;
        let f0 = if self.dimension() > 1 { w.f_at_zero.norm() } else { 0.0 };
        let residual = (w.ratio - w.norm).abs().max(f0);
        if residual > self.tol.threshold(w.norm.max(1.0)) {
            return Err(Error::Inconsistent(format!(
                "model witness ratio {} vs norm {} (f(0) = {})",
                w.ratio, w.norm, w.f_at_zero
            )));
        }
        Ok(Verdict::Attained {
            norm: w.norm,
            witness: Witness::Vector { coords: w.g.coords.clone() },
            ratio: w.ratio,
            residual,
            certificate: None,
        })
    }
}

/// Build the kernel-basis model space of `θ`.
pub fn model_space_new(theta: BlaschkeProduct, tol: TolerancePolicy) -> Result<ModelSpace> {
    ModelSpace::new(theta, tol)
}

/// Build the coefficient-space model of `Q_θ` on `N` Taylor coefficients.
pub fn coefficient_space_model(theta: &BlaschkeProduct, order: usize) -> Result<CoefficientSpaceModel> {
    CoefficientSpaceModel::new(theta, order)
}

fn hermitize(a: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.rows(), a.cols(), |i, j| 0.5 * (a[(i, j)] + a[(j, i)].conj()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelWitness {
    /// Function in `Q_θ` vanishing at the origin (`k₁` when `n = 1`).
    pub f: KernelVector,
    pub f_at_zero: Complex,
    /// Attaining vector `g = S_θ* f`.
    pub g: KernelVector,
    pub ratio: f64,
    pub norm: f64,
}

/// `|f(0)|` for `f = (1 − conj θ(λ₂) θ(0)) c_θ(·, λ₁) − (1 − conj θ(λ₁) θ(0)) c_θ(·, λ₂)`
/// with `θ` a single-atom singular inner function and `c_θ(0, w) = 1 − θ(0) conj θ(w)`.
pub fn singular_witness_check(s: &SingularInnerAtom, lambda1: Complex, lambda2: Complex) -> Result<f64> {
    for l in [lambda1, lambda2] {
        if l.norm() >= 1.0 {
            return Err(Error::Domain(format!("|λ| = {} >= 1", l.norm())));
        }
    }
    if (lambda1 - lambda2).norm() <= f64::EPSILON {
        return Err(Error::Degenerate("λ₁ and λ₂ must differ".into()));
    }
    let one = c64(1.0, 0.0);
    let t0 = s.eval(c64(0.0, 0.0))?;
    let t1 = s.eval(lambda1)?;
    let t2 = s.eval(lambda2)?;
    let kernel_at_origin = |tw: Complex| one - t0 * tw.conj();
    let f0 = (one - t2.conj() * t0) * kernel_at_origin(t1) - (one - t1.conj() * t0) * kernel_at_origin(t2);
    Ok(f0.norm())
}

/// Taylor coefficients `conj(λ)^m`, `m < n`, of the kernel `c(·, λ)`.
pub fn kernel_coefficients(lambda: Complex, n: usize) -> Vec<Complex> {
    let mut out = Vec::with_capacity(n);
    let mut p = c64(1.0, 0.0);
    for _ in 0..n {
        out.push(p);
        p *= lambda.conj();
    }
    out
}

/// `Q_θ` realized on the first `N` Taylor coefficients: `P_N = I − T_θ T_θ*`
/// with `T_θ` the lower-triangular Toeplitz truncation of multiplication by θ.
///
/// Since `T_θ` is lower triangular, `P_N` is exactly the compression of the
/// orthogonal projection onto `Q_θ`; only the compressed shift feels the cut.
#[derive(Debug, Clone)]
pub struct CoefficientSpaceModel {
    pub order: usize,
    pub projector: ComplexMatrix,
    pub compressed_shift: ComplexMatrix,
    pub idempotency_residual: f64,
    pub hermitian_residual: f64,
    /// `q^N` with `q = max |λ_i|`.
    pub truncation_certificate: f64,
}

impl CoefficientSpaceModel {
    pub fn new(theta: &BlaschkeProduct, order: usize) -> Result<Self> {
        let deg = theta.degree();
        if deg == 0 {
            return Err(Error::Invalid("model space of a zero-free product is trivial".into()));
        }
        if order < 4 * deg {
            return Err(Error::InsufficientTruncation(format!("N = {order} < 4·{deg}")));
        }
        let q = theta.max_zero_modulus();
        let certificate = q.powi(order as i32);
        if certificate > 0.1 {
            return Err(Error::InsufficientTruncation(format!("q^N = {certificate:.3e} > 0.1")));
        }
        let coeffs = theta.fourier(order)?;
        let t = ComplexMatrix::from_fn(order, order, |j, k| {
            if j >= k {
                coeffs.coeff((j - k) as i64)
            } else {
                c64(0.0, 0.0)
            }
        });
        let projector = ComplexMatrix::identity(order).sub(&t.matmul(&t.adjoint())?)?;
        let shift = ComplexMatrix::from_fn(order, order, |j, k| if j == k + 1 { c64(1.0, 0.0) } else { c64(0.0, 0.0) });
        let compressed_shift = projector.matmul(&shift)?.matmul(&projector)?;
        let idempotency_residual = projector.matmul(&projector)?.sub(&projector)?.max_abs();
        let hermitian_residual = projector.hermitian_deviation();
        Ok(Self {
            order,
            projector,
            compressed_shift,
            idempotency_residual,
            hermitian_residual,
            truncation_certificate: certificate,
        })
    }

    pub fn norm(&self, tol: &TolerancePolicy) -> Result<f64> {
        operator_norm(&self.compressed_shift, tol)
    }
}
