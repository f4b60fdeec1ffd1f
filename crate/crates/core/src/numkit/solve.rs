use super::matrix::{Complex, ComplexMatrix};
use super::TolerancePolicy;
use crate::error::{Error, Result};

/// Solve `a x = b` (matrix right-hand side) by LU with partial pivoting.
///
/// Fails when a pivot collapses below `n·ε·max|a|` or when the achieved
/// residual misses `max(abs_eps, rel_eps·‖a‖·‖x‖)`.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix, tol: &TolerancePolicy) -> Result<ComplexMatrix> {
    if !a.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve needs square a with matching rhs, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    let k = b.cols();
    let mut lu = a.clone();
    let mut x = b.clone();
    let pivot_floor = n as f64 * f64::EPSILON * a.max_abs();

    for col in 0..n {
        let (piv, piv_abs) = (col..n)
            .map(|r| (r, lu[(r, col)].norm()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv_abs <= pivot_floor {
            return Err(Error::Singular(format!("pivot {piv_abs:.3e} in column {col}")));
        }
        if piv != col {
            for j in 0..n {
                let tmp = lu[(col, j)];
                lu[(col, j)] = lu[(piv, j)];
                lu[(piv, j)] = tmp;
            }
            for j in 0..k {
                let tmp = x[(col, j)];
                x[(col, j)] = x[(piv, j)];
                x[(piv, j)] = tmp;
            }
        }
        let d = lu[(col, col)];
        for r in (col + 1)..n {
            let f = lu[(r, col)] / d;
            if f == Complex::new(0.0, 0.0) {
                continue;
            }
            for j in col..n {
                let u = lu[(col, j)];
                lu[(r, j)] -= f * u;
            }
            for j in 0..k {
                let u = x[(col, j)];
                x[(r, j)] -= f * u;
            }
        }
    }
    for col in (0..n).rev() {
        for j in 0..k {
            let mut s = x[(col, j)];
            for c in (col + 1)..n {
                s -= lu[(col, c)] * x[(c, j)];
            }
            x[(col, j)] = s / lu[(col, col)];
        }
    }

    let resid = a.matmul(&x)?.sub(b)?.frobenius_norm();
    let bound = tol.threshold(a.frobenius_norm() * x.frobenius_norm());
    if resid > bound {
        return Err(Error::Singular(format!("residual {resid:.3e} exceeds {bound:.3e}")));
    }
    Ok(x)
}
