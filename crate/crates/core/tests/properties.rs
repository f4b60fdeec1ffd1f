use std::f64::consts::PI;

use norm_attain::idempotent::{buckholtz, compression_certificate, idempotent_from_x, na_check_buckholtz, na_check_compression};
use norm_attain::modelspace::ModelSpace;
use norm_attain::numkit::{c64, hermitian_eig, operator_norm, vec_norm};
use norm_attain::structured::{structured_na, Monotone, NormProfileMetadata, StructuredOperator};
use norm_attain::symbols::{modulus_enclosure, BlaschkeProduct, TrigPolynomial};
use norm_attain::toeplitz::{laurent_na_check, toeplitz_truncation};
use norm_attain::{Complex, ComplexMatrix, TolerancePolicy, VerdictKind};
use proptest::prelude::*;

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn complex() -> impl Strategy<Value = Complex> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| c64(re, im))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(complex(), r * c).prop_map(move |d| ComplexMatrix::new(r, c, d).unwrap())
    })
}

fn hermitian(max_n: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(complex(), n * n).prop_map(move |d| {
            let a = ComplexMatrix::new(n, n, d).unwrap();
            a.add(&a.adjoint()).unwrap()
        })
    })
}

/// Zeros with modulus ≤ 0.9 and pairwise separation ≥ 0.1.
fn separated_zeros(max_n: usize) -> impl Strategy<Value = Vec<Complex>> {
    prop::collection::vec((0.0f64..0.9, 0.0f64..(2.0 * PI)), 1..=max_n).prop_map(|polar| {
        let mut out: Vec<Complex> = Vec::new();
        for (r, t) in polar {
            let z = Complex::from_polar(r, t);
            if out.iter().all(|w| (w - z).norm() >= 0.1) {
                out.push(z);
            }
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectral_reconstruction(a in hermitian(7)) {
        let e = hermitian_eig(&a, &tol()).unwrap();
        let v = &e.eigenvectors;
        let lambda: Vec<Complex> = e.eigenvalues.iter().map(|&l| c64(l, 0.0)).collect();
        let rebuilt = v.matmul(&ComplexMatrix::diagonal(&lambda)).unwrap().matmul(&v.adjoint()).unwrap();
        let scale = a.max_abs().max(1.0);
        prop_assert!(rebuilt.sub(&a).unwrap().max_abs() <= 1e-12 * scale * a.rows() as f64);
        let gram = v.adjoint().matmul(v).unwrap();
        prop_assert!(gram.sub(&ComplexMatrix::identity(a.rows())).unwrap().max_abs() <= 1e-12);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn operator_norm_adjoint_and_bounds(a in matrix(6, 6), x in prop::collection::vec(complex(), 6)) {
        let n = operator_norm(&a, &tol()).unwrap();
        let na = operator_norm(&a.adjoint(), &tol()).unwrap();
        prop_assert!((n - na).abs() <= 1e-10 * n.max(1.0));
        let top = hermitian_eig(&a.adjoint().matmul(&a).unwrap(), &tol()).unwrap().max_eigenvalue();
        prop_assert!((n * n - top).abs() <= 1e-10 * top.max(1.0));
        prop_assert!(n <= a.frobenius_norm() * (1.0 + 1e-12));
        let x = &x[..a.cols()];
        let xn = vec_norm(x);
        if xn > 1e-6 {
            prop_assert!(vec_norm(&a.mul_vec(x).unwrap()) <= n * xn * (1.0 + 1e-10));
        }
    }

    #[test]
    fn finite_certificate_is_an_eigenpair(a in matrix(6, 6)) {
        let v = structured_na(&StructuredOperator::Finite(a.clone()), &tol()).unwrap();
        match v {
            norm_attain::Verdict::Attained { norm, certificate: Some(c), ratio, .. } => {
                let tts = a.matmul(&a.adjoint()).unwrap();
                let th = tts.mul_vec(&c.vector).unwrap();
                let resid: f64 = vec_norm(&th.iter().zip(&c.vector).map(|(p, q)| p - q * (norm * norm)).collect::<Vec<_>>());
                prop_assert!(resid <= 1e-9 * (norm * norm).max(1e-300) + 1e-14);
                prop_assert!((ratio - norm).abs() <= 1e-9 * norm.max(1.0));
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn idempotent_formulas(x in matrix(8, 8)) {
        let t = idempotent_from_x(x.clone());
        prop_assert!(t.idempotency_residual() <= 1e-12);
        let sx = operator_norm(&x, &tol()).unwrap();
        let nt = t.norm(&tol()).unwrap();
        prop_assert!((nt * nt - (1.0 + sx * sx)).abs() <= 1e-8 * (1.0 + sx * sx));
        let b = buckholtz(&t);
        prop_assert_eq!(b.matrix.hermitian_deviation(), 0.0);
        prop_assert!(b.square_residual(&t).unwrap() <= 1e-11 * (1.0 + sx * sx));
        prop_assert!((operator_norm(&b.matrix, &tol()).unwrap() - nt).abs() <= 1e-8 * nt);
        let a = na_check_buckholtz(&t, &tol()).unwrap();
        let c = na_check_compression(&t, &tol()).unwrap();
        prop_assert_eq!(a.kind(), VerdictKind::Attained);
        prop_assert_eq!(a.kind(), c.kind());
        let cert = compression_certificate(&t, &tol()).unwrap();
        prop_assert!(cert.range_residual.max(cert.eigen_residual) <= 1e-9 * nt * nt);
    }

    #[test]
    fn buckholtz_square_large(x in (1usize..=16, 1usize..=16).prop_flat_map(|(m, k)| {
        prop::collection::vec(complex(), m * k).prop_map(move |d| ComplexMatrix::new(m, k, d).unwrap())
    })) {
        let t = idempotent_from_x(x.clone());
        let sx = operator_norm(&x, &tol()).unwrap();
        prop_assert!(buckholtz(&t).square_residual(&t).unwrap() <= 1e-11 * (1.0 + sx * sx));
    }

    #[test]
    fn blaschke_is_unimodular_on_the_circle(
        zeros in prop::collection::vec((0.0f64..0.95, 0.0f64..(2.0 * PI)), 1..6),
        t in 0.0f64..(2.0 * PI),
        z in (0.0f64..0.99, 0.0f64..(2.0 * PI)),
    ) {
        let zs: Vec<Complex> = zeros.iter().map(|&(r, a)| Complex::from_polar(r, a)).collect();
        let b = BlaschkeProduct::from_zeros(&zs).unwrap();
        prop_assert!((b.eval_boundary(t).norm() - 1.0).abs() <= 1e-12);
        prop_assert!(b.eval(Complex::from_polar(z.0, z.1)).unwrap().norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn model_space_identities(zeros in separated_zeros(5)) {
        let s = ModelSpace::from_zeros(&zeros, tol()).unwrap();
        prop_assert!(s.defect_identity_residual().unwrap() <= 1e-9);
        let norm = s.model_norm().unwrap();
        if zeros.len() == 1 {
            prop_assert!((norm - zeros[0].norm()).abs() <= 1e-10);
        } else {
            prop_assert!((norm - 1.0).abs() <= 1e-8);
        }
        let w = s.witness().unwrap();
        prop_assert!((w.ratio - norm).abs() <= 1e-8);
        prop_assert!(s.na_witness().unwrap().is_attained());
        if zeros.len() > 1 {
            prop_assert!(w.f_at_zero.norm() <= 1e-12);
        }
    }

    #[test]
    fn enclosure_refinement_is_consistent(coeffs in prop::collection::vec(complex(), 1..=4).prop_map(|c| {
        // Odd length 2m+1.
        let mut c = c;
        if c.len() % 2 == 0 { c.push(c64(0.0, 0.0)); }
        c
    })) {
        let p = TrigPolynomial::new(coeffs).unwrap();
        let s = p.to_series();
        let coarse = modulus_enclosure(&s, 256).unwrap();
        let fine = modulus_enclosure(&s, 2560).unwrap();
        let slack = 1e-12;
        prop_assert!(fine.sample_max <= coarse.sup_upper + slack);
        prop_assert!(coarse.sample_max <= fine.sup_upper + slack);
        prop_assert!(fine.sup_lower <= coarse.sup_upper + slack && coarse.sup_lower <= fine.sup_upper + slack);
        prop_assert!(fine.inf_lower <= coarse.inf_upper + slack && coarse.inf_lower <= fine.inf_upper + slack);
        prop_assert!(fine.sup_upper - fine.sup_lower <= coarse.sup_upper - coarse.sup_lower + 1e-9);
    }

    #[test]
    fn toeplitz_sections_grow_and_stay_below_sup(coeffs in prop::collection::vec(complex(), 3..=7).prop_map(|mut c| {
        if c.len() % 2 == 0 { c.push(c64(0.0, 0.0)); }
        c
    })) {
        let s = TrigPolynomial::new(coeffs).unwrap().to_series();
        let upper = modulus_enclosure(&s, 4096).unwrap().sup_upper;
        let mut prev = 0.0;
        for n in [1usize, 2, 4, 8, 16, 32] {
            let norm = toeplitz_truncation(&s, n).unwrap().norm(&tol()).unwrap();
            prop_assert!(norm >= prev - 1e-12);
            prop_assert!(norm <= upper + 1e-12);
            prev = norm;
        }
    }

    #[test]
    fn laurent_decides_by_modulus(c in complex(), k in 0usize..4, extra in complex(), j in 1usize..4) {
        prop_assume!(c.norm() > 1e-3);
        // c·z^k has constant modulus.
        let mut mono = vec![c64(0.0, 0.0); 2 * k + 1];
        mono[2 * k] = c;
        prop_assert_eq!(laurent_na_check(&TrigPolynomial::new(mono).unwrap(), &tol()).unwrap().kind(), VerdictKind::Attained);
        // c + extra·z^j with extra ≠ 0 does not.
        prop_assume!(extra.norm() > 1e-3);
        let mut two = vec![c64(0.0, 0.0); 2 * j + 1];
        two[j] = c;
        two[2 * j] = extra;
        prop_assert_eq!(laurent_na_check(&TrigPolynomial::new(two).unwrap(), &tol()).unwrap().kind(), VerdictKind::NotAttained);
    }

    #[test]
    fn longer_prefix_never_flips(a in 0.1f64..0.9, p in 1usize..200) {
        let make = |prefix: usize| StructuredOperator::diagonal(
            "geometric approach",
            move |n| c64(1.0 - a.powi(n as i32), 0.0),
            NormProfileMetadata::strictly_below(1.0, Monotone::Increasing).with_prefix(prefix),
        );
        // Stay clear of the abs_eps band at the limit.
        let limit = ((1e-8f64).ln() / a.ln()).floor() as usize;
        prop_assume!(p * 2 < limit);
        let short = structured_na(&make(p), &tol()).unwrap();
        let long = structured_na(&make(2 * p), &tol()).unwrap();
        prop_assert_eq!(short.kind(), long.kind());
    }
}
