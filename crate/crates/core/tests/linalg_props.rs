//! Randomized stress tests for the dense kernels: the symmetric eigensolver
//! and the Hessenberg-QR polynomial root finder.

use jtqes_core::linalg::{hessenberg_eigenvalues, lu_det, symmetric_eigen, Matrix};
use jtqes_core::poly::Polynomial;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetric_eigen_reconstructs(entries in prop::collection::vec(-3.0..3.0f64, 36)) {
        let n = 6;
        let a = Matrix::from_fn(n, n, |i, j| {
            0.5 * (entries[i * n + j] + entries[j * n + i])
        });
        let (vals, vecs) = symmetric_eigen(&a).unwrap();

        // eigen residuals
        let scale = a.max_abs().max(1.0);
        for j in 0..n {
            let v: Vec<f64> = (0..n).map(|i| vecs[(i, j)]).collect();
            let av = a.apply(&v);
            for i in 0..n {
                prop_assert!((av[i] - vals[j] * v[i]).abs() < 1e-10 * scale);
            }
        }
        // eigenvalue sum equals the trace
        let trace: f64 = (0..n).map(|i| a[(i, i)]).sum();
        prop_assert!((vals.iter().sum::<f64>() - trace).abs() < 1e-10 * scale.max(trace.abs()));

        // eigenvector orthonormality
        for i in 0..n {
            for j in i..n {
                let dot: f64 = (0..n).map(|k| vecs[(k, i)] * vecs[(k, j)]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot - expect).abs() < 1e-10);
            }
        }
        // determinant equals the eigenvalue product
        let det = lu_det(&a);
        let prod: f64 = vals.iter().product();
        prop_assert!((det - prod).abs() < 1e-8 * scale.powi(n as i32).max(1.0));
    }

    #[test]
    fn companion_roots_satisfy_polynomial(
        mut coeffs in prop::collection::vec(-4.0..4.0f64, 3..11),
    ) {
        // keep the polynomial well-conditioned enough to judge residuals
        if coeffs.last().unwrap().abs() < 0.5 {
            let last = coeffs.len() - 1;
            coeffs[last] = 1.0;
        }
        let poly = Polynomial::new(coeffs.clone());
        prop_assume!(poly.degree() >= 1);
        let degree = poly.degree() as usize;
        let lead = poly.coeff(degree);

        let mut companion = Matrix::zeros(degree, degree);
        for i in 1..degree {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..degree {
            companion[(i, degree - 1)] = -poly.coeff(i) / lead;
        }
        let roots = hessenberg_eigenvalues(companion).unwrap();
        prop_assert_eq!(roots.len(), degree);

        // complex roots pair up
        let im_sum: f64 = roots.iter().map(|r| r.im).sum();
        prop_assert!(im_sum.abs() < 1e-8);

        // every root satisfies p within its conditioning scale
        for r in &roots {
            let (mut pre, mut pim) = (0.0f64, 0.0f64);
            let mut scale = 0.0f64;
            // Horner in complex arithmetic, tracking the magnitude scale
            let modulus = (r.re * r.re + r.im * r.im).sqrt();
            for k in (0..=degree).rev() {
                let c = poly.coeff(k);
                let next_re = pre * r.re - pim * r.im + c;
                let next_im = pre * r.im + pim * r.re;
                pre = next_re;
                pim = next_im;
                scale = scale * modulus + c.abs();
            }
            let residual = (pre * pre + pim * pim).sqrt();
            prop_assert!(
                residual < 1e-6 * scale.max(1.0),
                "root {:?} residual {:e} scale {:e}",
                r,
                residual,
                scale
            );
        }
    }
}
