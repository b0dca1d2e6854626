use proptest::prelude::*;
use qudit::linalg::{char_coeffs_from_eigs, hermitian_eig, kron, mat_func};
use qudit::random::{gaussian_matrix, random_hermitian, seeded};
use qudit::{Matrix, C64};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_mixed_product(seed in any::<u64>(), m in 1usize..4, n in 1usize..4, p in 1usize..4, q in 1usize..4) {
        let mut rng = seeded(seed);
        let a = gaussian_matrix(&mut rng, m, n);
        let b = gaussian_matrix(&mut rng, p, q);
        let c = gaussian_matrix(&mut rng, n, 2);
        let d = gaussian_matrix(&mut rng, q, 3);
        let lhs = &kron(&a, &b).unwrap() * &kron(&c, &d).unwrap();
        let rhs = kron(&(&a * &c), &(&b * &d)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        let adj = kron(&a, &b).unwrap().dagger();
        prop_assert!(adj.max_abs_diff(&kron(&a.dagger(), &b.dagger()).unwrap()) == 0.0);
    }

    #[test]
    fn trace_is_cyclic(seed in any::<u64>(), m in 1usize..6, n in 1usize..6) {
        let mut rng = seeded(seed);
        let a = gaussian_matrix(&mut rng, m, n);
        let b = gaussian_matrix(&mut rng, n, m);
        let ab = (&a * &b).trace().unwrap();
        let ba = (&b * &a).trace().unwrap();
        prop_assert!((ab - ba).norm() < 1e-11);
        prop_assert!((a.trace_product(&b).unwrap() - ab).norm() < 1e-11);
    }

    #[test]
    fn eig_reconstructs(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = seeded(seed);
        let h = random_hermitian(&mut rng, n);
        let e = hermitian_eig(&h).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&h) < 1e-11);
        prop_assert!(e.eigenvectors.unitary_deviation() < 1e-11);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let sum: f64 = e.eigenvalues.iter().sum();
        prop_assert!((sum - h.trace().unwrap().re).abs() < 1e-11);
    }

    #[test]
    fn identity_function_is_identity(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = seeded(seed);
        let h = random_hermitian(&mut rng, n);
        prop_assert!(mat_func(&h, |x| x).unwrap().max_abs_diff(&h) < 1e-11);
        let sq = mat_func(&h, |x| x * x).unwrap();
        prop_assert!(sq.max_abs_diff(&(&h * &h)) < 1e-10);
    }

    #[test]
    fn char_coeffs_agree_with_trace_and_det(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = seeded(seed);
        let h = random_hermitian(&mut rng, n);
        let eigs = hermitian_eig(&h).unwrap().eigenvalues;
        let a = char_coeffs_from_eigs(&eigs);
        prop_assert!((a[1] - h.trace().unwrap().re).abs() < 1e-10);
        prop_assert!((a[n] - h.determinant().unwrap().re).abs() < 1e-9 * (1.0 + a[n].abs()));
        // every eigenvalue is a root of Σ (−1)^j a_j λ^{n−j}
        for &l in &eigs {
            let v: f64 = (0..=n).map(|j| (-1f64).powi(j as i32) * a[j] * l.powi((n - j) as i32)).sum();
            let scale: f64 = (0..=n).map(|j| (a[j] * l.powi((n - j) as i32)).abs()).sum();
            prop_assert!(v.abs() <= 1e-10 * scale.max(1.0));
        }
    }
}

#[test]
fn identity_spectrum() {
    let e = hermitian_eig(&Matrix::identity(5)).unwrap();
    assert!(e.eigenvalues.iter().all(|&l| l == 1.0));
    let z = Matrix::zeros(3, 3);
    assert_eq!(z.trace().unwrap(), C64::new(0.0, 0.0));
}
