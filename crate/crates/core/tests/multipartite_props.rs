use proptest::prelude::*;
use qudit::linalg::kron;
use qudit::multipartite::{partial_trace, partial_transpose_matrix, schmidt, Compose};
use qudit::quantifiers::{von_neumann_entropy, LogBase};
use qudit::random::{random_density, random_hermitian, random_ket, seeded};
use qudit::states::{dm_from_ket, DimSpec, Ket};
use qudit::{Matrix, C64};

fn bipartite() -> impl Strategy<Value = (usize, usize)> {
    (2usize..5, 2usize..5)
}

/// `Σ_j (I ⊗ ⟨j|) M (I ⊗ |j⟩)` over the second factor of dimension `db`.
fn sandwich_trace_second(m: &Matrix, da: usize, db: usize) -> Matrix {
    let mut out = Matrix::zeros(da, da);
    for j in 0..db {
        let mut bra = Matrix::zeros(da, da * db);
        for i in 0..da {
            bra[(i, i * db + j)] = C64::new(1.0, 0.0);
        }
        out = &out + &(&(&bra * m) * &bra.dagger());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partial_trace_preserves_trace(seed in any::<u64>(), (a, b) in bipartite(), c in 1usize..3) {
        let mut rng = seeded(seed);
        let d = DimSpec::new(vec![a, b, c + 1]).unwrap();
        let rho = random_density(&mut rng, &d);
        for keep in [vec![0], vec![1], vec![2], vec![0, 2], vec![1, 2]] {
            let r = partial_trace(&rho, &keep).unwrap();
            prop_assert!((r.matrix().trace().unwrap().re - 1.0).abs() < 1e-12);
        }
        let ab = partial_trace(&partial_trace(&rho, &[0, 1]).unwrap(), &[0]).unwrap();
        prop_assert!(ab.matrix().max_abs_diff(partial_trace(&rho, &[0]).unwrap().matrix()) < 1e-13);
    }

    #[test]
    fn reduced_state_reproduces_local_expectations(seed in any::<u64>(), (a, b) in bipartite()) {
        let mut rng = seeded(seed);
        let rho = random_density(&mut rng, &DimSpec::new(vec![a, b]).unwrap());
        let obs = random_hermitian(&mut rng, a);
        let global = rho.matrix().trace_product(&kron(&obs, &Matrix::identity(b)).unwrap()).unwrap();
        let local = partial_trace(&rho, &[0]).unwrap().matrix().trace_product(&obs).unwrap();
        prop_assert!((global - local).norm() < 1e-12);
        let sandwich = sandwich_trace_second(rho.matrix(), a, b);
        prop_assert!(sandwich.max_abs_diff(partial_trace(&rho, &[0]).unwrap().matrix()) < 1e-13);
    }

    #[test]
    fn partial_transpose_is_an_involution(seed in any::<u64>(), (a, b) in bipartite(), sys in 0usize..2) {
        let mut rng = seeded(seed);
        let d = DimSpec::new(vec![a, b]).unwrap();
        let rho = random_density(&mut rng, &d);
        let once = partial_transpose_matrix(rho.matrix(), &d, sys).unwrap();
        let twice = partial_transpose_matrix(&once, &d, sys).unwrap();
        prop_assert_eq!(&twice, rho.matrix());
        let both = partial_transpose_matrix(&once, &d, 1 - sys).unwrap();
        prop_assert_eq!(both, rho.matrix().transpose());
    }

    #[test]
    fn pure_state_reductions_share_entropy(seed in any::<u64>(), (a, b) in bipartite()) {
        let mut rng = seeded(seed);
        let rho = dm_from_ket(&random_ket(&mut rng, &DimSpec::new(vec![a, b]).unwrap()));
        let sa = von_neumann_entropy(&partial_trace(&rho, &[0]).unwrap(), LogBase::Two).unwrap();
        let sb = von_neumann_entropy(&partial_trace(&rho, &[1]).unwrap(), LogBase::Two).unwrap();
        prop_assert!((sa - sb).abs() < 1e-10);
    }

    #[test]
    fn schmidt_reconstructs_and_matches_reduction(seed in any::<u64>(), (a, b) in bipartite(), product in any::<bool>()) {
        let mut rng = seeded(seed);
        let d = DimSpec::new(vec![a, b]).unwrap();
        let psi = if product {
            random_ket(&mut rng, &DimSpec::single(a).unwrap()).tensor(&random_ket(&mut rng, &DimSpec::single(b).unwrap())).unwrap()
        } else {
            random_ket(&mut rng, &d)
        };
        let s = schmidt(&psi, &d).unwrap();
        prop_assert!(s.reconstruct().max_diff_canonical(&psi) < 1e-12);
        let norm: f64 = s.coefficients.iter().map(|c| c * c).sum();
        prop_assert!((norm - 1.0).abs() < 1e-12);
        if product {
            prop_assert_eq!(s.rank, 1);
        } else {
            prop_assert_eq!(s.rank, a.min(b));
        }
        let mut from_schmidt = Matrix::zeros(a, a);
        for (k, &c) in s.coefficients.iter().enumerate() {
            let u = s.left_basis.column_vec(k);
            from_schmidt = &from_schmidt + &Matrix::outer(&u, &u).scale_real(c * c);
        }
        let oracle = sandwich_trace_second(&psi.projector(), a, b);
        prop_assert!(from_schmidt.max_abs_diff(&oracle) < 1e-12);
    }
}

#[test]
fn product_state_partial_trace() {
    let a = Ket::basis(DimSpec::single(2).unwrap(), 1).unwrap();
    let b = Ket::basis(DimSpec::single(3).unwrap(), 2).unwrap();
    let rho = dm_from_ket(&a.tensor(&b).unwrap());
    assert_eq!(partial_trace(&rho, &[0]).unwrap().matrix(), &a.projector());
    assert_eq!(partial_trace(&rho, &[1]).unwrap().matrix(), &b.projector());
}
