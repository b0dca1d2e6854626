use proptest::prelude::*;
use qudit::ops::{
    liouville_residual, projective_measure, robertson_check, variance, MeasurementSet,
};
use qudit::random::{random_density, random_hermitian, random_ket, random_unitary, seeded};
use qudit::states::{dm_from_ket, DimSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn probabilities_sum_to_one(seed in any::<u64>(), n in 2usize..6) {
        let mut rng = seeded(seed);
        let d = DimSpec::single(n).unwrap();
        let set = MeasurementSet::from_basis(&random_unitary(&mut rng, n)).unwrap();
        let rho = random_density(&mut rng, &d);
        let recs = projective_measure(&rho, &set).unwrap();
        prop_assert!(recs.iter().all(|r| r.probability >= 0.0));
        prop_assert!((recs.iter().map(|r| r.probability).sum::<f64>() - 1.0).abs() < 1e-12);
        let psi = random_ket(&mut rng, &d);
        let kp: f64 = projective_measure(&psi, &set).unwrap().iter().map(|r| r.probability).sum();
        prop_assert!((kp - 1.0).abs() < 1e-12);
    }

    #[test]
    fn variance_nonnegative(seed in any::<u64>(), n in 2usize..6, pure in any::<bool>()) {
        let mut rng = seeded(seed);
        let d = DimSpec::single(n).unwrap();
        let rho = if pure { dm_from_ket(&random_ket(&mut rng, &d)) } else { random_density(&mut rng, &d) };
        prop_assert!(variance(&rho, &random_hermitian(&mut rng, n)).unwrap() >= -1e-12);
    }

    #[test]
    fn liouville_at_zero(seed in any::<u64>(), n in 2usize..5) {
        let mut rng = seeded(seed);
        let rho = random_density(&mut rng, &DimSpec::single(n).unwrap());
        prop_assert!(liouville_residual(&random_hermitian(&mut rng, n), &rho).unwrap() < 1e-6);
    }
}

#[test]
fn robertson_over_1000_triples() {
    let mut rng = seeded(2024);
    for i in 0..1000 {
        let n = 2 + i % 4;
        let d = DimSpec::single(n).unwrap();
        let rho = if i % 2 == 0 {
            dm_from_ket(&random_ket(&mut rng, &d))
        } else {
            random_density(&mut rng, &d)
        };
        let r = robertson_check(
            &rho,
            &random_hermitian(&mut rng, n),
            &random_hermitian(&mut rng, n),
        )
        .unwrap();
        assert!(r.holds, "triple {i}: {} < {}", r.lhs, r.rhs);
    }
}
