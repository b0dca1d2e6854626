use proptest::prelude::*;
use qudit::chsh::{chsh_value, tsirelson_identity_residual, ChshSettings};
use qudit::multipartite::Compose;
use qudit::random::{random_density, random_ket, random_unit_vector3, seeded, uniform, QRng};
use qudit::states::{dm_from_ket, DensityOp, DimSpec};

const TSIRELSON: f64 = 2.0 * std::f64::consts::SQRT_2;

fn settings(rng: &mut QRng) -> ChshSettings {
    ChshSettings::new(
        random_unit_vector3(rng),
        random_unit_vector3(rng),
        random_unit_vector3(rng),
        random_unit_vector3(rng),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_holds_for_any_settings(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        prop_assert!(tsirelson_identity_residual(&settings(&mut rng)) < 1e-12);
    }

    #[test]
    fn value_is_linear_in_the_state(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let two = DimSpec::qubits(2).unwrap();
        let s = settings(&mut rng);
        let (a, b) = (random_density(&mut rng, &two), random_density(&mut rng, &two));
        let w = uniform(&mut rng);
        let mix = DensityOp::mixture(&[(w, &a), (1.0 - w, &b)]).unwrap();
        let lhs = chsh_value(&mix, &s).unwrap();
        let rhs = w * chsh_value(&a, &s).unwrap() + (1.0 - w) * chsh_value(&b, &s).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }
}

#[test]
fn ceilings_over_1000_samples() {
    let mut rng = seeded(31);
    let two = DimSpec::qubits(2).unwrap();
    let q = DimSpec::single(2).unwrap();
    for _ in 0..1000 {
        let s = settings(&mut rng);
        let rho = dm_from_ket(&random_ket(&mut rng, &two));
        assert!(chsh_value(&rho, &s).unwrap().abs() <= TSIRELSON + 1e-9);
        let prod = dm_from_ket(
            &random_ket(&mut rng, &q)
                .tensor(&random_ket(&mut rng, &q))
                .unwrap(),
        );
        assert!(chsh_value(&prod, &s).unwrap().abs() <= 2.0 + 1e-9);
    }
}
