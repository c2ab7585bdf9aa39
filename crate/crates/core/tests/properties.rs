use proptest::prelude::*;

use vnkit::algebra::{commutant, random_algebra, structure, BlockSpec};
use vnkit::btlift::{gamma_schedule, gamma_schedule_with_remainder};
use vnkit::linalg::{herm_eig, svd};
use vnkit::rng::{gaussian_matrix, random_hermitian, seeded};
use vnkit::weights::{canonical_trace, cutoff_profile};
use vnkit::{ComplexMatrix, Tolerances};

fn spec_strategy() -> impl Strategy<Value = BlockSpec> {
    prop::collection::vec((1usize..=3, 1usize..=3), 1..=2)
        .prop_map(|b| BlockSpec::new(b).unwrap())
        .prop_filter("small", |s| s.ambient_dim() <= 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn matrix_json_round_trip_is_exact(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
        let a = gaussian_matrix(rows, cols, &mut seeded(seed));
        let back: ComplexMatrix = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn spec_display_parses_back(spec in spec_strategy()) {
        let back: BlockSpec = spec.to_string().parse().unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn herm_eig_reconstructs(d in 1usize..7, seed in any::<u64>()) {
        let a = random_hermitian(d, &mut seeded(seed));
        let e = herm_eig(&a).unwrap();
        prop_assert!((&e.reconstruct() - &a).norm() <= 1e-12 * (1.0 + a.norm()));
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]) || e.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn singular_values_match_frobenius(rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
        let a = gaussian_matrix(rows, cols, &mut seeded(seed));
        let s = svd(&a);
        let fro: f64 = s.values.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!((fro - a.norm()).abs() <= 1e-12 * a.norm());
    }

    #[test]
    fn gamma_sum_telescopes(alphas in prop::collection::vec(1e-6f64..1.0, 1..12), tail in 0.0f64..0.5) {
        let g = gamma_schedule_with_remainder(&alphas, tail).unwrap();
        prop_assert!((g.weighted_sum - g.telescoped).abs() <= 1e-12);
        let total: f64 = alphas.iter().sum::<f64>() + tail;
        prop_assert!(g.weighted_sum <= total.sqrt() + 1e-12);
        let plain = gamma_schedule(&alphas).unwrap();
        prop_assert!(plain.weighted_sum <= alphas.iter().sum::<f64>().sqrt() + 1e-12);
    }

    #[test]
    fn commutant_has_swapped_shape(spec in spec_strategy(), seed in any::<u64>()) {
        let tol = Tolerances::default();
        let (m, _) = random_algebra(&spec, seed).unwrap();
        prop_assert_eq!(m.dim(), spec.algebra_dim());
        let mc = commutant(&m, &tol).unwrap();
        prop_assert_eq!(mc.dim(), spec.commutant_dim());
        let mut shape = structure(&mc, &tol).unwrap().shape();
        shape.sort();
        prop_assert_eq!(BlockSpec::new(shape).unwrap(), spec.swapped().sorted());
    }

    #[test]
    fn cutoff_is_monotone(spec in spec_strategy(), seed in any::<u64>()) {
        let tol = Tolerances::default();
        let (m, _) = random_algebra(&spec, seed).unwrap();
        let trace = canonical_trace(&m, &tol).unwrap();
        let mut rng = seeded(seed ^ 1);
        let a = m.random_element(&mut rng);
        let a = a.adjoint().matmul(&a);
        let x = m.random_element(&mut rng);
        let prof = cutoff_profile(&trace, &a, &x.adjoint().matmul(&x), 12, &tol).unwrap();
        prop_assert!(prof.values.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        prop_assert!(prof.certificates.all_pass());
    }
}
