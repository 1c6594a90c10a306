//! Property tests for the operator algebra and state statistics.

use num_complex::Complex64;
use proptest::prelude::*;

use fosc_core::{
    build_deformed, build_nlcs_deformed, derive_params, ladder_from_spectrum, model_energy,
    normalization_sq_bessel, normalization_sq_direct, photon_distribution, quadrature_variance,
    shift_to_ground, DeformationFunction,
};

fn deformation() -> impl Strategy<Value = DeformationFunction> {
    (0.0f64..4.0, 1.0f64..4.0)
        .prop_map(|(gp, eta)| DeformationFunction::new(gp, eta).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adjoint_is_conjugate_transpose(f in deformation(), dim in 2usize..24) {
        let (a, adag) = build_deformed(dim, &f).unwrap();
        for i in 0..dim {
            for j in 0..dim {
                prop_assert_eq!(adag.entry(i, j), a.entry(j, i).conj());
            }
        }
    }

    #[test]
    fn commutator_diagonal_matches_closed_form(f in deformation(), dim in 3usize..24) {
        let (a, adag) = build_deformed(dim, &f).unwrap();
        let c = a.commutator(&adag).unwrap();
        for n in 0..dim - 1 {
            let nf = n as f64;
            let want = (nf + 1.0) * f.eval_squared(n + 1) - nf * f.eval_squared(n);
            prop_assert!((c.entry(n, n).re - want).abs() <= 1e-13 * want.abs().max(1.0));
            prop_assert!(c.entry(n, n).im.abs() < 1e-13);
        }
    }

    #[test]
    fn spectrum_ladder_commutator_is_level_spacing(a in 0.4f64..6.0, dim in 3usize..20) {
        let p = derive_params(a, 1.0, 1.0).unwrap();
        let e: Vec<f64> = (0..dim).map(|n| model_energy(n, &p)).collect();
        let shifted = shift_to_ground(&e);
        let (lo, hi) = ladder_from_spectrum(&shifted).unwrap();
        let c = lo.commutator(&hi).unwrap();
        for n in 0..dim - 1 {
            let spacing = e[n + 1] - e[n];
            prop_assert!((c.entry(n, n).re - spacing).abs() <= 1e-12 * spacing);
        }
    }

    #[test]
    fn nlcs_probabilities_normalize(
        f in deformation(),
        re in -1.8f64..1.8,
        im in -1.8f64..1.8,
    ) {
        let st = build_nlcs_deformed(Complex64::new(re, im), f, 1e-14).unwrap();
        let total: f64 = photon_distribution(&st).iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(st.tail_bound() < 1e-14);
    }

    #[test]
    fn quadrature_variance_is_pi_periodic(
        f in deformation(),
        re in -1.5f64..1.5,
        im in -1.5f64..1.5,
        phi in 0.0f64..std::f64::consts::TAU,
        deformed in proptest::bool::ANY,
    ) {
        // X at phi + pi is the negated operator: identical variance
        let st = build_nlcs_deformed(Complex64::new(re, im), f, 1e-14).unwrap();
        let v0 = quadrature_variance(&st, phi, deformed);
        let v1 = quadrature_variance(&st, phi + std::f64::consts::PI, deformed);
        prop_assert!((v0 - v1).abs() <= 1e-12 * v0.abs().max(1.0));
    }

    #[test]
    fn self_adjoint_expectation_is_real(
        f in deformation(),
        re in -1.5f64..1.5,
        im in -1.5f64..1.5,
        phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let st = build_nlcs_deformed(Complex64::new(re, im), f, 1e-14).unwrap();
        let dim = st.trunc_dim().max(2);
        let (a, adag) = build_deformed(dim, st.deformation()).unwrap();
        let ph = Complex64::from_polar(0.5, phi);
        let quad = a.scaled(ph).add(&adag.scaled(ph.conj())).unwrap();
        let val = fosc_core::expectation(&quad, st.coeffs()).unwrap();
        prop_assert!(val.im.abs() < 1e-12 * (1.0 + val.re.abs()));
    }

    #[test]
    fn bessel_normalization_equals_direct_sum(
        f in deformation(),
        b in 0.0f64..3.0,
    ) {
        let beta = Complex64::new(b, 0.0);
        let direct = normalization_sq_direct(beta, &f).unwrap();
        let bessel = normalization_sq_bessel(beta, &f).unwrap();
        prop_assert!((direct - bessel).abs() <= 1e-10 * direct);
    }
}
