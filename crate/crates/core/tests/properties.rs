use num_complex::Complex64;
use proptest::prelude::*;

use screened_core::oracle::{solve_level, RadialProblem};
use screened_core::potential::{eval_potential, RadialGrid};
use screened_core::quadrature::QuadratureSpec;
use screened_core::susy::{
    closed_form_energy, effective_potential, ground_wavefunction, pair_energy, part_ground_energy,
    partner_potential, riccati_residual, superpotential, superpotential_derivative,
    yukawa_energy, PoleHandling, SuperpotentialSpec,
};
use screened_core::variational::{
    kinetic_first_derivative_form, kinetic_second_derivative_form, minimize, MinimizeOptions,
    TrialFamily,
};
use screened_core::{ComplexScreening, Convention, EnergyReport, Method, ScreeningParams, Variant};

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

/// Composite Simpson rule, used as an independent integrator.
fn simpson(f: impl Fn(f64) -> Complex64, a: f64, b: f64, n: usize) -> Complex64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + h * i as f64);
    }
    sum * h / 3.0
}

proptest! {
    #[test]
    fn parts_sum_to_the_potential(
        q in 0.1f64..4.0,
        lambda in 0.0f64..1.0,
        mu in 0.0f64..1.0,
        r in 0.01f64..40.0,
        which in 0usize..3,
    ) {
        let p = ScreeningParams::new(q, lambda, mu, Variant::ALL[which]).unwrap();
        let [p1, p2] = p.part_potentials();
        let sum = p1.value_at(r) + p2.value_at(r);
        let direct = eval_potential(r, &p).unwrap();
        prop_assert!((sum - direct).norm() <= 1e-13 * direct.norm().max(1.0));
    }

    #[test]
    fn cosine_free_limit_is_yukawa(q in 0.1f64..4.0, lambda in 0.0f64..1.0, r in 0.01f64..40.0) {
        let v = eval_potential(r, &ScreeningParams::new(q, lambda, 0.0, Variant::Hermitian).unwrap()).unwrap();
        prop_assert_eq!(v.im, 0.0);
        prop_assert!(close(v.re, -q * (-lambda * r).exp() / r, 1e-15));
    }

    #[test]
    fn closed_form_reduces_to_yukawa(q in 0.01f64..4.0, lambda in 0.0f64..1.0, l in 0u32..6) {
        prop_assert!(close(closed_form_energy(q, lambda, 0.0, l), yukawa_energy(q, lambda, l), 1e-12));
    }

    #[test]
    fn pair_energy_matches_closed_form(lambda in 0.0f64..1.0, mu in 0.0f64..1.0, l in 0u32..6) {
        prop_assume!(1.0 / (f64::from(l) + 1.0) > lambda / 2.0);
        let p = ScreeningParams::hermitian(lambda, mu).unwrap();
        let e = pair_energy(&p, l).unwrap();
        prop_assert!(close(e.energy, closed_form_energy(2.0, lambda, mu, l), 1e-12));
        prop_assert!(e.residual.unwrap() <= 1e-13);
    }

    #[test]
    fn non_pt_variant_shares_the_hermitian_spectrum(lambda in 0.0f64..1.0, mu in 0.0f64..1.0) {
        for l in 0..3u32 {
            if 1.0 / (f64::from(l) + 1.0) <= lambda / 2.0 {
                continue;
            }
            let h = pair_energy(&ScreeningParams::new(2.0, lambda, mu, Variant::Hermitian).unwrap(), l).unwrap();
            let n = pair_energy(&ScreeningParams::new(2.0, lambda, mu, Variant::NonPtNonHermitian).unwrap(), l).unwrap();
            prop_assert!((h.energy - n.energy).abs() <= 1e-12);
        }
    }

    #[test]
    fn pt_variant_energy_formula(lambda in 0.0f64..0.5, mu in 0.0f64..0.5, l in 0u32..4) {
        let p = ScreeningParams::new(2.0, lambda, mu, Variant::PtNonHermitian).unwrap();
        let m = f64::from(l) + 1.0;
        prop_assume!(1.0 / m > (lambda + mu) / 2.0);
        let expected = -(1.0 / (m * m) + (lambda * lambda + mu * mu) / 4.0 - mu / m);
        let e = pair_energy(&p, l).unwrap();
        prop_assert!(close(e.energy, expected, 1e-12));
    }

    #[test]
    fn riccati_identity_for_real_and_complex_exponents(
        re in 0.01f64..0.5,
        im in -0.5f64..0.5,
        l in 0u32..4,
        which in 0usize..3,
    ) {
        let a = if Variant::ALL[which] == Variant::PtNonHermitian {
            ComplexScreening::real(re)
        } else {
            ComplexScreening::new(Complex64::new(re, im))
        };
        let s = SuperpotentialSpec::new(a, l, 1.0, Variant::ALL[which]).unwrap();
        let e0 = part_ground_energy(&s).unwrap_or(Complex64::new(-0.1, 0.0));
        // stay clear of the PT poles at r = 2πn/a
        let r_max = if which == 2 { 0.9 * 2.0 * std::f64::consts::PI / re } else { 30.0 };
        let grid = RadialGrid::uniform(0.05, r_max.min(30.0), 1000).unwrap();
        let scale = grid
            .points()
            .map(|r| effective_potential(r, &s, e0).unwrap().norm())
            .fold(1.0, f64::max);
        prop_assert!(riccati_residual(&s, e0, &grid).unwrap() <= 1e-13 * scale);
    }

    #[test]
    fn partner_minus_original_is_the_slope(a in 0.01f64..0.5, l in 0u32..4, r in 0.05f64..30.0) {
        let s = SuperpotentialSpec::hermitian(a, l, 1.0).unwrap();
        let e0 = Complex64::new(-0.3, 0.0);
        let gap = partner_potential(r, &s, e0).unwrap() - effective_potential(r, &s, e0).unwrap();
        let slope = superpotential_derivative(r, &s, PoleHandling::Error).unwrap();
        prop_assert!((gap - slope).norm() <= 1e-12 * slope.norm().max(1.0) * (1.0 + 1.0 / (r * r)));
    }

    #[test]
    fn convention_round_trip(energy in -10.0f64..0.0) {
        let r = EnergyReport::new(energy, Convention::PerPart, Method::Oracle);
        let back = r.in_convention(Convention::PairSum).in_convention(Convention::PerPart);
        prop_assert_eq!(back.energy, energy);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn kinetic_forms_agree(l in 0u32..4, frac in 0.05f64..0.95, g in 0.5f64..1.5) {
        let v = frac * 2.0 * g / (f64::from(l) + 1.0);
        let t = TrialFamily::new(l, v, g).unwrap();
        let quad = QuadratureSpec::default();
        let a = kinetic_second_derivative_form(&t, &quad).unwrap();
        let b = kinetic_first_derivative_form(&t, &quad).unwrap();
        prop_assert!(close(a, b, 1e-8), "{} vs {}", a, b);
    }

    #[test]
    fn ground_wavefunction_integrates_the_superpotential(
        re in 0.02f64..0.4,
        im in -0.3f64..0.3,
        l in 0u32..3,
        r1 in 0.3f64..2.0,
        span in 0.5f64..5.0,
    ) {
        let s = SuperpotentialSpec::new(ComplexScreening::new(Complex64::new(re, im)), l, 1.0, Variant::Hermitian).unwrap();
        prop_assume!(s.check_bound().is_ok());
        let r2 = r1 + span;
        let integral = simpson(|r| superpotential(r, &s, PoleHandling::Error).unwrap(), r1, r2, 4000);
        let ratio = ground_wavefunction(r2, &s).unwrap() / ground_wavefunction(r1, &s).unwrap();
        let expected = (-integral).exp();
        prop_assert!((ratio - expected).norm() <= 1e-8 * expected.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn variational_energy_bounds_the_oracle_from_above(lambda in 0.0f64..0.3, l in 0u32..3) {
        let p = ScreeningParams::hermitian(lambda, 0.0).unwrap();
        let kappa = 1.0 / (f64::from(l) + 1.0) - lambda;
        prop_assume!(kappa > 0.02);
        let grid = RadialProblem::default_grid(l, kappa).unwrap();
        let exact = solve_level(&RadialProblem::new(move |r| p.per_part_real(r), l, grid), 0);
        prop_assume!(exact.is_ok());
        let exact = exact.unwrap();
        let var = minimize(&p, l, &QuadratureSpec::default(), &MinimizeOptions::default()).unwrap();
        prop_assert!(var.energy.per_part >= exact.energy - 1e-9, "{} < {}", var.energy.per_part, exact.energy);
    }

    #[test]
    fn screening_raises_the_ground_level(lambda in 0.0f64..0.2, extra in 0.01f64..0.1) {
        let level = |lambda: f64| {
            let p = ScreeningParams::hermitian(lambda, lambda).unwrap();
            let grid = RadialProblem::default_grid(0, 1.0 - lambda).unwrap();
            solve_level(&RadialProblem::new(move |r| p.per_part_real(r), 0, grid), 0).unwrap().energy
        };
        prop_assert!(level(lambda) < level(lambda + extra));
    }
}
