use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;

use airy_core::analysis::{classify_time, decay_exponent, detect_jumps, JumpSettings, TimeClass};
use airy_core::config::ScenarioConfig;
use airy_core::correction::{normalize_angle, CorrectionSeries};
use airy_core::oscquad::{moment, moment_between};
use airy_core::periodic::{eval_v, fourier_coeffs, Summation};
use airy_core::{Exec, InitialDatum, Regularity, TimeFunction, T_REV};

const EXEC: Exec = Exec::Serial;

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn trig_polynomial(modes: Vec<(i64, Complex64)>) -> InitialDatum {
    InitialDatum::closed(
        "trigonometric polynomial",
        move |x| {
            modes
                .iter()
                .map(|(m, a)| a * Complex64::from_polar(1.0, TAU * *m as f64 * x))
                .sum()
        },
        Regularity::SmoothPeriodic,
        false,
    )
}

fn distinct_modes() -> impl Strategy<Value = Vec<(i64, Complex64)>> {
    prop::collection::btree_map(-8i64..=8, complex(), 1..5).prop_map(|m| m.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn energy_is_conserved_by_free_evolution(modes in distinct_modes(), t in 0.0..0.1f64) {
        let expected: f64 = modes.iter().map(|(_, a)| a.norm_sqr()).sum();
        let coeffs = fourier_coeffs(&trig_polynomial(modes), 12, EXEC).unwrap();
        prop_assert!((coeffs.energy() - expected).abs() < 1e-12 * expected.max(1.0));
        prop_assert!((coeffs.evolved(t).energy() - expected).abs() < 1e-12 * expected.max(1.0));
    }

    #[test]
    fn periodic_series_is_one_periodic(modes in distinct_modes(), x in 0.0..1.0f64, t in 0.0..0.05f64) {
        let coeffs = fourier_coeffs(&trig_polynomial(modes), 10, EXEC).unwrap();
        let here = eval_v(&coeffs, x, t).unwrap();
        let there = eval_v(&coeffs, x + 1.0, t).unwrap();
        prop_assert!((here - there).norm() < 1e-11);
    }

    #[test]
    fn coefficients_are_linear_in_the_datum(a in complex(), b in complex(), m1 in -5i64..=5, m2 in -5i64..=5) {
        let f = InitialDatum::fourier_mode(m1, a);
        let g = InitialDatum::fourier_mode(m2, b);
        let sum = trig_polynomial(vec![(m1, a), (m2, b)]);
        let cf = fourier_coeffs(&f, 8, EXEC).unwrap();
        let cg = fourier_coeffs(&g, 8, EXEC).unwrap();
        let cs = fourier_coeffs(&sum, 8, EXEC).unwrap();
        for n in -8i64..=8 {
            prop_assert!((cs.get(n) - cf.get(n) - cg.get(n)).norm() < 1e-12);
        }
    }

    #[test]
    fn real_data_have_conjugate_symmetric_coefficients(poly in prop::collection::vec(-3.0..3.0f64, 1..6)) {
        let coeffs = fourier_coeffs(&InitialDatum::polynomial(poly).unwrap(), 32, EXEC).unwrap();
        for n in 0i64..=32 {
            prop_assert!((coeffs.get(-n) - coeffs.get(n).conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn moments_are_linear_in_the_forcing(
        a in complex(), b in complex(), w1 in -50.0..50.0f64, w2 in -50.0..50.0f64,
        k in -12.0..12.0f64, t in 0.01..0.5f64,
    ) {
        let h1 = TimeFunction::exponentials(vec![(Complex64::new(1.0, 0.0), w1)]).unwrap();
        let h2 = TimeFunction::exponentials(vec![(Complex64::new(1.0, 0.0), w2)]).unwrap();
        let both = TimeFunction::exponentials(vec![(a, w1), (b, w2)]).unwrap();
        let combined = a * moment(&h1, k, t).unwrap() + b * moment(&h2, k, t).unwrap();
        prop_assert!((moment(&both, k, t).unwrap() - combined).norm() < 1e-12);
    }

    #[test]
    fn moments_are_additive_in_time(k in -30.0..30.0f64, split in 0.05..0.95f64, c in complex()) {
        let h = TimeFunction::closed(move |s| c * (1.0 + s * s) + Complex64::new(0.0, s.sin()), 1.0).unwrap();
        let whole = moment(&h, k, 1.0).unwrap();
        let parts = moment_between(&h, k, 0.0, split).unwrap() + moment_between(&h, k, split, 1.0).unwrap();
        prop_assert!((whole - parts).norm() < 1e-11);
    }

    #[test]
    fn decay_exponent_ignores_overall_scale(alpha in 0.5..4.0f64, scale in 1e-6..1e6f64) {
        let magnitudes: Vec<f64> = (0..=200).map(|n| (1.0 + n as f64).powf(-alpha)).collect();
        let scaled: Vec<f64> = magnitudes.iter().map(|m| m * scale).collect();
        let base = decay_exponent(&magnitudes, 20, 200).unwrap();
        let moved = decay_exponent(&scaled, 20, 200).unwrap();
        prop_assert!((base.alpha - moved.alpha).abs() < 1e-9);
        prop_assert!((moved.intercept - base.intercept - scale.ln()).abs() < 1e-8);
    }

    #[test]
    fn jumps_ignore_a_constant_offset(at in 0.1..0.9f64, height in 0.2..3.0f64, offset in complex()) {
        let profile: Vec<Complex64> = (0..=512)
            .map(|i| {
                let x = i as f64 / 512.0;
                Complex64::new(if x < at { 0.0 } else { height }, 0.1 * x)
            })
            .collect();
        let shifted: Vec<Complex64> = profile.iter().map(|u| u + offset).collect();
        let settings = JumpSettings::default();
        let a = detect_jumps(&profile, &settings).unwrap();
        let b = detect_jumps(&shifted, &settings).unwrap();
        prop_assert_eq!(a.len(), 1);
        prop_assert_eq!(a.len(), b.len());
        prop_assert!((a[0].location - b[0].location).abs() < 1e-12);
        prop_assert!((a[0].location - at).abs() <= 2.0 / 512.0);
    }

    #[test]
    fn quasi_correction_depends_on_theta_mod_two_pi(theta in -3.0..3.0f64, turns in -2i32..=2, t in 0.001..0.02f64) {
        let v = fourier_coeffs(&InitialDatum::bump(4).unwrap(), 16, EXEC).unwrap();
        let a = CorrectionSeries::quasiperiodic(theta, &v, Summation::Plain).unwrap();
        let b = CorrectionSeries::quasiperiodic(theta + TAU * turns as f64, &v, Summation::Plain).unwrap();
        prop_assert!((a.shift() - normalize_angle(theta)).abs() < 1e-12);
        prop_assert!((a.shift() - b.shift()).abs() < 1e-12);
        let ca = a.coefficients(16, t, EXEC).unwrap();
        let cb = b.coefficients(16, t, EXEC).unwrap();
        for n in -16i64..=16 {
            prop_assert!((ca.get(n) - cb.get(n)).norm() < 1e-9 * ca.get(n).norm().max(1.0));
        }
    }

    #[test]
    fn correction_vanishes_at_time_zero(c1 in complex(), c2 in complex(), shift in -3.0..3.0f64) {
        let h1 = TimeFunction::closed(move |s| c1 * (1.0 + s), 0.1).unwrap();
        let h2 = TimeFunction::closed(move |s| c2 * s.cos(), 0.1).unwrap();
        let series = CorrectionSeries::new(shift, [None, Some(h1), Some(h2)]).unwrap();
        let xs: Vec<f64> = (0..=16).map(|i| i as f64 / 16.0).collect();
        let w = series.field(32, &xs, &[0.0, 0.05], EXEC).unwrap();
        prop_assert!(w.slice(0).iter().all(|u| u.norm() == 0.0));
    }

    #[test]
    fn zero_forcing_gives_zero_correction(shift in -3.0..3.0f64, t in 0.0..0.1f64) {
        let series = CorrectionSeries::new(shift, [None, Some(TimeFunction::zero()), None]).unwrap();
        let xs: Vec<f64> = (0..=8).map(|i| i as f64 / 8.0).collect();
        prop_assert_eq!(series.field(16, &xs, &[t], EXEC).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn rational_times_shift_by_whole_revivals(q in 1u64..=8, p_raw in 0u64..64, revivals in 1u64..4) {
        let p = p_raw % (q * 3) + 1;
        let t = p as f64 / q as f64 * T_REV;
        let shifted = t + revivals as f64 * T_REV;
        match (classify_time(t, 8).unwrap(), classify_time(shifted, 8).unwrap()) {
            (TimeClass::Rational { p: p0, q: q0 }, TimeClass::Rational { p: p1, q: q1 }) => {
                prop_assert_eq!(q0, q1);
                prop_assert_eq!(p1, p0 + revivals * q0);
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn config_text_round_trips(
        n in 8usize..512, points in 64usize..1024, t in 1e-4..0.1f64,
        theta in -3.0..3.0f64, half_power in 1u32..5, cesaro in any::<bool>(),
    ) {
        let power = 2 * half_power;
        let text = format!(
            "[problem]\nbc.family = quasi_periodic\nbc.theta = {theta:?}\n[datum]\nkind = bump\npower = {power}\n\
             [numerics]\nN = {n}\nP = {points}\nT = {t:?}\ncesaro = {cesaro}\n"
        );
        let cfg = ScenarioConfig::parse(&text).unwrap();
        let again = ScenarioConfig::parse(&cfg.to_ini()).unwrap();
        prop_assert_eq!(cfg.to_ini(), again.to_ini());
        prop_assert_eq!(again.numerics.max_index, n);
        prop_assert_eq!(again.numerics.final_time.to_bits(), t.to_bits());
    }
}
