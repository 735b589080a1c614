mod common;

use std::f64::consts::{PI, TAU};

use approx::assert_abs_diff_eq;
use num_complex::Complex64;

use airy_core::analysis::{
    classify_time, decay_exponent, detect_jumps, symmetric_magnitudes, JumpSettings, TimeClass,
};
use airy_core::correction::{
    compose_u, normalize_angle, quasi_coefficients, quasi_field, w_quasiperiodic, CorrectionSeries,
};
use airy_core::field::uniform_space_grid;
use airy_core::oscquad::{fourier_integral, moment, moment_batch, moments_at};
use airy_core::periodic::{eval_v, eval_v_field, fourier_coeffs, transform_on_lattice, Summation};
use airy_core::reference::{solve_reference, ReferenceConfig};
use airy_core::{BoundarySpec, Exec, InitialDatum, Regularity, TimeFunction, T_REV};

use common::{adaptive_simpson, fourier_oracle, log_spaced, oscillatory_oracle};

const EXEC: Exec = Exec::Parallel;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn polynomial_coefficients_match_quadrature() {
    let f = InitialDatum::polynomial(vec![0.3, -1.0, 2.0, 0.5]).unwrap();
    let coeffs = fourier_coeffs(&f, 40, EXEC).unwrap();
    for n in [-40, -7, -1, 0, 1, 3, 25, 40] {
        let k = TAU * n as f64;
        let want = fourier_oracle(|x| c(0.3 - x + 2.0 * x * x + 0.5 * x * x * x, 0.0), k);
        assert_abs_diff_eq!(coeffs.get(n).re, want.re, epsilon = 1e-13);
        assert_abs_diff_eq!(coeffs.get(n).im, want.im, epsilon = 1e-13);
    }
}

#[test]
fn step_coefficients_match_closed_form() {
    let f = InitialDatum::step(0.2, 0.7).unwrap();
    let coeffs = fourier_coeffs(&f, 64, EXEC).unwrap();
    for n in -64i64..=64 {
        let want = if n == 0 {
            c(0.5, 0.0)
        } else {
            let k = TAU * n as f64;
            (Complex64::from_polar(1.0, -k * 0.2) - Complex64::from_polar(1.0, -k * 0.7))
                / c(0.0, k)
        };
        assert!((coeffs.get(n) - want).norm() < 1e-13, "n = {n}");
    }
}

#[test]
fn shifted_lattice_transform_matches_quadrature() {
    let f = InitialDatum::bump(4).unwrap();
    let shift = 0.8;
    let coeffs = transform_on_lattice(&f, shift, 20, EXEC).unwrap();
    for n in [-20, -3, 0, 2, 11, 20] {
        let k = TAU * n as f64 - shift;
        let want = fourier_oracle(|x| c((PI * x).sin().powi(4), 0.0), k);
        assert!((coeffs.get(n) - want).norm() < 1e-13, "n = {n}");
    }
}

#[test]
fn fourier_integral_of_cubic_samples_is_exact() {
    let values: Vec<Complex64> = (0..=64)
        .map(|i| {
            let x = i as f64 / 64.0;
            c(1.0 - 2.0 * x + x * x * x, x * x)
        })
        .collect();
    for k in [-30.0, -1.0, 0.0, 2.5, 40.0] {
        let want = fourier_oracle(|x| c(1.0 - 2.0 * x + x * x * x, x * x), k);
        let got = fourier_integral(&values, k).unwrap();
        assert!((got - want).norm() < 1e-13, "k = {k}");
    }
}

fn smooth_forcing(s: f64) -> Complex64 {
    c((1.3 * s).cos() + s * s, (0.7 * s).sin() * (-s).exp())
}

#[test]
fn closed_form_moments_match_oracle_across_regimes() {
    let h = TimeFunction::closed(smooth_forcing, 1.0).unwrap();
    for omega in log_spaced(0.01, 1e6, 40) {
        for sign in [1.0, -1.0] {
            let k = sign * omega.cbrt();
            let got = moment(&h, k, 1.0).unwrap();
            let want = oscillatory_oracle(smooth_forcing, k * k * k, 1.0);
            assert!(
                (got - want).norm() <= 1e-9 * want.norm() + 1e-14,
                "ω = {omega}"
            );
        }
    }
}

#[test]
fn moments_agree_with_adaptive_simpson() {
    let h = TimeFunction::closed(smooth_forcing, 0.5).unwrap();
    for k in [0.5, 3.0, -4.0] {
        let omega: f64 = k * k * k;
        let integrand = move |s: f64| Complex64::from_polar(1.0, -omega * s) * smooth_forcing(s);
        let want = adaptive_simpson(&integrand, 0.0, 0.5, 1e-14);
        assert!(
            (moment(&h, k, 0.5).unwrap() - want).norm() < 1e-11,
            "k = {k}"
        );
    }
}

#[test]
fn sampled_cubic_moments_are_exact() {
    let dt = 1e-3;
    let cubic = |s: f64| c(1.0 + 3.0 * s - 40.0 * s * s + 500.0 * s * s * s, -2.0 * s);
    let values = (0..=200).map(|m| cubic(m as f64 * dt)).collect();
    let h = TimeFunction::sampled(dt, values).unwrap();
    for k in [0.0, 2.0, 9.0, -15.0, 60.0] {
        for t in [0.2, 0.1234] {
            let want = oscillatory_oracle(cubic, k * k * k, t);
            let got = moment(&h, k, t).unwrap();
            assert!(
                (got - want).norm() < 1e-12 * want.norm() + 1e-14,
                "k = {k}, t = {t}"
            );
        }
    }
}

#[test]
fn exponential_sum_moments_are_closed_form() {
    let terms = vec![(c(1.0, 0.5), 3.0), (c(-0.2, 0.0), 250.0)];
    let h = TimeFunction::exponentials(terms.clone()).unwrap();
    let eval = move |s: f64| -> Complex64 {
        terms
            .iter()
            .map(|(a, w)| a * Complex64::from_polar(1.0, w * s))
            .sum()
    };
    for k in [0.0, 1.0, 6.3, -9.0] {
        let want = oscillatory_oracle(eval.clone(), k * k * k, 0.3);
        assert!((moment(&h, k, 0.3).unwrap() - want).norm() < 1e-12);
    }
}

#[test]
fn batched_and_cumulative_moments_agree_with_single_calls() {
    let h = TimeFunction::closed(smooth_forcing, 1.0).unwrap();
    let ks = [0.3, -2.0, 7.5, 20.0];
    let batch = moment_batch(&h, &ks, 0.8, EXEC).unwrap();
    for (k, b) in ks.iter().zip(&batch) {
        assert!((moment(&h, *k, 0.8).unwrap() - b).norm() < 1e-15);
    }
    let times = [0.1, 0.4, 0.4, 1.0];
    let cumulative = moments_at(&h, 5.0, &times).unwrap();
    for (t, m) in times.iter().zip(&cumulative) {
        assert!((moment(&h, 5.0, *t).unwrap() - m).norm() < 1e-12);
    }
}

#[test]
fn dirichlet_modes_match_direct_quadrature() {
    let h1 = |s: f64| c(s.sin(), 0.2 * s);
    let h2 = |s: f64| c(1.0 - (-3.0 * s).exp(), 0.0);
    let series = CorrectionSeries::dirichlet(
        TimeFunction::closed(h1, 0.02).unwrap(),
        TimeFunction::closed(h2, 0.02).unwrap(),
    )
    .unwrap();
    let t = 0.015;
    let coeffs = series.coefficients(32, t, EXEC).unwrap();
    for n in [-32, -5, 0, 1, 17, 32] {
        let k = TAU * n as f64;
        let omega = k * k * k;
        let bracket =
            c(0.0, k) * oscillatory_oracle(h1, omega, t) + oscillatory_oracle(h2, omega, t);
        let want = Complex64::from_polar(1.0, omega * t) * bracket;
        assert!((coeffs.get(n) - want).norm() < 1e-12, "n = {n}");
    }
}

#[test]
fn quasi_periodic_modes_match_quadrature_of_single_mode_traces() {
    // f = e^{2πix}, θ = π: every trace of v is a single exponential.
    let theta = PI;
    let f = InitialDatum::fourier_mode(1, c(1.0, 0.0));
    let v_coeffs = fourier_coeffs(&f, 4, EXEC).unwrap();
    let series = CorrectionSeries::quasiperiodic(theta, &v_coeffs, Summation::Plain).unwrap();
    let t = 0.01;
    let modes = series.mode_coefficients(64, t, EXEC).unwrap();
    let k1 = TAU;
    let factor = Complex64::from_polar(1.0, theta) - 1.0;
    for n in [-64, -3, 0, 1, 2, 40, 64] {
        let kappa = TAU * n as f64 - normalize_angle(theta);
        let trace = |j: i32| {
            move |s: f64| factor * c(0.0, k1).powi(j) * Complex64::from_polar(1.0, k1.powi(3) * s)
        };
        let omega = kappa.powi(3);
        let want = -kappa * kappa * oscillatory_oracle(trace(0), omega, t)
            + c(0.0, kappa) * oscillatory_oracle(trace(1), omega, t)
            + oscillatory_oracle(trace(2), omega, t);
        assert!(
            (modes.get(n) - want).norm() < 1e-10 * want.norm().max(1.0),
            "n = {n}"
        );
    }
}

#[test]
fn periodic_plus_quasi_correction_converges_to_shifted_series_inside() {
    let f = InitialDatum::bump(6).unwrap();
    let theta = 1.0;
    let xs = uniform_space_grid(64).unwrap();
    let ts = [0.0, 0.005, 0.01];
    let exact = quasi_field(
        &quasi_coefficients(&f, theta, 256, EXEC).unwrap(),
        &xs,
        &ts,
        EXEC,
    )
    .unwrap();
    let mut previous = f64::INFINITY;
    for n in [64, 256, 1024] {
        let v_coeffs = fourier_coeffs(&f, n, EXEC).unwrap();
        let v = eval_v_field(&v_coeffs, &xs, &ts, EXEC).unwrap();
        let w = w_quasiperiodic(theta, &v_coeffs, n, &xs, &ts, Summation::Plain, EXEC).unwrap();
        let u = compose_u(&v, &w).unwrap();
        let err = (u.value(16, 2) - exact.value(16, 2)).norm();
        assert!(err < previous / 3.0, "N = {n}: {err}");
        previous = err;
    }
    assert!(previous < 2e-4);
}

#[test]
fn reference_solver_matches_shifted_series() {
    let f = InitialDatum::bump(6).unwrap();
    let theta = 1.0;
    let cfg = ReferenceConfig::new(256, 1e-5, 0.01)
        .unwrap()
        .with_snapshot_every(500)
        .unwrap();
    let solution =
        solve_reference(&f, &BoundarySpec::quasi_periodic(theta).unwrap(), &cfg).unwrap();
    let coeffs = quasi_coefficients(&f, theta, 256, EXEC).unwrap();
    let exact = quasi_field(&coeffs, solution.field.xs(), solution.field.ts(), EXEC).unwrap();
    assert!(exact.max_abs_diff(&solution.field).unwrap() < 5e-5);
}

#[test]
fn reference_solver_matches_periodic_series_for_smooth_data() {
    let f = InitialDatum::closed(
        "exp(cos 2πx)",
        |x| c((TAU * x).cos().exp(), 0.0),
        Regularity::SmoothPeriodic,
        true,
    );
    let cfg = ReferenceConfig::new(256, 1e-5, 0.005).unwrap();
    let solution = solve_reference(&f, &BoundarySpec::periodic(), &cfg).unwrap();
    let coeffs = fourier_coeffs(&f, 64, EXEC).unwrap();
    let exact = eval_v_field(&coeffs, solution.field.xs(), solution.field.ts(), EXEC).unwrap();
    assert!(exact.max_abs_diff(&solution.field).unwrap() < 1e-5);
}

#[test]
fn single_mode_evolution_is_closed_form() {
    let f = InitialDatum::fourier_mode(3, c(0.5, -0.25));
    let coeffs = fourier_coeffs(&f, 8, EXEC).unwrap();
    for (x, t) in [(0.1, 0.0), (0.37, 0.004), (0.9, 0.02)] {
        let k = TAU * 3.0;
        let want = c(0.5, -0.25) * Complex64::from_polar(1.0, k * x + k * k * k * t);
        assert!((eval_v(&coeffs, x, t).unwrap() - want).norm() < 1e-13);
    }
}

#[test]
fn step_revival_at_a_quarter_period_is_piecewise_constant() {
    // At t = T_rev/4 the profile is a finite superposition of shifted steps.
    let f = InitialDatum::step(0.0, 0.5).unwrap();
    let coeffs = fourier_coeffs(&f, 2048, EXEC).unwrap();
    let xs = uniform_space_grid(8192).unwrap();
    let field = eval_v_field(&coeffs, &xs, &[T_REV / 4.0], EXEC).unwrap();
    let settings = JumpSettings {
        periodic: true,
        ..JumpSettings::default()
    };
    let jumps = detect_jumps(field.slice(0), &settings).unwrap();
    assert!(jumps.iter().any(|j| j.magnitude > 0.3));
    assert_eq!(
        classify_time(T_REV / 4.0, 8).unwrap(),
        TimeClass::Rational { p: 1, q: 4 }
    );
}

#[test]
fn decay_of_linear_ramp_coefficients_is_first_order() {
    // |c_n| = 1/(2π|n|) exactly for n ≠ 0.
    let f = InitialDatum::polynomial(vec![0.0, 1.0]).unwrap();
    let coeffs = fourier_coeffs(&f, 256, EXEC).unwrap();
    let report = decay_exponent(&symmetric_magnitudes(&coeffs), 16, 256).unwrap();
    assert!((report.alpha - 1.0).abs() < 1e-6, "α = {}", report.alpha);
}
