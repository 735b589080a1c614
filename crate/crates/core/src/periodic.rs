//! The periodic problem: Fourier coefficients of the datum, the series
//! `v(x,t) = Σ c_n e^{i k_n x + i k_n^3 t}` and its boundary traces.
//!
//! All sums run over ascending `n`, so results do not depend on the
//! execution policy.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::datum::{InitialDatum, Regularity};
use crate::error::{AiryError, Result};
use crate::exec::Exec;
use crate::field::SpaceTimeField;
use crate::lattice::{lattice_wavenumber, SpectralCoefficients};
use crate::oscquad::TimeFunction;
use crate::quadrature::adaptive_gk15;

const COEFF_TOL: f64 = 1e-12;

/// How a term-wise differentiated series is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    #[default]
    Plain,
    /// Arithmetic means of partial sums: weights `1 - |n|/(N+1)`.
    Cesaro,
}

impl Summation {
    pub fn weight(self, n: i64, max_index: usize) -> f64 {
        match self {
            Summation::Plain => 1.0,
            Summation::Cesaro => 1.0 - n.unsigned_abs() as f64 / (max_index as f64 + 1.0),
        }
    }
}

/// `c_n = ∫₀¹ e^{-2πinx} f(x) dx` for `|n| <= N`.
pub fn fourier_coeffs(
    f: &InitialDatum,
    max_index: usize,
    exec: Exec,
) -> Result<SpectralCoefficients> {
    if max_index == 0 {
        return Err(AiryError::InvalidInput(
            "max_index must be at least 1".into(),
        ));
    }
    if let Some(samples) = f.samples() {
        let m = samples.len();
        let needed = 2 * max_index + 2;
        if m < needed {
            return Err(AiryError::Aliasing {
                samples: m,
                max_index,
                needed,
            });
        }
        let spectrum = sample_spectrum(samples);
        let coeffs = SpectralCoefficients::from_fn(0.0, max_index, |n| {
            spectrum[n.rem_euclid(m as i64) as usize]
        })?;
        return finish(coeffs, f);
    }
    transform_on_lattice(f, 0.0, max_index, exec)
}

/// `∫₀¹ e^{-i(2πn - shift)x} f(x) dx` for `|n| <= N`, by quadrature for
/// closed-form data and exactly from the trigonometric interpolant for
/// sampled data.
pub fn transform_on_lattice(
    f: &InitialDatum,
    shift: f64,
    max_index: usize,
    exec: Exec,
) -> Result<SpectralCoefficients> {
    if max_index == 0 {
        return Err(AiryError::InvalidInput(
            "max_index must be at least 1".into(),
        ));
    }
    let n = max_index as i64;
    let mirror = shift == 0.0 && f.is_real_valued();
    let values = if let Some(samples) = f.samples() {
        let spectrum = sample_spectrum(samples);
        exec.map_indexed(2 * max_index + 1, |idx| {
            interpolant_transform(&spectrum, lattice_wavenumber(idx as i64 - n, shift))
        })
    } else {
        exec.try_map_indexed(2 * max_index + 1, |idx| {
            let m = idx as i64 - n;
            if mirror && m < 0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            closed_transform(f, lattice_wavenumber(m, shift))
        })?
    };
    let coeffs = SpectralCoefficients::new(shift, max_index, values)?;
    finish(coeffs, f)
}

fn finish(coeffs: SpectralCoefficients, f: &InitialDatum) -> Result<SpectralCoefficients> {
    let coeffs = if coeffs.shift() == 0.0 && f.is_real_valued() {
        coeffs.tagged_real()?
    } else {
        coeffs
    };
    Ok(coeffs.with_regularity(f.regularity()))
}

fn sample_spectrum(samples: &[Complex64]) -> Vec<Complex64> {
    let m = samples.len();
    let mut spectrum = samples.to_vec();
    rustfft::FftPlanner::new()
        .plan_fft_forward(m)
        .process(&mut spectrum);
    let scale = 1.0 / m as f64;
    spectrum.iter_mut().for_each(|c| *c *= scale);
    spectrum
}

// ∫₀¹ e^{-ikx} Σ_m s_m e^{2πi m x} dx with the Nyquist term split in two.
fn interpolant_transform(spectrum: &[Complex64], k: f64) -> Complex64 {
    let m = spectrum.len();
    let half = m / 2;
    let mut acc = Complex64::new(0.0, 0.0);
    for (idx, c) in spectrum.iter().enumerate() {
        if idx == half {
            let q = TAU * half as f64;
            acc += c
                * 0.5
                * (unit_interval_phase_integral(q - k) + unit_interval_phase_integral(-q - k));
            continue;
        }
        let mode = if idx < half {
            idx as f64
        } else {
            idx as f64 - m as f64
        };
        acc += c * unit_interval_phase_integral(TAU * mode - k);
    }
    acc
}

/// `∫₀¹ e^{iνx} dx`.
pub(crate) fn unit_interval_phase_integral(nu: f64) -> Complex64 {
    let half = 0.5 * nu;
    let sinc = if half.abs() < 1e-8 {
        1.0 - half * half / 6.0
    } else {
        half.sin() / half
    };
    Complex64::from_polar(sinc, half)
}

fn closed_transform(f: &InitialDatum, k: f64) -> Result<Complex64> {
    let periods = ((k.abs() / TAU).ceil() as usize).max(1);
    let mut cuts: Vec<f64> = (0..=periods).map(|j| j as f64 / periods as f64).collect();
    cuts.extend_from_slice(f.breakpoints());
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let tol = COEFF_TOL / cuts.len() as f64;
    let integrand = |x: f64| {
        let value = f.eval(x).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        value * Complex64::from_polar(1.0, -k * x)
    };
    let mut total = Complex64::new(0.0, 0.0);
    for w in cuts.windows(2) {
        total += adaptive_gk15(integrand, w[0], w[1], tol).map_err(|_| {
            AiryError::InvalidInput(format!(
                "datum `{}` is not finite on [{}, {}]",
                f.label(),
                w[0],
                w[1]
            ))
        })?;
    }
    Ok(total)
}

#[inline]
pub(crate) fn mode_term(c: Complex64, k: f64, x: f64, t: f64) -> Complex64 {
    c * Complex64::from_polar(1.0, k * x + k * k * k * t)
}

/// `Σ c_n e^{i κ_n x + i κ_n^3 t}` over the stored lattice, ascending `n`.
pub fn lattice_sum(coeffs: &SpectralCoefficients, x: f64, t: f64) -> Complex64 {
    coeffs.iter().map(|(_, k, c)| mode_term(c, k, x, t)).sum()
}

fn require_unshifted(coeffs: &SpectralCoefficients) -> Result<()> {
    if coeffs.shift() != 0.0 {
        return Err(AiryError::ContractViolation(format!(
            "periodic evaluation given a lattice shifted by {}",
            coeffs.shift()
        )));
    }
    Ok(())
}

/// `v(x,t)` truncated to `|n| <= N`.
pub fn eval_v(coeffs: &SpectralCoefficients, x: f64, t: f64) -> Result<Complex64> {
    require_unshifted(coeffs)?;
    Ok(lattice_sum(coeffs, x, t))
}

/// Evaluates a lattice series on a tensor grid; every point uses the same
/// ascending-`n` sum as [`lattice_sum`].
pub fn lattice_field(
    coeffs: &SpectralCoefficients,
    xs: &[f64],
    ts: &[f64],
    exec: Exec,
) -> Result<SpaceTimeField> {
    if xs.is_empty() || ts.is_empty() {
        return Err(AiryError::InvalidInput("empty evaluation grid".into()));
    }
    let p = xs.len();
    let values = exec.map_indexed(p * ts.len(), |idx| {
        lattice_sum(coeffs, xs[idx % p], ts[idx / p])
    });
    SpaceTimeField::new(xs.to_vec(), ts.to_vec(), values)
}

pub fn eval_v_field(
    coeffs: &SpectralCoefficients,
    xs: &[f64],
    ts: &[f64],
    exec: Exec,
) -> Result<SpaceTimeField> {
    require_unshifted(coeffs)?;
    lattice_field(coeffs, xs, ts, exec)
}

fn check_trace_regularity(
    coeffs: &SpectralCoefficients,
    order: usize,
    summation: Summation,
) -> Result<()> {
    if order > 2 {
        return Err(AiryError::InvalidInput(format!(
            "trace order {order} exceeds 2"
        )));
    }
    if summation == Summation::Cesaro {
        return Ok(());
    }
    let refuse = match (coeffs.regularity(), order) {
        (None, _) | (_, 0) => None,
        (Some(Regularity::BoundedVariation), _) => Some("bounded-variation data"),
        (Some(Regularity::SmoothNonmatching), 2) => {
            Some("data whose periodic extension is not smooth")
        }
        _ => None,
    };
    match refuse {
        Some(why) => Err(AiryError::DivergentTrace {
            order,
            reason: format!(
                "term-wise series diverges for {why}; request Cesàro summation explicitly"
            ),
        }),
        None => Ok(()),
    }
}

/// `∂ₓʲv(0, t_m)`, equal to the value at `x = 1` by periodicity.
pub fn boundary_trace_v(
    coeffs: &SpectralCoefficients,
    order: usize,
    ts: &[f64],
    summation: Summation,
) -> Result<Vec<Complex64>> {
    require_unshifted(coeffs)?;
    let h = trace_function(coeffs, order, summation)?;
    ts.iter().map(|&t| h.eval(t)).collect()
}

/// `∂ₓʲv(0, ·)` as an exponential sum `Σ (ik_n)ʲ c_n e^{i k_n^3 s}`.
pub fn trace_function(
    coeffs: &SpectralCoefficients,
    order: usize,
    summation: Summation,
) -> Result<TimeFunction> {
    require_unshifted(coeffs)?;
    check_trace_regularity(coeffs, order, summation)?;
    let n_max = coeffs.max_index();
    let terms = coeffs
        .iter()
        .map(|(n, k, c)| {
            let amp = Complex64::new(0.0, k).powu(order as u32) * c * summation.weight(n, n_max);
            (amp, k * k * k)
        })
        .collect();
    TimeFunction::exponentials(terms)
}
