//! The boundary-forced correction `w = u - v`.
//!
//! Every family reduces to one series on the lattice `κ_n = 2πn - shift`:
//!
//! `w(x,t) = Σ e^{iκ_n x + iκ_n³ t} [-κ_n² H₀(κ_n,t) + iκ_n H₁(κ_n,t) + H₂(κ_n,t)]`
//!
//! with `H_j(κ,t) = ∫₀ᵗ e^{-iκ³s} h_j(s) ds`. The families differ only in
//! the lattice shift and in how the forcings `h_j` are built from traces.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::datum::InitialDatum;
use crate::error::{AiryError, Result};
use crate::exec::Exec;
use crate::field::{BoundaryTraces, Endpoint, SpaceTimeField};
use crate::lattice::{lattice_wavenumber, SpectralCoefficients};
use crate::oscquad::{moments_at, TimeFunction};
use crate::periodic::{lattice_field, trace_function, transform_on_lattice, Summation};

/// Maps `θ` into `(-π, π]`; `θ` and `θ + 2π` give the same lattice up to
/// relabelling `n → n + 1`.
pub fn normalize_angle(theta: f64) -> f64 {
    let r = theta - TAU * (theta / TAU).round();
    if r <= -PI {
        r + TAU
    } else {
        r
    }
}

#[derive(Debug, Clone)]
pub struct CorrectionSeries {
    shift: f64,
    forcing: [Option<TimeFunction>; 3],
    filtered: bool,
}

impl CorrectionSeries {
    /// General form with forcings `h_0, h_1, h_2` (absent means zero).
    pub fn new(shift: f64, forcing: [Option<TimeFunction>; 3]) -> Result<Self> {
        if !shift.is_finite() {
            return Err(AiryError::InvalidInput(format!(
                "lattice shift {shift} is not finite"
            )));
        }
        let forcing = forcing.map(|h| h.filter(|h| !h.is_trivially_zero()));
        Ok(Self {
            shift,
            forcing,
            filtered: false,
        })
    }

    /// `h₁ = u_x(0,t)`, `h₂ = u_xx(0,t) - u_xx(1,t)`.
    pub fn dirichlet(h1: TimeFunction, h2: TimeFunction) -> Result<Self> {
        Self::new(0.0, [None, Some(h1), Some(h2)])
    }

    /// `h₁ = (γ - 1) u_x(1,t)`, `h₂` as for the Dirichlet type.
    pub fn mixed(gamma: f64, trace_ux1: &TimeFunction, h2: TimeFunction) -> Result<Self> {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(AiryError::InvalidInput(format!(
                "gamma = {gamma} outside (0, 1)"
            )));
        }
        Self::dirichlet(trace_ux1.scaled(Complex64::new(gamma - 1.0, 0.0)), h2)
    }

    /// `h_j = (1 - β_j) ∂ₓʲu(0,t)`; a term with `β_j = 1` is dropped.
    pub fn pseudoperiodic(betas: [Complex64; 3], traces_at_0: [TimeFunction; 3]) -> Result<Self> {
        if betas.iter().any(|b| !b.is_finite()) {
            return Err(AiryError::InvalidInput(
                "non-finite pseudo-periodic coupling".into(),
            ));
        }
        let one = Complex64::new(1.0, 0.0);
        let mut traces = traces_at_0.into_iter();
        let forcing = betas.map(|b| {
            let trace = traces.next().expect("three traces");
            (b != one).then(|| trace.scaled(one - b))
        });
        Self::new(0.0, forcing)
    }

    /// Quasi-periodic correction driven by the periodic solution:
    /// `h_j = (e^{iθ} - 1) ∂ₓʲv(0,t)`, on the lattice shifted by `θ`.
    pub fn quasiperiodic(
        theta: f64,
        v_coeffs: &SpectralCoefficients,
        summation: Summation,
    ) -> Result<Self> {
        if !theta.is_finite() {
            return Err(AiryError::InvalidInput(format!(
                "theta = {theta} is not finite"
            )));
        }
        let theta = normalize_angle(theta);
        let factor = Complex64::from_polar(1.0, theta) - 1.0;
        if theta == 0.0 {
            return Self::new(0.0, [None, None, None]);
        }
        let mut forcing: [Option<TimeFunction>; 3] = [None, None, None];
        for (j, slot) in forcing.iter_mut().enumerate() {
            *slot = Some(trace_function(v_coeffs, j, summation)?.scaled(factor));
        }
        Self::new(theta, forcing)
    }

    /// Quasi-periodic correction with inhomogeneous couplings
    /// `∂ₓʲw(0) = e^{iθ}∂ₓʲw(1) + h_j`, `h₀ = 0`.
    pub fn forced_quasi(theta: f64, h1: TimeFunction, h2: TimeFunction) -> Result<Self> {
        if !theta.is_finite() {
            return Err(AiryError::InvalidInput(format!(
                "theta = {theta} is not finite"
            )));
        }
        Self::new(normalize_angle(theta), [None, Some(h1), Some(h2)])
    }

    /// Damps mode `n` by `(1 + cos(πn/(N+1)))/2`. For display only: decay
    /// fits need the unfiltered series.
    pub fn with_raised_cosine_filter(mut self, on: bool) -> Self {
        self.filtered = on;
        self
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    fn filter_weight(&self, n: i64, max_index: usize) -> f64 {
        if self.filtered {
            0.5 * (1.0 + (PI * n as f64 / (max_index as f64 + 1.0)).cos())
        } else {
            1.0
        }
    }

    // [-κ²H₀ + iκH₁ + H₂](κ, t_m) for all requested times.
    fn brackets(&self, kappa: f64, ts: &[f64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); ts.len()];
        let weights = [
            Complex64::new(-kappa * kappa, 0.0),
            Complex64::new(0.0, kappa),
            Complex64::new(1.0, 0.0),
        ];
        for (h, w) in self.forcing.iter().zip(weights) {
            let Some(h) = h else { continue };
            for (slot, m) in out.iter_mut().zip(moments_at(h, kappa, ts)?) {
                *slot += w * m;
            }
        }
        Ok(out)
    }

    /// The bracket `[-κ_n²H₀ + iκ_nH₁ + H₂](t)`, without the free phase
    /// `e^{iκ_n³t}`; its magnitude is what decay fits measure.
    pub fn mode_coefficients(
        &self,
        max_index: usize,
        t: f64,
        exec: Exec,
    ) -> Result<SpectralCoefficients> {
        let n = max_index as i64;
        let values = exec.try_map_indexed(2 * max_index + 1, |idx| {
            let kappa = lattice_wavenumber(idx as i64 - n, self.shift);
            Ok(self.brackets(kappa, &[t])?[0])
        })?;
        SpectralCoefficients::new(self.shift, max_index, values)
    }

    /// Coefficients of `w(·, t)` in the basis `e^{iκ_n x}`.
    pub fn coefficients(
        &self,
        max_index: usize,
        t: f64,
        exec: Exec,
    ) -> Result<SpectralCoefficients> {
        let bracket = self.mode_coefficients(max_index, t, exec)?;
        let values = bracket
            .iter()
            .map(|(n, k, c)| {
                c * self.filter_weight(n, max_index) * Complex64::from_polar(1.0, k * k * k * t)
            })
            .collect();
        SpectralCoefficients::new(self.shift, max_index, values)
    }

    /// Partial sum over `|n| <= N` on a tensor grid; `ts` ascending.
    pub fn field(
        &self,
        max_index: usize,
        xs: &[f64],
        ts: &[f64],
        exec: Exec,
    ) -> Result<SpaceTimeField> {
        if xs.is_empty() || ts.is_empty() {
            return Err(AiryError::InvalidInput("empty evaluation grid".into()));
        }
        if max_index == 0 {
            return Err(AiryError::InvalidInput(
                "max_index must be at least 1".into(),
            ));
        }
        let n = max_index as i64;
        let modes = 2 * max_index + 1;
        // per_mode[idx][m]
        let per_mode = exec.try_map_indexed(modes, |idx| {
            let m = idx as i64 - n;
            let kappa = lattice_wavenumber(m, self.shift);
            let w = self.filter_weight(m, max_index);
            Ok(self
                .brackets(kappa, ts)?
                .into_iter()
                .zip(ts)
                .map(|(c, &t)| c * w * Complex64::from_polar(1.0, kappa * kappa * kappa * t))
                .collect::<Vec<_>>())
        })?;
        let snapshots: Vec<SpectralCoefficients> = (0..ts.len())
            .map(|m| {
                SpectralCoefficients::new(
                    self.shift,
                    max_index,
                    per_mode.iter().map(|c| c[m]).collect(),
                )
            })
            .collect::<Result<_>>()?;
        let p = xs.len();
        let values = exec.map_indexed(p * ts.len(), |idx| {
            let coeffs = &snapshots[idx / p];
            let x = xs[idx % p];
            coeffs
                .iter()
                .map(|(_, k, c)| c * Complex64::from_polar(1.0, k * x))
                .sum()
        });
        SpaceTimeField::new(xs.to_vec(), ts.to_vec(), values)
    }
}

/// Dirichlet-type forcings from traces of `u`: `(u_x(0), u_xx(0) - u_xx(1))`.
pub fn dirichlet_forcings(traces: &BoundaryTraces) -> Result<(TimeFunction, TimeFunction)> {
    let h1 = TimeFunction::from_traces(traces, Endpoint::Left, 1)?;
    Ok((
        h1,
        second_derivative_jump(traces, Complex64::new(1.0, 0.0))?,
    ))
}

/// `u_xx(0) - phase · u_xx(1)`.
fn second_derivative_jump(traces: &BoundaryTraces, phase: Complex64) -> Result<TimeFunction> {
    derivative_jump(traces, 2, phase)
}

fn derivative_jump(
    traces: &BoundaryTraces,
    order: usize,
    phase: Complex64,
) -> Result<TimeFunction> {
    let left = traces.series(Endpoint::Left, order);
    let right = traces.series(Endpoint::Right, order);
    TimeFunction::sampled(
        traces.dt(),
        left.iter().zip(right).map(|(a, b)| a - phase * b).collect(),
    )
}

/// `(u_x(0) - e^{iθ}u_x(1), u_xx(0) - e^{iθ}u_xx(1))`.
pub fn forced_quasi_forcings(
    theta: f64,
    traces: &BoundaryTraces,
) -> Result<(TimeFunction, TimeFunction)> {
    let phase = Complex64::from_polar(1.0, theta);
    Ok((
        derivative_jump(traces, 1, phase)?,
        derivative_jump(traces, 2, phase)?,
    ))
}

pub fn w_dirichlet(
    h1: &TimeFunction,
    h2: &TimeFunction,
    max_index: usize,
    xs: &[f64],
    ts: &[f64],
    exec: Exec,
) -> Result<SpaceTimeField> {
    CorrectionSeries::dirichlet(h1.clone(), h2.clone())?.field(max_index, xs, ts, exec)
}

pub fn w_mixed(
    gamma: f64,
    trace_ux1: &TimeFunction,
    h2: &TimeFunction,
    max_index: usize,
    xs: &[f64],
    ts: &[f64],
    exec: Exec,
) -> Result<SpaceTimeField> {
    CorrectionSeries::mixed(gamma, trace_ux1, h2.clone())?.field(max_index, xs, ts, exec)
}

/// Uses the left-endpoint traces only.
pub fn w_pseudoperiodic(
    betas: [Complex64; 3],
    traces_at_0: &BoundaryTraces,
    max_index: usize,
    xs: &[f64],
    ts: &[f64],
    exec: Exec,
) -> Result<SpaceTimeField> {
    let traces = [0, 1, 2].map(|j| TimeFunction::from_traces(traces_at_0, Endpoint::Left, j));
    let [a, b, c] = traces;
    CorrectionSeries::pseudoperiodic(betas, [a?, b?, c?])?.field(max_index, xs, ts, exec)
}

pub fn w_quasiperiodic(
    theta: f64,
    v_coeffs: &SpectralCoefficients,
    max_index: usize,
    xs: &[f64],
    ts: &[f64],
    summation: Summation,
    exec: Exec,
) -> Result<SpaceTimeField> {
    CorrectionSeries::quasiperiodic(theta, v_coeffs, summation)?.field(max_index, xs, ts, exec)
}

pub fn w_forced_quasi(
    theta: f64,
    h1: &TimeFunction,
    h2: &TimeFunction,
    max_index: usize,
    xs: &[f64],
    ts: &[f64],
    exec: Exec,
) -> Result<SpaceTimeField> {
    CorrectionSeries::forced_quasi(theta, h1.clone(), h2.clone())?.field(max_index, xs, ts, exec)
}

/// `f̂(κ_n)` on the lattice `κ_n = 2πn - θ`: the coefficients of the
/// solution with homogeneous quasi-periodic conditions.
pub fn quasi_coefficients(
    f: &InitialDatum,
    theta: f64,
    max_index: usize,
    exec: Exec,
) -> Result<SpectralCoefficients> {
    transform_on_lattice(f, normalize_angle(theta), max_index, exec)
}

/// `Σ f̂(κ_n) e^{iκ_n x + iκ_n³ t}`.
pub fn quasi_field(
    coeffs: &SpectralCoefficients,
    xs: &[f64],
    ts: &[f64],
    exec: Exec,
) -> Result<SpaceTimeField> {
    lattice_field(coeffs, xs, ts, exec)
}

/// `u = v + w` on a shared grid.
pub fn compose_u(v: &SpaceTimeField, w: &SpaceTimeField) -> Result<SpaceTimeField> {
    v.zip_with(w, |a, b| a + b)
}
