use std::path::Path;

use num_complex::Complex64;

use airy_core::analysis::{
    classify_time, decay_exponent, detect_jumps, symmetric_magnitudes, DecayReport, Jump, TimeClass,
};
use airy_core::config::ScenarioConfig;
use airy_core::correction::{
    compose_u, dirichlet_forcings, forced_quasi_forcings, quasi_coefficients, quasi_field,
    CorrectionSeries,
};
use airy_core::field::uniform_space_grid;
use airy_core::periodic::{eval_v_field, fourier_coeffs, Summation};
use airy_core::reference::{solve_reference_with, ReferenceConfig, ReferenceSolution};
use airy_core::{
    AiryError, BoundaryFamily, Endpoint, Exec, SpaceTimeField, SpectralCoefficients, TimeFunction,
    T_REV,
};

/// A failure tagged with the pipeline stage that produced it.
#[derive(Debug, thiserror::Error)]
#[error("{stage}: {source}")]
pub struct StageError {
    pub stage: &'static str,
    #[source]
    pub source: AiryError,
}

impl StageError {
    /// Malformed input is a configuration problem; everything else is a
    /// numerical failure.
    pub fn is_config(&self) -> bool {
        self.stage == "config" || matches!(self.source, AiryError::Config { .. } | AiryError::Io(_))
    }
}

trait Stage<T> {
    fn stage(self, stage: &'static str) -> Result<T, StageError>;
}

impl<T> Stage<T> for airy_core::Result<T> {
    fn stage(self, stage: &'static str) -> Result<T, StageError> {
        self.map_err(|source| StageError { stage, source })
    }
}

pub struct CoefficientSnapshot {
    pub series: &'static str,
    pub time: f64,
    pub coeffs: SpectralCoefficients,
}

pub struct DecayRow {
    pub series: &'static str,
    pub time: f64,
    pub report: DecayReport,
}

pub struct JumpRow {
    pub time: f64,
    pub jump: Jump,
}

pub struct ScenarioResult {
    pub u: SpaceTimeField,
    pub v: SpaceTimeField,
    pub w: SpaceTimeField,
    pub coefficients: Vec<CoefficientSnapshot>,
    pub decay: Vec<DecayRow>,
    pub jumps: Vec<JumpRow>,
    /// Ordered `key: value` pairs for `summary.txt`.
    pub summary: Vec<(&'static str, String)>,
}

fn needs_traces(family: &BoundaryFamily) -> bool {
    !matches!(
        family,
        BoundaryFamily::Periodic | BoundaryFamily::QuasiPeriodic { .. }
    )
}

fn reference_config(cfg: &ScenarioConfig) -> Result<ReferenceConfig, StageError> {
    let n = &cfg.numerics;
    let base = ReferenceConfig::new(n.points, n.dt, n.final_time).stage("config")?;
    if base.steps() % n.snapshots != 0 {
        return Err(StageError {
            stage: "config",
            source: AiryError::InvalidInput(format!(
                "{} time steps cannot be split into {} equal snapshot intervals",
                base.steps(),
                n.snapshots
            )),
        });
    }
    let every = base.steps() / n.snapshots;
    base.with_snapshot_every(every)
        .and_then(|c| c.with_levels(n.levels))
        .stage("config")
}

fn traces_at_left(solution: &ReferenceSolution) -> airy_core::Result<[TimeFunction; 3]> {
    let [a, b, c] =
        [0, 1, 2].map(|j| TimeFunction::from_traces(&solution.traces, Endpoint::Left, j));
    Ok([a?, b?, c?])
}

fn fmt_time_class(class: TimeClass) -> String {
    match class {
        TimeClass::Rational { p, q } => format!("rational {p}/{q}"),
        TimeClass::Generic => "generic".into(),
    }
}

/// Runs the full pipeline for one scenario.
pub fn compute(
    cfg: &ScenarioConfig,
    base_dir: &Path,
    exec: Exec,
) -> Result<ScenarioResult, StageError> {
    let n = &cfg.numerics;
    let family = cfg.boundary.family();
    let datum = cfg.datum.build(base_dir).stage("datum")?;
    let summation = if n.cesaro {
        Summation::Cesaro
    } else {
        Summation::Plain
    };

    let run_reference = cfg.reference || needs_traces(family);
    let reference = if run_reference {
        let ref_cfg = reference_config(cfg)?;
        Some(solve_reference_with(&datum, &cfg.boundary, &ref_cfg, exec).stage("reference")?)
    } else {
        None
    };

    let xs = uniform_space_grid(n.points).stage("config")?;
    let ts: Vec<f64> = match &reference {
        Some(sol) => sol.field.ts().to_vec(),
        None => (0..=n.snapshots)
            .map(|m| m as f64 * n.final_time / n.snapshots as f64)
            .collect(),
    };

    let (v_coeffs, v) = match family {
        BoundaryFamily::QuasiCoupled { theta, .. } => {
            let coeffs = quasi_coefficients(&datum, *theta, n.max_index, exec).stage("periodic")?;
            let field = quasi_field(&coeffs, &xs, &ts, exec).stage("periodic")?;
            (coeffs, field)
        }
        _ => {
            let coeffs = fourier_coeffs(&datum, n.max_index, exec).stage("periodic")?;
            let field = eval_v_field(&coeffs, &xs, &ts, exec).stage("periodic")?;
            (coeffs, field)
        }
    };

    let traces = || {
        reference
            .as_ref()
            .expect("trace-driven families always run the reference solver")
    };
    let series: Option<CorrectionSeries> = match family {
        BoundaryFamily::Periodic => None,
        BoundaryFamily::DirichletType => {
            let (h1, h2) = dirichlet_forcings(&traces().traces).stage("correction")?;
            Some(CorrectionSeries::dirichlet(h1, h2).stage("correction")?)
        }
        BoundaryFamily::MixedDirichlet { gamma } => {
            let ux1 = TimeFunction::from_traces(&traces().traces, Endpoint::Right, 1)
                .stage("correction")?;
            let (_, h2) = dirichlet_forcings(&traces().traces).stage("correction")?;
            Some(CorrectionSeries::mixed(*gamma, &ux1, h2).stage("correction")?)
        }
        BoundaryFamily::PseudoPeriodic { betas } => {
            let left = traces_at_left(traces()).stage("correction")?;
            Some(CorrectionSeries::pseudoperiodic(*betas, left).stage("correction")?)
        }
        BoundaryFamily::QuasiPeriodic { theta } => Some(
            CorrectionSeries::quasiperiodic(*theta, &v_coeffs, summation).stage("correction")?,
        ),
        BoundaryFamily::QuasiCoupled { theta, .. } => {
            let (h1, h2) = forced_quasi_forcings(*theta, &traces().traces).stage("correction")?;
            Some(CorrectionSeries::forced_quasi(*theta, h1, h2).stage("correction")?)
        }
    };

    let w = match &series {
        Some(s) => s.field(n.max_index, &xs, &ts, exec).stage("correction")?,
        None => SpaceTimeField::zeros(xs.clone(), ts.clone()).stage("correction")?,
    };
    let u = compose_u(&v, &w).stage("correction")?;

    let mut coefficients = Vec::new();
    for &t in &ts {
        coefficients.push(CoefficientSnapshot {
            series: "v",
            time: t,
            coeffs: v_coeffs.evolved(t),
        });
        let w_coeffs = match &series {
            Some(s) => s.coefficients(n.max_index, t, exec).stage("correction")?,
            None => {
                SpectralCoefficients::zeros(v_coeffs.shift(), n.max_index).stage("correction")?
            }
        };
        coefficients.push(CoefficientSnapshot {
            series: "w",
            time: t,
            coeffs: w_coeffs,
        });
    }

    let a = &cfg.analysis;
    // Fits are skipped where too few coefficients are non-zero.
    let decay: Vec<DecayRow> = coefficients
        .iter()
        .filter_map(|snap| {
            let mags = symmetric_magnitudes(&snap.coeffs);
            decay_exponent(&mags, a.n_lo, a.n_hi)
                .ok()
                .map(|report| DecayRow {
                    series: snap.series,
                    time: snap.time,
                    report,
                })
        })
        .collect();

    let mut jump_settings = a.jumps;
    jump_settings.periodic = matches!(family, BoundaryFamily::Periodic);
    let mut jumps = Vec::new();
    for (m, &t) in ts.iter().enumerate() {
        for jump in detect_jumps(u.slice(m), &jump_settings).stage("analysis")? {
            jumps.push(JumpRow { time: t, jump });
        }
    }

    let final_time = *ts.last().expect("time grid is non-empty");
    let final_decay = decay
        .iter()
        .rev()
        .find(|row| row.series == "w" && row.time == final_time);
    let mut summary: Vec<(&'static str, String)> = vec![
        ("family", family.name().to_string()),
        ("datum", cfg.datum.kind().to_string()),
        ("N", n.max_index.to_string()),
        ("P", n.points.to_string()),
        ("T", format!("{:?}", n.final_time)),
        ("snapshots", (ts.len() - 1).to_string()),
        ("t_rev", format!("{T_REV:?}")),
        (
            "final_time_class",
            fmt_time_class(classify_time(final_time, a.q_max).stage("analysis")?),
        ),
        ("reference", run_reference.to_string()),
        ("max_abs_u", format!("{:?}", u.max_abs())),
        ("max_abs_v", format!("{:?}", v.max_abs())),
        ("max_abs_w", format!("{:?}", w.max_abs())),
    ];
    let residual = match &reference {
        Some(sol) => format!("{:?}", sol.field.max_abs_diff(&u).stage("reference")?),
        None => "nan".into(),
    };
    summary.push(("max_residual", residual));
    summary.push((
        "decay_alpha_w",
        final_decay.map_or("nan".into(), |row| format!("{:?}", row.report.alpha)),
    ));
    summary.push((
        "decay_residual_w",
        final_decay.map_or("nan".into(), |row| format!("{:?}", row.report.residual)),
    ));
    let final_jumps = jumps.iter().filter(|row| row.time == final_time).count();
    summary.push(("jumps_final", final_jumps.to_string()));
    summary.push(("jumps_total", jumps.len().to_string()));

    Ok(ScenarioResult {
        u,
        v,
        w,
        coefficients,
        decay,
        jumps,
        summary,
    })
}

pub(crate) fn value_line(x: f64, t: f64, value: Complex64) -> String {
    format!("{x:?},{t:?},{:?},{:?}", value.re, value.im)
}
