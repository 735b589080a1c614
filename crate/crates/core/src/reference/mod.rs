//! Direct solver for `u_t + u_xxx = 0` under any supported boundary conditions.
//!
//! Space: Keller box scheme, second order, made higher order by
//! Richardson extrapolation over two or three nested grids sharing one
//! time step. Time: fourth-order A-stable Padé stepping with two banded
//! factorizations reused for every step.

mod banded;
mod global;
mod scheme;
mod traces;

pub use banded::{BandLu, BandMatrix};
pub use global::{verify_global_relation, verify_global_relation_with_traces};
pub use traces::{extract_traces, fd_weights};

use num_complex::Complex64;

use crate::boundary::BoundarySpec;
use crate::datum::InitialDatum;
use crate::error::{AiryError, Result};
use crate::exec::Exec;
use crate::field::{uniform_space_grid, BoundaryTraces, SpaceTimeField};
use scheme::{initial_state, node_state, BoxSystem, Stepper};

/// Per-step norm growth above this factor aborts the run.
pub const STEP_GROWTH_LIMIT: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceConfig {
    points: usize,
    dt: f64,
    final_time: f64,
    snapshot_every: usize,
    levels: usize,
    growth_limit: f64,
    startup: bool,
}

impl ReferenceConfig {
    /// `points` intervals on the output grid, time step `dt` up to
    /// `final_time`. Requires `points >= 64`, `dt <= final_time/100` and
    /// `final_time` an integer multiple of `dt`.
    pub fn new(points: usize, dt: f64, final_time: f64) -> Result<Self> {
        if points < 64 {
            return Err(AiryError::InvalidInput(format!(
                "reference grid needs P >= 64, got {points}"
            )));
        }
        if !(final_time > 0.0 && final_time.is_finite()) {
            return Err(AiryError::InvalidInput(format!(
                "final time {final_time} must be positive"
            )));
        }
        if !(dt > 0.0) || dt > final_time / 100.0 * (1.0 + 1e-12) {
            return Err(AiryError::InvalidInput(format!(
                "time step {dt} must lie in (0, T/100]"
            )));
        }
        let steps = (final_time / dt).round();
        if (steps * dt - final_time).abs() > 1e-9 * final_time {
            return Err(AiryError::InvalidInput(format!(
                "final time {final_time} is not a multiple of dt = {dt}"
            )));
        }
        Ok(Self {
            points,
            dt,
            final_time,
            snapshot_every: steps as usize,
            levels: 3,
            growth_limit: 1e3,
            startup: true,
        })
    }

    /// Store the field every `every` steps (always including t = 0 and T).
    pub fn with_snapshot_every(mut self, every: usize) -> Result<Self> {
        if every == 0 || !self.steps().is_multiple_of(every) {
            return Err(AiryError::InvalidInput(format!(
                "snapshot stride {every} does not divide {} steps",
                self.steps()
            )));
        }
        self.snapshot_every = every;
        Ok(self)
    }

    /// Number of nested grids (1 to 3) combined by Richardson extrapolation.
    pub fn with_levels(mut self, levels: usize) -> Result<Self> {
        if !(1..=3).contains(&levels) {
            return Err(AiryError::InvalidInput(format!(
                "extrapolation levels {levels} not in 1..=3"
            )));
        }
        self.levels = levels;
        Ok(self)
    }

    /// Abort when the solution norm exceeds this multiple of its initial value.
    pub fn with_growth_limit(mut self, limit: f64) -> Result<Self> {
        if !(limit > 1.0) {
            return Err(AiryError::InvalidInput(format!(
                "growth limit {limit} must exceed 1"
            )));
        }
        self.growth_limit = limit;
        Ok(self)
    }

    /// Whether the first step uses the damping startup (on by default).
    pub fn with_startup(mut self, startup: bool) -> Self {
        self.startup = startup;
        self
    }

    pub fn startup(&self) -> bool {
        self.startup
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn final_time(&self) -> f64 {
        self.final_time
    }

    pub fn steps(&self) -> usize {
        (self.final_time / self.dt).round() as usize
    }

    pub fn snapshot_every(&self) -> usize {
        self.snapshot_every
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn snapshot_times(&self) -> Vec<f64> {
        (0..=self.steps())
            .step_by(self.snapshot_every)
            .map(|m| m as f64 * self.dt)
            .collect()
    }
}

/// Field snapshots plus boundary traces at every time step.
#[derive(Debug, Clone)]
pub struct ReferenceSolution {
    pub field: SpaceTimeField,
    pub traces: BoundaryTraces,
}

struct LevelRun {
    // snapshots[s][i] on the output grid
    snapshots: Vec<Vec<Complex64>>,
    // traces[m] = (u, p, q) at x = 0 then x = 1
    traces: Vec<[Complex64; 6]>,
}

fn run_level(
    f: &InitialDatum,
    bc: &BoundarySpec,
    cfg: &ReferenceConfig,
    refine: usize,
) -> Result<LevelRun> {
    let points = cfg.points * refine;
    let family = bc.name().to_string();
    let system = BoxSystem::new(points, bc);
    let xs = uniform_space_grid(points)?;
    let nodal: Vec<Complex64> = xs.iter().map(|&x| f.eval(x)).collect::<Result<_>>()?;
    let singular = |col: usize, what: &str| AiryError::SingularSystem {
        family: family.clone(),
        detail: format!("{what} matrix has a zero pivot in column {col} (P = {points})"),
    };
    let mut y = initial_state(&system, &nodal);
    let mut stepper =
        Stepper::new(&system, cfg.dt, cfg.startup).map_err(|c| singular(c, "implicit step"))?;

    let norm = |y: &[Complex64]| -> f64 {
        (0..=points)
            .map(|i| node_state(y, i, points)[0].norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    let sample = |y: &[Complex64]| -> Vec<Complex64> {
        (0..=cfg.points)
            .map(|i| node_state(y, i * refine, points)[0])
            .collect()
    };
    let trace = |y: &[Complex64]| -> [Complex64; 6] {
        let a = node_state(y, 0, points);
        let b = node_state(y, points, points);
        [a[0], a[1], a[2], b[0], b[1], b[2]]
    };

    let steps = cfg.steps();
    let mut snapshots = vec![sample(&y)];
    let mut traces = Vec::with_capacity(steps + 1);
    traces.push(trace(&y));
    let initial_norm = norm(&y);
    let mut previous = initial_norm;
    for m in 1..=steps {
        if m == 1 {
            stepper.startup_step(&mut y);
        } else {
            stepper.step(&mut y);
        }
        let current = norm(&y);
        let time = m as f64 * cfg.dt;
        let unstable = |detail: String| AiryError::Instability {
            family: family.clone(),
            step: m,
            time,
            detail,
        };
        if !current.is_finite() {
            return Err(unstable("solution became non-finite".into()));
        }
        if previous > 1e-300 && current > STEP_GROWTH_LIMIT * previous {
            return Err(unstable(format!(
                "norm grew by {:.3e} in one step (P = {points})",
                current / previous
            )));
        }
        if initial_norm > 1e-300 && current > cfg.growth_limit * initial_norm {
            return Err(unstable(format!(
                "norm reached {:.3e} times its initial value (P = {points})",
                current / initial_norm
            )));
        }
        previous = current;
        traces.push(trace(&y));
        if m % cfg.snapshot_every == 0 {
            snapshots.push(sample(&y));
        }
    }
    Ok(LevelRun { snapshots, traces })
}

fn richardson_weights(levels: usize) -> &'static [f64] {
    match levels {
        1 => &[1.0],
        2 => &[-1.0 / 3.0, 4.0 / 3.0],
        _ => &[1.0 / 45.0, -20.0 / 45.0, 64.0 / 45.0],
    }
}

/// Solves the boundary value problem on `[0, T]`.
///
/// Refuses boundary conditions not flagged as wellposed; a zero pivot reports
/// the boundary family, and runaway growth aborts with
/// [`AiryError::Instability`].
pub fn solve_reference(
    f: &InitialDatum,
    bc: &BoundarySpec,
    cfg: &ReferenceConfig,
) -> Result<ReferenceSolution> {
    solve_reference_with(f, bc, cfg, Exec::default())
}

/// [`solve_reference`] with the nested grids run under `exec`.
pub fn solve_reference_with(
    f: &InitialDatum,
    bc: &BoundarySpec,
    cfg: &ReferenceConfig,
    exec: Exec,
) -> Result<ReferenceSolution> {
    if !bc.wellposed_assumed() {
        return Err(AiryError::ContractViolation(format!(
            "boundary family `{}` is not flagged as wellposed",
            bc.name()
        )));
    }
    let runs = exec.try_map_indexed(cfg.levels, |level| run_level(f, bc, cfg, 1 << level))?;
    let weights = richardson_weights(cfg.levels);
    let combine = |pick: &dyn Fn(&LevelRun) -> Complex64| -> Complex64 {
        runs.iter().zip(weights).map(|(r, w)| pick(r) * *w).sum()
    };

    let n_snap = runs[0].snapshots.len();
    let p = cfg.points + 1;
    let mut values = Vec::with_capacity(n_snap * p);
    for s in 0..n_snap {
        for i in 0..p {
            values.push(combine(&|r: &LevelRun| r.snapshots[s][i]));
        }
    }
    let field = SpaceTimeField::new(
        uniform_space_grid(cfg.points)?,
        cfg.snapshot_times(),
        values,
    )?;

    let mut series: [[Vec<Complex64>; 3]; 2] = Default::default();
    for m in 0..runs[0].traces.len() {
        for idx in 0..6 {
            series[idx / 3][idx % 3].push(combine(&|r: &LevelRun| r.traces[m][idx]));
        }
    }
    let traces = BoundaryTraces::new(cfg.dt, series)?;
    Ok(ReferenceSolution { field, traces })
}
