//! Keller box discretization of `u_x = p`, `p_x = q`, `u_t + q_x = 0`.
//!
//! Unknowns are `(u, p, q)` at every node. Each cell contributes two
//! algebraic rows (trapezoidal `u_x = p`, `p_x = q`) and one differential
//! row for the cell average of `u`; the boundary conditions act directly
//! on the nodal traces. Nodes are interleaved `0, P, 1, P-1, ...` so that
//! conditions coupling the two ends stay inside a narrow band.
//!
//! Time stepping is the diagonal (2,2) Padé approximant of the exponential,
//! applied as two trapezoidal substeps with complex steps `2Δt/r` where
//! `r = 3 ± i√3` are the roots of `1 - z/2 + z²/12`.

use num_complex::Complex64;

use super::banded::{BandLu, BandMatrix};
use super::traces::fd_weights;
use crate::boundary::BoundarySpec;

#[derive(Debug, Clone)]
struct Equation {
    // (column, mass coefficient, stiffness coefficient)
    entries: Vec<(usize, f64, Complex64)>,
    algebraic: bool,
}

#[derive(Debug, Clone)]
pub(super) struct BoxSystem {
    points: usize,
    equations: Vec<Equation>,
    kl: usize,
    ku: usize,
}

pub(super) fn node_slot(i: usize, points: usize) -> usize {
    if i <= points - i {
        2 * i
    } else {
        2 * (points - i) + 1
    }
}

pub(super) fn column(i: usize, var: usize, points: usize) -> usize {
    3 * node_slot(i, points) + var
}

const U: usize = 0;
const P: usize = 1;
const Q: usize = 2;

impl BoxSystem {
    pub(super) fn new(points: usize, bc: &BoundarySpec) -> Self {
        let h = 1.0 / points as f64;
        let inv_h = 1.0 / h;
        let col = |i: usize, v: usize| column(i, v, points);
        let real = |x: f64| Complex64::new(x, 0.0);
        let mut equations = Vec::with_capacity(3 * (points + 1));
        for i in 0..points {
            equations.push(Equation {
                entries: vec![
                    (col(i, U), 0.0, real(-inv_h)),
                    (col(i + 1, U), 0.0, real(inv_h)),
                    (col(i, P), 0.0, real(-0.5)),
                    (col(i + 1, P), 0.0, real(-0.5)),
                ],
                algebraic: true,
            });
            equations.push(Equation {
                entries: vec![
                    (col(i, P), 0.0, real(-inv_h)),
                    (col(i + 1, P), 0.0, real(inv_h)),
                    (col(i, Q), 0.0, real(-0.5)),
                    (col(i + 1, Q), 0.0, real(-0.5)),
                ],
                algebraic: true,
            });
            equations.push(Equation {
                entries: vec![
                    (col(i, U), 0.5, real(0.0)),
                    (col(i + 1, U), 0.5, real(0.0)),
                    (col(i, Q), 0.0, real(inv_h)),
                    (col(i + 1, Q), 0.0, real(-inv_h)),
                ],
                algebraic: false,
            });
        }
        let trace_cols = [
            col(0, U),
            col(0, P),
            col(0, Q),
            col(points, U),
            col(points, P),
            col(points, Q),
        ];
        for row in bc.rows() {
            let entries = trace_cols
                .iter()
                .zip(row.0)
                .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
                .map(|(&c, v)| (c, 0.0, v))
                .collect();
            equations.push(Equation {
                entries,
                algebraic: true,
            });
        }
        let span = |e: &Equation| {
            let lo = e.entries.iter().map(|x| x.0).min().unwrap_or(0);
            let hi = e.entries.iter().map(|x| x.0).max().unwrap_or(0);
            (lo, hi)
        };
        equations.sort_by_key(|e| span(e));
        let (mut kl, mut ku) = (0, 0);
        for (r, e) in equations.iter().enumerate() {
            let (lo, hi) = span(e);
            kl = kl.max(r.saturating_sub(lo));
            ku = ku.max(hi.saturating_sub(r));
        }
        Self {
            points,
            equations,
            kl,
            ku,
        }
    }

    pub(super) fn dim(&self) -> usize {
        3 * (self.points + 1)
    }

    /// `M - (τ/2)K` on differential rows, `K` on algebraic rows.
    pub(super) fn implicit_matrix(&self, tau: Complex64) -> BandMatrix {
        let mut m = BandMatrix::zeros(self.dim(), self.kl, self.ku);
        for (r, e) in self.equations.iter().enumerate() {
            for &(c, mass, stiff) in &e.entries {
                let v = if e.algebraic {
                    stiff
                } else {
                    mass - tau * 0.5 * stiff
                };
                if v != Complex64::new(0.0, 0.0) {
                    m.add(r, c, v);
                }
            }
        }
        m
    }

    /// `(M + (τ/2)K) y` on differential rows, zero on algebraic rows.
    pub(super) fn explicit_apply(&self, tau: Complex64, y: &[Complex64], out: &mut [Complex64]) {
        for (r, e) in self.equations.iter().enumerate() {
            out[r] = if e.algebraic {
                Complex64::new(0.0, 0.0)
            } else {
                e.entries
                    .iter()
                    .map(|&(c, mass, stiff)| (mass + tau * 0.5 * stiff) * y[c])
                    .sum()
            };
        }
    }
}

const STARTUP_SUBSTEPS: [usize; 3] = [4, 8, 16];

/// Neville weights extrapolating the substep size `1/count` to zero.
fn startup_weights() -> [f64; 3] {
    let h = STARTUP_SUBSTEPS.map(|c| 1.0 / c as f64);
    std::array::from_fn(|i| {
        (0..3)
            .filter(|&j| j != i)
            .map(|j| h[j] / (h[j] - h[i]))
            .product()
    })
}

/// Padé roots `3 ± i√3`.
pub(super) fn pade_roots() -> [Complex64; 2] {
    let s = 3f64.sqrt();
    [Complex64::new(3.0, s), Complex64::new(3.0, -s)]
}

pub(super) struct Stepper<'a> {
    system: &'a BoxSystem,
    substeps: Vec<(Complex64, BandLu)>,
    // Backward Euler over `count` equal parts of one step, one entry per
    // extrapolation level, with the level weights.
    startup: Vec<(usize, f64, BandLu)>,
    scratch: Vec<Complex64>,
}

impl<'a> Stepper<'a> {
    /// Factors both substep matrices, plus the backward Euler matrices of
    /// the startup step when `startup` is set; `Err(column)` on a zero pivot.
    pub(super) fn new(system: &'a BoxSystem, dt: f64, startup: bool) -> Result<Self, usize> {
        let substeps = pade_roots()
            .into_iter()
            .map(|r| {
                let tau = 2.0 * dt / r;
                system.implicit_matrix(tau).factor().map(|lu| (tau, lu))
            })
            .collect::<Result<_, _>>()?;
        let startup = if startup {
            STARTUP_SUBSTEPS
                .iter()
                .zip(startup_weights())
                .map(|(&count, weight)| {
                    let tau = Complex64::new(2.0 * dt / count as f64, 0.0);
                    system
                        .implicit_matrix(tau)
                        .factor()
                        .map(|lu| (count, weight, lu))
                })
                .collect::<Result<_, _>>()?
        } else {
            Vec::new()
        };
        Ok(Self {
            system,
            substeps,
            startup,
            scratch: vec![Complex64::new(0.0, 0.0); system.dim()],
        })
    }

    /// One step of length `dt` by extrapolated backward Euler. Every level
    /// annihilates infinitely stiff components, so the transients excited
    /// by data that violate corner compatibility are damped instead of
    /// carried along undamped as the regular step would.
    /// Falls back to [`Stepper::step`] without startup factorizations.
    pub(super) fn startup_step(&mut self, y: &mut Vec<Complex64>) {
        if self.startup.is_empty() {
            return self.step(y);
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut combined = vec![zero; y.len()];
        for (count, weight, lu) in &self.startup {
            let mut level = y.clone();
            for _ in 0..*count {
                self.system.explicit_apply(zero, &level, &mut self.scratch);
                lu.solve_in_place(&mut self.scratch);
                std::mem::swap(&mut level, &mut self.scratch);
            }
            for (acc, v) in combined.iter_mut().zip(&level) {
                *acc += *weight * v;
            }
        }
        *y = combined;
    }

    pub(super) fn step(&mut self, y: &mut Vec<Complex64>) {
        for (tau, lu) in &self.substeps {
            self.system.explicit_apply(*tau, y, &mut self.scratch);
            lu.solve_in_place(&mut self.scratch);
            std::mem::swap(y, &mut self.scratch);
        }
    }
}

/// Initial state from nodal values of `u`, with `p` and `q` from 7-point
/// finite differences. The algebraic rows then hold up to truncation
/// error and are enforced exactly by the first implicit substep.
pub(super) fn initial_state(system: &BoxSystem, nodal_u: &[Complex64]) -> Vec<Complex64> {
    let points = system.points;
    let h = 1.0 / points as f64;
    let mut y = vec![Complex64::new(0.0, 0.0); system.dim()];
    let stencils: Vec<[Vec<f64>; 2]> = (0..7)
        .map(|centre| {
            let offsets: Vec<f64> = (0..7).map(|k| k as f64 - centre as f64).collect();
            [fd_weights(&offsets, 1), fd_weights(&offsets, 2)]
        })
        .collect();
    for i in 0..=points {
        let start = i.saturating_sub(3).min(points - 6);
        let weights = &stencils[i - start];
        let derivative = |d: usize| -> Complex64 {
            weights[d]
                .iter()
                .enumerate()
                .map(|(k, w)| nodal_u[start + k] * *w)
                .sum::<Complex64>()
                / h.powi(d as i32 + 1)
        };
        y[column(i, U, points)] = nodal_u[i];
        y[column(i, P, points)] = derivative(0);
        y[column(i, Q, points)] = derivative(1);
    }
    y
}

/// `(u, p, q)` at node `i`.
pub(super) fn node_state(y: &[Complex64], i: usize, points: usize) -> [Complex64; 3] {
    let base = 3 * node_slot(i, points);
    [y[base], y[base + 1], y[base + 2]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interleaving_is_a_permutation() {
        for points in [5, 8, 64] {
            let mut seen: Vec<usize> = (0..=points).map(|i| node_slot(i, points)).collect();
            seen.sort();
            assert_eq!(seen, (0..=points).collect::<Vec<_>>());
        }
    }

    #[test]
    fn band_stays_narrow_for_coupled_conditions() {
        let sys = BoxSystem::new(256, &BoundarySpec::periodic());
        assert!(sys.kl <= 12 && sys.ku <= 12, "kl={} ku={}", sys.kl, sys.ku);
    }
}
