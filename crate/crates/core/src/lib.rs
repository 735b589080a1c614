//! Spectral decomposition solver for the Airy equation `u_t + u_xxx = 0`
//! on `[0,1]`.
//!
//! A boundary value problem is split as `u = v + w`: `v` solves the
//! periodic problem with the same initial datum and is a plain Fourier
//! series, while `w` has zero initial data and is driven by the boundary
//! traces through the oscillatory moments `∫₀ᵗ e^{-ik³s} h(s) ds`.
//! An independent finite-volume solver in [`reference`] supplies traces
//! that the series cannot determine on their own and checks the results.

pub mod analysis;
pub mod boundary;
pub mod config;
pub mod correction;
pub mod datum;
pub mod error;
pub mod exec;
pub mod field;
pub mod lattice;
pub mod oscquad;
pub mod periodic;
pub mod quadrature;
pub mod reference;

pub use boundary::{BoundaryFamily, BoundarySpec, TraceRow};
pub use datum::{InitialDatum, Regularity};
pub use error::{AiryError, Result};
pub use exec::Exec;
pub use field::{BoundaryTraces, Endpoint, SpaceTimeField};
pub use lattice::SpectralCoefficients;
pub use oscquad::TimeFunction;

/// Revival period `1/(4π²)`: with `k_n = 2πn` the phase `k_n³ t` equals
/// `2π n³ p/q` exactly when `t = (p/q)/(4π²)`, so the propagator is
/// `q`-periodic in `n` at those times.
pub const T_REV: f64 = 1.0 / (4.0 * std::f64::consts::PI * std::f64::consts::PI);
