//! Numerical check of the transform identity for zero-initial-data fields:
//! `ŵ(k,t) = e^{ik³t} [-F(k,t) + e^{-ik} G(k,t)]` for every real `k`.

use num_complex::Complex64;

use super::traces::extract_traces;
use crate::error::{AiryError, Result};
use crate::exec::Exec;
use crate::field::{BoundaryTraces, Endpoint, SpaceTimeField};
use crate::oscquad::{endpoint_moment_of, fourier_integral, TimeFunction};

const INITIAL_SLICE_TOL: f64 = 1e-7;

/// Residuals `|ŵ(k,t) - e^{ik³t}(-F + e^{-ik}G)|` with traces extracted
/// from the field by 4th-order one-sided differences.
pub fn verify_global_relation(
    field: &SpaceTimeField,
    ks: &[f64],
    t: f64,
    exec: Exec,
) -> Result<Vec<f64>> {
    let traces = extract_traces(field, 4)?;
    verify_global_relation_with_traces(field, &traces, ks, t, exec)
}

/// As [`verify_global_relation`] with caller-supplied traces of `w`.
pub fn verify_global_relation_with_traces(
    field: &SpaceTimeField,
    traces: &BoundaryTraces,
    ks: &[f64],
    t: f64,
    exec: Exec,
) -> Result<Vec<f64>> {
    if field.ts()[0] != 0.0 {
        return Err(AiryError::ContractViolation(
            "field does not start at t = 0".into(),
        ));
    }
    let initial = field.slice(0).iter().map(|c| c.norm()).fold(0.0, f64::max);
    if initial > INITIAL_SLICE_TOL * field.max_abs().max(1.0) {
        return Err(AiryError::ContractViolation(format!(
            "initial slice is not zero (max |w(x,0)| = {initial:.3e})"
        )));
    }
    let m = field.time_index(t).ok_or_else(|| {
        AiryError::InvalidInput(format!("t = {t} is not on the field's time grid"))
    })?;
    let t = field.ts()[m];
    let parts = |e: Endpoint| -> Result<Vec<TimeFunction>> {
        (0..3)
            .map(|j| TimeFunction::from_traces(traces, e, j))
            .collect()
    };
    let left = parts(Endpoint::Left)?;
    let right = parts(Endpoint::Right)?;
    let profile = field.slice(m);
    exec.try_map_indexed(ks.len(), |idx| {
        let k = ks[idx];
        let w_hat = fourier_integral(profile, k)?;
        let f = endpoint_moment_of(&left, k, t)?;
        let g = endpoint_moment_of(&right, k, t)?;
        let rhs =
            Complex64::from_polar(1.0, k * k * k * t) * (-f + Complex64::from_polar(1.0, -k) * g);
        Ok((w_hat - rhs).norm())
    })
}
