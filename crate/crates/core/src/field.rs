use num_complex::Complex64;

use crate::error::{AiryError, Result};

/// `P + 1` uniform points on [0,1], both endpoints included.
pub fn uniform_space_grid(points: usize) -> Result<Vec<f64>> {
    if points == 0 {
        return Err(AiryError::InvalidInput(
            "space grid needs at least one interval".into(),
        ));
    }
    let h = 1.0 / points as f64;
    Ok((0..=points)
        .map(|i| if i == points { 1.0 } else { i as f64 * h })
        .collect())
}

/// `t_m = m Δt` for `m = 0..=steps`.
pub fn uniform_time_grid(dt: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|m| m as f64 * dt).collect()
}

/// Complex values on a tensor grid `(x_i, t_m)`, stored time-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeField {
    xs: Vec<f64>,
    ts: Vec<f64>,
    values: Vec<Complex64>,
}

impl SpaceTimeField {
    pub fn new(xs: Vec<f64>, ts: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if xs.is_empty() || ts.is_empty() {
            return Err(AiryError::InvalidInput(
                "field grids must be non-empty".into(),
            ));
        }
        if values.len() != xs.len() * ts.len() {
            return Err(AiryError::InvalidInput(format!(
                "field has {} values for a {}x{} grid",
                values.len(),
                xs.len(),
                ts.len()
            )));
        }
        if xs.len() > 1 && (xs[0] != 0.0 || *xs.last().unwrap() != 1.0) {
            return Err(AiryError::InvalidInput(
                "space grid must run from 0 to 1".into(),
            ));
        }
        Ok(Self { xs, ts, values })
    }

    pub fn zeros(xs: Vec<f64>, ts: Vec<f64>) -> Result<Self> {
        let n = xs.len() * ts.len();
        Self::new(xs, ts, vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ts(&self) -> &[f64] {
        &self.ts
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, i: usize, m: usize) -> Complex64 {
        self.values[m * self.xs.len() + i]
    }

    /// Profile `x ↦ u(x, t_m)`.
    pub fn slice(&self, m: usize) -> &[Complex64] {
        let p = self.xs.len();
        &self.values[m * p..(m + 1) * p]
    }

    /// Index of `t` in the time grid, allowing for rounding.
    pub fn time_index(&self, t: f64) -> Option<usize> {
        let scale = self.ts.last().map_or(1.0, |v| v.abs().max(1e-300));
        self.ts.iter().position(|s| (s - t).abs() <= 1e-9 * scale)
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.xs == other.xs && self.ts == other.ts
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if !self.same_grid(other) {
            return Err(AiryError::ContractViolation(
                "fields live on different grids".into(),
            ));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if !self.same_grid(other) {
            return Err(AiryError::ContractViolation(
                "fields live on different grids".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(*a, *b))
            .collect();
        Ok(Self {
            xs: self.xs.clone(),
            ts: self.ts.clone(),
            values,
        })
    }

    /// Restriction to a subset of time indices.
    pub fn select_times(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&m| m >= self.ts.len()) {
            return Err(AiryError::InvalidInput(format!(
                "time index {bad} out of range"
            )));
        }
        let ts = indices.iter().map(|&m| self.ts[m]).collect();
        let values = indices
            .iter()
            .flat_map(|&m| self.slice(m).iter().copied())
            .collect();
        Self::new(self.xs.clone(), ts, values)
    }
}

/// Which end of the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Left,
    Right,
}

impl Endpoint {
    pub fn index(self) -> usize {
        match self {
            Endpoint::Left => 0,
            Endpoint::Right => 1,
        }
    }
}

/// Time series of `∂ₓʲu` at `x = 0` and `x = 1`, `j = 0, 1, 2`, on a
/// uniform time grid starting at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTraces {
    dt: f64,
    // series[endpoint][order][m]
    series: [[Vec<Complex64>; 3]; 2],
}

impl BoundaryTraces {
    pub fn new(dt: f64, series: [[Vec<Complex64>; 3]; 2]) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(AiryError::InvalidInput(format!(
                "trace time step {dt} must be positive"
            )));
        }
        let len = series[0][0].len();
        if len < 2 {
            return Err(AiryError::InvalidInput(
                "traces need at least two time samples".into(),
            ));
        }
        if series.iter().flatten().any(|s| s.len() != len) {
            return Err(AiryError::InvalidInput(
                "trace series lengths differ".into(),
            ));
        }
        if series.iter().flatten().flatten().any(|c| !c.is_finite()) {
            return Err(AiryError::NonFinite("boundary traces".into()));
        }
        Ok(Self { dt, series })
    }

    pub fn zeros(dt: f64, samples: usize) -> Result<Self> {
        let z = vec![Complex64::new(0.0, 0.0); samples];
        Self::new(
            dt,
            std::array::from_fn(|_| std::array::from_fn(|_| z.clone())),
        )
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.series[0][0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn final_time(&self) -> f64 {
        (self.len() - 1) as f64 * self.dt
    }

    pub fn times(&self) -> Vec<f64> {
        uniform_time_grid(self.dt, self.len() - 1)
    }

    pub fn series(&self, endpoint: Endpoint, order: usize) -> &[Complex64] {
        &self.series[endpoint.index()][order]
    }

    /// All six traces at step `m`, ordered as a trace row expects.
    pub fn at(&self, m: usize) -> [Complex64; 6] {
        std::array::from_fn(|idx| self.series[idx / 3][idx % 3][m])
    }

    /// Pointwise `a * self + b * other`.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        if self.len() != other.len() || self.dt != other.dt {
            return Err(AiryError::ContractViolation("trace grids differ".into()));
        }
        let series = std::array::from_fn(|e| {
            std::array::from_fn(|j| {
                self.series[e][j]
                    .iter()
                    .zip(&other.series[e][j])
                    .map(|(x, y)| a * x + b * y)
                    .collect()
            })
        });
        Self::new(self.dt, series)
    }

    /// Keeps every `stride`-th sample.
    pub fn subsample(&self, stride: usize) -> Result<Self> {
        if stride == 0 || !(self.len() - 1).is_multiple_of(stride) {
            return Err(AiryError::InvalidInput(format!(
                "stride {stride} does not divide {} intervals",
                self.len() - 1
            )));
        }
        let series = std::array::from_fn(|e| {
            std::array::from_fn(|j| self.series[e][j].iter().step_by(stride).copied().collect())
        });
        Self::new(self.dt * stride as f64, series)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_exact() {
        let xs = uniform_space_grid(7).unwrap();
        assert_eq!(xs[0], 0.0);
        assert_eq!(xs[7], 1.0);
    }

    #[test]
    fn field_rejects_mismatched_dims() {
        let xs = uniform_space_grid(4).unwrap();
        assert!(
            SpaceTimeField::new(xs, vec![0.0, 1.0], vec![Complex64::new(0.0, 0.0); 9]).is_err()
        );
    }

    #[test]
    fn traces_reject_ragged_series() {
        let mut s: [[Vec<Complex64>; 3]; 2] = Default::default();
        for e in 0..2 {
            for j in 0..3 {
                s[e][j] = vec![Complex64::new(0.0, 0.0); 4];
            }
        }
        s[1][2].pop();
        assert!(BoundaryTraces::new(0.1, s).is_err());
    }
}
