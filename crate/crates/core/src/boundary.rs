use num_complex::Complex64;

use crate::error::{AiryError, Result};

/// One homogeneous linear boundary condition, written as coefficients
/// against `(u(0), u_x(0), u_xx(0), u(1), u_x(1), u_xx(1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow(pub [Complex64; 6]);

impl TraceRow {
    fn unit(idx: usize, scale: Complex64) -> [Complex64; 6] {
        let mut row = [Complex64::new(0.0, 0.0); 6];
        row[idx] = scale;
        row
    }

    /// `a ∂ʲu(0) + b ∂ʲu(1)`.
    pub fn coupling(order: usize, at_zero: Complex64, at_one: Complex64) -> Self {
        let mut row = Self::unit(order, at_zero);
        row[3 + order] = at_one;
        TraceRow(row)
    }

    pub fn apply(&self, traces: &[Complex64; 6]) -> Complex64 {
        self.0.iter().zip(traces).map(|(a, b)| a * b).sum()
    }

    fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryFamily {
    Periodic,
    /// `u(0) = u(1) = u_x(1) = 0`.
    DirichletType,
    /// `u(0) = u(1) = 0`, `u_x(0) = γ u_x(1)`.
    MixedDirichlet {
        gamma: f64,
    },
    /// `β_j ∂ʲu(0) = ∂ʲu(1)`.
    PseudoPeriodic {
        betas: [Complex64; 3],
    },
    /// `∂ʲu(0) = e^{iθ} ∂ʲu(1)`.
    QuasiPeriodic {
        theta: f64,
    },
    /// `u(0) = e^{iθ} u(1)` together with two caller-supplied rows that
    /// couple the first and second derivatives.
    QuasiCoupled {
        theta: f64,
        rows: [TraceRow; 2],
    },
}

impl BoundaryFamily {
    pub fn name(&self) -> &'static str {
        match self {
            BoundaryFamily::Periodic => "periodic",
            BoundaryFamily::DirichletType => "dirichlet",
            BoundaryFamily::MixedDirichlet { .. } => "mixed",
            BoundaryFamily::PseudoPeriodic { .. } => "pseudo_periodic",
            BoundaryFamily::QuasiPeriodic { .. } => "quasi_periodic",
            BoundaryFamily::QuasiCoupled { .. } => "quasi_coupled",
        }
    }
}

/// A boundary-condition family plus the caller's assertion that the
/// resulting problem is wellposed.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySpec {
    family: BoundaryFamily,
    wellposed_assumed: bool,
}

impl BoundarySpec {
    pub fn new(family: BoundaryFamily, wellposed_assumed: bool) -> Result<Self> {
        let ok = match &family {
            BoundaryFamily::Periodic | BoundaryFamily::DirichletType => true,
            BoundaryFamily::MixedDirichlet { gamma } => *gamma > 0.0 && *gamma < 1.0,
            BoundaryFamily::PseudoPeriodic { betas } => betas.iter().all(|b| b.is_finite()),
            BoundaryFamily::QuasiPeriodic { theta } => theta.is_finite(),
            BoundaryFamily::QuasiCoupled { theta, rows } => {
                theta.is_finite() && rows.iter().all(TraceRow::is_finite)
            }
        };
        if !ok {
            return Err(AiryError::InvalidInput(format!(
                "invalid parameters for boundary family `{}`: {family:?}",
                family.name()
            )));
        }
        Ok(Self {
            family,
            wellposed_assumed,
        })
    }

    pub fn periodic() -> Self {
        Self::new(BoundaryFamily::Periodic, true).expect("periodic is always valid")
    }

    pub fn dirichlet_type() -> Self {
        Self::new(BoundaryFamily::DirichletType, true).expect("dirichlet is always valid")
    }

    pub fn mixed(gamma: f64) -> Result<Self> {
        Self::new(BoundaryFamily::MixedDirichlet { gamma }, true)
    }

    pub fn pseudo_periodic(betas: [Complex64; 3]) -> Result<Self> {
        Self::new(BoundaryFamily::PseudoPeriodic { betas }, true)
    }

    pub fn quasi_periodic(theta: f64) -> Result<Self> {
        Self::new(BoundaryFamily::QuasiPeriodic { theta }, true)
    }

    pub fn quasi_coupled(theta: f64, rows: [TraceRow; 2]) -> Result<Self> {
        Self::new(BoundaryFamily::QuasiCoupled { theta, rows }, true)
    }

    pub fn family(&self) -> &BoundaryFamily {
        &self.family
    }

    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    pub fn wellposed_assumed(&self) -> bool {
        self.wellposed_assumed
    }

    pub fn with_wellposed_assumed(mut self, flag: bool) -> Self {
        self.wellposed_assumed = flag;
        self
    }

    /// The three homogeneous conditions as trace rows.
    pub fn rows(&self) -> [TraceRow; 3] {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        match &self.family {
            BoundaryFamily::Periodic => [0, 1, 2].map(|j| TraceRow::coupling(j, one, -one)),
            BoundaryFamily::DirichletType => [
                TraceRow::coupling(0, one, zero),
                TraceRow::coupling(0, zero, one),
                TraceRow::coupling(1, zero, one),
            ],
            BoundaryFamily::MixedDirichlet { gamma } => [
                TraceRow::coupling(0, one, zero),
                TraceRow::coupling(0, zero, one),
                TraceRow::coupling(1, one, Complex64::new(-gamma, 0.0)),
            ],
            BoundaryFamily::PseudoPeriodic { betas } => {
                [0, 1, 2].map(|j| TraceRow::coupling(j, betas[j], -one))
            }
            BoundaryFamily::QuasiPeriodic { theta } => {
                let phase = Complex64::from_polar(1.0, *theta);
                [0, 1, 2].map(|j| TraceRow::coupling(j, one, -phase))
            }
            BoundaryFamily::QuasiCoupled { theta, rows } => [
                TraceRow::coupling(0, one, -Complex64::from_polar(1.0, *theta)),
                rows[0],
                rows[1],
            ],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_gamma_must_be_inside_unit_interval() {
        assert!(BoundarySpec::mixed(0.5).is_ok());
        assert!(BoundarySpec::mixed(1.0).is_err());
        assert!(BoundarySpec::mixed(0.0).is_err());
    }

    #[test]
    fn quasi_rows_vanish_on_quasi_periodic_traces() {
        let theta = 0.7;
        let bc = BoundarySpec::quasi_periodic(theta).unwrap();
        let phase = Complex64::from_polar(1.0, theta);
        let at_one = [
            Complex64::new(0.3, 1.0),
            Complex64::new(-2.0, 0.5),
            Complex64::new(4.0, 0.0),
        ];
        let traces = [
            phase * at_one[0],
            phase * at_one[1],
            phase * at_one[2],
            at_one[0],
            at_one[1],
            at_one[2],
        ];
        for row in bc.rows() {
            assert!(row.apply(&traces).norm() < 1e-15);
        }
    }
}
