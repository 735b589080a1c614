use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{AiryError, Result};

/// Coarse smoothness class of the initial datum, used to decide which
/// term-wise differentiated series may be summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regularity {
    /// Smooth, and smooth as a 1-periodic function.
    SmoothPeriodic,
    /// Smooth on [0,1] but the periodic extension has a corner or jump.
    SmoothNonmatching,
    BoundedVariation,
}

impl Regularity {
    pub fn as_str(self) -> &'static str {
        match self {
            Regularity::SmoothPeriodic => "smooth_periodic",
            Regularity::SmoothNonmatching => "smooth_nonmatching",
            Regularity::BoundedVariation => "bounded_variation",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "smooth_periodic" => Some(Regularity::SmoothPeriodic),
            "smooth_nonmatching" => Some(Regularity::SmoothNonmatching),
            "bounded_variation" => Some(Regularity::BoundedVariation),
            _ => None,
        }
    }
}

pub type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
enum Source {
    Closed(Evaluator),
    Sampled {
        samples: Vec<Complex64>,
        // DFT of the samples divided by their count, natural FFT order.
        spectrum: Vec<Complex64>,
    },
}

/// Initial condition `u(x,0) = f(x)` on [0,1).
#[derive(Clone)]
pub struct InitialDatum {
    source: Source,
    regularity: Regularity,
    real_valued: bool,
    breakpoints: Vec<f64>,
    label: String,
}

impl fmt::Debug for InitialDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InitialDatum")
            .field("label", &self.label)
            .field("regularity", &self.regularity)
            .field("real_valued", &self.real_valued)
            .field("breakpoints", &self.breakpoints)
            .finish()
    }
}

impl InitialDatum {
    pub fn closed(
        label: impl Into<String>,
        f: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        regularity: Regularity,
        real_valued: bool,
    ) -> Self {
        Self {
            source: Source::Closed(Arc::new(f)),
            regularity,
            real_valued,
            breakpoints: Vec::new(),
            label: label.into(),
        }
    }

    /// Interior points where the evaluator is not smooth; quadrature
    /// panels are split there.
    pub fn with_breakpoints(mut self, mut points: Vec<f64>) -> Self {
        points.retain(|p| *p > 0.0 && *p < 1.0);
        points.sort_by(f64::total_cmp);
        points.dedup();
        self.breakpoints = points;
        self
    }

    /// `M` equispaced samples at `x_j = j/M`, `M` a power of two.
    pub fn sampled(samples: Vec<Complex64>, regularity: Regularity) -> Result<Self> {
        let m = samples.len();
        if m < 2 || !m.is_power_of_two() {
            return Err(AiryError::InvalidInput(format!(
                "sample count {m} is not a power of two >= 2"
            )));
        }
        if samples.iter().any(|c| !c.is_finite()) {
            return Err(AiryError::InvalidInput("non-finite sample in datum".into()));
        }
        let real_valued = samples.iter().all(|c| c.im == 0.0);
        let mut spectrum = samples.clone();
        FftPlanner::new().plan_fft_forward(m).process(&mut spectrum);
        let scale = 1.0 / m as f64;
        spectrum.iter_mut().for_each(|c| *c *= scale);
        Ok(Self {
            source: Source::Sampled { samples, spectrum },
            regularity,
            real_valued,
            breakpoints: Vec::new(),
            label: format!("samples[{m}]"),
        })
    }

    /// `amplitude * e^{2πi m x}`.
    pub fn fourier_mode(mode: i64, amplitude: Complex64) -> Self {
        let k = TAU * mode as f64;
        Self::closed(
            format!("fourier_mode({mode})"),
            move |x| amplitude * Complex64::from_polar(1.0, k * x),
            Regularity::SmoothPeriodic,
            mode == 0 && amplitude.im == 0.0,
        )
    }

    /// Indicator of `[start, end)`.
    pub fn step(start: f64, end: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&start) || !(end > start && end <= 1.0) {
            return Err(AiryError::InvalidInput(format!(
                "step interval [{start}, {end}) must satisfy 0 <= start < end <= 1"
            )));
        }
        Ok(Self::closed(
            format!("step[{start},{end})"),
            move |x| {
                if x >= start && x < end {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            },
            Regularity::BoundedVariation,
            true,
        )
        .with_breakpoints(vec![start, end]))
    }

    /// `sin(πx)^power` for even `power >= 2`, a trigonometric polynomial.
    pub fn bump(power: u32) -> Result<Self> {
        if power < 2 || !power.is_multiple_of(2) {
            return Err(AiryError::InvalidInput(format!(
                "bump power {power} must be even and at least 2"
            )));
        }
        Ok(Self::closed(
            format!("bump({power})"),
            move |x| Complex64::new((PI * x).sin().powi(power as i32), 0.0),
            Regularity::SmoothPeriodic,
            true,
        ))
    }

    /// `Σ coeffs[m] x^m`.
    pub fn polynomial(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(AiryError::InvalidInput(
                "polynomial needs at least one finite coefficient".into(),
            ));
        }
        let label = format!("poly{coeffs:?}");
        Ok(Self::closed(
            label,
            move |x| Complex64::new(coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c), 0.0),
            Regularity::SmoothNonmatching,
            true,
        ))
    }

    pub fn with_regularity(mut self, regularity: Regularity) -> Self {
        self.regularity = regularity;
        self
    }

    pub fn regularity(&self) -> Regularity {
        self.regularity
    }

    pub fn is_real_valued(&self) -> bool {
        self.real_valued
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn samples(&self) -> Option<&[Complex64]> {
        match &self.source {
            Source::Sampled { samples, .. } => Some(samples),
            Source::Closed(_) => None,
        }
    }

    /// Value at `x ∈ [0,1]`. Sampled data is evaluated by trigonometric
    /// interpolation, which reproduces the samples on their grid.
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(AiryError::InvalidInput(format!(
                "datum evaluated at x = {x} outside [0,1]"
            )));
        }
        let value = match &self.source {
            Source::Closed(f) => f(x),
            Source::Sampled { samples, spectrum } => {
                let m = samples.len();
                let pos = x * m as f64;
                if pos.fract() == 0.0 {
                    samples[pos as usize % m]
                } else {
                    trig_interpolate(spectrum, x)
                }
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(AiryError::InvalidInput(format!(
                "datum is not finite at x = {x}"
            )))
        }
    }
}

fn trig_interpolate(spectrum: &[Complex64], x: f64) -> Complex64 {
    let m = spectrum.len();
    let half = m / 2;
    let mut acc = Complex64::new(0.0, 0.0);
    for (idx, c) in spectrum.iter().enumerate() {
        if idx == half {
            // Nyquist term split evenly between ±m/2.
            acc += c * (TAU * half as f64 * x).cos();
            continue;
        }
        let n = if idx < half {
            idx as f64
        } else {
            idx as f64 - m as f64
        };
        acc += c * Complex64::from_polar(1.0, TAU * n * x);
    }
    acc
}
