//! Oscillatory moments `H(k,t) = ∫₀ᵗ e^{-ik³s} h(s) ds`.
//!
//! Closed-form `h` uses adaptive Gauss–Kronrod while the phase `|k³|t`
//! stays below [`FILON_THRESHOLD`] and adaptive Filon panels (degree-6
//! interpolation of `h` against exact monomial moments) above it.
//! Sampled `h` is replaced by its local cubic interpolant, which is
//! integrated against the phase exactly for every `k`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::error::{AiryError, Result};
use crate::exec::Exec;
use crate::field::{BoundaryTraces, Endpoint};
use crate::periodic::unit_interval_phase_integral;
use crate::quadrature::{adaptive_gk15, GaussRule};

pub const FILON_THRESHOLD: f64 = 50.0;
const ABS_TOL: f64 = 1e-14;
const FILON_DEGREE: usize = 6;

type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A forcing `h(s)` on `[0, T]`.
#[derive(Clone)]
pub enum TimeFunction {
    Closed {
        f: Evaluator,
        end: f64,
    },
    /// Uniform samples `h(m Δt)` with per-interval cubic interpolants,
    /// stored as monomial coefficients in the interval's local variable
    /// `τ ∈ [-1, 1]`.
    Sampled {
        dt: f64,
        values: Arc<[Complex64]>,
        pieces: Arc<[[Complex64; 4]]>,
    },
    /// `Σ a_m e^{i ω_m s}`, defined for all `s >= 0`.
    Exponentials {
        terms: Arc<[(Complex64, f64)]>,
    },
}

impl fmt::Debug for TimeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeFunction::Closed { end, .. } => write!(f, "TimeFunction::Closed(end = {end})"),
            TimeFunction::Sampled { dt, values, .. } => {
                write!(
                    f,
                    "TimeFunction::Sampled(dt = {dt}, len = {})",
                    values.len()
                )
            }
            TimeFunction::Exponentials { terms } => {
                write!(f, "TimeFunction::Exponentials(terms = {})", terms.len())
            }
        }
    }
}

impl TimeFunction {
    pub fn closed(f: impl Fn(f64) -> Complex64 + Send + Sync + 'static, end: f64) -> Result<Self> {
        if !(end > 0.0 && end.is_finite()) {
            return Err(AiryError::InvalidInput(format!(
                "time function domain end {end} must be positive"
            )));
        }
        Ok(TimeFunction::Closed {
            f: Arc::new(f),
            end,
        })
    }

    pub fn sampled(dt: f64, values: Vec<Complex64>) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(AiryError::InvalidInput(format!(
                "sample spacing {dt} must be positive"
            )));
        }
        if values.len() < 4 {
            return Err(AiryError::InvalidInput(
                "cubic interpolation needs at least four samples".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(AiryError::InvalidInput(
                "NaN or infinity in sampled time function".into(),
            ));
        }
        let pieces = cubic_pieces(&values);
        Ok(TimeFunction::Sampled {
            dt,
            values: values.into(),
            pieces: pieces.into(),
        })
    }

    pub fn from_traces(traces: &BoundaryTraces, endpoint: Endpoint, order: usize) -> Result<Self> {
        if order > 2 {
            return Err(AiryError::InvalidInput(format!(
                "trace order {order} exceeds 2"
            )));
        }
        Self::sampled(traces.dt(), traces.series(endpoint, order).to_vec())
    }

    pub fn exponentials(terms: Vec<(Complex64, f64)>) -> Result<Self> {
        if terms.iter().any(|(a, w)| !a.is_finite() || !w.is_finite()) {
            return Err(AiryError::InvalidInput(
                "non-finite exponential term".into(),
            ));
        }
        Ok(TimeFunction::Exponentials {
            terms: terms.into(),
        })
    }

    pub fn zero() -> Self {
        TimeFunction::Exponentials {
            terms: Arc::new([]),
        }
    }

    pub fn domain_end(&self) -> f64 {
        match self {
            TimeFunction::Closed { end, .. } => *end,
            TimeFunction::Sampled { dt, values, .. } => dt * (values.len() - 1) as f64,
            TimeFunction::Exponentials { .. } => f64::INFINITY,
        }
    }

    /// True when the function is identically zero by construction.
    pub fn is_trivially_zero(&self) -> bool {
        match self {
            TimeFunction::Closed { .. } => false,
            TimeFunction::Sampled { values, .. } => {
                values.iter().all(|v| *v == Complex64::new(0.0, 0.0))
            }
            TimeFunction::Exponentials { terms } => {
                terms.iter().all(|(a, _)| *a == Complex64::new(0.0, 0.0))
            }
        }
    }

    pub fn eval(&self, s: f64) -> Result<Complex64> {
        self.check_range(0.0, s)?;
        let value = match self {
            TimeFunction::Closed { f, .. } => f(s),
            TimeFunction::Sampled { dt, pieces, .. } => {
                let (j, tau) = locate(*dt, pieces.len(), s);
                horner(&pieces[j], tau)
            }
            TimeFunction::Exponentials { terms } => terms
                .iter()
                .map(|(a, w)| a * Complex64::from_polar(1.0, w * s))
                .sum(),
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(AiryError::InvalidInput(format!(
                "time function is not finite at s = {s}"
            )))
        }
    }

    /// `scale * h`.
    pub fn scaled(&self, scale: Complex64) -> Self {
        match self {
            TimeFunction::Closed { f, end } => {
                let f = f.clone();
                TimeFunction::Closed {
                    f: Arc::new(move |s| scale * f(s)),
                    end: *end,
                }
            }
            TimeFunction::Sampled { dt, values, pieces } => TimeFunction::Sampled {
                dt: *dt,
                values: values.iter().map(|v| scale * v).collect(),
                pieces: pieces.iter().map(|p| p.map(|c| scale * c)).collect(),
            },
            TimeFunction::Exponentials { terms } => TimeFunction::Exponentials {
                terms: terms.iter().map(|(a, w)| (scale * a, *w)).collect(),
            },
        }
    }

    fn check_range(&self, a: f64, b: f64) -> Result<()> {
        let end = self.domain_end();
        let slack = if end.is_finite() { 1e-12 * end } else { 0.0 };
        if !(a.is_finite() && b.is_finite()) || a < 0.0 || b < a || b > end + slack {
            return Err(AiryError::InvalidInput(format!(
                "interval [{a}, {b}] outside time function domain [0, {end}]"
            )));
        }
        Ok(())
    }
}

/// `∫₀ᵗ e^{-ik³s} h(s) ds`.
pub fn moment(h: &TimeFunction, k: f64, t: f64) -> Result<Complex64> {
    moment_between(h, k, 0.0, t)
}

/// `∫_a^b e^{-ik³s} h(s) ds`.
pub fn moment_between(h: &TimeFunction, k: f64, a: f64, b: f64) -> Result<Complex64> {
    if !k.is_finite() {
        return Err(AiryError::InvalidInput(format!(
            "wavenumber {k} is not finite"
        )));
    }
    h.check_range(a, b)?;
    phase_integral(h, k * k * k, a, b)
}

/// Moments for many wavenumbers at one time, in input order.
pub fn moment_batch(h: &TimeFunction, ks: &[f64], t: f64, exec: Exec) -> Result<Vec<Complex64>> {
    exec.try_map_indexed(ks.len(), |idx| moment(h, ks[idx], t))
}

/// `H(k, t_m)` for an ascending list of times, accumulated panel by panel.
pub fn moments_at(h: &TimeFunction, k: f64, times: &[f64]) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(times.len());
    let mut acc = Complex64::new(0.0, 0.0);
    let mut last = 0.0;
    for &t in times {
        if t < last {
            return Err(AiryError::InvalidInput(
                "moment times must be ascending".into(),
            ));
        }
        acc += moment_between(h, k, last, t)?;
        out.push(acc);
        last = t;
    }
    Ok(out)
}

/// `k² H[∂⁰] - ik H[∂¹] - H[∂²]` at one endpoint, i.e. the endpoint
/// moment `F(k,t)` at `x = 0` or `G(k,t)` at `x = 1`.
pub fn endpoint_moment(
    traces: &BoundaryTraces,
    endpoint: Endpoint,
    k: f64,
    t: f64,
) -> Result<Complex64> {
    let parts: Vec<TimeFunction> = (0..3)
        .map(|j| TimeFunction::from_traces(traces, endpoint, j))
        .collect::<Result<_>>()?;
    endpoint_moment_of(&parts, k, t)
}

pub(crate) fn endpoint_moment_of(parts: &[TimeFunction], k: f64, t: f64) -> Result<Complex64> {
    let m0 = moment(&parts[0], k, t)?;
    let m1 = moment(&parts[1], k, t)?;
    let m2 = moment(&parts[2], k, t)?;
    Ok(k * k * m0 - Complex64::new(0.0, k) * m1 - m2)
}

/// `∫₀¹ e^{-ikx} g(x) dx` for `g` sampled on `P + 1` uniform points, using
/// the same piecewise-cubic rule as sampled moments.
pub fn fourier_integral(values: &[Complex64], k: f64) -> Result<Complex64> {
    if values.len() < 4 {
        return Err(AiryError::InvalidInput("need at least four samples".into()));
    }
    let h = TimeFunction::sampled(1.0 / (values.len() - 1) as f64, values.to_vec())?;
    phase_integral(&h, k, 0.0, 1.0)
}

// ∫_a^b e^{-iωs} h(s) ds, range already validated.
fn phase_integral(h: &TimeFunction, omega: f64, a: f64, b: f64) -> Result<Complex64> {
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    match h {
        TimeFunction::Exponentials { terms } => Ok(terms
            .iter()
            .map(|(amp, w)| {
                let nu = w - omega;
                amp * Complex64::from_polar(1.0, nu * a)
                    * unit_interval_phase_integral(nu * (b - a))
                    * (b - a)
            })
            .sum()),
        TimeFunction::Sampled { dt, pieces, .. } => {
            Ok(sampled_phase_integral(*dt, pieces, omega, a, b))
        }
        TimeFunction::Closed { f, .. } => {
            let checked = |s: f64| f(s);
            if omega.abs() * (b - a) <= FILON_THRESHOLD {
                adaptive_gk15(
                    |s| checked(s) * Complex64::from_polar(1.0, -omega * s),
                    a,
                    b,
                    ABS_TOL,
                )
                .map_err(|_| AiryError::InvalidInput("NaN in time function".into()))
            } else {
                filon_adaptive(&checked, omega, a, b)
            }
        }
    }
}

/// `μ_m(λ) = ∫_{-1}^{1} τ^m e^{-iλτ} dτ` for `m = 0..=degree`.
pub fn monomial_moments<const D: usize>(lambda: f64) -> [Complex64; D] {
    let mut mu = [Complex64::new(0.0, 0.0); D];
    if lambda.abs() <= 8.0 {
        let rule = small_rule();
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let e = Complex64::from_polar(*w, -lambda * x);
            let mut p = 1.0;
            for slot in mu.iter_mut() {
                *slot += e * p;
                p *= x;
            }
        }
        return mu;
    }
    let em = Complex64::from_polar(1.0, -lambda);
    let ep = Complex64::from_polar(1.0, lambda);
    let inv = Complex64::new(0.0, 1.0 / lambda); // 1/(-iλ)
    mu[0] = Complex64::new(2.0 * lambda.sin() / lambda, 0.0);
    for m in 1..D {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        // m/(iλ) = -m/(-iλ)
        mu[m] = (em - ep * sign) * inv - inv * (m as f64) * mu[m - 1];
    }
    mu
}

fn small_rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::legendre(24))
}

fn locate(dt: f64, intervals: usize, s: f64) -> (usize, f64) {
    let pos = s / dt;
    let j = (pos.floor() as usize).min(intervals - 1);
    let tau = 2.0 * (pos - j as f64) - 1.0;
    (j, tau)
}

fn horner(p: &[Complex64], tau: f64) -> Complex64 {
    p.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * tau + c)
}

// Monomial coefficients (in τ ∈ [-1,1] over interval j) of the cubic
// through four neighbouring samples.
fn cubic_pieces(values: &[Complex64]) -> Vec<[Complex64; 4]> {
    let last = values.len() - 1;
    (0..last)
        .map(|j| {
            let start = j.saturating_sub(1).min(last - 3);
            let nodes: [f64; 4] =
                std::array::from_fn(|q| 2.0 * ((start + q) as f64 - j as f64) - 1.0);
            let ys: [Complex64; 4] = std::array::from_fn(|q| values[start + q]);
            newton_to_monomial(&nodes, &ys)
        })
        .collect()
}

fn newton_to_monomial<const D: usize>(nodes: &[f64; D], ys: &[Complex64; D]) -> [Complex64; D] {
    let mut dd = *ys;
    for level in 1..D {
        for i in (level..D).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }
    let mut poly = [Complex64::new(0.0, 0.0); D];
    for i in (0..D).rev() {
        // poly = poly * (τ - nodes[i]) + dd[i]
        let mut next = [Complex64::new(0.0, 0.0); D];
        for m in 0..D {
            if m + 1 < D {
                next[m + 1] += poly[m];
            }
            next[m] -= poly[m] * nodes[i];
        }
        next[0] += dd[i];
        poly = next;
    }
    poly
}

// Coefficients of p(c + hσ) in σ.
fn recenter<const D: usize>(p: &[Complex64; D], c: f64, h: f64) -> [Complex64; D] {
    let mut out = [Complex64::new(0.0, 0.0); D];
    // Taylor shift by c, then scale by h.
    let mut q = *p;
    for m in 0..D {
        for i in (m..D - 1).rev() {
            let carry = q[i + 1] * c;
            q[i] += carry;
        }
    }
    let mut scale = 1.0;
    for m in 0..D {
        out[m] = q[m] * scale;
        scale *= h;
    }
    out
}

fn sampled_phase_integral(
    dt: f64,
    pieces: &[[Complex64; 4]],
    omega: f64,
    a: f64,
    b: f64,
) -> Complex64 {
    let intervals = pieces.len();
    let half = 0.5 * dt;
    let full_mu = monomial_moments::<4>(omega * half);
    let first = ((a / dt).floor() as usize).min(intervals - 1);
    let last = (((b / dt).ceil() as usize).max(1)).min(intervals) - 1;
    let mut total = Complex64::new(0.0, 0.0);
    for j in first..=last {
        let lo = j as f64 * dt;
        let hi = lo + dt;
        let s0 = a.max(lo);
        let s1 = b.min(hi);
        if s1 <= s0 {
            continue;
        }
        let whole = (s0 - lo).abs() <= 1e-12 * dt && (hi - s1).abs() <= 1e-12 * dt;
        if whole {
            let center = lo + half;
            let dot: Complex64 = pieces[j].iter().zip(&full_mu).map(|(c, m)| c * m).sum();
            total += Complex64::from_polar(half, -omega * center) * dot;
        } else {
            let t0 = 2.0 * (s0 - lo) / dt - 1.0;
            let t1 = 2.0 * (s1 - lo) / dt - 1.0;
            let sub = recenter(&pieces[j], 0.5 * (t0 + t1), 0.5 * (t1 - t0));
            let sub_half = 0.5 * (s1 - s0);
            let mu = monomial_moments::<4>(omega * sub_half);
            let dot: Complex64 = sub.iter().zip(&mu).map(|(c, m)| c * m).sum();
            total += Complex64::from_polar(sub_half, -omega * 0.5 * (s0 + s1)) * dot;
        }
    }
    total
}

struct FilonBasis {
    nodes: [f64; FILON_DEGREE + 1],
    inverse: [[f64; FILON_DEGREE + 1]; FILON_DEGREE + 1],
}

fn filon_basis() -> &'static FilonBasis {
    static BASIS: OnceLock<FilonBasis> = OnceLock::new();
    BASIS.get_or_init(|| {
        const N: usize = FILON_DEGREE + 1;
        let nodes: [f64; N] =
            std::array::from_fn(|j| -(std::f64::consts::PI * j as f64 / FILON_DEGREE as f64).cos());
        let mut a = [[0.0; N]; N];
        for (i, row) in a.iter_mut().enumerate() {
            for (m, slot) in row.iter_mut().enumerate() {
                *slot = nodes[i].powi(m as i32);
            }
        }
        let mut inv = [[0.0; N]; N];
        for (i, row) in inv.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        for col in 0..N {
            let piv = (col..N)
                .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
                .unwrap();
            a.swap(col, piv);
            inv.swap(col, piv);
            let d = a[col][col];
            for m in 0..N {
                a[col][m] /= d;
                inv[col][m] /= d;
            }
            for r in 0..N {
                if r != col {
                    let f = a[r][col];
                    for m in 0..N {
                        a[r][m] -= f * a[col][m];
                        inv[r][m] -= f * inv[col][m];
                    }
                }
            }
        }
        FilonBasis {
            nodes,
            inverse: inv,
        }
    })
}

fn filon_panel(f: &impl Fn(f64) -> Complex64, omega: f64, a: f64, b: f64) -> Complex64 {
    const N: usize = FILON_DEGREE + 1;
    let basis = filon_basis();
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let ys: [Complex64; N] = std::array::from_fn(|j| f(center + half * basis.nodes[j]));
    let mu = monomial_moments::<N>(omega * half);
    let mut dot = Complex64::new(0.0, 0.0);
    for m in 0..N {
        let coeff: Complex64 = (0..N).map(|j| ys[j] * basis.inverse[m][j]).sum();
        dot += coeff * mu[m];
    }
    Complex64::from_polar(half, -omega * center) * dot
}

fn filon_adaptive(f: &impl Fn(f64) -> Complex64, omega: f64, a: f64, b: f64) -> Result<Complex64> {
    let initial = 4;
    let width = (b - a) / initial as f64;
    let mut stack: Vec<(f64, f64, f64, u32)> = (0..initial)
        .rev()
        .map(|j| {
            (
                a + j as f64 * width,
                if j + 1 == initial {
                    b
                } else {
                    a + (j + 1) as f64 * width
                },
                ABS_TOL / initial as f64,
                0,
            )
        })
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    while let Some((lo, hi, tol, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let whole = filon_panel(f, omega, lo, hi);
        let split = filon_panel(f, omega, lo, mid) + filon_panel(f, omega, mid, hi);
        if !split.is_finite() {
            return Err(AiryError::InvalidInput("NaN in time function".into()));
        }
        if (whole - split).norm() <= tol || depth >= 40 {
            total += split;
        } else {
            stack.push((mid, hi, 0.5 * tol, depth + 1));
            stack.push((lo, mid, 0.5 * tol, depth + 1));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn monomial_moments_agree_across_branches() {
        for lambda in [7.9, 8.1, 30.0] {
            let rec = monomial_moments::<7>(lambda);
            let rule = GaussRule::legendre(200);
            for m in 0..7 {
                let q = rule.integrate(-1.0, 1.0, |x| {
                    Complex64::from_polar(x.powi(m as i32), -lambda * x)
                });
                assert!((rec[m] - q).norm() < 1e-13, "m={m} lambda={lambda}");
            }
        }
    }

    #[test]
    fn constant_forcing_matches_antiderivative() {
        let h = TimeFunction::closed(|_| unit(), 1.0).unwrap();
        let k = std::f64::consts::TAU;
        let w = k * k * k;
        let exact = (unit() - Complex64::from_polar(1.0, -w)) / Complex64::new(0.0, w);
        assert!((moment(&h, k, 1.0).unwrap() - exact).norm() < 1e-13);
        assert!((moment(&h, 0.0, 0.7).unwrap() - 0.7).norm() < 1e-14);
    }

    #[test]
    fn cubic_samples_are_integrated_exactly() {
        let g = |s: f64| Complex64::new(1.0 - 2.0 * s + 3.0 * s * s * s, 0.5 * s);
        let dt = 0.05;
        let vals: Vec<_> = (0..=20).map(|m| g(m as f64 * dt)).collect();
        let sampled = TimeFunction::sampled(dt, vals).unwrap();
        let closed = TimeFunction::closed(g, 1.0).unwrap();
        for k in [0.0, 2.0, 9.0] {
            for (a, b) in [(0.0, 1.0), (0.013, 0.77)] {
                let x = moment_between(&sampled, k, a, b).unwrap();
                let y = moment_between(&closed, k, a, b).unwrap();
                assert!((x - y).norm() < 1e-13, "k={k} a={a} b={b}");
            }
        }
    }

    #[test]
    fn out_of_domain_is_rejected() {
        let h = TimeFunction::closed(|_| unit(), 1.0).unwrap();
        assert!(moment(&h, 1.0, 1.5).is_err());
        assert!(moment(&h, 1.0, -0.1).is_err());
    }

    #[test]
    fn nan_forcing_is_rejected() {
        let h = TimeFunction::closed(|_| Complex64::new(f64::NAN, 0.0), 1.0).unwrap();
        assert!(moment(&h, 1.0, 1.0).is_err());
        assert!(moment(&h, 10.0, 1.0).is_err());
        assert!(TimeFunction::sampled(
            0.1,
            vec![unit(), unit(), Complex64::new(f64::NAN, 0.0), unit()]
        )
        .is_err());
    }
}
