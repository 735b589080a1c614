//! Coefficient decay fits, jump detection, rational-time classification
//! and periodicity scans.

use num_complex::Complex64;

use crate::error::{AiryError, Result};
use crate::exec::Exec;
use crate::lattice::SpectralCoefficients;
use crate::T_REV;

const MIN_FIT_POINTS: usize = 8;

/// Least-squares fit `log|c_n| ≈ intercept - α log n` over `[n_lo, n_hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    pub alpha: f64,
    pub intercept: f64,
    pub n_lo: usize,
    pub n_hi: usize,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
    /// Indices dropped because their magnitude was zero or not finite.
    pub excluded: usize,
}

/// `magnitudes[n]` is `|c_n|` for `n = 0, 1, ...`.
pub fn decay_exponent(magnitudes: &[f64], n_lo: usize, n_hi: usize) -> Result<DecayReport> {
    if n_lo < 1 || n_hi < n_lo + MIN_FIT_POINTS {
        return Err(AiryError::Fit(format!(
            "fit range [{n_lo}, {n_hi}] must have n_lo >= 1 and n_hi >= n_lo + {MIN_FIT_POINTS}"
        )));
    }
    if n_hi >= magnitudes.len() {
        return Err(AiryError::Fit(format!(
            "fit range ends at {n_hi} but only {} magnitudes were given",
            magnitudes.len()
        )));
    }
    let points: Vec<(f64, f64)> = (n_lo..=n_hi)
        .filter(|&n| magnitudes[n] > 0.0 && magnitudes[n].is_finite())
        .map(|n| ((n as f64).ln(), magnitudes[n].ln()))
        .collect();
    let excluded = n_hi - n_lo + 1 - points.len();
    if points.len() < MIN_FIT_POINTS {
        return Err(AiryError::Fit(format!(
            "only {} usable magnitudes in [{n_lo}, {n_hi}]",
            points.len()
        )));
    }
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual = (points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / count)
        .sqrt();
    Ok(DecayReport {
        alpha: -slope,
        intercept,
        n_lo,
        n_hi,
        residual,
        excluded,
    })
}

/// `sqrt((|c_n|² + |c_{-n}|²)/2)` for `n = 0..=N`.
pub fn symmetric_magnitudes(coeffs: &SpectralCoefficients) -> Vec<f64> {
    (0..=coeffs.max_index() as i64)
        .map(|n| (0.5 * (coeffs.get(n).norm_sqr() + coeffs.get(-n).norm_sqr())).sqrt())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpSettings {
    /// Increment must exceed this multiple of the median increment.
    pub ratio: f64,
    /// ...and this absolute floor.
    pub floor: f64,
    /// Half-width `w` of the increment `|u(x_{i+w}) - u(x_{i-w})|`.
    pub window: usize,
    /// Treat the profile as 1-periodic (last point duplicates the first).
    pub periodic: bool,
}

impl Default for JumpSettings {
    fn default() -> Self {
        Self {
            ratio: 5.0,
            floor: 0.05,
            window: 1,
            periodic: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub location: f64,
    pub magnitude: f64,
}

/// Locates concentrated increments in a profile sampled on the uniform
/// grid `x_i = i/P`, `i = 0..=P`.
///
/// This is a heuristic: an increment counts as a jump when it stands far
/// above the typical (median) increment and above an absolute floor.
/// Adjacent flagged points are merged into one jump.
pub fn detect_jumps(profile: &[Complex64], settings: &JumpSettings) -> Result<Vec<Jump>> {
    if profile.len() < 64 {
        return Err(AiryError::InvalidInput(format!(
            "jump detection needs at least 64 points, got {}",
            profile.len()
        )));
    }
    if settings.window == 0 {
        return Err(AiryError::InvalidInput(
            "jump window must be positive".into(),
        ));
    }
    let intervals = profile.len() - 1;
    let w = settings.window;
    let (indices, distinct): (Vec<usize>, usize) = if settings.periodic {
        ((0..intervals).collect(), intervals)
    } else {
        ((w..=intervals - w).collect(), profile.len())
    };
    let at = |i: isize| -> Complex64 {
        if settings.periodic {
            profile[i.rem_euclid(intervals as isize) as usize]
        } else {
            profile[i as usize]
        }
    };
    let increments: Vec<f64> = indices
        .iter()
        .map(|&i| (at(i as isize + w as isize) - at(i as isize - w as isize)).norm())
        .collect();
    let mut sorted = increments.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    let threshold = (settings.ratio * median).max(settings.floor);

    let flagged: Vec<(usize, f64)> = indices
        .iter()
        .zip(&increments)
        .filter(|(_, &v)| v > threshold)
        .map(|(&i, &v)| (i, v))
        .collect();
    let mut clusters: Vec<Vec<(usize, f64)>> = Vec::new();
    for item in flagged {
        match clusters.last_mut() {
            Some(last) if item.0 - last.last().unwrap().0 <= 2 * w => last.push(item),
            _ => clusters.push(vec![item]),
        }
    }
    if settings.periodic && clusters.len() > 1 {
        let first = clusters[0][0].0;
        let last = clusters.last().unwrap().last().unwrap().0;
        if first + distinct - last <= 2 * w {
            let head = clusters.remove(0);
            clusters
                .last_mut()
                .unwrap()
                .extend(head.into_iter().map(|(i, v)| (i + distinct, v)));
        }
    }
    let mut jumps: Vec<Jump> = clusters
        .into_iter()
        .map(|cluster| {
            let peak = cluster.iter().map(|c| c.1).fold(0.0, f64::max);
            let at_peak: Vec<f64> = cluster
                .iter()
                .filter(|c| c.1 >= peak * (1.0 - 1e-12))
                .map(|c| c.0 as f64)
                .collect();
            let index = at_peak.iter().sum::<f64>() / at_peak.len() as f64;
            let mut location = index / intervals as f64;
            if settings.periodic {
                location = location.rem_euclid(1.0);
            }
            Jump {
                location,
                magnitude: peak,
            }
        })
        .collect();
    jumps.sort_by(|a, b| a.location.total_cmp(&b.location));
    Ok(jumps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeClass {
    /// `t = (p/q) T_rev` in lowest terms.
    Rational {
        p: u64,
        q: u64,
    },
    Generic,
}

/// Rational when `|t - (p/q) T_rev| <= 1e-9` for some `q <= q_max`,
/// reporting the smallest such `q`.
pub fn classify_time(t: f64, q_max: u64) -> Result<TimeClass> {
    if !(t >= 0.0 && t.is_finite()) || q_max == 0 {
        return Err(AiryError::InvalidInput(format!(
            "cannot classify t = {t} with q_max = {q_max}"
        )));
    }
    let s = t / T_REV;
    for q in 1..=q_max {
        let p = (s * q as f64).round();
        if (t - p / q as f64 * T_REV).abs() <= 1e-9 && gcd(p as u64, q) == 1 {
            return Ok(TimeClass::Rational { p: p as u64, q });
        }
    }
    Ok(TimeClass::Generic)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(p/q) T_rev` for coprime `p, q` with `q <= q_max` and
/// `0 < p/q <= max_ratio`, ascending and without duplicates.
pub fn rational_candidates(q_max: u64, max_ratio: f64) -> Vec<f64> {
    let mut out: Vec<(u64, u64)> = Vec::new();
    for q in 1..=q_max {
        let p_max = (max_ratio * q as f64).floor() as u64;
        for p in 1..=p_max {
            if gcd(p, q) == 1 {
                out.push((p, q));
            }
        }
    }
    out.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    out.into_iter()
        .map(|(p, q)| p as f64 / q as f64 * T_REV)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicityEntry {
    pub period: f64,
    /// Max over sampled `t₀` of `‖u(·, t₀ + T) - u(·, t₀)‖₂`.
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicityReport {
    pub entries: Vec<PeriodicityEntry>,
    pub tolerance: f64,
}

impl PeriodicityReport {
    /// Candidates whose distance fell below the tolerance.
    pub fn flagged(&self) -> Vec<f64> {
        self.entries
            .iter()
            .filter(|e| e.distance < self.tolerance)
            .map(|e| e.period)
            .collect()
    }

    pub fn min_distance(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.distance)
            .fold(f64::INFINITY, f64::min)
    }
}

/// L² norm over [0,1] of a profile on a uniform grid with both endpoints,
/// by the trapezoidal rule.
pub fn profile_l2(profile: &[Complex64]) -> f64 {
    let n = profile.len();
    if n < 2 {
        return 0.0;
    }
    let h = 1.0 / (n - 1) as f64;
    let inner: f64 = profile[1..n - 1].iter().map(|c| c.norm_sqr()).sum();
    (h * (inner + 0.5 * (profile[0].norm_sqr() + profile[n - 1].norm_sqr()))).sqrt()
}

/// Compares profiles one candidate period apart at `samples` start times
/// spread over `[0, t_max/2]`.
pub fn periodicity_scan<F>(
    evaluate: F,
    candidates: &[f64],
    t_max: f64,
    samples: usize,
    tolerance: f64,
    exec: Exec,
) -> Result<PeriodicityReport>
where
    F: Fn(f64) -> Result<Vec<Complex64>> + Sync + Send,
{
    if samples == 0 || !(t_max > 0.0) {
        return Err(AiryError::InvalidInput(
            "periodicity scan needs t_max > 0 and samples > 0".into(),
        ));
    }
    if let Some(bad) = candidates
        .iter()
        .find(|&&c| !(c > 0.0) || c > 0.5 * t_max * (1.0 + 1e-12))
    {
        return Err(AiryError::InvalidInput(format!(
            "candidate period {bad} not in (0, t_max/2]"
        )));
    }
    let starts: Vec<f64> = (0..samples)
        .map(|j| {
            if samples == 1 {
                0.0
            } else {
                0.5 * t_max * j as f64 / (samples - 1) as f64
            }
        })
        .collect();
    let pairs = candidates.len() * samples;
    let distances = exec.try_map_indexed(pairs, |idx| {
        let period = candidates[idx / samples];
        let t0 = starts[idx % samples];
        let a = evaluate(t0)?;
        let b = evaluate(t0 + period)?;
        if a.len() != b.len() {
            return Err(AiryError::ContractViolation(
                "evaluator returned profiles of different length".into(),
            ));
        }
        let diff: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| y - x).collect();
        Ok(profile_l2(&diff))
    })?;
    let entries = candidates
        .iter()
        .enumerate()
        .map(|(c, &period)| PeriodicityEntry {
            period,
            distance: distances[c * samples..(c + 1) * samples]
                .iter()
                .copied()
                .fold(0.0, f64::max),
        })
        .collect();
    Ok(PeriodicityReport { entries, tolerance })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        for alpha in [1.0, 2.0] {
            let mags: Vec<f64> = (0..200)
                .map(|n| if n == 0 { 1.0 } else { (n as f64).powf(-alpha) })
                .collect();
            let r = decay_exponent(&mags, 16, 128).unwrap();
            assert!((r.alpha - alpha).abs() < 1e-12);
            assert!(r.residual < 1e-12);
        }
    }

    #[test]
    fn too_few_points_is_a_fit_error() {
        let mut mags = vec![1.0; 40];
        for m in mags.iter_mut().skip(12) {
            *m = 0.0;
        }
        assert!(matches!(
            decay_exponent(&mags, 5, 30),
            Err(AiryError::Fit(_))
        ));
        assert!(decay_exponent(&mags, 5, 10).is_err());
    }

    #[test]
    fn step_has_one_jump() {
        let p = 256;
        let profile: Vec<Complex64> = (0..=p)
            .map(|i| {
                Complex64::new(
                    if (i as f64) / (p as f64) < 0.5 {
                        1.0
                    } else {
                        0.0
                    },
                    0.0,
                )
            })
            .collect();
        let jumps = detect_jumps(&profile, &JumpSettings::default()).unwrap();
        assert_eq!(jumps.len(), 1);
        assert!((jumps[0].location - 0.5).abs() <= 1.0 / p as f64);
        assert!((jumps[0].magnitude - 1.0).abs() < 0.05);
    }

    #[test]
    fn smooth_profile_has_none() {
        let profile: Vec<Complex64> = (0..=256)
            .map(|i| Complex64::new((std::f64::consts::TAU * i as f64 / 256.0).sin(), 0.0))
            .collect();
        assert!(detect_jumps(&profile, &JumpSettings::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn rational_and_generic_times() {
        assert_eq!(
            classify_time(T_REV, 5).unwrap(),
            TimeClass::Rational { p: 1, q: 1 }
        );
        assert_eq!(
            classify_time(0.0, 5).unwrap(),
            TimeClass::Rational { p: 0, q: 1 }
        );
        assert_eq!(
            classify_time(2f64.sqrt() * T_REV, 50).unwrap(),
            TimeClass::Generic
        );
        assert_eq!(
            classify_time(2.0 / 6.0 * T_REV, 8).unwrap(),
            TimeClass::Rational { p: 1, q: 3 }
        );
    }

    #[test]
    fn candidates_are_reduced_fractions() {
        let c = rational_candidates(4, 1.0);
        // 1/4 1/3 1/2 2/3 3/4 1
        assert_eq!(c.len(), 6);
        assert!((c[2] - 0.5 * T_REV).abs() < 1e-18);
    }
}
