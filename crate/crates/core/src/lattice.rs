use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::datum::Regularity;
use crate::error::{AiryError, Result};

/// Complex amplitudes `c_n`, `|n| <= N`, attached to the wavenumbers
/// `2πn - shift`.
///
/// Entries are stored densely, index `n + N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoefficients {
    shift: f64,
    max_index: usize,
    entries: Vec<Complex64>,
    real_valued: bool,
    regularity: Option<Regularity>,
}

impl SpectralCoefficients {
    pub fn new(shift: f64, max_index: usize, entries: Vec<Complex64>) -> Result<Self> {
        if max_index == 0 {
            return Err(AiryError::InvalidInput(
                "max_index must be at least 1".into(),
            ));
        }
        if !shift.is_finite() {
            return Err(AiryError::InvalidInput(format!(
                "lattice shift {shift} is not finite"
            )));
        }
        if entries.len() != 2 * max_index + 1 {
            return Err(AiryError::InvalidInput(format!(
                "expected {} entries for max_index {}, got {}",
                2 * max_index + 1,
                max_index,
                entries.len()
            )));
        }
        if entries.iter().any(|c| !c.is_finite()) {
            return Err(AiryError::NonFinite("spectral coefficients".into()));
        }
        Ok(Self {
            shift,
            max_index,
            entries,
            real_valued: false,
            regularity: None,
        })
    }

    pub fn zeros(shift: f64, max_index: usize) -> Result<Self> {
        Self::new(
            shift,
            max_index,
            vec![Complex64::new(0.0, 0.0); 2 * max_index + 1],
        )
    }

    pub fn from_fn(shift: f64, max_index: usize, f: impl FnMut(i64) -> Complex64) -> Result<Self> {
        let n = max_index as i64;
        Self::new(shift, max_index, (-n..=n).map(f).collect())
    }

    /// Marks the coefficients as those of a real function and enforces
    /// `c_{-n} = conj(c_n)` by overwriting negative indices.
    pub fn tagged_real(mut self) -> Result<Self> {
        if self.shift != 0.0 {
            return Err(AiryError::ContractViolation(
                "real-valued tag requires an unshifted lattice".into(),
            ));
        }
        let n = self.max_index;
        self.entries[n].im = 0.0;
        for m in 1..=n {
            self.entries[n - m] = self.entries[n + m].conj();
        }
        self.real_valued = true;
        Ok(self)
    }

    pub fn with_regularity(mut self, regularity: Regularity) -> Self {
        self.regularity = Some(regularity);
        self
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn is_real_valued(&self) -> bool {
        self.real_valued
    }

    pub fn regularity(&self) -> Option<Regularity> {
        self.regularity
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        let n = self.max_index as i64;
        -n..=n
    }

    /// `c_n`, or zero outside the stored range.
    pub fn get(&self, n: i64) -> Complex64 {
        let idx = n + self.max_index as i64;
        if idx < 0 || idx as usize >= self.entries.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.entries[idx as usize]
        }
    }

    pub fn wavenumber(&self, n: i64) -> f64 {
        lattice_wavenumber(n, self.shift)
    }

    /// `(n, k_n - shift, c_n)` in ascending `n`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64, Complex64)> + '_ {
        self.indices()
            .zip(self.entries.iter())
            .map(move |(n, &c)| (n, lattice_wavenumber(n, self.shift), c))
    }

    /// Coefficients of the free evolution at time `t`: `c_n e^{i k^3 t}`.
    pub fn evolved(&self, t: f64) -> Self {
        let mut out = self.clone();
        for (slot, (_, k, c)) in out.entries.iter_mut().zip(self.iter()) {
            *slot = c * Complex64::from_polar(1.0, k * k * k * t);
        }
        out.real_valued = false;
        out
    }

    /// Keeps only `|n| <= max_index`.
    pub fn truncated(&self, max_index: usize) -> Result<Self> {
        let mut out = Self::from_fn(self.shift, max_index, |m| self.get(m))?;
        out.real_valued = self.real_valued && max_index <= self.max_index;
        out.regularity = self.regularity;
        Ok(out)
    }

    pub fn energy(&self) -> f64 {
        self.entries.iter().map(|c| c.norm_sqr()).sum()
    }
}

pub fn lattice_wavenumber(n: i64, shift: f64) -> f64 {
    TAU * n as f64 - shift
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavenumbers_follow_the_lattice() {
        let c = SpectralCoefficients::zeros(0.5, 3).unwrap();
        for n in -3..=3 {
            assert_eq!(c.wavenumber(n), TAU * n as f64 - 0.5);
        }
    }

    #[test]
    fn real_tag_symmetrizes() {
        let c = SpectralCoefficients::from_fn(0.0, 2, |n| Complex64::new(n as f64, 1.0))
            .unwrap()
            .tagged_real()
            .unwrap();
        assert_eq!(c.get(-2), c.get(2).conj());
        assert_eq!(c.get(0).im, 0.0);
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(SpectralCoefficients::new(0.0, 2, vec![Complex64::new(0.0, 0.0); 4]).is_err());
    }
}
