//! Banded LU factorization with partial pivoting.

use num_complex::Complex64;

/// Square matrix with `kl` sub- and `ku` super-diagonals. Each row keeps
/// room for the `kl` extra super-diagonals that pivoting can create.
#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<Complex64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![Complex64::new(0.0, 0.0); n * width],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.ku + self.kl);
        i * self.width + (j + self.kl - i)
    }

    pub fn add(&mut self, i: usize, j: usize, value: Complex64) {
        assert!(
            j + self.kl >= i && j <= i + self.ku,
            "entry ({i}, {j}) outside band kl={} ku={}",
            self.kl,
            self.ku
        );
        let s = self.slot(i, j);
        self.data[s] += value;
    }

    /// In-place factorization; `Err(k)` reports the first zero pivot column.
    pub fn factor(mut self) -> Result<BandLu, usize> {
        let n = self.n;
        let reach = self.kl + self.ku;
        let mut pivots = vec![0usize; n];
        let scale = self
            .data
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        for k in 0..n {
            let last_row = (k + self.kl).min(n - 1);
            let mut p = k;
            let mut best = self.data[self.slot(k, k)].norm();
            for i in k + 1..=last_row {
                let v = self.data[self.slot(i, k)].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= 1e-14 * scale {
                return Err(k);
            }
            pivots[k] = p;
            let last_col = (k + reach).min(n - 1);
            if p != k {
                for j in k..=last_col {
                    let a = self.slot(k, j);
                    let b = self.slot(p, j);
                    self.data.swap(a, b);
                }
            }
            let diag = self.data[self.slot(k, k)];
            for i in k + 1..=last_row {
                let s = self.slot(i, k);
                let factor = self.data[s] / diag;
                self.data[s] = factor;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..=last_col {
                    let src = self.data[self.slot(k, j)];
                    let dst = self.slot(i, j);
                    self.data[dst] -= factor * src;
                }
            }
        }
        Ok(BandLu {
            matrix: self,
            pivots,
        })
    }
}

#[derive(Debug, Clone)]
pub struct BandLu {
    matrix: BandMatrix,
    pivots: Vec<usize>,
}

impl BandLu {
    pub fn solve_in_place(&self, b: &mut [Complex64]) {
        let a = &self.matrix;
        let n = a.n;
        assert_eq!(b.len(), n);
        for k in 0..n {
            let p = self.pivots[k];
            if p != k {
                b.swap(k, p);
            }
            let bk = b[k];
            if bk == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i in k + 1..=(k + a.kl).min(n - 1) {
                b[i] -= a.data[a.slot(i, k)] * bk;
            }
        }
        let reach = a.kl + a.ku;
        for k in (0..n).rev() {
            let mut acc = b[k];
            for j in k + 1..=(k + reach).min(n - 1) {
                acc -= a.data[a.slot(k, j)] * b[j];
            }
            b[k] = acc / a.data[a.slot(k, k)];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_a_pivoting_system() {
        // Zero on the diagonal forces a row swap.
        let n = 6;
        let mut m = BandMatrix::zeros(n, 2, 1);
        let mut dense = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for i in 0..n {
            for j in i.saturating_sub(2)..=(i + 1).min(n - 1) {
                let v = if i == j && i % 2 == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(
                        1.0 + (i * 7 + j * 3) as f64 % 5.0,
                        (i as f64 - j as f64) * 0.3,
                    )
                };
                m.add(i, j, v);
                dense[i][j] = v;
            }
        }
        let x: Vec<_> = (0..n).map(|i| Complex64::new(i as f64, 1.0)).collect();
        let mut b: Vec<_> = dense
            .iter()
            .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
            .collect();
        m.factor().unwrap().solve_in_place(&mut b);
        for (u, v) in b.iter().zip(&x) {
            assert!((u - v).norm() < 1e-12);
        }
    }

    #[test]
    fn reports_singular_column() {
        let mut m = BandMatrix::zeros(3, 1, 1);
        m.add(0, 0, Complex64::new(1.0, 0.0));
        m.add(2, 2, Complex64::new(1.0, 0.0));
        assert_eq!(m.factor().unwrap_err(), 1);
    }
}
