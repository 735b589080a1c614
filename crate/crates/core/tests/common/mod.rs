//! Independent quadrature oracles for integration tests. Nothing here
//! calls into the library's own quadrature code.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

/// Gauss-Legendre nodes and weights on [-1, 1] from Newton's method on the
/// three-term recurrence.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    for i in 0..order {
        let mut x = (PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut derivative = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for m in 2..=order {
                let p2 = ((2 * m - 1) as f64 * x * p1 - (m - 1) as f64 * p0) / m as f64;
                p0 = p1;
                p1 = p2;
            }
            derivative = order as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / derivative;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * derivative * derivative);
    }
    (nodes, weights)
}

/// Composite 20-point Gauss-Legendre rule on `panels` equal panels.
pub fn composite_gauss(f: impl Fn(f64) -> Complex64, a: f64, b: f64, panels: usize) -> Complex64 {
    let (nodes, weights) = gauss_legendre(20);
    let width = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mut panel = Complex64::new(0.0, 0.0);
        for (x, w) in nodes.iter().zip(&weights) {
            panel += *w * f(lo + 0.5 * width * (x + 1.0));
        }
        total += 0.5 * width * panel;
    }
    total
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    fn recurse(
        f: &dyn Fn(f64) -> Complex64,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `∫₀ᵗ e^{-iωs} h(s) ds` with enough panels to resolve the oscillation.
pub fn oscillatory_oracle(h: impl Fn(f64) -> Complex64, omega: f64, t: f64) -> Complex64 {
    let panels = ((omega.abs() * t / PI).ceil() as usize).max(16);
    composite_gauss(
        |s| Complex64::from_polar(1.0, -omega * s) * h(s),
        0.0,
        t,
        panels,
    )
}

/// `∫₀¹ e^{-ikx} f(x) dx` by the composite rule.
pub fn fourier_oracle(f: impl Fn(f64) -> Complex64, k: f64) -> Complex64 {
    let panels = ((k.abs() / PI).ceil() as usize).max(32);
    composite_gauss(
        |x| Complex64::from_polar(1.0, -k * x) * f(x),
        0.0,
        1.0,
        panels,
    )
}

pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}
