//! Quadrature support: Gauss–Legendre panels, compensated summation, and the
//! rotated-contour evaluation of power-law oscillatory tails.

use crate::{C64, c};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Panel counts and tolerances for the quadrature-backed operations.
#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    /// Gauss–Legendre nodes per panel.
    pub nodes_per_panel: usize,
    /// Relative tolerance targeted by truncation choices.
    pub rel_tol: f64,
    /// Absolute floor below which contributions are dropped.
    pub abs_tol: f64,
    /// Maximum radians of oscillation phase allowed per panel.
    pub max_phase_per_panel: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            nodes_per_panel: 16,
            rel_tol: 1e-13,
            abs_tol: 1e-300,
            max_phase_per_panel: 3.0,
        }
    }
}

/// Neumaier-compensated accumulator for complex values; keeps panel sums
/// deterministic to ~1e-16 regardless of panel count.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum_re: f64,
    sum_im: f64,
    comp_re: f64,
    comp_im: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: C64) {
        fn step(sum: &mut f64, comp: &mut f64, v: f64) {
            let t = *sum + v;
            if sum.abs() >= v.abs() {
                *comp += (*sum - t) + v;
            } else {
                *comp += (v - t) + *sum;
            }
            *sum = t;
        }
        step(&mut self.sum_re, &mut self.comp_re, z.re);
        step(&mut self.sum_im, &mut self.comp_im, z.im);
    }

    #[inline]
    pub fn value(&self) -> C64 {
        c(self.sum_re + self.comp_re, self.sum_im + self.comp_im)
    }
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss–Legendre nodes and weights on [-1, 1], cached per order.
pub fn gauss_legendre(n: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static (Vec<f64>, Vec<f64>)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(v) = guard.get(&n) {
        return v;
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_deriv(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_deriv(n, x);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    let leaked: &'static (Vec<f64>, Vec<f64>) = Box::leak(Box::new((nodes, weights)));
    guard.insert(n, leaked);
    leaked
}

/// Gauss–Legendre integral of `f` over a single interval.
pub fn gl_interval<F: FnMut(f64) -> C64>(mut f: F, a: f64, b: f64, n: usize) -> C64 {
    let (nodes, weights) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = CompensatedSum::new();
    for (x, w) in nodes.iter().zip(weights.iter()) {
        acc.add(f(mid + half * x) * *w);
    }
    acc.value() * half
}

/// Composite Gauss–Legendre over consecutive panels delimited by `breaks`.
pub fn gl_panels<F: FnMut(f64) -> C64>(mut f: F, breaks: &[f64], n: usize) -> C64 {
    let mut acc = CompensatedSum::new();
    for w in breaks.windows(2) {
        acc.add(gl_interval(&mut f, w[0], w[1], n));
    }
    acc.value()
}

/// Equally spaced panel edges covering [a, b] with width at most `max_width`.
pub fn uniform_breaks(a: f64, b: f64, max_width: f64) -> Vec<f64> {
    let count = (((b - a) / max_width).ceil() as usize).max(1);
    let h = (b - a) / count as f64;
    let mut v: Vec<f64> = (0..=count).map(|i| a + h * i as f64).collect();
    v[count] = b;
    v
}

/// Geometric panel edges from `a` to `b` (0 < a < b) with ratio at most `r`.
pub fn geometric_breaks(a: f64, b: f64, r: f64) -> Vec<f64> {
    assert!(a > 0.0 && b > a && r > 1.0);
    let count = ((b / a).ln() / r.ln()).ceil().max(1.0) as usize;
    let step = (b / a).powf(1.0 / count as f64);
    let mut v = Vec::with_capacity(count + 1);
    let mut x = a;
    for _ in 0..count {
        v.push(x);
        x *= step;
    }
    v.push(b);
    v
}

/// `∫_{v0}^∞ v^{-β} e^{-i w v} dv` for real `w ≠ 0`, `v0 > 0`, `Re β > 0`,
/// by rotating onto the descent ray `v = v0 - i·sg(w)·τ` where the kernel
/// becomes `e^{-|w|τ}`. The rotated integrand is smooth and non-oscillatory.
pub fn power_oscillatory_tail(beta: C64, v0: f64, w: f64, cfg: &QuadratureConfig) -> C64 {
    assert!(w != 0.0 && v0 > 0.0);
    let sgw = w.signum();
    let aw = w.abs();
    // e^{-|w|τ} (v0^2+τ^2)^{-Re β/2} < 1e-20 · v0^{-Re β}
    let mut tau_max = 45.0 / aw;
    let poly = |t: f64| -> f64 { (v0 * v0 + t * t).ln() * (-beta.re / 2.0) - v0.ln() * (-beta.re) };
    while aw * tau_max + (-poly(tau_max)) < 46.0 && tau_max < 1e6 * v0 {
        tau_max *= 2.0;
    }
    let g = |tau: f64| -> C64 {
        let v = c(v0, -sgw * tau);
        (-beta * v.ln()).exp() * (-aw * tau).exp()
    };
    // Panels: resolve the e^{-|w|τ} scale near 0, then geometric growth.
    let a0 = (1.0 / aw).min(v0).min(tau_max / 2.0);
    let mut breaks = uniform_breaks(0.0, a0, a0 / 4.0);
    breaks.extend(geometric_breaks(a0, tau_max, 1.7).into_iter().skip(1));
    let integral = gl_panels(g, &breaks, cfg.nodes_per_panel.max(16));
    let phase = c(0.0, -w * v0).exp();
    phase * c(0.0, -sgw) * integral
}
