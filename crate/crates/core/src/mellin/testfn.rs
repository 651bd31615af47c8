//! Evaluatable test functions with derivative oracles.
//!
//! The continuation ladder for `Re s ≤ 1/2` differentiates under the
//! integral sign, so Schwartz-class inputs must ship exact derivatives; the
//! library provides polynomial × Gaussian families with closed-form
//! derivative tables, the smooth cutoff, and quadrature-backed Fourier
//! transforms of the above.

use super::types::SingularityType;
use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::quad::{self, QuadratureConfig};
use crate::{C64, c};
use std::sync::Arc;

/// Ladder depth required of Schwartz inputs.
pub const MAX_DERIVATIVE_DEPTH: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayClass {
    Schwartz,
    CompactlySupported,
    SisSingular,
}

type EvalFn = dyn Fn(f64) -> C64 + Send + Sync;
type DerivFn = dyn Fn(usize, f64) -> C64 + Send + Sync;

/// An evaluatable function on ℝ with derivative oracles and decay metadata;
/// the numeric stand-in for members of S(ℝ) and S_sis(ℝ).
#[derive(Clone)]
pub struct TestFunction {
    eval: Arc<EvalFn>,
    deriv: Arc<DerivFn>,
    pub max_derivative: usize,
    pub parity: Option<Parity>,
    pub decay_class: DecayClass,
    pub singular_terms: Vec<SingularityType>,
    pub label: String,
}

impl std::fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestFunction")
            .field("label", &self.label)
            .field("parity", &self.parity)
            .field("decay_class", &self.decay_class)
            .field("max_derivative", &self.max_derivative)
            .finish_non_exhaustive()
    }
}

impl TestFunction {
    pub fn from_closures(
        label: impl Into<String>,
        eval: impl Fn(f64) -> C64 + Send + Sync + 'static,
        deriv: impl Fn(usize, f64) -> C64 + Send + Sync + 'static,
        max_derivative: usize,
        parity: Option<Parity>,
        decay_class: DecayClass,
    ) -> Self {
        TestFunction {
            eval: Arc::new(eval),
            deriv: Arc::new(deriv),
            max_derivative,
            parity,
            decay_class,
            singular_terms: Vec::new(),
            label: label.into(),
        }
    }

    #[inline]
    pub fn evaluate(&self, x: f64) -> C64 {
        (self.eval)(x)
    }

    /// m-th derivative; `derivative(0, x) = evaluate(x)`.
    pub fn derivative(&self, m: usize, x: f64) -> Result<C64> {
        if m == 0 {
            return Ok(self.evaluate(x));
        }
        if m > self.max_derivative {
            return Err(Error::DerivativeDepth { needed: m, available: self.max_derivative });
        }
        Ok((self.deriv)(m, x))
    }

    /// The derivative as a test function in its own right (oracles shifted by
    /// one order, parity flipped).
    pub fn derivative_fn(&self) -> Result<TestFunction> {
        if self.max_derivative == 0 {
            return Err(Error::DerivativeDepth { needed: 1, available: 0 });
        }
        let ev = self.deriv.clone();
        let dv = self.deriv.clone();
        Ok(TestFunction {
            eval: Arc::new(move |x| ev(1, x)),
            deriv: Arc::new(move |m, x| dv(m + 1, x)),
            max_derivative: self.max_derivative - 1,
            parity: self.parity.map(|p| p.flip()),
            decay_class: self.decay_class,
            singular_terms: self.singular_terms.clone(),
            label: format!("d/dx {}", self.label),
        })
    }

    /// x · f(x) as a test function.
    pub fn times_x(&self) -> TestFunction {
        let ev = self.eval.clone();
        let dv = self.deriv.clone();
        let ev2 = self.eval.clone();
        TestFunction {
            eval: Arc::new(move |x| x * ev(x)),
            // (x f)^{(m)} = x f^{(m)} + m f^{(m-1)}
            deriv: Arc::new(move |m, x| {
                let lower = if m == 1 { ev2(x) } else { dv(m - 1, x) };
                x * dv(m, x) + m as f64 * lower
            }),
            max_derivative: self.max_derivative.saturating_sub(1),
            parity: self.parity.map(|p| p.flip()),
            decay_class: self.decay_class,
            singular_terms: self.singular_terms.clone(),
            label: format!("x*{}", self.label),
        }
    }

    /// f(-x).
    pub fn reflected(&self) -> TestFunction {
        let ev = self.eval.clone();
        let dv = self.deriv.clone();
        TestFunction {
            eval: Arc::new(move |x| ev(-x)),
            deriv: Arc::new(move |m, x| {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                sign * dv(m, -x)
            }),
            max_derivative: self.max_derivative,
            parity: self.parity,
            decay_class: self.decay_class,
            singular_terms: self.singular_terms.clone(),
            label: format!("{}(-x)", self.label),
        }
    }

    /// The Gaussian e^{-πx²} (self-dual under the Fourier transform).
    pub fn gaussian() -> TestFunction {
        TestFunction::poly_gaussian(&[1.0])
    }

    /// x · e^{-πx²} (Fourier transform: -i x e^{-πx²}).
    pub fn x_gaussian() -> TestFunction {
        TestFunction::poly_gaussian(&[0.0, 1.0])
    }

    /// x² · e^{-πx²}.
    pub fn x2_gaussian() -> TestFunction {
        TestFunction::poly_gaussian(&[0.0, 0.0, 1.0])
    }

    /// p(x)·e^{-πx²} with real coefficients `poly[k]` of x^k. Derivatives are
    /// generated by the exact recurrence p ↦ p' - 2πx·p.
    pub fn poly_gaussian(poly: &[f64]) -> TestFunction {
        const DEPTH: usize = 40;
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(DEPTH + 1);
        rows.push(poly.to_vec());
        for m in 0..DEPTH {
            let prev = &rows[m];
            let mut next = vec![0.0; prev.len() + 1];
            for (k, &a) in prev.iter().enumerate() {
                if k >= 1 {
                    next[k - 1] += a * k as f64;
                }
                next[k + 1] -= 2.0 * std::f64::consts::PI * a;
            }
            rows.push(next);
        }
        let eval_poly = |coeffs: &[f64], x: f64| -> f64 {
            let mut acc = 0.0;
            for &a in coeffs.iter().rev() {
                acc = acc * x + a;
            }
            acc
        };
        let all_even = poly.iter().enumerate().all(|(k, &a)| a == 0.0 || k % 2 == 0);
        let all_odd = poly.iter().enumerate().all(|(k, &a)| a == 0.0 || k % 2 == 1);
        let parity = if poly.iter().all(|&a| a == 0.0) {
            Some(Parity::Even)
        } else if all_even {
            Some(Parity::Even)
        } else if all_odd {
            Some(Parity::Odd)
        } else {
            None
        };
        let rows = Arc::new(rows);
        let rows_e = rows.clone();
        let label = format!("poly{poly:?}*gaussian");
        TestFunction {
            eval: Arc::new(move |x| {
                c(eval_poly(&rows_e[0], x) * (-std::f64::consts::PI * x * x).exp(), 0.0)
            }),
            deriv: Arc::new(move |m, x| {
                c(eval_poly(&rows[m], x) * (-std::f64::consts::PI * x * x).exp(), 0.0)
            }),
            max_derivative: DEPTH - 1,
            parity,
            decay_class: DecayClass::Schwartz,
            singular_terms: Vec::new(),
            label,
        }
    }

    /// The smooth cutoff φ of radius r: 1 on |x| ≤ r/2, 0 on |x| ≥ r.
    pub fn smooth_cutoff_fn(radius: f64) -> TestFunction {
        let r = radius;
        TestFunction {
            eval: Arc::new(move |x| c(smooth_cutoff(x, r), 0.0)),
            deriv: Arc::new(move |m, x| {
                if m == 1 {
                    c(smooth_cutoff_derivative(x, r), 0.0)
                } else {
                    c(f64::NAN, 0.0)
                }
            }),
            max_derivative: 1,
            parity: Some(Parity::Even),
            decay_class: DecayClass::CompactlySupported,
            singular_terms: Vec::new(),
            label: format!("cutoff(r={r})"),
        }
    }

    /// Numerical Fourier transform `f̂(y) = ∫ f(x) e(-xy) dx`, with derivative
    /// oracle `f̂^{(m)}(y) = ∫ (-2πi x)^m f(x) e(-xy) dx`.
    pub fn fourier(f: &TestFunction, cfg: &QuadratureConfig) -> TestFunction {
        let f1 = f.clone();
        let f2 = f.clone();
        let cfg1 = cfg.clone();
        let cfg2 = cfg.clone();
        let parity = f.parity;
        TestFunction {
            eval: Arc::new(move |y| fourier_weighted(&f1, 0, y, &cfg1)),
            deriv: Arc::new(move |m, y| fourier_weighted(&f2, m, y, &cfg2)),
            max_derivative: MAX_DERIVATIVE_DEPTH,
            parity,
            decay_class: DecayClass::Schwartz,
            singular_terms: Vec::new(),
            label: format!("fourier[{}]", f.label),
        }
    }
}

/// `∫ (-2πi x)^m f(x) e(-xy) dx` by panel quadrature over f's effective
/// support.
fn fourier_weighted(f: &TestFunction, m: usize, y: f64, cfg: &QuadratureConfig) -> C64 {
    let r = support_radius(f, 1e-20);
    let width = (0.5f64).min(cfg.max_phase_per_panel / (2.0 * std::f64::consts::PI * y.abs().max(1.0)));
    let breaks = quad::uniform_breaks(-r, r, width);
    let minus_2pi_i = c(0.0, -2.0 * std::f64::consts::PI);
    quad::gl_panels(
        |x| {
            let w = (minus_2pi_i * x).powu(m as u32);
            w * f.evaluate(x) * (minus_2pi_i * (x * y)).exp()
        },
        &breaks,
        cfg.nodes_per_panel,
    )
}

/// Radius beyond which |f| stays below `tol` (scanned outward; Schwartz decay
/// makes this a short scan).
pub fn support_radius(f: &TestFunction, tol: f64) -> f64 {
    let mut r = 1.0f64;
    let mut quiet = 0;
    while r < 1e6 {
        let m = f.evaluate(r).norm().max(f.evaluate(-r).norm());
        if m < tol {
            quiet += 1;
            if quiet >= 3 {
                return r;
            }
        } else {
            quiet = 0;
        }
        r *= 1.25;
    }
    r
}

fn bump(v: f64) -> f64 {
    if v.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - v * v)).exp()
    }
}

fn bump_mass() -> f64 {
    use std::sync::OnceLock;
    static MASS: OnceLock<f64> = OnceLock::new();
    *MASS.get_or_init(|| {
        quad::gl_panels(|v| c(bump(v), 0.0), &quad::uniform_breaks(-1.0, 1.0, 0.125), 20).re
    })
}

/// Even C∞ cutoff: 1 on |x| ≤ r/2, 0 on |x| ≥ r, smooth-stepped through the
/// normalized integral of the bump exp(1 - 1/(1-u²)) on the transition
/// annulus.
pub fn smooth_cutoff(x: f64, radius: f64) -> f64 {
    assert!(radius > 0.0, "cutoff radius must be positive");
    let u = (x.abs() - 0.75 * radius) / (0.25 * radius);
    if u <= -1.0 {
        1.0
    } else if u >= 1.0 {
        0.0
    } else {
        let tail = quad::gl_panels(|v| c(bump(v), 0.0), &quad::uniform_breaks(u, 1.0, 0.125), 20).re;
        (tail / bump_mass()).clamp(0.0, 1.0)
    }
}

/// dφ/dx of [`smooth_cutoff`]; closed form through the bump.
pub fn smooth_cutoff_derivative(x: f64, radius: f64) -> f64 {
    let u = (x.abs() - 0.75 * radius) / (0.25 * radius);
    if u.abs() >= 1.0 {
        return 0.0;
    }
    let d = -bump(u) / bump_mass() / (0.25 * radius);
    if x >= 0.0 { d } else { -d }
}

/// Residue at s = 0 of `M_δ φ` for any cutoff φ ≡ 1 near 0: 2 for the even
/// transform, 0 for the odd.
pub fn cutoff_mellin_residue(delta: Parity) -> C64 {
    match delta {
        Parity::Even => c(2.0, 0.0),
        Parity::Odd => c(0.0, 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_derivatives_match_finite_differences() {
        let f = TestFunction::gaussian();
        let h = 1e-5;
        for &x in &[0.0, 0.3, -1.2, 2.0] {
            let fd = (f.evaluate(x + h) - f.evaluate(x - h)) / (2.0 * h);
            let an = f.derivative(1, x).unwrap();
            assert!((fd - an).norm() < 1e-8, "f' at {x}");
            let fd2 = (f.evaluate(x + h) - 2.0 * f.evaluate(x) + f.evaluate(x - h)) / (h * h);
            let an2 = f.derivative(2, x).unwrap();
            assert!((fd2 - an2).norm() < 1e-4, "f'' at {x}");
        }
        // f''(0) = -2π for e^{-πx²}
        assert_relative_eq!(
            f.derivative(2, 0.0).unwrap().re,
            -2.0 * std::f64::consts::PI,
            max_relative = 1e-14
        );
    }

    #[test]
    fn parity_detection_and_flip() {
        assert_eq!(TestFunction::gaussian().parity, Some(Parity::Even));
        assert_eq!(TestFunction::x_gaussian().parity, Some(Parity::Odd));
        assert_eq!(TestFunction::poly_gaussian(&[1.0, 1.0]).parity, None);
        let d = TestFunction::gaussian().derivative_fn().unwrap();
        assert_eq!(d.parity, Some(Parity::Odd));
        // sampled parity invariant
        let f = TestFunction::x_gaussian();
        for &x in &[0.2, 1.0, 2.3] {
            assert!((f.evaluate(-x) + f.evaluate(x)).norm() < 1e-16);
        }
    }

    #[test]
    fn times_x_derivatives() {
        let f = TestFunction::gaussian().times_x();
        let g = TestFunction::x_gaussian();
        for &x in &[0.0, 0.7, -1.4] {
            assert!((f.evaluate(x) - g.evaluate(x)).norm() < 1e-16);
            for m in 1..=6 {
                let a = f.derivative(m, x).unwrap();
                let b = g.derivative(m, x).unwrap();
                assert!((a - b).norm() < 1e-12 * b.norm().max(1.0), "order {m} at {x}");
            }
        }
    }

    #[test]
    fn cutoff_shape() {
        let r = 2.0;
        assert_eq!(smooth_cutoff(0.0, r), 1.0);
        assert_eq!(smooth_cutoff(0.9, r), 1.0);
        assert_eq!(smooth_cutoff(2.1, r), 0.0);
        assert_eq!(smooth_cutoff(4.0, r), 0.0);
        let mid = smooth_cutoff(1.5, r);
        assert!(mid > 0.0 && mid < 1.0);
        // even
        assert_eq!(smooth_cutoff(-1.3, r), smooth_cutoff(1.3, r));
        // monotone decreasing through the annulus
        let mut last = 1.0;
        for i in 0..=20 {
            let v = smooth_cutoff(1.0 + i as f64 * 0.05, r);
            assert!(v <= last + 1e-15);
            last = v;
        }
        // derivative matches finite differences
        let h = 1e-6;
        for &x in &[1.2, 1.5, 1.8, -1.5] {
            let fd = (smooth_cutoff(x + h, r) - smooth_cutoff(x - h, r)) / (2.0 * h);
            let an = smooth_cutoff_derivative(x, r);
            assert!((fd - an).abs() < 1e-6, "at {x}: {fd} vs {an}");
        }
    }

    #[test]
    fn cutoff_residues() {
        assert_eq!(cutoff_mellin_residue(Parity::Even), c(2.0, 0.0));
        assert_eq!(cutoff_mellin_residue(Parity::Odd), c(0.0, 0.0));
    }

    #[test]
    fn fourier_of_gaussian_is_gaussian() {
        let cfg = QuadratureConfig::default();
        let f = TestFunction::gaussian();
        let fhat = TestFunction::fourier(&f, &cfg);
        for &y in &[0.0, 0.5, 1.0, 2.0, -1.3] {
            let got = fhat.evaluate(y);
            let want = f.evaluate(y);
            assert!((got - want).norm() < 1e-13, "fhat({y}) = {got}, want {want}");
        }
        // x gaussian: f̂ = -i y e^{-πy²}
        let g = TestFunction::x_gaussian();
        let ghat = TestFunction::fourier(&g, &cfg);
        for &y in &[0.4, 1.1] {
            let want = c(0.0, -1.0) * y * (-std::f64::consts::PI * y * y).exp();
            assert!((ghat.evaluate(y) - want).norm() < 1e-13);
        }
    }
}
