//! Complex special functions: Γ, log Γ, upper incomplete Γ, the complex error
//! function, the signed Mellin kernels `G_δ(s)`, and the auxiliary factors
//! `c(β)`, `h(s)`, `E(s)` of the Gamma-separation identities.
//!
//! `G_δ(s) = 2 i^δ (2π)^{-s} Γ(s) cos(π(s-δ)/2)` is the meromorphic
//! continuation of `∫ e(x) (sg x)^δ |x|^{s-1} dx` and satisfies
//! `G_δ(s) G_δ(1-s) = (-1)^δ` and `s G_δ(s) = -2πi G_{δ+1}(s+1)`.

use crate::{C64, POLE_TOL, Parity, c};
use crate::error::{Error, Result};
use std::f64::consts::PI;

const LN_2PI: f64 = 1.837877066409345483560659472811;
const LN_PI: f64 = 1.144729885849400174143427351353;

// Lanczos g = 7, n = 9 (Godfrey / GSL coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

// B_2 .. B_24.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Distance from `z` to the nearest nonpositive integer, together with that
/// integer's absolute value n (pole of Γ at -n).
fn nearest_gamma_pole(z: C64) -> (f64, u64) {
    if z.re > 0.5 {
        return (f64::INFINITY, 0);
    }
    let n = (-z.re).round().max(0.0);
    let d = (z - c(-n, 0.0)).norm();
    (d, n as u64)
}

fn lanczos_log_gamma(z: C64) -> C64 {
    // Valid for Re z >= 1 (kept away from the reflection seam).
    let zm1 = z - 1.0;
    let mut a = c(LANCZOS[0], 0.0);
    for (i, &coef) in LANCZOS.iter().enumerate().skip(1) {
        a += coef / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    0.5 * LN_2PI + (zm1 + 0.5) * t.ln() - t + a.ln()
}

fn stirling_log_gamma(z: C64) -> C64 {
    // Re z >= 1, |z| >= 10.
    let mut series = c(0.0, 0.0);
    let z2 = z * z;
    let mut zp = z;
    for (k, &b) in BERNOULLI.iter().enumerate() {
        let k2 = 2.0 * (k as f64 + 1.0);
        series += b / (k2 * (k2 - 1.0) * zp);
        zp *= z2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * LN_2PI + series
}

/// Principal branch of log Γ(s): the analytic continuation from the positive
/// real axis through ℂ \ (-∞, 0], satisfying `exp(log_gamma(s)) = Γ(s)`.
pub fn log_gamma(s: C64) -> Result<C64> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain { message: format!("log_gamma: non-finite argument {s}") });
    }
    let (dist, _) = nearest_gamma_pole(s);
    if dist < POLE_TOL {
        return Err(Error::Pole { location: s, context: "log_gamma" });
    }
    // Push Re s up to >= 1 with log Γ(z) = log Γ(z+m) - Σ Log(z+k); each Log
    // is principal, which preserves the principal branch on ℂ \ (-∞, 0].
    let shift = if s.re < 1.0 { (1.0 - s.re).ceil() as usize } else { 0 };
    let zs = s + shift as f64;
    let lg = if zs.norm() >= 10.0 { stirling_log_gamma(zs) } else { lanczos_log_gamma(zs) };
    let mut correction = c(0.0, 0.0);
    for k in 0..shift {
        correction += (s + k as f64).ln();
    }
    let out = lg - correction;
    if out.re > 709.0 {
        return Err(Error::Overflow { context: "log_gamma" });
    }
    Ok(out)
}

/// Γ(s) = exp(log_gamma(s)).
pub fn gamma(s: C64) -> Result<C64> {
    Ok(log_gamma(s)?.exp())
}

/// 1/Γ(s); entire, so this never fails. Near a pole -n of Γ the value is the
/// first-order Taylor expansion (-1)^n n! (s+n).
pub fn recip_gamma(s: C64) -> C64 {
    let (dist, n) = nearest_gamma_pole(s);
    if dist < POLE_TOL {
        let mut fact = 1.0;
        for k in 1..=n {
            fact *= k as f64;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        return (s + n as f64) * sign * fact;
    }
    (-log_gamma(s).expect("pole excluded")).exp()
}

/// log cos(w), stable for large |Im w|: `cos w = e^{∓iw}(1 + e^{±2iw})/2`.
fn log_cos(w: C64) -> C64 {
    if w.im > 0.0 {
        c(0.0, -1.0) * w + (1.0 + (c(0.0, 2.0) * w).exp()).ln() - std::f64::consts::LN_2
    } else {
        c(0.0, 1.0) * w + (1.0 + (c(0.0, -2.0) * w).exp()).ln() - std::f64::consts::LN_2
    }
}

/// Poles of `G_δ` lie at the nonpositive integers of parity δ; distance from
/// `s` to that lattice and the hit point.
pub fn g_delta_pole_distance(s: C64, delta: Parity) -> (f64, C64) {
    if s.re > 0.5 - delta.as_u8() as f64 {
        return (f64::INFINITY, c(0.0, 0.0));
    }
    let mut n = (-s.re).round().max(0.0) as i64;
    if !delta.matches(n) {
        // nearest lattice member of the right parity
        let lo = (n - 1).max(delta.as_u8() as i64);
        let hi = n + 1;
        n = if (s.re + lo as f64).abs() < (s.re + hi as f64).abs() { lo } else { hi };
    }
    if n < delta.as_u8() as i64 {
        return (f64::INFINITY, c(0.0, 0.0));
    }
    let p = c(-(n as f64), 0.0);
    ((s - p).norm(), p)
}

/// The signed Mellin kernel `G_δ(s) = 2 i^δ (2π)^{-s} Γ(s) cos(π(s-δ)/2)`.
///
/// Computed in log form so vertical lines with |Im s| in the thousands stay in
/// range (Γ decays and cos grows like `e^{π|Im s|/2}`; the product is
/// polynomially bounded).
pub fn g_delta(s: C64, delta: Parity) -> Result<C64> {
    let (dist, p) = g_delta_pole_distance(s, delta);
    if dist < POLE_TOL {
        return Err(Error::Pole { location: p, context: "g_delta" });
    }
    let (gdist, _) = nearest_gamma_pole(s);
    if gdist < POLE_TOL {
        // Γ pole of the wrong parity is cancelled by the cos zero; step across
        // via the functional equation G_δ(s) = (-1)^δ / G_δ(1-s).
        let other = g_delta(C64::new(1.0, 0.0) - s, delta)?;
        return Ok(delta.sign() / other);
    }
    let w = (s - delta.as_u8() as f64) * (PI / 2.0);
    let log_g = std::f64::consts::LN_2 + log_gamma(s)? - s * LN_2PI + log_cos(w);
    if log_g.re > 709.0 {
        return Err(Error::Overflow { context: "g_delta" });
    }
    Ok(delta.i_pow() * log_g.exp())
}

/// Upper incomplete gamma `Γ(s, x) = ∫_x^∞ t^{s-1} e^{-t} dt`, continued in s.
///
/// Legendre continued fraction for `x > Re s + 1`, otherwise the lower-series
/// complement `Γ(s) - γ(s, x)`. The complement route inherits Γ's poles, so s
/// within [`POLE_TOL`] of a nonpositive integer is rejected when x is small.
pub fn upper_incomplete_gamma(s: C64, x: f64) -> Result<C64> {
    if !(x > 0.0) {
        return Err(Error::Domain { message: format!("upper_incomplete_gamma: x = {x} must be > 0") });
    }
    let log_xs = s * x.ln() - x; // log(x^s e^{-x})
    if x > s.re + 1.0 {
        // Γ(s,x) = x^s e^{-x} / (x+1-s - 1(1-s)/(x+3-s - 2(2-s)/(x+5-s - ...)))
        let tiny = 1e-290;
        let mut b = x + 1.0 - s;
        let mut cc = c(1.0 / tiny, 0.0);
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=512 {
            let a_i = (s - i as f64) * i as f64;
            b += 2.0;
            d = a_i * d + b;
            if d.norm() < tiny {
                d = c(tiny, 0.0);
            }
            cc = b + a_i / cc;
            if cc.norm() < tiny {
                cc = c(tiny, 0.0);
            }
            d = 1.0 / d;
            let delta = d * cc;
            h *= delta;
            if (delta - 1.0).norm() < 1e-16 {
                break;
            }
        }
        Ok(log_xs.exp() * h)
    } else {
        // γ(s,x) = x^s e^{-x} Σ_{n≥0} x^n / (s (s+1) ... (s+n))
        let (dist, _) = nearest_gamma_pole(s);
        if dist < POLE_TOL {
            return Err(Error::Pole { location: s, context: "upper_incomplete_gamma (series route)" });
        }
        let mut term = 1.0 / s;
        let mut sum = term;
        for n in 1..=512 {
            term *= x / (s + n as f64);
            sum += term;
            if term.norm() < 1e-17 * sum.norm().max(1e-300) {
                break;
            }
        }
        let lower = log_xs.exp() * sum;
        Ok(gamma(s)? - lower)
    }
}

const ERF_IM_GUARD: f64 = 26.0;
const TWO_OVER_SQRT_PI: f64 = 1.1283791670955125738961589031;

fn erf_series(z: C64) -> C64 {
    // erf(z) = (2/√π) Σ (-1)^n z^{2n+1} / (n! (2n+1))
    let z2 = z * z;
    let mut term = z;
    let mut sum = c(0.0, 0.0);
    for n in 0..200 {
        sum += term / (2.0 * n as f64 + 1.0);
        term *= -z2 / (n as f64 + 1.0);
        if term.norm() < 1e-18 * sum.norm().max(1e-30) {
            break;
        }
    }
    sum * TWO_OVER_SQRT_PI
}

fn erfi_real(y: f64) -> f64 {
    // erfi(y) = (2/√π) Σ y^{2n+1} / (n! (2n+1)); same-signed terms, no
    // cancellation. Odd, so reduce to y ≥ 0.
    if y < 0.0 {
        return -erfi_real(-y);
    }
    let y2 = y * y;
    let mut term = y;
    let mut sum = 0.0;
    for n in 0..2000 {
        sum += term / (2.0 * n as f64 + 1.0);
        term *= y2 / (n as f64 + 1.0);
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum * TWO_OVER_SQRT_PI
}

fn erfc_continued_fraction(z: C64) -> C64 {
    // erfc(z) = e^{-z²}/√π · 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))), Re z > 0.
    let mut f = c(0.0, 0.0);
    for k in (1..=80).rev() {
        f = (k as f64 / 2.0) / (z + f);
    }
    (-z * z).exp() / PI.sqrt() / (z + f)
}

/// Entire error function `erf(z) = (2/√π) ∫_0^z e^{-t²} dt`.
///
/// Maclaurin series for |z| ≤ 3; continued fraction for |Re z| ≥ 1; near the
/// imaginary axis the value is assembled as erf(i·Im z) plus a short
/// horizontal path integral. Overflow guard |Im z| ≤ 26.
pub fn erf_complex(z: C64) -> Result<C64> {
    if z.im.abs() > ERF_IM_GUARD {
        return Err(Error::Overflow { context: "erf_complex (|Im z| beyond guard)" });
    }
    if z.norm() <= 3.0 {
        return Ok(erf_series(z));
    }
    if z.re >= 1.0 {
        return Ok(1.0 - erfc_continued_fraction(z));
    }
    if z.re <= -1.0 {
        return Ok(-(1.0 - erfc_continued_fraction(-z)));
    }
    // |z| > 3 with |Re z| < 1: path 0 → i·Im z → z.
    let y = z.im;
    let base = c(0.0, erfi_real(y)); // erf(iy) = i erfi(y)
    let leg = crate::quad::gl_interval(
        |t| {
            let p = c(t, y);
            (-p * p).exp()
        },
        0.0,
        z.re,
        32,
    );
    Ok(base + leg * TWO_OVER_SQRT_PI)
}

/// The analytic partition function `E(s) = (1 + erf(-is))/2`, which tends to
/// 1 along the positive imaginary axis and to 0 along the negative one, with
/// `O(e^{-(Im s)²})` error in both cases.
pub fn e_partition(s: C64) -> Result<C64> {
    let z = c(0.0, -1.0) * s;
    Ok((1.0 + erf_complex(z)?) / 2.0)
}

/// `c(β) = π e^{-iπβ} / sin(πβ) = 2πi / (e(β) - 1)`; simple poles with
/// residue 1 at the integers.
pub fn c_beta(beta: C64) -> Result<C64> {
    let n = beta.re.round();
    if (beta - c(n, 0.0)).norm() < POLE_TOL {
        return Err(Error::Pole { location: c(n, 0.0), context: "c_beta" });
    }
    let two_pi_i = c(0.0, 2.0 * PI);
    if beta.im >= 0.0 {
        // |e(β)| ≤ 1
        Ok(two_pi_i / ((two_pi_i * beta).exp() - 1.0))
    } else {
        let em = (-two_pi_i * beta).exp(); // |e(-β)| < 1
        Ok(two_pi_i * em / (1.0 - em))
    }
}

/// `h(s) = e^{iπs} / Γ(1-s)`; entire (zeros at the positive integers).
pub fn h_factor(s: C64) -> C64 {
    (c(0.0, PI) * s).exp() * recip_gamma(1.0 - s)
}

/// |Γ(s)| divided by the leading Stirling behaviour
/// `√(2π) |Im s|^{Re s - 1/2} e^{-π|Im s|/2}`.
pub fn stirling_ratio(s: C64) -> Result<f64> {
    let lg = log_gamma(s)?;
    let log_lead = 0.5 * LN_2PI + (s.re - 0.5) * s.im.abs().ln() - PI * s.im.abs() / 2.0;
    Ok((lg.re - log_lead).exp())
}

/// Residual of the Gamma-separation identity
/// `Γ(s)Γ(s+β) = c(β) h(s+β) Γ(s) + c(-β) h(s) Γ(s+β)`.
pub fn separation_identity_residual(s: C64, beta: C64) -> Result<f64> {
    let gs = gamma(s)?;
    let gsb = gamma(s + beta)?;
    let lhs = gs * gsb;
    let rhs = c_beta(beta)? * h_factor(s + beta) * gs + c_beta(-beta)? * h_factor(s) * gsb;
    Ok((lhs - rhs).norm())
}

#[allow(dead_code)]
pub(crate) fn ln_pi() -> f64 {
    LN_PI
}
