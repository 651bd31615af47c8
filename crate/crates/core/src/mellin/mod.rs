//! Signed Mellin transforms of test functions, numerical Mellin inversion
//! along vertical contours, the Mellin–Parseval pairing, and asymptotic
//! expansion by contour shifting with residue collection.
//!
//! For `Re s > 0` the transform `M_δ f(s) = ∫ (sg x)^δ |x|^{s-1} f(x) dx` is
//! evaluated by quadrature; to the left it is continued through the
//! integration-by-parts ladder
//! `M_δ f(s) = (-1)^m (∏_{0≤ℓ<m} (s+ℓ))^{-1} M_{δ+m} f^{(m)}(s+m)`,
//! which is exact in s and needs the derivative oracles of
//! [`TestFunction`].

mod testfn;
mod types;

pub use testfn::{
    cutoff_mellin_residue, smooth_cutoff, smooth_cutoff_derivative, support_radius, DecayClass,
    TestFunction, MAX_DERIVATIVE_DEPTH,
};
pub use types::{
    ExpansionTerm, GrowthClass, MellinStrip, MeromorphicProfile, PoleLattice, SingularityType,
    VerticalContour, MAX_LOG_INDEX,
};

use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::quad::{self, CompensatedSum, QuadratureConfig};
use crate::{C64, POLE_TOL, c};

/// Signed Mellin transform `M_δ f(s)`.
///
/// Direct quadrature for `Re s > 1/2`; the integration-by-parts ladder below,
/// with the minimal depth m that brings `Re(s+m)` past 1/2. At a nonpositive
/// integer of the wrong parity (a regular point where a ladder factor would
/// vanish) the ladder is truncated one step early and the quadrature's
/// analytic Taylor head takes over.
pub fn signed_mellin(f: &TestFunction, delta: Parity, s: C64, cfg: &QuadratureConfig) -> Result<C64> {
    if f.decay_class == DecayClass::SisSingular {
        return Err(Error::Domain {
            message: "signed_mellin requires schwartz or compactly_supported decay".into(),
        });
    }
    let mut m = if s.re > 0.5 { 0 } else { (0.5 - s.re).floor() as usize + 1 };
    // Ladder factors s, s+1, ..., s+m-1: a near-zero factor is either a true
    // pole of M_δ f or a regular point reachable with a shorter ladder.
    let mut prefactor = c(1.0, 0.0);
    for l in 0..m {
        let factor = s + l as f64;
        if factor.norm() < POLE_TOL {
            let n = l as i64;
            if delta.matches(n) {
                let res = residue_coefficient(f, n as usize)?;
                if res.norm() > 1e-12 {
                    return Err(Error::Pole { location: c(-(n as f64), 0.0), context: "signed_mellin" });
                }
            }
            m = l;
            break;
        }
    }
    if m > f.max_derivative {
        return Err(Error::DerivativeDepth { needed: m, available: f.max_derivative });
    }
    for l in 0..m {
        prefactor *= -(s + l as f64);
    }
    // (-1)^m / ∏(s+ℓ) = 1 / ∏(-(s+ℓ)) = 1 / prefactor
    let value = mellin_halfline(f, delta, m, s + m as f64, cfg)?;
    Ok(value / prefactor)
}

/// `2 f^{(n)}(0) / n!` if available.
fn residue_coefficient(f: &TestFunction, n: usize) -> Result<C64> {
    let mut fact = 1.0;
    for k in 1..=n {
        fact *= k as f64;
    }
    Ok(f.derivative(n, 0.0)? * 2.0 / fact)
}

/// Residue of `M_δ f` at s = -n: `2 f^{(n)}(0) / n!` (Schwartz residue
/// formula). Requires n ≡ δ (mod 2).
pub fn mellin_residue(f: &TestFunction, delta: Parity, n: usize) -> Result<C64> {
    if !delta.matches(n as i64) {
        return Err(Error::Parity {
            message: format!("mellin_residue: n = {n} has the wrong parity for delta = {delta}"),
        });
    }
    residue_coefficient(f, n)
}

/// `∫_0^∞ x^{z-1} h(x) dx` with `h(x) = f^{(m)}(x) + (-1)^{δ+m} f^{(m)}(-x)`,
/// split as an analytic Taylor head on `[0, x_cut]` plus phase-budgeted
/// geometric panels on `[x_cut, R]`.
fn mellin_halfline(f: &TestFunction, delta: Parity, m: usize, z: C64, cfg: &QuadratureConfig) -> Result<C64> {
    let eps_sign = if (delta.as_u8() as usize + m) % 2 == 0 { 1.0 } else { -1.0 };
    let h = |x: f64| -> Result<C64> {
        Ok(f.derivative(m, x)? + eps_sign * f.derivative(m, -x)?)
    };
    if z.re <= -0.25 {
        return Err(Error::Domain {
            message: format!("mellin_halfline: Re z = {} below the continuation reach", z.re),
        });
    }

    // Taylor head on [0, x_cut].
    let avail = f.max_derivative.saturating_sub(m);
    let k_max = avail.min(9).saturating_sub(1); // reserve one order for the remainder scale
    let mut coeffs = Vec::with_capacity(k_max + 1);
    let mut fact = 1.0;
    for k in 0..=k_max {
        if k > 0 {
            fact *= k as f64;
        }
        let par = (delta.as_u8() as usize + m + k) % 2;
        let ck = if par == 0 { f.derivative(m + k, 0.0)? * 2.0 / fact } else { c(0.0, 0.0) };
        coeffs.push(ck);
    }
    let cscale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max).max(1e-30);

    // Remainder scale: sup |h^{(K+1)}| / (K+1)! near 0, or a sampled slope
    // when no further derivative order exists.
    let next_order = k_max + 1;
    let sup_next = if next_order <= avail {
        let mut fact_n = fact * next_order as f64;
        if k_max == 0 {
            fact_n = 1.0;
        }
        let mut sup: f64 = 0.0;
        for &t in &[0.0, 0.2, 0.45] {
            sup = sup.max((f.derivative(m + next_order, t)? + eps_sign * f.derivative(m + next_order, -t)?).norm());
        }
        4.0 * sup / fact_n
    } else {
        let mut sup: f64 = 0.0;
        for &t in &[0.05, 0.1, 0.2] {
            let head: C64 = coeffs.iter().rev().fold(c(0.0, 0.0), |acc, &ck| acc * t + ck);
            sup = sup.max((h(t)? - head).norm() / t.powi(next_order as i32));
        }
        8.0 * sup
    }
    .max(1e-30);

    let scale = {
        let mut s0 = cscale;
        for &t in &[0.5, 1.0, 2.0] {
            s0 = s0.max(h(t)?.norm());
        }
        s0.max(1e-300)
    };
    let eps = 1e-18 * scale;
    let pw = z.re + next_order as f64; // decay power of the remainder term
    let x_cut = ((eps * pw / sup_next).powf(1.0 / pw)).clamp(1e-6, 0.5);

    let mut head = c(0.0, 0.0);
    for (k, &ck) in coeffs.iter().enumerate() {
        if ck.norm() <= 1e-14 * cscale {
            continue;
        }
        let zk = z + k as f64;
        if zk.norm() < POLE_TOL {
            return Err(Error::Pole { location: -z, context: "signed_mellin (head term)" });
        }
        head += ck * (zk * x_cut.ln()).exp() / zk;
    }

    // Outer range: scan for the decay radius.
    let mut r_out = 2.0f64.max(4.0 * x_cut);
    let mut quiet = 0;
    while r_out < 1e6 {
        let mag = h(r_out)?.norm() * r_out.powf(z.re.max(0.0)) * r_out;
        if mag < eps {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        r_out *= 1.35;
    }

    // Geometric panels keep the x^{i Im z} phase per panel bounded; an
    // absolute cap resolves the function's own shape.
    let ratio = (cfg.max_phase_per_panel / z.im.abs().max(1.0)).exp().min(2.0);
    let coarse = quad::geometric_breaks(x_cut, r_out, ratio);
    let mut breaks = Vec::with_capacity(coarse.len() * 2);
    for w in coarse.windows(2) {
        breaks.push(w[0]);
        let len = w[1] - w[0];
        if len > 0.5 {
            let sub = (len / 0.5).ceil() as usize;
            for i in 1..sub {
                breaks.push(w[0] + len * i as f64 / sub as f64);
            }
        }
    }
    breaks.push(r_out);

    let mut err: Option<Error> = None;
    let integral = quad::gl_panels(
        |x| match h(x) {
            Ok(v) => ((z - 1.0) * x.ln()).exp() * v,
            Err(e) => {
                err = Some(e);
                c(0.0, 0.0)
            }
        },
        &breaks,
        cfg.nodes_per_panel,
    );
    if let Some(e) = err {
        return Err(e);
    }
    Ok(head + integral)
}

impl MeromorphicProfile {
    /// The profile `s ↦ M_δ f(s)` with its Schwartz pole lattice declared.
    pub fn from_mellin_of(f: &TestFunction, delta: Parity, cfg: &QuadratureConfig) -> Self {
        let f = f.clone();
        let cfg = cfg.clone();
        let base = c(-(delta.as_u8() as f64), 0.0);
        MeromorphicProfile::new(
            move |s| signed_mellin(&f, delta, s, &cfg),
            vec![PoleLattice::simple(base)],
            GrowthClass::RapidDecay,
        )
    }
}

/// Pick a working abscissa for `contour` against the profile's declared
/// lattices: the requested abscissa if clear, else nudged by ±0.5 or ±0.25
/// provided the nudge does not cross any pole.
fn resolve_abscissa(h: &MeromorphicProfile, contour: &VerticalContour) -> Result<f64> {
    let clearance = contour.pole_clearance;
    let points = h.pole_points_right_of(contour.abscissa - 3.0, 1e-8);
    let horiz_clear = |x: f64| -> bool {
        let lat_ok = points.iter().all(|(p, _)| (x - p.re).abs() >= clearance);
        let avoid_ok = h
            .avoid_lattices
            .iter()
            .all(|b| types::distance_to_upward_lattice(x, *b) >= clearance.min(0.2));
        lat_ok && avoid_ok
    };
    let crosses_pole = |a: f64, b: f64| -> bool {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        points.iter().any(|(p, _)| p.re > lo && p.re < hi)
    };
    if horiz_clear(contour.abscissa) {
        return Ok(contour.abscissa);
    }
    for d in [0.5, -0.5, 0.25, -0.25] {
        let cand = contour.abscissa + d;
        if horiz_clear(cand) && !crosses_pole(contour.abscissa, cand) {
            return Ok(cand);
        }
    }
    let nearest = points
        .iter()
        .min_by(|a, b| {
            (a.0.re - contour.abscissa)
                .abs()
                .partial_cmp(&(b.0.re - contour.abscissa).abs())
                .unwrap()
        })
        .map(|(p, _)| *p)
        .unwrap_or(c(0.0, 0.0));
    Err(Error::ContourCollision { abscissa: contour.abscissa, pole: nearest })
}

/// Evaluate the profile along the resolved contour once, returning node
/// positions t, combined GL weights, and values H(s₀+it).
fn contour_samples(
    h: &MeromorphicProfile,
    contour: &VerticalContour,
    osc_scale: f64,
) -> Result<(f64, Vec<(f64, f64, C64)>)> {
    if h.growth_class != GrowthClass::RapidDecay {
        return Err(Error::Domain {
            message: "contour integration requires a rapid-decay profile".into(),
        });
    }
    let s0 = resolve_abscissa(h, contour)?;
    // Extend the half-height until the endpoint magnitude is negligible.
    let mut t_max = contour.half_height;
    let peak = h.evaluate(c(s0, 0.11))?.norm().max(h.evaluate(c(s0, 2.0))?.norm()).max(1e-300);
    while t_max < 201.0 {
        let mag = h.evaluate(c(s0, t_max))?.norm().max(h.evaluate(c(s0, -t_max))?.norm());
        if mag < 1e-16 * peak {
            break;
        }
        t_max += 8.0;
    }
    if t_max >= 201.0 {
        let mag = h.evaluate(c(s0, t_max))?.norm();
        return Err(Error::Truncation { estimate: mag / peak, tolerance: 1e-16 });
    }
    let width = (3.0 / osc_scale.max(1.0)).min(1.0);
    let breaks = quad::uniform_breaks(-t_max, t_max, width);
    let (nodes, weights) = quad::gauss_legendre(contour.nodes_per_panel.max(16)).clone();
    let mut samples = Vec::with_capacity((breaks.len() - 1) * nodes.len());
    for w in breaks.windows(2) {
        let half = 0.5 * (w[1] - w[0]);
        let mid = 0.5 * (w[0] + w[1]);
        for (x, wt) in nodes.iter().zip(weights.iter()) {
            let t = mid + half * x;
            samples.push((t, wt * half, h.evaluate(c(s0, t))?));
        }
    }
    Ok((s0, samples))
}

/// Mellin inversion `Φ_δ H(x) = (sg x)^δ/(4πi) ∫_{Re s=s₀} H(s) |x|^{-s} ds`
/// at several points x, sharing one contour evaluation.
pub fn mellin_invert_many(
    h: &MeromorphicProfile,
    delta: Parity,
    xs: &[f64],
    contour: &VerticalContour,
) -> Result<Vec<C64>> {
    if xs.iter().any(|&x| x == 0.0) {
        return Err(Error::Domain { message: "mellin_invert: x must be nonzero".into() });
    }
    let osc = xs.iter().map(|x| x.abs().ln().abs()).fold(0.0f64, f64::max);
    let (s0, samples) = contour_samples(h, contour, osc)?;
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        let lx = x.abs().ln();
        let mut acc = CompensatedSum::new();
        for &(t, w, hv) in &samples {
            acc.add(hv * (c(-s0, -t) * lx).exp() * w);
        }
        out.push(acc.value() * delta.sign_of(x) / (4.0 * std::f64::consts::PI));
    }
    Ok(out)
}

/// Single-point [`mellin_invert_many`].
pub fn mellin_invert(
    h: &MeromorphicProfile,
    delta: Parity,
    x: f64,
    contour: &VerticalContour,
) -> Result<C64> {
    Ok(mellin_invert_many(h, delta, &[x], contour)?[0])
}

/// Laurent coefficients `c_{-(j+1)}`, j = 0..=j_max, of H at the pole p, by
/// trapezoidal quadrature on a circle (exponentially accurate).
fn laurent_coefficients(
    h: &MeromorphicProfile,
    p: C64,
    radius: f64,
    j_max: usize,
) -> Result<(Vec<C64>, f64)> {
    const NODES: usize = 64;
    let mut values = Vec::with_capacity(NODES);
    let mut circle_max = 0.0f64;
    for k in 0..NODES {
        let th = std::f64::consts::TAU * (k as f64 + 0.5) / NODES as f64;
        let e = c(0.0, th).exp();
        let v = h.evaluate(p + radius * e)?;
        circle_max = circle_max.max(v.norm());
        values.push((e, v));
    }
    let mut coeffs = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let mut acc = CompensatedSum::new();
        for (e, v) in &values {
            // (1/2πi) ∮ H(s)(s-p)^j ds = (r^{j+1}/N) Σ H e^{i(j+1)θ}
            acc.add(*v * e.powu(j as u32 + 1));
        }
        coeffs.push(acc.value() * radius.powi(j as i32 + 1) / NODES as f64);
    }
    Ok((coeffs, circle_max))
}

/// Shift the inversion contour left to `Re s = -depth`, collecting at every
/// crossed pole the principal-part data, and emit the corresponding singular
/// terms `(sg x)^δ |x|^{-s₀} (log|x|)^j` of `Φ_δ H`.
///
/// A pole of pure order ℓ+1 contributes log indices up to ℓ; the coefficient
/// of log index j is `(-1)^j c_{-(j+1)} / (2 · j!)`.
pub fn asymptotic_expansion(
    h: &MeromorphicProfile,
    delta: Parity,
    depth: f64,
) -> Result<Vec<ExpansionTerm>> {
    let target = -depth;
    let points = h.pole_points_right_of(target, 1e-8);
    for (p, _) in &points {
        if (p.re - target).abs() < 0.25 {
            return Err(Error::PoleOnTargetLine { line: target, pole: *p });
        }
    }
    let mut terms: Vec<ExpansionTerm> = Vec::new();
    for (idx, &(p, declared)) in points.iter().enumerate() {
        let mut radius: f64 = 0.1;
        for (jdx, &(q, _)) in points.iter().enumerate() {
            if jdx != idx {
                radius = radius.min((q - p).norm() / 3.5);
            }
        }
        let (coeffs, circle_max) = laurent_coefficients(h, p, radius, declared)?;
        let thresh = |j: usize| 1e-8 * circle_max * radius.powi(j as i32 + 1);
        if coeffs[declared].norm() > thresh(declared) {
            return Err(Error::OrderOverflow { detected: declared + 1, declared });
        }
        let mut fact = 1.0;
        for (j, &cj) in coeffs.iter().take(declared).enumerate() {
            if j > 0 {
                fact *= j as f64;
            }
            if cj.norm() <= thresh(j).max(1e-14 * circle_max * radius) {
                continue;
            }
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            terms.push(ExpansionTerm {
                kind: SingularityType::new(-p, delta, j)?,
                coefficient: cj * sign / (2.0 * fact),
            });
        }
    }
    terms.sort_by(|a, b| {
        a.kind
            .alpha
            .re
            .partial_cmp(&b.kind.alpha.re)
            .unwrap()
            .then(a.kind.alpha.im.partial_cmp(&b.kind.alpha.im).unwrap())
            .then(a.kind.log_index.cmp(&b.kind.log_index))
    });
    Ok(terms)
}

/// Mellin–Parseval pairing `(1/4πi) ∫ M_δ f(s) · Σ(1-s) ds`, which equals
/// `∫ f σ dx` when Σ is the signed Mellin transform of σ.
pub fn mellin_parseval(
    f: &TestFunction,
    sigma_mellin: &MeromorphicProfile,
    delta: Parity,
    contour: &VerticalContour,
    cfg: &QuadratureConfig,
) -> Result<C64> {
    let f2 = f.clone();
    let cfg2 = cfg.clone();
    let sig = sigma_mellin.clone();
    // Poles of Σ(1-s) sit at s = (1 - base) + 2k: upward lattices.
    let mut avoid: Vec<C64> = sigma_mellin.pole_lattices.iter().map(|l| 1.0 - l.base).collect();
    avoid.extend_from_slice(&sigma_mellin.avoid_lattices);
    let integrand = MeromorphicProfile::new(
        move |s| Ok(signed_mellin(&f2, delta, s, &cfg2)? * sig.evaluate(1.0 - s)?),
        vec![PoleLattice::simple(c(-(delta.as_u8() as f64), 0.0))],
        GrowthClass::RapidDecay,
    )
    .with_avoid_lattices(avoid);
    let (_, samples) = contour_samples(&integrand, contour, 1.0)?;
    let mut acc = CompensatedSum::new();
    for &(_, w, v) in &samples {
        acc.add(v * w);
    }
    Ok(acc.value() / (4.0 * std::f64::consts::PI))
}

/// `f̂(y) = ∫ f(x) e(-xy) dx` by panel quadrature.
pub fn fourier_transform(f: &TestFunction, y: f64, cfg: &QuadratureConfig) -> C64 {
    TestFunction::fourier(f, cfg).evaluate(y)
}

/// `|M_δ f̂(s) - (-1)^δ G_δ(s) M_δ f(1-s)|` with both sides computed
/// independently (the left through a quadrature Fourier transform).
pub fn fourier_mellin_relation_residual(
    f: &TestFunction,
    delta: Parity,
    s: C64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let fhat = TestFunction::fourier(f, cfg);
    let lhs = signed_mellin(&fhat, delta, s, cfg)?;
    let rhs = delta.sign()
        * crate::special::g_delta(s, delta)?
        * signed_mellin(f, delta, 1.0 - s, cfg)?;
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{gamma, g_delta};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    const EULER_GAMMA: f64 = 0.5772156649015328606;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    /// Closed form M_0(e^{-πx²})(s) = π^{-s/2} Γ(s/2).
    fn gauss_mellin_closed(s: C64) -> C64 {
        (-s / 2.0 * PI.ln()).exp() * gamma(s / 2.0).unwrap()
    }

    #[test]
    fn gaussian_mellin_matches_closed_form() {
        let f = TestFunction::gaussian();
        for &s in &[c(2.0, 0.0), c(1.0, 0.0), c(0.6, 0.0), c(0.51, 3.0), c(2.5, -7.0), c(4.0, 11.0)] {
            let got = signed_mellin(&f, Parity::Even, s, &cfg()).unwrap();
            let want = gauss_mellin_closed(s);
            assert!((got - want).norm() < 1e-12 * want.norm().max(1.0), "s = {s}: {got} vs {want}");
        }
        // spec spot values: M_0 f(2) = 1/π, M_0 f(1) = 1
        let v2 = signed_mellin(&f, Parity::Even, c(2.0, 0.0), &cfg()).unwrap();
        assert_relative_eq!(v2.re, 1.0 / PI, max_relative = 1e-12);
        let v1 = signed_mellin(&f, Parity::Even, c(1.0, 0.0), &cfg()).unwrap();
        assert_relative_eq!(v1.re, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn gaussian_mellin_ladder_continuation() {
        let f = TestFunction::gaussian();
        // Left of the quadrature strip, compare against the continued closed form.
        for &s in &[c(-0.7, 0.9), c(-1.3, -0.7), c(-3.4, 2.2), c(0.2, 0.0)] {
            let got = signed_mellin(&f, Parity::Even, s, &cfg()).unwrap();
            let want = gauss_mellin_closed(s);
            assert!((got - want).norm() < 1e-10 * want.norm().max(1.0), "s = {s}: {got} vs {want}");
        }
        // Wrong-parity integer points are regular: M_0 f(-1) = π^{1/2}Γ(-1/2) = -2π.
        let v = signed_mellin(&f, Parity::Even, c(-1.0, 0.0), &cfg()).unwrap();
        assert_relative_eq!(v.re, -2.0 * PI, max_relative = 1e-10);
        assert!(v.im.abs() < 1e-12);
        // True poles error out.
        assert!(matches!(
            signed_mellin(&f, Parity::Even, c(0.0, 0.0), &cfg()),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            signed_mellin(&f, Parity::Even, c(-2.0, 0.0), &cfg()),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn odd_transform_of_even_function_vanishes() {
        let f = TestFunction::gaussian();
        for &s in &[c(2.0, 0.0), c(1.2, 3.0)] {
            let v = signed_mellin(&f, Parity::Odd, s, &cfg()).unwrap();
            assert!(v.norm() < 1e-15, "M_1 gauss({s}) = {v}");
        }
    }

    #[test]
    fn x_gaussian_mellin_closed_form() {
        // M_1(x e^{-πx²})(s) = π^{-(s+1)/2} Γ((s+1)/2)
        let f = TestFunction::x_gaussian();
        let got = signed_mellin(&f, Parity::Odd, c(1.5, 0.0), &cfg()).unwrap();
        assert_relative_eq!(got.re, 0.21671239054646855067, max_relative = 1e-12);
        let s = c(0.8, 1.1);
        let want = (-(s + 1.0) / 2.0 * PI.ln()).exp() * gamma((s + 1.0) / 2.0).unwrap();
        let got = signed_mellin(&f, Parity::Odd, s, &cfg()).unwrap();
        assert!((got - want).norm() < 1e-12 * want.norm());
    }

    #[test]
    fn residues() {
        let f = TestFunction::gaussian();
        assert_relative_eq!(mellin_residue(&f, Parity::Even, 0).unwrap().re, 2.0, max_relative = 1e-14);
        // residue at s = -2: 2 f''(0)/2! = f''(0) = -2π; cross-check against
        // the residue of π^{-s/2}Γ(s/2) at s = -2 via a small circle.
        assert_relative_eq!(
            mellin_residue(&f, Parity::Even, 2).unwrap().re,
            -2.0 * PI,
            max_relative = 1e-14
        );
        assert!(matches!(mellin_residue(&f, Parity::Even, 1), Err(Error::Parity { .. })));
        assert!(matches!(mellin_residue(&f, Parity::Odd, 2), Err(Error::Parity { .. })));
    }

    #[test]
    fn derivative_and_shift_identities() {
        // M_{δ+1} f'(s+1) = -s M_δ f(s);  M_δ f(s+1) = M_{δ+1}(x f)(s)
        let f = TestFunction::gaussian();
        let fp = f.derivative_fn().unwrap();
        let xf = f.times_x();
        for &s in &[c(1.3, 0.0), c(0.7, 2.0), c(2.2, -4.0), c(-0.6, 1.0)] {
            let lhs = signed_mellin(&fp, Parity::Odd, s + 1.0, &cfg()).unwrap();
            let rhs = -s * signed_mellin(&f, Parity::Even, s, &cfg()).unwrap();
            assert!((lhs - rhs).norm() < 1e-9 * rhs.norm().max(1.0), "derivative identity at {s}");
            let l2 = signed_mellin(&f, Parity::Even, s + 1.0, &cfg()).unwrap();
            let r2 = signed_mellin(&xf, Parity::Odd, s, &cfg()).unwrap();
            assert!((l2 - r2).norm() < 1e-10 * l2.norm().max(1.0), "shift identity at {s}");
        }
    }

    fn gauss_profile() -> MeromorphicProfile {
        MeromorphicProfile::new(
            |s| Ok(gauss_mellin_closed(s)),
            vec![PoleLattice::simple(c(0.0, 0.0))],
            GrowthClass::RapidDecay,
        )
    }

    #[test]
    fn inversion_recovers_gaussian() {
        // Φ_0[π^{-s/2}Γ(s/2)](x) = e^{-πx²}; spec pin at x = 1: e^{-π}.
        let h = gauss_profile();
        let contour = VerticalContour::at(1.0);
        let v = mellin_invert(&h, Parity::Even, 1.0, &contour).unwrap();
        assert_relative_eq!(v.re, (-PI).exp(), max_relative = 1e-11);
        assert!(v.im.abs() < 1e-14);
        let xs = [0.25, 0.5, 0.75, 1.5, 2.0, -0.6, -1.1];
        let vals = mellin_invert_many(&h, Parity::Even, &xs, &contour).unwrap();
        for (&x, &v) in xs.iter().zip(vals.iter()) {
            let want = (-PI * x * x).exp();
            assert!((v - want).norm() < 1e-11, "x = {x}: {v} vs {want}");
        }
    }

    #[test]
    fn inversion_contour_independence_and_linearity() {
        let h = gauss_profile();
        let a = mellin_invert(&h, Parity::Even, 0.8, &VerticalContour::at(1.0)).unwrap();
        let b = mellin_invert(&h, Parity::Even, 0.8, &VerticalContour::at(3.0)).unwrap();
        assert!((a - b).norm() < 1e-9, "contour independence: {a} vs {b}");
        let combo = MeromorphicProfile::linear_combination(c(2.0, 1.0), &h, c(-0.5, 0.0), &h);
        let v = mellin_invert(&combo, Parity::Even, 0.8, &VerticalContour::at(1.0)).unwrap();
        let want = (c(2.0, 1.0) - 0.5) * a;
        assert!((v - want).norm() < 1e-12, "linearity");
    }

    #[test]
    fn inversion_of_quadrature_backed_profile_roundtrip() {
        let f = TestFunction::gaussian();
        let h = MeromorphicProfile::from_mellin_of(&f, Parity::Even, &cfg());
        let contour = VerticalContour::at(1.0);
        let xs = [0.3, 1.0, 1.7];
        let vals = mellin_invert_many(&h, Parity::Even, &xs, &contour).unwrap();
        for (&x, &v) in xs.iter().zip(vals.iter()) {
            let want = f.evaluate(x);
            assert!((v - want).norm() < 1e-7, "roundtrip at {x}: {v} vs {want}");
        }
    }

    #[test]
    fn contour_collision_nudges_and_errors() {
        let h = gauss_profile();
        // abscissa right on the pole: nudged to a clear line, same value as a
        // legal contour on the same side
        let v = mellin_invert(&h, Parity::Even, 1.0, &VerticalContour::at(0.1)).unwrap();
        let w = mellin_invert(&h, Parity::Even, 1.0, &VerticalContour::at(0.6)).unwrap();
        assert!((v - w).norm() < 1e-10);
    }

    #[test]
    fn expansion_of_gaussian_profile_is_taylor_series() {
        let h = gauss_profile();
        let terms = asymptotic_expansion(&h, Parity::Even, 3.0).unwrap();
        assert_eq!(terms.len(), 2);
        assert!((terms[0].kind.alpha - c(0.0, 0.0)).norm() < 1e-10);
        assert_eq!(terms[0].kind.log_index, 0);
        assert!((terms[0].coefficient - 1.0).norm() < 1e-10, "{}", terms[0]);
        assert!((terms[1].kind.alpha - c(2.0, 0.0)).norm() < 1e-10);
        assert!((terms[1].coefficient + PI).norm() < 1e-9, "{}", terms[1]);
    }

    #[test]
    fn expansion_of_entire_profile_is_empty() {
        let h = MeromorphicProfile::new(
            |s| Ok((-(s * s)).exp()),
            vec![],
            GrowthClass::RapidDecay,
        );
        assert!(asymptotic_expansion(&h, Parity::Even, 2.5).unwrap().is_empty());
    }

    #[test]
    fn expansion_detects_double_pole_log_term() {
        // H(s) = Γ(s)²: Laurent at 0 is s^{-2} - 2γ s^{-1} + ...; the double
        // pole produces a log_index-1 term with coefficient -c_{-2}/2 = -1/2
        // and a log_index-0 term with coefficient c_{-1}/2 = -γ.
        let h = MeromorphicProfile::new(
            |s| {
                let g = gamma(s)?;
                Ok(g * g)
            },
            vec![PoleLattice { base: c(0.0, 0.0), order: 2 }],
            GrowthClass::RapidDecay,
        );
        let terms = asymptotic_expansion(&h, Parity::Even, 1.0).unwrap();
        assert_eq!(terms.len(), 2);
        let t_log0 = terms.iter().find(|t| t.kind.log_index == 0).unwrap();
        let t_log1 = terms.iter().find(|t| t.kind.log_index == 1).unwrap();
        assert!((t_log1.coefficient - c(-0.5, 0.0)).norm() < 1e-10, "{t_log1}");
        assert!((t_log0.coefficient - c(-EULER_GAMMA, 0.0)).norm() < 1e-10, "{t_log0}");
    }

    #[test]
    fn expansion_respects_declared_order() {
        let h = MeromorphicProfile::new(
            |s| {
                let g = gamma(s)?;
                Ok(g * g)
            },
            vec![PoleLattice { base: c(0.0, 0.0), order: 1 }],
            GrowthClass::RapidDecay,
        );
        assert!(matches!(
            asymptotic_expansion(&h, Parity::Even, 1.0),
            Err(Error::OrderOverflow { .. })
        ));
    }

    #[test]
    fn pole_on_target_line_is_rejected() {
        let h = gauss_profile();
        assert!(matches!(
            asymptotic_expansion(&h, Parity::Even, 2.0),
            Err(Error::PoleOnTargetLine { .. })
        ));
    }

    #[test]
    fn contour_straddle_differs_by_residue_terms() {
        // Inverting right of all poles vs left of s = 0 differs by the
        // collected term of the crossed pole.
        let h = gauss_profile();
        let x = 0.7;
        let right = mellin_invert(&h, Parity::Even, x, &VerticalContour::at(1.0)).unwrap();
        let left = mellin_invert(&h, Parity::Even, x, &VerticalContour::at(-1.0)).unwrap();
        let terms = asymptotic_expansion(&h, Parity::Even, 1.0).unwrap();
        let collected: C64 = terms.iter().map(|t| t.eval(x)).sum();
        assert!(
            (right - left - collected).norm() < 1e-9,
            "straddle: {right} - {left} vs {collected}"
        );
    }

    #[test]
    fn parseval_gaussian_pair() {
        // ∫ e^{-πx²}·e^{-πx²} dx = ∫ e^{-2πx²} dx = 1/√2.
        let f = TestFunction::gaussian();
        let sigma = gauss_profile();
        let v = mellin_parseval(&f, &sigma, Parity::Even, &VerticalContour::at(0.5), &cfg()).unwrap();
        assert_relative_eq!(v.re, 1.0 / 2.0f64.sqrt(), max_relative = 1e-10);
        assert!(v.im.abs() < 1e-13);
    }

    #[test]
    fn parseval_zero_profile_and_parity_annihilation() {
        let f = TestFunction::gaussian();
        let zero = MeromorphicProfile::new(|_| Ok(c(0.0, 0.0)), vec![], GrowthClass::RapidDecay);
        let v = mellin_parseval(&f, &zero, Parity::Even, &VerticalContour::at(0.5), &cfg()).unwrap();
        assert!(v.norm() < 1e-16);
        // even f against the odd pairing: M_1 f ≡ 0
        let sigma = gauss_profile();
        let w = mellin_parseval(&f, &sigma, Parity::Odd, &VerticalContour::at(0.5), &cfg()).unwrap();
        assert!(w.norm() < 1e-13);
    }

    #[test]
    fn fourier_mellin_relation() {
        let f = TestFunction::gaussian();
        // self-dual point: G_0(1/2) = 1 and f̂ = f
        let r = fourier_mellin_relation_residual(&f, Parity::Even, c(0.5, 0.0), &cfg()).unwrap();
        assert!(r < 1e-10, "residual at 1/2: {r}");
        let r2 = fourier_mellin_relation_residual(&f, Parity::Even, c(2.0, 0.0), &cfg()).unwrap();
        assert!(r2 < 1e-8, "residual at 2: {r2}");
        let g = TestFunction::x_gaussian();
        let r3 = fourier_mellin_relation_residual(&g, Parity::Odd, c(1.5, 0.0), &cfg()).unwrap();
        assert!(r3 < 1e-8, "odd residual at 3/2: {r3}");
    }

    #[test]
    fn mellin_of_cutoff_near_its_pole() {
        // M_0 φ(s) ~ 2/s near s = 0 (residue 2); check s·M_0φ(s) → 2 along a
        // small real offset.
        let phi = TestFunction::smooth_cutoff_fn(2.0);
        for &eps in &[0.05, 0.02] {
            let s = c(eps, 0.0);
            let v = signed_mellin(&phi, Parity::Even, s, &cfg()).unwrap();
            assert!((v * s - 2.0).norm() < 0.1, "s·M φ = {}", v * s);
        }
        // the odd transform of the even cutoff vanishes
        let w = signed_mellin(&phi, Parity::Odd, c(0.5, 0.0), &cfg()).unwrap();
        assert!(w.norm() < 1e-14);
    }

    #[test]
    fn gaussian_expansion_matches_taylor_through_order_4() {
        // asymptotic_expansion of M_δ f matches the Taylor coefficients of f
        // at 0 through order 4 for three analytic test functions.
        for f in [
            TestFunction::gaussian(),
            TestFunction::x2_gaussian(),
            TestFunction::poly_gaussian(&[1.0, 0.0, 2.0]),
        ] {
            let h = MeromorphicProfile::from_mellin_of(&f, Parity::Even, &cfg());
            let terms = asymptotic_expansion(&h, Parity::Even, 5.0).unwrap();
            for t in &terms {
                let n = t.kind.alpha.re.round() as usize;
                if n > 4 {
                    continue;
                }
                let mut fact = 1.0;
                for k in 1..=n {
                    fact *= k as f64;
                }
                let want = f.derivative(n, 0.0).unwrap() / fact;
                assert!(
                    (t.coefficient - want).norm() < 1e-8 * want.norm().max(1.0),
                    "{f:?} coefficient at order {n}: {} vs {}",
                    t.coefficient,
                    want
                );
            }
        }
    }
}
