//! Domain types of the Mellin calculus: singularity types, vertical contours,
//! and meromorphic profiles with declared pole lattices.

use crate::error::{Error, Result};
use crate::{C64, c};
use crate::parity::Parity;
use std::fmt;
use std::sync::Arc;

/// Highest log power a singularity type may carry (index 3 covers GL(3)).
pub const MAX_LOG_INDEX: usize = 3;

/// A singular term `(sg x)^η |x|^α (log|x|)^n` near x = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularityType {
    pub alpha: C64,
    pub eta: Parity,
    pub log_index: usize,
}

impl SingularityType {
    pub fn new(alpha: C64, eta: Parity, log_index: usize) -> Result<Self> {
        if log_index > MAX_LOG_INDEX {
            return Err(Error::OrderOverflow { detected: log_index, declared: MAX_LOG_INDEX });
        }
        Ok(SingularityType { alpha, eta, log_index })
    }

    /// Evaluate the term at x ≠ 0 (without a smooth cofactor).
    pub fn eval(&self, x: f64) -> C64 {
        let ax = x.abs();
        let sign = self.eta.sign_of(x);
        let pow = (self.alpha * ax.ln()).exp();
        let lg = ax.ln().powi(self.log_index as i32);
        pow * sign * lg
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha={}, eta={}, log^{})", self.alpha, self.eta, self.log_index)
    }
}

/// The vanishing orders (k₀, k∞) that delimit the strip
/// `{-k₀ < Re s < k∞}` on which a signed Mellin transform is defined.
/// `None` encodes +∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MellinStrip {
    pub k0: Option<i64>,
    pub k_inf: Option<i64>,
}

impl MellinStrip {
    pub fn new(k0: Option<i64>, k_inf: Option<i64>) -> Result<Self> {
        let ok = match (k0, k_inf) {
            (Some(a), Some(b)) => a + b >= 1,
            _ => true,
        };
        if !ok {
            return Err(Error::Domain {
                message: format!("MellinStrip requires k0 + k_inf >= 1, got {k0:?} + {k_inf:?}"),
            });
        }
        Ok(MellinStrip { k0, k_inf })
    }

    pub fn contains(&self, re_s: f64) -> bool {
        let lo = self.k0.map(|k| -(k as f64)).unwrap_or(f64::NEG_INFINITY);
        let hi = self.k_inf.map(|k| k as f64).unwrap_or(f64::INFINITY);
        lo < re_s && re_s < hi
    }
}

/// A vertical line `Re s = abscissa`, truncated at `|Im s| ≤ half_height`,
/// discretized by Gauss–Legendre panels.
#[derive(Debug, Clone, Copy)]
pub struct VerticalContour {
    pub abscissa: f64,
    pub half_height: f64,
    /// Gauss–Legendre nodes per unit-height panel.
    pub nodes_per_panel: usize,
    pub pole_clearance: f64,
}

impl VerticalContour {
    pub fn at(abscissa: f64) -> Self {
        VerticalContour { abscissa, half_height: 40.0, nodes_per_panel: 20, pole_clearance: 0.25 }
    }

    pub fn with_half_height(mut self, t: f64) -> Self {
        self.half_height = t;
        self
    }

    pub fn with_nodes(mut self, n: usize) -> Self {
        self.nodes_per_panel = n;
        self
    }

    pub fn with_clearance(mut self, c: f64) -> Self {
        self.pole_clearance = c;
        self
    }
}

/// A downward pole lattice `{base - 2k : k ≥ 0}` with a uniform order bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleLattice {
    pub base: C64,
    pub order: usize,
}

impl PoleLattice {
    pub fn simple(base: C64) -> Self {
        PoleLattice { base, order: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthClass {
    RapidDecay,
    PolynomialGrowth,
}

type ProfileFn = dyn Fn(C64) -> Result<C64> + Send + Sync;

/// A function on vertical lines together with its declared pole lattices —
/// the numeric stand-in for a member of `M_sis(ℂ)`.
#[derive(Clone)]
pub struct MeromorphicProfile {
    eval: Arc<ProfileFn>,
    pub pole_lattices: Vec<PoleLattice>,
    /// Upward lattices `{base + 2k : k ≥ 0}` of points the evaluator cannot
    /// be trusted near (removable 0·∞ cancellations); used for contour
    /// placement only.
    pub avoid_lattices: Vec<C64>,
    pub growth_class: GrowthClass,
}

impl MeromorphicProfile {
    pub fn new(
        eval: impl Fn(C64) -> Result<C64> + Send + Sync + 'static,
        pole_lattices: Vec<PoleLattice>,
        growth_class: GrowthClass,
    ) -> Self {
        MeromorphicProfile { eval: Arc::new(eval), pole_lattices, avoid_lattices: Vec::new(), growth_class }
    }

    pub fn with_avoid_lattices(mut self, bases: Vec<C64>) -> Self {
        self.avoid_lattices = bases;
        self
    }

    pub fn evaluate(&self, s: C64) -> Result<C64> {
        (self.eval)(s)
    }

    /// α·H₁ + β·H₂ with merged pole declarations.
    pub fn linear_combination(a: C64, h1: &MeromorphicProfile, b: C64, h2: &MeromorphicProfile) -> Self {
        let e1 = h1.eval.clone();
        let e2 = h2.eval.clone();
        let mut lattices = h1.pole_lattices.clone();
        lattices.extend_from_slice(&h2.pole_lattices);
        let mut avoid = h1.avoid_lattices.clone();
        avoid.extend_from_slice(&h2.avoid_lattices);
        let growth = if h1.growth_class == GrowthClass::RapidDecay
            && h2.growth_class == GrowthClass::RapidDecay
        {
            GrowthClass::RapidDecay
        } else {
            GrowthClass::PolynomialGrowth
        };
        MeromorphicProfile {
            eval: Arc::new(move |s| Ok(a * e1(s)? + b * e2(s)?)),
            pole_lattices: lattices,
            avoid_lattices: avoid,
            growth_class: growth,
        }
    }

    /// All declared pole points with `Re > re_min`, coincident points merged
    /// (within `snap`) with their orders added.
    pub fn pole_points_right_of(&self, re_min: f64, snap: f64) -> Vec<(C64, usize)> {
        let mut pts: Vec<(C64, usize)> = Vec::new();
        for lat in &self.pole_lattices {
            let mut k = 0usize;
            loop {
                let p = lat.base - 2.0 * k as f64;
                if p.re <= re_min {
                    break;
                }
                match pts.iter_mut().find(|(q, _)| (*q - p).norm() < snap) {
                    Some((_, ord)) => *ord += lat.order,
                    None => pts.push((p, lat.order)),
                }
                k += 1;
                if k > 10_000 {
                    break;
                }
            }
        }
        pts.sort_by(|a, b| {
            b.0.re.partial_cmp(&a.0.re).unwrap().then(a.0.im.partial_cmp(&b.0.im).unwrap())
        });
        pts
    }

    /// Largest real part among declared pole points, if any.
    pub fn rightmost_pole_re(&self) -> Option<f64> {
        self.pole_lattices.iter().map(|l| l.base.re).fold(None, |acc, x| match acc {
            None => Some(x),
            Some(a) => Some(a.max(x)),
        })
    }

    /// An abscissa in the canonical regular strip: right of every declared
    /// pole lattice by at least `margin`, dodging avoid lattices.
    pub fn canonical_abscissa(&self, margin: f64) -> f64 {
        let mut s0 = self.rightmost_pole_re().map(|r| r + margin).unwrap_or(margin).max(margin);
        for _ in 0..8 {
            let clear = self
                .avoid_lattices
                .iter()
                .all(|b| distance_to_upward_lattice(s0, *b) >= 0.2);
            if clear {
                break;
            }
            s0 += 0.23;
        }
        s0
    }
}

pub(crate) fn distance_to_upward_lattice(re: f64, base: C64) -> f64 {
    // distance from the vertical line Re s = re to {base + 2k, k >= 0},
    // measured horizontally (the contour sweeps all heights).
    if re < base.re {
        return base.re - re;
    }
    let k = ((re - base.re) / 2.0).round().max(0.0);
    (re - base.re - 2.0 * k).abs()
}

impl fmt::Debug for MeromorphicProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MeromorphicProfile")
            .field("pole_lattices", &self.pole_lattices)
            .field("avoid_lattices", &self.avoid_lattices)
            .field("growth_class", &self.growth_class)
            .finish_non_exhaustive()
    }
}

/// One extracted term of an asymptotic expansion: `coefficient ·
/// (sg x)^η |x|^α (log|x|)^n`.
#[derive(Debug, Clone, Copy)]
pub struct ExpansionTerm {
    pub kind: SingularityType,
    pub coefficient: C64,
}

impl ExpansionTerm {
    pub fn eval(&self, x: f64) -> C64 {
        self.coefficient * self.kind.eval(x)
    }
}

impl fmt::Display for ExpansionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {}", self.coefficient, self.kind)
    }
}

pub(crate) fn _unused_c() -> C64 {
    c(0.0, 0.0)
}
