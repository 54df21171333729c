//! WABL (weighted average based on levels) evaluation.
//!
//! Every level cut `[L(alpha), R(alpha)]` is reduced to the level mean
//! `M(alpha) = (1 - c) L(alpha) + c R(alpha)` for an optimism coefficient `c`,
//! and the means are averaged with degree-importance weights over the levels.
//!
//! Several routes are available and are expected to agree:
//!
//! * direct summation over a discrete mass function ([`wabl_discrete`],
//!   [`wabl_trapezoid_weighted`]);
//! * closed forms for trapezoids on equally spaced levels with constant,
//!   linear or quadratic patterns ([`closed_form_constant`],
//!   [`closed_form_linear`], [`closed_form_quadratic`]);
//! * the continuous closed form for the density `(k + 1) alpha^k`
//!   ([`wabl_continuous_closed`]) and its quadrature counterpart
//!   ([`wabl_continuous_quadrature`]).
//!
//! For a trapezoid, `M(alpha)` is affine in `alpha`:
//! `M(alpha) = M(0) + alpha (M(1) - M(0))`, with `M(0)` taken on the support
//! and `M(1)` on the core. The closed forms are built on that identity.

use std::fmt;

use crate::error::{Result, WablError};
use crate::fuzzy::{DiscreteFn, Interval, Trapezoid};
use crate::numeric::compensated_sum;
use crate::quadrature::GaussLegendre;
use crate::weights::{
    continuous_density, pattern_weights, DiscreteWeights, EqualSpacedScheme, PatternExponent,
};

/// Decision maker's optimism coefficient `c` in `[0, 1]`.
///
/// `c = 0` uses only left bounds (pessimistic), `c = 1` only right bounds.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Optimism(f64);

impl Optimism {
    pub const NEUTRAL: Self = Self(0.5);

    pub fn new(c: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&c) {
            Ok(Self(c))
        } else {
            Err(WablError::InvalidOptimism(c))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Which route produced a [`WablResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WablPath {
    GeneralSummation,
    ClosedConstant,
    ClosedLinear,
    ClosedQuadratic,
    ClosedContinuous,
    Quadrature,
}

impl WablPath {
    pub fn as_str(self) -> &'static str {
        match self {
            WablPath::GeneralSummation => "general-summation",
            WablPath::ClosedConstant => "closed-constant",
            WablPath::ClosedLinear => "closed-linear",
            WablPath::ClosedQuadratic => "closed-quadratic",
            WablPath::ClosedContinuous => "closed-continuous",
            WablPath::Quadrature => "quadrature",
        }
    }
}

impl fmt::Display for WablPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Contribution of one level to a summed WABL value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelTerm {
    pub alpha: f64,
    pub mass: f64,
    pub cut: Interval,
    pub mean: f64,
    /// False when the level is not one of the fuzzy number's own membership
    /// degrees (only tracked for discrete numbers).
    pub native: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WablResult {
    pub value: f64,
    pub path: WablPath,
    /// Per-level terms, present for summation results.
    pub breakdown: Option<Vec<LevelTerm>>,
}

impl WablResult {
    fn closed(value: f64, path: WablPath) -> Self {
        Self {
            value,
            path,
            breakdown: None,
        }
    }

    fn summed(terms: Vec<LevelTerm>) -> Self {
        let value = compensated_sum(terms.iter().map(|t| t.mass * t.mean));
        Self {
            value,
            path: WablPath::GeneralSummation,
            breakdown: Some(terms),
        }
    }

    /// Levels that were weighted but are not native membership degrees.
    pub fn foreign_levels(&self) -> Vec<f64> {
        self.breakdown
            .iter()
            .flatten()
            .filter(|t| !t.native)
            .map(|t| t.alpha)
            .collect()
    }
}

/// Whether pattern evaluation may use a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Evaluation {
    #[default]
    PreferClosedForm,
    ForceSummation,
}

/// `(1 - c) lo + c hi`.
pub fn mean_at_level(cut: &Interval, c: Optimism) -> f64 {
    (1.0 - c.0) * cut.lo() + c.0 * cut.hi()
}

/// Discrete WABL `sum_alpha p(alpha) M(alpha)` with cuts taken on the support points.
///
/// Levels with zero mass are reported in the breakdown when their cut exists
/// and skipped otherwise. A positively weighted level with an empty cut is an
/// error.
pub fn wabl_discrete(
    fnum: &DiscreteFn,
    weights: &DiscreteWeights,
    c: Optimism,
) -> Result<WablResult> {
    let native = fnum.native_levels();
    let mut terms = Vec::with_capacity(weights.len());
    for (alpha, mass) in weights.iter() {
        let cut = match fnum.alpha_cut(alpha) {
            Ok(cut) => cut,
            Err(_) if mass == 0.0 => continue,
            Err(e) => return Err(e),
        };
        terms.push(LevelTerm {
            alpha,
            mass,
            cut,
            mean: mean_at_level(&cut, c),
            native: native.contains(alpha),
        });
    }
    Ok(WablResult::summed(terms))
}

/// WABL of a continuous trapezoid restricted to an arbitrary weighted level set.
///
/// Level zero is admitted and uses the closed support `[l, r]`.
pub fn wabl_trapezoid_weighted(
    fnum: &Trapezoid,
    weights: &DiscreteWeights,
    c: Optimism,
) -> WablResult {
    let terms = weights
        .iter()
        .map(|(alpha, mass)| {
            let cut = fnum.cut_unchecked(alpha);
            LevelTerm {
                alpha,
                mass,
                cut,
                mean: mean_at_level(&cut, c),
                native: true,
            }
        })
        .collect();
    WablResult::summed(terms)
}

/// WABL of a trapezoid on the levels `i / t` with pattern weights `i^k`.
///
/// Uses the closed form for `k <= 2` unless summation is forced.
pub fn wabl_trapezoid_pattern(
    fnum: &Trapezoid,
    scheme: &EqualSpacedScheme,
    c: Optimism,
    evaluation: Evaluation,
) -> WablResult {
    let t = scheme.t();
    match (evaluation, scheme.k().get()) {
        (Evaluation::PreferClosedForm, 0) => {
            WablResult::closed(closed_form_constant(fnum, c), WablPath::ClosedConstant)
        }
        (Evaluation::PreferClosedForm, 1) => WablResult::closed(
            closed_from_coefficient(fnum, c, linear_coefficient(t)),
            WablPath::ClosedLinear,
        ),
        (Evaluation::PreferClosedForm, 2) => WablResult::closed(
            closed_from_coefficient(fnum, c, quadratic_coefficient(t)),
            WablPath::ClosedQuadratic,
        ),
        _ => wabl_trapezoid_weighted(fnum, &pattern_weights(scheme), c),
    }
}

/// `(M(0), M(1))`: level means on the support and on the core.
pub fn support_and_core_means(fnum: &Trapezoid, c: Optimism) -> (f64, f64) {
    let c = c.0;
    (
        (1.0 - c) * fnum.l() + c * fnum.r(),
        (1.0 - c) * fnum.m_l() + c * fnum.m_r(),
    )
}

fn closed_from_coefficient(fnum: &Trapezoid, c: Optimism, coefficient: f64) -> f64 {
    let (m0, m1) = support_and_core_means(fnum, c);
    m0 + coefficient * (m1 - m0)
}

fn check_t(t: u32) -> Result<()> {
    if t == 0 {
        Err(WablError::ZeroSubintervals)
    } else {
        Ok(())
    }
}

/// `(2t + 1) / (3t)`: weighted mean level under linear weights.
pub fn linear_coefficient(t: u32) -> f64 {
    let t = f64::from(t);
    (2.0 * t + 1.0) / (3.0 * t)
}

/// `3(t + 1) / (2(2t + 1))`: weighted mean level under quadratic weights.
///
/// With `p_i = i^2 / Q`, `Q = t(t+1)(2t+1)/6` and `alpha_i = i / t`,
/// `sum p_i alpha_i = (sum i^3) / (t Q)` and `sum i^3 = t^2 (t+1)^2 / 4`.
pub fn quadratic_coefficient(t: u32) -> f64 {
    let t = f64::from(t);
    3.0 * (t + 1.0) / (2.0 * (2.0 * t + 1.0))
}

/// Constant weights on equally spaced levels: `(M(0) + M(1)) / 2`, for every `t`.
pub fn closed_form_constant(fnum: &Trapezoid, c: Optimism) -> f64 {
    let (m0, m1) = support_and_core_means(fnum, c);
    0.5 * (m0 + m1)
}

/// Linear weights on `t + 1` equally spaced levels:
/// `M(0) + (2t + 1) / (3t) (M(1) - M(0))`.
pub fn closed_form_linear(fnum: &Trapezoid, t: u32, c: Optimism) -> Result<f64> {
    check_t(t)?;
    Ok(closed_from_coefficient(fnum, c, linear_coefficient(t)))
}

/// Quadratic weights on `t + 1` equally spaced levels:
/// `M(0) + 3(t + 1) / (2(2t + 1)) (M(1) - M(0))`.
pub fn closed_form_quadratic(fnum: &Trapezoid, t: u32, c: Optimism) -> Result<f64> {
    check_t(t)?;
    Ok(closed_from_coefficient(fnum, c, quadratic_coefficient(t)))
}

/// Continuous WABL under the density `(k + 1) alpha^k`:
/// `c (r - w (r - m_r)) + (1 - c)(l + w (m_l - l))` with `w = (k + 1) / (k + 2)`.
pub fn wabl_continuous_closed(fnum: &Trapezoid, k: PatternExponent, c: Optimism) -> f64 {
    let k = f64::from(k.get());
    let w = (k + 1.0) / (k + 2.0);
    let c = c.0;
    c * (fnum.r() - w * (fnum.r() - fnum.m_r())) + (1.0 - c) * (fnum.l() + w * (fnum.m_l() - fnum.l()))
}

/// Number of Gauss-Legendre nodes used for exponent `k`.
///
/// The integrand `(k + 1) alpha^k M(alpha)` has degree `k + 1`, which
/// `ceil((k + 2) / 2)` nodes already integrate exactly.
pub fn quadrature_nodes(k: PatternExponent) -> usize {
    (k.get() as usize + 2).div_ceil(2) + 2
}

/// Continuous WABL by Gauss-Legendre quadrature of `p(alpha) M(alpha)` over `[0, 1]`.
pub fn wabl_continuous_quadrature(fnum: &Trapezoid, k: PatternExponent, c: Optimism) -> f64 {
    let rule = GaussLegendre::new(quadrature_nodes(k));
    rule.integrate(0.0, 1.0, |alpha| {
        let density = continuous_density(k, alpha).expect("nodes lie inside [0, 1]");
        density * mean_at_level(&fnum.cut_unchecked(alpha), c)
    })
}

fn level_means(fnum: &Trapezoid, t: u32, c: Optimism) -> impl Iterator<Item = (u32, f64)> + '_ {
    let step = f64::from(t);
    (0..=t).map(move |i| {
        let alpha = f64::from(i) / step;
        (i, mean_at_level(&fnum.cut_unchecked(alpha), c))
    })
}

/// `sum_{i=0}^{t} M(i / t)` by direct summation.
pub fn sum_means(fnum: &Trapezoid, t: u32, c: Optimism) -> Result<f64> {
    check_t(t)?;
    Ok(compensated_sum(level_means(fnum, t, c).map(|(_, m)| m)))
}

/// Closed value of [`sum_means`]: `(t + 1)(M(0) + M(1)) / 2`.
pub fn sum_means_identity(fnum: &Trapezoid, t: u32, c: Optimism) -> Result<f64> {
    check_t(t)?;
    let (m0, m1) = support_and_core_means(fnum, c);
    Ok(0.5 * (f64::from(t) + 1.0) * (m0 + m1))
}

/// `sum_{i=0}^{t} i M(i / t)` by direct summation.
pub fn weighted_sum_means(fnum: &Trapezoid, t: u32, c: Optimism) -> Result<f64> {
    check_t(t)?;
    Ok(compensated_sum(
        level_means(fnum, t, c).map(|(i, m)| f64::from(i) * m),
    ))
}

/// Closed value of [`weighted_sum_means`]:
/// `(t + 1)(3t M(0) + (2t + 1)(M(1) - M(0))) / 6`.
pub fn weighted_sum_means_identity(fnum: &Trapezoid, t: u32, c: Optimism) -> Result<f64> {
    check_t(t)?;
    let (m0, m1) = support_and_core_means(fnum, c);
    let t = f64::from(t);
    Ok((t + 1.0) * (3.0 * t * m0 + (2.0 * t + 1.0) * (m1 - m0)) / 6.0)
}
