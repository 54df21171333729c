//! Fuzzy-number value types and their level cuts.
//!
//! Two representations are supported:
//!
//! * [`Trapezoid`]: a continuous piecewise-linear fuzzy number `(l, m_l, m_r, r)`.
//!   Triangular numbers are the degenerate case `m_l == m_r`.
//! * [`DiscreteFn`]: a finite list of support points with membership degrees.
//!
//! Every cut is returned as an [`Interval`] `[L(alpha), R(alpha)]`.

use crate::error::{finite, Result, WablError};

/// Closed real interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        finite("interval bound", lo)?;
        finite("interval bound", hi)?;
        if lo > hi {
            return Err(WablError::UnorderedInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    /// Left bound `L(alpha)`.
    pub fn lo(&self) -> f64 {
        self.lo
    }

    /// Right bound `R(alpha)`.
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// True when `other` lies inside `self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Trapezoidal fuzzy number `(l, m_l, m_r, r)` with `l <= m_l <= m_r <= r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trapezoid {
    l: f64,
    m_l: f64,
    m_r: f64,
    r: f64,
}

impl Trapezoid {
    pub fn new(l: f64, m_l: f64, m_r: f64, r: f64) -> Result<Self> {
        for v in [l, m_l, m_r, r] {
            finite("trapezoid parameter", v)?;
        }
        if !(l <= m_l && m_l <= m_r && m_r <= r) {
            return Err(WablError::UnorderedTrapezoid { l, m_l, m_r, r });
        }
        Ok(Self { l, m_l, m_r, r })
    }

    /// Triangular number `(l, m, r)`, stored as the trapezoid `(l, m, m, r)`.
    pub fn triangle(l: f64, m: f64, r: f64) -> Result<Self> {
        Self::new(l, m, m, r)
    }

    /// Crisp number `x` as the trapezoid `(x, x, x, x)`.
    pub fn crisp(x: f64) -> Result<Self> {
        Self::new(x, x, x, x)
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn m_l(&self) -> f64 {
        self.m_l
    }

    pub fn m_r(&self) -> f64 {
        self.m_r
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn params(&self) -> [f64; 4] {
        [self.l, self.m_l, self.m_r, self.r]
    }

    pub fn is_triangular(&self) -> bool {
        self.m_l == self.m_r
    }

    /// Membership degree of `x`.
    ///
    /// Half-open pieces: rising on `[l, m_l)`, one on `[m_l, m_r)`, falling on
    /// `[m_r, r)`. The pieces agree at the seams, except that a trapezoid with
    /// `m_r == r` keeps membership one at `x == r` (the falling piece is empty
    /// and the core is closed).
    pub fn membership(&self, x: f64) -> f64 {
        if x < self.l || x > self.r {
            0.0
        } else if x < self.m_l {
            (x - self.l) / (self.m_l - self.l)
        } else if x <= self.m_r {
            1.0
        } else {
            (self.r - x) / (self.r - self.m_r)
        }
    }

    /// Level cut `[l + alpha (m_l - l), r - alpha (r - m_r)]` for `alpha` in `[0, 1]`.
    ///
    /// Level zero is the closed support `[l, r]`.
    pub fn lr_bounds(&self, alpha: f64) -> Result<Interval> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(WablError::AlphaOutOfRange {
                alpha,
                range: "[0, 1]",
            });
        }
        Ok(self.cut_unchecked(alpha))
    }

    pub(crate) fn cut_unchecked(&self, alpha: f64) -> Interval {
        let lo = self.l + alpha * (self.m_l - self.l);
        let hi = self.r - alpha * (self.r - self.m_r);
        // lo <= m_l <= m_r <= hi holds in exact arithmetic; clamp away rounding.
        let hi = hi.max(lo);
        Interval { lo, hi }
    }

    /// Samples the membership function on `universe`, dropping zero-membership points.
    ///
    /// The result is flagged as non-normal when no sample reaches membership one.
    pub fn discretize(&self, universe: &[f64]) -> Result<DiscreteFn> {
        if universe.is_empty() || universe.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(WablError::InvalidUniverse);
        }
        for &x in universe {
            finite("universe point", x)?;
        }
        let points: Vec<(f64, f64)> = universe
            .iter()
            .map(|&x| (x, self.membership(x)))
            .filter(|&(_, mu)| mu > 0.0)
            .collect();
        if points.is_empty() {
            return Err(WablError::EmptyDiscretization);
        }
        DiscreteFn::new_relaxed(points)
    }
}

/// Discrete fuzzy number: strictly increasing support points `x_i` with
/// membership degrees in `(0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteFn {
    points: Vec<(f64, f64)>,
    max_mu: f64,
}

impl DiscreteFn {
    /// Builds a normal discrete fuzzy number (some point has membership one).
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        let fnum = Self::new_relaxed(points)?;
        if !fnum.is_normal() {
            return Err(WablError::NotNormal {
                max_mu: fnum.max_mu,
            });
        }
        Ok(fnum)
    }

    /// Like [`DiscreteFn::new`] but accepts a maximal membership below one.
    /// Check [`DiscreteFn::is_normal`] before relying on the cut at level one.
    pub fn new_relaxed(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(WablError::NoPoints);
        }
        for &(x, mu) in &points {
            finite("support point", x)?;
            if !(mu > 0.0 && mu <= 1.0) {
                return Err(WablError::InvalidMembership { x, mu });
            }
        }
        if let Some(w) = points.windows(2).find(|w| !(w[0].0 < w[1].0)) {
            return Err(WablError::UnsortedPoints {
                prev: w[0].0,
                next: w[1].0,
            });
        }
        let max_mu = points.iter().map(|p| p.1).fold(0.0, f64::max);
        Ok(Self { points, max_mu })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn max_membership(&self) -> f64 {
        self.max_mu
    }

    pub fn is_normal(&self) -> bool {
        self.max_mu == 1.0
    }

    /// Smallest and largest support point.
    pub fn support(&self) -> Interval {
        Interval {
            lo: self.points[0].0,
            hi: self.points[self.points.len() - 1].0,
        }
    }

    /// Membership of `x`, zero when `x` is not a support point.
    pub fn membership(&self, x: f64) -> f64 {
        self.points
            .iter()
            .find(|p| p.0 == x)
            .map_or(0.0, |p| p.1)
    }

    /// The cut `{x_i : mu(x_i) >= alpha}` as `[min, max]`.
    pub fn alpha_cut(&self, alpha: f64) -> Result<Interval> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(WablError::AlphaOutOfRange {
                alpha,
                range: "(0, 1]",
            });
        }
        let mut inside = self.points.iter().filter(|p| p.1 >= alpha).map(|p| p.0);
        let lo = inside.next().ok_or(WablError::EmptyCut {
            alpha,
            max_mu: self.max_mu,
        })?;
        let hi = inside.next_back().unwrap_or(lo);
        Ok(Interval { lo, hi })
    }

    /// Sorted distinct membership degrees.
    pub fn native_levels(&self) -> LevelSet {
        let mut alphas: Vec<f64> = self.points.iter().map(|p| p.1).collect();
        alphas.sort_by(f64::total_cmp);
        alphas.dedup();
        LevelSet { alphas }
    }
}

/// Strictly increasing membership levels in `(0, 1]`, optionally preceded by level `0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSet {
    alphas: Vec<f64>,
}

impl LevelSet {
    pub fn new(alphas: Vec<f64>) -> Result<Self> {
        let valid = !alphas.is_empty()
            && alphas
                .iter()
                .enumerate()
                .all(|(i, &a)| a <= 1.0 && (a > 0.0 || (i == 0 && a == 0.0)))
            && alphas.windows(2).all(|w| w[0] < w[1]);
        if valid {
            Ok(Self { alphas })
        } else {
            Err(WablError::InvalidLevels(alphas))
        }
    }

    /// Equally spaced levels `i / t` for `i = 0..=t`.
    pub fn equally_spaced(t: u32) -> Result<Self> {
        if t == 0 {
            return Err(WablError::ZeroSubintervals);
        }
        let step = f64::from(t);
        Ok(Self {
            alphas: (0..=t).map(|i| f64::from(i) / step).collect(),
        })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn contains(&self, alpha: f64) -> bool {
        self.alphas.contains(&alpha)
    }
}
