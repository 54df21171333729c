//! Level-based weighted averaging (WABL) of fuzzy numbers.
//!
//! A fuzzy number is summarized by its level cuts `[L(alpha), R(alpha)]`.
//! Each cut is collapsed to `M(alpha) = (1 - c) L(alpha) + c R(alpha)` for an
//! optimism coefficient `c`, and the WABL value is the weighted average of
//! `M` over the levels. For trapezoidal numbers on equally spaced levels the
//! value has closed forms; those are provided next to direct summation and
//! Gauss-Legendre quadrature so the routes can be checked against each other.
//!
//! ```
//! use wabl::{closed_form_constant, Optimism, Trapezoid};
//!
//! let a = Trapezoid::new(10.0, 14.0, 15.0, 23.0)?;
//! let value = closed_form_constant(&a, Optimism::new(0.8)?);
//! assert!((value - 17.6).abs() < 1e-12);
//! # Ok::<(), wabl::WablError>(())
//! ```

pub mod engine;
pub mod error;
pub mod fuzzy;
mod numeric;
pub mod quadrature;
pub mod ranking;
pub mod weights;

pub use engine::{
    closed_form_constant, closed_form_linear, closed_form_quadratic, linear_coefficient,
    mean_at_level, quadratic_coefficient, quadrature_nodes, sum_means, sum_means_identity,
    support_and_core_means, wabl_continuous_closed, wabl_continuous_quadrature, wabl_discrete,
    wabl_trapezoid_pattern, wabl_trapezoid_weighted, weighted_sum_means,
    weighted_sum_means_identity, Evaluation, LevelTerm, Optimism, WablPath, WablResult,
};
pub use error::{Result, WablError};
pub use fuzzy::{DiscreteFn, Interval, LevelSet, Trapezoid};
pub use quadrature::GaussLegendre;
pub use ranking::{
    rank_alternatives, Alternative, FuzzyNumber, LevelWeighting, RankedEntry, Ranking, TIE_WINDOW,
};
pub use weights::{
    continuous_density, explicit_weights, normalize, pattern_weights, DiscreteWeights,
    EqualSpacedScheme, PatternExponent, PatternTable,
};
