//! Degree-importance weights over membership levels.
//!
//! Discrete weights come either from the power pattern `q_i = i^k` on the
//! equally spaced levels `i / t`, or from explicit `(level, mass)` pairs.
//! The continuous counterpart is the density `(k + 1) alpha^k`.

use crate::error::{Result, WablError};
use crate::fuzzy::LevelSet;
use crate::numeric::compensated_sum;

/// Masses must sum to one within this tolerance to be taken as-is.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Explicit masses whose sum is off by more than this are rejected.
pub const RENORMALIZE_LIMIT: f64 = 1e-9;

/// Power-pattern exponent `k` of `q_i = i^k` and `p(alpha) = (k + 1) alpha^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternExponent(pub u32);

impl PatternExponent {
    pub const CONSTANT: Self = Self(0);
    pub const LINEAR: Self = Self(1);
    pub const QUADRATIC: Self = Self(2);

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Equally spaced levels `alpha_i = i / t`, `i = 0..=t`, weighted by `i^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqualSpacedScheme {
    t: u32,
    k: PatternExponent,
}

impl EqualSpacedScheme {
    pub fn new(t: u32, k: PatternExponent) -> Result<Self> {
        if t == 0 {
            return Err(WablError::ZeroSubintervals);
        }
        Ok(Self { t, k })
    }

    /// Number of sub-intervals.
    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn k(&self) -> PatternExponent {
        self.k
    }

    pub fn step(&self) -> f64 {
        1.0 / f64::from(self.t)
    }

    pub fn levels(&self) -> LevelSet {
        LevelSet::equally_spaced(self.t).expect("t >= 1")
    }
}

/// Unnormalized pattern values `q_i` and their total `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternTable {
    pub q: Vec<f64>,
    pub total: f64,
    /// Whether every `q_i` and `Q` were accumulated exactly in integers.
    pub exact: bool,
}

impl PatternTable {
    pub fn new(scheme: &EqualSpacedScheme) -> Self {
        let k = scheme.k.0;
        exact_pattern(scheme.t, k).unwrap_or_else(|| {
            let q: Vec<f64> = (0..=scheme.t).map(|i| pow_i(i, k)).collect();
            let total = compensated_sum(q.iter().copied());
            Self {
                q,
                total,
                exact: false,
            }
        })
    }
}

// 0^0 is 1, so the constant pattern weights level zero as well.
fn pow_i(i: u32, k: u32) -> f64 {
    f64::from(i).powi(k as i32)
}

fn exact_pattern(t: u32, k: u32) -> Option<PatternTable> {
    let mut q = Vec::with_capacity(t as usize + 1);
    let mut total: u64 = 0;
    for i in 0..=t {
        let v = u64::from(i).checked_pow(k)?;
        total = total.checked_add(v)?;
        q.push(v);
    }
    // Integers above 2^53 are not exactly representable as f64.
    let exact = total <= (1u64 << 53);
    Some(PatternTable {
        q: q.into_iter().map(|v| v as f64).collect(),
        total: total as f64,
        exact,
    })
}

/// Validated degree-importance mass function over a level set.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteWeights {
    levels: LevelSet,
    masses: Vec<f64>,
}

impl DiscreteWeights {
    pub fn levels(&self) -> &LevelSet {
        &self.levels
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// `(alpha, mass)` pairs in increasing level order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.levels
            .as_slice()
            .iter()
            .copied()
            .zip(self.masses.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }
}

/// Normalized power-pattern weights `p_i = i^k / sum_j j^k` on levels `i / t`.
pub fn pattern_weights(scheme: &EqualSpacedScheme) -> DiscreteWeights {
    let table = PatternTable::new(scheme);
    let masses = table.q.iter().map(|q| q / table.total).collect();
    DiscreteWeights {
        levels: scheme.levels(),
        masses,
    }
}

/// Validates user-supplied masses.
///
/// Sums off by more than [`RENORMALIZE_LIMIT`] are rejected; smaller drift
/// beyond [`SUM_TOLERANCE`] is divided out.
pub fn explicit_weights(levels: LevelSet, masses: Vec<f64>) -> Result<DiscreteWeights> {
    if levels.len() != masses.len() {
        return Err(WablError::LengthMismatch {
            levels: levels.len(),
            masses: masses.len(),
        });
    }
    for (&alpha, &mass) in levels.as_slice().iter().zip(&masses) {
        if mass.is_nan() || mass < 0.0 {
            return Err(WablError::NegativeMass { alpha, mass });
        }
        crate::error::finite("level weight", mass)?;
    }
    let sum = compensated_sum(masses.iter().copied());
    let drift = (sum - 1.0).abs();
    if drift > RENORMALIZE_LIMIT {
        return Err(WablError::Normalization { sum });
    }
    let masses = if drift > SUM_TOLERANCE {
        masses.into_iter().map(|m| m / sum).collect()
    } else {
        masses
    };
    Ok(DiscreteWeights { levels, masses })
}

/// Scales nonnegative values so they sum to one.
pub fn normalize(raw: &[f64]) -> Result<Vec<f64>> {
    for (i, &v) in raw.iter().enumerate() {
        if v.is_nan() || v < 0.0 {
            return Err(WablError::NegativeMass {
                alpha: i as f64,
                mass: v,
            });
        }
        crate::error::finite("raw weight", v)?;
    }
    let total = compensated_sum(raw.iter().copied());
    if total <= 0.0 {
        return Err(WablError::ZeroTotalWeight);
    }
    Ok(raw.iter().map(|v| v / total).collect())
}

/// Continuous density `(k + 1) alpha^k` on `[0, 1]`.
pub fn continuous_density(k: PatternExponent, alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(WablError::AlphaOutOfRange {
            alpha,
            range: "[0, 1]",
        });
    }
    Ok(f64::from(k.0 + 1) * alpha.powi(k.0 as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::GaussLegendre;

    fn scheme(t: u32, k: u32) -> EqualSpacedScheme {
        EqualSpacedScheme::new(t, PatternExponent(k)).unwrap()
    }

    #[test]
    fn constant_pattern() {
        let w = pattern_weights(&scheme(4, 0));
        assert_eq!(w.masses(), &[0.2; 5]);
        assert_eq!(w.levels().as_slice(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn linear_pattern() {
        let w = pattern_weights(&scheme(4, 1));
        assert_eq!(w.masses(), &[0.0, 0.1, 0.2, 0.3, 0.4]);
        let table = PatternTable::new(&scheme(4, 1));
        assert_eq!(table.total, 10.0);
        assert!(table.exact);
    }

    #[test]
    fn quadratic_pattern() {
        let w = pattern_weights(&scheme(4, 2));
        let expected = [0.0, 1.0 / 30.0, 4.0 / 30.0, 9.0 / 30.0, 16.0 / 30.0];
        assert_eq!(w.masses(), &expected);
        assert_eq!(PatternTable::new(&scheme(4, 2)).total, 30.0);
    }

    #[test]
    fn closed_form_masses_match_bit_for_bit() {
        for t in 1..=300u32 {
            let tf = f64::from(t);
            let w0 = pattern_weights(&scheme(t, 0));
            let w1 = pattern_weights(&scheme(t, 1));
            let w2 = pattern_weights(&scheme(t, 2));
            for i in 0..=t as usize {
                let fi = i as f64;
                assert_eq!(w0.masses()[i], 1.0 / (tf + 1.0));
                assert_eq!(w1.masses()[i], 2.0 * fi / (tf * (tf + 1.0)));
                assert_eq!(
                    w2.masses()[i],
                    6.0 * fi * fi / (tf * (tf + 1.0) * (2.0 * tf + 1.0))
                );
            }
        }
    }

    #[test]
    fn overflowing_pattern_falls_back_to_float() {
        let table = PatternTable::new(&scheme(10_000, 6));
        assert!(!table.exact);
        let w = pattern_weights(&scheme(10_000, 6));
        let sum = compensated_sum(w.masses().iter().copied());
        assert!((sum - 1.0).abs() <= SUM_TOLERANCE);
    }

    #[test]
    fn zero_subintervals() {
        assert_eq!(
            EqualSpacedScheme::new(0, PatternExponent(1)),
            Err(WablError::ZeroSubintervals)
        );
    }

    #[test]
    fn explicit_examples() {
        let levels = LevelSet::new(vec![0.1, 0.4, 0.5, 0.7, 1.0]).unwrap();
        let w = explicit_weights(levels, vec![0.1, 0.3, 0.3, 0.2, 0.1]).unwrap();
        assert_eq!(w.masses(), &[0.1, 0.3, 0.3, 0.2, 0.1]);

        let w = explicit_weights(LevelSet::new(vec![1.0]).unwrap(), vec![1.0]).unwrap();
        assert_eq!(w.masses(), &[1.0]);

        let err = explicit_weights(LevelSet::new(vec![0.5, 1.0]).unwrap(), vec![0.6, 0.6]);
        match err {
            Err(WablError::Normalization { sum }) => assert!((sum - 1.2).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn explicit_renormalizes_small_drift() {
        let levels = LevelSet::new(vec![0.5, 1.0]).unwrap();
        let w = explicit_weights(levels.clone(), vec![0.5, 0.5 + 1e-10]).unwrap();
        let sum: f64 = w.masses().iter().sum();
        assert!((sum - 1.0).abs() <= SUM_TOLERANCE);
        assert!(w.masses()[0] < 0.5);

        let w = explicit_weights(levels.clone(), vec![0.5, 0.5 + 1e-14]).unwrap();
        assert_eq!(w.masses(), &[0.5, 0.5 + 1e-14]);

        assert!(matches!(
            explicit_weights(levels.clone(), vec![0.5, 0.5 + 1e-8]),
            Err(WablError::Normalization { .. })
        ));
        assert!(matches!(
            explicit_weights(levels.clone(), vec![1.5, -0.5]),
            Err(WablError::NegativeMass { .. })
        ));
        assert!(matches!(
            explicit_weights(levels, vec![1.0]),
            Err(WablError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&[1.0; 5]).unwrap(), vec![0.2; 5]);
        assert_eq!(
            normalize(&[0.0, 1.0, 2.0, 3.0, 4.0]).unwrap(),
            vec![0.0, 0.1, 0.2, 0.3, 0.4]
        );
        assert_eq!(normalize(&[5.0]).unwrap(), vec![1.0]);
        assert_eq!(normalize(&[0.0, 0.0]), Err(WablError::ZeroTotalWeight));
        assert_eq!(normalize(&[]), Err(WablError::ZeroTotalWeight));
        assert!(normalize(&[1.0, -1.0]).is_err());
    }

    #[test]
    fn density_examples() {
        assert_eq!(continuous_density(PatternExponent(0), 0.7).unwrap(), 1.0);
        assert_eq!(continuous_density(PatternExponent(1), 0.5).unwrap(), 1.0);
        assert_eq!(continuous_density(PatternExponent(2), 1.0).unwrap(), 3.0);
        assert_eq!(continuous_density(PatternExponent(0), 0.0).unwrap(), 1.0);
        assert!(continuous_density(PatternExponent(1), 1.01).is_err());
    }

    #[test]
    fn density_integrates_to_one() {
        let rule = GaussLegendre::new(6);
        for k in 0..=6 {
            let k = PatternExponent(k);
            let integral = rule.integrate(0.0, 1.0, |a| continuous_density(k, a).unwrap());
            assert!((integral - 1.0).abs() <= 1e-12, "k = {k:?}: {integral}");
        }
    }
}
