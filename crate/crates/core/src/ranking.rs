//! Ordering alternatives by their WABL value.

use std::collections::HashSet;

use crate::engine::{wabl_discrete, wabl_trapezoid_pattern, Evaluation, Optimism, WablResult};
use crate::error::{Result, WablError};
use crate::fuzzy::{DiscreteFn, Trapezoid};
use crate::weights::{DiscreteWeights, EqualSpacedScheme};

/// Values closer than this share a rank.
pub const TIE_WINDOW: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum FuzzyNumber {
    Trapezoid(Trapezoid),
    Discrete(DiscreteFn),
}

impl From<Trapezoid> for FuzzyNumber {
    fn from(t: Trapezoid) -> Self {
        FuzzyNumber::Trapezoid(t)
    }
}

impl From<DiscreteFn> for FuzzyNumber {
    fn from(d: DiscreteFn) -> Self {
        FuzzyNumber::Discrete(d)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Alternative {
    pub id: String,
    pub number: FuzzyNumber,
}

impl Alternative {
    pub fn new(id: impl Into<String>, number: impl Into<FuzzyNumber>) -> Self {
        Self {
            id: id.into(),
            number: number.into(),
        }
    }
}

/// Level weighting shared by all alternatives of a request.
///
/// Trapezoids are evaluated on the equally spaced pattern scheme, discrete
/// numbers with the explicit weights. A collection containing both kinds
/// needs both.
#[derive(Debug, Clone, Default)]
pub struct LevelWeighting {
    pub pattern: Option<EqualSpacedScheme>,
    pub explicit: Option<DiscreteWeights>,
    pub evaluation: Evaluation,
}

impl LevelWeighting {
    pub fn pattern(scheme: EqualSpacedScheme) -> Self {
        Self {
            pattern: Some(scheme),
            ..Self::default()
        }
    }

    pub fn explicit(weights: DiscreteWeights) -> Self {
        Self {
            explicit: Some(weights),
            ..Self::default()
        }
    }

    /// WABL of a single fuzzy number under this weighting.
    pub fn evaluate(&self, number: &FuzzyNumber, c: Optimism) -> Result<WablResult> {
        match number {
            FuzzyNumber::Trapezoid(t) => {
                let scheme = self.pattern.as_ref().ok_or(WablError::MissingWeights {
                    kind: "trapezoidal",
                    needed: "an equally spaced pattern scheme",
                })?;
                Ok(wabl_trapezoid_pattern(t, scheme, c, self.evaluation))
            }
            FuzzyNumber::Discrete(d) => {
                let weights = self.explicit.as_ref().ok_or(WablError::MissingWeights {
                    kind: "discrete",
                    needed: "explicit level weights",
                })?;
                wabl_discrete(d, weights, c)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedEntry {
    pub id: String,
    pub value: f64,
    /// Competition rank starting at 1.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    pub entries: Vec<RankedEntry>,
}

impl Ranking {
    pub fn get(&self, id: &str) -> Option<&RankedEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.id.as_str()).collect()
    }
}

/// Ranks alternatives by descending WABL value.
///
/// Values within [`TIE_WINDOW`] of the first member of their group share its
/// rank (1, 2, 2, 4); tied alternatives keep their input order.
pub fn rank_alternatives(
    alternatives: &[Alternative],
    weighting: &LevelWeighting,
    c: Optimism,
) -> Result<Ranking> {
    if alternatives.is_empty() {
        return Err(WablError::NoAlternatives);
    }
    let mut seen = HashSet::new();
    for alt in alternatives {
        if alt.id.is_empty() {
            return Err(WablError::EmptyId);
        }
        if !seen.insert(alt.id.as_str()) {
            return Err(WablError::DuplicateId(alt.id.clone()));
        }
    }

    let mut scored = alternatives
        .iter()
        .map(|alt| {
            weighting
                .evaluate(&alt.number, c)
                .map(|res| (alt.id.clone(), res.value))
                .map_err(|e| WablError::Alternative {
                    id: alt.id.clone(),
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;

    // Stable: exact ties stay in input order.
    scored.sort_by(|a, b| b.1.total_cmp(&a.1));

    let mut entries = Vec::with_capacity(scored.len());
    let mut leader = f64::NAN;
    let mut rank = 0;
    for (pos, (id, value)) in scored.into_iter().enumerate() {
        if !((leader - value).abs() <= TIE_WINDOW) {
            leader = value;
            rank = pos + 1;
        }
        entries.push(RankedEntry { id, value, rank });
    }
    Ok(Ranking { entries })
}
