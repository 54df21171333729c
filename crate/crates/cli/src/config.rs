use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use wabl::{
    DiscreteWeights, EqualSpacedScheme, Evaluation, LevelWeighting, Optimism, PatternExponent,
};

use crate::args::{Format, LevelArgs, RunArgs};
use crate::error::CliError;
use crate::input::parse_weights;

#[derive(Debug, Clone)]
pub enum WeightSource {
    Pattern(EqualSpacedScheme),
    Explicit(DiscreteWeights),
}

impl WeightSource {
    pub fn from_args(levels: &LevelArgs) -> Result<Self, CliError> {
        match (levels.k, levels.t, &levels.weights) {
            (Some(k), Some(t), None) => EqualSpacedScheme::new(t, PatternExponent(k))
                .map(WeightSource::Pattern)
                .map_err(|e| CliError::Config(format!("--t: {e}"))),
            (None, None, Some(path)) => {
                let text = read(path)?;
                parse_weights(&text, &path.display().to_string()).map(WeightSource::Explicit)
            }
            (Some(_), None, None) | (None, Some(_), None) => Err(CliError::Config(
                "--k and --t must be given together".to_string(),
            )),
            (None, None, None) => Err(CliError::Config(
                "level weights required: give --k with --t, or --weights".to_string(),
            )),
            _ => Err(CliError::Config(
                "give either --k with --t or --weights, not both".to_string(),
            )),
        }
    }

    pub fn pattern(&self) -> Option<&EqualSpacedScheme> {
        match self {
            WeightSource::Pattern(s) => Some(s),
            WeightSource::Explicit(_) => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            WeightSource::Pattern(s) => {
                let shape = match s.k().get() {
                    0 => " (constant)",
                    1 => " (linear)",
                    2 => " (quadratic)",
                    _ => "",
                };
                format!("levels i/{t}, weights i^{k}{shape}", t = s.t(), k = s.k().get())
            }
            WeightSource::Explicit(w) => format!("{} explicit levels", w.len()),
        }
    }
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub c: Optimism,
    pub source: WeightSource,
    pub evaluation: Evaluation,
    pub verbose: bool,
    pub format: Format,
}

impl RunConfig {
    pub fn from_args(args: &RunArgs) -> Result<Self, CliError> {
        let c = Optimism::new(args.c).map_err(|e| CliError::Config(format!("--c: {e}")))?;
        let source = WeightSource::from_args(&args.levels)?;
        Ok(Self {
            c,
            source,
            evaluation: if args.force_summation {
                Evaluation::ForceSummation
            } else {
                Evaluation::PreferClosedForm
            },
            verbose: args.verbose,
            format: args.format,
        })
    }

    /// Trapezoids get the pattern scheme, discrete numbers the explicit weights.
    pub fn weighting(&self) -> LevelWeighting {
        let mut weighting = match &self.source {
            WeightSource::Pattern(s) => LevelWeighting::pattern(*s),
            WeightSource::Explicit(w) => LevelWeighting::explicit(w.clone()),
        };
        weighting.evaluation = self.evaluation;
        weighting
    }

    pub fn describe(&self) -> String {
        format!("c = {}; {}", crate::render::num(self.c.value()), self.source.describe())
    }

    pub fn to_json(&self) -> Value {
        let mut cfg = json!({
            "c": self.c.value(),
            "force_summation": self.evaluation == Evaluation::ForceSummation,
        });
        match &self.source {
            WeightSource::Pattern(s) => {
                cfg["k"] = json!(s.k().get());
                cfg["t"] = json!(s.t());
            }
            WeightSource::Explicit(w) => {
                let pairs: Vec<[f64; 2]> = w.iter().map(|(a, m)| [a, m]).collect();
                cfg["weights"] = json!(pairs);
            }
        }
        cfg
    }
}
