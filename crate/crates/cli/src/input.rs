//! Input documents and weight files.
//!
//! An input document is JSON, either a bare array of records or an object
//! with a `records` array:
//!
//! ```json
//! {"records": [
//!   {"id": "A", "type": "trapezoid", "params": [10, 14, 15, 23]},
//!   {"id": "B", "type": "triangle", "params": [0, 1, 2]},
//!   {"id": "C", "type": "discrete", "points": [[-2, 0.1], [2, 1.0]]}
//! ]}
//! ```
//!
//! Unknown fields are ignored, so a machine-format report can be read back
//! as input. A weights file is an array of `[alpha, mass]` pairs.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use wabl::{explicit_weights, DiscreteFn, DiscreteWeights, FuzzyNumber, LevelSet, Trapezoid};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum RecordSpec {
    Trapezoid { id: String, params: [f64; 4] },
    Triangle { id: String, params: [f64; 3] },
    Discrete { id: String, points: Vec<[f64; 2]> },
}

impl RecordSpec {
    pub fn id(&self) -> &str {
        match self {
            RecordSpec::Trapezoid { id, .. }
            | RecordSpec::Triangle { id, .. }
            | RecordSpec::Discrete { id, .. } => id,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RecordSpec::Trapezoid { .. } => "trapezoid",
            RecordSpec::Triangle { .. } => "triangle",
            RecordSpec::Discrete { .. } => "discrete",
        }
    }

    pub fn to_number(&self) -> wabl::Result<FuzzyNumber> {
        Ok(match self {
            RecordSpec::Trapezoid { params: [l, ml, mr, r], .. } => {
                Trapezoid::new(*l, *ml, *mr, *r)?.into()
            }
            RecordSpec::Triangle { params: [l, m, r], .. } => Trapezoid::triangle(*l, *m, *r)?.into(),
            RecordSpec::Discrete { points, .. } => {
                DiscreteFn::new(points.iter().map(|p| (p[0], p[1])).collect())?.into()
            }
        })
    }
}

/// One record of a document: either a usable fuzzy number or the reason it is not.
#[derive(Debug, Clone)]
pub struct Record {
    pub index: usize,
    pub id: String,
    pub spec: Option<RecordSpec>,
    pub number: Result<FuzzyNumber, String>,
}

impl Record {
    /// Label used in diagnostics.
    pub fn label(&self) -> String {
        if self.id.is_empty() {
            format!("record #{}", self.index + 1)
        } else {
            format!("record #{} (`{}`)", self.index + 1, self.id)
        }
    }
}

#[derive(Debug, Clone)]
pub struct InputDocument {
    pub records: Vec<Record>,
}

fn syntax_error(path: &str, e: &serde_json::Error) -> CliError {
    CliError::Syntax {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

impl InputDocument {
    /// Parses a document. Malformed JSON and duplicate ids fail the whole
    /// document; a malformed or invalid record only fails that record.
    pub fn parse(text: &str, path: &str) -> Result<Self, CliError> {
        let root: Value = serde_json::from_str(text).map_err(|e| syntax_error(path, &e))?;
        let items = match root {
            Value::Array(items) => items,
            Value::Object(mut map) => match map.remove("records") {
                Some(Value::Array(items)) => items,
                _ => {
                    return Err(CliError::Document(format!(
                        "{path}: expected a `records` array"
                    )))
                }
            },
            _ => {
                return Err(CliError::Document(format!(
                    "{path}: expected an array of records or an object with `records`"
                )))
            }
        };
        if items.is_empty() {
            return Err(CliError::Document(format!("{path}: no records")));
        }

        let mut seen = HashSet::new();
        let mut records = Vec::with_capacity(items.len());
        for (index, item) in items.into_iter().enumerate() {
            let id = item
                .get("id")
                .and_then(Value::as_str)
                .unwrap_or_default()
                .to_string();
            if !id.is_empty() && !seen.insert(id.clone()) {
                return Err(CliError::Document(format!(
                    "{path}: duplicate record id `{id}`"
                )));
            }
            let (spec, number) = match RecordSpec::deserialize(&item) {
                Ok(spec) if spec.id().is_empty() => {
                    (Some(spec), Err("record id must be non-empty".to_string()))
                }
                Ok(spec) => {
                    let number = spec.to_number().map_err(|e| e.to_string());
                    (Some(spec), number)
                }
                Err(e) => (None, Err(format!("malformed record: {e}"))),
            };
            records.push(Record {
                index,
                id,
                spec,
                number,
            });
        }
        Ok(Self { records })
    }
}

/// Parses a weights file: an array of `[alpha, mass]` pairs with strictly increasing alphas.
pub fn parse_weights(text: &str, path: &str) -> Result<DiscreteWeights, CliError> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text).map_err(|e| syntax_error(path, &e))?;
    let levels = LevelSet::new(pairs.iter().map(|p| p[0]).collect())
        .map_err(|e| CliError::Config(format!("{path}: {e}")))?;
    explicit_weights(levels, pairs.iter().map(|p| p[1]).collect())
        .map_err(|e| CliError::Config(format!("{path}: {e}")))
}
