//! The `compute`, `rank`, `verify` and `weights` commands.
//!
//! Each command renders a [`Report`]; nothing here touches the process
//! streams, which keeps the commands testable in-process.

use serde_json::{json, Value};
use wabl::{
    closed_form_constant, closed_form_linear, closed_form_quadratic, pattern_weights,
    rank_alternatives, sum_means, sum_means_identity, wabl_continuous_closed,
    wabl_continuous_quadrature, wabl_trapezoid_pattern, weighted_sum_means,
    weighted_sum_means_identity, Alternative, EqualSpacedScheme, Evaluation, FuzzyNumber,
    Optimism, PatternTable, Trapezoid, WablError, WablResult,
};

use crate::args::Format;
use crate::config::{RunConfig, WeightSource};
use crate::error::CliError;
use crate::input::{InputDocument, Record};
use crate::render::{dev, num, table};

/// Relative deviation above which `verify` flags a check.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub stdout: String,
    pub stderr: String,
    pub input_failed: bool,
    pub computation_failed: bool,
}

impl Report {
    /// 0 on success, 1 if any input was rejected, otherwise 2 if any computation failed.
    pub fn exit_code(&self) -> u8 {
        if self.input_failed {
            1
        } else if self.computation_failed {
            2
        } else {
            0
        }
    }

    fn fail(&mut self, failure: &Failure, label: &str) {
        match failure {
            Failure::Input(msg) => {
                self.input_failed = true;
                self.stderr.push_str(&format!("error: {label}: {msg}\n"));
            }
            Failure::Computation(msg) => {
                self.computation_failed = true;
                self.stderr.push_str(&format!("error: {label}: {msg}\n"));
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Failure {
    Input(String),
    Computation(String),
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Input(_) => "input",
            Failure::Computation(_) => "computation",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Computation(m) => m,
        }
    }

    fn to_json(&self) -> Value {
        json!({ "kind": self.kind(), "message": self.message() })
    }
}

fn evaluate(record: &Record, cfg: &RunConfig) -> Result<WablResult, Failure> {
    let number = record.number.as_ref().map_err(|e| Failure::Input(e.clone()))?;
    cfg.weighting()
        .evaluate(number, cfg.c)
        .map_err(|e| match e {
            WablError::MissingWeights { .. } => Failure::Input(e.to_string()),
            other => Failure::Computation(other.to_string()),
        })
}

/// The record as given (so machine output can be read back), or its position
/// and id when it did not parse.
fn record_json(record: &Record) -> Value {
    match &record.spec {
        Some(spec) => serde_json::to_value(spec).expect("record specs serialize"),
        None => json!({ "index": record.index, "id": record.id }),
    }
}

fn result_json(res: &WablResult) -> Value {
    let mut out = json!({ "value": res.value, "path": res.path.as_str() });
    if let Some(terms) = &res.breakdown {
        out["breakdown"] = terms
            .iter()
            .map(|t| {
                json!({
                    "alpha": t.alpha,
                    "mass": t.mass,
                    "lower": t.cut.lo(),
                    "upper": t.cut.hi(),
                    "mean": t.mean,
                    "native": t.native,
                })
            })
            .collect();
    }
    out
}

fn display_id(record: &Record) -> String {
    if record.id.is_empty() {
        format!("#{}", record.index + 1)
    } else {
        record.id.clone()
    }
}

fn machine(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
    s.push('\n');
    s
}

fn breakdown_text(record: &Record, res: &WablResult) -> String {
    let mut out = format!("\n{}: per-level terms\n", display_id(record));
    match &res.breakdown {
        Some(terms) => {
            let mut rows = vec![["alpha", "p", "L", "R", "M"].map(String::from).to_vec()];
            for t in terms {
                let marker = if t.native { "" } else { " *" };
                rows.push(vec![
                    format!("{}{marker}", num(t.alpha)),
                    num(t.mass),
                    num(t.cut.lo()),
                    num(t.cut.hi()),
                    num(t.mean),
                ]);
            }
            out.push_str(&table(&rows, "  "));
            let foreign = res.foreign_levels();
            if !foreign.is_empty() {
                let list: Vec<String> = foreign.iter().map(|a| num(*a)).collect();
                out.push_str(&format!(
                    "  * level(s) {} are not membership degrees of this number\n",
                    list.join(", ")
                ));
            }
        }
        None => out.push_str("  closed form used; pass --force-summation for per-level terms\n"),
    }
    out
}

pub fn compute(doc: &InputDocument, cfg: &RunConfig) -> Report {
    let mut report = Report::default();
    let outcomes: Vec<(&Record, Result<WablResult, Failure>)> =
        doc.records.iter().map(|r| (r, evaluate(r, cfg))).collect();
    for (record, outcome) in &outcomes {
        if let Err(f) = outcome {
            report.fail(f, &record.label());
        }
    }

    report.stdout = match cfg.format {
        Format::Machine => machine(json!({
            "command": "compute",
            "config": cfg.to_json(),
            "records": outcomes.iter().map(|(r, o)| outcome_json(r, o)).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut rows = vec![vec!["id".to_string(), "wabl".to_string(), "path".to_string()]];
            for (record, outcome) in &outcomes {
                rows.push(match outcome {
                    Ok(res) => vec![display_id(record), num(res.value), res.path.to_string()],
                    Err(f) => vec![display_id(record), "-".into(), format!("{} error", f.kind())],
                });
            }
            let mut out = format!("# {}\n", cfg.describe());
            out.push_str(&table(&rows, ""));
            if cfg.verbose {
                for (record, outcome) in &outcomes {
                    if let Ok(res) = outcome {
                        out.push_str(&breakdown_text(record, res));
                    }
                }
            }
            out
        }
    };
    report
}

fn outcome_json(record: &Record, outcome: &Result<WablResult, Failure>) -> Value {
    let mut v = record_json(record);
    match outcome {
        Ok(res) => v["result"] = result_json(res),
        Err(f) => v["error"] = f.to_json(),
    }
    v
}

pub fn rank(doc: &InputDocument, cfg: &RunConfig) -> Report {
    let mut report = Report::default();
    let outcomes: Vec<(&Record, Result<WablResult, Failure>)> =
        doc.records.iter().map(|r| (r, evaluate(r, cfg))).collect();
    for (record, outcome) in &outcomes {
        if let Err(f) = outcome {
            report.fail(f, &record.label());
        }
    }

    let alternatives: Vec<Alternative> = outcomes
        .iter()
        .filter(|(_, o)| o.is_ok())
        .filter_map(|(r, _)| {
            r.number
                .as_ref()
                .ok()
                .map(|n| Alternative::new(display_id(r), n.clone()))
        })
        .collect();
    let ranking = if alternatives.is_empty() {
        None
    } else {
        match rank_alternatives(&alternatives, &cfg.weighting(), cfg.c) {
            Ok(r) => Some(r),
            Err(e) => {
                report.fail(&Failure::Computation(e.to_string()), "ranking");
                None
            }
        }
    };
    let entries = ranking.map(|r| r.entries).unwrap_or_default();

    report.stdout = match cfg.format {
        Format::Machine => machine(json!({
            "command": "rank",
            "config": cfg.to_json(),
            "ranking": entries
                .iter()
                .map(|e| json!({ "rank": e.rank, "id": e.id, "value": e.value }))
                .collect::<Vec<_>>(),
            "records": outcomes.iter().map(|(r, o)| outcome_json(r, o)).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut rows = vec![vec!["rank".to_string(), "id".to_string(), "wabl".to_string()]];
            for e in &entries {
                rows.push(vec![e.rank.to_string(), e.id.clone(), num(e.value)]);
            }
            let mut out = format!("# {}\n", cfg.describe());
            out.push_str(&table(&rows, ""));
            for (record, outcome) in &outcomes {
                if let Err(f) = outcome {
                    out.push_str(&format!("unranked: {} ({} error)\n", display_id(record), f.kind()));
                }
            }
            out
        }
    };
    report
}

/// A worked example with its value as originally published.
#[derive(Debug, Clone, Copy)]
pub struct PublishedCase {
    pub params: [f64; 4],
    pub t: u32,
    pub k: u32,
    pub c: f64,
    pub printed: f64,
}

/// Published trapezoid examples on equally spaced levels. The second one is
/// printed as 19.9; its own closed form and direct summation both give 16.2.
pub const PUBLISHED_CASES: [PublishedCase; 2] = [
    PublishedCase {
        params: [10.0, 14.0, 15.0, 23.0],
        t: 4,
        k: 0,
        c: 0.8,
        printed: 17.6,
    },
    PublishedCase {
        params: [10.0, 14.0, 15.0, 23.0],
        t: 4,
        k: 1,
        c: 0.8,
        printed: 19.9,
    },
];

#[derive(Debug, Clone)]
struct Check {
    name: String,
    reference: f64,
    comparison: f64,
}

impl Check {
    fn new(name: impl Into<String>, reference: f64, comparison: f64) -> Self {
        Self {
            name: name.into(),
            reference,
            comparison,
        }
    }

    fn abs_dev(&self) -> f64 {
        (self.reference - self.comparison).abs()
    }

    /// Deviation relative to the larger magnitude, floored at 1.
    fn rel_dev(&self) -> f64 {
        self.abs_dev() / self.reference.abs().max(self.comparison.abs()).max(1.0)
    }

    fn ok(&self) -> bool {
        self.rel_dev() <= VERIFY_TOLERANCE
    }
}

#[derive(Debug, Clone)]
struct PublishedVerdict {
    printed: f64,
    closed: f64,
    summation: f64,
}

impl PublishedVerdict {
    fn consistent(&self) -> bool {
        let scale = self.printed.abs().max(1.0);
        (self.printed - self.closed).abs() <= VERIFY_TOLERANCE * scale
            && (self.printed - self.summation).abs() <= VERIFY_TOLERANCE * scale
    }

    fn note(&self) -> String {
        if self.consistent() {
            format!(
                "published worked example value {} reproduced by closed form and summation",
                num(self.printed)
            )
        } else {
            format!(
                "published worked example prints {} for this case, but its own closed form gives {} \
                 and direct summation gives {}; the printed value is an erratum",
                num(self.printed),
                num(self.closed),
                num(self.summation)
            )
        }
    }
}

struct Verification {
    pattern_value: f64,
    continuous_value: f64,
    checks: Vec<Check>,
    published: Vec<PublishedVerdict>,
}

fn verify_trapezoid(a: &Trapezoid, scheme: &EqualSpacedScheme, c: Optimism) -> Verification {
    let t = scheme.t();
    let k = scheme.k();
    let summed = wabl_trapezoid_pattern(a, scheme, c, Evaluation::ForceSummation).value;
    let closed = match k.get() {
        0 => Some(("closed-constant", closed_form_constant(a, c))),
        1 => Some(("closed-linear", closed_form_linear(a, t, c).expect("t >= 1"))),
        2 => Some(("closed-quadratic", closed_form_quadratic(a, t, c).expect("t >= 1"))),
        _ => None,
    };
    let continuous = wabl_continuous_closed(a, k, c);

    let mut checks = Vec::new();
    if let Some((name, value)) = closed {
        checks.push(Check::new(format!("discrete {name} vs summation"), value, summed));
    }
    checks.push(Check::new(
        "continuous closed form vs quadrature",
        continuous,
        wabl_continuous_quadrature(a, k, c),
    ));
    checks.push(Check::new(
        "sum M(alpha_i): identity vs direct",
        sum_means_identity(a, t, c).expect("t >= 1"),
        sum_means(a, t, c).expect("t >= 1"),
    ));
    checks.push(Check::new(
        "sum i M(alpha_i): identity vs direct",
        weighted_sum_means_identity(a, t, c).expect("t >= 1"),
        weighted_sum_means(a, t, c).expect("t >= 1"),
    ));

    let published = PUBLISHED_CASES
        .iter()
        .filter(|p| p.params == a.params() && p.t == t && p.k == k.get() && p.c == c.value())
        .map(|p| PublishedVerdict {
            printed: p.printed,
            closed: closed.map_or(summed, |(_, v)| v),
            summation: summed,
        })
        .collect();

    Verification {
        pattern_value: closed.map_or(summed, |(_, v)| v),
        continuous_value: continuous,
        checks,
        published,
    }
}

pub fn verify(doc: &InputDocument, cfg: &RunConfig) -> Result<Report, CliError> {
    let scheme = *cfg.source.pattern().ok_or_else(|| {
        CliError::Config("verify needs an equally spaced pattern: give --k with --t".to_string())
    })?;
    let mut report = Report::default();
    let mut results: Vec<(&Record, Result<Verification, Failure>)> = Vec::new();
    for record in &doc.records {
        let outcome = match &record.number {
            Err(e) => Err(Failure::Input(e.clone())),
            Ok(FuzzyNumber::Discrete(_)) => Err(Failure::Input(
                "verify accepts trapezoid and triangle records only".to_string(),
            )),
            Ok(FuzzyNumber::Trapezoid(a)) => Ok(verify_trapezoid(a, &scheme, cfg.c)),
        };
        match &outcome {
            Err(f) => report.fail(f, &record.label()),
            Ok(v) => {
                for check in v.checks.iter().filter(|c| !c.ok()) {
                    report.fail(
                        &Failure::Computation(format!(
                            "{} deviates by {} (relative)",
                            check.name,
                            dev(check.rel_dev())
                        )),
                        &record.label(),
                    );
                }
            }
        }
        results.push((record, outcome));
    }

    report.stdout = match cfg.format {
        Format::Machine => {
            let records: Vec<Value> = results
                .iter()
                .map(|(record, outcome)| {
                    let mut v = record_json(record);
                    match outcome {
                        Err(f) => v["error"] = f.to_json(),
                        Ok(ver) => {
                            v["pattern_value"] = json!(ver.pattern_value);
                            v["continuous_value"] = json!(ver.continuous_value);
                            v["checks"] = ver
                                .checks
                                .iter()
                                .map(|c| {
                                    json!({
                                        "name": c.name,
                                        "reference": c.reference,
                                        "comparison": c.comparison,
                                        "abs_dev": c.abs_dev(),
                                        "rel_dev": c.rel_dev(),
                                        "ok": c.ok(),
                                    })
                                })
                                .collect();
                            v["published"] = ver
                                .published
                                .iter()
                                .map(|p| {
                                    json!({
                                        "printed": p.printed,
                                        "closed": p.closed,
                                        "summation": p.summation,
                                        "consistent": p.consistent(),
                                        "note": p.note(),
                                    })
                                })
                                .collect();
                        }
                    }
                    v
                })
                .collect();
            machine(json!({
                "command": "verify",
                "config": cfg.to_json(),
                "tolerance": VERIFY_TOLERANCE,
                "records": records,
            }))
        }
        Format::Text => {
            let mut out = format!(
                "# {}; flag above {} relative\n",
                cfg.describe(),
                dev(VERIFY_TOLERANCE)
            );
            for (record, outcome) in &results {
                out.push('\n');
                match outcome {
                    Err(f) => out.push_str(&format!(
                        "{}: {} error: {}\n",
                        display_id(record),
                        f.kind(),
                        f.message()
                    )),
                    Ok(ver) => {
                        out.push_str(&format!(
                            "{}: discrete WABL {}, continuous WABL {}\n",
                            display_id(record),
                            num(ver.pattern_value),
                            num(ver.continuous_value)
                        ));
                        let mut rows = vec![["check", "reference", "comparison", "abs dev", "rel dev", "status"]
                            .map(String::from)
                            .to_vec()];
                        for c in &ver.checks {
                            rows.push(vec![
                                c.name.clone(),
                                num(c.reference),
                                num(c.comparison),
                                dev(c.abs_dev()),
                                dev(c.rel_dev()),
                                if c.ok() { "ok" } else { "DEVIATION" }.to_string(),
                            ]);
                        }
                        out.push_str(&table(&rows, "  "));
                        for p in &ver.published {
                            out.push_str(&format!("  note: {}\n", p.note()));
                        }
                    }
                }
            }
            out
        }
    };
    Ok(report)
}

pub fn weights(source: &WeightSource, format: Format) -> Result<Report, CliError> {
    let scheme = source.pattern().ok_or_else(|| {
        CliError::Config("weights prints pattern tables: give --k with --t".to_string())
    })?;
    let table_data = PatternTable::new(scheme);
    let masses = pattern_weights(scheme);
    let q_text = |q: f64| {
        if table_data.exact {
            format!("{q:.0}")
        } else {
            num(q)
        }
    };

    let stdout = match format {
        Format::Machine => machine(json!({
            "command": "weights",
            "t": scheme.t(),
            "k": scheme.k().get(),
            "Q": table_data.total,
            "exact": table_data.exact,
            "rows": masses
                .iter()
                .zip(&table_data.q)
                .enumerate()
                .map(|(i, ((alpha, p), q))| json!({ "i": i, "alpha": alpha, "q": q, "p": p }))
                .collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut rows = vec![["i", "alpha", "q", "p"].map(String::from).to_vec()];
            for (i, ((alpha, p), q)) in masses.iter().zip(&table_data.q).enumerate() {
                rows.push(vec![i.to_string(), num(alpha), q_text(*q), num(p)]);
            }
            let mut out = format!(
                "# t = {}, k = {}, Q = {}\n",
                scheme.t(),
                scheme.k().get(),
                q_text(table_data.total)
            );
            out.push_str(&table(&rows, ""));
            out
        }
    };
    Ok(Report {
        stdout,
        ..Report::default()
    })
}
