//! Chain-of-thought programs: a straight-line function-call IR plus a
//! deterministic interpreter over a fixed function library.
//!
//! A program is an ordered list of steps; each step calls one registry
//! function with literal, step-reference or table-query arguments, and the
//! last step's value is the answer. Programs serialize to a canonical JSON
//! text form (see [`json`]) which is the on-disk response format for
//! numerical and referring QA records.

mod json;
mod registry;

pub use json::{deserialize, serialize, SchemaError};
pub use registry::{FunctionSpec, ParamKind, StaticKind, REGISTRY};

use crate::table::numfmt;
use crate::table::DataTable;
use thiserror::Error;

/// A runtime value produced by a program step.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Text(String),
    Bool(bool),
    NumberList(Vec<f64>),
    TextList(Vec<String>),
}

impl Value {
    pub fn kind(&self) -> StaticKind {
        match self {
            Value::Number(_) => StaticKind::Number,
            Value::Text(_) => StaticKind::Text,
            Value::Bool(_) => StaticKind::Bool,
            Value::NumberList(_) => StaticKind::NumberList,
            Value::TextList(_) => StaticKind::TextList,
        }
    }

    /// Canonical answer text: numbers under the shared format, booleans as
    /// Yes/No, lists comma-joined.
    pub fn render(&self) -> String {
        match self {
            Value::Number(v) => numfmt::format_number(*v),
            Value::Text(s) => s.clone(),
            Value::Bool(true) => "Yes".to_string(),
            Value::Bool(false) => "No".to_string(),
            Value::NumberList(vs) => {
                vs.iter().map(|v| numfmt::format_number(*v)).collect::<Vec<_>>().join(", ")
            }
            Value::TextList(ts) => ts.join(", "),
        }
    }
}

/// One argument of a step.
#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    /// Literal finite number.
    Number(f64),
    /// Literal text.
    Text(String),
    /// Reference to the value of an earlier step.
    StepRef(u32),
    /// Table lookup by row and/or column label.
    Query { row: Option<String>, col: Option<String> },
}

impl Arg {
    pub fn cell(row: impl Into<String>, col: impl Into<String>) -> Self {
        Arg::Query { row: Some(row.into()), col: Some(col.into()) }
    }

    pub fn row(row: impl Into<String>) -> Self {
        Arg::Query { row: Some(row.into()), col: None }
    }

    pub fn col(col: impl Into<String>) -> Self {
        Arg::Query { row: None, col: Some(col.into()) }
    }
}

/// One function call in a program.
#[derive(Debug, Clone, PartialEq)]
pub struct CotStep {
    pub id: u32,
    pub func: String,
    pub args: Vec<Arg>,
}

/// A straight-line program; the final step's output is the answer.
#[derive(Debug, Clone, PartialEq)]
pub struct CotProgram {
    steps: Vec<CotStep>,
}

impl CotProgram {
    pub fn new(steps: Vec<CotStep>) -> Self {
        CotProgram { steps }
    }

    /// Builds a program from (func, args) pairs, assigning ids 1..=n.
    pub fn from_calls(calls: Vec<(&str, Vec<Arg>)>) -> Self {
        let steps = calls
            .into_iter()
            .enumerate()
            .map(|(i, (func, args))| CotStep { id: i as u32 + 1, func: func.to_string(), args })
            .collect();
        CotProgram { steps }
    }

    pub fn steps(&self) -> &[CotStep] {
        &self.steps
    }

    pub fn to_json(&self) -> String {
        json::serialize(self)
    }
}

/// Counts reported for template-library statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProgramStats {
    pub steps: usize,
    pub distinct_functions: usize,
}

/// Exact step and function counts of a program.
pub fn program_stats(program: &CotProgram) -> ProgramStats {
    let mut names: Vec<&str> = program.steps.iter().map(|s| s.func.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    ProgramStats { steps: program.steps.len(), distinct_functions: names.len() }
}

/// Errors raised while executing a program. Each carries the failing step id.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExecError {
    #[error("step {step}: unknown function '{name}'")]
    UnknownFunction { step: u32, name: String },
    #[error("step {step}: {func} takes {expected} arguments, got {got}")]
    ArityMismatch { step: u32, func: String, expected: usize, got: usize },
    #[error("step {step}: type mismatch: {detail}")]
    TypeMismatch { step: u32, detail: String },
    #[error("step {step}: lookup miss: {detail}")]
    LookupMiss { step: u32, detail: String },
    #[error("step {step}: division by zero")]
    DivisionByZero { step: u32 },
    #[error("step {step}: correlation undefined (zero variance)")]
    UndefinedCorrelation { step: u32 },
    #[error("step {step}: malformed program: {detail}")]
    MalformedProgram { step: u32, detail: String },
}

impl ExecError {
    pub fn step(&self) -> u32 {
        match self {
            ExecError::UnknownFunction { step, .. }
            | ExecError::ArityMismatch { step, .. }
            | ExecError::TypeMismatch { step, .. }
            | ExecError::LookupMiss { step, .. }
            | ExecError::DivisionByZero { step }
            | ExecError::UndefinedCorrelation { step }
            | ExecError::MalformedProgram { step, .. } => *step,
        }
    }
}

/// A static violation found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub step: u32,
    pub message: String,
}

/// Checks a program without executing it and returns every static
/// violation: unknown or misused functions, bad arity, forward or dangling
/// step references, non-increasing ids. An empty result means execution can
/// only fail on value-dependent conditions (division by zero, lookup
/// misses, undefined correlation).
pub fn validate(program: &CotProgram) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if program.steps.is_empty() {
        out.push(Diagnostic { step: 0, message: "program has no steps".into() });
        return out;
    }
    let mut seen: Vec<(u32, StaticKind)> = Vec::new();
    let mut last_id = 0u32;
    for step in &program.steps {
        if step.id <= last_id {
            out.push(Diagnostic {
                step: step.id,
                message: format!("step ids must be strictly increasing (saw {} after {})", step.id, last_id),
            });
        }
        last_id = step.id.max(last_id);
        let spec = match registry::lookup(&step.func) {
            Some(spec) => spec,
            None => {
                out.push(Diagnostic {
                    step: step.id,
                    message: format!("unknown function '{}'", step.func),
                });
                continue;
            }
        };
        if step.args.len() != spec.params.len() {
            out.push(Diagnostic {
                step: step.id,
                message: format!(
                    "{} takes {} arguments, got {}",
                    spec.name,
                    spec.params.len(),
                    step.args.len()
                ),
            });
            continue;
        }
        let mut arg_kinds = Vec::with_capacity(step.args.len());
        for (pos, (arg, param)) in step.args.iter().zip(spec.params.iter()).enumerate() {
            let kind = match arg {
                Arg::Number(v) => {
                    if !v.is_finite() {
                        out.push(Diagnostic {
                            step: step.id,
                            message: format!("argument {pos}: literal number must be finite"),
                        });
                    }
                    Some(StaticKind::Number)
                }
                Arg::Text(_) => Some(StaticKind::Text),
                Arg::StepRef(target) => {
                    match seen.iter().find(|(id, _)| id == target) {
                        Some((_, kind)) => Some(*kind),
                        None => {
                            out.push(Diagnostic {
                                step: step.id,
                                message: format!(
                                    "argument {pos}: reference to step {target} which is not an earlier step"
                                ),
                            });
                            None
                        }
                    }
                }
                Arg::Query { row, col } => {
                    let shape_ok = match param {
                        ParamKind::QueryCell => row.is_some() && col.is_some(),
                        ParamKind::QueryRow => row.is_some() && col.is_none(),
                        ParamKind::QueryCol => row.is_none() && col.is_some(),
                        _ => false,
                    };
                    if !shape_ok {
                        out.push(Diagnostic {
                            step: step.id,
                            message: format!(
                                "argument {pos}: table query does not fit parameter {param:?}"
                            ),
                        });
                    }
                    None // queries are not values; shape already checked
                }
            };
            if let Some(kind) = kind {
                if !param.accepts(kind) {
                    out.push(Diagnostic {
                        step: step.id,
                        message: format!(
                            "argument {pos}: {} expects {param:?}, got {kind:?}",
                            spec.name
                        ),
                    });
                }
                arg_kinds.push(kind);
            } else {
                arg_kinds.push(StaticKind::Any);
            }
        }
        if step.func == "retrieve_labels" {
            if let Some(Arg::Text(which)) = step.args.first() {
                if which != "rows" && which != "columns" {
                    out.push(Diagnostic {
                        step: step.id,
                        message: format!("retrieve_labels expects \"rows\" or \"columns\", got \"{which}\""),
                    });
                }
            }
        }
        seen.push((step.id, spec.result_kind(&arg_kinds)));
    }
    out
}

/// Executes a program against a table, evaluating steps in order and
/// returning the final step's value. Pure: neither the table nor the
/// program is mutated, and identical inputs yield identical values.
pub fn execute(program: &CotProgram, table: &DataTable) -> Result<Value, ExecError> {
    let diags = validate(program);
    if let Some(d) = diags.first() {
        let step = d.step;
        // surface static problems under their runtime error kinds
        if let Some(s) = program.steps.iter().find(|s| s.id == step) {
            if registry::lookup(&s.func).is_none() {
                return Err(ExecError::UnknownFunction { step, name: s.func.clone() });
            }
            if let Some(spec) = registry::lookup(&s.func) {
                if s.args.len() != spec.params.len() {
                    return Err(ExecError::ArityMismatch {
                        step,
                        func: s.func.clone(),
                        expected: spec.params.len(),
                        got: s.args.len(),
                    });
                }
            }
        }
        return Err(ExecError::MalformedProgram { step, detail: d.message.clone() });
    }

    let mut values: Vec<(u32, Value)> = Vec::with_capacity(program.steps.len());
    for step in &program.steps {
        let value = registry::eval(step, table, &values)?;
        values.push((step.id, value));
    }
    Ok(values.last().expect("validated program is non-empty").1.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::DataTable;

    fn table() -> DataTable {
        DataTable::from_numbers(
            "t",
            "x",
            "y",
            vec!["A".into(), "B".into(), "C".into()],
            vec!["Y".into(), "Z".into()],
            vec![vec![3.0, 6.0], vec![7.0, 4.0], vec![5.0, 2.0]],
        )
        .unwrap()
    }

    #[test]
    fn retrieval_then_max() {
        let p = CotProgram::from_calls(vec![
            ("retrieve_column", vec![Arg::col("Y")]),
            ("max", vec![Arg::StepRef(1)]),
        ]);
        assert_eq!(execute(&p, &table()).unwrap(), Value::Number(7.0));
    }

    #[test]
    fn perfectly_anticorrelated_columns() {
        let t = DataTable::from_numbers(
            "t",
            "x",
            "y",
            vec!["A".into(), "B".into(), "C".into()],
            vec!["P".into(), "Q".into()],
            vec![vec![1.0, 6.0], vec![2.0, 4.0], vec![3.0, 2.0]],
        )
        .unwrap();
        let p = CotProgram::from_calls(vec![
            ("retrieve_column", vec![Arg::col("P")]),
            ("retrieve_column", vec![Arg::col("Q")]),
            ("correlation", vec![Arg::StepRef(1), Arg::StepRef(2)]),
        ]);
        assert_eq!(execute(&p, &t).unwrap(), Value::Number(-1.0));
    }

    #[test]
    fn divide_by_retrieved_zero() {
        let t = DataTable::from_numbers(
            "t",
            "x",
            "y",
            vec!["A".into()],
            vec!["Y".into(), "Z".into()],
            vec![vec![3.0, 0.0]],
        )
        .unwrap();
        let p = CotProgram::from_calls(vec![
            ("retrieve_cell", vec![Arg::cell("A", "Y")]),
            ("retrieve_cell", vec![Arg::cell("A", "Z")]),
            ("divide", vec![Arg::StepRef(1), Arg::StepRef(2)]),
        ]);
        assert_eq!(execute(&p, &t), Err(ExecError::DivisionByZero { step: 3 }));
    }

    #[test]
    fn validate_reports_static_violations() {
        let good = CotProgram::from_calls(vec![
            ("retrieve_column", vec![Arg::col("Y")]),
            ("mean", vec![Arg::StepRef(1)]),
        ]);
        assert!(validate(&good).is_empty());

        let forward = CotProgram::new(vec![
            CotStep { id: 1, func: "max".into(), args: vec![Arg::StepRef(2)] },
            CotStep {
                id: 2,
                func: "retrieve_column".into(),
                args: vec![Arg::col("Y")],
            },
        ]);
        let diags = validate(&forward);
        assert!(diags.iter().any(|d| d.step == 1 && d.message.contains("reference")));

        let unknown = CotProgram::from_calls(vec![("foo", vec![])]);
        assert!(validate(&unknown).iter().any(|d| d.message.contains("unknown function")));
    }

    #[test]
    fn execute_rejects_unknown_function_with_step_id() {
        let p = CotProgram::from_calls(vec![("frobnicate", vec![Arg::Number(1.0)])]);
        assert_eq!(
            execute(&p, &table()),
            Err(ExecError::UnknownFunction { step: 1, name: "frobnicate".into() })
        );
    }

    #[test]
    fn arity_mismatch_surfaces() {
        let p = CotProgram::from_calls(vec![("add", vec![Arg::Number(1.0)])]);
        assert_eq!(
            execute(&p, &table()),
            Err(ExecError::ArityMismatch { step: 1, func: "add".into(), expected: 2, got: 1 })
        );
    }

    #[test]
    fn stats_counts_distinct_functions() {
        let p = CotProgram::from_calls(vec![
            ("retrieve_column", vec![Arg::col("Y")]),
            ("max", vec![Arg::StepRef(1)]),
        ]);
        assert_eq!(program_stats(&p), ProgramStats { steps: 2, distinct_functions: 2 });

        let p = CotProgram::from_calls(vec![
            ("add", vec![Arg::Number(1.0), Arg::Number(2.0)]),
            ("add", vec![Arg::StepRef(1), Arg::Number(3.0)]),
            ("add", vec![Arg::StepRef(2), Arg::Number(4.0)]),
            ("retrieve_column", vec![Arg::col("Y")]),
            ("count", vec![Arg::StepRef(4)]),
        ]);
        assert_eq!(program_stats(&p), ProgramStats { steps: 5, distinct_functions: 3 });
    }

    #[test]
    fn purity_repeated_execution() {
        let t = table();
        let p = CotProgram::from_calls(vec![
            ("retrieve_column", vec![Arg::col("Z")]),
            ("sort", vec![Arg::StepRef(1)]),
            ("median", vec![Arg::StepRef(2)]),
        ]);
        let a = execute(&p, &t).unwrap();
        let b = execute(&p, &t).unwrap();
        assert_eq!(a, b);
        assert_eq!(t, table());
    }

    #[test]
    fn bool_renders_yes_no() {
        assert_eq!(Value::Bool(true).render(), "Yes");
        assert_eq!(Value::Bool(false).render(), "No");
        assert_eq!(Value::Number(2.5).render(), "2.5");
    }
}
