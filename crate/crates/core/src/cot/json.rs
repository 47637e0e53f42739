//! Canonical JSON text form of COT programs.
//!
//! The schema is strict: `{"steps":[{"id":1,"func":"...","args":[...]}]}`
//! with argument objects `{"num":..}`, `{"text":..}`, `{"ref":..}`,
//! `{"row":..}`, `{"col":..}` or `{"row":..,"col":..}`. Unknown keys are
//! rejected with the offending path. Serialization is deterministic and
//! `deserialize(serialize(p)) == p`.

use super::{Arg, CotProgram, CotStep};
use serde_json::{Map, Number, Value as Json};
use std::fmt::Write;
use thiserror::Error;

/// A schema violation, carrying the JSON path of the offending node.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("schema error at {path}: {message}")]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

fn err(path: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError { path: path.into(), message: message.into() }
}

/// Renders a program to its canonical JSON text. Key order is fixed
/// (id, func, args; row before col), so equal programs produce
/// byte-identical text.
pub fn serialize(program: &CotProgram) -> String {
    let mut out = String::from(r#"{"steps":["#);
    for (i, step) in program.steps().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, r#"{{"id":{},"func":{},"args":["#, step.id, quote(&step.func)).unwrap();
        for (j, arg) in step.args.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write_arg(&mut out, arg);
        }
        out.push_str("]}");
    }
    out.push_str("]}");
    out
}

fn write_arg(out: &mut String, arg: &Arg) {
    match arg {
        Arg::Number(v) => write!(out, r#"{{"num":{}}}"#, number(*v)).unwrap(),
        Arg::Text(s) => write!(out, r#"{{"text":{}}}"#, quote(s)).unwrap(),
        Arg::StepRef(id) => write!(out, r#"{{"ref":{id}}}"#).unwrap(),
        Arg::Query { row, col } => {
            out.push('{');
            if let Some(r) = row {
                write!(out, r#""row":{}"#, quote(r)).unwrap();
                if col.is_some() {
                    out.push(',');
                }
            }
            if let Some(c) = col {
                write!(out, r#""col":{}"#, quote(c)).unwrap();
            }
            out.push('}');
        }
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Integral literals print without a decimal point.
fn number(v: f64) -> Json {
    if v.fract() == 0.0 && v.abs() < 9.0e15 {
        Json::Number(Number::from(v as i64))
    } else {
        Json::Number(Number::from_f64(v).expect("literals are finite"))
    }
}

/// Parses canonical JSON text into a program, rejecting schema violations
/// (missing or extra keys, wrong types) with the precise path.
pub fn deserialize(text: &str) -> Result<CotProgram, SchemaError> {
    let root: Json =
        serde_json::from_str(text).map_err(|e| err("$", format!("invalid JSON: {e}")))?;
    let obj = root.as_object().ok_or_else(|| err("$", "expected an object"))?;
    for key in obj.keys() {
        if key != "steps" {
            return Err(err("$", format!("unknown key '{key}'")));
        }
    }
    let steps_json = obj
        .get("steps")
        .ok_or_else(|| err("$", "missing key 'steps'"))?
        .as_array()
        .ok_or_else(|| err("steps", "expected an array"))?;
    if steps_json.is_empty() {
        return Err(err("steps", "program must have at least one step"));
    }
    let mut steps = Vec::with_capacity(steps_json.len());
    for (k, step_json) in steps_json.iter().enumerate() {
        steps.push(parse_step(step_json, k)?);
    }
    Ok(CotProgram::new(steps))
}

fn parse_step(value: &Json, k: usize) -> Result<CotStep, SchemaError> {
    let path = format!("steps[{k}]");
    let obj = value.as_object().ok_or_else(|| err(&path, "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "id" | "func" | "args") {
            return Err(err(&path, format!("unknown key '{key}'")));
        }
    }
    let id = obj
        .get("id")
        .ok_or_else(|| err(format!("{path}.id"), "missing"))?
        .as_u64()
        .filter(|v| *v >= 1 && *v <= u32::MAX as u64)
        .ok_or_else(|| err(format!("{path}.id"), "expected a positive integer"))?;
    let func = obj
        .get("func")
        .ok_or_else(|| err(format!("{path}.func"), "missing"))?
        .as_str()
        .ok_or_else(|| err(format!("{path}.func"), "expected a string"))?;
    let args_json = obj
        .get("args")
        .ok_or_else(|| err(format!("{path}.args"), "missing"))?
        .as_array()
        .ok_or_else(|| err(format!("{path}.args"), "expected an array"))?;
    let mut args = Vec::with_capacity(args_json.len());
    for (j, arg_json) in args_json.iter().enumerate() {
        args.push(parse_arg(arg_json, &format!("{path}.args[{j}]"))?);
    }
    Ok(CotStep { id: id as u32, func: func.to_string(), args })
}

fn parse_arg(value: &Json, path: &str) -> Result<Arg, SchemaError> {
    let obj = value.as_object().ok_or_else(|| err(path, "expected an object"))?;
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    match keys.as_slice() {
        ["num"] => {
            let v = obj["num"]
                .as_f64()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(format!("{path}.num"), "expected a finite number"))?;
            Ok(Arg::Number(v))
        }
        ["text"] => {
            let s = obj["text"]
                .as_str()
                .ok_or_else(|| err(format!("{path}.text"), "expected a string"))?;
            Ok(Arg::Text(s.to_string()))
        }
        ["ref"] => {
            let id = obj["ref"]
                .as_u64()
                .filter(|v| *v >= 1 && *v <= u32::MAX as u64)
                .ok_or_else(|| err(format!("{path}.ref"), "expected a positive integer"))?;
            Ok(Arg::StepRef(id as u32))
        }
        ["row"] => Ok(Arg::Query { row: Some(query_label(obj, "row", path)?), col: None }),
        ["col"] => Ok(Arg::Query { row: None, col: Some(query_label(obj, "col", path)?) }),
        ["col", "row"] => Ok(Arg::Query {
            row: Some(query_label(obj, "row", path)?),
            col: Some(query_label(obj, "col", path)?),
        }),
        _ => Err(err(
            path,
            "expected exactly one of {num}, {text}, {ref}, {row}, {col} or {row,col}",
        )),
    }
}

fn query_label(obj: &Map<String, Json>, key: &str, path: &str) -> Result<String, SchemaError> {
    obj[key]
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| err(format!("{path}.{key}"), "expected a string"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cot::Arg;

    fn sample() -> CotProgram {
        CotProgram::from_calls(vec![
            ("retrieve_column", vec![Arg::col("Y")]),
            ("max", vec![Arg::StepRef(1)]),
        ])
    }

    #[test]
    fn canonical_text_form() {
        assert_eq!(
            serialize(&sample()),
            r#"{"steps":[{"id":1,"func":"retrieve_column","args":[{"col":"Y"}]},{"id":2,"func":"max","args":[{"ref":1}]}]}"#
        );
    }

    #[test]
    fn round_trip_identity() {
        let p = CotProgram::from_calls(vec![
            ("retrieve_cell", vec![Arg::cell("A", "Y")]),
            ("retrieve_row", vec![Arg::row("A")]),
            ("mean", vec![Arg::StepRef(2)]),
            ("equal_within", vec![Arg::StepRef(1), Arg::StepRef(3), Arg::Number(0.5)]),
        ]);
        assert_eq!(deserialize(&serialize(&p)).unwrap(), p);
    }

    #[test]
    fn missing_func_reports_path() {
        let text = r#"{"steps":[{"id":1,"args":[]}]}"#;
        let e = deserialize(text).unwrap_err();
        assert_eq!(e.path, "steps[0].func");
    }

    #[test]
    fn unknown_key_rejected_in_strict_mode() {
        let text = r#"{"steps":[{"id":1,"func":"max","args":[],"note":"hi"}]}"#;
        let e = deserialize(text).unwrap_err();
        assert_eq!(e.path, "steps[0]");
        assert!(e.message.contains("note"));

        let text = r#"{"steps":[],"extra":1}"#;
        assert!(deserialize(text).is_err());
    }

    #[test]
    fn bad_arg_shape_reports_arg_path() {
        let text = r#"{"steps":[{"id":1,"func":"max","args":[{"num":1,"text":"x"}]}]}"#;
        let e = deserialize(text).unwrap_err();
        assert_eq!(e.path, "steps[0].args[0]");
    }

    #[test]
    fn integral_literal_prints_without_point() {
        let p = CotProgram::from_calls(vec![("abs", vec![Arg::Number(7.0)])]);
        assert!(serialize(&p).contains(r#"{"num":7}"#));
        let p = CotProgram::from_calls(vec![("abs", vec![Arg::Number(7.25)])]);
        assert!(serialize(&p).contains(r#"{"num":7.25}"#));
    }
}
