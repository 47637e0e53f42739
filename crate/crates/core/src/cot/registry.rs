//! The fixed function library available to COT programs.
//!
//! Every function is pure and total on its declared domain or raises a
//! declared error. Aggregates over an empty list raise a lookup miss;
//! argmax/argmin break ties toward the smallest index; stddev and
//! correlation use population denominators.

use super::{Arg, CotStep, ExecError, Value};
use crate::table::{Cell, DataTable};

/// Static kind of a step's result, used by validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StaticKind {
    Number,
    Text,
    Bool,
    NumberList,
    TextList,
    /// A scalar whose concrete kind depends on table contents.
    AnyScalar,
    /// Unknown (after an earlier diagnostic); accepted everywhere.
    Any,
}

/// Declared parameter kind of a registry function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Number,
    Text,
    NumberList,
    TextList,
    AnyList,
    QueryCell,
    QueryRow,
    QueryCol,
}

impl ParamKind {
    pub fn accepts(self, kind: StaticKind) -> bool {
        match (self, kind) {
            (_, StaticKind::Any) => true,
            (ParamKind::Number, StaticKind::Number | StaticKind::AnyScalar) => true,
            (ParamKind::Text, StaticKind::Text | StaticKind::AnyScalar) => true,
            (ParamKind::NumberList, StaticKind::NumberList) => true,
            (ParamKind::TextList, StaticKind::TextList) => true,
            (ParamKind::AnyList, StaticKind::NumberList | StaticKind::TextList) => true,
            _ => false,
        }
    }
}

/// Signature of one registry function.
#[derive(Debug, Clone, Copy)]
pub struct FunctionSpec {
    pub name: &'static str,
    pub params: &'static [ParamKind],
    result: StaticKind,
}

impl FunctionSpec {
    /// Result kind given the argument kinds (element_at narrows to the
    /// element kind of its list argument).
    pub fn result_kind(&self, arg_kinds: &[StaticKind]) -> StaticKind {
        if self.name == "element_at" {
            return match arg_kinds.first() {
                Some(StaticKind::NumberList) => StaticKind::Number,
                Some(StaticKind::TextList) => StaticKind::Text,
                _ => StaticKind::AnyScalar,
            };
        }
        self.result
    }
}

use ParamKind as P;
use StaticKind as K;

/// The full function library, in registry order.
pub const REGISTRY: &[FunctionSpec] = &[
    FunctionSpec { name: "retrieve_cell", params: &[P::QueryCell], result: K::AnyScalar },
    FunctionSpec { name: "retrieve_row", params: &[P::QueryRow], result: K::NumberList },
    FunctionSpec { name: "retrieve_column", params: &[P::QueryCol], result: K::NumberList },
    FunctionSpec { name: "retrieve_labels", params: &[P::Text], result: K::TextList },
    FunctionSpec { name: "max", params: &[P::NumberList], result: K::Number },
    FunctionSpec { name: "min", params: &[P::NumberList], result: K::Number },
    FunctionSpec { name: "argmax", params: &[P::NumberList, P::TextList], result: K::Text },
    FunctionSpec { name: "argmin", params: &[P::NumberList, P::TextList], result: K::Text },
    FunctionSpec { name: "sum", params: &[P::NumberList], result: K::Number },
    FunctionSpec { name: "mean", params: &[P::NumberList], result: K::Number },
    FunctionSpec { name: "median", params: &[P::NumberList], result: K::Number },
    FunctionSpec { name: "range", params: &[P::NumberList], result: K::Number },
    FunctionSpec { name: "stddev", params: &[P::NumberList], result: K::Number },
    FunctionSpec { name: "count", params: &[P::AnyList], result: K::Number },
    FunctionSpec { name: "add", params: &[P::Number, P::Number], result: K::Number },
    FunctionSpec { name: "subtract", params: &[P::Number, P::Number], result: K::Number },
    FunctionSpec { name: "multiply", params: &[P::Number, P::Number], result: K::Number },
    FunctionSpec { name: "divide", params: &[P::Number, P::Number], result: K::Number },
    FunctionSpec { name: "abs", params: &[P::Number], result: K::Number },
    FunctionSpec { name: "ratio", params: &[P::Number, P::Number], result: K::Number },
    FunctionSpec { name: "percentage", params: &[P::Number, P::Number], result: K::Number },
    FunctionSpec { name: "greater_than", params: &[P::Number, P::Number], result: K::Bool },
    FunctionSpec { name: "less_than", params: &[P::Number, P::Number], result: K::Bool },
    FunctionSpec { name: "equal_within", params: &[P::Number, P::Number, P::Number], result: K::Bool },
    FunctionSpec { name: "correlation", params: &[P::NumberList, P::NumberList], result: K::Number },
    FunctionSpec { name: "sort", params: &[P::NumberList], result: K::NumberList },
    FunctionSpec { name: "diff_consecutive", params: &[P::NumberList], result: K::NumberList },
    FunctionSpec { name: "filter_greater", params: &[P::NumberList, P::Number], result: K::NumberList },
    FunctionSpec { name: "filter_less", params: &[P::NumberList, P::Number], result: K::NumberList },
    FunctionSpec { name: "first", params: &[P::NumberList], result: K::Number },
    FunctionSpec { name: "last", params: &[P::NumberList], result: K::Number },
    FunctionSpec { name: "element_at", params: &[P::AnyList, P::Number], result: K::AnyScalar },
];

pub(super) fn lookup(name: &str) -> Option<&'static FunctionSpec> {
    REGISTRY.iter().find(|f| f.name == name)
}

enum Resolved<'a> {
    Value(Value),
    Query { row: Option<&'a str>, col: Option<&'a str> },
}

pub(super) fn eval(
    step: &CotStep,
    table: &DataTable,
    prior: &[(u32, Value)],
) -> Result<Value, ExecError> {
    let id = step.id;
    let resolved: Vec<Resolved> = step
        .args
        .iter()
        .map(|arg| match arg {
            Arg::Number(v) => Resolved::Value(Value::Number(*v)),
            Arg::Text(s) => Resolved::Value(Value::Text(s.clone())),
            Arg::StepRef(target) => {
                let value = prior
                    .iter()
                    .find(|(pid, _)| pid == target)
                    .map(|(_, v)| v.clone())
                    .expect("validated reference");
                Resolved::Value(value)
            }
            Arg::Query { row, col } => {
                Resolved::Query { row: row.as_deref(), col: col.as_deref() }
            }
        })
        .collect();

    let num = |i: usize| -> Result<f64, ExecError> {
        match &resolved[i] {
            Resolved::Value(Value::Number(v)) => Ok(*v),
            Resolved::Value(v) => Err(ExecError::TypeMismatch {
                step: id,
                detail: format!("argument {i} must be a number, got {:?}", v.kind()),
            }),
            Resolved::Query { .. } => unreachable!("validated"),
        }
    };
    let nums = |i: usize| -> Result<Vec<f64>, ExecError> {
        match &resolved[i] {
            Resolved::Value(Value::NumberList(vs)) => Ok(vs.clone()),
            Resolved::Value(v) => Err(ExecError::TypeMismatch {
                step: id,
                detail: format!("argument {i} must be a number list, got {:?}", v.kind()),
            }),
            Resolved::Query { .. } => unreachable!("validated"),
        }
    };
    let texts = |i: usize| -> Result<Vec<String>, ExecError> {
        match &resolved[i] {
            Resolved::Value(Value::TextList(ts)) => Ok(ts.clone()),
            Resolved::Value(v) => Err(ExecError::TypeMismatch {
                step: id,
                detail: format!("argument {i} must be a text list, got {:?}", v.kind()),
            }),
            Resolved::Query { .. } => unreachable!("validated"),
        }
    };

    let finite = |v: f64| -> Result<Value, ExecError> {
        if v.is_finite() {
            Ok(Value::Number(v))
        } else {
            Err(ExecError::TypeMismatch { step: id, detail: "non-finite result".into() })
        }
    };
    let nonempty = |vs: &[f64]| -> Result<(), ExecError> {
        if vs.is_empty() {
            Err(ExecError::LookupMiss { step: id, detail: "aggregate over empty list".into() })
        } else {
            Ok(())
        }
    };

    match step.func.as_str() {
        "retrieve_cell" => {
            let (row, col) = query(&resolved[0]);
            let r = find_row(table, row.unwrap(), id)?;
            let c = find_col(table, col.unwrap(), id)?;
            Ok(match table.cell(r, c) {
                Cell::Number(v) => Value::Number(*v),
                Cell::Text(s) => Value::Text(s.clone()),
            })
        }
        "retrieve_row" => {
            let (row, _) = query(&resolved[0]);
            let r = find_row(table, row.unwrap(), id)?;
            match table.row_numbers(r) {
                Some(vs) => Ok(Value::NumberList(vs)),
                None => Err(ExecError::TypeMismatch {
                    step: id,
                    detail: format!("row '{}' contains text cells", row.unwrap()),
                }),
            }
        }
        "retrieve_column" => {
            let (_, col) = query(&resolved[0]);
            let c = find_col(table, col.unwrap(), id)?;
            match table.column_numbers(c) {
                Some(vs) => Ok(Value::NumberList(vs)),
                None => Err(ExecError::TypeMismatch {
                    step: id,
                    detail: format!("column '{}' contains text cells", col.unwrap()),
                }),
            }
        }
        "retrieve_labels" => match &resolved[0] {
            Resolved::Value(Value::Text(which)) if which == "rows" => {
                Ok(Value::TextList(table.row_labels().to_vec()))
            }
            Resolved::Value(Value::Text(which)) if which == "columns" => {
                Ok(Value::TextList(table.col_labels().to_vec()))
            }
            _ => Err(ExecError::TypeMismatch {
                step: id,
                detail: "retrieve_labels expects \"rows\" or \"columns\"".into(),
            }),
        },
        "max" => {
            let vs = nums(0)?;
            nonempty(&vs)?;
            Ok(Value::Number(vs.iter().cloned().fold(f64::NEG_INFINITY, f64::max)))
        }
        "min" => {
            let vs = nums(0)?;
            nonempty(&vs)?;
            Ok(Value::Number(vs.iter().cloned().fold(f64::INFINITY, f64::min)))
        }
        "argmax" | "argmin" => {
            let vs = nums(0)?;
            let labels = texts(1)?;
            nonempty(&vs)?;
            if vs.len() != labels.len() {
                return Err(ExecError::TypeMismatch {
                    step: id,
                    detail: format!("{} values but {} labels", vs.len(), labels.len()),
                });
            }
            let better: fn(f64, f64) -> bool =
                if step.func == "argmax" { |a, b| a > b } else { |a, b| a < b };
            let mut best = 0usize;
            for (i, v) in vs.iter().enumerate().skip(1) {
                if better(*v, vs[best]) {
                    best = i;
                }
            }
            Ok(Value::Text(labels[best].clone()))
        }
        "sum" => finite(nums(0)?.iter().sum()),
        "mean" => {
            let vs = nums(0)?;
            nonempty(&vs)?;
            finite(vs.iter().sum::<f64>() / vs.len() as f64)
        }
        "median" => {
            let mut vs = nums(0)?;
            nonempty(&vs)?;
            vs.sort_by(f64::total_cmp);
            let n = vs.len();
            let m = if n % 2 == 1 { vs[n / 2] } else { (vs[n / 2 - 1] + vs[n / 2]) / 2.0 };
            Ok(Value::Number(m))
        }
        "range" => {
            let vs = nums(0)?;
            nonempty(&vs)?;
            let max = vs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = vs.iter().cloned().fold(f64::INFINITY, f64::min);
            finite(max - min)
        }
        "stddev" => {
            let vs = nums(0)?;
            nonempty(&vs)?;
            Ok(Value::Number(population_stddev(&vs)))
        }
        "count" => match &resolved[0] {
            Resolved::Value(Value::NumberList(vs)) => Ok(Value::Number(vs.len() as f64)),
            Resolved::Value(Value::TextList(ts)) => Ok(Value::Number(ts.len() as f64)),
            _ => unreachable!("validated"),
        },
        "add" => finite(num(0)? + num(1)?),
        "subtract" => finite(num(0)? - num(1)?),
        "multiply" => finite(num(0)? * num(1)?),
        "divide" | "ratio" => {
            let (a, b) = (num(0)?, num(1)?);
            if b == 0.0 {
                return Err(ExecError::DivisionByZero { step: id });
            }
            finite(a / b)
        }
        "abs" => finite(num(0)?.abs()),
        "percentage" => {
            let (part, whole) = (num(0)?, num(1)?);
            if whole == 0.0 {
                return Err(ExecError::DivisionByZero { step: id });
            }
            finite(100.0 * part / whole)
        }
        "greater_than" => Ok(Value::Bool(num(0)? > num(1)?)),
        "less_than" => Ok(Value::Bool(num(0)? < num(1)?)),
        "equal_within" => Ok(Value::Bool((num(0)? - num(1)?).abs() <= num(2)?)),
        "correlation" => {
            let xs = nums(0)?;
            let ys = nums(1)?;
            if xs.len() != ys.len() {
                return Err(ExecError::TypeMismatch {
                    step: id,
                    detail: format!("lists of length {} and {}", xs.len(), ys.len()),
                });
            }
            pearson(&xs, &ys).map(Value::Number).ok_or(ExecError::UndefinedCorrelation { step: id })
        }
        "sort" => {
            let mut vs = nums(0)?;
            vs.sort_by(f64::total_cmp);
            Ok(Value::NumberList(vs))
        }
        "diff_consecutive" => {
            let vs = nums(0)?;
            Ok(Value::NumberList(vs.windows(2).map(|w| w[1] - w[0]).collect()))
        }
        "filter_greater" => {
            let t = num(1)?;
            Ok(Value::NumberList(nums(0)?.into_iter().filter(|v| *v > t).collect()))
        }
        "filter_less" => {
            let t = num(1)?;
            Ok(Value::NumberList(nums(0)?.into_iter().filter(|v| *v < t).collect()))
        }
        "first" => {
            let vs = nums(0)?;
            nonempty(&vs)?;
            Ok(Value::Number(vs[0]))
        }
        "last" => {
            let vs = nums(0)?;
            nonempty(&vs)?;
            Ok(Value::Number(*vs.last().unwrap()))
        }
        "element_at" => {
            let idx = num(1)?;
            if idx < 0.0 || idx.fract() != 0.0 {
                return Err(ExecError::TypeMismatch {
                    step: id,
                    detail: format!("index must be a non-negative integer, got {idx}"),
                });
            }
            let idx = idx as usize;
            match &resolved[0] {
                Resolved::Value(Value::NumberList(vs)) => vs
                    .get(idx)
                    .map(|v| Value::Number(*v))
                    .ok_or_else(|| index_miss(id, idx, vs.len())),
                Resolved::Value(Value::TextList(ts)) => ts
                    .get(idx)
                    .map(|t| Value::Text(t.clone()))
                    .ok_or_else(|| index_miss(id, idx, ts.len())),
                _ => unreachable!("validated"),
            }
        }
        other => Err(ExecError::UnknownFunction { step: id, name: other.to_string() }),
    }
}

fn query<'a>(r: &'a Resolved<'a>) -> (Option<&'a str>, Option<&'a str>) {
    match r {
        Resolved::Query { row, col } => (*row, *col),
        Resolved::Value(_) => unreachable!("validated"),
    }
}

fn find_row(table: &DataTable, label: &str, step: u32) -> Result<usize, ExecError> {
    table.find_row(label).ok_or_else(|| ExecError::LookupMiss {
        step,
        detail: format!("no row labeled '{label}'"),
    })
}

fn find_col(table: &DataTable, label: &str, step: u32) -> Result<usize, ExecError> {
    table.find_col(label).ok_or_else(|| ExecError::LookupMiss {
        step,
        detail: format!("no column labeled '{label}'"),
    })
}

fn index_miss(step: u32, idx: usize, len: usize) -> ExecError {
    ExecError::LookupMiss { step, detail: format!("index {idx} out of bounds for list of {len}") }
}

/// Population standard deviation (denominator n).
pub fn population_stddev(vs: &[f64]) -> f64 {
    let n = vs.len() as f64;
    let mean = vs.iter().sum::<f64>() / n;
    (vs.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt()
}

/// Pearson correlation with population denominators; `None` when either
/// variance is zero (including lists shorter than two).
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for i in 0..n {
        let dx = xs[i] - mx;
        let dy = ys[i] - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    if vx == 0.0 || vy == 0.0 {
        return None;
    }
    Some(cov / (vx * vy).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cot::{execute, Arg, CotProgram};

    fn table() -> DataTable {
        DataTable::from_numbers(
            "t",
            "x",
            "y",
            vec!["A".into(), "B".into(), "C".into(), "D".into()],
            vec!["Y".into()],
            vec![vec![4.0], vec![9.0], vec![1.0], vec![9.0]],
        )
        .unwrap()
    }

    fn run(calls: Vec<(&str, Vec<Arg>)>) -> Result<Value, ExecError> {
        execute(&CotProgram::from_calls(calls), &table())
    }

    #[test]
    fn argmax_breaks_ties_toward_smallest_index() {
        let v = run(vec![
            ("retrieve_column", vec![Arg::col("Y")]),
            ("retrieve_labels", vec![Arg::Text("rows".into())]),
            ("argmax", vec![Arg::StepRef(1), Arg::StepRef(2)]),
        ])
        .unwrap();
        assert_eq!(v, Value::Text("B".into()));
    }

    #[test]
    fn median_even_and_odd() {
        let v = run(vec![
            ("retrieve_column", vec![Arg::col("Y")]),
            ("median", vec![Arg::StepRef(1)]),
        ])
        .unwrap();
        assert_eq!(v, Value::Number(6.5)); // sorted 1,4,9,9
    }

    #[test]
    fn filters_and_count() {
        let v = run(vec![
            ("retrieve_column", vec![Arg::col("Y")]),
            ("filter_greater", vec![Arg::StepRef(1), Arg::Number(3.0)]),
            ("count", vec![Arg::StepRef(2)]),
        ])
        .unwrap();
        assert_eq!(v, Value::Number(3.0));
    }

    #[test]
    fn lookup_miss_on_unknown_column() {
        let err = run(vec![("retrieve_column", vec![Arg::col("Nope")])]).unwrap_err();
        assert!(matches!(err, ExecError::LookupMiss { step: 1, .. }));
    }

    #[test]
    fn empty_aggregate_is_lookup_miss() {
        let err = run(vec![
            ("retrieve_column", vec![Arg::col("Y")]),
            ("filter_greater", vec![Arg::StepRef(1), Arg::Number(100.0)]),
            ("max", vec![Arg::StepRef(2)]),
        ])
        .unwrap_err();
        assert!(matches!(err, ExecError::LookupMiss { step: 3, .. }));
    }

    #[test]
    fn correlation_zero_variance_is_undefined() {
        let t = DataTable::from_numbers(
            "t",
            "x",
            "y",
            vec!["A".into(), "B".into()],
            vec!["P".into(), "Q".into()],
            vec![vec![1.0, 5.0], vec![1.0, 7.0]],
        )
        .unwrap();
        let p = CotProgram::from_calls(vec![
            ("retrieve_column", vec![Arg::col("P")]),
            ("retrieve_column", vec![Arg::col("Q")]),
            ("correlation", vec![Arg::StepRef(1), Arg::StepRef(2)]),
        ]);
        assert_eq!(execute(&p, &t), Err(ExecError::UndefinedCorrelation { step: 3 }));
    }

    #[test]
    fn stddev_population_denominator() {
        // values 4, 9, 1, 9: mean 5.75, population variance 46.75 / 4
        let v = run(vec![
            ("retrieve_column", vec![Arg::col("Y")]),
            ("stddev", vec![Arg::StepRef(1)]),
        ])
        .unwrap();
        match v {
            Value::Number(s) => assert!((s - 11.6875f64.sqrt()).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn element_at_bounds() {
        let ok = run(vec![
            ("retrieve_labels", vec![Arg::Text("rows".into())]),
            ("element_at", vec![Arg::StepRef(1), Arg::Number(2.0)]),
        ])
        .unwrap();
        assert_eq!(ok, Value::Text("C".into()));
        let err = run(vec![
            ("retrieve_labels", vec![Arg::Text("rows".into())]),
            ("element_at", vec![Arg::StepRef(1), Arg::Number(9.0)]),
        ])
        .unwrap_err();
        assert!(matches!(err, ExecError::LookupMiss { step: 2, .. }));
    }
}
