//! JSON wire formats.
//!
//! A matrix is `{"rows": r, "cols": c, "entries": [["p/q", ...], ...]}` with
//! every entry a string holding an integer literal or a reduced fraction.
//! A pair is `{"A": <matrix>, "B": <matrix>}`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational};

fn parse_err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

fn dim_field(obj: &Map<String, Value>, key: &str, path: &str) -> Result<usize> {
    match obj.get(key) {
        Some(Value::Number(n)) => n
            .as_u64()
            .filter(|&v| v > 0)
            .map(|v| v as usize)
            .ok_or_else(|| parse_err(&format!("{path}.{key}"), "expected a positive integer")),
        Some(_) => Err(parse_err(&format!("{path}.{key}"), "expected a positive integer")),
        None => Err(parse_err(path, format!("missing field {key:?}"))),
    }
}

fn entry_from_value(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse().map_err(|e: Error| match e {
            Error::Parse(msg) => parse_err(path, msg),
            other => other,
        }),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_int(n.as_i64().unwrap_or_default())),
        _ => Err(parse_err(path, "expected a rational string such as \"3\" or \"-2/5\"")),
    }
}

/// Parses a matrix object; `path` prefixes every error message.
pub fn matrix_from_value(v: &Value, path: &str) -> Result<Matrix> {
    let obj = v.as_object().ok_or_else(|| parse_err(path, "expected a matrix object"))?;
    let rows = dim_field(obj, "rows", path)?;
    let cols = dim_field(obj, "cols", path)?;
    let entries_path = format!("{path}.entries");
    let list = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err(&entries_path, "expected an array of rows"))?;
    if list.len() != rows {
        return Err(parse_err(&entries_path, format!("expected {rows} rows, found {}", list.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, row) in list.iter().enumerate() {
        let row_path = format!("{entries_path}[{i}]");
        let row = row.as_array().ok_or_else(|| parse_err(&row_path, "expected an array"))?;
        if row.len() != cols {
            return Err(parse_err(&row_path, format!("expected {cols} entries, found {}", row.len())));
        }
        for (j, x) in row.iter().enumerate() {
            entries.push(entry_from_value(x, &format!("{row_path}[{j}]"))?);
        }
    }
    Matrix::new(rows, cols, entries).map_err(|e| parse_err(path, e))
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": rows })
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_to_value(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        matrix_from_value(&v, "$").map_err(D::Error::custom)
    }
}

/// An ordered pair of matrices in the `{"A": .., "B": ..}` format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pair {
    #[serde(rename = "A")]
    pub a: Matrix,
    #[serde(rename = "B")]
    pub b: Matrix,
}

impl Pair {
    pub fn new(a: Matrix, b: Matrix) -> Self {
        Pair { a, b }
    }

    pub fn to_value(&self) -> Value {
        json!({ "A": matrix_to_value(&self.a), "B": matrix_to_value(&self.b) })
    }
}

/// Looks up `key` (falling back to `alt`) in an object and parses it as a matrix.
pub fn matrix_field(obj: &Map<String, Value>, key: &str, alt: &str, path: &str) -> Result<Option<Matrix>> {
    let (k, v) = match (obj.get(key), obj.get(alt)) {
        (Some(v), _) => (key, v),
        (None, Some(v)) => (alt, v),
        (None, None) => return Ok(None),
    };
    matrix_from_value(v, &format!("{path}.{k}")).map(Some)
}

pub fn pair_from_value(v: &Value) -> Result<Pair> {
    let obj = v.as_object().ok_or_else(|| parse_err("$", "expected a pair object with keys \"A\" and \"B\""))?;
    let a = matrix_field(obj, "A", "E", "$")?.ok_or_else(|| parse_err("$", "missing field \"A\""))?;
    let b = matrix_field(obj, "B", "F", "$")?.ok_or_else(|| parse_err("$", "missing field \"B\""))?;
    Ok(Pair { a, b })
}

/// Accepts a list of matrices, a pair object, a `{"generators": [...]}`
/// object, or a single matrix object.
pub fn matrices_from_value(v: &Value) -> Result<Vec<Matrix>> {
    let from_list = |list: &[Value], prefix: &str| -> Result<Vec<Matrix>> {
        list.iter()
            .enumerate()
            .map(|(i, m)| matrix_from_value(m, &format!("{prefix}[{i}]")))
            .collect()
    };
    match v {
        Value::Array(list) => from_list(list, "$"),
        Value::Object(obj) if obj.contains_key("generators") => match &obj["generators"] {
            Value::Array(list) => from_list(list, "$.generators"),
            _ => Err(parse_err("$.generators", "expected an array of matrices")),
        },
        Value::Object(obj) if obj.contains_key("rows") => Ok(vec![matrix_from_value(v, "$")?]),
        Value::Object(_) => {
            let p = pair_from_value(v)?;
            Ok(vec![p.a, p.b])
        }
        _ => Err(parse_err("$", "expected a matrix, a list of matrices or a pair object")),
    }
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = Matrix::new(2, 2, vec![Rational::new(1, 2), Rational::from_int(-3), Rational::zero(), Rational::new(-7, 9)])
            .unwrap();
        let v = matrix_to_value(&m);
        assert_eq!(v.to_string(), r#"{"cols":2,"entries":[["1/2","-3"],["0","-7/9"]],"rows":2}"#);
        assert_eq!(matrix_from_value(&v, "$").unwrap(), m);
    }

    #[test]
    fn errors_name_the_offending_entry() {
        let v = parse_json(r#"{"rows":2,"cols":2,"entries":[["1","0"],["0","2/4"]]}"#).unwrap();
        let err = matrix_from_value(&v, "$.A").unwrap_err().to_string();
        assert!(err.contains("$.A.entries[1][1]"), "{err}");
        let v = parse_json(r#"{"rows":2,"cols":2,"entries":[["1","0"]]}"#).unwrap();
        assert!(matrix_from_value(&v, "$").unwrap_err().to_string().contains("expected 2 rows"));
    }

    #[test]
    fn accepts_all_generator_layouts() {
        let m = r#"{"rows":1,"cols":1,"entries":[["2"]]}"#;
        for text in [
            format!("[{m},{m}]"),
            format!(r#"{{"A":{m},"B":{m}}}"#),
            format!(r#"{{"generators":[{m},{m}]}}"#),
        ] {
            assert_eq!(matrices_from_value(&parse_json(&text).unwrap()).unwrap().len(), 2);
        }
        assert_eq!(matrices_from_value(&parse_json(m).unwrap()).unwrap().len(), 1);
    }
}
