//! Integer-exact JSON reading and canonical JSON writing.

use std::str::FromStr;

use semitoric::lattice::{Int, IntVec, Sublattice};
use serde_json::{Map, Number, Value};

use crate::document::LoadError;

/// Appends `token` to a JSON pointer.
pub fn child(pointer: &str, token: &str) -> String {
    format!("{pointer}/{}", token.replace('~', "~0").replace('/', "~1"))
}

pub fn schema(pointer: &str, message: impl Into<String>) -> LoadError {
    LoadError::Schema {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

pub fn object<'a>(v: &'a Value, pointer: &str) -> Result<&'a Map<String, Value>, LoadError> {
    v.as_object().ok_or_else(|| schema(pointer, "expected an object"))
}

pub fn array<'a>(v: &'a Value, pointer: &str) -> Result<&'a Vec<Value>, LoadError> {
    v.as_array().ok_or_else(|| schema(pointer, "expected an array"))
}

/// Rejects keys outside `allowed`.
pub fn known_keys(map: &Map<String, Value>, pointer: &str, allowed: &[&str]) -> Result<(), LoadError> {
    match map.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(schema(&child(pointer, k), "unknown field")),
        None => Ok(()),
    }
}

pub fn required<'a>(map: &'a Map<String, Value>, pointer: &str, key: &str) -> Result<&'a Value, LoadError> {
    map.get(key)
        .ok_or_else(|| schema(&child(pointer, key), "missing field"))
}

/// An integer given as a JSON number or a decimal string.
pub fn int(v: &Value, pointer: &str) -> Result<Int, LoadError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(schema(pointer, "expected an integer")),
    };
    Int::from_str(text.trim()).map_err(|_| schema(pointer, format!("expected an integer, found {text}")))
}

pub fn index(v: &Value, pointer: &str) -> Result<usize, LoadError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| schema(pointer, "expected a nonnegative index"))
}

pub fn vector(v: &Value, d: usize, pointer: &str) -> Result<IntVec, LoadError> {
    let items = array(v, pointer)?;
    if items.len() != d {
        return Err(schema(pointer, format!("expected {d} entries, found {}", items.len())));
    }
    let entries = items
        .iter()
        .enumerate()
        .map(|(i, x)| int(x, &child(pointer, &i.to_string())))
        .collect::<Result<_, _>>()?;
    Ok(IntVec::new(entries))
}

pub fn vectors(v: &Value, d: usize, pointer: &str) -> Result<Vec<IntVec>, LoadError> {
    array(v, pointer)?
        .iter()
        .enumerate()
        .map(|(i, x)| vector(x, d, &child(pointer, &i.to_string())))
        .collect()
}

pub fn int_value(x: &Int) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integers are valid JSON numbers"))
}

pub fn vector_value(v: &IntVec) -> Value {
    Value::Array(v.entries().iter().map(int_value).collect())
}

pub fn vectors_value(vs: &[IntVec]) -> Value {
    Value::Array(vs.iter().map(vector_value).collect())
}

/// A sublattice as its HNF basis rows.
pub fn lattice_value(l: &Sublattice) -> Value {
    vectors_value(&l.basis_vectors())
}

/// Pretty JSON with sorted keys, scalar arrays on one line and a trailing
/// newline.
pub fn canonical(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}
