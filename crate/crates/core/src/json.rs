//! Small helpers for exact JSON output.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Number, Value};

/// An arbitrary-precision integer as an exact JSON number.
pub fn bigint(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer is a JSON number"))
}

pub fn bigints<'a>(ns: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(ns.into_iter().map(bigint).collect())
}
