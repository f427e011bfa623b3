//! JSON helpers shared by report types.

use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

/// Big integers as plain JSON numbers, without precision loss.
pub fn biguint_value(v: &BigUint) -> serde_json::Value {
    serde_json::Value::Number(serde_json::Number::from_str(&v.to_string()).expect("decimal digits"))
}

pub fn serialize_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    biguint_value(v).serialize(s)
}
