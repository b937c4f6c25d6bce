//! JSON helpers for exact numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{Number, Value};

/// A big integer as a JSON number without loss of precision.
pub fn big_number(b: &BigInt) -> Number {
    b.to_string().parse().expect("integers are valid JSON numbers")
}

/// An integral rational as a JSON number, otherwise as a `"p/q"` string.
pub fn rational_value(r: &BigRational) -> Value {
    if r.denom().is_one() {
        Value::Number(big_number(r.numer()))
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn big_values(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|b| Value::Number(big_number(b))).collect())
}
