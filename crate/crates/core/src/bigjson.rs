//! JSON encoding of arbitrary-precision integers: plain numbers when they
//! fit in 64 bits, decimal strings otherwise. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};
use serde_json::Value;

pub fn to_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(x.to_string()),
    }
}

pub fn from_value(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| format!("{n} is not an integer")),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("\"{s}\" is not an integer")),
        other => Err(format!("expected an integer, found {other}")),
    }
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&to_value(x), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_value(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(to_value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let values = Vec::<Value>::deserialize(d)?;
        values
            .iter()
            .map(|v| from_value(v).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_and_large_values() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(to_value(&BigInt::from(-7)), Value::from(-7));
        assert_eq!(from_value(&to_value(&big)).unwrap(), big);
        assert_eq!(from_value(&Value::from(u64::MAX)).unwrap(), BigInt::from(u64::MAX));
        assert!(from_value(&Value::from(1.5)).is_err());
        assert!(from_value(&Value::Bool(true)).is_err());
    }
}
