//! JSON representation for big integers: a plain number when it fits in
//! `i64`, a decimal string otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl From<BigInt> for Int {
    fn from(x: BigInt) -> Self {
        Int(x)
    }
}

impl From<Int> for BigInt {
    fn from(x: Int) -> Self {
        x.0
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match IntRepr::deserialize(deserializer)? {
            IntRepr::Small(v) => Ok(Int(BigInt::from(v))),
            IntRepr::Big(s) => s.parse().map(Int).map_err(serde::de::Error::custom),
        }
    }
}

/// `#[serde(with = "crate::serde_int::vec")]` for `Vec<BigInt>` fields.
pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(v.iter().map(|x| Int(x.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<Int>::deserialize(deserializer)?
            .into_iter()
            .map(|x| x.0)
            .collect())
    }
}

/// Same for `BigInt` fields.
pub mod one {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        Int(v.clone()).serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        Ok(Int::deserialize(deserializer)?.0)
    }
}
