//! Serde helpers writing big integers as decimal strings.

use num_bigint::BigInt;
use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    String::deserialize(d)?.parse().map_err(D::Error::custom)
}

pub mod vec {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|x| x.parse().map_err(D::Error::custom))
            .collect()
    }
}

/// `(q, count)` sample lists.
pub mod samples {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(v: &[(u32, BigInt)], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|(q, x)| (*q, x.to_string())).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(u32, BigInt)>, D::Error> {
        Vec::<(u32, String)>::deserialize(d)?
            .into_iter()
            .map(|(q, x)| Ok((q, x.parse().map_err(D::Error::custom)?)))
            .collect()
    }
}
