//! Serde adapters that write big counts as decimal strings and read them
//! back from either a string or a JSON number.

use std::str::FromStr;

use num_bigint::BigUint;
use serde::de::{self, Deserializer, Visitor};
use serde::Serializer;

pub fn serialize<S: Serializer>(x: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&x.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigUint, D::Error> {
    struct Dec;
    impl<'de> Visitor<'de> for Dec {
        type Value = BigUint;
        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("a non-negative integer or decimal string")
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigUint, E> {
            Ok(BigUint::from(v))
        }
        fn visit_str<E: de::Error>(self, v: &str) -> Result<BigUint, E> {
            BigUint::from_str(v.trim()).map_err(|e| E::custom(format!("bad integer {v:?}: {e}")))
        }
    }
    de.deserialize_any(Dec)
}

/// Same encoding for plain `u64` fields.
pub mod u64s {
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &u64, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<u64, D::Error> {
        struct Dec;
        impl<'de> Visitor<'de> for Dec {
            type Value = u64;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a non-negative integer or decimal string")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<u64, E> {
                Ok(v)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<u64, E> {
                v.trim().parse().map_err(|e| E::custom(format!("bad integer {v:?}: {e}")))
            }
        }
        de.deserialize_any(Dec)
    }
}

/// Vectors of `u64` as arrays of decimal strings.
pub mod u64_vec {
    use serde::de::Deserializer;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Serializer};

    #[derive(Deserialize)]
    struct Item(#[serde(with = "super::u64s")] u64);

    pub fn serialize<S: Serializer>(xs: &[u64], ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<u64>, D::Error> {
        let items = Vec::<Item>::deserialize(de)?;
        Ok(items.into_iter().map(|i| i.0).collect())
    }
}

/// `Option<BigUint>`, with `null` for `None`. Serialize only.
pub mod option {
    use num_bigint::BigUint;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<BigUint>, ser: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => ser.serialize_str(&x.to_string()),
            None => ser.serialize_none(),
        }
    }
}
