//! Serde adapters writing `BigInt` as a plain JSON number (exact, via
//! `serde_json`'s arbitrary-precision numbers) instead of num-bigint's
//! `(sign, digits)` tuple.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub(crate) struct Num<'a>(pub &'a BigInt);

impl Serialize for Num<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if let Some(x) = self.0.to_i64() {
            return s.serialize_i64(x);
        }
        let n: serde_json::Number = self.0.to_string().parse().map_err(S::Error::custom)?;
        n.serialize(s)
    }
}

pub(crate) struct OwnedNum(pub BigInt);

impl<'de> Deserialize<'de> for OwnedNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s,
            other => return Err(D::Error::custom(format!("expected an integer, found {other}"))),
        };
        text.parse::<BigInt>()
            .map(OwnedNum)
            .map_err(|_| D::Error::custom(format!("expected an integer, found {text}")))
    }
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        Num(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Ok(OwnedNum::deserialize(d)?.0)
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(Num))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<OwnedNum>::deserialize(d)?.into_iter().map(|n| n.0).collect())
    }
}

pub mod vec_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| Row(r)))
    }

    struct Row<'a>(&'a [BigInt]);

    impl Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(self.0.iter().map(Num))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Ok(Vec::<Vec<OwnedNum>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(|n| n.0).collect())
            .collect())
    }
}

/// Sparse coefficients as a list of `[coeff, index]` pairs in index order.
pub mod terms {
    use super::*;

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, BigInt>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|(&g, c)| (Num(c), g)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, BigInt>, D::Error> {
        let pairs = Vec::<(OwnedNum, usize)>::deserialize(d)?;
        let mut out = BTreeMap::new();
        for (c, g) in pairs {
            if out.insert(g, c.0).is_some() {
                return Err(D::Error::custom(format!("index {g} appears twice")));
            }
        }
        out.retain(|_, c: &mut BigInt| *c != BigInt::from(0));
        Ok(out)
    }
}
