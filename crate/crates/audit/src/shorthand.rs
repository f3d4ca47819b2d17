//! Serde adapter writing an algebra as its shorthand (`complex:3`) and
//! reading either the shorthand or the tagged object form.

use seqprod_core::algebra::AlgebraDescriptor;
use serde::{Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(alg: &AlgebraDescriptor, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(alg)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Either {
    Short(String),
    Full(AlgebraDescriptor),
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<AlgebraDescriptor, D::Error> {
    match Either::deserialize(d)? {
        Either::Short(s) => s.parse().map_err(serde::de::Error::custom),
        Either::Full(a) => Ok(a),
    }
}
