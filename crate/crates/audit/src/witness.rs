use std::collections::BTreeMap;

use seqprod_core::algebra::IsoKind;
use seqprod_core::{Element, Error, Result};
use serde::{Deserialize, Serialize};

/// The inputs of one trial, sufficient to recompute its residual.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    pub elements: BTreeMap<String, Element<f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub scalars: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iso: Option<IsoKind>,
}

impl Inputs {
    pub(crate) fn with(mut self, name: &str, e: Element<f64>) -> Self {
        self.elements.insert(name.to_owned(), e);
        self
    }

    pub(crate) fn with_scalar(mut self, name: &str, x: f64) -> Self {
        self.scalars.insert(name.to_owned(), x);
        self
    }

    pub fn element(&self, name: &str) -> Result<&Element<f64>> {
        self.elements
            .get(name)
            .ok_or_else(|| Error::Parse(format!("witness has no element `{name}`")))
    }

    pub fn scalar(&self, name: &str) -> Result<f64> {
        self.scalars
            .get(name)
            .copied()
            .ok_or_else(|| Error::Parse(format!("witness has no scalar `{name}`")))
    }
}

/// A recorded trial: its seed, inputs and residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    pub seed: u64,
    pub residual: f64,
    #[serde(flatten)]
    pub inputs: Inputs,
}
