//! JSON forms of elements, effects, spectral decompositions and function
//! models.
//!
//! Matrix kinds: `{"algebra": {...}, "data": {"re": [[..]], "im": [[..]]}}`
//! (`im` optional for real symmetric; quaternionic data is the `2n × 2n`
//! complex embedding). Spin factors use the flat form
//! `{"kind": "spin_factor", "d": 4, "v": [..], "t": 0.5}`; the nested form
//! `{"algebra": .., "data": {"v": .., "t": ..}}` is also accepted. Direct sums
//! are `{"algebra": .., "data": {"summands": [element, ..]}}`. On input the
//! algebra may also be given by its shorthand string.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraDescriptor, Effect, Element, ElementData};
use crate::commutant::FunctionModel;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, RealMatrix};
use crate::scalar::Scalar;
use crate::spectral::SpectralDecomposition;

fn num<T: Scalar>(x: T) -> Value {
    // `+ 0.0` folds negative zero so output is independent of sign noise
    json!(x.as_f64() + 0.0)
}

fn rows<T: Scalar>(m: &[Vec<T>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|&x| num(x)).collect())).collect())
}

pub fn element_to_value<T: Scalar>(e: &Element<T>) -> Value {
    match e.data() {
        ElementData::Matrix(m) => {
            let mut data = Map::new();
            data.insert("re".into(), rows(&m.real_part()));
            if !matches!(e.algebra(), AlgebraDescriptor::RealSymmetric { .. }) {
                data.insert("im".into(), rows(&m.imag_part()));
            }
            json!({ "algebra": e.algebra(), "data": data })
        }
        ElementData::Spin { v, t } => json!({
            "kind": "spin_factor",
            "d": v.len(),
            "v": v.iter().map(|&x| num(x)).collect::<Vec<_>>(),
            "t": num(*t),
        }),
        ElementData::Sum(parts) => json!({
            "algebra": e.algebra(),
            "data": { "summands": parts.iter().map(element_to_value).collect::<Vec<_>>() },
        }),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

fn scalar<T: Scalar>(v: &Value) -> Result<T> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .map(T::lit)
        .ok_or_else(|| Error::Parse(format!("expected a finite number, got {v}")))
}

fn vector<T: Scalar>(v: &Value) -> Result<Vec<T>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))?
        .iter()
        .map(scalar)
        .collect()
}

fn matrix<T: Scalar>(v: &Value) -> Result<Vec<Vec<T>>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of rows".into()))?
        .iter()
        .map(vector)
        .collect()
}

/// Object form, or the shorthand string (`"complex:3"`, `"sum(real:2,spin:3)"`).
fn descriptor(v: &Value) -> Result<AlgebraDescriptor> {
    if let Some(s) = v.as_str() {
        return s.parse();
    }
    AlgebraDescriptor::deserialize(v).map_err(|e| Error::Parse(format!("bad algebra descriptor: {e}")))
}

pub fn element_from_value<T: Scalar>(v: &Value) -> Result<Element<T>> {
    if v.get("kind").and_then(Value::as_str) == Some("spin_factor") {
        let d = field(v, "d")?.as_u64().ok_or_else(|| Error::Parse("`d` must be an integer".into()))? as usize;
        return spin_from(AlgebraDescriptor::SpinFactor { d }, v);
    }
    let algebra = descriptor(field(v, "algebra")?)?;
    algebra.validate()?;
    let data = field(v, "data")?;
    match &algebra {
        AlgebraDescriptor::SpinFactor { .. } => spin_from(algebra, data),
        AlgebraDescriptor::DirectSum { summands } => {
            let parts = field(data, "summands")?
                .as_array()
                .ok_or_else(|| Error::Parse("`summands` must be an array".into()))?;
            if parts.len() != summands.len() {
                return Err(Error::Parse(format!(
                    "{algebra} has {} summands, got {}",
                    summands.len(),
                    parts.len()
                )));
            }
            let parts: Vec<Element<T>> = parts.iter().map(element_from_value).collect::<Result<_>>()?;
            for (p, want) in parts.iter().zip(summands) {
                if p.algebra() != want {
                    return Err(Error::mismatch(want, p.algebra()));
                }
            }
            Ok(Element::direct_sum(parts))
        }
        _ => {
            let re = matrix::<T>(field(data, "re")?)?;
            let im = data.get("im").map(matrix::<T>).transpose()?;
            let m = ComplexMatrix::from_parts(&re, im.as_deref())
                .ok_or_else(|| Error::Parse("ragged or mismatched re/im matrices".into()))?;
            Element::from_matrix(algebra, m)
        }
    }
}

fn spin_from<T: Scalar>(algebra: AlgebraDescriptor, v: &Value) -> Result<Element<T>> {
    let AlgebraDescriptor::SpinFactor { d } = algebra else { unreachable!() };
    let vec = vector::<T>(field(v, "v")?)?;
    if vec.len() != d || d == 0 {
        return Err(Error::Parse(format!("spin factor of dimension {d} got a vector of length {}", vec.len())));
    }
    Ok(Element::spin(vec, scalar(field(v, "t")?)?))
}

pub fn element_to_string<T: Scalar>(e: &Element<T>) -> String {
    serde_json::to_string_pretty(&element_to_value(e)).expect("values always serialize")
}

pub fn element_from_str<T: Scalar>(s: &str) -> Result<Element<T>> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    element_from_value(&v)
}

pub fn decomposition_to_value<T: Scalar>(d: &SpectralDecomposition<T>) -> Value {
    json!({
        "algebra": d.algebra(),
        "pairs": d.pairs().iter().map(|(l, p)| json!({
            "eigenvalue": num(*l),
            "idempotent": element_to_value(p),
        })).collect::<Vec<_>>(),
    })
}

pub fn decomposition_from_value<T: Scalar>(v: &Value) -> Result<SpectralDecomposition<T>> {
    let algebra = descriptor(field(v, "algebra")?)?;
    let pairs = field(v, "pairs")?
        .as_array()
        .ok_or_else(|| Error::Parse("`pairs` must be an array".into()))?
        .iter()
        .map(|p| {
            let e: Element<T> = element_from_value(field(p, "idempotent")?)?;
            if e.algebra() != &algebra {
                return Err(Error::mismatch(&algebra, e.algebra()));
            }
            Ok((scalar(field(p, "eigenvalue")?)?, e))
        })
        .collect::<Result<_>>()?;
    Ok(SpectralDecomposition { algebra, pairs })
}

/// `{"algebra", "points", "frame": [element..], "embedding": dim × points}`.
pub fn model_to_value<T: Scalar>(m: &FunctionModel<T>) -> Value {
    json!({
        "algebra": m.algebra(),
        "points": m.points(),
        "frame": m.frame().iter().map(element_to_value).collect::<Vec<_>>(),
        "embedding": rows(&m.embedding().transpose().to_rows()),
    })
}

/// The embedding is recomputed from the frame; the stored matrix is checked
/// for shape only.
pub fn model_from_value<T: Scalar>(v: &Value) -> Result<FunctionModel<T>> {
    let algebra = descriptor(field(v, "algebra")?)?;
    let frame = field(v, "frame")?
        .as_array()
        .ok_or_else(|| Error::Parse("`frame` must be an array".into()))?
        .iter()
        .map(element_from_value)
        .collect::<Result<Vec<_>>>()?;
    let emb = RealMatrix::from_rows(&matrix::<T>(field(v, "embedding")?)?)
        .ok_or_else(|| Error::Parse("ragged embedding".into()))?;
    if emb.cols() != frame.len() || emb.rows() != algebra.real_dimension() {
        return Err(Error::Parse("embedding shape does not match the frame".into()));
    }
    FunctionModel::from_frame(algebra, frame)
}

impl<T: Scalar> Serialize for Element<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        element_to_value(self).serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Element<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        element_from_value(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl<T: Scalar> Serialize for Effect<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.element().serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Effect<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Effect::new(Element::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl<T: Scalar> Serialize for SpectralDecomposition<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        decomposition_to_value(self).serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for SpectralDecomposition<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        decomposition_from_value(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl<T: Scalar> Serialize for FunctionModel<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        model_to_value(self).serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for FunctionModel<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        model_from_value(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}
