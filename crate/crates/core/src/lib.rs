//! Numerical kernel for sequential products on Euclidean Jordan algebras.
//!
//! The crate models the finite-dimensional Euclidean Jordan algebras (real,
//! complex and quaternionic Hermitian matrices, spin factors and direct sums)
//! and the effects in their unit intervals. On top of the Jordan structure it
//! provides the spectral calculus, the standard sequential product
//! `a∘b = Q_{√a}(b)` together with a family of twisted products, and
//! commutant computations.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix `f64`, which is what the default tolerances assume.

pub mod algebra;
pub mod commutant;
pub mod error;
pub mod json;
pub mod linalg;
pub mod scalar;
pub mod seqprod;
pub mod spectral;

pub use algebra::{AlgebraDescriptor, Effect, Element, LinearMap};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use seqprod::{ProductSpec, SequentialProduct};

pub type Element64 = algebra::Element<f64>;
pub type Effect64 = algebra::Effect<f64>;
pub type LinearMap64 = algebra::LinearMap<f64>;
pub type SpectralDecomposition64 = spectral::SpectralDecomposition<f64>;
pub type SequentialProduct64 = seqprod::SequentialProduct<f64>;
pub type FunctionModel64 = commutant::FunctionModel<f64>;

pub type Element32 = algebra::Element<f32>;
pub type Effect32 = algebra::Effect<f32>;
pub type LinearMap32 = algebra::LinearMap<f32>;
pub type SequentialProduct32 = seqprod::SequentialProduct<f32>;
