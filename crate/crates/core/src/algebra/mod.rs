//! Euclidean Jordan algebras: descriptors, elements, the Jordan and
//! quadratic products, linear maps, order structure, random sampling and
//! order isomorphisms.

mod descriptor;
mod effect;
pub(crate) mod element;
mod iso;
mod jordan;
mod map;
mod order;
mod random;

pub use descriptor::AlgebraDescriptor;
pub use effect::{Effect, EFFECT_TOL};
pub use element::{Element, ElementData};
pub use iso::{make_order_iso, random_orthogonal, random_symplectic, random_unitary, IsoKind};
pub use jordan::{jordan_mult_operator, jordan_product, quadratic_operator, quadratic_rep, trace_inner_product};
pub use map::LinearMap;
pub use order::{is_effect, is_positive, leq, order_gap, order_unit_norm, rel_residual, DEFAULT_TOL_REL};
pub use random::{
    random_effect, random_effect_with, random_element, random_positive, random_projection, rng_from_seed,
    EffectProfile, SeededRng,
};

pub(crate) use jordan::{inner, jordan, quadratic};
