use std::ops::Deref;

use super::{is_effect, Element};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Spectrum tolerance used when validating effects.
pub const EFFECT_TOL: f64 = 1e-9;

/// An element with spectrum in `[0, 1]` (up to [`EFFECT_TOL`]).
#[derive(Clone, Debug, PartialEq)]
pub struct Effect<T>(Element<T>);

impl<T: Scalar> Effect<T> {
    pub fn new(element: Element<T>) -> Result<Self> {
        if is_effect(&element, T::lit(EFFECT_TOL))? {
            Ok(Self(element))
        } else {
            Err(Error::Precondition(format!("element of {} is not an effect", element.algebra())))
        }
    }

    /// Wraps without checking the spectrum; callers guarantee `0 ≤ a ≤ 1`.
    pub(crate) fn new_unchecked(element: Element<T>) -> Self {
        Self(element)
    }

    pub fn element(&self) -> &Element<T> {
        &self.0
    }

    pub fn into_element(self) -> Element<T> {
        self.0
    }

    /// `a⊥ = 1 − a`.
    pub fn complement(&self) -> Self {
        Self(self.0.complement())
    }
}

impl<T> Deref for Effect<T> {
    type Target = Element<T>;

    fn deref(&self) -> &Element<T> {
        &self.0
    }
}

impl<T: Scalar> TryFrom<Element<T>> for Effect<T> {
    type Error = Error;

    fn try_from(element: Element<T>) -> Result<Self> {
        Self::new(element)
    }
}
