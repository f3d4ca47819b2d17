use super::{AlgebraDescriptor, Element};
use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, RealMatrix};
use crate::scalar::Scalar;

/// A real-linear operator on an algebra, stored as its matrix in the
/// trace-orthonormal coordinates of [`Element::coords`].
///
/// Because the coordinates are orthonormal, the adjoint with respect to the
/// trace inner product is the matrix transpose and [`LinearMap::op_norm`] is
/// the Hilbert-space operator norm.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<T> {
    algebra: AlgebraDescriptor,
    matrix: RealMatrix<T>,
    label: String,
}

impl<T: Scalar> LinearMap<T> {
    pub fn new(algebra: AlgebraDescriptor, matrix: RealMatrix<T>, label: impl Into<String>) -> Result<Self> {
        let d = algebra.real_dimension();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::Parse(format!(
                "{algebra} operators are {d}×{d}, got {}×{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self {
            algebra,
            matrix,
            label: label.into(),
        })
    }

    pub fn identity(algebra: &AlgebraDescriptor) -> Self {
        Self {
            algebra: algebra.clone(),
            matrix: RealMatrix::identity(algebra.real_dimension()),
            label: "id".into(),
        }
    }

    pub fn zero(algebra: &AlgebraDescriptor) -> Self {
        let d = algebra.real_dimension();
        Self {
            algebra: algebra.clone(),
            matrix: RealMatrix::zeros(d, d),
            label: "0".into(),
        }
    }

    /// Tabulates a linear action by applying it to each basis element.
    pub fn from_fn(
        algebra: &AlgebraDescriptor,
        label: impl Into<String>,
        mut f: impl FnMut(&Element<T>) -> Result<Element<T>>,
    ) -> Result<Self> {
        let d = algebra.real_dimension();
        let mut matrix = RealMatrix::zeros(d, d);
        let mut unit = vec![T::zero(); d];
        for j in 0..d {
            unit[j] = T::one();
            let basis = Element::from_coords(algebra, &unit)?;
            let image = f(&basis)?;
            basis.check_same(&image)?;
            matrix.set_column(j, &image.coords());
            unit[j] = T::zero();
        }
        Ok(Self {
            algebra: algebra.clone(),
            matrix,
            label: label.into(),
        })
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    pub fn matrix(&self) -> &RealMatrix<T> {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn apply(&self, x: &Element<T>) -> Result<Element<T>> {
        if x.algebra() != &self.algebra {
            return Err(Error::mismatch(&self.algebra, x.algebra()));
        }
        Element::from_coords(&self.algebra, &self.matrix.mul_vec(&x.coords()))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            algebra: self.algebra.clone(),
            matrix: &self.matrix * &other.matrix,
            label: format!("{}·{}", self.label, other.label),
        })
    }

    pub fn invert(&self) -> Result<Self> {
        Ok(Self {
            algebra: self.algebra.clone(),
            matrix: self.matrix.inverse()?,
            label: format!("({})⁻¹", self.label),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            algebra: self.algebra.clone(),
            matrix: &self.matrix - &other.matrix,
            label: format!("{} - {}", self.label, other.label),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            algebra: self.algebra.clone(),
            matrix: &self.matrix + &other.matrix,
            label: format!("{} + {}", self.label, other.label),
        })
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            algebra: self.algebra.clone(),
            matrix: self.matrix.scale(s),
            label: self.label.clone(),
        }
    }

    /// Adjoint with respect to the trace inner product.
    pub fn adjoint(&self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            matrix: self.matrix.transpose(),
            label: format!("({})*", self.label),
        }
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Spectral (Hilbert-space) operator norm.
    pub fn op_norm(&self) -> Result<T> {
        let gram = &self.matrix.transpose() * &self.matrix;
        let eig = symmetric_eigen(&gram)?;
        Ok(eig.values.first().copied().unwrap_or_else(T::zero).max(T::zero()).sqrt())
    }

    /// Operator norm of `self − other`.
    pub fn distance(&self, other: &Self) -> Result<T> {
        self.sub(other)?.op_norm()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::mismatch(&self.algebra, &other.algebra))
        }
    }
}
