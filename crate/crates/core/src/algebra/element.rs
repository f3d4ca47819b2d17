use std::ops::{Add, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use super::AlgebraDescriptor;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Scalar;

/// Kind-specific storage of a self-adjoint element.
#[derive(Clone, Debug, PartialEq)]
pub enum ElementData<T> {
    /// Hermitian matrix; real kinds have zero imaginary part and quaternionic
    /// kinds store the `2n × 2n` complex embedding.
    Matrix(ComplexMatrix<T>),
    Spin { v: Vec<T>, t: T },
    Sum(Vec<Element<T>>),
}

/// A self-adjoint element of a Euclidean Jordan algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<T> {
    algebra: AlgebraDescriptor,
    data: ElementData<T>,
}

impl<T: Scalar> Element<T> {
    /// Builds an element from a square complex matrix, projecting onto the
    /// self-adjoint part of the algebra (Hermitian symmetrization, plus the
    /// real or quaternionic symmetry where applicable).
    pub fn from_matrix(algebra: AlgebraDescriptor, m: ComplexMatrix<T>) -> Result<Self> {
        let order = algebra
            .matrix_order()
            .ok_or_else(|| Error::Capability(format!("{algebra} is not a matrix algebra")))?;
        if m.rows() != order || m.cols() != order {
            return Err(Error::Parse(format!(
                "{algebra} expects a {order}×{order} matrix, got {}×{}",
                m.rows(),
                m.cols()
            )));
        }
        let data = ElementData::Matrix(project(&algebra, &m));
        Ok(Self { algebra, data })
    }

    /// Real symmetric matrix from rows.
    pub fn real_symmetric(rows: &[Vec<T>]) -> Result<Self> {
        let m = ComplexMatrix::from_parts(rows, None)
            .filter(ComplexMatrix::is_square)
            .ok_or_else(|| Error::Parse("expected a square matrix".into()))?;
        Self::from_matrix(AlgebraDescriptor::RealSymmetric { n: m.rows().max(1) }, m)
    }

    /// Diagonal element of a matrix algebra. For quaternionic algebras the
    /// value `d_i` is placed on both copies of the diagonal.
    pub fn diagonal(algebra: AlgebraDescriptor, values: &[T]) -> Result<Self> {
        let (n, repeat) = match algebra {
            AlgebraDescriptor::RealSymmetric { n } | AlgebraDescriptor::ComplexHermitian { n } => (n, 1),
            AlgebraDescriptor::QuaternionicHermitian { n } => (n, 2),
            _ => return Err(Error::Capability(format!("diagonal elements of {algebra}"))),
        };
        if values.len() != n {
            return Err(Error::Parse(format!("{algebra} expects {n} diagonal values")));
        }
        let m = ComplexMatrix::from_fn(n * repeat, n * repeat, |i, j| {
            if i == j {
                Complex::new(values[i % n], T::zero())
            } else {
                Complex::zero()
            }
        });
        Self::from_matrix(algebra, m)
    }

    /// Convenience for a real diagonal `diag(values)` in `RealSymmetric(len)`.
    pub fn real_diag(values: &[T]) -> Self {
        Self::diagonal(AlgebraDescriptor::real(values.len()), values).expect("non-empty diagonal")
    }

    pub fn spin(v: Vec<T>, t: T) -> Self {
        let algebra = AlgebraDescriptor::spin(v.len());
        Self {
            algebra,
            data: ElementData::Spin { v, t },
        }
    }

    pub fn direct_sum(parts: Vec<Element<T>>) -> Self {
        let algebra = AlgebraDescriptor::direct_sum(parts.iter().map(|p| p.algebra.clone()).collect());
        Self {
            algebra,
            data: ElementData::Sum(parts),
        }
    }

    pub fn identity(algebra: &AlgebraDescriptor) -> Self {
        match algebra {
            AlgebraDescriptor::SpinFactor { d } => Self::spin(vec![T::zero(); *d], T::one()),
            AlgebraDescriptor::DirectSum { summands } => {
                Self::direct_sum(summands.iter().map(Self::identity).collect())
            }
            _ => {
                let n = algebra.matrix_order().expect("matrix kind");
                Self {
                    algebra: algebra.clone(),
                    data: ElementData::Matrix(ComplexMatrix::identity(n)),
                }
            }
        }
    }

    pub fn zero(algebra: &AlgebraDescriptor) -> Self {
        Self::identity(algebra).scale(T::zero())
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    pub fn data(&self) -> &ElementData<T> {
        &self.data
    }

    pub fn matrix(&self) -> Option<&ComplexMatrix<T>> {
        match &self.data {
            ElementData::Matrix(m) => Some(m),
            _ => None,
        }
    }

    pub fn spin_parts(&self) -> Option<(&[T], T)> {
        match &self.data {
            ElementData::Spin { v, t } => Some((v, *t)),
            _ => None,
        }
    }

    pub fn summands(&self) -> Option<&[Element<T>]> {
        match &self.data {
            ElementData::Sum(parts) => Some(parts),
            _ => None,
        }
    }

    pub fn check_same(&self, other: &Self) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::mismatch(&self.algebra, &other.algebra))
        }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map_entries(|x| x * s)
    }

    fn map_entries(&self, f: impl Fn(T) -> T + Copy) -> Self {
        let data = match &self.data {
            ElementData::Matrix(m) => ElementData::Matrix(ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| {
                Complex::new(f(m[(i, j)].re), f(m[(i, j)].im))
            })),
            ElementData::Spin { v, t } => ElementData::Spin {
                v: v.iter().map(|&x| f(x)).collect(),
                t: f(*t),
            },
            ElementData::Sum(parts) => ElementData::Sum(parts.iter().map(|p| p.map_entries(f)).collect()),
        };
        Self {
            algebra: self.algebra.clone(),
            data,
        }
    }

    fn zip_entries(&self, other: &Self, f: impl Fn(T, T) -> T + Copy) -> Self {
        assert_eq!(self.algebra, other.algebra, "elements of different algebras");
        let data = match (&self.data, &other.data) {
            (ElementData::Matrix(a), ElementData::Matrix(b)) => {
                ElementData::Matrix(ComplexMatrix::from_fn(a.rows(), a.cols(), |i, j| {
                    Complex::new(f(a[(i, j)].re, b[(i, j)].re), f(a[(i, j)].im, b[(i, j)].im))
                }))
            }
            (ElementData::Spin { v, t }, ElementData::Spin { v: w, t: s }) => ElementData::Spin {
                v: v.iter().zip(w).map(|(&x, &y)| f(x, y)).collect(),
                t: f(*t, *s),
            },
            (ElementData::Sum(a), ElementData::Sum(b)) => {
                ElementData::Sum(a.iter().zip(b).map(|(x, y)| x.zip_entries(y, f)).collect())
            }
            _ => unreachable!("equal descriptors imply equal storage"),
        };
        Self {
            algebra: self.algebra.clone(),
            data,
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: T, other: &Self) -> Self {
        self.zip_entries(other, |x, y| x + s * y)
    }

    /// `1 - self`, the orthocomplement of an effect.
    pub fn complement(&self) -> Self {
        &Self::identity(&self.algebra) - self
    }

    /// Coordinates in a basis that is orthonormal for the trace inner product.
    pub fn coords(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.algebra.real_dimension());
        self.push_coords(&mut out);
        out
    }

    fn push_coords(&self, out: &mut Vec<T>) {
        let r2 = T::SQRT_2();
        match (&self.algebra, &self.data) {
            (AlgebraDescriptor::RealSymmetric { n }, ElementData::Matrix(m)) => {
                out.extend((0..*n).map(|i| m[(i, i)].re));
                for i in 0..*n {
                    for j in (i + 1)..*n {
                        out.push(r2 * m[(i, j)].re);
                    }
                }
            }
            (AlgebraDescriptor::ComplexHermitian { n }, ElementData::Matrix(m)) => {
                out.extend((0..*n).map(|i| m[(i, i)].re));
                for i in 0..*n {
                    for j in (i + 1)..*n {
                        out.push(r2 * m[(i, j)].re);
                        out.push(r2 * m[(i, j)].im);
                    }
                }
            }
            (AlgebraDescriptor::QuaternionicHermitian { n }, ElementData::Matrix(m)) => {
                let n = *n;
                out.extend((0..n).map(|i| m[(i, i)].re));
                for i in 0..n {
                    for j in (i + 1)..n {
                        out.push(r2 * m[(i, j)].re);
                        out.push(r2 * m[(i, j)].im);
                    }
                }
                for i in 0..n {
                    for j in (i + 1)..n {
                        out.push(r2 * m[(i, n + j)].re);
                        out.push(r2 * m[(i, n + j)].im);
                    }
                }
            }
            (AlgebraDescriptor::SpinFactor { .. }, ElementData::Spin { v, t }) => {
                out.extend(v.iter().map(|&x| r2 * x));
                out.push(r2 * *t);
            }
            (AlgebraDescriptor::DirectSum { .. }, ElementData::Sum(parts)) => {
                for p in parts {
                    p.push_coords(out);
                }
            }
            _ => unreachable!("storage matches descriptor"),
        }
    }

    /// Inverse of [`Element::coords`].
    pub fn from_coords(algebra: &AlgebraDescriptor, coords: &[T]) -> Result<Self> {
        if coords.len() != algebra.real_dimension() {
            return Err(Error::Parse(format!(
                "{algebra} has real dimension {}, got {} coordinates",
                algebra.real_dimension(),
                coords.len()
            )));
        }
        Ok(Self::from_coords_unchecked(algebra, coords))
    }

    fn from_coords_unchecked(algebra: &AlgebraDescriptor, c: &[T]) -> Self {
        let s = T::FRAC_1_SQRT_2();
        let re = |x: T| Complex::new(x, T::zero());
        match algebra {
            AlgebraDescriptor::RealSymmetric { n } => {
                let n = *n;
                let mut m = ComplexMatrix::zeros(n, n);
                for i in 0..n {
                    m[(i, i)] = re(c[i]);
                }
                let mut k = n;
                for i in 0..n {
                    for j in (i + 1)..n {
                        m[(i, j)] = re(s * c[k]);
                        m[(j, i)] = re(s * c[k]);
                        k += 1;
                    }
                }
                Self {
                    algebra: algebra.clone(),
                    data: ElementData::Matrix(m),
                }
            }
            AlgebraDescriptor::ComplexHermitian { n } => {
                let n = *n;
                let mut m = ComplexMatrix::zeros(n, n);
                for i in 0..n {
                    m[(i, i)] = re(c[i]);
                }
                let mut k = n;
                for i in 0..n {
                    for j in (i + 1)..n {
                        let z = Complex::new(s * c[k], s * c[k + 1]);
                        m[(i, j)] = z;
                        m[(j, i)] = z.conj();
                        k += 2;
                    }
                }
                Self {
                    algebra: algebra.clone(),
                    data: ElementData::Matrix(m),
                }
            }
            AlgebraDescriptor::QuaternionicHermitian { n } => {
                let n = *n;
                let mut a = ComplexMatrix::zeros(n, n);
                let mut b = ComplexMatrix::zeros(n, n);
                for i in 0..n {
                    a[(i, i)] = re(c[i]);
                }
                let mut k = n;
                for i in 0..n {
                    for j in (i + 1)..n {
                        let z = Complex::new(s * c[k], s * c[k + 1]);
                        a[(i, j)] = z;
                        a[(j, i)] = z.conj();
                        k += 2;
                    }
                }
                for i in 0..n {
                    for j in (i + 1)..n {
                        let z = Complex::new(s * c[k], s * c[k + 1]);
                        b[(i, j)] = z;
                        b[(j, i)] = -z;
                        k += 2;
                    }
                }
                Self {
                    algebra: algebra.clone(),
                    data: ElementData::Matrix(quaternionic_embedding(&a, &b)),
                }
            }
            AlgebraDescriptor::SpinFactor { d } => Self {
                algebra: algebra.clone(),
                data: ElementData::Spin {
                    v: c[..*d].iter().map(|&x| s * x).collect(),
                    t: s * c[*d],
                },
            },
            AlgebraDescriptor::DirectSum { summands } => {
                let mut offset = 0;
                let parts = summands
                    .iter()
                    .map(|sub| {
                        let dim = sub.real_dimension();
                        let part = Self::from_coords_unchecked(sub, &c[offset..offset + dim]);
                        offset += dim;
                        part
                    })
                    .collect();
                Self {
                    algebra: algebra.clone(),
                    data: ElementData::Sum(parts),
                }
            }
        }
    }

    /// Largest deviation from the structural symmetries of the storage
    /// (Hermitian, real, quaternionic). Zero for spin factors.
    pub fn symmetry_defect(&self) -> T {
        match &self.data {
            ElementData::Matrix(m) => (m - &project(&self.algebra, m)).max_abs(),
            ElementData::Spin { .. } => T::zero(),
            ElementData::Sum(parts) => parts.iter().map(Self::symmetry_defect).fold(T::zero(), T::max),
        }
    }
}

/// `[[A, B], [-conj(B), conj(A)]]`.
pub(crate) fn quaternionic_embedding<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let n = a.rows();
    ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)],
        (true, false) => b[(i, j - n)],
        (false, true) => -b[(i - n, j)].conj(),
        (false, false) => a[(i - n, j - n)].conj(),
    })
}

/// `J conj(X) J⁻¹` with `J = [[0, I], [-I, 0]]`.
pub(crate) fn quaternionic_conjugate<T: Scalar>(x: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let n = x.rows() / 2;
    ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => x[(i + n, j + n)].conj(),
        (true, false) => -x[(i + n, j - n)].conj(),
        (false, true) => -x[(i - n, j + n)].conj(),
        (false, false) => x[(i - n, j - n)].conj(),
    })
}

fn project<T: Scalar>(algebra: &AlgebraDescriptor, m: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let h = m.hermitian_part();
    match algebra {
        AlgebraDescriptor::RealSymmetric { .. } => {
            ComplexMatrix::from_fn(h.rows(), h.cols(), |i, j| Complex::new(h[(i, j)].re, T::zero()))
        }
        AlgebraDescriptor::QuaternionicHermitian { .. } => (&h + &quaternionic_conjugate(&h)).scale(T::half()),
        _ => h,
    }
}

impl<T: Scalar> Add for &Element<T> {
    type Output = Element<T>;

    /// # Panics
    /// If the operands belong to different algebras.
    fn add(self, rhs: &Element<T>) -> Element<T> {
        self.zip_entries(rhs, |x, y| x + y)
    }
}

impl<T: Scalar> Sub for &Element<T> {
    type Output = Element<T>;

    /// # Panics
    /// If the operands belong to different algebras.
    fn sub(self, rhs: &Element<T>) -> Element<T> {
        self.zip_entries(rhs, |x, y| x - y)
    }
}

impl<T: Scalar> Neg for &Element<T> {
    type Output = Element<T>;

    fn neg(self) -> Element<T> {
        self.map_entries(|x| -x)
    }
}

impl<T: Scalar> Add for Element<T> {
    type Output = Element<T>;

    fn add(self, rhs: Element<T>) -> Element<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Element<T> {
    type Output = Element<T>;

    fn sub(self, rhs: Element<T>) -> Element<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for Element<T> {
    type Output = Element<T>;

    fn neg(self) -> Element<T> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coords_round_trip_on_every_kind() {
        let algs = [
            AlgebraDescriptor::real(3),
            AlgebraDescriptor::complex(3),
            AlgebraDescriptor::quaternionic(3),
            AlgebraDescriptor::spin(4),
            AlgebraDescriptor::direct_sum(vec![AlgebraDescriptor::complex(2), AlgebraDescriptor::spin(2)]),
        ];
        for alg in algs {
            let d = alg.real_dimension();
            let c: Vec<f64> = (0..d).map(|k| (k as f64 * 0.37).sin()).collect();
            let x = Element::from_coords(&alg, &c).unwrap();
            assert!(x.symmetry_defect() < 1e-15, "{alg}");
            let back = x.coords();
            for (a, b) in c.iter().zip(&back) {
                assert!((a - b).abs() < 1e-14, "{alg}");
            }
        }
    }

    #[test]
    fn from_matrix_symmetrizes() {
        let m = ComplexMatrix::from_fn(2, 2, |i, j| Complex::new((i * 2 + j) as f64, 1.0));
        let x = Element::from_matrix(AlgebraDescriptor::real(2), m).unwrap();
        let mm = x.matrix().unwrap();
        assert_eq!(mm[(0, 1)], Complex::new(1.5, 0.0));
        assert_eq!(mm[(1, 0)], Complex::new(1.5, 0.0));
        assert_eq!(mm[(0, 0)].im, 0.0);
    }

    #[test]
    fn wrong_shapes_are_rejected() {
        let m = ComplexMatrix::<f64>::identity(3);
        assert!(Element::from_matrix(AlgebraDescriptor::complex(2), m.clone()).is_err());
        assert!(matches!(
            Element::from_matrix(AlgebraDescriptor::spin(2), m),
            Err(Error::Capability(_))
        ));
        assert!(Element::<f64>::from_coords(&AlgebraDescriptor::spin(2), &[1.0]).is_err());
    }

    #[test]
    #[should_panic(expected = "different algebras")]
    fn adding_across_algebras_panics() {
        let a = Element::<f64>::identity(&AlgebraDescriptor::real(2));
        let b = Element::<f64>::identity(&AlgebraDescriptor::complex(2));
        let _ = &a + &b;
    }
}
