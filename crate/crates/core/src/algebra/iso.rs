//! Unital order isomorphisms: unitary (orthogonal, symplectic) conjugations,
//! the transpose, and rotations of spin factors.

use std::fmt;

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{rng_from_seed, AlgebraDescriptor, Element, LinearMap};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, RealMatrix};
use crate::scalar::Scalar;

/// Which order isomorphism to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsoKind {
    /// `x ↦ U x U*` with `U` orthogonal, unitary or symplectic according to
    /// the algebra; applied blockwise on direct sums (spin summands rotate).
    UnitaryConjugation { seed: u64 },
    /// `x ↦ xᵀ`, on complex Hermitian algebras and sums of them.
    Transpose,
    /// `(v, t) ↦ (Rv, t)` with `R` orthogonal.
    SpinRotation { seed: u64 },
}

impl fmt::Display for IsoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoKind::UnitaryConjugation { seed } => write!(f, "Ad_u(seed={seed})"),
            IsoKind::Transpose => f.write_str("transpose"),
            IsoKind::SpinRotation { seed } => write!(f, "rot(seed={seed})"),
        }
    }
}

pub fn make_order_iso<T: Scalar>(algebra: &AlgebraDescriptor, kind: IsoKind) -> Result<LinearMap<T>> {
    let action = build_action::<T>(algebra, kind)?;
    LinearMap::from_fn(algebra, kind.to_string(), |x| action(x))
}

type Action<T> = Box<dyn Fn(&Element<T>) -> Result<Element<T>>>;

fn build_action<T: Scalar>(algebra: &AlgebraDescriptor, kind: IsoKind) -> Result<Action<T>> {
    match (algebra, kind) {
        (AlgebraDescriptor::DirectSum { summands }, _) => {
            let parts = summands
                .iter()
                .enumerate()
                .map(|(k, sub)| {
                    let sub_kind = match (sub, kind) {
                        (AlgebraDescriptor::SpinFactor { .. }, IsoKind::UnitaryConjugation { seed }) => {
                            IsoKind::SpinRotation { seed: derive(seed, k) }
                        }
                        (_, IsoKind::UnitaryConjugation { seed }) => IsoKind::UnitaryConjugation { seed: derive(seed, k) },
                        (_, IsoKind::SpinRotation { seed }) => IsoKind::SpinRotation { seed: derive(seed, k) },
                        (_, IsoKind::Transpose) => IsoKind::Transpose,
                    };
                    build_action::<T>(sub, sub_kind)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Box::new(move |x: &Element<T>| {
                let blocks = x.summands().expect("direct sum element");
                Ok(Element::direct_sum(
                    blocks.iter().zip(&parts).map(|(b, f)| f(b)).collect::<Result<_>>()?,
                ))
            }))
        }
        (AlgebraDescriptor::ComplexHermitian { .. }, IsoKind::Transpose) => Ok(Box::new(|x: &Element<T>| {
            Element::from_matrix(x.algebra().clone(), x.matrix().expect("matrix kind").transpose())
        })),
        (AlgebraDescriptor::SpinFactor { d }, IsoKind::SpinRotation { seed }) => {
            let r: RealMatrix<T> = random_orthogonal(*d, &mut rng_from_seed(seed));
            Ok(Box::new(move |x: &Element<T>| {
                let (v, t) = x.spin_parts().expect("spin element");
                Ok(Element::spin(r.mul_vec(v), t))
            }))
        }
        (alg, IsoKind::UnitaryConjugation { seed }) if alg.is_matrix_kind() => {
            let mut rng = rng_from_seed(seed);
            let u: ComplexMatrix<T> = match alg {
                AlgebraDescriptor::RealSymmetric { n } => {
                    let o = random_orthogonal(*n, &mut rng);
                    ComplexMatrix::from_fn(*n, *n, |i, j| Complex::new(o[(i, j)], T::zero()))
                }
                AlgebraDescriptor::ComplexHermitian { n } => random_unitary(*n, &mut rng),
                AlgebraDescriptor::QuaternionicHermitian { n } => random_symplectic(*n, &mut rng),
                _ => unreachable!(),
            };
            let u_adj = u.adjoint();
            Ok(Box::new(move |x: &Element<T>| {
                let m = x.matrix().expect("matrix kind");
                Element::from_matrix(x.algebra().clone(), &(&u * m) * &u_adj)
            }))
        }
        (alg, kind) => Err(Error::Capability(format!("order isomorphism `{kind}` on {alg}"))),
    }
}

fn derive(seed: u64, k: usize) -> u64 {
    seed ^ (0x9E37_79B9_7F4A_7C15u64.wrapping_mul(k as u64 + 1))
}

fn gaussian<T: Scalar>(rng: &mut impl Rng) -> T {
    T::lit(rng.sample::<f64, _>(rand_distr::StandardNormal))
}

fn complex_gaussian<T: Scalar>(rng: &mut impl Rng) -> Complex<T> {
    Complex::new(gaussian(rng), gaussian(rng))
}

/// Orthogonal matrix from Gram–Schmidt on a Gaussian sample.
pub fn random_orthogonal<T: Scalar>(n: usize, rng: &mut impl Rng) -> RealMatrix<T> {
    let u = gram_schmidt(n, |_| (0..n).map(|_| Complex::new(gaussian(rng), T::zero())).collect(), None);
    RealMatrix::from_fn(n, n, |i, j| u[(i, j)].re)
}

/// Unitary matrix from Gram–Schmidt on a complex Gaussian sample.
pub fn random_unitary<T: Scalar>(n: usize, rng: &mut impl Rng) -> ComplexMatrix<T> {
    gram_schmidt(n, |_| (0..n).map(|_| complex_gaussian(rng)).collect(), None)
}

/// Unitary `2n × 2n` matrix of the form `[[P, Q], [−conj Q, conj P]]`, i.e.
/// a quaternionic unitary in the complex embedding.
///
/// Columns are produced in pairs `(c, Jc̄)`: each Gaussian vector is
/// orthogonalized against all earlier pairs, and its partner is orthogonal to
/// it automatically.
pub fn random_symplectic<T: Scalar>(n: usize, rng: &mut impl Rng) -> ComplexMatrix<T> {
    gram_schmidt(2 * n, |_| (0..2 * n).map(|_| complex_gaussian(rng)).collect(), Some(n))
}

fn gram_schmidt<T: Scalar>(
    size: usize,
    mut sample: impl FnMut(usize) -> Vec<Complex<T>>,
    symplectic_half: Option<usize>,
) -> ComplexMatrix<T> {
    let mut basis: Vec<Vec<Complex<T>>> = Vec::with_capacity(size);
    let mut out = ComplexMatrix::zeros(size, size);
    let steps = symplectic_half.unwrap_or(size);
    let mut k = 0;
    while k < steps {
        let mut v = sample(k);
        for _ in 0..2 {
            for b in &basis {
                let proj = b.iter().zip(&v).fold(Complex::zero(), |acc, (x, y)| acc + x.conj() * y);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = *vi - *bi * proj;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm <= T::lit(1e-8) {
            continue;
        }
        for z in &mut v {
            *z = *z / norm;
        }
        match symplectic_half {
            Some(n) => {
                let partner: Vec<Complex<T>> = (0..2 * n)
                    .map(|i| if i < n { -v[i + n].conj() } else { v[i - n].conj() })
                    .collect();
                out.set_column(k, &v);
                out.set_column(k + n, &partner);
                basis.push(v);
                basis.push(partner);
            }
            None => {
                out.set_column(k, &v);
                basis.push(v);
            }
        }
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_positive, random_positive, trace_inner_product};

    #[test]
    fn symplectic_structure() {
        let u: ComplexMatrix<f64> = random_symplectic(3, &mut rng_from_seed(5));
        let gram = &u.adjoint() * &u;
        assert!((&gram - &ComplexMatrix::identity(6)).max_abs() < 1e-13);
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                assert!((u[(i + n, j + n)] - u[(i, j)].conj()).norm() < 1e-14);
                assert!((u[(i + n, j)] + u[(i, j + n)].conj()).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn transpose_fixes_real_diagonals() {
        let alg = AlgebraDescriptor::complex(3);
        let t = make_order_iso::<f64>(&alg, IsoKind::Transpose).unwrap();
        let d = Element::diagonal(alg.clone(), &[0.1, 0.5, 0.9]).unwrap();
        assert_eq!(t.apply(&d).unwrap(), d);
    }

    #[test]
    fn isos_are_unital_positive_and_invertible() {
        let cases = [
            (AlgebraDescriptor::real(3), IsoKind::UnitaryConjugation { seed: 1 }),
            (AlgebraDescriptor::complex(3), IsoKind::UnitaryConjugation { seed: 2 }),
            (AlgebraDescriptor::complex(3), IsoKind::Transpose),
            (AlgebraDescriptor::quaternionic(2), IsoKind::UnitaryConjugation { seed: 3 }),
            (AlgebraDescriptor::spin(4), IsoKind::SpinRotation { seed: 4 }),
            (
                AlgebraDescriptor::direct_sum(vec![AlgebraDescriptor::complex(2), AlgebraDescriptor::spin(2)]),
                IsoKind::UnitaryConjugation { seed: 5 },
            ),
        ];
        let mut rng = rng_from_seed(11);
        for (alg, kind) in cases {
            let phi = make_order_iso::<f64>(&alg, kind).unwrap();
            let inv = phi.invert().unwrap();
            let one = Element::identity(&alg);
            let diff = &phi.apply(&one).unwrap() - &one;
            assert!(diff.coords().iter().all(|x| x.abs() < 1e-12), "{alg} {kind}");
            for _ in 0..50 {
                let x = random_positive::<f64>(&alg, &mut rng);
                assert!(is_positive(&phi.apply(&x).unwrap(), 1e-9).unwrap());
                assert!(is_positive(&inv.apply(&x).unwrap(), 1e-9).unwrap());
                let y = random_positive::<f64>(&alg, &mut rng);
                let before = trace_inner_product(&x, &y).unwrap();
                let after = trace_inner_product(&phi.apply(&x).unwrap(), &phi.apply(&y).unwrap()).unwrap();
                assert!((before - after).abs() <= 1e-10 * before.abs().max(1.0));
            }
        }
    }

    #[test]
    fn unsupported_pairings() {
        assert!(matches!(
            make_order_iso::<f64>(&AlgebraDescriptor::real(2), IsoKind::Transpose),
            Err(Error::Capability(_))
        ));
        assert!(make_order_iso::<f64>(&AlgebraDescriptor::complex(2), IsoKind::SpinRotation { seed: 0 }).is_err());
        assert!(make_order_iso::<f64>(&AlgebraDescriptor::spin(2), IsoKind::Transpose).is_err());
    }
}
