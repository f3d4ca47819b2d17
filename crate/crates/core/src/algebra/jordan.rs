//! Jordan product, quadratic representation and the trace form.

use super::{AlgebraDescriptor, Element, ElementData, LinearMap};
use crate::error::Result;
use crate::scalar::Scalar;

/// `a * b`: `½(ab + ba)` on matrix kinds, `(sv + tw, ⟨v,w⟩ + ts)` on spin
/// factors, blockwise on direct sums.
pub fn jordan_product<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
    a.check_same(b)?;
    Ok(jordan(a, b))
}

pub(crate) fn jordan<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Element<T> {
    match (a.data(), b.data()) {
        (ElementData::Matrix(x), ElementData::Matrix(y)) => {
            let sym = &(x * y) + &(y * x);
            Element::from_matrix(a.algebra().clone(), sym.scale(T::half())).expect("same matrix kind")
        }
        (ElementData::Spin { v, t }, ElementData::Spin { v: w, t: s }) => {
            let dot: T = v.iter().zip(w).map(|(&x, &y)| x * y).sum();
            Element::spin(v.iter().zip(w).map(|(&x, &y)| *s * x + *t * y).collect(), dot + *t * *s)
        }
        (ElementData::Sum(xs), ElementData::Sum(ys)) => {
            Element::direct_sum(xs.iter().zip(ys).map(|(x, y)| jordan(x, y)).collect())
        }
        _ => unreachable!("operands checked to share an algebra"),
    }
}

/// `Q_a(b) = 2a*(a*b) − a²*b`.
pub fn quadratic_rep<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
    a.check_same(b)?;
    Ok(quadratic(a, b))
}

pub(crate) fn quadratic<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Element<T> {
    let ab = jordan(a, b);
    let a2 = jordan(a, a);
    jordan(a, &ab).scale(T::two()).add_scaled(-T::one(), &jordan(&a2, b))
}

/// `⟨a, b⟩ = tr(ab)`; half the complex trace for the quaternionic embedding,
/// `2(⟨v,w⟩ + ts)` on spin factors.
pub fn trace_inner_product<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Result<T> {
    a.check_same(b)?;
    Ok(inner(a, b))
}

pub(crate) fn inner<T: Scalar>(a: &Element<T>, b: &Element<T>) -> T {
    match (a.algebra(), a.data(), b.data()) {
        (alg, ElementData::Matrix(x), ElementData::Matrix(y)) => {
            let n = x.rows();
            let mut acc = T::zero();
            for i in 0..n {
                for k in 0..n {
                    acc = acc + (x[(i, k)] * y[(k, i)]).re;
                }
            }
            match alg {
                AlgebraDescriptor::QuaternionicHermitian { .. } => acc * T::half(),
                _ => acc,
            }
        }
        (_, ElementData::Spin { v, t }, ElementData::Spin { v: w, t: s }) => {
            let dot: T = v.iter().zip(w).map(|(&x, &y)| x * y).sum();
            T::two() * (dot + *t * *s)
        }
        (_, ElementData::Sum(xs), ElementData::Sum(ys)) => xs.iter().zip(ys).map(|(x, y)| inner(x, y)).sum(),
        _ => unreachable!("operands checked to share an algebra"),
    }
}

/// `T_a : b ↦ a*b`.
pub fn jordan_mult_operator<T: Scalar>(a: &Element<T>) -> Result<LinearMap<T>> {
    LinearMap::from_fn(a.algebra(), "T_a", |b| Ok(jordan(a, b)))
}

/// `Q_a : b ↦ Q_a(b)`.
pub fn quadratic_operator<T: Scalar>(a: &Element<T>) -> Result<LinearMap<T>> {
    LinearMap::from_fn(a.algebra(), "Q_a", |b| Ok(quadratic(a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use num_complex::Complex;

    fn real(rows: &[&[f64]]) -> Element<f64> {
        Element::real_symmetric(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn max_abs_diff(a: &Element<f64>, b: &Element<f64>) -> f64 {
        a.coords().iter().zip(b.coords()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn commuting_diagonals_multiply_pointwise() {
        let a = Element::real_diag(&[0.5, 0.25]);
        let b = Element::real_diag(&[0.4, 0.8]);
        let p = jordan_product(&a, &b).unwrap();
        assert!(max_abs_diff(&p, &Element::real_diag(&[0.2, 0.2])) < 1e-15);
    }

    #[test]
    fn projection_times_flip() {
        let a = Element::real_diag(&[1.0, 0.0]);
        let b = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let p = jordan_product(&a, &b).unwrap();
        assert!(max_abs_diff(&p, &real(&[&[0.0, 0.5], &[0.5, 0.0]])) < 1e-15);
    }

    #[test]
    fn quadratic_rep_by_projection() {
        let p = Element::real_diag(&[1.0, 0.0]);
        let b = real(&[&[1.0, 2.0], &[2.0, 3.0]]);
        let q = quadratic_rep(&p, &b).unwrap();
        assert!(max_abs_diff(&q, &Element::real_diag(&[1.0, 0.0])) < 1e-15);
    }

    #[test]
    fn trace_of_identity() {
        let one = Element::<f64>::identity(&AlgebraDescriptor::complex(3));
        assert_eq!(trace_inner_product(&one, &one).unwrap(), 3.0);
        let qone = Element::<f64>::identity(&AlgebraDescriptor::quaternionic(3));
        assert_eq!(trace_inner_product(&qone, &qone).unwrap(), 3.0);
        let sone = Element::<f64>::identity(&AlgebraDescriptor::spin(4));
        assert_eq!(trace_inner_product(&sone, &sone).unwrap(), 2.0);
    }

    #[test]
    fn orthogonal_projections_have_zero_inner_product() {
        let p = Element::real_diag(&[1.0, 0.0]);
        let q = Element::real_diag(&[0.0, 1.0]);
        assert_eq!(trace_inner_product(&p, &q).unwrap(), 0.0);
    }

    #[test]
    fn spin_identity_is_unit() {
        let a = Element::spin(vec![0.1, -0.2, 0.3], 0.4);
        let one = Element::identity(a.algebra());
        assert_eq!(jordan_product(&one, &a).unwrap(), a);
    }

    #[test]
    fn mismatch_is_reported() {
        let a = Element::<f64>::identity(&AlgebraDescriptor::real(2));
        let b = Element::<f64>::identity(&AlgebraDescriptor::real(3));
        assert!(jordan_product(&a, &b).is_err());
        assert!(quadratic_rep(&a, &b).is_err());
        assert!(trace_inner_product(&a, &b).is_err());
    }

    #[test]
    fn quadratic_operator_of_zero_vanishes() {
        let zero = Element::<f64>::zero(&AlgebraDescriptor::complex(2));
        assert_eq!(quadratic_operator(&zero).unwrap().op_norm().unwrap(), 0.0);
        let one = Element::<f64>::identity(&AlgebraDescriptor::complex(2));
        let t1 = jordan_mult_operator(&one).unwrap();
        assert!(t1.distance(&LinearMap::identity(one.algebra())).unwrap() < 1e-15);
    }

    #[test]
    fn quaternionic_products_stay_quaternionic() {
        let alg = AlgebraDescriptor::quaternionic(2);
        let a = Element::from_coords(&alg, &[0.3, -0.1, 0.2, 0.5, 0.7, -0.4]).unwrap();
        let b = Element::from_coords(&alg, &[0.9, 0.2, -0.6, 0.1, 0.05, 0.3]).unwrap();
        let raw = ComplexMatrix::from_fn(4, 4, |i, j| {
            let x = a.matrix().unwrap();
            let y = b.matrix().unwrap();
            (0..4).fold(Complex::new(0.0, 0.0), |acc, k| acc + x[(i, k)] * y[(k, j)] + y[(i, k)] * x[(k, j)]) * 0.5
        });
        let p = jordan_product(&a, &b).unwrap();
        assert!((&raw - p.matrix().unwrap()).max_abs() < 1e-15);
        let q = quadratic_rep(&a, &b).unwrap();
        let aba = &(a.matrix().unwrap() * b.matrix().unwrap()) * a.matrix().unwrap();
        assert!((&aba - q.matrix().unwrap()).max_abs() < 1e-14);
        let defect = (&aba - &crate::algebra::element::quaternionic_conjugate(&aba)).max_abs();
        assert!(defect < 1e-14, "{defect}");
    }
}
