//! Cyclic Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex;
use num_traits::Zero;

use super::{ComplexMatrix, RealMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a Hermitian matrix, eigenvalues in decreasing order.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    /// Unitary matrix whose columns are the eigenvectors.
    pub vectors: ComplexMatrix<T>,
}

#[derive(Clone, Debug)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    pub vectors: RealMatrix<T>,
}

/// Diagonalizes a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Only the Hermitian part of `a` is used. Fails with a numerical-failure
/// error carrying the residual `max_k |A v_k - λ_k v_k|` when the sweeps do not
/// reach `100 n ε ‖A‖_F`.
pub fn hermitian_eigen<T: Scalar>(a: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    if !a.is_square() {
        return Err(Error::Precondition("eigendecomposition of a non-square matrix".into()));
    }
    let n = a.rows();
    let original = a.hermitian_part();
    let mut m = original.clone();
    let mut v = ComplexMatrix::identity(n);
    let fro = m.frobenius_norm();
    let eps = T::epsilon();
    let threshold = eps * fro / T::lit((n * n).max(1) as f64);

    if fro > T::zero() {
        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m[(p, q)];
                    let r = apq.norm();
                    if r <= threshold {
                        continue;
                    }
                    rotated = true;
                    rotate(&mut m, &mut v, p, q, apq, r);
                }
            }
            if !rotated {
                break;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap_or(std::cmp::Ordering::Equal));
    let values: Vec<T> = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);

    let residual = eigen_residual(&original, &values, &vectors);
    let bound = T::lit(100.0) * T::lit(n.max(1) as f64) * eps * fro.max(T::min_positive_value());
    if !(residual <= bound) {
        return Err(Error::NumericalFailure {
            message: format!("Jacobi iteration did not converge for order {n}"),
            residual: residual.as_f64(),
        });
    }
    Ok(HermitianEigen { values, vectors })
}

/// Real symmetric eigendecomposition, eigenvalues decreasing.
pub fn symmetric_eigen<T: Scalar>(a: &RealMatrix<T>) -> Result<SymmetricEigen<T>> {
    let c = ComplexMatrix::from_fn(a.rows(), a.cols(), |i, j| Complex::new(a[(i, j)], T::zero()));
    let eig = hermitian_eigen(&c)?;
    let n = a.rows();
    // Real input keeps every rotation phase real, so the eigenvectors are real.
    let vectors = RealMatrix::from_fn(n, n, |i, j| eig.vectors[(i, j)].re);
    Ok(SymmetricEigen {
        values: eig.values,
        vectors,
    })
}

fn rotate<T: Scalar>(
    m: &mut ComplexMatrix<T>,
    v: &mut ComplexMatrix<T>,
    p: usize,
    q: usize,
    apq: Complex<T>,
    r: T,
) {
    let n = m.rows();
    let e = apq / r;
    let tau = (m[(q, q)].re - m[(p, p)].re) / (T::two() * r);
    let t = if tau == T::zero() {
        T::one()
    } else {
        tau.signum() / (tau.abs() + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;
    let se = e * s;
    let se_conj = se.conj();

    // M <- M J, V <- V J
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * c - mkq * se_conj;
        m[(k, q)] = mkp * se + mkq * c;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * se_conj;
        v[(k, q)] = vkp * se + vkq * c;
    }
    // M <- J* M
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = mpk * c - mqk * se;
        m[(q, k)] = mpk * se_conj + mqk * c;
    }
    m[(p, q)] = Complex::zero();
    m[(q, p)] = Complex::zero();
    m[(p, p)] = Complex::new(m[(p, p)].re, T::zero());
    m[(q, q)] = Complex::new(m[(q, q)].re, T::zero());
}

fn eigen_residual<T: Scalar>(a: &ComplexMatrix<T>, values: &[T], vectors: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut worst = T::zero();
    for k in 0..n {
        let mut sq = T::zero();
        for i in 0..n {
            let mut acc: Complex<T> = Complex::zero();
            for j in 0..n {
                acc = acc + a[(i, j)] * vectors[(j, k)];
            }
            sq = sq + (acc - vectors[(i, k)] * values[k]).norm_sqr();
        }
        worst = worst.max(sq.sqrt());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| if i == j { c([0.2, 0.9, 0.5][i], 0.0) } else { c(0.0, 0.0) });
        let eig = hermitian_eigen(&a).unwrap();
        assert_eq!(eig.values, vec![0.9, 0.5, 0.2]);
    }

    #[test]
    fn two_by_two_complex() {
        // [[1, i], [-i, 1]] has eigenvalues 2 and 0.
        let a = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => c(0.0, 1.0),
            (1, 0) => c(0.0, -1.0),
            _ => c(1.0, 0.0),
        });
        let eig = hermitian_eigen(&a).unwrap();
        assert!((eig.values[0] - 2.0).abs() < 1e-14);
        assert!(eig.values[1].abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_residual_and_unitarity() {
        let n = 7;
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let g = ComplexMatrix::from_fn(n, n, |_, _| c(next(), next()));
        let a = g.hermitian_part();
        let eig = hermitian_eigen(&a).unwrap();
        let res = eigen_residual(&a, &eig.values, &eig.vectors);
        assert!(res <= 1e-12 * a.frobenius_norm(), "{res}");
        let gram = &eig.vectors.adjoint() * &eig.vectors;
        assert!((&gram - &ComplexMatrix::identity(n)).max_abs() < 1e-13);
        let trace: f64 = eig.values.iter().sum();
        assert!((trace - a.trace().re).abs() < 1e-13);
    }

    #[test]
    fn symmetric_real_vectors() {
        let a = RealMatrix::from_rows(&[vec![2.0, 1.0, 0.0], vec![1.0, 2.0, 1.0], vec![0.0, 1.0, 2.0]]).unwrap();
        let eig = symmetric_eigen(&a).unwrap();
        let expected = [2.0 + 2f64.sqrt(), 2.0, 2.0 - 2f64.sqrt()];
        for (l, e) in eig.values.iter().zip(expected) {
            assert!((l - e).abs() < 1e-13);
        }
        let av = &a * &eig.vectors;
        for k in 0..3 {
            for i in 0..3 {
                assert!((av[(i, k)] - eig.values[k] * eig.vectors[(i, k)]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn works_in_single_precision() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| {
            Complex::new(if i == j { 1.0f32 } else { 0.5 }, 0.0)
        });
        let eig = hermitian_eigen(&a).unwrap();
        assert!((eig.values[0] - 1.5).abs() < 1e-6);
        assert!((eig.values[1] - 0.5).abs() < 1e-6);
    }
}
