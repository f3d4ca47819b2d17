use super::RealMatrix;
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 60;

/// Orthonormal basis of the null space of `m`, by one-sided (Hestenes) Jacobi.
///
/// Columns of `m` are orthogonalized by plane rotations accumulated into an
/// orthogonal `V`; the columns of `V` whose image has norm at most
/// `rel_tol * max(1, σ_max)` span the numerical null space.
pub fn null_space<T: Scalar>(m: &RealMatrix<T>, rel_tol: T) -> Vec<Vec<T>> {
    let rows = m.rows();
    let cols = m.cols();
    let mut u = m.clone();
    let mut v = RealMatrix::identity(cols);
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for j in 0..cols {
            for k in (j + 1)..cols {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = T::zero();
                for i in 0..rows {
                    let x = u[(i, j)];
                    let y = u[(i, k)];
                    alpha = alpha + x * x;
                    beta = beta + y * y;
                    gamma = gamma + x * y;
                }
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::two() * gamma);
                let t = if zeta == T::zero() {
                    T::one()
                } else {
                    zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let x = u[(i, j)];
                    let y = u[(i, k)];
                    u[(i, j)] = c * x - s * y;
                    u[(i, k)] = s * x + c * y;
                }
                for i in 0..cols {
                    let x = v[(i, j)];
                    let y = v[(i, k)];
                    v[(i, j)] = c * x - s * y;
                    v[(i, k)] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma: Vec<T> = (0..cols)
        .map(|j| (0..rows).map(|i| u[(i, j)] * u[(i, j)]).sum::<T>().sqrt())
        .collect();
    let sigma_max = sigma.iter().copied().fold(T::zero(), T::max);
    let cutoff = rel_tol * sigma_max.max(T::one());
    (0..cols)
        .filter(|&j| sigma[j] <= cutoff)
        .map(|j| v.column(j))
        .collect()
}
