use super::Element;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::spectral::eigenvalues;

/// Default relative tolerance for approximate equality.
pub const DEFAULT_TOL_REL: f64 = 1e-9;

/// `inf{r > 0 : −r1 ≤ a ≤ r1}`, i.e. the largest eigenvalue modulus.
pub fn order_unit_norm<T: Scalar>(a: &Element<T>) -> Result<T> {
    let vals = eigenvalues(a)?;
    Ok(vals[0].abs().max(vals[vals.len() - 1].abs()))
}

pub fn is_positive<T: Scalar>(a: &Element<T>, tol: T) -> Result<bool> {
    let vals = eigenvalues(a)?;
    Ok(vals[vals.len() - 1] >= -tol)
}

/// Spectrum contained in `[−tol, 1 + tol]`.
pub fn is_effect<T: Scalar>(a: &Element<T>, tol: T) -> Result<bool> {
    let vals = eigenvalues(a)?;
    Ok(vals[vals.len() - 1] >= -tol && vals[0] <= T::one() + tol)
}

/// Smallest eigenvalue of `b − a`; non-negative exactly when `a ≤ b`.
pub fn order_gap<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Result<T> {
    a.check_same(b)?;
    let vals = eigenvalues(&(b - a))?;
    Ok(vals[vals.len() - 1])
}

/// `a ≤ b` up to `tol`; ties at the boundary count as `≤`.
pub fn leq<T: Scalar>(a: &Element<T>, b: &Element<T>, tol: T) -> Result<bool> {
    Ok(order_gap(a, b)? >= -tol)
}

/// `‖lhs − rhs‖ / max(1, ‖lhs‖, ‖rhs‖)` in the order-unit norm.
pub fn rel_residual<T: Scalar>(lhs: &Element<T>, rhs: &Element<T>) -> Result<T> {
    lhs.check_same(rhs)?;
    let scale = T::one().max(order_unit_norm(lhs)?).max(order_unit_norm(rhs)?);
    Ok(order_unit_norm(&(lhs - rhs))? / scale)
}
