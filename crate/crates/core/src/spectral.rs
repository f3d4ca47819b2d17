//! Spectral decomposition into sharp effects and the functional calculus
//! built on it: square roots, floor and ceiling, pseudo-inverses and the
//! dyadic approximation by simple effects.

use num_complex::Complex;
use num_traits::Zero;

use crate::algebra::{jordan, AlgebraDescriptor, Element, ElementData};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix};
use crate::scalar::Scalar;

/// Eigenvalues closer than this are merged into one spectral idempotent.
pub const DEFAULT_GAP: f64 = 1e-8;

/// Eigenvalues at most this far from 0 (resp. 1) count as 0 (resp. 1) for
/// floor, ceiling, supports and pseudo-inverses.
pub const SHARP_THRESHOLD: f64 = 1e-9;

/// `a = Σ λ_i p_i` with strictly decreasing `λ_i` and orthogonal idempotents
/// `p_i` summing to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition<T> {
    pub(crate) algebra: AlgebraDescriptor,
    pub(crate) pairs: Vec<(T, Element<T>)>,
}

impl<T: Scalar> SpectralDecomposition<T> {
    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    pub fn pairs(&self) -> &[(T, Element<T>)] {
        &self.pairs
    }

    pub fn into_pairs(self) -> Vec<(T, Element<T>)> {
        self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        self.pairs.iter().map(|(l, _)| *l).collect()
    }

    /// `Σ f(λ_i) p_i`.
    pub fn map(&self, f: impl Fn(T) -> T) -> Element<T> {
        self.pairs
            .iter()
            .fold(Element::zero(&self.algebra), |acc, (l, p)| acc.add_scaled(f(*l), p))
    }

    /// Sum of the idempotents whose eigenvalue satisfies `keep`.
    pub fn projection_where(&self, keep: impl Fn(T) -> bool) -> Element<T> {
        self.map(|l| if keep(l) { T::one() } else { T::zero() })
    }

    pub fn reconstruct(&self) -> Element<T> {
        self.map(|l| l)
    }
}

/// Decomposes `a` into eigenvalues and spectral idempotents, merging
/// eigenvalues that lie within `gap` of their neighbour.
pub fn spectral_decompose<T: Scalar>(a: &Element<T>, gap: T) -> Result<SpectralDecomposition<T>> {
    if !(gap > T::zero()) {
        return Err(Error::Precondition("clustering gap must be positive".into()));
    }
    let pairs = match a.data() {
        ElementData::Matrix(m) => {
            let eig = hermitian_eigen(m)?;
            cluster(&eig.values, gap)
                .into_iter()
                .map(|idx| {
                    let mean = idx.iter().map(|&k| eig.values[k]).sum::<T>() / T::lit(idx.len() as f64);
                    let p = Element::from_matrix(a.algebra().clone(), eig.vectors.column_projector(&idx))?;
                    Ok((mean, p))
                })
                .collect::<Result<Vec<_>>>()?
        }
        ElementData::Spin { v, t } => {
            let r = v.iter().map(|&x| x * x).sum::<T>().sqrt();
            if r <= gap * T::half() {
                vec![(*t, Element::identity(a.algebra()))]
            } else {
                let half = T::half();
                let hat: Vec<T> = v.iter().map(|&x| x / r).collect();
                let plus = Element::spin(hat.iter().map(|&x| x * half).collect(), half);
                let minus = Element::spin(hat.iter().map(|&x| -x * half).collect(), half);
                vec![(*t + r, plus), (*t - r, minus)]
            }
        }
        ElementData::Sum(parts) => {
            let mut all: Vec<(T, usize, Element<T>)> = Vec::new();
            for (k, part) in parts.iter().enumerate() {
                for (l, p) in spectral_decompose(part, gap)?.pairs {
                    all.push((l, k, p));
                }
            }
            all.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal));
            let values: Vec<T> = all.iter().map(|x| x.0).collect();
            cluster(&values, gap)
                .into_iter()
                .map(|idx| {
                    let mean = idx.iter().map(|&k| values[k]).sum::<T>() / T::lit(idx.len() as f64);
                    let mut blocks: Vec<Element<T>> = parts.iter().map(|p| Element::zero(p.algebra())).collect();
                    for &k in &idx {
                        let (_, summand, ref p) = all[k];
                        blocks[summand] = &blocks[summand] + p;
                    }
                    (mean, Element::direct_sum(blocks))
                })
                .collect()
        }
    };
    Ok(SpectralDecomposition {
        algebra: a.algebra().clone(),
        pairs,
    })
}

/// Groups indices of a decreasing sequence into runs whose consecutive gaps
/// are at most `gap`.
fn cluster<T: Scalar>(values: &[T], gap: T) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (k, &v) in values.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if values[*g.last().unwrap()] - v <= gap => g.push(k),
            _ => groups.push(vec![k]),
        }
    }
    groups
}

/// Eigenvalues in decreasing order, with Jordan multiplicity (Kramers pairs
/// of the quaternionic embedding are counted once).
pub fn eigenvalues<T: Scalar>(a: &Element<T>) -> Result<Vec<T>> {
    let mut values = match a.data() {
        ElementData::Matrix(m) => {
            let vals = hermitian_eigen(m)?.values;
            match a.algebra() {
                AlgebraDescriptor::QuaternionicHermitian { .. } => vals.into_iter().step_by(2).collect(),
                _ => vals,
            }
        }
        ElementData::Spin { v, t } => {
            let r = v.iter().map(|&x| x * x).sum::<T>().sqrt();
            vec![*t + r, *t - r]
        }
        ElementData::Sum(parts) => {
            let mut all = Vec::new();
            for p in parts {
                all.extend(eigenvalues(p)?);
            }
            all
        }
    };
    values.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    Ok(values)
}

pub fn min_eigenvalue<T: Scalar>(a: &Element<T>) -> Result<T> {
    Ok(*eigenvalues(a)?.last().expect("non-empty spectrum"))
}

pub fn max_eigenvalue<T: Scalar>(a: &Element<T>) -> Result<T> {
    Ok(eigenvalues(a)?[0])
}

/// `Σ f(λ_i) p_i`. Fails with a domain error at the first eigenvalue where
/// `f` is not finite.
pub fn functional_calculus<T: Scalar>(a: &Element<T>, f: impl Fn(T) -> T) -> Result<Element<T>> {
    let dec = spectral_decompose(a, T::lit(DEFAULT_GAP))?;
    let mut out = Element::zero(a.algebra());
    for (l, p) in dec.pairs() {
        let y = f(*l);
        if !y.is_finite() {
            return Err(Error::Domain { eigenvalue: l.as_f64() });
        }
        out = out.add_scaled(y, p);
    }
    Ok(out)
}

/// Complex-valued functional calculus on a matrix kind: `Σ f(λ_i) P_i`
/// as a raw complex matrix (not necessarily Hermitian).
pub(crate) fn complex_function<T: Scalar>(
    a: &Element<T>,
    f: impl Fn(T) -> Complex<T>,
) -> Result<ComplexMatrix<T>> {
    let m = a
        .matrix()
        .ok_or_else(|| Error::Capability(format!("complex functional calculus on {}", a.algebra())))?;
    let dec = spectral_decompose(a, T::lit(DEFAULT_GAP))?;
    let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
    for (l, p) in dec.pairs() {
        let y = f(*l);
        if !(y.re.is_finite() && y.im.is_finite()) {
            return Err(Error::Domain { eigenvalue: l.as_f64() });
        }
        if !y.is_zero() {
            out = &out + &p.matrix().expect("matrix kind").scale_complex(y);
        }
    }
    Ok(out)
}

/// Eigenvalues of magnitude at most this are indistinguishable from zero for
/// the eigensolver.
pub(crate) fn noise_floor<T: Scalar>(dec: &SpectralDecomposition<T>) -> T {
    let scale = dec.pairs.iter().map(|(l, _)| l.abs()).fold(T::one(), T::max);
    T::lit(256.0) * T::epsilon() * scale
}

/// Square root of the non-negative part of a decomposition; eigenvalues at
/// solver-noise level count as zero, since their roots would otherwise leak
/// `O(√ε)` terms into the kernel.
pub(crate) fn sqrt_of<T: Scalar>(dec: &SpectralDecomposition<T>) -> Element<T> {
    let floor = noise_floor(dec);
    dec.map(|l| if l <= floor { T::zero() } else { l.sqrt() })
}

/// Positive square root; eigenvalues in `[-1e-9, 0)` are clamped to zero.
pub fn sqrt_pos<T: Scalar>(a: &Element<T>) -> Result<Element<T>> {
    let dec = spectral_decompose(a, T::lit(DEFAULT_GAP))?;
    let lowest = dec.eigenvalues().last().copied().unwrap_or_else(T::zero);
    if lowest < -T::lit(SHARP_THRESHOLD) {
        return Err(Error::Precondition(format!(
            "square root of a non-positive element (eigenvalue {:e})",
            lowest.as_f64()
        )));
    }
    Ok(sqrt_of(&dec))
}

fn require_effect<T: Scalar>(dec: &SpectralDecomposition<T>) -> Result<()> {
    let tol = T::lit(SHARP_THRESHOLD);
    for l in dec.eigenvalues() {
        if l < -tol || l > T::one() + tol {
            return Err(Error::Precondition(format!("not an effect (eigenvalue {})", l.as_f64())));
        }
    }
    Ok(())
}

/// `⌊a⌋`, the largest sharp effect below `a`: the spectral projection onto
/// eigenvalue 1.
pub fn floor_effect<T: Scalar>(a: &Element<T>) -> Result<Element<T>> {
    let dec = spectral_decompose(a, T::lit(DEFAULT_GAP))?;
    require_effect(&dec)?;
    let cut = T::one() - T::lit(SHARP_THRESHOLD);
    Ok(dec.projection_where(|l| l >= cut))
}

/// `⌈a⌉`, the support projection of `a`.
pub fn ceiling_effect<T: Scalar>(a: &Element<T>) -> Result<Element<T>> {
    let dec = spectral_decompose(a, T::lit(DEFAULT_GAP))?;
    require_effect(&dec)?;
    Ok(support(&dec))
}

fn support<T: Scalar>(dec: &SpectralDecomposition<T>) -> Element<T> {
    let cut = T::lit(SHARP_THRESHOLD);
    dec.projection_where(|l| l > cut)
}

/// Whether `‖a*a − a‖ ≤ tol`.
pub fn is_sharp<T: Scalar>(a: &Element<T>, tol: T) -> Result<bool> {
    let defect = &jordan(a, a) - a;
    Ok(crate::algebra::order_unit_norm(&defect)? <= tol)
}

/// `b⁻¹ = Σ_{λ_i > 0} λ_i⁻¹ p_i`, inverse on the support of `b`.
pub fn pseudo_inverse<T: Scalar>(b: &Element<T>) -> Result<Element<T>> {
    let dec = spectral_decompose(b, T::lit(DEFAULT_GAP))?;
    require_effect(&dec)?;
    let cut = T::lit(SHARP_THRESHOLD);
    Ok(dec.map(|l| if l > cut { l.recip() } else { T::zero() }))
}

/// Inverse of a positive element with spectrum bounded away from zero
/// (not required to be an effect).
pub fn inverse_pos<T: Scalar>(a: &Element<T>, min_eigenvalue: T) -> Result<Element<T>> {
    let dec = spectral_decompose(a, T::lit(DEFAULT_GAP))?;
    let lowest = dec.eigenvalues().last().copied().unwrap_or_else(T::zero);
    if lowest < min_eigenvalue {
        return Err(Error::Precondition(format!(
            "element is not invertible (eigenvalue {:e})",
            lowest.as_f64()
        )));
    }
    Ok(dec.map(T::recip))
}

/// Simple-effect approximations `q_{2^1}, …, q_{2^n_max}` from below, where
/// `q_n = Σ_{k=1}^{n} (1/n) p_n^k` and `p_n^k` is the spectral projection of
/// `a` onto eigenvalues strictly above `k/n`.
pub fn dyadic_approximation<T: Scalar>(a: &Element<T>, n_max: u32) -> Result<Vec<Element<T>>> {
    if n_max == 0 {
        return Err(Error::Precondition("dyadic approximation needs n_max ≥ 1".into()));
    }
    let dec = spectral_decompose(a, T::lit(DEFAULT_GAP))?;
    require_effect(&dec)?;
    let mut out = Vec::with_capacity(n_max as usize);
    for m in 1..=n_max {
        let n = 1u64 << m;
        let step = T::one() / T::lit(n as f64);
        let mut q = Element::zero(a.algebra());
        for k in 1..=n {
            let level = T::lit(k as f64) * step;
            let p = dec.projection_where(|l| l > level);
            q = q.add_scaled(step, &p);
        }
        out.push(q);
    }
    Ok(out)
}
