//! Sequential products: the standard product `a∘b = Q_{√a}(b)` and the
//! twisted family `a∘_t b = √a a^{it} b a^{−it} √a`, with commutation tests,
//! division, homogeneity isomorphisms and the maps `Θ_q` relating two products.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{
    inner, jordan_mult_operator, leq, order_gap, order_unit_norm, quadratic, quadratic_operator, AlgebraDescriptor,
    Effect, Element, ElementData, LinearMap,
};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Scalar;
use crate::spectral::{
    complex_function, min_eigenvalue, noise_floor, pseudo_inverse, spectral_decompose, sqrt_pos, DEFAULT_GAP, SHARP_THRESHOLD,
};

/// Smallest eigenvalue for which an element is treated as invertible.
pub const INVERTIBLE_MIN: f64 = 1e-6;

/// Tolerance for order comparisons `a ≤ b`.
pub const ORDER_TOL: f64 = 1e-9;

/// Which sequential product; serialized as `"standard"` or `"twisted:<t>"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProductSpec {
    Standard,
    Twisted(f64),
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductSpec::Standard => f.write_str("standard"),
            ProductSpec::Twisted(t) => write!(f, "twisted:{t:?}"),
        }
    }
}

impl FromStr for ProductSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "standard" {
            return Ok(ProductSpec::Standard);
        }
        let t = s
            .strip_prefix("twisted:")
            .ok_or_else(|| Error::Parse(format!("unknown product `{s}` (expected standard or twisted:<t>)")))?;
        let t: f64 = t.parse().map_err(|_| Error::Parse(format!("bad twist parameter `{t}`")))?;
        if !t.is_finite() {
            return Err(Error::Parse(format!("twist parameter must be finite, got {t}")));
        }
        Ok(ProductSpec::Twisted(t))
    }
}

impl Serialize for ProductSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ProductSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A sequential product bound to an algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct SequentialProduct<T> {
    spec: ProductSpec,
    algebra: AlgebraDescriptor,
    _scalar: std::marker::PhantomData<T>,
}

impl<T: Scalar> SequentialProduct<T> {
    /// Twisted products exist only on complex Hermitian algebras and direct
    /// sums of them.
    pub fn new(spec: ProductSpec, algebra: AlgebraDescriptor) -> Result<Self> {
        algebra.validate()?;
        if let ProductSpec::Twisted(_) = spec {
            if !algebra.is_complex_only() {
                return Err(Error::Capability(format!(
                    "{spec} requires a complex Hermitian algebra, got {algebra}"
                )));
            }
        }
        Ok(Self {
            spec,
            algebra,
            _scalar: std::marker::PhantomData,
        })
    }

    pub fn standard(algebra: AlgebraDescriptor) -> Self {
        Self::new(ProductSpec::Standard, algebra).expect("standard product exists on every algebra")
    }

    pub fn twisted(algebra: AlgebraDescriptor, t: f64) -> Result<Self> {
        Self::new(ProductSpec::Twisted(t), algebra)
    }

    pub fn spec(&self) -> ProductSpec {
        self.spec
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    /// The product extended to a positive first argument of any size.
    pub fn apply(&self, a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
        self.check(a)?;
        self.check(b)?;
        match self.spec {
            ProductSpec::Standard => Ok(quadratic(&sqrt_pos(a)?, b)),
            ProductSpec::Twisted(t) => twisted(a, b, T::lit(t)),
        }
    }

    fn check(&self, x: &Element<T>) -> Result<()> {
        if x.algebra() == &self.algebra {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch {
                left: self.algebra.clone(),
                right: x.algebra().clone(),
            })
        }
    }
}

fn twisted<T: Scalar>(a: &Element<T>, b: &Element<T>, t: T) -> Result<Element<T>> {
    match (a.data(), b.data()) {
        (ElementData::Matrix(_), ElementData::Matrix(bm)) => {
            let dec = spectral_decompose(a, T::lit(DEFAULT_GAP))?;
            let lowest = dec.eigenvalues().last().copied().unwrap_or_else(T::zero);
            if lowest < -T::lit(SHARP_THRESHOLD) {
                return Err(Error::Precondition(format!(
                    "sequential product with a non-positive element (eigenvalue {:e})",
                    lowest.as_f64()
                )));
            }
            let n = bm.rows();
            let mut root = ComplexMatrix::zeros(n, n);
            let mut phase = ComplexMatrix::zeros(n, n);
            let cut = T::lit(SHARP_THRESHOLD);
            let floor = noise_floor(&dec);
            for (l, p) in dec.pairs() {
                let pm = p.matrix().expect("matrix kind");
                let r = if *l <= floor { T::zero() } else { l.sqrt() };
                root = &root + &pm.scale(r);
                // u = a^{it} on the support, identity on the kernel
                let u = if *l > cut { Complex::from_polar(T::one(), t * l.ln()) } else { Complex::new(T::one(), T::zero()) };
                phase = &phase + &pm.scale_complex(u);
            }
            let left = &root * &phase;
            let m = &(&left * bm) * &left.adjoint();
            Element::from_matrix(a.algebra().clone(), m)
        }
        (ElementData::Sum(xs), ElementData::Sum(ys)) => Ok(Element::direct_sum(
            xs.iter().zip(ys).map(|(x, y)| twisted(x, y, t)).collect::<Result<_>>()?,
        )),
        _ => Err(Error::Capability(format!("twisted product on {}", a.algebra()))),
    }
}

/// `a∘b` for effects.
pub fn seq_product<T: Scalar>(product: &SequentialProduct<T>, a: &Effect<T>, b: &Effect<T>) -> Result<Effect<T>> {
    Ok(Effect::new_unchecked(product.apply(a, b)?))
}

/// `L_a : b ↦ a∘b`; `a` may be any positive element.
pub fn multiplication_operator<T: Scalar>(product: &SequentialProduct<T>, a: &Element<T>) -> Result<LinearMap<T>> {
    product.check(a)?;
    // Factor the square root once: L_a is Q_{√a} or Q_{√a u} for the twist.
    match product.spec {
        ProductSpec::Standard => {
            let root = sqrt_pos(a)?;
            LinearMap::from_fn(a.algebra(), "L_a", |b| Ok(quadratic(&root, b)))
        }
        ProductSpec::Twisted(_) => LinearMap::from_fn(a.algebra(), "L'_a", |b| product.apply(a, b)),
    }
}

/// Norms of the four commutation witnesses for a pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommutationResiduals<T> {
    /// `‖a∘b − b∘a‖` in the order-unit norm.
    pub sequential: T,
    /// `‖[Q_a, Q_b]‖` operator norm.
    pub quadratic: T,
    /// `‖[T_a, T_b]‖` operator norm.
    pub jordan: T,
    /// Largest entry of `ab − ba`, when every block is a matrix.
    pub matrix: Option<T>,
}

impl<T: Scalar> CommutationResiduals<T> {
    /// Verdicts of the available tests, in the order sequential, quadratic,
    /// Jordan, matrix.
    pub fn verdicts(&self, tol: T) -> Vec<bool> {
        let mut v = vec![self.sequential <= tol, self.quadratic <= tol, self.jordan <= tol];
        if let Some(m) = self.matrix {
            v.push(m <= tol);
        }
        v
    }

    pub fn agree(&self, tol: T) -> bool {
        let v = self.verdicts(tol);
        v.iter().all(|&x| x == v[0])
    }
}

pub fn commutation_residuals<T: Scalar>(
    product: &SequentialProduct<T>,
    a: &Element<T>,
    b: &Element<T>,
) -> Result<CommutationResiduals<T>> {
    let ab = product.apply(a, b)?;
    let ba = product.apply(b, a)?;
    let sequential = order_unit_norm(&(&ab - &ba))?;
    let quadratic = quadratic_operator(a)?.commutator(&quadratic_operator(b)?)?.op_norm()?;
    let jordan = jordan_mult_operator(a)?.commutator(&jordan_mult_operator(b)?)?.op_norm()?;
    Ok(CommutationResiduals {
        sequential,
        quadratic,
        jordan,
        matrix: matrix_commutator_norm(a, b),
    })
}

/// Largest entry of `ab − ba` over all blocks; `None` if a spin block occurs.
pub fn matrix_commutator_norm<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Option<T> {
    match (a.data(), b.data()) {
        (ElementData::Matrix(x), ElementData::Matrix(y)) => Some(x.commutator(y).max_abs()),
        (ElementData::Sum(xs), ElementData::Sum(ys)) => xs
            .iter()
            .zip(ys)
            .map(|(x, y)| matrix_commutator_norm(x, y))
            .try_fold(T::zero(), |acc, m| m.map(|m| acc.max(m))),
        _ => None,
    }
}

/// `a | b`: whether `‖a∘b − b∘a‖ ≤ tol`.
pub fn commutes<T: Scalar>(product: &SequentialProduct<T>, a: &Element<T>, b: &Element<T>, tol: T) -> Result<bool> {
    let ab = product.apply(a, b)?;
    let ba = product.apply(b, a)?;
    Ok(order_unit_norm(&(&ab - &ba))? <= tol)
}

/// The effect `c = q⁻¹∘a` with `q∘c = a` and `c ≤ ⌈q⌉`, for `a ≤ q`.
pub fn divide<T: Scalar>(product: &SequentialProduct<T>, q: &Effect<T>, a: &Effect<T>) -> Result<Effect<T>> {
    product.check(q)?;
    product.check(a)?;
    let gap = order_gap(a, q)?;
    if gap < -T::lit(ORDER_TOL) {
        return Err(Error::Precondition(format!(
            "divide needs a ≤ q; q − a has eigenvalue {:e}",
            gap.as_f64()
        )));
    }
    let q_inv = pseudo_inverse(q)?;
    Ok(Effect::new_unchecked(product.apply(&q_inv, a)?))
}

fn require_invertible<T: Scalar>(x: &Element<T>, what: &str) -> Result<()> {
    let low = min_eigenvalue(x)?;
    if low < T::lit(INVERTIBLE_MIN) {
        return Err(Error::Precondition(format!(
            "{what} must be invertible (smallest eigenvalue {:e})",
            low.as_f64()
        )));
    }
    Ok(())
}

/// An order automorphism `Φ` of the cone with `Φ(a) = b`, and its inverse.
#[derive(Clone, Debug)]
pub struct HomogeneityIso<T> {
    /// `L_b L_{a⁻¹}`.
    pub forward: LinearMap<T>,
    /// `L_a L_{b⁻¹}`.
    pub inverse: LinearMap<T>,
}

/// Cone automorphism carrying `a` to `b` for the standard product.
pub fn homogeneity_iso<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Result<HomogeneityIso<T>> {
    homogeneity_iso_with(&SequentialProduct::standard(a.algebra().clone()), a, b)
}

pub fn homogeneity_iso_with<T: Scalar>(
    product: &SequentialProduct<T>,
    a: &Element<T>,
    b: &Element<T>,
) -> Result<HomogeneityIso<T>> {
    require_invertible(a, "a")?;
    require_invertible(b, "b")?;
    let a_inv = crate::spectral::inverse_pos(a, T::lit(INVERTIBLE_MIN))?;
    let b_inv = crate::spectral::inverse_pos(b, T::lit(INVERTIBLE_MIN))?;
    let forward = multiplication_operator(product, b)?
        .compose(&multiplication_operator(product, &a_inv)?)?
        .with_label("L_b L_{a⁻¹}");
    let inverse = multiplication_operator(product, a)?
        .compose(&multiplication_operator(product, &b_inv)?)?
        .with_label("L_a L_{b⁻¹}");
    Ok(HomogeneityIso { forward, inverse })
}

/// `Θ_q = L_q⁻¹ L′_q`, so that `q∘′x = q∘Θ_q(x)`. Non-effects are first
/// normalized by their order-unit norm.
pub fn theta_between<T: Scalar>(
    product: &SequentialProduct<T>,
    other: &SequentialProduct<T>,
    q: &Element<T>,
) -> Result<LinearMap<T>> {
    if product.algebra() != other.algebra() {
        return Err(Error::DescriptorMismatch {
            left: product.algebra().clone(),
            right: other.algebra().clone(),
        });
    }
    product.check(q)?;
    require_invertible(q, "q")?;
    let norm = order_unit_norm(q)?;
    let q = if norm > T::one() { q.scale(norm.recip()) } else { q.clone() };
    let l = multiplication_operator(product, &q)?;
    let l_other = multiplication_operator(other, &q)?;
    Ok(l.invert()?.compose(&l_other)?.with_label("Θ_q"))
}

/// `x ↦ q^{it} x q^{−it}` on a complex Hermitian algebra (blockwise on sums).
pub fn twist_conjugation<T: Scalar>(q: &Element<T>, t: f64) -> Result<LinearMap<T>> {
    if !q.algebra().is_complex_only() {
        return Err(Error::Capability(format!("q^(it) conjugation on {}", q.algebra())));
    }
    require_invertible(q, "q")?;
    let t = T::lit(t);
    let unitaries = block_unitaries(q, t)?;
    LinearMap::from_fn(q.algebra(), "Ad(q^it)", |x| conjugate_blocks(x, &unitaries, &mut 0))
}

fn block_unitaries<T: Scalar>(q: &Element<T>, t: T) -> Result<Vec<ComplexMatrix<T>>> {
    match q.data() {
        ElementData::Matrix(_) => Ok(vec![complex_function(q, |l| Complex::from_polar(T::one(), t * l.ln()))?]),
        ElementData::Sum(parts) => {
            let mut out = Vec::new();
            for p in parts {
                out.extend(block_unitaries(p, t)?);
            }
            Ok(out)
        }
        ElementData::Spin { .. } => Err(Error::Capability("q^(it) on a spin factor".into())),
    }
}

fn conjugate_blocks<T: Scalar>(x: &Element<T>, us: &[ComplexMatrix<T>], next: &mut usize) -> Result<Element<T>> {
    match x.data() {
        ElementData::Matrix(m) => {
            let u = &us[*next];
            *next += 1;
            Element::from_matrix(x.algebra().clone(), &(u * m) * &u.adjoint())
        }
        ElementData::Sum(parts) => Ok(Element::direct_sum(
            parts.iter().map(|p| conjugate_blocks(p, us, next)).collect::<Result<_>>()?,
        )),
        ElementData::Spin { .. } => unreachable!("checked complex-only"),
    }
}

/// `a ≤ b` with the crate-wide order tolerance.
pub fn below<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Result<bool> {
    leq(a, b, T::lit(ORDER_TOL))
}

/// `⟨a∘b, c⟩ − ⟨b, a∘c⟩`.
pub fn symmetry_defect<T: Scalar>(
    product: &SequentialProduct<T>,
    a: &Element<T>,
    b: &Element<T>,
    c: &Element<T>,
) -> Result<T> {
    Ok(inner(&product.apply(a, b)?, c) - inner(b, &product.apply(a, c)?))
}
