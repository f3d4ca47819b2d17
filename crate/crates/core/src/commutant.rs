//! Commutants, bicommutants and the finite commutative model.
//!
//! For matrix kinds the commutant of `S` is the null space of the stacked
//! commutator maps `X ↦ Xs − sX`, computed on trace-orthonormal coordinates;
//! spin factors are handled analytically and direct sums blockwise. Because
//! coordinates are orthonormal, orthonormal null-space vectors give
//! trace-orthonormal bases.

use crate::algebra::{inner, quadratic, AlgebraDescriptor, Element, ElementData};
use crate::error::{Error, Result};
use crate::linalg::{null_space, RealMatrix};
use crate::scalar::Scalar;
use crate::spectral::{spectral_decompose, DEFAULT_GAP};

/// Relative singular-value cutoff for the commutator null space.
pub const NULL_SPACE_TOL: f64 = 1e-8;

/// Relative tolerance for deciding that two inputs commute.
pub const COMMUTE_TOL: f64 = 1e-8;

/// Trace-orthonormal basis of `{x : xs = sx for all s ∈ S}`.
pub fn commutant_basis<T: Scalar>(algebra: &AlgebraDescriptor, set: &[Element<T>]) -> Result<Vec<Element<T>>> {
    for s in set {
        if s.algebra() != algebra {
            return Err(Error::DescriptorMismatch {
                left: algebra.clone(),
                right: s.algebra().clone(),
            });
        }
    }
    let refs: Vec<&Element<T>> = set.iter().collect();
    commutant_coords(algebra, &refs)?
        .iter()
        .map(|c| Element::from_coords(algebra, c))
        .collect()
}

fn commutant_coords<T: Scalar>(algebra: &AlgebraDescriptor, set: &[&Element<T>]) -> Result<Vec<Vec<T>>> {
    let dim = algebra.real_dimension();
    match algebra {
        AlgebraDescriptor::SpinFactor { d } => Ok(spin_commutant(*d, set)),
        AlgebraDescriptor::DirectSum { summands } => {
            let mut out = Vec::new();
            let mut offset = 0;
            for (k, sub) in summands.iter().enumerate() {
                let blocks: Vec<&Element<T>> = set.iter().map(|s| &s.summands().expect("sum storage")[k]).collect();
                let sub_dim = sub.real_dimension();
                for c in commutant_coords(sub, &blocks)? {
                    let mut full = vec![T::zero(); dim];
                    full[offset..offset + sub_dim].copy_from_slice(&c);
                    out.push(full);
                }
                offset += sub_dim;
            }
            Ok(out)
        }
        _ => {
            let unit = |j: usize| {
                let mut c = vec![T::zero(); dim];
                c[j] = T::one();
                Element::from_coords(algebra, &c).expect("dimension matches")
            };
            let basis: Vec<Element<T>> = (0..dim).map(unit).collect();
            // each column: the stacked real and imaginary parts of [e_j, s] over s ∈ S
            let mut columns: Vec<Vec<T>> = vec![Vec::new(); dim];
            for s in set {
                let sm = s.matrix().expect("matrix storage");
                for (col, e) in columns.iter_mut().zip(&basis) {
                    let c = e.matrix().expect("matrix storage").commutator(sm);
                    for i in 0..c.rows() {
                        for j in 0..c.cols() {
                            col.push(c[(i, j)].re);
                            col.push(c[(i, j)].im);
                        }
                    }
                }
            }
            if set.is_empty() {
                return Ok((0..dim).map(|j| unit(j).coords()).collect());
            }
            let rows = columns[0].len();
            let m = RealMatrix::from_fn(rows, dim, |i, j| columns[j][i]);
            Ok(null_space(&m, T::lit(NULL_SPACE_TOL)))
        }
    }
}

/// `(w, s)` commutes with `(v, t)` iff `w ∥ v`; the commutant is therefore
/// the whole factor, `span{1, (v̂, 0)}`, or `R·1` depending on `dim span{v}`.
fn spin_commutant<T: Scalar>(d: usize, set: &[&Element<T>]) -> Vec<Vec<T>> {
    let mut directions: Vec<Vec<T>> = Vec::new();
    for s in set {
        let (v, _) = s.spin_parts().expect("spin storage");
        let scale = v.iter().map(|x| x.abs()).fold(T::one(), T::max);
        let mut w = v.to_vec();
        for u in &directions {
            let dot: T = w.iter().zip(u).map(|(a, b)| *a * *b).sum();
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi = *wi - dot * *ui;
            }
        }
        let norm = w.iter().map(|x| *x * *x).sum::<T>().sqrt();
        if norm > T::lit(NULL_SPACE_TOL) * scale {
            directions.push(w.iter().map(|x| *x / norm).collect());
        }
    }
    let unit = |k: usize| {
        let mut c = vec![T::zero(); d + 1];
        c[k] = T::one();
        c
    };
    match directions.len() {
        0 => (0..=d).map(unit).collect(),
        1 => {
            let mut v = directions.pop().expect("one direction");
            v.push(T::zero());
            vec![unit(d), v]
        }
        _ => vec![unit(d)],
    }
}

/// Size of the failure of `a` and `b` to commute, relative to their norms.
///
/// Matrix kinds use the largest entry of `ab − ba`; spin factors use
/// `‖v ∧ w‖`, which vanishes exactly when the two elements operator-commute.
pub fn commutation_defect<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Result<T> {
    a.check_same(b)?;
    Ok(defect(a, b))
}

fn defect<T: Scalar>(a: &Element<T>, b: &Element<T>) -> T {
    match (a.data(), b.data()) {
        (ElementData::Matrix(x), ElementData::Matrix(y)) => {
            x.commutator(y).max_abs() / T::one().max(x.max_abs() * y.max_abs())
        }
        (ElementData::Spin { v, .. }, ElementData::Spin { v: w, .. }) => {
            let vv: T = v.iter().map(|x| *x * *x).sum();
            let ww: T = w.iter().map(|x| *x * *x).sum();
            let vw: T = v.iter().zip(w).map(|(x, y)| *x * *y).sum();
            (vv * ww - vw * vw).max(T::zero()).sqrt() / T::one().max((vv * ww).sqrt())
        }
        (ElementData::Sum(xs), ElementData::Sum(ys)) => {
            xs.iter().zip(ys).map(|(x, y)| defect(x, y)).fold(T::zero(), T::max)
        }
        _ => unreachable!("same algebra implies same storage"),
    }
}

fn require_commuting<T: Scalar>(set: &[Element<T>]) -> Result<()> {
    for i in 0..set.len() {
        for j in (i + 1)..set.len() {
            set[i].check_same(&set[j])?;
            let d = defect(&set[i], &set[j]);
            if d > T::lit(COMMUTE_TOL) {
                return Err(Error::Precondition(format!(
                    "elements {i} and {j} do not commute (defect {:e})",
                    d.as_f64()
                )));
            }
        }
    }
    Ok(())
}

/// Basis of `(S′)′`, a commutative subalgebra containing `S`.
pub fn bicommutant_basis<T: Scalar>(algebra: &AlgebraDescriptor, set: &[Element<T>]) -> Result<Vec<Element<T>>> {
    require_commuting(set)?;
    let first = commutant_basis(algebra, set)?;
    commutant_basis(algebra, &first)
}

/// Distance from `x` to the span of a trace-orthonormal `basis`, relative to
/// `max(1, ‖x‖)` in the trace norm.
pub fn span_residual<T: Scalar>(basis: &[Element<T>], x: &Element<T>) -> Result<T> {
    let mut rest = x.clone();
    for b in basis {
        b.check_same(x)?;
        rest = rest.add_scaled(-inner(b, x), b);
    }
    let norm = |e: &Element<T>| inner(e, e).max(T::zero()).sqrt();
    Ok(norm(&rest) / T::one().max(norm(x)))
}

/// A commutative family realized as functions on `points` joint eigenspaces.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionModel<T> {
    algebra: AlgebraDescriptor,
    frame: Vec<Element<T>>,
    /// `points × dim`; row `k` is `coords(f_k) / tr(f_k)`.
    embedding: RealMatrix<T>,
}

impl<T: Scalar> FunctionModel<T> {
    /// Assembles a model from a frame of orthogonal projections summing to 1.
    pub fn from_frame(algebra: AlgebraDescriptor, frame: Vec<Element<T>>) -> Result<Self> {
        if frame.is_empty() {
            return Err(Error::Precondition("empty frame".into()));
        }
        let dim = algebra.real_dimension();
        let mut embedding = RealMatrix::zeros(frame.len(), dim);
        let one = Element::identity(&algebra);
        for (k, f) in frame.iter().enumerate() {
            f.check_same(&one)?;
            let tr = inner(f, &one);
            for (j, c) in f.coords().into_iter().enumerate() {
                embedding[(k, j)] = c / tr;
            }
        }
        Ok(Self {
            algebra,
            frame,
            embedding,
        })
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    pub fn points(&self) -> usize {
        self.frame.len()
    }

    pub fn frame(&self) -> &[Element<T>] {
        &self.frame
    }

    pub fn embedding(&self) -> &RealMatrix<T> {
        &self.embedding
    }

    /// Joint eigenvalues of `a` on each frame projection.
    pub fn to_function(&self, a: &Element<T>) -> Result<Vec<T>> {
        a.check_same(&self.frame[0])?;
        Ok(self.embedding.mul_vec(&a.coords()))
    }

    /// `Σ_k values_k f_k`.
    pub fn from_function(&self, values: &[T]) -> Result<Element<T>> {
        if values.len() != self.points() {
            return Err(Error::Parse(format!(
                "model has {} points, got {} values",
                self.points(),
                values.len()
            )));
        }
        Ok(self
            .frame
            .iter()
            .zip(values)
            .fold(Element::zero(&self.algebra), |acc, (f, &y)| acc.add_scaled(y, f)))
    }

    /// Trace-norm distance from `a` to the subalgebra spanned by the frame,
    /// relative to `max(1, ‖a‖)`.
    pub fn membership_residual(&self, a: &Element<T>) -> Result<T> {
        let back = self.from_function(&self.to_function(a)?)?;
        let diff = &back - a;
        let norm = |e: &Element<T>| inner(e, e).max(T::zero()).sqrt();
        Ok(norm(&diff) / T::one().max(norm(a)))
    }
}

/// Splits the identity into the joint eigenprojections of a commuting set.
pub fn simultaneous_diagonalize<T: Scalar>(
    algebra: &AlgebraDescriptor,
    set: &[Element<T>],
) -> Result<FunctionModel<T>> {
    algebra.validate()?;
    for s in set {
        if s.algebra() != algebra {
            return Err(Error::DescriptorMismatch {
                left: algebra.clone(),
                right: s.algebra().clone(),
            });
        }
    }
    require_commuting(set)?;
    let one = Element::identity(algebra);
    let mut frame = vec![one.clone()];
    let half = T::half();
    for s in set {
        let mut next = Vec::new();
        for p in &frame {
            // s restricted to the range of p; eigenprojections of the
            // compression, cut back down to p, refine the piece.
            let compressed = quadratic(p, s);
            for (_, e) in spectral_decompose(&compressed, T::lit(DEFAULT_GAP))?.into_pairs() {
                let piece = quadratic(p, &e);
                if inner(&piece, &one) > half {
                    next.push(piece);
                }
            }
        }
        frame = next;
    }
    FunctionModel::from_frame(algebra.clone(), frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{jordan, order_unit_norm, random_effect, EffectProfile};

    fn c3() -> AlgebraDescriptor {
        AlgebraDescriptor::complex(3)
    }

    #[test]
    fn commutant_dimensions() {
        let alg = c3();
        let s = Element::diagonal(alg.clone(), &[0.3, 0.3, 0.7]).unwrap();
        assert_eq!(commutant_basis(&alg, std::slice::from_ref(&s)).unwrap().len(), 5);
        assert_eq!(commutant_basis(&alg, &[Element::<f64>::identity(&alg)]).unwrap().len(), 9);
        let a: Element<f64> = random_effect(&alg, 5, EffectProfile::Generic).unwrap().into_element();
        assert_eq!(commutant_basis(&alg, &[a]).unwrap().len(), 3);
        assert_eq!(bicommutant_basis(&alg, &[s]).unwrap().len(), 2);
        assert_eq!(bicommutant_basis(&alg, &[Element::<f64>::identity(&alg)]).unwrap().len(), 1);
    }

    #[test]
    fn basis_is_orthonormal() {
        let alg = AlgebraDescriptor::quaternionic(3);
        let s = Element::diagonal(alg.clone(), &[0.2, 0.2, 0.9]).unwrap();
        let basis = commutant_basis(&alg, &[s]).unwrap();
        // Q-Herm(2) ⊕ R: 6 + 1
        assert_eq!(basis.len(), 7);
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let want: f64 = if i == j { 1.0 } else { 0.0 };
                assert!((inner(x, y) - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spin_commutants() {
        let alg = AlgebraDescriptor::spin(4);
        let a = Element::spin(vec![0.1, 0.2, 0.0, 0.0], 0.5);
        assert_eq!(commutant_basis(&alg, std::slice::from_ref(&a)).unwrap().len(), 2);
        let b = Element::spin(vec![0.0, 0.0, 0.3, 0.0], 0.5);
        assert_eq!(commutant_basis(&alg, &[a.clone(), b.clone()]).unwrap().len(), 1);
        assert_eq!(commutant_basis(&alg, &[Element::<f64>::identity(&alg)]).unwrap().len(), 5);
        assert!(matches!(bicommutant_basis(&alg, &[a, b]), Err(Error::Precondition(_))));
    }

    #[test]
    fn direct_sum_blocks() {
        let alg = AlgebraDescriptor::direct_sum(vec![AlgebraDescriptor::complex(2), AlgebraDescriptor::spin(3)]);
        let s = Element::direct_sum(vec![
            Element::diagonal(AlgebraDescriptor::complex(2), &[0.1, 0.6]).unwrap(),
            Element::spin(vec![0.2, 0.0, 0.0], 0.5),
        ]);
        assert_eq!(commutant_basis(&alg, std::slice::from_ref(&s)).unwrap().len(), 4);
        let model = simultaneous_diagonalize(&alg, &[s]).unwrap();
        assert_eq!(model.points(), 4);
    }

    #[test]
    fn bicommutant_contains_polynomials() {
        let alg = c3();
        let a: Element<f64> = random_effect(&alg, 11, EffectProfile::Generic).unwrap().into_element();
        let basis = bicommutant_basis(&alg, std::slice::from_ref(&a)).unwrap();
        assert_eq!(basis.len(), 3);
        for x in [a.clone(), jordan(&a, &a), a.complement()] {
            assert!(span_residual(&basis, &x).unwrap() < 1e-9);
        }
    }

    #[test]
    fn non_commuting_rejected() {
        let a = Element::<f64>::real_diag(&[1.0, 0.0]);
        let b = Element::real_symmetric(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        match bicommutant_basis(a.algebra(), &[a.clone(), b.clone()]) {
            Err(Error::Precondition(m)) => assert!(m.contains("0 and 1")),
            other => panic!("{other:?}"),
        }
        let alg = a.algebra().clone();
        assert!(simultaneous_diagonalize(&alg, &[a, b]).is_err());
    }

    #[test]
    fn function_model_examples() {
        let a = Element::<f64>::real_diag(&[0.5, 0.2]);
        let model = simultaneous_diagonalize(a.algebra(), std::slice::from_ref(&a)).unwrap();
        assert_eq!(model.points(), 2);
        assert_eq!(model.to_function(&a).unwrap().len(), 2);
        let f = model.to_function(&a).unwrap();
        assert!((f[0] - 0.5).abs() < 1e-15 && (f[1] - 0.2).abs() < 1e-15);
        assert!(order_unit_norm(&(&model.frame()[0] - &Element::real_diag(&[1.0, 0.0]))).unwrap() < 1e-15);

        let alg = c3();
        let one = Element::<f64>::identity(&alg);
        assert_eq!(simultaneous_diagonalize(&alg, &[one]).unwrap().points(), 1);
        let b: Element<f64> = random_effect(&alg, 2, EffectProfile::Generic).unwrap().into_element();
        let m1 = simultaneous_diagonalize(&alg, std::slice::from_ref(&b)).unwrap();
        let m2 = simultaneous_diagonalize(&alg, &[b.clone(), jordan(&b, &b)]).unwrap();
        assert_eq!(m1.points(), m2.points());
        assert!(m1.membership_residual(&b).unwrap() < 1e-9);
    }
}
