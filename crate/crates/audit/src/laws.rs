//! Sampling and evaluation of each law.
//!
//! `sample` draws the inputs of one trial (independently of the product, so a
//! witness can be replayed against any product on the same algebra) and
//! `evaluate` turns inputs into a non-negative residual. Hypotheses such as
//! commutation or `a ≤ b` are manufactured rather than rejection-sampled.

use rand::Rng;
use seqprod_core::algebra::{
    make_order_iso, order_gap, order_unit_norm, quadratic_operator, quadratic_rep, random_effect_with,
    random_element, random_positive, random_projection, rel_residual, trace_inner_product, AlgebraDescriptor,
    EffectProfile, IsoKind, SeededRng,
};
use seqprod_core::seqprod::{
    commutation_residuals, divide, homogeneity_iso_with, multiplication_operator, theta_between, twist_conjugation,
};
use seqprod_core::spectral::{
    ceiling_effect, dyadic_approximation, floor_effect, functional_calculus, inverse_pos, max_eigenvalue,
    min_eigenvalue, pseudo_inverse, spectral_decompose, sqrt_pos, DEFAULT_GAP,
};
use seqprod_core::{Effect, Element, Error, ProductSpec, Result, SequentialProduct};
use serde::{Deserialize, Serialize};

use crate::law::LawId;
use crate::witness::Inputs;

/// Tolerance at which the four commutation tests must agree.
pub const COMMUTE_TOL: f64 = 1e-8;

/// Smallest eigenvalue accepted when inverting sampled elements.
const INVERSE_FLOOR: f64 = 1e-12;

/// Which order isomorphisms INVARIANCE draws from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoChoice {
    /// Complex kinds alternate transpose and unitary conjugation; spin
    /// factors rotate; other kinds use unitary conjugation.
    #[default]
    Auto,
    Transpose,
    Unitary,
    Rotation,
}

impl std::str::FromStr for IsoChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(IsoChoice::Auto),
            "transpose" => Ok(IsoChoice::Transpose),
            "unitary" => Ok(IsoChoice::Unitary),
            "rotation" => Ok(IsoChoice::Rotation),
            _ => Err(Error::Parse(format!("unknown iso `{s}` (auto, transpose, unitary, rotation)"))),
        }
    }
}

fn iso_for(alg: &AlgebraDescriptor, choice: IsoChoice, trial: usize, seed: u64) -> IsoKind {
    match choice {
        IsoChoice::Transpose => IsoKind::Transpose,
        IsoChoice::Unitary => IsoKind::UnitaryConjugation { seed },
        IsoChoice::Rotation => IsoKind::SpinRotation { seed },
        IsoChoice::Auto => match alg {
            AlgebraDescriptor::SpinFactor { .. } => IsoKind::SpinRotation { seed },
            _ if alg.is_complex_only() && trial.is_multiple_of(2) => IsoKind::Transpose,
            _ => IsoKind::UnitaryConjugation { seed },
        },
    }
}

fn generic(alg: &AlgebraDescriptor, rng: &mut SeededRng) -> Result<Element<f64>> {
    Ok(random_effect_with(alg, EffectProfile::Generic, rng)?.into_element())
}

fn invertible(alg: &AlgebraDescriptor, rng: &mut SeededRng) -> Result<Element<f64>> {
    Ok(random_effect_with(alg, EffectProfile::Invertible, rng)?.into_element())
}

/// A projection of rank strictly between 0 and the algebra's rank (zero for
/// rank-one algebras).
fn proper_projection(alg: &AlgebraDescriptor, rng: &mut SeededRng) -> Result<Element<f64>> {
    let rank = alg.rank();
    let r = if rank < 2 { 0 } else { rng.gen_range(1..rank) };
    random_projection(alg, r, rng)
}

/// `Q_r(x) + Q_{r⊥}(y)`: an effect commuting with `r`.
fn block_effect(r: &Element<f64>, rng: &mut SeededRng) -> Result<Element<f64>> {
    let alg = r.algebra();
    let x = generic(alg, rng)?;
    let y = generic(alg, rng)?;
    Ok(quadratic_rep(r, &x)? + quadratic_rep(&r.complement(), &y)?)
}

/// `γ + αx + βx²` with random non-negative weights summing to at most one.
fn polynomial(rng: &mut SeededRng) -> [f64; 3] {
    let w: [f64; 3] = [rng.gen_range(0.0..0.33), rng.gen_range(0.0..0.33), rng.gen_range(0.05..0.33)];
    w
}

fn apply_poly(a: &Element<f64>, w: [f64; 3]) -> Result<Element<f64>> {
    functional_calculus(a, |x| w[0] + w[1] * x + w[2] * x * x)
}

/// Draws the inputs of trial `trial` of `law` on `alg`.
pub fn sample(law: LawId, alg: &AlgebraDescriptor, trial: usize, iso: IsoChoice, rng: &mut SeededRng) -> Result<Inputs> {
    let inputs = Inputs::default();
    Ok(match law {
        LawId::Sea1 => inputs
            .with("a", generic(alg, rng)?)
            .with("b", generic(alg, rng)?.scale(0.5))
            .with("c", generic(alg, rng)?.scale(0.5)),
        LawId::Sea2
        | LawId::ProductLeLeft
        | LawId::DyadicBound
        | LawId::SpectralRecon
        | LawId::Symmetry
        | LawId::ScalarLinearity => {
            let inputs = inputs.with("a", generic(alg, rng)?).with("b", generic(alg, rng)?);
            match law {
                LawId::Symmetry => inputs.with("c", generic(alg, rng)?),
                LawId::ScalarLinearity => inputs.with_scalar("lambda", rng.gen_range(0.0..1.0)),
                _ => inputs,
            }
        }
        LawId::Sea3 => {
            let r = proper_projection(alg, rng)?;
            let x = generic(alg, rng)?;
            let y = generic(alg, rng)?;
            inputs
                .with("a", quadratic_rep(&r, &x)?)
                .with("b", quadratic_rep(&r.complement(), &y)?)
        }
        LawId::Sea4 => {
            let (a, b) = if trial.is_multiple_of(2) {
                let a = generic(alg, rng)?;
                let b = apply_poly(&a, polynomial(rng))?;
                (a, b)
            } else {
                let r = proper_projection(alg, rng)?;
                let b = r.scale(rng.gen_range(0.05..0.95)) + r.complement().scale(rng.gen_range(0.05..0.95));
                (block_effect(&r, rng)?, b)
            };
            inputs.with("a", a).with("b", b).with("c", generic(alg, rng)?)
        }
        LawId::Sea5 => {
            let r = proper_projection(alg, rng)?;
            let c = r.scale(rng.gen_range(0.05..0.95)) + r.complement().scale(rng.gen_range(0.05..0.95));
            inputs
                .with("a", block_effect(&r, rng)?)
                .with("b", block_effect(&r, rng)?)
                .with("c", c)
        }
        LawId::MonotoneRight => {
            let b = generic(alg, rng)?;
            let x = generic(alg, rng)?;
            let eps = rng.gen_range(0.01..0.5);
            let a = &b - &quadratic_rep(&sqrt_pos(&b)?, &x)?.scale(eps);
            inputs.with("a", a).with("b", b).with("c", generic(alg, rng)?)
        }
        LawId::SharpProps => {
            let p = random_effect_with(alg, EffectProfile::Sharp, rng)?.into_element();
            let x = generic(alg, rng)?;
            let above = &p + &quadratic_rep(&p.complement(), &x)?;
            let below = quadratic_rep(&p, &x)?;
            inputs.with("p", p).with("a", above).with("b", below)
        }
        LawId::FloorLimit => {
            let r = proper_projection(alg, rng)?;
            let x = generic(alg, rng)?;
            let a = &r + &quadratic_rep(&r.complement(), &x)?.scale(0.7);
            inputs.with("a", a).with("r", r)
        }
        LawId::FundamentalEq => inputs
            .with("a", random_positive(alg, rng))
            .with("b", random_positive(alg, rng)),
        LawId::CommuteEquiv => {
            let a = generic(alg, rng)?;
            let b = if trial.is_multiple_of(2) { apply_poly(&a, polynomial(rng))? } else { generic(alg, rng)? };
            inputs.with("a", a).with("b", b)
        }
        LawId::SelfDuality => {
            let g: Element<f64> = random_element(alg, rng);
            let a = if min_eigenvalue(&g)? >= 0.0 { -&g } else { g };
            inputs
                .with("a", a)
                .with("x", random_positive(alg, rng))
                .with("y", random_positive(alg, rng))
        }
        LawId::Homogeneity => {
            let mut inputs = inputs.with("a", invertible(alg, rng)?).with("b", invertible(alg, rng)?);
            for k in 0..5 {
                inputs = inputs.with(&format!("x{k}"), random_positive(alg, rng));
            }
            inputs
        }
        LawId::PseudoInverse | LawId::Divide => {
            let profile = if trial.is_multiple_of(2) { EffectProfile::Singular } else { EffectProfile::Generic };
            let q = random_effect_with(alg, profile, rng)?.into_element();
            let inputs = inputs.with("q", q);
            if law == LawId::Divide {
                inputs.with("x", generic(alg, rng)?)
            } else {
                inputs
            }
        }
        LawId::Invariance => {
            let seed = rng.gen();
            let mut inputs = inputs.with("a", generic(alg, rng)?).with("b", generic(alg, rng)?);
            inputs.iso = Some(iso_for(alg, iso, trial, seed));
            inputs
        }
        LawId::InvertibilityPres => inputs.with("a", invertible(alg, rng)?).with("b", invertible(alg, rng)?),
        LawId::QuadraticLaw => inputs.with("a", generic(alg, rng)?).with("b", generic(alg, rng)?),
        LawId::ThetaStructure => {
            let a = invertible(alg, rng)?;
            let b = apply_poly(&a, polynomial(rng))?;
            inputs.with("a", a).with("b", b)
        }
    })
}

fn norm(x: &Element<f64>) -> Result<f64> {
    order_unit_norm(x)
}

fn dist(x: &Element<f64>, y: &Element<f64>) -> Result<f64> {
    norm(&(x - y))
}

/// Negative part, so that "x ≥ 0" violations become residuals.
fn neg(x: f64) -> f64 {
    (-x).max(0.0)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates as a failure
    values.into_iter().fold(0.0, |acc, x| if x.is_nan() || acc.is_nan() { f64::NAN } else { acc.max(x) })
}

/// Residual of `law` for product `p` on the given inputs.
pub fn evaluate(law: LawId, p: &SequentialProduct<f64>, w: &Inputs) -> Result<f64> {
    let e = |name: &str| w.element(name);
    let alg = p.algebra().clone();
    let one = Element::identity(&alg);
    match law {
        LawId::Sea1 => {
            let (a, b, c) = (e("a")?, e("b")?, e("c")?);
            rel_residual(&p.apply(a, &(b + c))?, &(p.apply(a, b)? + p.apply(a, c)?))
        }
        LawId::Sea2 => {
            let a = e("a")?;
            Ok(max_of([rel_residual(&p.apply(&one, a)?, a)?, rel_residual(&p.apply(a, &one)?, a)?]))
        }
        LawId::Sea3 => {
            let (a, b) = (e("a")?, e("b")?);
            // the construction makes a∘b = 0, so both products must vanish
            Ok(max_of([norm(&p.apply(a, b)?)?, norm(&p.apply(b, a)?)?]))
        }
        LawId::Sea4 => {
            let (a, b, c) = (e("a")?, e("b")?, e("c")?);
            let bc = b.complement();
            Ok(max_of([
                dist(&p.apply(a, b)?, &p.apply(b, a)?)?,
                dist(&p.apply(a, &bc)?, &p.apply(&bc, a)?)?,
                rel_residual(&p.apply(a, &p.apply(b, c)?)?, &p.apply(&p.apply(a, b)?, c)?)?,
            ]))
        }
        LawId::Sea5 => {
            let (a, b, c) = (e("a")?, e("b")?, e("c")?);
            let ab = p.apply(a, b)?;
            let sum = (a + b).scale(0.5);
            Ok(max_of([
                dist(&p.apply(c, a)?, &p.apply(a, c)?)?,
                dist(&p.apply(c, b)?, &p.apply(b, c)?)?,
                dist(&p.apply(c, &ab)?, &p.apply(&ab, c)?)?,
                dist(&p.apply(c, &sum)?, &p.apply(&sum, c)?)?,
            ]))
        }
        LawId::ScalarLinearity => {
            let (a, b) = (e("a")?, e("b")?);
            let ab = p.apply(a, b)?;
            let mut worst = 0.0;
            for l in [0.0, 0.25, 0.5, 1.0, w.scalar("lambda")?] {
                let want = ab.scale(l);
                worst = max_of([
                    worst,
                    rel_residual(&p.apply(&a.scale(l), b)?, &want)?,
                    rel_residual(&p.apply(a, &b.scale(l))?, &want)?,
                ]);
            }
            Ok(worst)
        }
        LawId::ProductLeLeft => {
            let (a, b) = (e("a")?, e("b")?);
            let ab = p.apply(a, b)?;
            Ok(max_of([
                neg(order_gap(&ab, a)?),
                neg(min_eigenvalue(&ab)?),
                (max_eigenvalue(&ab)? - 1.0).max(0.0),
            ]))
        }
        LawId::MonotoneRight => {
            let (a, b, c) = (e("a")?, e("b")?, e("c")?);
            Ok(max_of([neg(order_gap(a, b)?), neg(order_gap(&p.apply(c, a)?, &p.apply(c, b)?)?)]))
        }
        LawId::SharpProps => {
            let (s, above, below) = (e("p")?, e("a")?, e("b")?);
            Ok(max_of([
                dist(&p.apply(s, above)?, s)?,
                dist(&p.apply(above, s)?, s)?,
                neg(order_gap(s, above)?),
                dist(&p.apply(s, below)?, below)?,
                neg(order_gap(below, s)?),
            ]))
        }
        LawId::FloorLimit => {
            let (a, r) = (e("a")?, e("r")?);
            let floor = floor_effect(a)?;
            let mut power = a.clone();
            let mut worst = dist(&floor, r)?;
            for _ in 0..6 {
                let next = p.apply(&power, &power)?;
                worst = max_of([worst, neg(order_gap(&next, &power)?)]);
                power = next;
            }
            Ok(max_of([worst, dist(&power, &floor)?]))
        }
        LawId::DyadicBound => {
            let a = e("a")?;
            let qs = dyadic_approximation(a, 8)?;
            let mut worst: f64 = 0.0;
            for (m, q) in qs.iter().enumerate() {
                let bound = 2f64.powi(-(m as i32));
                worst = max_of([worst, neg(order_gap(q, a)?), (dist(a, q)? - bound).max(0.0)]);
                if let Some(next) = qs.get(m + 1) {
                    worst = max_of([worst, neg(order_gap(q, next)?)]);
                }
            }
            Ok(worst)
        }
        LawId::SpectralRecon => {
            let a = e("a")?;
            let d = spectral_decompose(a, DEFAULT_GAP)?;
            let mut worst = dist(&d.reconstruct(), a)?;
            let pairs = d.pairs();
            for (i, (l, q)) in pairs.iter().enumerate() {
                worst = max_of([worst, dist(&seqprod_core::algebra::jordan_product(q, q)?, q)?]);
                for (m, r) in &pairs[i + 1..] {
                    worst = max_of([
                        worst,
                        norm(&seqprod_core::algebra::jordan_product(q, r)?)?,
                        (DEFAULT_GAP - (l - m)).max(0.0),
                    ]);
                }
            }
            Ok(worst)
        }
        LawId::FundamentalEq => {
            let (a, b) = (e("a")?, e("b")?);
            let qa = quadratic_operator(a)?;
            let lhs = quadratic_operator(&quadratic_rep(a, b)?)?;
            let rhs = qa.compose(&quadratic_operator(b)?)?.compose(&qa)?;
            Ok(lhs.distance(&rhs)? / lhs.op_norm()?.max(1.0))
        }
        LawId::CommuteEquiv => {
            let r = commutation_residuals(p, e("a")?, e("b")?)?;
            let verdicts = r.verdicts(COMMUTE_TOL);
            Ok(if !r.agree(COMMUTE_TOL) {
                1.0
            } else if verdicts[0] {
                max_of([r.sequential, r.quadratic, r.jordan, r.matrix.unwrap_or(0.0)])
            } else {
                0.0
            })
        }
        LawId::SelfDuality => {
            let (a, x, y) = (e("a")?, e("x")?, e("y")?);
            let mut worst = neg(trace_inner_product(x, y)?);
            if min_eigenvalue(a)? < -1e-10 {
                let witness = spectral_decompose(a, DEFAULT_GAP)?.projection_where(|l| l < 0.0);
                if !(trace_inner_product(a, &witness)? < -1e-10) {
                    worst = 1.0;
                }
            }
            Ok(worst)
        }
        LawId::Homogeneity => {
            let (a, b) = (e("a")?, e("b")?);
            let iso = homogeneity_iso_with(p, a, b)?;
            let mut worst = max_of([
                rel_residual(&iso.forward.apply(a)?, b)?,
                rel_residual(&iso.inverse.apply(b)?, a)?,
            ]);
            for k in 0..5 {
                let x = e(&format!("x{k}"))?;
                for image in [iso.forward.apply(x)?, iso.inverse.apply(x)?] {
                    worst = max_of([worst, neg(min_eigenvalue(&image)?) / norm(&image)?.max(1.0)]);
                }
            }
            Ok(worst)
        }
        LawId::PseudoInverse => {
            let q = e("q")?;
            let inv = pseudo_inverse(q)?;
            let ceil = ceiling_effect(q)?;
            Ok(max_of([dist(&p.apply(q, &inv)?, &ceil)?, dist(&p.apply(&inv, q)?, &ceil)?]))
        }
        LawId::Divide => {
            let (q, x) = (e("q")?, e("x")?);
            let qe = Effect::new(q.clone())?;
            let a = Effect::new(p.apply(q, x)?)?;
            let c = divide(p, &qe, &a)?;
            Ok(max_of([
                rel_residual(&p.apply(q, &c)?, &a)?,
                neg(order_gap(&c, &ceiling_effect(q)?)?),
            ]))
        }
        LawId::Invariance => {
            let (a, b) = (e("a")?, e("b")?);
            let kind = w.iso.ok_or_else(|| Error::Parse("INVARIANCE witness needs an iso".into()))?;
            let phi = make_order_iso(&alg, kind)?;
            rel_residual(&phi.apply(&p.apply(a, b)?)?, &p.apply(&phi.apply(a)?, &phi.apply(b)?)?)
        }
        LawId::Symmetry => {
            let (a, b, c) = (e("a")?, e("b")?, e("c")?);
            let lhs = trace_inner_product(&p.apply(a, b)?, c)?;
            let rhs = trace_inner_product(b, &p.apply(a, c)?)?;
            Ok((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0))
        }
        LawId::InvertibilityPres => {
            let (a, b) = (e("a")?, e("b")?);
            let lhs = inverse_pos(&p.apply(a, b)?, INVERSE_FLOOR)?;
            let rhs = p.apply(&inverse_pos(a, INVERSE_FLOOR)?, &inverse_pos(b, INVERSE_FLOOR)?)?;
            rel_residual(&lhs, &rhs)
        }
        LawId::QuadraticLaw => {
            let (a, b) = (e("a")?, e("b")?);
            let ab = p.apply(a, b)?;
            let lhs = multiplication_operator(p, &p.apply(&ab, &ab)?)?;
            let la = multiplication_operator(p, a)?;
            let rhs = la.compose(&multiplication_operator(p, &p.apply(b, b)?)?)?.compose(&la)?;
            Ok(lhs.distance(&rhs)? / lhs.op_norm()?.max(1.0))
        }
        LawId::ThetaStructure => {
            let (a, b) = (e("a")?, e("b")?);
            let std = SequentialProduct::standard(alg.clone());
            let theta = |q: &Element<f64>| theta_between(&std, p, q);
            let (ta, tb) = (theta(a)?, theta(b)?);
            let tab = theta(&std.apply(a, b)?)?;
            let mut worst = max_of([
                tab.distance(&ta.compose(&tb)?)?,
                tab.distance(&tb.compose(&ta)?)?,
                theta(&inverse_pos(a, INVERSE_FLOOR)?)?.distance(&ta.invert()?)?,
            ]);
            if let ProductSpec::Twisted(t) = p.spec() {
                worst = max_of([worst, ta.distance(&twist_conjugation(a, t)?)?]);
            }
            Ok(worst)
        }
    }
}
