//! Seeded random elements, effects and projections.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{jordan, quadratic, AlgebraDescriptor, Effect, Element};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectral::{eigenvalues, spectral_decompose, DEFAULT_GAP};

/// Portable seeded generator used throughout the crate.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of the spectrum requested from [`random_effect`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EffectProfile {
    /// Spectrum spread over a random sub-interval of `[0.05, 0.95]`.
    Generic,
    /// Spectrum stretched to exactly `[0.05, 0.95]`.
    Invertible,
    /// Compressed by a proper random projection, which becomes the ceiling.
    Singular,
    /// A random projection.
    Sharp,
}

impl fmt::Display for EffectProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EffectProfile::Generic => "generic",
            EffectProfile::Invertible => "invertible",
            EffectProfile::Singular => "singular",
            EffectProfile::Sharp => "sharp",
        })
    }
}

impl FromStr for EffectProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(EffectProfile::Generic),
            "invertible" => Ok(EffectProfile::Invertible),
            "singular" => Ok(EffectProfile::Singular),
            "sharp" => Ok(EffectProfile::Sharp),
            other => Err(Error::Parse(format!("unknown effect profile `{other}`"))),
        }
    }
}

const SPECTRUM_LO: f64 = 0.05;
const SPECTRUM_HI: f64 = 0.95;

fn gaussian<T: Scalar>(rng: &mut impl Rng) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

/// Self-adjoint element with i.i.d. standard Gaussian coordinates.
pub fn random_element<T: Scalar>(algebra: &AlgebraDescriptor, rng: &mut impl Rng) -> Element<T> {
    let coords: Vec<T> = (0..algebra.real_dimension()).map(|_| gaussian(rng)).collect();
    Element::from_coords(algebra, &coords).expect("dimension matches")
}

/// `x*x` for a Gaussian `x`.
pub fn random_positive<T: Scalar>(algebra: &AlgebraDescriptor, rng: &mut impl Rng) -> Element<T> {
    let x = random_element(algebra, rng);
    jordan(&x, &x)
}

/// Random projection of the given Jordan rank: the sum of the top `rank`
/// spectral idempotents of a Gaussian element.
pub fn random_projection<T: Scalar>(algebra: &AlgebraDescriptor, rank: usize, rng: &mut impl Rng) -> Result<Element<T>> {
    if rank > algebra.rank() {
        return Err(Error::Precondition(format!("{algebra} has rank {}, asked for {rank}", algebra.rank())));
    }
    let x: Element<T> = random_element(algebra, rng);
    let dec = spectral_decompose(&x, T::lit(DEFAULT_GAP))?;
    // Gaussian samples have simple spectrum almost surely; a merged cluster
    // just contributes its full rank.
    let mut p = Element::zero(algebra);
    let mut taken = 0;
    for (_, q) in dec.pairs() {
        if taken >= rank {
            break;
        }
        let r = super::inner(q, q).round().to_usize().unwrap_or(1).max(1);
        p = &p + q;
        taken += r;
    }
    Ok(p)
}

/// Deterministic random effect for `(algebra, seed, profile)`.
pub fn random_effect<T: Scalar>(algebra: &AlgebraDescriptor, seed: u64, profile: EffectProfile) -> Result<Effect<T>> {
    random_effect_with(algebra, profile, &mut rng_from_seed(seed))
}

pub fn random_effect_with<T: Scalar>(
    algebra: &AlgebraDescriptor,
    profile: EffectProfile,
    rng: &mut impl Rng,
) -> Result<Effect<T>> {
    algebra.validate()?;
    let rank = algebra.rank();
    let element = match profile {
        EffectProfile::Invertible => stretched(algebra, SPECTRUM_LO, SPECTRUM_HI, rng)?,
        EffectProfile::Generic => {
            let lo = rng.gen_range(SPECTRUM_LO..0.35);
            let hi = rng.gen_range(0.65..SPECTRUM_HI);
            stretched(algebra, lo, hi, rng)?
        }
        EffectProfile::Singular => {
            if rank < 2 {
                Element::zero(algebra)
            } else {
                let p = random_projection(algebra, rng.gen_range(1..rank), rng)?;
                let g = stretched(algebra, SPECTRUM_LO, SPECTRUM_HI, rng)?;
                quadratic(&p, &g)
            }
        }
        EffectProfile::Sharp => {
            let r = if rank < 2 { rng.gen_range(0..=rank) } else { rng.gen_range(1..rank) };
            random_projection(algebra, r, rng)?
        }
    };
    Ok(Effect::new_unchecked(element))
}

/// Gaussian sample mapped affinely so its spectrum spans `[lo, hi]`.
fn stretched<T: Scalar>(algebra: &AlgebraDescriptor, lo: f64, hi: f64, rng: &mut impl Rng) -> Result<Element<T>> {
    let x: Element<T> = random_element(algebra, rng);
    let vals = eigenvalues(&x)?;
    let (top, bottom) = (vals[0], vals[vals.len() - 1]);
    let one = Element::identity(algebra);
    if top - bottom <= T::lit(1e-6) {
        return Ok(one.scale(T::lit(rng.gen_range(lo..=hi))));
    }
    let alpha = T::lit(hi - lo) / (top - bottom);
    let beta = T::lit(lo) - alpha * bottom;
    Ok(x.scale(alpha).add_scaled(beta, &one))
}
