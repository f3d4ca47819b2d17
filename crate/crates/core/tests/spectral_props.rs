use seqprod_core::algebra::{
    jordan_product, leq, quadratic_rep, order_unit_norm, random_effect, random_projection, rng_from_seed, EffectProfile,
};
use seqprod_core::seqprod::{divide, seq_product};
use seqprod_core::spectral::{
    ceiling_effect, dyadic_approximation, floor_effect, is_sharp, pseudo_inverse, spectral_decompose, DEFAULT_GAP,
};
use seqprod_core::{AlgebraDescriptor, Effect, Element, SequentialProduct};

fn kinds() -> Vec<AlgebraDescriptor> {
    vec![
        AlgebraDescriptor::real(4),
        AlgebraDescriptor::complex(4),
        AlgebraDescriptor::quaternionic(3),
        AlgebraDescriptor::spin(5),
        AlgebraDescriptor::direct_sum(vec![AlgebraDescriptor::complex(2), AlgebraDescriptor::real(3)]),
    ]
}

fn dist(x: &Element<f64>, y: &Element<f64>) -> f64 {
    order_unit_norm(&(x - y)).unwrap()
}

#[test]
fn decompositions_reconstruct_with_orthogonal_idempotents() {
    for alg in kinds() {
        for seed in 0..100 {
            let a: Effect<f64> = random_effect(&alg, seed, EffectProfile::Generic).unwrap();
            let d = spectral_decompose(&a, DEFAULT_GAP).unwrap();
            assert!(dist(&d.reconstruct(), &a) <= 1e-9);
            let values = d.eigenvalues();
            assert!(values.windows(2).all(|w| w[0] - w[1] > DEFAULT_GAP));
            for (i, (_, p)) in d.pairs().iter().enumerate() {
                assert!(dist(&jordan_product(p, p).unwrap(), p) <= 1e-9);
                for (_, q) in &d.pairs()[i + 1..] {
                    assert!(order_unit_norm(&jordan_product(p, q).unwrap()).unwrap() <= 1e-9);
                }
            }
        }
    }
}

#[test]
fn iterated_squares_decrease_to_the_floor() {
    let alg = AlgebraDescriptor::complex(4);
    let mut rng = rng_from_seed(2);
    for _ in 0..20 {
        // a = p + ½ q with orthogonal projections p, q
        let r: Element<f64> = random_projection(&alg, 3, &mut rng).unwrap();
        let d = spectral_decompose(&r, DEFAULT_GAP).unwrap();
        let one_space = d.projection_where(|l| l > 0.5);
        let p: Element<f64> = random_projection(&alg, 1, &mut rng).unwrap();
        let p = quadratic_rep(&one_space, &p).unwrap();
        let p = ceiling_effect(&p).unwrap();
        let q = &one_space - &p;
        let a = p.add_scaled(0.5, &q);
        let mut power = a.clone();
        for _ in 0..6 {
            let next = jordan_product(&power, &power).unwrap();
            assert!(leq(&next, &power, 1e-10).unwrap());
            power = next;
        }
        let floor = floor_effect(&a).unwrap();
        assert!(dist(&power, &floor) <= 1e-9);
        assert!(dist(&floor, &p) <= 1e-9);
    }
}

#[test]
fn floor_and_ceiling_bracket_effects() {
    for alg in kinds() {
        for seed in 0..30 {
            let a: Effect<f64> = random_effect(&alg, seed, EffectProfile::Singular).unwrap();
            let f = floor_effect(&a).unwrap();
            let c = ceiling_effect(&a).unwrap();
            assert!(is_sharp(&f, 1e-9).unwrap() && is_sharp(&c, 1e-9).unwrap());
            assert!(leq(&f, &a, 1e-9).unwrap() && leq(&a, &c, 1e-9).unwrap());
        }
    }
}

#[test]
fn ceiling_annihilation() {
    // b∘a = 0 on orthogonal supports forces b∘⌈a⌉ = 0
    let alg = AlgebraDescriptor::complex(4);
    let p = SequentialProduct::standard(alg.clone());
    let mut rng = rng_from_seed(8);
    for seed in 0..30 {
        let r: Element<f64> = random_projection(&alg, 2, &mut rng).unwrap();
        let x: Effect<f64> = random_effect(&alg, seed, EffectProfile::Generic).unwrap();
        let y: Effect<f64> = random_effect(&alg, seed + 500, EffectProfile::Generic).unwrap();
        let a = Effect::new(quadratic_rep(&r, &x).unwrap()).unwrap();
        let b = Effect::new(quadratic_rep(&r.complement(), &y).unwrap()).unwrap();
        let ba = seq_product(&p, &b, &a).unwrap();
        assert!(order_unit_norm(&ba).unwrap() <= 1e-10);
        let ceil = Effect::new(ceiling_effect(&a).unwrap()).unwrap();
        assert!(order_unit_norm(&seq_product(&p, &b, &ceil).unwrap()).unwrap() <= 1e-8);
    }
}

#[test]
fn dyadic_approximation_bounds() {
    for alg in kinds() {
        for seed in 0..50 {
            let a: Effect<f64> = random_effect(&alg, seed, EffectProfile::Generic).unwrap();
            let qs = dyadic_approximation(&a, 8).unwrap();
            assert_eq!(qs.len(), 8);
            for (m, q) in qs.iter().enumerate() {
                let m = m as i32 + 1;
                assert!(leq(q, &a, 1e-9).unwrap());
                assert!(dist(q, &a) <= 2f64.powi(1 - m));
                if let Some(next) = qs.get(m as usize) {
                    assert!(leq(q, next, 1e-9).unwrap());
                }
            }
        }
    }
}

#[test]
fn pseudo_inverse_and_division() {
    for alg in kinds() {
        let p = SequentialProduct::standard(alg.clone());
        for seed in 0..30 {
            let b: Effect<f64> = random_effect(&alg, seed, EffectProfile::Singular).unwrap();
            let inv = pseudo_inverse(&b).unwrap();
            let prod = p.apply(&b, &inv).unwrap();
            assert!(dist(&prod, &ceiling_effect(&b).unwrap()) <= 1e-8, "{alg}");
            let x: Effect<f64> = random_effect(&alg, seed + 99, EffectProfile::Generic).unwrap();
            let a = seq_product(&p, &b, &x).unwrap();
            let c = divide(&p, &b, &a).unwrap();
            assert!(dist(&seq_product(&p, &b, &c).unwrap(), &a) <= 1e-8);
            assert!(leq(&c, &ceiling_effect(&b).unwrap(), 1e-9).unwrap());
        }
    }
}
