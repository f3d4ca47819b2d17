use seqprod_core::algebra::{
    jordan_product, order_unit_norm, random_effect, random_element, rng_from_seed, EffectProfile,
};
use seqprod_core::commutant::{bicommutant_basis, commutant_basis, simultaneous_diagonalize, span_residual};
use seqprod_core::spectral::{eigenvalues, floor_effect, is_sharp};
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

fn distinct(values: &[f64]) -> usize {
    let mut v = values.to_vec();
    v.dedup_by(|x, y| (*x - *y).abs() <= 1e-8);
    v.len()
}

#[test]
fn bicommutant_sits_between_s_and_its_commutant() {
    for alg in kinds() {
        for seed in 0..5 {
            let a: Element<f64> = random_effect(&alg, seed, EffectProfile::Generic).unwrap().into_element();
            let set = vec![a.clone(), jordan_product(&a, &a).unwrap()];
            let first = commutant_basis(&alg, &set).unwrap();
            let second = bicommutant_basis(&alg, &set).unwrap();
            for s in &set {
                assert!(span_residual(&second, s).unwrap() <= 1e-9);
            }
            for x in &second {
                assert!(span_residual(&first, x).unwrap() <= 1e-9, "{alg}");
            }
            assert_eq!(second.len(), distinct(&eigenvalues(&a).unwrap()), "{alg}");
        }
    }
}

#[test]
fn commutant_is_closed_under_jordan_product_and_complement() {
    let mut rng = rng_from_seed(12);
    for alg in kinds() {
        let s: Element<f64> = random_effect(&alg, 3, EffectProfile::Sharp).unwrap().into_element();
        let basis = commutant_basis(&alg, &[s]).unwrap();
        for _ in 0..10 {
            let pick = |rng: &mut _| {
                let w: Vec<f64> = random_element::<f64>(&AlgebraDescriptor::real(basis.len().max(1)), rng).coords();
                basis.iter().zip(&w).fold(Element::zero(&alg), |acc, (b, &c)| acc.add_scaled(c, b))
            };
            let x = pick(&mut rng);
            let y = pick(&mut rng);
            let scale = 1f64.max(order_unit_norm(&x).unwrap() * order_unit_norm(&y).unwrap());
            assert!(span_residual(&basis, &jordan_product(&x, &y).unwrap()).unwrap() <= 1e-9 * scale);
            assert!(span_residual(&basis, &x.complement()).unwrap() <= 1e-9 * scale.max(1.0));
        }
    }
}

#[test]
fn function_model_turns_products_pointwise() {
    for alg in kinds() {
        let p = SequentialProduct::standard(alg.clone());
        for seed in 0..10 {
            let a: Effect<f64> = random_effect(&alg, seed, EffectProfile::Generic).unwrap();
            let a2 = jordan_product(&a, &a).unwrap();
            let set = vec![a.element().clone(), a2.clone(), a.complement().into_element()];
            let model = simultaneous_diagonalize(&alg, &set).unwrap();
            assert_eq!(model.points(), distinct(&eigenvalues(&a).unwrap()));
            let total = model.frame().iter().fold(Element::zero(&alg), |acc, f| &acc + f);
            assert!(dist(&total, &Element::identity(&alg)) <= 1e-9);
            for (i, f) in model.frame().iter().enumerate() {
                assert!(is_sharp(f, 1e-9).unwrap());
                for g in &model.frame()[i + 1..] {
                    assert!(order_unit_norm(&jordan_product(f, g).unwrap()).unwrap() <= 1e-9);
                }
            }
            let fa = model.to_function(&a).unwrap();
            let fa2 = model.to_function(&a2).unwrap();
            let seq = model.to_function(&p.apply(&a, &a2).unwrap()).unwrap();
            for k in 0..model.points() {
                assert!((fa2[k] - fa[k] * fa[k]).abs() <= 1e-8);
                assert!((seq[k] - fa[k] * fa2[k]).abs() <= 1e-8);
            }
            assert!(dist(&model.from_function(&fa).unwrap(), &a) <= 1e-9);
            assert!(model.membership_residual(&a2).unwrap() <= 1e-9);
        }
    }
}

#[test]
fn floor_is_a_pointwise_threshold() {
    let alg = AlgebraDescriptor::complex(4);
    let a: Element<f64> = Element::diagonal(alg.clone(), &[1.0, 1.0, 0.4, 0.0]).unwrap();
    let model = simultaneous_diagonalize(&alg, std::slice::from_ref(&a)).unwrap();
    let fa = model.to_function(&a).unwrap();
    let ff = model.to_function(&floor_effect(&a).unwrap()).unwrap();
    for (x, y) in fa.iter().zip(ff) {
        assert_eq!(y > 0.5, *x >= 1.0 - 1e-9);
    }
}
