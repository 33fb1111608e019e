use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hemisphere_rc::bench::median;
use hemisphere_rc::estimator::{estimate_fbeta, identification_diagnostic, ChoiceSample, EstimatorConfig};
use hemisphere_rc::simulator::{generate, DgpSpec};
use hemisphere_rc::sphere::{build_quadrature, sample_uniform, surface_area, SpherePoint};

fn threshold() -> f64 {
    0.05 * surface_area(3).unwrap()
}

fn score(sample: &ChoiceSample, seed: u64) -> f64 {
    let est = estimate_fbeta(sample, &EstimatorConfig::default_for(3).unwrap()).unwrap();
    let quad = build_quadrature(3, 64, Some(seed)).unwrap();
    identification_diagnostic(&est, &quad).unwrap().violation_score
}

/// Coefficients uniform on the two polar caps of half-angle 0.5: an even law
/// whose support no hemisphere contains.
fn two_cap_sample(seed: u64) -> ChoiceSample {
    let (base, _) = generate(&DgpSpec::model1(3, 500, seed).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (y, x): (Vec<bool>, Vec<SpherePoint>) = base
        .x()
        .iter()
        .map(|xi| {
            let beta = loop {
                let u = sample_uniform(3, 1, rng.random()).unwrap().pop().unwrap();
                if u[2].abs() > 0.5f64.cos() {
                    break u;
                }
            };
            (xi.dot(&beta) >= 0.0, xi.clone())
        })
        .unzip();
    ChoiceSample::new(y, x).unwrap()
}

#[test]
fn model1_is_not_flagged() {
    for seed in 0..6 {
        let (s, _) = generate(&DgpSpec::model1(3, 500, seed).unwrap()).unwrap();
        let v = score(&s, seed);
        assert!(v < threshold(), "seed {seed}: {v}");
    }
}

#[test]
fn even_two_cap_law_is_flagged() {
    let scores: Vec<f64> = (0..6).map(|seed| score(&two_cap_sample(seed), seed)).collect();
    assert!(median(&scores) > threshold(), "{scores:?}");
}
