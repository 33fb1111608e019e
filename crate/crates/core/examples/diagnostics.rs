//! The identification diagnostic on data that satisfy the hemisphere-support
//! restriction and on data from a symmetric coefficient law that do not.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hemisphere_rc::estimator::{estimate_fbeta, identification_diagnostic, ChoiceSample, EstimatorConfig};
use hemisphere_rc::simulator::{generate, DgpSpec};
use hemisphere_rc::sphere::{build_quadrature, sample_uniform, surface_area};

fn main() -> hemisphere_rc::Result<()> {
    let cfg = EstimatorConfig::default_for(3)?;
    let quad = build_quadrature(3, 64, Some(0))?;
    let threshold = 0.05 * surface_area(3)?;
    let (sample, _) = generate(&DgpSpec::model1(3, 500, 4)?)?;

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut y = Vec::new();
    for xi in sample.x() {
        let beta = loop {
            let u = sample_uniform(3, 1, rng.random())?.remove(0);
            if u[2].abs() > 0.5f64.cos() {
                break u;
            }
        };
        y.push(xi.dot(&beta) >= 0.0);
    }
    let symmetric = ChoiceSample::new(y, sample.x().to_vec())?;

    for (name, s) in [("model 1", &sample), ("two polar caps", &symmetric)] {
        let r = identification_diagnostic(&estimate_fbeta(s, &cfg)?, &quad)?;
        println!(
            "{name:>15}: mass ± = {:.3}/{:.3}  violation {:.3} (threshold {threshold:.3}) {}",
            r.hemisphere_mass_plus,
            r.hemisphere_mass_minus,
            r.violation_score,
            if r.violation_score > threshold { "FLAGGED" } else { "ok" }
        );
    }
    Ok(())
}
