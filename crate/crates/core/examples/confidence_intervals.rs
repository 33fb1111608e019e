//! Pointwise standard errors and confidence intervals for f̂_β.

use hemisphere_rc::estimator::{estimate_fbeta, EstimatorConfig};
use hemisphere_rc::simulator::{generate, DgpSpec};

fn main() -> hemisphere_rc::Result<()> {
    let (sample, oracle) = generate(&DgpSpec::model1(3, 1000, 2)?)?;
    let est = estimate_fbeta(&sample, &EstimatorConfig::default_for(3)?)?;
    for b in [[0.0, 0.0, 1.0], [0.3, 0.0, 0.954], [0.0, 0.5, 0.866]] {
        let (lo, hi) = est.confidence_interval(&b, 0.95)?;
        println!(
            "b = {b:?}  f̂ = {:.4}  s_N/√N = {:.4}  95% CI [{lo:.4}, {hi:.4}]  truth {:.4}",
            est.evaluate(&b),
            est.standard_error(&b)? / (sample.len() as f64).sqrt(),
            oracle.fbeta(&b)?
        );
    }
    Ok(())
}
