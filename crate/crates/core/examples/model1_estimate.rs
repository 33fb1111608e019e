//! Estimate the coefficient density of Model 1 and compare it with the truth
//! along a meridian through the mode.

use hemisphere_rc::estimator::{estimate_fbeta, EstimatorConfig};
use hemisphere_rc::simulator::{generate, DgpSpec};

fn main() -> hemisphere_rc::Result<()> {
    let spec = DgpSpec::model1(3, 2000, 1)?;
    let (sample, oracle) = generate(&spec)?;
    let est = estimate_fbeta(&sample, &EstimatorConfig::default_for(3)?)?;
    println!("N = {}, trimming level {:.4}", sample.len(), est.trimming_level());
    println!("{:>8} {:>10} {:>10}", "angle", "estimate", "truth");
    for k in -8..=8 {
        let a = k as f64 * 0.1;
        let b = [a.sin(), 0.0, a.cos()];
        println!("{a:>8.2} {:>10.4} {:>10.4}", est.evaluate(&b), oracle.fbeta(&b)?);
    }
    Ok(())
}
