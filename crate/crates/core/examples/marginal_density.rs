//! Marginal density of one coordinate of β, estimated and true.

use hemisphere_rc::estimator::{estimate_fbeta, marginal_density, marginal_density_of, EstimatorConfig};
use hemisphere_rc::simulator::{generate, DgpSpec};

fn main() -> hemisphere_rc::Result<()> {
    let (sample, oracle) = generate(&DgpSpec::model1(3, 2000, 3)?)?;
    let est = estimate_fbeta(&sample, &EstimatorConfig::default_for(3)?)?;
    println!("{:>6} {:>10} {:>10}", "b0", "estimate", "truth");
    for k in -8..=8 {
        let b0 = k as f64 / 10.0;
        let fhat = marginal_density(&est, &[0], &[b0], 4000, 7)?;
        let truth = marginal_density_of(|b| oracle.fbeta(b).unwrap(), 3, &[0], &[b0], 4000, 7)?;
        println!("{b0:>6.2} {fhat:>10.4} {truth:>10.4}");
    }
    Ok(())
}
