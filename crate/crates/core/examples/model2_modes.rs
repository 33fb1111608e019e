//! Recover the two modes of the Model 2 mixture by grid search and local
//! refinement.

use hemisphere_rc::estimator::{estimate_fbeta, EstimatorConfig};
use hemisphere_rc::grid::{find_modes, EvaluationGrid};
use hemisphere_rc::simulator::{generate, DgpSpec};

fn main() -> hemisphere_rc::Result<()> {
    let spec = DgpSpec::model2(1000, 5)?;
    let (sample, oracle) = generate(&spec)?;
    let est = estimate_fbeta(&sample, &EstimatorConfig::default_for(3)?)?;
    let grid = EvaluationGrid::equal_area(24)?;
    let truth = oracle.fbeta_modes()?;
    for (p, v) in find_modes(|b| est.evaluate(b), &grid, 0.25, 0.3)? {
        let err = truth.iter().map(|t| p.angle_to(t)).fold(f64::INFINITY, f64::min);
        println!("mode {:+.3?}  f̂ = {v:.4}  nearest true mode at {err:.3} rad", p.coords());
    }
    for t in &truth {
        println!("true mode {:+.3?}  f = {:.4}", t.coords(), oracle.fbeta(t)?);
    }
    Ok(())
}
