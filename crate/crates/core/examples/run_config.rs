//! Load a TOML run configuration and drive the same pipeline as the
//! `estimate` subcommand.

use hemisphere_rc::config::RunConfig;
use hemisphere_rc::estimator::estimate_fbeta;
use hemisphere_rc::simulator::generate;

const CONFIG: &str = r#"
seed = 21

[dgp]
model = "model2"
n = 800

[estimator]
truncation = 3
kernel = { family = "riesz", s = 2.0, l = 3 }

[grid]
resolution = 16
"#;

fn main() -> hemisphere_rc::Result<()> {
    let cfg = RunConfig::from_toml_str(CONFIG)?;
    let (sample, _) = generate(&cfg.dgp_spec()?)?;
    let est = estimate_fbeta(&sample, &cfg.estimator_config(sample.len(), sample.dim())?)?;
    let grid = cfg.grid(sample.dim())?;
    let values = est.evaluate_many(grid.points());
    let (best, v) = grid
        .points()
        .iter()
        .zip(&values)
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    println!("{} grid points, largest value {v:.4} at {:+.3?}", grid.len(), best.coords());
    println!("--- effective configuration ---\n{}", cfg.to_toml_string());
    Ok(())
}
