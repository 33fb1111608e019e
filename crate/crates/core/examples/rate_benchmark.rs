//! Monte-Carlo L2 error of f̂_β across sample sizes, with the log-log slope
//! of the median error.

use hemisphere_rc::bench::{run_bench, BenchConfig, TruncationRule};
use hemisphere_rc::estimator::EstimatorConfig;
use hemisphere_rc::simulator::DgpSpec;

fn main() -> hemisphere_rc::Result<()> {
    let spec = DgpSpec::model1(3, 500, 77)?;
    let bench = BenchConfig {
        sizes: vec![250, 500, 1000],
        replications: 10,
        quadrature_resolution: 32,
        truncation: TruncationRule::Fixed { truncation: 3 },
    };
    let (_, summary) = run_bench(&spec, &EstimatorConfig::default_for(3)?, &bench)?;
    for s in &summary.sizes {
        println!("N = {:>5}  T = {}  median L2 = {:.4}", s.n, s.truncation, s.median_l2);
    }
    if let Some(slope) = summary.slope {
        println!("slope {slope:.3}");
    }
    Ok(())
}
