//! Monte-Carlo error benchmarks against simulator ground truth.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimator::{estimate_fbeta, rate_rule_truncation, EstimatorConfig};
use crate::simulator::{generate, DgpSpec};
use crate::sphere::{build_quadrature, QuadratureRule};

/// L1, L2 and sup-norm distances on the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorNorms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

/// Distances between `estimate` and `truth` measured by `quad`; the sup
/// norm is taken over the quadrature nodes.
pub fn error_norms<F, G>(estimate: F, truth: G, quad: &QuadratureRule) -> ErrorNorms
where
    F: Fn(&[f64]) -> f64 + Sync,
    G: Fn(&[f64]) -> f64 + Sync,
{
    let diffs: Vec<f64> = (0..quad.len())
        .into_par_iter()
        .map(|j| {
            let b = quad.node(j);
            estimate(b) - truth(b)
        })
        .collect();
    let w = quad.weights();
    ErrorNorms {
        l1: diffs.iter().zip(w).map(|(e, w)| w * e.abs()).sum(),
        l2: diffs.iter().zip(w).map(|(e, w)| w * e * e).sum::<f64>().sqrt(),
        linf: diffs.iter().fold(0.0, |m, e| m.max(e.abs())),
    }
}

/// How T_N is chosen for each sample size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum TruncationRule {
    Fixed { truncation: usize },
    Rate { smoothness: f64, constant: f64 },
}

impl TruncationRule {
    pub fn truncation(&self, n: usize, d: usize, trimming_exponent: f64) -> usize {
        match *self {
            TruncationRule::Fixed { truncation } => truncation,
            TruncationRule::Rate {
                smoothness,
                constant,
            } => rate_rule_truncation(n, d, smoothness, trimming_exponent, constant),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub replications: usize,
    pub quadrature_resolution: usize,
    pub truncation: TruncationRule,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return Err(Error::config("benchmark sizes must be a nonempty list of positive N"));
        }
        if self.replications == 0 {
            return Err(Error::config("benchmark needs at least one replication"));
        }
        Ok(())
    }
}

/// Errors of one replication.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub replication: usize,
    pub truncation: usize,
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeSummary {
    pub n: usize,
    pub truncation: usize,
    pub median_l1: f64,
    pub median_l2: f64,
    pub median_linf: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchSummary {
    pub sizes: Vec<SizeSummary>,
    /// Least-squares slope of log median L2 against log N; absent with
    /// fewer than two sizes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
}

/// Seed of replication `rep` at sample size `n`, derived from `base` by
/// SplitMix64 so streams of different cells do not overlap in practice.
pub fn replication_seed(base: u64, n: usize, rep: usize) -> u64 {
    let mut z = base
        .wrapping_add((n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add((rep as u64).wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Least-squares slope of log(y) on log(x).
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() < 2 || x.len() != y.len() {
        return None;
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / lx.len() as f64;
    let my = ly.iter().sum::<f64>() / ly.len() as f64;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Runs every (N, replication) cell in parallel. Replication seeds come from
/// [`replication_seed`] with the seed of `spec`.
pub fn run_bench(
    spec: &DgpSpec,
    estimator: &EstimatorConfig,
    bench: &BenchConfig,
) -> Result<(Vec<BenchRecord>, BenchSummary)> {
    bench.validate()?;
    let d = spec.dim();
    let quad = build_quadrature(d, bench.quadrature_resolution, Some(spec.seed()))?;
    let oracle = spec.oracle();
    oracle.fbeta(quad.node(0))?;
    let cells: Vec<(usize, usize)> = bench
        .sizes
        .iter()
        .flat_map(|&n| (0..bench.replications).map(move |r| (n, r)))
        .collect();
    let records = cells
        .par_iter()
        .map(|&(n, rep)| {
            let t = bench.truncation.truncation(n, d, estimator.trimming_exponent());
            let cfg = estimator.with_truncation(t)?;
            let rep_spec = spec
                .with_sample_size(n)?
                .with_seed(replication_seed(spec.seed(), n, rep));
            let (sample, _) = generate(&rep_spec)?;
            let est = estimate_fbeta(&sample, &cfg)?;
            let e = error_norms(|b| est.evaluate(b), |b| oracle.fbeta(b).unwrap_or(0.0), &quad);
            Ok(BenchRecord {
                n,
                replication: rep,
                truncation: t,
                l1: e.l1,
                l2: e.l2,
                linf: e.linf,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sizes: Vec<SizeSummary> = bench
        .sizes
        .iter()
        .map(|&n| {
            let cell: Vec<&BenchRecord> = records.iter().filter(|r| r.n == n).collect();
            let pick = |f: fn(&BenchRecord) -> f64| median(&cell.iter().map(|r| f(r)).collect::<Vec<_>>());
            SizeSummary {
                n,
                truncation: cell[0].truncation,
                median_l1: pick(|r| r.l1),
                median_l2: pick(|r| r.l2),
                median_linf: pick(|r| r.linf),
            }
        })
        .collect();
    let ns: Vec<f64> = sizes.iter().map(|s| s.n as f64).collect();
    let l2: Vec<f64> = sizes.iter().map(|s| s.median_l2).collect();
    let slope = log_log_slope(&ns, &l2);
    Ok((records, BenchSummary { sizes, slope }))
}
