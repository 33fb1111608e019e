//! Run configuration read from TOML.
//!
//! Every key is optional; omitted keys take the defaults of the Model 1
//! experiment. The README lists every key.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bench::{BenchConfig, TruncationRule};
use crate::error::{Error, Result};
use crate::estimator::{rate_rule_truncation, EstimatorConfig};
use crate::grid::EvaluationGrid;
use crate::harmonics::{KernelFamily, KernelSpec};
use crate::simulator::{CoefficientLaw, DgpSpec, Gaussian, GaussianMixture};
use crate::sphere::normalize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Model1,
    Model2,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentConfig {
    pub weight: f64,
    pub mean: Vec<f64>,
    pub cov: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DgpConfig {
    pub model: Model,
    pub d: usize,
    pub n: usize,
    pub covariate_mean: Option<Vec<f64>>,
    pub covariate_cov: Option<Vec<Vec<f64>>>,
    pub fixed_coefficient: f64,
    pub components: Vec<ComponentConfig>,
}

impl Default for DgpConfig {
    fn default() -> Self {
        DgpConfig {
            model: Model::Model1,
            d: 3,
            n: 500,
            covariate_mean: None,
            covariate_cov: None,
            fixed_coefficient: 1.0,
            components: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruncationMode {
    Fixed,
    Rate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EstimatorSection {
    pub truncation_rule: TruncationMode,
    pub truncation: usize,
    pub smoothness: f64,
    pub rate_constant: f64,
    pub trimming_exponent: f64,
    pub kernel: KernelFamily,
    pub fx_truncation: usize,
    pub fx_kernel: Option<KernelFamily>,
    pub confidence_level: f64,
}

impl Default for EstimatorSection {
    fn default() -> Self {
        EstimatorSection {
            truncation_rule: TruncationMode::Fixed,
            truncation: 3,
            smoothness: 2.0,
            rate_constant: 1.0,
            trimming_exponent: 2.0,
            kernel: KernelFamily::Riesz { s: 2.0, l: 3 },
            fx_truncation: 10,
            fx_kernel: None,
            confidence_level: 0.95,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub resolution: usize,
    pub points: Option<Vec<Vec<f64>>>,
    pub neighbour_radius: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection {
            resolution: 32,
            points: None,
            neighbour_radius: 0.3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DiagnosticSection {
    pub quadrature_resolution: usize,
}

impl Default for DiagnosticSection {
    fn default() -> Self {
        DiagnosticSection {
            quadrature_resolution: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchSection {
    pub sizes: Vec<usize>,
    pub replications: usize,
    pub quadrature_resolution: usize,
}

impl Default for BenchSection {
    fn default() -> Self {
        BenchSection {
            sizes: vec![250, 500, 1000, 2000],
            replications: 50,
            quadrature_resolution: 48,
        }
    }
}

/// Complete configuration of a run.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub dgp: DgpConfig,
    pub estimator: EstimatorSection,
    pub grid: GridSection,
    pub diagnostic: DiagnosticSection,
    pub bench: BenchSection,
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(m) => Error::config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("configuration is serializable")
    }

    pub fn dgp_spec(&self) -> Result<DgpSpec> {
        let c = &self.dgp;
        let k = c.d.saturating_sub(1);
        match c.model {
            Model::Model1 => DgpSpec::model1(c.d, c.n, self.seed),
            Model::Model2 => {
                if c.d != 3 {
                    return Err(Error::config(format!("model2 is defined for d = 3, got d = {}", c.d)));
                }
                DgpSpec::model2(c.n, self.seed)
            }
            Model::Custom => {
                let mean = c.covariate_mean.clone().unwrap_or_else(|| vec![0.0; k]);
                let cov = match &c.covariate_cov {
                    Some(cov) => cov.clone(),
                    None => Gaussian::isotropic(k.max(1), 2.0)?.covariance(),
                };
                let covariates = Gaussian::new(mean, cov)?;
                if c.components.is_empty() {
                    return Err(Error::config("custom model needs at least one [[dgp.components]] entry"));
                }
                let components = c
                    .components
                    .iter()
                    .map(|m| Ok((m.weight, Gaussian::new(m.mean.clone(), m.cov.clone())?)))
                    .collect::<Result<Vec<_>>>()?;
                let coefficients = CoefficientLaw::FixedLast {
                    mixture: GaussianMixture::new(components)?,
                    value: c.fixed_coefficient,
                };
                DgpSpec::new(c.d, covariates, coefficients, c.n, self.seed)
            }
        }
    }

    /// T_N for a sample of size `n` under the configured rule.
    pub fn truncation_for(&self, n: usize, d: usize) -> usize {
        let e = &self.estimator;
        match e.truncation_rule {
            TruncationMode::Fixed => e.truncation,
            TruncationMode::Rate => {
                rate_rule_truncation(n, d, e.smoothness, e.trimming_exponent, e.rate_constant)
            }
        }
    }

    pub fn estimator_config(&self, n: usize, d: usize) -> Result<EstimatorConfig> {
        let e = &self.estimator;
        if !(e.confidence_level > 0.0 && e.confidence_level < 1.0) {
            return Err(Error::config(format!(
                "confidence level must lie in (0, 1), got {}",
                e.confidence_level
            )));
        }
        let fx = KernelSpec::new(e.fx_kernel.unwrap_or(e.kernel), e.fx_truncation, d)?;
        EstimatorConfig::new(self.truncation_for(n, d), e.trimming_exponent, e.kernel, fx)
    }

    pub fn truncation_rule(&self) -> TruncationRule {
        let e = &self.estimator;
        match e.truncation_rule {
            TruncationMode::Fixed => TruncationRule::Fixed {
                truncation: e.truncation,
            },
            TruncationMode::Rate => TruncationRule::Rate {
                smoothness: e.smoothness,
                constant: e.rate_constant,
            },
        }
    }

    pub fn bench_config(&self) -> BenchConfig {
        BenchConfig {
            sizes: self.bench.sizes.clone(),
            replications: self.bench.replications,
            quadrature_resolution: self.bench.quadrature_resolution,
            truncation: self.truncation_rule(),
        }
    }

    /// The output grid for dimension `d`: explicit points when configured,
    /// otherwise the built-in grid at the configured resolution.
    pub fn grid(&self, d: usize) -> Result<EvaluationGrid> {
        match &self.grid.points {
            Some(points) => {
                let pts = points
                    .iter()
                    .map(|p| {
                        if p.len() != d {
                            return Err(Error::config(format!(
                                "grid point {p:?} has dimension {}, data has d = {d}",
                                p.len()
                            )));
                        }
                        normalize(p)
                    })
                    .collect::<Result<Vec<_>>>()?;
                EvaluationGrid::from_points(pts, self.grid.neighbour_radius)
            }
            None => EvaluationGrid::for_dim(d, self.grid.resolution),
        }
    }
}
