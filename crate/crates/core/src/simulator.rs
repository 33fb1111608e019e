//! Simulated binary choice data with known random-coefficient densities.
//!
//! Raw covariates are X = (1, X̃) with X̃ Gaussian on R^{d-1}. Raw
//! coefficients are β = (β_r, v) where β_r follows a Gaussian mixture on
//! R^{d-1} and the last coordinate is fixed at v ≠ 0. Outcomes are
//! y = 1{X'β ≥ 0}; X is then mapped to X/‖X‖ ∈ H^+.
//!
//! Both normalised laws have closed-form sphere densities. For a point b
//! with b_last of the same sign as v, u = b_r/b_last follows the law of
//! β_r/v and
//!
//! ```text
//! f_β(b) = |v|^{d-1} f_{β_r}(v·u) / |b_last|^d,
//! ```
//!
//! and likewise f_X(x) = f_X̃(x_r/x_0) / x_0^d on x_0 > 0.

use std::f64::consts::PI;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimator::ChoiceSample;
use crate::grid::refine_mode;
use crate::sphere::{normalize, SpherePoint};

/// A nondegenerate multivariate normal law.
#[derive(Debug, Clone)]
pub struct Gaussian {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
    chol: Cholesky<f64, Dyn>,
    log_norm: f64,
}

impl Gaussian {
    pub fn new(mean: Vec<f64>, cov: Vec<Vec<f64>>) -> Result<Self> {
        let k = mean.len();
        if k == 0 {
            return Err(Error::config("Gaussian needs dimension >= 1"));
        }
        if cov.len() != k || cov.iter().any(|row| row.len() != k) {
            return Err(Error::config(format!("covariance must be {k}x{k}")));
        }
        let cov = DMatrix::from_fn(k, k, |i, j| cov[i][j]);
        let scale = cov.amax().max(f64::MIN_POSITIVE);
        if (&cov - cov.transpose()).amax() > 1e-12 * scale {
            return Err(Error::config("covariance is not symmetric"));
        }
        if cov.iter().chain(mean.iter()).any(|v| !v.is_finite()) {
            return Err(Error::config("Gaussian parameters must be finite"));
        }
        let chol = Cholesky::new(cov.clone())
            .ok_or_else(|| Error::config("covariance is not positive definite"))?;
        let log_det: f64 = chol.l().diagonal().iter().map(|v| 2.0 * v.ln()).sum();
        let log_norm = -0.5 * (k as f64 * (2.0 * PI).ln() + log_det);
        Ok(Gaussian {
            mean: DVector::from_vec(mean),
            cov,
            chol,
            log_norm,
        })
    }

    /// N(0, σ²·I_k).
    pub fn isotropic(k: usize, variance: f64) -> Result<Self> {
        let cov = (0..k)
            .map(|i| (0..k).map(|j| if i == j { variance } else { 0.0 }).collect())
            .collect();
        Self::new(vec![0.0; k], cov)
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &[f64] {
        self.mean.as_slice()
    }

    pub fn covariance(&self) -> Vec<Vec<f64>> {
        self.cov.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    pub fn density(&self, z: &[f64]) -> f64 {
        let diff = DVector::from_column_slice(z) - &self.mean;
        let w = self.chol.l().solve_lower_triangular(&diff).expect("Cholesky factor is invertible");
        (self.log_norm - 0.5 * w.norm_squared()).exp()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let z = DVector::from_fn(self.dim(), |_, _| rng.sample::<f64, _>(StandardNormal));
        (self.chol.l() * z + &self.mean).as_slice().to_vec()
    }
}

/// Finite mixture of Gaussians with weights summing to one.
#[derive(Debug, Clone)]
pub struct GaussianMixture {
    components: Vec<(f64, Gaussian)>,
}

impl GaussianMixture {
    pub fn new(components: Vec<(f64, Gaussian)>) -> Result<Self> {
        let Some((_, first)) = components.first() else {
            return Err(Error::config("mixture needs at least one component"));
        };
        let k = first.dim();
        if components.iter().any(|(_, g)| g.dim() != k) {
            return Err(Error::config("mixture components have different dimensions"));
        }
        if components.iter().any(|(w, _)| !(*w > 0.0)) {
            return Err(Error::config("mixture weights must be positive"));
        }
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::config(format!("mixture weights sum to {total}, not 1")));
        }
        Ok(GaussianMixture { components })
    }

    pub fn single(g: Gaussian) -> Self {
        GaussianMixture {
            components: vec![(1.0, g)],
        }
    }

    pub fn dim(&self) -> usize {
        self.components[0].1.dim()
    }

    pub fn components(&self) -> &[(f64, Gaussian)] {
        &self.components
    }

    pub fn density(&self, z: &[f64]) -> f64 {
        self.components.iter().map(|(w, g)| w * g.density(z)).sum()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let mut u: f64 = rng.random();
        for (w, g) in &self.components {
            if u < *w {
                return g.sample(rng);
            }
            u -= w;
        }
        self.components.last().expect("nonempty").1.sample(rng)
    }
}

/// Law of the raw coefficient vector β ∈ R^d.
#[derive(Debug, Clone)]
pub enum CoefficientLaw {
    /// β = (β_r, value) with β_r drawn from `mixture` on R^{d-1}.
    FixedLast { mixture: GaussianMixture, value: f64 },
    /// β equal to a fixed vector for every observation.
    PointMass(Vec<f64>),
}

/// A complete data generating process.
#[derive(Debug, Clone)]
pub struct DgpSpec {
    d: usize,
    covariates: Gaussian,
    coefficients: CoefficientLaw,
    n: usize,
    seed: u64,
}

impl DgpSpec {
    pub fn new(
        d: usize,
        covariates: Gaussian,
        coefficients: CoefficientLaw,
        n: usize,
        seed: u64,
    ) -> Result<Self> {
        if d < 2 {
            return Err(Error::config(format!("dimension must be >= 2, got {d}")));
        }
        if n == 0 {
            return Err(Error::config("sample size N must be >= 1"));
        }
        if covariates.dim() != d - 1 {
            return Err(Error::config(format!(
                "covariate law has dimension {}, expected {}",
                covariates.dim(),
                d - 1
            )));
        }
        match &coefficients {
            CoefficientLaw::FixedLast { mixture, value } => {
                if mixture.dim() != d - 1 {
                    return Err(Error::config(format!(
                        "coefficient mixture has dimension {}, expected {}",
                        mixture.dim(),
                        d - 1
                    )));
                }
                if !(value.is_finite() && *value != 0.0) {
                    return Err(Error::config("fixed coefficient must be finite and nonzero"));
                }
            }
            CoefficientLaw::PointMass(beta) => {
                if beta.len() != d {
                    return Err(Error::config(format!(
                        "point-mass coefficient has length {}, expected {d}",
                        beta.len()
                    )));
                }
                if beta.iter().all(|v| *v == 0.0) || beta.iter().any(|v| !v.is_finite()) {
                    return Err(Error::config("point-mass coefficient must be finite and nonzero"));
                }
            }
        }
        Ok(DgpSpec {
            d,
            covariates,
            coefficients,
            n,
            seed,
        })
    }

    /// Model 1: X̃ ~ N(0, 2·I), β = (β_r, 1) with β_r ~ N(0, 0.3·I).
    pub fn model1(d: usize, n: usize, seed: u64) -> Result<Self> {
        let k = d.checked_sub(1).filter(|&k| k >= 1).ok_or_else(|| {
            Error::config(format!("dimension must be >= 2, got {d}"))
        })?;
        let mixture = GaussianMixture::single(Gaussian::isotropic(k, 0.3)?);
        Self::new(
            d,
            Gaussian::isotropic(k, 2.0)?,
            CoefficientLaw::FixedLast { mixture, value: 1.0 },
            n,
            seed,
        )
    }

    /// Model 2 (d = 3): X̃ ~ N(0, 2·I₂), β = (β₁, β₂, 1) with (β₁, β₂) an equal
    /// mixture of N((μ, −μ), Σ) and N((−μ, μ), Σ), μ = 0.7 and
    /// Σ = 0.3·[[1, 0.5], [0.5, 1]].
    pub fn model2(n: usize, seed: u64) -> Result<Self> {
        let (mu, var, rho) = (0.7, 0.3, 0.5);
        let cov = vec![vec![var, rho * var], vec![rho * var, var]];
        let mixture = GaussianMixture::new(vec![
            (0.5, Gaussian::new(vec![mu, -mu], cov.clone())?),
            (0.5, Gaussian::new(vec![-mu, mu], cov)?),
        ])?;
        Self::new(
            3,
            Gaussian::isotropic(2, 2.0)?,
            CoefficientLaw::FixedLast { mixture, value: 1.0 },
            n,
            seed,
        )
    }

    pub fn with_sample_size(&self, n: usize) -> Result<Self> {
        Self::new(self.d, self.covariates.clone(), self.coefficients.clone(), n, self.seed)
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        DgpSpec { seed, ..self.clone() }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn sample_size(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn covariates(&self) -> &Gaussian {
        &self.covariates
    }

    pub fn coefficients(&self) -> &CoefficientLaw {
        &self.coefficients
    }

    pub fn oracle(&self) -> Oracle {
        Oracle { spec: self.clone() }
    }

    fn draw_beta<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        match &self.coefficients {
            CoefficientLaw::FixedLast { mixture, value } => {
                let mut b = mixture.sample(rng);
                b.push(*value);
                b
            }
            CoefficientLaw::PointMass(b) => b.clone(),
        }
    }
}

/// Summary of a [`DgpSpec`] for run reports.
#[derive(Debug, Clone, Serialize)]
pub struct DgpSummary {
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    pub covariate_mean: Vec<f64>,
    pub covariate_cov: Vec<Vec<f64>>,
    pub coefficient_law: String,
}

impl From<&DgpSpec> for DgpSummary {
    fn from(s: &DgpSpec) -> Self {
        let coefficient_law = match &s.coefficients {
            CoefficientLaw::FixedLast { mixture, value } => format!(
                "{}-component Gaussian mixture, last coordinate fixed at {value}",
                mixture.components().len()
            ),
            CoefficientLaw::PointMass(b) => format!("point mass at {b:?}"),
        };
        DgpSummary {
            d: s.d,
            n: s.n,
            seed: s.seed,
            covariate_mean: s.covariates.mean().to_vec(),
            covariate_cov: s.covariates.covariance(),
            coefficient_law,
        }
    }
}

/// Closed-form densities of the normalised covariate and coefficient laws.
#[derive(Debug, Clone)]
pub struct Oracle {
    spec: DgpSpec,
}

impl Oracle {
    pub fn spec(&self) -> &DgpSpec {
        &self.spec
    }

    /// Density of X/‖X‖ with respect to σ on S^{d-1}.
    pub fn fx(&self, x: &[f64]) -> f64 {
        let x0 = x[0];
        if x0 <= 0.0 {
            return 0.0;
        }
        let u: Vec<f64> = x[1..].iter().map(|v| v / x0).collect();
        self.spec.covariates.density(&u) / x0.powi(self.spec.d as i32)
    }

    /// Density of the random sub-coefficients β_r on R^{d-1}.
    pub fn fbeta_raw(&self, z: &[f64]) -> Result<f64> {
        match &self.spec.coefficients {
            CoefficientLaw::FixedLast { mixture, .. } => Ok(mixture.density(z)),
            CoefficientLaw::PointMass(_) => Err(unsupported_point_mass()),
        }
    }

    /// Density of β/‖β‖ with respect to σ on S^{d-1}.
    pub fn fbeta(&self, b: &[f64]) -> Result<f64> {
        let CoefficientLaw::FixedLast { mixture, value } = &self.spec.coefficients else {
            return Err(unsupported_point_mass());
        };
        let d = self.spec.d;
        let last = b[d - 1];
        if last * value.signum() <= 0.0 {
            return Ok(0.0);
        }
        let z: Vec<f64> = b[..d - 1].iter().map(|v| value * v / last).collect();
        Ok(value.abs().powi(d as i32 - 1) * mixture.density(&z) / last.abs().powi(d as i32))
    }

    /// Local maxima of f_β on the sphere, one per mixture component, found by
    /// ascent from the normalised component means.
    pub fn fbeta_modes(&self) -> Result<Vec<SpherePoint>> {
        let CoefficientLaw::FixedLast { mixture, value } = &self.spec.coefficients else {
            return Err(unsupported_point_mass());
        };
        let f = |b: &[f64]| self.fbeta(b).unwrap_or(0.0);
        let mut modes: Vec<SpherePoint> = Vec::new();
        for (_, g) in mixture.components() {
            let mut raw = g.mean().to_vec();
            raw.push(*value);
            let start = normalize(&raw)?;
            let m = refine_mode(f, &start, 0.05, 1e-9);
            if modes.iter().all(|p| p.angle_to(&m) > 1e-4) {
                modes.push(m);
            }
        }
        Ok(modes)
    }
}

fn unsupported_point_mass() -> Error {
    Error::Unsupported("a point-mass coefficient law has no density".into())
}

/// Draws a sample from `spec`. Each observation draws X̃ first and then β
/// from a ChaCha8 stream seeded with `spec.seed()`.
pub fn generate(spec: &DgpSpec) -> Result<(ChoiceSample, Oracle)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut y = Vec::with_capacity(spec.n);
    let mut x = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        let mut raw = Vec::with_capacity(spec.d);
        raw.push(1.0);
        raw.extend(spec.covariates.sample(&mut rng));
        let beta = spec.draw_beta(&mut rng);
        let index: f64 = raw.iter().zip(&beta).map(|(a, b)| a * b).sum();
        y.push(index >= 0.0);
        x.push(normalize(&raw)?);
    }
    Ok((ChoiceSample::new(y, x)?, spec.oracle()))
}

/// Density of β/‖β‖ at `b`. Mixture laws use the closed form; the Monte
/// Carlo arguments are accepted for interface symmetry and are unused there.
pub fn true_fbeta_on_sphere(spec: &DgpSpec, b: &SpherePoint, _m: usize, _seed: u64) -> Result<f64> {
    if b.dim() != spec.d {
        return Err(Error::domain(format!(
            "point has dimension {}, the model has d = {}",
            b.dim(),
            spec.d
        )));
    }
    spec.oracle().fbeta(b)
}
