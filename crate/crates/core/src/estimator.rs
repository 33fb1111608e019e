//! Closed-form estimation of the random-coefficient density f_β.
//!
//! Given observations (y_i, x_i) with x_i on the upper hemisphere H^+, the
//! choice probability extended to the whole sphere satisfies
//! R = 1/2 + H(f_β^-). The estimators here are
//!
//! ```text
//! R̂^-(x)  = (1/N) Σ_i w_i K^-_{2T}(x_i'x)
//! f̂_β^-(b) = (1/N) Σ_i w_i Σ_{p<T} γ_p C_{2p+1}^{ν(d)}(x_i'b)
//! f̂_β(b)  = 2 f̂_β^-(b) 1{f̂_β^-(b) > 0}
//! ```
//!
//! with w_i = (2y_i − 1)/max(f̂_X(x_i), (log N)^{−r}) and
//! γ_p = χ(2p+1,2T) h(2p+1,d) / (λ(2p+1,d) C_{2p+1}^{ν(d)}(1) |S^{d-1}|).
//! Evaluation is a Gegenbauer sweep per observation: no integration and no
//! optimization.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::gegenbauer::{eval_at_one, nu_for_dim, GegenbauerEvaluator};
use crate::harmonics::{chi_weight, eigenspace_dim, KernelFamily, KernelSpec, ZonalKernel};
use crate::hemispherical::{lambda_eig, OddBandlimited};
use crate::sphere::{
    dot, inner, norm, sample_uniform, sphere_area, uniform_direction, QuadratureRule, SpherePoint,
};

/// Observations (y_i, x_i), i = 1..N, with every x_i in H^+ = {x : x_0 ≥ 0}.
#[derive(Debug, Clone)]
pub struct ChoiceSample {
    y: Vec<bool>,
    x: Vec<SpherePoint>,
}

impl ChoiceSample {
    pub fn new(y: Vec<bool>, x: Vec<SpherePoint>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::malformed("choice sample is empty"));
        }
        if y.len() != x.len() {
            return Err(Error::malformed(format!(
                "{} outcomes but {} covariate vectors",
                y.len(),
                x.len()
            )));
        }
        let d = x[0].dim();
        for (i, xi) in x.iter().enumerate() {
            if xi.dim() != d {
                return Err(Error::malformed(format!(
                    "observation {i} has dimension {}, expected {d}",
                    xi.dim()
                )));
            }
            if xi[0] < 0.0 {
                return Err(Error::malformed(format!(
                    "observation {i} has negative first coordinate; covariates must lie in H^+"
                )));
            }
        }
        Ok(ChoiceSample { y, x })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.x[0].dim()
    }

    pub fn y(&self) -> &[bool] {
        &self.y
    }

    pub fn x(&self) -> &[SpherePoint] {
        &self.x
    }

    /// 2y_i − 1.
    fn sign(&self, i: usize) -> f64 {
        if self.y[i] {
            1.0
        } else {
            -1.0
        }
    }
}

/// Trimming level a_N = (log N)^{−r}.
pub fn trimming_level(n: usize, r: f64) -> f64 {
    (n as f64).ln().powf(-r)
}

/// Truncation degree from the L²-rate rule
/// T_N = c · (N / (log N)^{2r})^{1/(2s+2d−1)}, rounded, at least 1.
pub fn rate_rule_truncation(n: usize, d: usize, smoothness: f64, r: f64, constant: f64) -> usize {
    let base = n as f64 / (n as f64).ln().powf(2.0 * r);
    let t = constant * base.powf(1.0 / (2.0 * smoothness + 2.0 * d as f64 - 1.0));
    (t.round() as usize).max(1)
}

/// Tuning of the closed-form estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimatorConfig {
    truncation: usize,
    trimming_exponent: f64,
    kernel: KernelSpec,
    fx_kernel: KernelSpec,
}

impl EstimatorConfig {
    /// `truncation` is T_N; the choice-probability kernel has degree 2·T_N.
    /// `fx_kernel` is the projection kernel used for f̂_X (its degree is the
    /// f̂_X truncation).
    pub fn new(
        truncation: usize,
        trimming_exponent: f64,
        family: KernelFamily,
        fx_kernel: KernelSpec,
    ) -> Result<Self> {
        if truncation == 0 {
            return Err(Error::config("truncation degree T_N must be >= 1"));
        }
        if !(trimming_exponent > 0.0) || !trimming_exponent.is_finite() {
            return Err(Error::config(format!(
                "trimming exponent r must be positive, got {trimming_exponent}"
            )));
        }
        let kernel = KernelSpec::new(family, 2 * truncation, fx_kernel.dim())?;
        Ok(EstimatorConfig {
            truncation,
            trimming_exponent,
            kernel,
            fx_kernel,
        })
    }

    /// Riesz kernels (s = 2, l = 3) for both stages, T_N = 3, r = 2 and a
    /// degree-10 f̂_X. For d ≥ 8 the Riesz order is raised to the smallest
    /// admissible l > (d−2)/2.
    pub fn default_for(d: usize) -> Result<Self> {
        let l = 3.max((d as u32).saturating_sub(2) / 2 + 1);
        let family = KernelFamily::Riesz { s: 2.0, l };
        Self::new(3, 2.0, family, KernelSpec::new(family, 10, d)?)
    }

    pub fn with_truncation(&self, truncation: usize) -> Result<Self> {
        Self::new(truncation, self.trimming_exponent, self.kernel.family(), self.fx_kernel)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn trimming_exponent(&self) -> f64 {
        self.trimming_exponent
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn fx_kernel(&self) -> &KernelSpec {
        &self.fx_kernel
    }

    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    /// γ_p for p = 0..T_N−1.
    pub fn gammas(&self) -> Vec<f64> {
        let d = self.dim();
        let nu = nu_for_dim(d);
        let area = sphere_area(d);
        (0..self.truncation)
            .map(|p| {
                let n = 2 * p + 1;
                chi_weight(&self.kernel, n) * eigenspace_dim(n, d) as f64
                    / (lambda_eig(n, d) * eval_at_one(nu, n) * area)
            })
            .collect()
    }
}

/// The clipped projection estimator f̂_X(x) = max((1/N) Σ_i K_T(x_i'x), 0).
#[derive(Debug, Clone)]
pub struct FxEstimate {
    kernel: ZonalKernel,
    anchors: Vec<SpherePoint>,
}

impl FxEstimate {
    pub fn raw(&self, x: &[f64]) -> f64 {
        let s: f64 = self.anchors.iter().map(|a| self.kernel.between(a, x)).sum();
        s / self.anchors.len() as f64
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.raw(x).max(0.0)
    }
}

pub fn estimate_fx(sample: &ChoiceSample, fx_kernel: &KernelSpec) -> Result<FxEstimate> {
    if sample.is_empty() {
        return Err(Error::malformed("cannot estimate f_X from an empty sample"));
    }
    if fx_kernel.dim() != sample.dim() {
        return Err(Error::config(format!(
            "f_X kernel is for d = {}, sample has d = {}",
            fx_kernel.dim(),
            sample.dim()
        )));
    }
    Ok(FxEstimate {
        kernel: fx_kernel.zonal(),
        anchors: sample.x.clone(),
    })
}

/// w_i = (2y_i − 1)/max(f_X(x_i), a_N), with `fx` supplying the covariate
/// density at the observations.
fn observation_weights(sample: &ChoiceSample, cfg: &EstimatorConfig, fx: &[f64]) -> Result<Vec<f64>> {
    if cfg.dim() != sample.dim() {
        return Err(Error::config(format!(
            "estimator configured for d = {}, sample has d = {}",
            cfg.dim(),
            sample.dim()
        )));
    }
    let floor = trimming_level(sample.len(), cfg.trimming_exponent);
    let floor_ok = floor.is_finite() && floor > 0.0 && floor < 1.0;
    if !floor_ok && fx.iter().all(|&v| !(v >= floor)) {
        return Err(Error::config(format!(
            "trimming level (log N)^-r = {floor} is not in (0, 1) for N = {} and every f_X(x_i) lies below it",
            sample.len()
        )));
    }
    Ok(fx
        .iter()
        .enumerate()
        .map(|(i, &v)| sample.sign(i) / v.max(floor))
        .collect())
}

fn covariate_density_at_sample<F>(sample: &ChoiceSample, fx: F) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    sample.x.par_iter().map(|x| fx(x)).collect()
}

/// Estimate of f_β^- (and through it f_β) in closed form.
#[derive(Debug, Clone)]
pub struct DensityEstimate {
    anchors: Vec<SpherePoint>,
    weights: Vec<f64>,
    gamma: Vec<f64>,
    /// γ_p placed at degree 2p+1, zeros elsewhere.
    profile: Vec<f64>,
    evaluator: GegenbauerEvaluator,
    trimming_level: f64,
}

impl DensityEstimate {
    fn new(sample: &ChoiceSample, cfg: &EstimatorConfig, weights: Vec<f64>) -> Self {
        let gamma = cfg.gammas();
        let mut profile = vec![0.0; 2 * cfg.truncation];
        for (p, g) in gamma.iter().enumerate() {
            profile[2 * p + 1] = *g;
        }
        DensityEstimate {
            anchors: sample.x.clone(),
            weights,
            gamma,
            profile,
            evaluator: GegenbauerEvaluator::for_dim(sample.dim(), 2 * cfg.truncation - 1)
                .expect("validated dimension"),
            trimming_level: trimming_level(sample.len(), cfg.trimming_exponent),
        }
    }

    pub fn dim(&self) -> usize {
        self.anchors[0].dim()
    }

    pub fn len(&self) -> usize {
        self.anchors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchors.is_empty()
    }

    /// Per-observation weights w_i = (2y_i−1)/max(f̂_X(x_i), a_N).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Per-degree multipliers γ_p, p = 0..T_N−1.
    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn anchors(&self) -> &[SpherePoint] {
        &self.anchors
    }

    pub fn trimming_level(&self) -> f64 {
        self.trimming_level
    }

    /// Z_i(b) = w_i Σ_p γ_p C_{2p+1}(x_i'b); f̂_β^-(b) is their mean.
    pub fn terms(&self, b: &[f64]) -> Vec<f64> {
        self.anchors
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * self.evaluator.dot(inner(x, b), &self.profile))
            .collect()
    }

    /// f̂_β^-(b).
    pub fn odd(&self, b: &[f64]) -> f64 {
        let s: f64 = self
            .anchors
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * self.evaluator.dot(inner(x, b), &self.profile))
            .sum();
        s / self.anchors.len() as f64
    }

    /// f̂_β(b) = 2 f̂_β^-(b) 1{f̂_β^-(b) > 0}.
    pub fn evaluate(&self, b: &[f64]) -> f64 {
        let v = self.odd(b);
        if v > 0.0 {
            2.0 * v
        } else {
            0.0
        }
    }

    /// [`evaluate`](Self::evaluate) over many points, in parallel.
    pub fn evaluate_many<P: AsRef<[f64]> + Sync>(&self, points: &[P]) -> Vec<f64> {
        points.par_iter().map(|b| self.evaluate(b.as_ref())).collect()
    }

    /// Plug-in estimate of s_N(b) = 2 sd(Z_N(b)).
    pub fn standard_error(&self, b: &[f64]) -> Result<f64> {
        if self.len() < 2 {
            return Err(Error::domain("standard error needs at least 2 observations"));
        }
        Ok(scaled_std_dev(&self.terms(b)))
    }

    /// Pointwise normal confidence interval f̂_β(b) ± z_{1−α/2} ŝ_N(b)/√N.
    pub fn confidence_interval(&self, b: &[f64], level: f64) -> Result<(f64, f64)> {
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::domain(format!("confidence level must be in (0, 1), got {level}")));
        }
        let se = self.standard_error(b)?;
        let z = Normal::standard().inverse_cdf(0.5 + level / 2.0);
        let half = z * se / (self.len() as f64).sqrt();
        let centre = self.evaluate(b);
        Ok((centre - half, centre + half))
    }

    /// f̂_β^- as a band-limited odd function: anchor weights w_i/N and
    /// degree multipliers χ(n,2T)/λ(n,d).
    pub fn as_odd_bandlimited(&self) -> Result<OddBandlimited> {
        let n = self.len() as f64;
        let d = self.dim();
        let nu = nu_for_dim(d);
        let coeffs: BTreeMap<usize, f64> = self
            .gamma
            .iter()
            .enumerate()
            .map(|(p, g)| {
                let deg = 2 * p + 1;
                // γ_p = c_n · h/(C(1)|S|)  ⇒  c_n = γ_p C(1)|S|/h
                (deg, g * eval_at_one(nu, deg) * sphere_area(d) / eigenspace_dim(deg, d) as f64)
            })
            .collect();
        OddBandlimited::new(
            self.anchors.clone(),
            self.weights.iter().map(|w| w / n).collect(),
            coeffs,
            self.profile.len() - 1,
        )
    }
}

/// 2 × sample standard deviation.
pub(crate) fn scaled_std_dev(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let mean = z.iter().sum::<f64>() / n;
    let var = z.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    2.0 * var.sqrt()
}

/// f̂_β with the plug-in projection estimator f̂_X.
pub fn estimate_fbeta(sample: &ChoiceSample, cfg: &EstimatorConfig) -> Result<DensityEstimate> {
    let fx = estimate_fx(sample, &cfg.fx_kernel)?;
    estimate_fbeta_with_fx(sample, cfg, |x| fx.evaluate(x))
}

/// f̂_β with a caller-supplied covariate density (e.g. the true f_X, which
/// gives the infeasible estimator).
pub fn estimate_fbeta_with_fx<F>(sample: &ChoiceSample, cfg: &EstimatorConfig, fx: F) -> Result<DensityEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let dens = covariate_density_at_sample(sample, fx);
    let weights = observation_weights(sample, cfg, &dens)?;
    Ok(DensityEstimate::new(sample, cfg, weights))
}

/// Pointwise standard error ŝ_N(b) with f̂_X plugged in.
pub fn standard_error(sample: &ChoiceSample, cfg: &EstimatorConfig, b: &[f64]) -> Result<f64> {
    if sample.len() < 2 {
        return Err(Error::domain("standard error needs at least 2 observations"));
    }
    estimate_fbeta(sample, cfg)?.standard_error(b)
}

/// R̂ = 1/2 + R̂^- for the extended choice probability.
#[derive(Debug, Clone)]
pub struct RHatEstimate {
    anchors: Vec<SpherePoint>,
    weights: Vec<f64>,
    kernel: KernelSpec,
    odd_kernel: ZonalKernel,
}

impl RHatEstimate {
    /// R̂^-(x).
    pub fn odd(&self, x: &[f64]) -> f64 {
        let s: f64 = self
            .anchors
            .iter()
            .zip(&self.weights)
            .map(|(a, w)| w * self.odd_kernel.between(a, x))
            .sum();
        s / self.anchors.len() as f64
    }

    /// R̂(x) = 1/2 + R̂^-(x).
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        0.5 + self.odd(x)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// R̂^- as a band-limited odd function with multipliers χ(n, 2T).
    pub fn as_odd_bandlimited(&self) -> Result<OddBandlimited> {
        let n = self.anchors.len() as f64;
        let coeffs = (1..=self.kernel.degree())
            .step_by(2)
            .map(|deg| (deg, chi_weight(&self.kernel, deg)))
            .collect();
        OddBandlimited::new(
            self.anchors.clone(),
            self.weights.iter().map(|w| w / n).collect(),
            coeffs,
            // odd degrees of K_{2T} stop at 2T − 1
            self.kernel.degree() - 1,
        )
    }
}

pub fn estimate_r(sample: &ChoiceSample, cfg: &EstimatorConfig) -> Result<RHatEstimate> {
    let fx = estimate_fx(sample, &cfg.fx_kernel)?;
    estimate_r_with_fx(sample, cfg, |x| fx.evaluate(x))
}

pub fn estimate_r_with_fx<F>(sample: &ChoiceSample, cfg: &EstimatorConfig, fx: F) -> Result<RHatEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let dens = covariate_density_at_sample(sample, fx);
    let weights = observation_weights(sample, cfg, &dens)?;
    Ok(RHatEstimate {
        anchors: sample.x.clone(),
        weights,
        kernel: cfg.kernel,
        odd_kernel: cfg.kernel.zonal_odd(),
    })
}

/// Marginal density of the coordinates `keep_dims` of b ~ f, with respect to
/// the image of σ/|S^{d-1}| under that coordinate projection:
///
/// ```text
/// f_marg(b̄) = |S^{d-1}| ∫_{S^{d-1-k}} f(ρ(b̄)u, b̄) dσ̲(u),   ρ(b̄) = √(1 − ‖b̄‖²),
/// ```
///
/// where σ̲ is the uniform probability on S^{d-1-k}. The inner average uses
/// `m` uniform draws; when k = d−1 the sphere S^0 = {±1} is averaged exactly.
pub fn marginal_density_of<F>(
    f: F,
    d: usize,
    keep_dims: &[usize],
    bbar: &[f64],
    m: usize,
    seed: u64,
) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let k = keep_dims.len();
    if k == 0 || k >= d {
        return Err(Error::domain(format!("need 1 <= k <= d-1 kept coordinates, got k = {k}")));
    }
    if bbar.len() != k {
        return Err(Error::domain(format!("b̄ has {} entries for {k} kept coordinates", bbar.len())));
    }
    let mut seen = vec![false; d];
    for &j in keep_dims {
        if j >= d || seen[j] {
            return Err(Error::domain(format!("invalid or repeated coordinate index {j}")));
        }
        seen[j] = true;
    }
    let r2 = dot(bbar, bbar);
    if !(r2 < 1.0) {
        return Err(Error::domain(format!("b̄ must lie in the open unit ball, |b̄| = {}", norm(bbar))));
    }
    if m == 0 {
        return Err(Error::domain("need at least one Monte-Carlo draw"));
    }
    let rho = (1.0 - r2).sqrt();
    let free: Vec<usize> = (0..d).filter(|j| !seen[*j]).collect();
    let mut b = vec![0.0; d];
    for (&j, &v) in keep_dims.iter().zip(bbar) {
        b[j] = v;
    }
    let mut eval_at = |u: &[f64]| {
        for (&j, &c) in free.iter().zip(u) {
            b[j] = rho * c;
        }
        f(&b)
    };
    let mean = if free.len() == 1 {
        0.5 * (eval_at(&[1.0]) + eval_at(&[-1.0]))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = 0.0;
        for _ in 0..m {
            let u = uniform_direction(&mut rng, free.len());
            acc += eval_at(&u);
        }
        acc / m as f64
    };
    Ok(sphere_area(d) * mean)
}

/// Marginal density of the kept coordinates under f̂_β.
pub fn marginal_density(
    est: &DensityEstimate,
    keep_dims: &[usize],
    bbar: &[f64],
    m: usize,
    seed: u64,
) -> Result<f64> {
    marginal_density_of(|b| est.evaluate(b), est.dim(), keep_dims, bbar, m, seed)
}

/// Checks of the hemisphere-support restriction on an estimated odd part.
#[derive(Debug, Clone, Serialize)]
pub struct IdentificationReport {
    /// Hemisphere centre x̂ maximizing ∫_{H(x)} f^- dσ over the probe set.
    pub direction: Vec<f64>,
    /// ∫_{H(x̂)} f^- dσ; equals 1/2 when f is a density supported in H(x̂).
    pub hemisphere_mass_plus: f64,
    /// ∫_{H(−x̂)} f^- dσ.
    pub hemisphere_mass_minus: f64,
    /// ∫ max(f^-, 0) dσ; 1/2 for a valid density.
    pub positive_mass: f64,
    /// min over probe directions x of σ{b : f^-(b) > ε, x'b < 0}: the part
    /// of the implied density's support that no single hemisphere covers.
    pub violation_score: f64,
    /// The probe direction attaining `violation_score`.
    pub support_direction: Vec<f64>,
    /// The threshold ε = 0.2 · sup |f^-| over the quadrature nodes.
    pub epsilon: f64,
}

/// Number of random probe directions tried for x̂, besides the first moment.
const DIAGNOSTIC_PROBES: usize = 1024;

/// Fraction of sup |f^-| above which a point counts as estimated support.
const SUPPORT_LEVEL: f64 = 0.2;

/// Identification diagnostic for an arbitrary odd function `odd` on S^{d-1}.
pub fn identification_diagnostic_of<F>(odd: F, quad: &QuadratureRule) -> IdentificationReport
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let d = quad.dim();
    let nodes: Vec<&[f64]> = quad.nodes().collect();
    let values: Vec<f64> = nodes.par_iter().map(|y| odd(y)).collect();
    let weights = quad.weights();

    let mass_in = |x: &[f64]| -> f64 {
        nodes
            .iter()
            .zip(&values)
            .zip(weights)
            .filter(|((y, _), _)| dot(x, y) >= 0.0)
            .map(|((_, v), w)| v * w)
            .sum()
    };

    let mut probes: Vec<Vec<f64>> = Vec::with_capacity(DIAGNOSTIC_PROBES + 1);
    let mut moment = vec![0.0; d];
    for ((y, v), w) in nodes.iter().zip(&values).zip(weights) {
        for (m, c) in moment.iter_mut().zip(y.iter()) {
            *m += w * v * c;
        }
    }
    let mnorm = norm(&moment);
    if mnorm > 0.0 {
        probes.push(moment.iter().map(|c| c / mnorm).collect());
    }
    probes.extend(
        sample_uniform(d, DIAGNOSTIC_PROBES, 0x5eed)
            .expect("d >= 2")
            .into_iter()
            .map(SpherePoint::into_coords),
    );
    let (direction, mass_plus) = probes
        .par_iter()
        .map(|x| (x.clone(), mass_in(x)))
        .reduce_with(|a, b| if b.1 > a.1 { b } else { a })
        .expect("at least one probe");
    let minus: Vec<f64> = direction.iter().map(|c| -c).collect();
    let mass_minus = mass_in(&minus);

    let sup = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let epsilon = SUPPORT_LEVEL * sup;
    let positive_mass = values.iter().zip(weights).map(|(v, w)| v.max(0.0) * w).sum();
    let outside = |x: &[f64]| -> f64 {
        nodes
            .iter()
            .zip(&values)
            .zip(weights)
            .filter(|((y, v), _)| **v > epsilon && dot(x, y) < 0.0)
            .map(|(_, w)| w)
            .sum()
    };
    probes.push(direction.clone());
    let (support_direction, violation_score) = probes
        .par_iter()
        .map(|x| (x.clone(), outside(x)))
        .reduce_with(|a, b| if b.1 < a.1 { b } else { a })
        .expect("at least one probe");
    IdentificationReport {
        direction,
        hemisphere_mass_plus: mass_plus,
        hemisphere_mass_minus: mass_minus,
        positive_mass,
        violation_score,
        support_direction,
        epsilon,
    }
}

pub fn identification_diagnostic(est: &DensityEstimate, quad: &QuadratureRule) -> Result<IdentificationReport> {
    quad.check_dim(est.dim())?;
    Ok(identification_diagnostic_of(|b| est.odd(b), quad))
}
