//! Geometry of the unit sphere S^{d-1}: points, surface measure, uniform
//! sampling and quadrature rules.
//!
//! Quadrature rules are plain node/weight lists for the (unnormalized)
//! surface measure σ, so `Σ w_j = |S^{d-1}|`. Deterministic rules are
//! available for every dimension through [`QuadratureRule::product`];
//! [`build_quadrature`] follows the conventional choice of a Monte-Carlo rule
//! from d = 4 upward.

use std::f64::consts::PI;
use std::ops::Deref;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Tolerance on the norm of a unit vector accepted by [`SpherePoint::new`].
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// A unit vector in R^d, d ≥ 2.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint(Vec<f64>);

impl SpherePoint {
    /// Wraps coordinates that are already of unit length.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::domain(format!(
                "sphere points need d >= 2 coordinates, got {}",
                coords.len()
            )));
        }
        let norm = norm(&coords);
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::domain(format!(
                "coordinates have norm {norm}, expected 1"
            )));
        }
        Ok(SpherePoint(coords))
    }

    /// Canonical basis vector e_axis in R^d.
    pub fn basis(d: usize, axis: usize) -> Result<Self> {
        if d < 2 || axis >= d {
            return Err(Error::domain(format!("no basis vector e_{axis} in R^{d}")));
        }
        let mut v = vec![0.0; d];
        v[axis] = 1.0;
        Ok(SpherePoint(v))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &[f64]) -> f64 {
        dot(&self.0, other)
    }

    /// The antipodal point −x.
    pub fn antipode(&self) -> SpherePoint {
        SpherePoint(self.0.iter().map(|c| -c).collect())
    }

    /// Great-circle distance to `other`, in radians.
    pub fn angle_to(&self, other: &[f64]) -> f64 {
        angle_between(&self.0, other)
    }
}

impl Deref for SpherePoint {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for SpherePoint {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Inner product of two unit vectors, clamped to [−1, 1].
///
/// Clamping is symmetric, so `inner(x, −b) == −inner(x, b)` bit for bit.
#[inline]
pub(crate) fn inner(a: &[f64], b: &[f64]) -> f64 {
    dot(a, b).clamp(-1.0, 1.0)
}

/// Great-circle distance between two unit vectors.
pub fn angle_between(a: &[f64], b: &[f64]) -> f64 {
    // atan2 form stays accurate for nearly (anti)parallel vectors
    let c = dot(a, b);
    let cross2: f64 = {
        let mut s = 0.0;
        for i in 0..a.len() {
            for j in (i + 1)..a.len() {
                let m = a[i] * b[j] - a[j] * b[i];
                s += m * m;
            }
        }
        s
    };
    cross2.sqrt().atan2(c)
}

/// |S^{d-1}| = 2π^{d/2}/Γ(d/2).
pub fn surface_area(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::domain(format!("surface area needs d >= 2, got {d}")));
    }
    Ok(sphere_area(d))
}

/// Unchecked |S^{d-1}| for d ≥ 1 (|S^0| = 2 counts the two points ±1).
pub(crate) fn sphere_area(d: usize) -> f64 {
    // |S^{d+1}| = 2π/d · |S^{d-1}|
    let (mut area, mut k) = if d % 2 == 0 { (2.0 * PI, 2) } else { (2.0, 1) };
    while k < d {
        area *= 2.0 * PI / k as f64;
        k += 2;
    }
    area
}

/// Projects a nonzero vector onto the sphere.
pub fn normalize(v: &[f64]) -> Result<SpherePoint> {
    if v.len() < 2 {
        return Err(Error::domain("normalize needs at least 2 coordinates"));
    }
    let n = norm(v);
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::domain("cannot normalize a zero or non-finite vector"));
    }
    let mut out: Vec<f64> = v.iter().map(|c| c / n).collect();
    // one refinement keeps the norm within a few ulps of 1
    let n2 = norm(&out);
    out.iter_mut().for_each(|c| *c /= n2);
    Ok(SpherePoint(out))
}

/// `n` i.i.d. uniform points on S^{d-1}, reproducible from `seed`.
pub fn sample_uniform(d: usize, n: usize, seed: u64) -> Result<Vec<SpherePoint>> {
    if d < 2 {
        return Err(Error::domain(format!("sample_uniform needs d >= 2, got {d}")));
    }
    if n == 0 {
        return Err(Error::domain("sample_uniform needs n >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|_| SpherePoint(uniform_direction(&mut rng, d)))
        .collect())
}

/// One uniform draw on S^{d-1} from normalized standard Gaussians.
/// Also valid for d = 1, where it returns ±1 with equal probability.
pub(crate) fn uniform_direction<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let n = norm(&v);
        if n > 1e-300 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss–Legendre rule on [a, b].
fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    (
        x.iter().map(|t| mid + half * t).collect(),
        w.iter().map(|v| v * half).collect(),
    )
}

/// |S^{d-2}| ∫_{-1}^{1} f(t) (1−t²)^{(d−3)/2} dt, the integral over S^{d-1}
/// of the zonal function b ↦ f(x'b).
///
/// Composite Gauss–Legendre in the polar angle with `panels` panels of
/// `order` nodes each; exact panel boundaries can be added at points where
/// `f` is not smooth via `breaks` (values of t in (−1, 1)).
pub fn zonal_integral<F: Fn(f64) -> f64>(
    d: usize,
    f: F,
    panels: usize,
    order: usize,
    breaks: &[f64],
) -> f64 {
    let mut cuts: Vec<f64> = (0..=panels)
        .map(|k| PI * k as f64 / panels as f64)
        .collect();
    cuts.extend(
        breaks
            .iter()
            .filter(|t| t.abs() < 1.0)
            .map(|t| t.acos()),
    );
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    let (x, w) = gauss_legendre(order);
    let exponent = d as i32 - 2;
    let mut total = 0.0;
    for win in cuts.windows(2) {
        let (a, b) = (win[0], win[1]);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (xi, wi) in x.iter().zip(&w) {
            let theta = mid + half * xi;
            total += wi * half * f(theta.cos()) * theta.sin().powi(exponent);
        }
    }
    sphere_area(d - 1) * total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    Deterministic,
    MonteCarlo,
}

/// Nodes and positive weights approximating the surface measure σ on S^{d-1}.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    dim: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    kind: RuleKind,
    /// Axis about which the rule is built (hemisphere integrals about this
    /// axis are resolved exactly by deterministic rules).
    pole: Option<Vec<f64>>,
}

/// Builds the default rule for dimension `d`.
///
/// * d = 2: trapezoid rule in the angle with `resolution` nodes.
/// * d = 3: Gauss–Legendre in cos(polar angle), split at the equator, times a
///   uniform azimuth grid of `2·resolution` nodes.
/// * d ≥ 4: Monte-Carlo rule with `resolution` uniform nodes (seed defaults
///   to 0), weights |S^{d-1}|/resolution.
pub fn build_quadrature(d: usize, resolution: usize, seed: Option<u64>) -> Result<QuadratureRule> {
    if resolution < 4 {
        return Err(Error::config(format!(
            "quadrature resolution must be >= 4, got {resolution}"
        )));
    }
    match d {
        0 | 1 => Err(Error::domain(format!("quadrature needs d >= 2, got {d}"))),
        2 => Ok(QuadratureRule::circle(resolution)),
        3 => QuadratureRule::product(3, resolution, 2 * resolution),
        _ => QuadratureRule::monte_carlo(d, resolution, seed.unwrap_or(0)),
    }
}

impl QuadratureRule {
    fn circle(resolution: usize) -> Self {
        let h = 2.0 * PI / resolution as f64;
        let mut nodes = Vec::with_capacity(2 * resolution);
        for k in 0..resolution {
            let theta = h * (k as f64 + 0.5);
            nodes.push(theta.cos());
            nodes.push(theta.sin());
        }
        QuadratureRule {
            dim: 2,
            nodes,
            weights: vec![h; resolution],
            kind: RuleKind::Deterministic,
            pole: Some(vec![1.0, 0.0]),
        }
    }

    /// Deterministic product rule for any d ≥ 2.
    ///
    /// Writes x = (t, √(1−t²)·u) with u ∈ S^{d-2}. The polar variable uses
    /// Gauss–Legendre panels split at t = 0 (in t for d = 3, in the polar
    /// angle for d ≥ 4); `u` uses the product rule on S^{d-2} at resolution
    /// `inner` (a trapezoid rule with `inner` nodes once S^1 is reached).
    pub fn product(d: usize, polar: usize, inner: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::domain(format!("quadrature needs d >= 2, got {d}")));
        }
        if polar < 4 || inner < 4 {
            return Err(Error::config(format!(
                "quadrature resolution must be >= 4, got polar={polar}, inner={inner}"
            )));
        }
        if d == 2 {
            return Ok(Self::circle(polar));
        }
        let sub = if d == 3 {
            Self::circle(inner)
        } else {
            Self::product(d - 1, inner, inner)?
        };
        let lower = polar / 2;
        let upper = polar - lower;
        let (mut ts, mut tw) = (Vec::new(), Vec::new());
        if d == 3 {
            for (n, a, b) in [(lower, -1.0, 0.0), (upper, 0.0, 1.0)] {
                let (x, w) = gauss_legendre_on(n, a, b);
                ts.extend(x);
                tw.extend(w);
            }
        } else {
            let exponent = d as i32 - 2;
            for (n, a, b) in [(upper, 0.0, PI / 2.0), (lower, PI / 2.0, PI)] {
                let (x, w) = gauss_legendre_on(n, a, b);
                for (theta, wt) in x.into_iter().zip(w) {
                    ts.push(theta.cos());
                    tw.push(wt * theta.sin().powi(exponent));
                }
            }
        }
        let mut nodes = Vec::with_capacity(ts.len() * sub.len() * d);
        let mut weights = Vec::with_capacity(ts.len() * sub.len());
        for (t, wt) in ts.iter().zip(&tw) {
            let s = (1.0 - t * t).max(0.0).sqrt();
            for (u, wu) in sub.iter() {
                nodes.push(*t);
                nodes.extend(u.iter().map(|c| s * c));
                weights.push(wt * wu);
            }
        }
        let mut pole = vec![0.0; d];
        pole[0] = 1.0;
        Ok(QuadratureRule {
            dim: d,
            nodes,
            weights,
            kind: RuleKind::Deterministic,
            pole: Some(pole),
        })
    }

    /// Equal-weight Monte-Carlo rule.
    pub fn monte_carlo(d: usize, resolution: usize, seed: u64) -> Result<Self> {
        let pts = sample_uniform(d, resolution, seed)?;
        let w = sphere_area(d) / resolution as f64;
        Ok(QuadratureRule {
            dim: d,
            nodes: pts.into_iter().flat_map(SpherePoint::into_coords).collect(),
            weights: vec![w; resolution],
            kind: RuleKind::MonteCarlo,
            pole: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn node(&self, j: usize) -> &[f64] {
        &self.nodes[j * self.dim..(j + 1) * self.dim]
    }

    pub fn nodes(&self) -> impl Iterator<Item = &[f64]> {
        self.nodes.chunks_exact(self.dim)
    }

    /// Iterates `(node, weight)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.nodes.chunks_exact(self.dim).zip(self.weights.iter().copied())
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Σ w_j f(y_j).
    pub fn integrate<F: Fn(&[f64]) -> f64>(&self, f: F) -> f64 {
        self.iter().map(|(y, w)| w * f(y)).sum()
    }

    /// Monte-Carlo standard error of [`integrate`](Self::integrate); zero
    /// for deterministic rules.
    pub fn standard_error<F: Fn(&[f64]) -> f64>(&self, f: F) -> f64 {
        if self.kind == RuleKind::Deterministic || self.len() < 2 {
            return 0.0;
        }
        let area = sphere_area(self.dim);
        let vals: Vec<f64> = self.nodes().map(|y| area * f(y)).collect();
        let n = vals.len() as f64;
        let mean = vals.iter().sum::<f64>() / n;
        let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    }

    pub(crate) fn check_dim(&self, d: usize) -> Result<()> {
        if self.dim != d {
            return Err(Error::config(format!(
                "quadrature rule is for d = {}, operand has d = {d}",
                self.dim
            )));
        }
        Ok(())
    }

    /// The same rule reflected so that its construction axis maps onto `x`.
    ///
    /// Reflections preserve σ, so the result is again a valid rule; its
    /// hemisphere integrals about `x` inherit the accuracy the original has
    /// about its own axis. Monte-Carlo rules are returned unchanged.
    pub fn aligned_to(&self, x: &[f64]) -> Result<QuadratureRule> {
        self.check_dim(x.len())?;
        let Some(pole) = &self.pole else {
            return Ok(self.clone());
        };
        let v: Vec<f64> = pole.iter().zip(x).map(|(p, q)| p - q).collect();
        let vv = dot(&v, &v);
        if vv < 1e-28 {
            return Ok(self.clone());
        }
        let mut nodes = self.nodes.clone();
        for y in nodes.chunks_exact_mut(self.dim) {
            let c = 2.0 * dot(&v, y) / vv;
            y.iter_mut().zip(&v).for_each(|(yi, vi)| *yi -= c * vi);
        }
        Ok(QuadratureRule {
            dim: self.dim,
            nodes,
            weights: self.weights.clone(),
            kind: self.kind,
            pole: Some(x.to_vec()),
        })
    }
}
