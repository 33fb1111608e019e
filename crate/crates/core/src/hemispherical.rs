//! The hemispherical transform H f(x) = ∫_{x'b ≥ 0} f(b) dσ(b).
//!
//! H is zonal with kernel 1{t ≥ 0}, so by Funk–Hecke it acts on degree-n
//! harmonics as multiplication by λ(n, d). Odd degrees and degree 0 have
//! nonzero eigenvalues; even degrees n ≥ 2 span the null space. Forward
//! application and inversion below are purely spectral on band-limited
//! representations.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gegenbauer::GegenbauerEvaluator;
use crate::harmonics::{laplace_eigenvalue, projector_scale};
use crate::sphere::{inner, sphere_area, QuadratureRule, SpherePoint};

/// Eigenvalue λ(n, d) of H on degree-n surface harmonics of S^{d-1}.
///
/// λ(0,d) = |S^{d-1}|/2, λ(2p,d) = 0 for p ≥ 1 and
/// λ(2p+1,d) = (−1)^p |S^{d-2}| · 1·3⋯(2p−1) / ((d−1)(d+1)⋯(d+2p−1)).
/// For d = 2 this reduces to 2 sin(nπ/2)/n.
pub fn lambda_eig(n: usize, d: usize) -> f64 {
    assert!(d >= 2, "lambda_eig needs d >= 2");
    if n == 0 {
        return sphere_area(d) / 2.0;
    }
    if n % 2 == 0 {
        return 0.0;
    }
    let p = (n - 1) / 2;
    let mut v = sphere_area(d - 1) / (d - 1) as f64;
    for k in 1..=p {
        v *= (2 * k - 1) as f64 / (d + 2 * k - 1) as f64;
    }
    if p % 2 == 1 {
        -v
    } else {
        v
    }
}

/// An odd function in ⊕_{odd n ≤ T} H^{n,d}, stored in condensed form
///
/// ```text
/// g(b) = Σ_i w_i Σ_{odd n ≤ T} c_n ᵇq_{n,d}(x_i'b)
/// ```
///
/// with anchor points x_i, anchor weights w_i and per-degree multipliers c_n.
#[derive(Debug, Clone)]
pub struct OddBandlimited {
    dim: usize,
    anchors: Vec<SpherePoint>,
    anchor_weights: Vec<f64>,
    degree_coeffs: BTreeMap<usize, f64>,
    band_limit: usize,
}

impl OddBandlimited {
    pub fn new(
        anchors: Vec<SpherePoint>,
        anchor_weights: Vec<f64>,
        degree_coeffs: BTreeMap<usize, f64>,
        band_limit: usize,
    ) -> Result<Self> {
        let Some(first) = anchors.first() else {
            return Err(Error::malformed("band-limited function needs at least one anchor"));
        };
        let dim = first.dim();
        if anchors.iter().any(|a| a.dim() != dim) {
            return Err(Error::malformed("anchors have mixed dimensions"));
        }
        if anchors.len() != anchor_weights.len() {
            return Err(Error::malformed(format!(
                "{} anchors but {} anchor weights",
                anchors.len(),
                anchor_weights.len()
            )));
        }
        for (&n, &c) in &degree_coeffs {
            if n % 2 == 0 && c != 0.0 {
                return Err(Error::malformed(format!(
                    "degree {n} is even; only odd degrees are allowed"
                )));
            }
            if n > band_limit {
                return Err(Error::malformed(format!(
                    "degree {n} exceeds the band limit {band_limit}"
                )));
            }
        }
        Ok(OddBandlimited {
            dim,
            anchors,
            anchor_weights,
            degree_coeffs,
            band_limit,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn band_limit(&self) -> usize {
        self.band_limit
    }

    pub fn anchors(&self) -> &[SpherePoint] {
        &self.anchors
    }

    pub fn anchor_weights(&self) -> &[f64] {
        &self.anchor_weights
    }

    pub fn degree_coeffs(&self) -> &BTreeMap<usize, f64> {
        &self.degree_coeffs
    }

    fn with_coeffs(&self, degree_coeffs: BTreeMap<usize, f64>) -> Self {
        OddBandlimited {
            degree_coeffs,
            ..self.clone()
        }
    }

    /// Gegenbauer coefficients of the per-anchor zonal profile.
    fn profile(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.band_limit + 1];
        for (&n, &v) in &self.degree_coeffs {
            c[n] = v * projector_scale(n, self.dim);
        }
        c
    }

    /// Reusable evaluator for many points.
    pub fn evaluator(&self) -> BandlimitedEvaluator<'_> {
        BandlimitedEvaluator {
            f: self,
            profile: self.profile(),
            gegenbauer: GegenbauerEvaluator::for_dim(self.dim, self.band_limit)
                .expect("dimension validated at construction"),
        }
    }

    pub fn evaluate(&self, b: &[f64]) -> f64 {
        self.evaluator().at(b)
    }

    /// Pointwise sum of two functions sharing dimension, band limit and
    /// degree profile; the anchor sets are concatenated.
    pub fn try_add(&self, other: &OddBandlimited) -> Result<OddBandlimited> {
        if self.dim != other.dim || self.band_limit != other.band_limit {
            return Err(Error::malformed(format!(
                "cannot add band-limited functions with (d, T) = ({}, {}) and ({}, {})",
                self.dim, self.band_limit, other.dim, other.band_limit
            )));
        }
        if self.degree_coeffs != other.degree_coeffs {
            return Err(Error::Unsupported(
                "adding band-limited functions with different degree profiles".into(),
            ));
        }
        let mut out = self.clone();
        out.anchors.extend(other.anchors.iter().cloned());
        out.anchor_weights.extend(other.anchor_weights.iter().copied());
        Ok(out)
    }
}

/// Evaluates an [`OddBandlimited`] with its Gegenbauer profile precomputed.
pub struct BandlimitedEvaluator<'a> {
    f: &'a OddBandlimited,
    profile: Vec<f64>,
    gegenbauer: GegenbauerEvaluator,
}

impl BandlimitedEvaluator<'_> {
    pub fn at(&self, b: &[f64]) -> f64 {
        self.f
            .anchors
            .iter()
            .zip(&self.f.anchor_weights)
            .map(|(x, w)| w * self.gegenbauer.dot(inner(x, b), &self.profile))
            .sum()
    }
}

/// H g, computed spectrally: each degree-n component is scaled by λ(n, d).
pub fn forward(g: &OddBandlimited) -> OddBandlimited {
    let coeffs = g
        .degree_coeffs
        .iter()
        .map(|(&n, &c)| (n, c * lambda_eig(n, g.dim)))
        .collect();
    g.with_coeffs(coeffs)
}

/// H^{-1} g on a band-limited odd function: each degree-n component is
/// divided by λ(n, d).
pub fn inverse(g: &OddBandlimited) -> Result<OddBandlimited> {
    let mut coeffs = BTreeMap::new();
    for (&n, &c) in &g.degree_coeffs {
        let lambda = lambda_eig(n, g.dim);
        if lambda == 0.0 {
            if c == 0.0 {
                continue;
            }
            return Err(Error::malformed(format!(
                "degree {n} lies in the null space of the hemispherical transform"
            )));
        }
        coeffs.insert(n, c / lambda);
    }
    Ok(g.with_coeffs(coeffs))
}

/// Multiplier of H^{-1} on degree-n odd harmonics written as a polynomial in
/// the Laplace–Beltrami eigenvalue, for d a multiple of 4:
///
/// ```text
/// (−1)^p / (|S^{d-2}| · 1·3⋯(d−3)) · Π_{k=1}^{d/4} [ζ_{n,d} + 2(k−1)(d−2k)],   n = 2p+1.
/// ```
fn laplacian_inverse_multiplier(n: usize, d: usize) -> f64 {
    let zeta = laplace_eigenvalue(n, d);
    let product: f64 = (1..=d / 4)
        .map(|k| zeta + (2 * (k - 1) * (d - 2 * k)) as f64)
        .product();
    let odd_factorial: f64 = (1..=(d - 3)).step_by(2).map(|j| j as f64).product();
    let p = (n - 1) / 2;
    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
    sign * product / (sphere_area(d - 1) * odd_factorial)
}

/// H^{-1} g through the differential-operator form available when 4 | d:
/// −Δ is replaced by its eigenvalue ζ_{n,d} on each degree. Independent of
/// [`lambda_eig`]; used to cross-check [`inverse`].
pub fn inverse_differential_check(g: &OddBandlimited) -> Result<OddBandlimited> {
    if g.dim % 4 != 0 {
        return Err(Error::Unsupported(format!(
            "differential inversion needs d divisible by 4, got {}",
            g.dim
        )));
    }
    let mut coeffs = BTreeMap::new();
    for (&n, &c) in &g.degree_coeffs {
        if n % 2 == 0 {
            if c == 0.0 {
                continue;
            }
            return Err(Error::malformed(format!("degree {n} is even")));
        }
        coeffs.insert(n, c * laplacian_inverse_multiplier(n, g.dim));
    }
    Ok(g.with_coeffs(coeffs))
}

/// Quadrature value of H f(x) = ∫ 1{x'b ≥ 0} f(b) dσ(b).
///
/// Deterministic rules are first reflected so their construction axis
/// points at `x`, which places the hemisphere boundary between node rows.
pub fn forward_quadrature<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], quad: &QuadratureRule) -> Result<f64> {
    quad.check_dim(x.len())?;
    let rule = quad.aligned_to(x)?;
    Ok(rule.integrate(|b| if inner(x, b) >= 0.0 { f(b) } else { 0.0 }))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::harmonics::projector_kernel;
    use crate::sphere::{build_quadrature, normalize, sample_uniform};

    fn random_odd(d: usize, t: usize, anchors: usize, seed: u64) -> OddBandlimited {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = sample_uniform(d, anchors, seed).unwrap();
        let weights = (0..anchors).map(|_| rng.random_range(-1.0..1.0)).collect();
        let coeffs = (1..=t).step_by(2).map(|n| (n, rng.random_range(-2.0..2.0))).collect();
        OddBandlimited::new(pts, weights, coeffs, t).unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        for d in 2..8 {
            assert_eq!(lambda_eig(2, d), 0.0);
            assert_eq!(lambda_eig(4, d), 0.0);
        }
        assert!((lambda_eig(1, 3) - PI).abs() < 1e-14);
        assert!((lambda_eig(3, 3) + PI / 4.0).abs() < 1e-14);
        assert!((lambda_eig(1, 2) - 2.0).abs() < 1e-15);
        assert!((lambda_eig(3, 2) + 2.0 / 3.0).abs() < 1e-15);
        assert!((lambda_eig(1, 4) - 4.0 * PI / 3.0).abs() < 1e-14);
        for n in 1..30 {
            let circle = 2.0 * (n as f64 * PI / 2.0).sin() / n as f64;
            assert!((lambda_eig(n, 2) - circle).abs() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn eigenvalue_decay_and_sign() {
        for d in 2..8 {
            let mut prev = f64::INFINITY;
            let scaled: Vec<f64> = (10..=200)
                .map(|p| {
                    let l = lambda_eig(2 * p + 1, d);
                    assert_eq!(l.signum(), if p % 2 == 0 { 1.0 } else { -1.0 });
                    assert!(l.abs() < prev);
                    prev = l.abs();
                    l.abs() * (p as f64).powf(d as f64 / 2.0)
                })
                .collect();
            let max = scaled.iter().cloned().fold(0.0, f64::max);
            let min = scaled.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(max / min < 2.0, "d={d}: {min}..{max}");
        }
    }

    #[test]
    fn eigenvalues_match_one_dimensional_funk_hecke() {
        use crate::gegenbauer::{eval_all, eval_at_one, nu_for_dim};
        use crate::sphere::zonal_integral;
        for d in 2..7 {
            let nu = nu_for_dim(d);
            for n in 0..12 {
                let v = zonal_integral(
                    d,
                    |t| if t >= 0.0 { eval_all(nu, n, t).unwrap()[n] } else { 0.0 },
                    16,
                    24,
                    &[0.0],
                ) / eval_at_one(nu, n);
                assert!((v - lambda_eig(n, d)).abs() < 1e-10, "d={d} n={n}: {v}");
            }
        }
    }

    #[test]
    fn forward_scales_components() {
        let z = normalize(&[0.2, -0.4, 0.5]).unwrap();
        let mut c = BTreeMap::new();
        c.insert(1, 1.0);
        let g = OddBandlimited::new(vec![z.clone()], vec![1.0], c, 1).unwrap();
        let b = normalize(&[0.9, 0.1, -0.2]).unwrap();
        assert!((forward(&g).evaluate(&b) - PI * g.evaluate(&b)).abs() < 1e-14);
        let inv = inverse(&g).unwrap();
        assert!((inv.evaluate(&b) - g.evaluate(&b) / PI).abs() < 1e-14);

        let mut c = BTreeMap::new();
        c.insert(3, 0.7);
        let g = OddBandlimited::new(vec![z], vec![2.0], c, 5).unwrap();
        assert!((forward(&g).evaluate(&b) + PI / 4.0 * g.evaluate(&b)).abs() < 1e-14);
    }

    #[test]
    fn round_trip() {
        for d in 2..=4 {
            for t in [1usize, 5, 9, 15] {
                let g = random_odd(d, t, 6, (d * 100 + t) as u64);
                let back = inverse(&forward(&g)).unwrap();
                for b in sample_uniform(d, 20, 99).unwrap() {
                    let (x, y) = (g.evaluate(&b), back.evaluate(&b));
                    assert!((x - y).abs() <= 1e-10 * x.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn oddness_of_evaluation() {
        let g = random_odd(3, 7, 5, 4);
        for b in sample_uniform(3, 30, 2).unwrap() {
            assert!((g.evaluate(&b) + g.evaluate(&b.antipode())).abs() < 1e-10);
        }
    }

    #[test]
    fn even_content_rejected() {
        let z = normalize(&[0.0, 0.0, 1.0]).unwrap();
        let mut c = BTreeMap::new();
        c.insert(2, 1.0);
        assert!(matches!(
            OddBandlimited::new(vec![z.clone()], vec![1.0], c, 3),
            Err(Error::MalformedInput(_))
        ));
        let mut c = BTreeMap::new();
        c.insert(5, 1.0);
        assert!(OddBandlimited::new(vec![z.clone()], vec![1.0], c, 3).is_err());
        assert!(OddBandlimited::new(vec![z], vec![1.0, 2.0], BTreeMap::new(), 3).is_err());
    }

    #[test]
    fn add_requires_matching_band_limits() {
        let a = random_odd(3, 5, 3, 1);
        let b = random_odd(3, 7, 3, 2);
        assert!(matches!(a.try_add(&b), Err(Error::MalformedInput(_))));
        let c = a.with_coeffs(a.degree_coeffs.clone());
        let sum = a.try_add(&c).unwrap();
        let p = normalize(&[0.3, 0.1, 0.2]).unwrap();
        assert!((sum.evaluate(&p) - 2.0 * a.evaluate(&p)).abs() < 1e-12);
    }

    #[test]
    fn differential_inverse_matches_spectral() {
        for d in [4usize, 8] {
            for t in [1usize, 3, 9] {
                let g = random_odd(d, t, 4, (d + t) as u64);
                let a = inverse(&g).unwrap();
                let b = inverse_differential_check(&g).unwrap();
                for (n, ca) in a.degree_coeffs() {
                    let cb = b.degree_coeffs()[n];
                    assert!((ca - cb).abs() <= 1e-9 * ca.abs(), "d={d} n={n}");
                }
            }
        }
        // 1/λ(1,4) = 3/(4π)
        let mut c = BTreeMap::new();
        c.insert(1, 1.0);
        let g = OddBandlimited::new(vec![SpherePoint::basis(4, 0).unwrap()], vec![1.0], c, 1).unwrap();
        let inv = inverse_differential_check(&g).unwrap();
        assert!((inv.degree_coeffs()[&1] - 3.0 / (4.0 * PI)).abs() < 1e-14);
        let g3 = random_odd(3, 3, 2, 0);
        assert!(matches!(inverse_differential_check(&g3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn quadrature_oracle() {
        let quad = build_quadrature(3, 128, None).unwrap();
        let x = normalize(&[0.4, -0.3, 0.8]).unwrap();
        let uniform = forward_quadrature(|_| 1.0 / (4.0 * PI), &x, &quad).unwrap();
        assert!((uniform - 0.5).abs() < 1e-6);
        let z = normalize(&[-0.1, 0.6, 0.3]).unwrap();
        let q3 = forward_quadrature(|b| projector_kernel(3, 3, inner(b, &z)).unwrap(), &x, &quad).unwrap();
        let want = lambda_eig(3, 3) * projector_kernel(3, 3, inner(&x, &z)).unwrap();
        assert!((q3 - want).abs() < 1e-5);
        for p in 1..=3 {
            let q = forward_quadrature(|b| projector_kernel(2 * p, 3, inner(b, &z)).unwrap(), &x, &quad).unwrap();
            assert!(q.abs() < 1e-5, "degree {}: {q}", 2 * p);
        }
        assert!(forward_quadrature(|_| 1.0, &[1.0, 0.0], &quad).is_err());
    }
}
