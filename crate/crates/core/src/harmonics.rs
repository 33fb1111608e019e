//! Condensed harmonic expansions on S^{d-1}.
//!
//! Everything here is zonal: the projector onto degree-n surface harmonics
//! has kernel q_{n,d}(x, y) = ᵇq_{n,d}(x'y) with
//!
//! ```text
//! ᵇq_{n,d}(t) = h(n,d) C_n^{ν(d)}(t) / (|S^{d-1}| C_n^{ν(d)}(1)),
//! ```
//!
//! so kernels are stored as per-degree coefficients multiplying C_n^{ν(d)}
//! and evaluated with a single Gegenbauer sweep.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gegenbauer::{eval_at_one, nu_for_dim, GegenbauerEvaluator};
use crate::sphere::{inner, sphere_area, QuadratureRule};

/// h(n, d), the dimension of the space of degree-n surface harmonics on S^{d-1}.
pub fn eigenspace_dim(n: usize, d: usize) -> u64 {
    assert!(d >= 2, "eigenspace_dim needs d >= 2");
    // h(n,d) = C(n+d-1, d-1) − C(n+d-3, d-1)
    let a = binomial(n + d - 1, d - 1);
    let b = if n >= 2 { binomial(n + d - 3, d - 1) } else { 0 };
    u64::try_from(a - b).expect("eigenspace dimension overflows u64")
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    acc
}

/// ζ_{n,d} = n(n+d−2), the eigenvalue of −Δ on degree-n harmonics.
pub fn laplace_eigenvalue(n: usize, d: usize) -> f64 {
    (n * (n + d - 2)) as f64
}

/// Coefficient of C_n^{ν(d)}(t) in ᵇq_{n,d}(t).
pub(crate) fn projector_scale(n: usize, d: usize) -> f64 {
    eigenspace_dim(n, d) as f64 / (sphere_area(d) * eval_at_one(nu_for_dim(d), n))
}

fn check_t(t: f64) -> Result<()> {
    if t.is_nan() || t.abs() > 1.0 {
        return Err(Error::domain(format!("inner product {t} outside [-1, 1]")));
    }
    Ok(())
}

/// ᵇq_{n,d}(t), the zonal projector kernel at inner product t.
pub fn projector_kernel(n: usize, d: usize, t: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::domain(format!("dimension must be >= 2, got {d}")));
    }
    check_t(t)?;
    let c = GegenbauerEvaluator::for_dim(d, n)?.eval_all(t)?;
    Ok(projector_scale(n, d) * c[n])
}

/// Taper weights χ(n, T) of a smoothed projection kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum KernelFamily {
    /// χ(n,T) = (1 − (ζ_{n,d}/(ζ_{T,d}+1))^{s/2})^l.
    Riesz { s: f64, l: u32 },
    /// χ(n,T) = ψ(n/T) for a C^∞ cutoff ψ equal to 1 on [0, 1/2] and 0 on [1, ∞).
    DelayedMeans,
    /// χ ≡ 1: plain truncation.
    Dirichlet,
}

/// A degree-T smoothed projection kernel K_T = Σ_{n≤T} χ(n,T) q_{n,d} on S^{d-1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    family: KernelFamily,
    degree: usize,
    dim: usize,
}

impl KernelSpec {
    pub fn new(family: KernelFamily, degree: usize, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::config(format!("kernel dimension must be >= 2, got {dim}")));
        }
        match family {
            KernelFamily::Riesz { s, l } => {
                if !(s > 0.0) || !s.is_finite() {
                    return Err(Error::config(format!("Riesz exponent s must be positive, got {s}")));
                }
                // l > (d−2)/2
                if 2 * l as usize <= dim - 2 {
                    return Err(Error::config(format!(
                        "Riesz order l = {l} must exceed (d-2)/2 = {}",
                        (dim as f64 - 2.0) / 2.0
                    )));
                }
            }
            KernelFamily::DelayedMeans => {
                if degree == 0 || !degree.is_power_of_two() {
                    return Err(Error::config(format!(
                        "delayed means kernel needs a power-of-two degree, got {degree}"
                    )));
                }
            }
            KernelFamily::Dirichlet => {}
        }
        Ok(KernelSpec { family, degree, dim })
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The same family at another degree.
    pub fn with_degree(&self, degree: usize) -> Result<Self> {
        Self::new(self.family, degree, self.dim)
    }

    /// Coefficients c_n with K_T(t) = Σ c_n C_n^{ν(d)}(t).
    pub(crate) fn gegenbauer_coeffs(&self) -> Vec<f64> {
        (0..=self.degree)
            .map(|n| chi_weight(self, n) * projector_scale(n, self.dim))
            .collect()
    }

    /// As [`gegenbauer_coeffs`](Self::gegenbauer_coeffs) with even degrees zeroed.
    pub(crate) fn odd_gegenbauer_coeffs(&self) -> Vec<f64> {
        let mut c = self.gegenbauer_coeffs();
        c.iter_mut().step_by(2).for_each(|v| *v = 0.0);
        c
    }

    /// Precomputes the kernel for repeated evaluation.
    pub fn zonal(&self) -> ZonalKernel {
        ZonalKernel::from_coeffs(self.dim, self.gegenbauer_coeffs())
    }

    pub fn zonal_odd(&self) -> ZonalKernel {
        ZonalKernel::from_coeffs(self.dim, self.odd_gegenbauer_coeffs())
    }
}

/// Smooth cutoff with ψ = 1 on [0, 1/2], ψ = 0 on [1, ∞), nonincreasing and C^∞.
pub fn delayed_means_cutoff(x: f64) -> f64 {
    let g = |u: f64| if u > 0.0 { (-1.0 / u).exp() } else { 0.0 };
    let a = g(2.0 - 2.0 * x);
    let b = g(2.0 * x - 1.0);
    if a == 0.0 {
        0.0
    } else {
        a / (a + b)
    }
}

/// χ(n, T) for the kernel family of `spec`; zero above the kernel degree.
pub fn chi_weight(spec: &KernelSpec, n: usize) -> f64 {
    let t = spec.degree;
    if n > t {
        return 0.0;
    }
    match spec.family {
        KernelFamily::Riesz { s, l } => {
            let ratio = laplace_eigenvalue(n, spec.dim) / (laplace_eigenvalue(t, spec.dim) + 1.0);
            (1.0 - ratio.powf(s / 2.0)).powi(l as i32)
        }
        KernelFamily::DelayedMeans => delayed_means_cutoff(n as f64 / t as f64),
        KernelFamily::Dirichlet => 1.0,
    }
}

/// A zonal function t ↦ Σ_n c_n C_n^{ν(d)}(t), precomputed for fast evaluation.
#[derive(Debug, Clone)]
pub struct ZonalKernel {
    dim: usize,
    coeffs: Vec<f64>,
    evaluator: GegenbauerEvaluator,
}

impl ZonalKernel {
    pub(crate) fn from_coeffs(dim: usize, coeffs: Vec<f64>) -> Self {
        let evaluator = GegenbauerEvaluator::for_dim(dim, coeffs.len().saturating_sub(1))
            .expect("dimension validated by caller");
        ZonalKernel { dim, coeffs, evaluator }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Value at inner product `t`, which must lie in [−1, 1].
    #[inline]
    pub fn at(&self, t: f64) -> f64 {
        self.evaluator.dot(t, &self.coeffs)
    }

    /// Value at the pair (x, y) of unit vectors.
    #[inline]
    pub fn between(&self, x: &[f64], y: &[f64]) -> f64 {
        self.at(inner(x, y))
    }
}

/// K_T(t) = Σ_{n≤T} χ(n,T) ᵇq_{n,d}(t).
pub fn kernel_eval(spec: &KernelSpec, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(spec.zonal().at(t))
}

/// Odd part of K_T: the sum over odd n ≤ T only.
pub fn kernel_odd_eval(spec: &KernelSpec, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(spec.zonal_odd().at(t))
}

/// Quadrature approximation of (Q_{n,d} f)(x) = ∫ q_{n,d}(x,y) f(y) dσ(y).
pub fn project<F: Fn(&[f64]) -> f64>(
    f: F,
    n: usize,
    quad: &QuadratureRule,
    x: &[f64],
) -> Result<f64> {
    quad.check_dim(x.len())?;
    let d = quad.dim();
    let ev = GegenbauerEvaluator::for_dim(d, n)?;
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = projector_scale(n, d);
    Ok(quad.integrate(|y| ev.dot(inner(x, y), &coeffs) * f(y)))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::gegenbauer::eval_all;
    use crate::sphere::{build_quadrature, normalize, sample_uniform, zonal_integral};

    fn factorial(k: usize) -> f64 {
        (1..=k).fold(1.0, |a, j| a * j as f64)
    }

    #[test]
    fn eigenspace_dims() {
        assert_eq!(eigenspace_dim(0, 2), 1);
        for n in 1..20 {
            assert_eq!(eigenspace_dim(n, 2), 2);
            assert_eq!(eigenspace_dim(n, 3), 2 * n as u64 + 1);
        }
        assert_eq!(eigenspace_dim(5, 3), 11);
        for d in 2..10 {
            assert_eq!(eigenspace_dim(0, d), 1);
        }
        // factorial form, valid whenever n + d − 2 > 0
        for d in 3..9 {
            for n in 0..12 {
                let f = (2 * n + d - 2) as f64 * factorial(n + d - 2)
                    / (factorial(n) * factorial(d - 2) * (n + d - 2) as f64);
                assert!((eigenspace_dim(n, d) as f64 - f).abs() < 1e-6 * f);
            }
        }
    }

    #[test]
    fn projector_kernel_values() {
        for d in 2..6 {
            for t in [-1.0, -0.3, 0.0, 0.8] {
                let q0 = projector_kernel(0, d, t).unwrap();
                assert!((q0 - 1.0 / sphere_area(d)).abs() < 1e-15);
            }
        }
        for t in [-0.9, 0.1, 0.5] {
            let q1 = projector_kernel(1, 3, t).unwrap();
            assert!((q1 - 3.0 * t / (4.0 * PI)).abs() < 1e-15);
        }
        assert!(matches!(projector_kernel(1, 3, 1.2), Err(Error::Domain(_))));
    }

    #[test]
    fn projector_parity() {
        for d in 2..6 {
            for n in 0..10 {
                for t in [0.1, 0.45, 0.9] {
                    let a = projector_kernel(n, d, t).unwrap();
                    let b = projector_kernel(n, d, -t).unwrap();
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    assert_eq!(b, sign * a);
                }
            }
        }
    }

    #[test]
    fn gegenbauer_normalization_identity() {
        for d in 2..8 {
            let nu = nu_for_dim(d);
            for n in 0..12 {
                let lhs = zonal_integral(
                    d,
                    |t| eval_all(nu, n, t).unwrap()[n].powi(2),
                    16,
                    24,
                    &[],
                ) / sphere_area(d - 1);
                let c1 = eval_at_one(nu, n);
                let rhs = sphere_area(d) * c1 * c1 / (sphere_area(d - 1) * eigenspace_dim(n, d) as f64);
                assert!((lhs - rhs).abs() < 1e-8 * rhs.max(1.0), "d={d} n={n}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn reproducing_property() {
        let quad = build_quadrature(3, 24, None).unwrap();
        let x = normalize(&[0.3, -0.2, 0.9]).unwrap();
        let z = normalize(&[-0.5, 0.7, 0.1]).unwrap();
        for n in 0..=8 {
            let lhs = quad.integrate(|y| {
                projector_kernel(n, 3, inner(&x, y)).unwrap()
                    * projector_kernel(n, 3, inner(y, &z)).unwrap()
            });
            let rhs = projector_kernel(n, 3, inner(&x, &z)).unwrap();
            assert!((lhs - rhs).abs() < 1e-7, "n={n}");
        }
    }

    #[test]
    fn project_examples() {
        let quad = build_quadrature(3, 64, None).unwrap();
        let x = normalize(&[0.1, 0.4, -0.7]).unwrap();
        for n in 1..5 {
            assert!(project(|_| 1.0, n, &quad, &x).unwrap().abs() < 1e-8);
        }
        let z = normalize(&[0.8, -0.1, 0.3]).unwrap();
        for m in 0..=8 {
            for n in 0..=8 {
                let f = |y: &[f64]| projector_kernel(m, 3, inner(y, &z)).unwrap();
                let got = project(f, n, &quad, &x).unwrap();
                let want = if m == n { projector_kernel(n, 3, inner(&x, &z)).unwrap() } else { 0.0 };
                assert!((got - want).abs() < 1e-7, "m={m} n={n}");
            }
        }
        let e1 = [1.0, 0.0, 0.0];
        let v = project(|y| y[0], 1, &quad, &e1).unwrap();
        assert!((v - 1.0).abs() < 1e-7);
        assert!(matches!(project(|_| 1.0, 1, &quad, &[1.0, 0.0]), Err(Error::Config(_))));
    }

    #[test]
    fn projection_idempotent() {
        let quad = build_quadrature(3, 64, None).unwrap();
        let x = normalize(&[0.2, 0.2, 0.95]).unwrap();
        let f = |y: &[f64]| (3.0 * y[0]).exp() * (1.0 + y[1] * y[2]);
        for n in 0..=8 {
            let once = project(f, n, &quad, &x).unwrap();
            // the inner projection runs at every outer node, so both passes
            // use a coarser rule
            let coarse = build_quadrature(3, 20, None).unwrap();
            let inner_proj = |y: &[f64]| project(f, n, &coarse, y).unwrap();
            let twice = project(inner_proj, n, &coarse, &x).unwrap();
            let once_coarse = project(f, n, &coarse, &x).unwrap();
            assert!((twice - once_coarse).abs() < 2e-7, "n={n}");
            assert!((once - once_coarse).abs() < 1e-6, "n={n}");
        }
    }

    #[test]
    fn chi_weights() {
        let riesz = KernelSpec::new(KernelFamily::Riesz { s: 2.0, l: 3 }, 8, 3).unwrap();
        assert_eq!(chi_weight(&riesz, 0), 1.0);
        let mut prev = 1.0;
        for n in 1..=8 {
            let c = chi_weight(&riesz, n);
            assert!(c < prev && c >= 0.0);
            prev = c;
        }
        assert!(chi_weight(&riesz, 8) > 0.0);
        assert_eq!(chi_weight(&riesz, 9), 0.0);
        for n in 0..=4 {
            assert!(chi_weight(&riesz, n) >= 0.2);
        }

        let dm = KernelSpec::new(KernelFamily::DelayedMeans, 16, 3).unwrap();
        for n in 0..=8 {
            assert_eq!(chi_weight(&dm, n), 1.0);
        }
        assert_eq!(chi_weight(&dm, 16), 0.0);
        let mut prev = 1.0;
        for n in 9..16 {
            let c = chi_weight(&dm, n);
            assert!(c <= prev && (0.0..=1.0).contains(&c));
            prev = c;
        }
        let dir = KernelSpec::new(KernelFamily::Dirichlet, 5, 4).unwrap();
        assert!((0..=5).all(|n| chi_weight(&dir, n) == 1.0));
    }

    #[test]
    fn kernel_spec_validation() {
        assert!(KernelSpec::new(KernelFamily::DelayedMeans, 12, 3).is_err());
        assert!(KernelSpec::new(KernelFamily::DelayedMeans, 0, 3).is_err());
        // l must exceed (d−2)/2
        assert!(KernelSpec::new(KernelFamily::Riesz { s: 2.0, l: 1 }, 4, 4).is_err());
        assert!(KernelSpec::new(KernelFamily::Riesz { s: 2.0, l: 2 }, 4, 4).is_ok());
        assert!(KernelSpec::new(KernelFamily::Riesz { s: 2.0, l: 0 }, 4, 2).is_err());
        assert!(KernelSpec::new(KernelFamily::Riesz { s: -1.0, l: 3 }, 4, 3).is_err());
    }

    #[test]
    fn dirichlet_circle_kernel() {
        for big_t in [1usize, 3, 8] {
            let spec = KernelSpec::new(KernelFamily::Dirichlet, big_t, 2).unwrap();
            let at_one = kernel_eval(&spec, 1.0).unwrap();
            assert!((at_one - (2 * big_t + 1) as f64 / (2.0 * PI)).abs() < 1e-13);
            // classical form (1 + 2Σ cos nθ)/(2π)
            for theta in [0.3f64, 1.1, 2.9] {
                let classical = (1.0 + 2.0 * (1..=big_t).map(|n| (n as f64 * theta).cos()).sum::<f64>()) / (2.0 * PI);
                assert!((kernel_eval(&spec, theta.cos()).unwrap() - classical).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn kernel_integrates_to_chi_zero() {
        let quad = build_quadrature(3, 48, None).unwrap();
        let x = normalize(&[0.3, 0.3, -0.9]).unwrap();
        for spec in [
            KernelSpec::new(KernelFamily::Riesz { s: 2.0, l: 3 }, 10, 3).unwrap(),
            KernelSpec::new(KernelFamily::DelayedMeans, 16, 3).unwrap(),
            KernelSpec::new(KernelFamily::Dirichlet, 7, 3).unwrap(),
        ] {
            let k = spec.zonal();
            let total = quad.integrate(|y| k.between(&x, y));
            assert!((total - chi_weight(&spec, 0)).abs() < 1e-8);
        }
    }

    #[test]
    fn odd_part() {
        let spec = KernelSpec::new(KernelFamily::Riesz { s: 2.0, l: 3 }, 9, 3).unwrap();
        assert_eq!(kernel_odd_eval(&spec, 0.0).unwrap(), 0.0);
        for k in 0..=50 {
            let t = -1.0 + k as f64 / 25.0;
            let odd = kernel_odd_eval(&spec, t).unwrap();
            assert!((odd + kernel_odd_eval(&spec, -t).unwrap()).abs() < 1e-12);
            let half_diff = (kernel_eval(&spec, t).unwrap() - kernel_eval(&spec, -t).unwrap()) / 2.0;
            assert!((odd - half_diff).abs() < 1e-12);
        }
        assert!(kernel_eval(&spec, 1.1).is_err());
    }

    #[test]
    fn riesz_l1_norm_bounded_dirichlet_grows() {
        let l1 = |spec: &KernelSpec| {
            let k = spec.zonal();
            zonal_integral(3, |t| k.at(t).abs(), 400, 8, &[])
        };
        let riesz: Vec<f64> = [4, 8, 16, 32, 64]
            .iter()
            .map(|&t| l1(&KernelSpec::new(KernelFamily::Riesz { s: 2.0, l: 3 }, t, 3).unwrap()))
            .collect();
        let dir: Vec<f64> = [4, 8, 16, 32, 64]
            .iter()
            .map(|&t| l1(&KernelSpec::new(KernelFamily::Dirichlet, t, 3).unwrap()))
            .collect();
        assert!(riesz.iter().all(|&v| v < 2.0), "{riesz:?}");
        assert!(dir[4] > 2.0 * dir[0], "{dir:?}");
    }

    #[test]
    fn lipschitz_growth_bounded_by_t_to_the_d() {
        let pts = sample_uniform(3, 200, 5).unwrap();
        let mut ratios = Vec::new();
        for big_t in [4usize, 8, 16, 32, 64] {
            let k = KernelSpec::new(KernelFamily::Riesz { s: 2.0, l: 3 }, big_t, 3).unwrap().zonal();
            let z = &pts[0];
            let mut lip: f64 = 0.0;
            for w in pts[1..].windows(2) {
                let (x, y) = (&w[0], &w[1]);
                let dist = x.iter().zip(y.iter()).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
                lip = lip.max((k.between(z, x) - k.between(z, y)).abs() / dist);
            }
            ratios.push(lip / (big_t as f64).powi(3));
        }
        for w in ratios.windows(2) {
            assert!(w[1] <= w[0] * 1.5, "{ratios:?}");
        }
    }
}
