//! Gegenbauer (ultraspherical) polynomials C_n^ν on [−1, 1].
//!
//! Evaluation uses the forward three-term recursion in the degree,
//!
//! ```text
//! (n+2) C_{n+2}(t) = 2(ν+n+1) t C_{n+1}(t) − (2ν+n) C_n(t),
//! ```
//!
//! started from C_0 = 1 and C_1 = 2νt. For ν = 0 the polynomials are the
//! limits C_n^0 = lim_{ν→0} C_n^ν / ν = (2/n) T_n with C_0^0 = 1 and
//! C_1^0 = 2t; that normalization makes the n = 0 → 2 step of the recursion
//! degenerate, so C_2^0 = 2t² − 1 is seeded explicitly.

use crate::error::{Error, Result};

/// Largest degree accepted by [`explicit_eval`].
pub const EXPLICIT_MAX_DEGREE: usize = 30;

/// Index ν(d) = (d − 2)/2 of the Gegenbauer family attached to S^{d-1}.
pub fn nu_for_dim(d: usize) -> f64 {
    (d as f64 - 2.0) / 2.0
}

fn check_t(t: f64) -> Result<()> {
    if t.is_nan() || t.abs() > 1.0 {
        return Err(Error::domain(format!("Gegenbauer argument {t} outside [-1, 1]")));
    }
    Ok(())
}

fn check_nu(nu: f64) -> Result<()> {
    if nu.is_nan() || nu < 0.0 {
        return Err(Error::domain(format!("Gegenbauer index must be >= 0, got {nu}")));
    }
    Ok(())
}

/// Evaluator for C_0^ν, …, C_{max_degree}^ν at a fixed index ν.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerEvaluator {
    nu: f64,
    max_degree: usize,
}

impl GegenbauerEvaluator {
    pub fn new(nu: f64, max_degree: usize) -> Result<Self> {
        check_nu(nu)?;
        Ok(GegenbauerEvaluator { nu, max_degree })
    }

    /// Evaluator for the family attached to S^{d-1}, ν = (d−2)/2.
    pub fn for_dim(d: usize, max_degree: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::domain(format!("dimension must be >= 2, got {d}")));
        }
        Self::new(nu_for_dim(d), max_degree)
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Writes C_0(t), …, C_{max_degree}(t) into `out`, which must have
    /// length `max_degree + 1`. `t` is assumed to lie in [−1, 1].
    #[inline]
    pub fn eval_into(&self, t: f64, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.max_degree + 1);
        let nu = self.nu;
        out[0] = 1.0;
        if self.max_degree == 0 {
            return;
        }
        out[1] = if nu == 0.0 { 2.0 * t } else { 2.0 * nu * t };
        let mut start = 0;
        if nu == 0.0 && self.max_degree >= 2 {
            out[2] = 2.0 * t * t - 1.0;
            start = 1;
        }
        for n in start..self.max_degree.saturating_sub(1) {
            let nf = n as f64;
            out[n + 2] = (2.0 * (nu + nf + 1.0) * t * out[n + 1] - (2.0 * nu + nf) * out[n])
                / (nf + 2.0);
        }
    }

    /// Σ_n coeffs[n] C_n(t) over n ≤ min(max_degree, coeffs.len() − 1),
    /// computed in one recursion sweep without allocating.
    #[inline]
    pub fn dot(&self, t: f64, coeffs: &[f64]) -> f64 {
        let top = self.max_degree.min(coeffs.len().saturating_sub(1));
        if coeffs.is_empty() {
            return 0.0;
        }
        let nu = self.nu;
        let mut prev = 1.0;
        let mut acc = coeffs[0];
        if top == 0 {
            return acc;
        }
        let mut cur = if nu == 0.0 { 2.0 * t } else { 2.0 * nu * t };
        acc += coeffs[1] * cur;
        let mut n = 0usize;
        if nu == 0.0 && top >= 2 {
            let next = 2.0 * t * t - 1.0;
            acc += coeffs[2] * next;
            prev = cur;
            cur = next;
            n = 1;
        }
        while n + 2 <= top {
            let nf = n as f64;
            let next = (2.0 * (nu + nf + 1.0) * t * cur - (2.0 * nu + nf) * prev) / (nf + 2.0);
            acc += coeffs[n + 2] * next;
            prev = cur;
            cur = next;
            n += 1;
        }
        acc
    }

    pub fn eval_all(&self, t: f64) -> Result<Vec<f64>> {
        check_t(t)?;
        let mut out = vec![0.0; self.max_degree + 1];
        self.eval_into(t, &mut out);
        Ok(out)
    }
}

/// (C_0^ν(t), …, C_{max_degree}^ν(t)) by the three-term recursion.
pub fn eval_all(nu: f64, max_degree: usize, t: f64) -> Result<Vec<f64>> {
    GegenbauerEvaluator::new(nu, max_degree)?.eval_all(t)
}

/// C_n^ν(1): the binomial coefficient (n+2ν−1 choose n) for ν > 0, and
/// 2/n (n ≥ 1) or 1 (n = 0) for ν = 0.
pub fn eval_at_one(nu: f64, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if nu == 0.0 {
        return 2.0 / n as f64;
    }
    // (2ν)_n / n!
    (1..=n).fold(1.0, |acc, k| acc * (k as f64 + 2.0 * nu - 1.0) / k as f64)
}

/// Direct summation of the explicit representation
///
/// ```text
/// C_n^ν(t) = Σ_{l=0}^{⌊n/2⌋} (−1)^l (ν)_{n−l} / (l! (n−2l)!) (2t)^{n−2l},
/// ```
///
/// with (ν)_m replaced by (m−1)! when ν = 0 (the C_n^0 limit normalization).
/// Intended as an independent check of the recursion, not for production use.
pub fn explicit_eval(nu: f64, n: usize, t: f64) -> Result<f64> {
    check_nu(nu)?;
    check_t(t)?;
    if n > EXPLICIT_MAX_DEGREE {
        return Err(Error::Unsupported(format!(
            "explicit Gegenbauer sum limited to n <= {EXPLICIT_MAX_DEGREE}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let factorial = |k: usize| (1..=k).fold(1.0, |acc, j| acc * j as f64);
    let pochhammer = |a: f64, m: usize| (0..m).fold(1.0, |acc, j| acc * (a + j as f64));
    let mut sum = 0.0;
    for l in 0..=n / 2 {
        let m = n - l;
        let rising = if nu == 0.0 { factorial(m - 1) } else { pochhammer(nu, m) };
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * rising / (factorial(l) * factorial(n - 2 * l)) * (2.0 * t).powi((n - 2 * l) as i32);
    }
    Ok(sum)
}
