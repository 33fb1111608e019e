//! Nonparametric estimation of the density of random coefficients in
//! binary choice models.
//!
//! In the model Y = 1{X'β ≥ 0} with X and β normalised to the unit sphere
//! S^{d-1}, the choice probability is the hemispherical transform of the
//! coefficient density f_β. Inverting that transform on a smoothed harmonic
//! expansion gives a closed-form estimator of f_β.
//!
//! * [`sphere`]: points, surface areas, sampling and quadrature on S^{d-1}.
//! * [`gegenbauer`]: Gegenbauer polynomials by recursion and explicit sums.
//! * [`harmonics`]: projection kernels and the Riesz, delayed-means and
//!   Dirichlet smoothing families.
//! * [`hemispherical`]: eigenvalues of the transform, forward application
//!   and inversion on band-limited odd functions.
//! * [`estimator`]: the density, choice-probability and standard-error
//!   estimators, marginals and the identification diagnostic.
//! * [`simulator`]: simulated data with closed-form ground truth.
//! * [`grid`], [`bench`], [`config`], [`dataset`], [`cli`]: evaluation
//!   grids and mode search, Monte-Carlo benchmarks, run configuration, CSV
//!   I/O and the command-line tool.

pub mod bench;
pub mod cli;
pub mod config;
pub mod dataset;
pub mod error;
pub mod estimator;
pub mod gegenbauer;
pub mod grid;
pub mod harmonics;
pub mod hemispherical;
pub mod simulator;
pub mod sphere;

pub use error::{Error, Result};
pub use estimator::{
    estimate_fbeta, estimate_r, identification_diagnostic, marginal_density, standard_error,
    ChoiceSample, DensityEstimate, EstimatorConfig, IdentificationReport, RHatEstimate,
};
pub use harmonics::{KernelFamily, KernelSpec};
pub use hemispherical::{forward, inverse, lambda_eig, OddBandlimited};
pub use simulator::{generate, true_fbeta_on_sphere, DgpSpec, Oracle};
pub use sphere::{build_quadrature, QuadratureRule, SpherePoint};
