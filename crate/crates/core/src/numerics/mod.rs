//! Thermodynamic kernels, semi-infinite quadrature, finite differences and
//! the logarithmic asymptote fit.

mod diff;
mod fit;
mod kernels;
mod quadrature;

use thiserror::Error;

pub use diff::{central_difference, five_point};
pub use fit::{fit_log_linear, LogLinearFit, MIN_FIT_SAMPLES};
pub use kernels::{bose_log_term, g_kernel, g_kernel_derivative, g_small_expansion, G_UNDERFLOW};
pub(crate) use kernels::{g_unchecked, log1mexp};
pub use quadrature::{integrate_interval, integrate_semi_infinite, Integral, QuadratureSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("{function} is undefined at x = {argument} (requires x > 0)")]
    Domain {
        function: &'static str,
        argument: f64,
    },
    #[error("quadrature did not converge: best estimate {best_estimate}, error {error_estimate}")]
    NonConvergence {
        best_estimate: f64,
        error_estimate: f64,
    },
    #[error("tail bound never fell below the cutoff (last upper limit {last_limit})")]
    TailNotBounded { last_limit: f64 },
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
    #[error("log-linear fit failed: {0}")]
    Fit(String),
}

/// `n` log-spaced points from `min` to `max` inclusive.
pub fn log_grid(min: f64, max: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![min];
    }
    let (lmin, lmax) = (min.ln(), max.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                min
            } else if i + 1 == n {
                max
            } else {
                (lmin + (lmax - lmin) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// `n` evenly spaced points from `min` to `max` inclusive.
pub fn linear_grid(min: f64, max: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![min];
    }
    (0..n)
        .map(|i| {
            if i + 1 == n {
                max
            } else {
                min + (max - min) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Log grid with a fixed density of points per decade.
pub fn per_decade_grid(min: f64, max: f64, per_decade: usize) -> Vec<f64> {
    let decades = (max / min).log10();
    let n = (decades * per_decade as f64).round() as usize + 1;
    log_grid(min, max, n.max(2))
}
