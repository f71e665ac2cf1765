//! Temperature-dependent free energy and entropy of a [`SpectralModel`],
//! and their high-temperature limits.
//!
//! Both quantities are computed by direct quadrature against the analytic
//! `delta'`. The integrals run over `[0, inf)` and converge because of the
//! Boltzmann factor; the upper limit is chosen from the model's envelope on
//! `|delta'|` times an exponential bound on the kernel tail.

use std::f64::consts::{E, PI};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::models::{ModelError, PlasmaPointParams, SpectralModel};
use crate::numerics::{self, g_unchecked, log1mexp, NumericsError, QuadratureSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThermoError {
    #[error("temperature must be positive and finite, got {0}")]
    InvalidTemperature(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(
        "high-temperature integral diverges: with mu = 0 and delta(0) = {delta_at_zero} the \
         ln(omega) endpoint term is not integrable for this model"
    )]
    DivergentEndpoint { delta_at_zero: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermoSample {
    pub temperature: f64,
    pub free_energy: f64,
    pub entropy: f64,
}

/// Points per decade used for default temperature sweeps.
pub const TEMPERATURES_PER_DECADE: usize = 40;

const INV_ONE_MINUS_INV_E: f64 = 1.0 / (1.0 - 1.0 / E);

/// Bound on `int_X^inf g(x) dx`, valid for `X >= 1`.
fn g_tail(x: f64) -> f64 {
    if x < 1.0 {
        return f64::INFINITY;
    }
    (x + 2.0) * (-x).exp() * INV_ONE_MINUS_INV_E
}

/// Bound on `int_X^inf |ln(1 - e^-x)| dx`, valid for `X >= 1`.
fn log_tail(x: f64) -> f64 {
    if x < 1.0 {
        return f64::INFINITY;
    }
    (-x).exp() * INV_ONE_MINUS_INV_E
}

fn check_inputs(model: &SpectralModel, t: f64) -> Result<(), ThermoError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(ThermoError::InvalidTemperature(t));
    }
    let mu = model.chemical_potential();
    for b in model.bound_states() {
        if !(mu > b.kappa) {
            return Err(ModelError::ChemicalPotentialTooLow { mu, kappa: b.kappa }.into());
        }
    }
    Ok(())
}

fn model_spec(model: &SpectralModel, spec: &QuadratureSpec) -> QuadratureSpec {
    spec.with_panel_width(spec.panel_width_hint.min(model.oscillation_panel()))
}

/// `int_0^inf kernel((w + mu)/T) delta'(w) dw`, with `kernel_tail(X)` bounding
/// `int_X^inf |kernel|`.
fn spectral_integral(
    model: &SpectralModel,
    t: f64,
    spec: &QuadratureSpec,
    kernel: fn(f64) -> f64,
    kernel_tail: fn(f64) -> f64,
) -> Result<f64, ThermoError> {
    if matches!(model, SpectralModel::Free) {
        return Ok(0.0);
    }
    let mu = model.chemical_potential();
    let spec = model_spec(model, spec);
    let spec = spec.with_panel_width(spec.panel_width_hint.min(4.0 * t));
    let integral = numerics::integrate_semi_infinite(
        |w| {
            let k = kernel((w + mu) / t);
            if k == 0.0 {
                0.0
            } else {
                k * model.phase_derivative(w)
            }
        },
        |w| t * kernel_tail((w + mu) / t) * model.derivative_envelope(w),
        t,
        &spec,
    )?;
    Ok(integral.value)
}

/// Temperature-dependent part of the free energy,
/// `T sum_n ln(1 - e^{-(mu - kappa_n)/T}) + (T/pi) int_0^inf ln(1 - e^{-(w + mu)/T}) delta'(w) dw`.
pub fn free_energy(model: &SpectralModel, t: f64) -> Result<f64, ThermoError> {
    free_energy_with(model, t, &QuadratureSpec::default())
}

pub fn free_energy_with(
    model: &SpectralModel,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, ThermoError> {
    check_inputs(model, t)?;
    let mu = model.chemical_potential();
    let bound: f64 = model
        .bound_states()
        .iter()
        .map(|b| t * log1mexp((mu - b.kappa) / t))
        .sum();
    let continuum = spectral_integral(model, t, spec, log1mexp, log_tail)?;
    Ok(bound + t / PI * continuum)
}

/// Entropy `sum_n g((mu - kappa_n)/T) + (1/pi) int_0^inf g((w + mu)/T) delta'(w) dw`.
pub fn entropy(model: &SpectralModel, t: f64) -> Result<f64, ThermoError> {
    entropy_with(model, t, &QuadratureSpec::default())
}

pub fn entropy_with(
    model: &SpectralModel,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, ThermoError> {
    check_inputs(model, t)?;
    let mu = model.chemical_potential();
    let bound: f64 = model
        .bound_states()
        .iter()
        .map(|b| g_unchecked((mu - b.kappa) / t))
        .sum();
    let continuum = spectral_integral(model, t, spec, g_unchecked, g_tail)?;
    Ok(bound + continuum / PI)
}

/// Free energy and entropy over a temperature grid, evaluated in parallel.
/// Output order follows the input grid.
pub fn sweep(
    model: &SpectralModel,
    temperatures: &[f64],
    spec: &QuadratureSpec,
) -> Result<Vec<ThermoSample>, ThermoError> {
    temperatures
        .par_iter()
        .map(|&t| {
            Ok(ThermoSample {
                temperature: t,
                free_energy: free_energy_with(model, t, spec)?,
                entropy: entropy_with(model, t, spec)?,
            })
        })
        .collect()
}

/// Entropy over a temperature grid without the free energy.
pub fn entropy_sweep(
    model: &SpectralModel,
    temperatures: &[f64],
    spec: &QuadratureSpec,
) -> Result<Vec<f64>, ThermoError> {
    temperatures
        .par_iter()
        .map(|&t| entropy_with(model, t, spec))
        .collect()
}

/// Cutoff beyond which only the leading `-c/w` behaviour of the phase is kept.
fn asymptotic_cutoff(model: &SpectralModel) -> f64 {
    let base = model
        .frequency_scale()
        .max(model.chemical_potential())
        .max(1.0 / model.oscillation_panel().min(1e300));
    match model {
        SpectralModel::Numeric(m) => 1e3 * m.potential().max_abs_height().sqrt().max(base),
        _ => 1e4 * base,
    }
}

/// Coefficient `c` of the averaged large-frequency phase, `delta ~ -c/w`.
fn born_coefficient(model: &SpectralModel) -> f64 {
    match model {
        SpectralModel::Free => 0.0,
        SpectralModel::PlasmaPoint(p) => 0.5 * p.plasma_frequency(),
        SpectralModel::Delta(p) => p.alpha(),
        SpectralModel::Numeric(m) => {
            let pot = m.potential();
            0.5 * pot
                .breakpoints()
                .windows(2)
                .zip(pot.heights())
                .map(|(b, h)| (b[1] - b[0]) * h)
                .sum::<f64>()
        }
    }
}

/// Constant `L = int_0^inf ln(w + mu) delta'(w) dw` entering the
/// high-temperature entropy.
///
/// Integrated by parts, `L = -ln(mu) delta(0) - int_0^inf delta(w)/(w + mu) dw`,
/// whenever the boundary term is finite. For the delta potential at `mu = 0`
/// the direct form is used, which converges since `delta'` is bounded at
/// threshold. Other models with `mu = 0` and `delta(0) != 0` have no finite
/// boundary term and are rejected.
pub fn log_moment(model: &SpectralModel, spec: &QuadratureSpec) -> Result<f64, ThermoError> {
    let mu = model.chemical_potential();
    let d0 = model.phase_at_zero();
    match model {
        SpectralModel::Free => return Ok(0.0),
        SpectralModel::PlasmaPoint(p) => {
            return Ok(-PI * plasma_entropy_limit_integral_with(p, spec)?);
        }
        SpectralModel::Delta(p) if mu == 0.0 => {
            let a = p.alpha();
            let cutoff = asymptotic_cutoff(model);
            let body = numerics::integrate_interval(
                |w| w.ln() * model.phase_derivative(w),
                0.0,
                cutoff,
                spec,
            )?;
            // a int_W^inf ln(w) / w^2 dw
            return Ok(body.value + a * (cutoff.ln() + 1.0) / cutoff);
        }
        _ => {}
    }
    if mu == 0.0 && d0.abs() > 1e-12 {
        return Err(ThermoError::DivergentEndpoint { delta_at_zero: d0 });
    }
    let cutoff = asymptotic_cutoff(model);
    let body = numerics::integrate_interval(
        |w| model.phase(w) / (w + mu),
        0.0,
        cutoff,
        &model_spec(model, spec),
    )?;
    // -c int_W^inf dw / (w (w + mu))
    let c = born_coefficient(model);
    let tail = if mu > 0.0 {
        -c * (mu / cutoff).ln_1p() / mu
    } else {
        -c / cutoff
    };
    let boundary = if mu > 0.0 { -mu.ln() * d0 } else { 0.0 };
    Ok(boundary - body.value - tail)
}

/// High-temperature form of the entropy,
/// `sum_n (ln T + 1 - ln(mu - kappa_n)) + (1/pi) int_0^inf (ln T + 1 - ln(w + mu)) delta'(w) dw`,
/// using `int delta' = -delta(0)`.
pub fn entropy_high_t(model: &SpectralModel, t: f64) -> Result<f64, ThermoError> {
    entropy_high_t_with(model, t, &QuadratureSpec::default())
}

pub fn entropy_high_t_with(
    model: &SpectralModel,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64, ThermoError> {
    check_inputs(model, t)?;
    let mu = model.chemical_potential();
    let lead = t.ln() + 1.0;
    let bound: f64 = model
        .bound_states()
        .iter()
        .map(|b| lead - (mu - b.kappa).ln())
        .sum();
    let continuum = -lead * model.phase_at_zero() - log_moment(model, spec)?;
    Ok(bound + continuum / PI)
}

/// High-temperature plasma-point entropy, `-(1/2) ln(1 + Omega R)`.
pub fn plasma_entropy_limit(p: &PlasmaPointParams) -> f64 {
    -0.5 * p.coupling().ln_1p()
}

/// `(1/pi) int_0^inf delta(w) / w dw` for the plasma point, by quadrature.
pub fn plasma_entropy_limit_integral(p: &PlasmaPointParams) -> Result<f64, ThermoError> {
    plasma_entropy_limit_integral_with(p, &QuadratureSpec::default())
}

pub fn plasma_entropy_limit_integral_with(
    p: &PlasmaPointParams,
    spec: &QuadratureSpec,
) -> Result<f64, ThermoError> {
    let model = SpectralModel::PlasmaPoint(*p);
    let r = p.radius();
    // cutoff on the lattice sin(wR) = 0
    let n = (asymptotic_cutoff(&model) * r / PI).ceil();
    let cutoff = n * PI / r;
    let body = numerics::integrate_interval(
        |w| crate::models::plasma_phase_shift(w, p) / w,
        0.0,
        cutoff,
        &model_spec(&model, spec),
    )?;
    // Beyond the cutoff delta = -Omega sin^2(wR)/w + O(w^-2) with the
    // O(w^-2) term averaging to zero, so only the leading term is kept.
    let tail = -p.plasma_frequency() * sin2_over_w2_tail(cutoff, r);
    Ok((body.value + tail) / PI)
}

/// `int_W^inf sin^2(wR)/w^2 dw` for `W = n pi / R`, which reduces to
/// `R int_{2WR}^inf sin(u)/u du`.
fn sin2_over_w2_tail(cutoff: f64, r: f64) -> f64 {
    r * sine_integral_tail(2.0 * cutoff * r)
}

/// `int_x^inf sin(u)/u du` for large `x` from the asymptotic series of the
/// auxiliary functions, `f(x) cos x + g(x) sin x`.
fn sine_integral_tail(x: f64) -> f64 {
    let (mut f, mut g) = (0.0, 0.0);
    let mut term_f = 1.0 / x;
    let mut term_g = 1.0 / (x * x);
    for k in 0..8 {
        f += term_f;
        g += term_g;
        let kf = (2 * k + 1) as f64;
        let kg = (2 * k + 2) as f64;
        term_f *= -kf * (kf + 1.0) / (x * x);
        term_g *= -kg * (kg + 1.0) / (x * x);
    }
    f * x.cos() + g * x.sin()
}

/// High-temperature delta-potential entropy, `(1/2)(ln T + 1)`.
pub fn delta_entropy_asymptote(t: f64) -> f64 {
    0.5 * (t.ln() + 1.0)
}
