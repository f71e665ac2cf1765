//! Levinson's theorem per parity channel, the `ln T` coefficient of the
//! entropy it implies, and a check of that coefficient against a measured
//! temperature sweep.
//!
//! For a symmetric full-line potential the even and odd channels are the
//! Neumann and Dirichlet half-line problems on the right half. Each channel
//! contributes `N - delta(0)/pi` to the coefficient and the total is their sum.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;
use thiserror::Error;

use crate::models::{ModelError, Parity, SpectralModel};
use crate::numerics::{fit_log_linear, NumericsError};
use crate::solver::{
    Channel, ChannelBoundary, Geometry, PhaseTable, PiecewiseConstantPotential, SolverError,
};
use crate::thermo::ThermoSample;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LevinsonError {
    #[error("{0} is not a half-integer")]
    NotHalfInteger(f64),
    #[error("{0} is a half-integer outside the classification table {{-1/2, 0, 1/2}}")]
    NotInTable(f64),
    #[error("phase has not decayed: delta({omega}) = {phase}")]
    PhaseNotDecayed { omega: f64, phase: f64 },
    #[error("parity channels need a symmetric full-line potential")]
    NotSymmetric,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criticality {
    NonCritical,
    Critical,
}

/// One cell of the coefficient table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Cell {
    pub parity: Parity,
    pub criticality: Criticality,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub value: f64,
    pub cells: Vec<Cell>,
    pub non_negative: bool,
    /// Only reachable when an odd state precedes every even one.
    pub excluded_by_ordering: bool,
}

/// Levinson phase jumps `(delta_+, delta_-)` for `N_+` even and `N_-` odd
/// bound states. The critical line adds the half-bound state's `pi/2`.
pub fn levinson_predict_delta(n_even: usize, n_odd: usize, critical: bool) -> (f64, f64) {
    let (ne, no) = (n_even as f64, n_odd as f64);
    if critical {
        (PI * ne, PI * no + FRAC_PI_2)
    } else {
        (PI * ne - FRAC_PI_2, PI * no)
    }
}

/// Phase jump of a single channel.
pub fn predict_channel_delta(parity: Parity, n: usize, critical: bool) -> f64 {
    let (plus, minus) = match parity {
        Parity::Even => levinson_predict_delta(n, 0, critical),
        Parity::Odd => levinson_predict_delta(0, n, critical),
    };
    match parity {
        Parity::Even => plus,
        Parity::Odd => minus,
    }
}

/// Coefficient of `ln T` in the high-temperature entropy, `N - delta(0)/pi`.
pub fn log_coefficient(n_bound: usize, delta_at_zero: f64) -> f64 {
    n_bound as f64 - delta_at_zero / PI
}

/// Table value for one cell.
pub fn table_value(cell: Cell) -> f64 {
    match (cell.parity, cell.criticality) {
        (Parity::Even, Criticality::NonCritical) => 0.5,
        (Parity::Odd, Criticality::NonCritical) | (Parity::Even, Criticality::Critical) => 0.0,
        (Parity::Odd, Criticality::Critical) => -0.5,
    }
}

const HALF_INTEGER_TOL: f64 = 1e-9;

/// Table cells consistent with a coefficient value.
pub fn classify_coefficient(value: f64) -> Result<Classification, LevinsonError> {
    let twice = 2.0 * value;
    if !value.is_finite() || (twice - twice.round()).abs() > 2.0 * HALF_INTEGER_TOL {
        return Err(LevinsonError::NotHalfInteger(value));
    }
    let cell = |parity, criticality| Cell {
        parity,
        criticality,
    };
    let cells = match twice.round() as i64 {
        1 => vec![cell(Parity::Even, Criticality::NonCritical)],
        0 => vec![
            cell(Parity::Odd, Criticality::NonCritical),
            cell(Parity::Even, Criticality::Critical),
        ],
        -1 => vec![cell(Parity::Odd, Criticality::Critical)],
        _ => return Err(LevinsonError::NotInTable(value)),
    };
    let excluded_by_ordering = cells
        .iter()
        .all(|c| c.parity == Parity::Odd && c.criticality == Criticality::Critical);
    Ok(Classification {
        value: twice.round() / 2.0,
        cells,
        non_negative: value >= -HALF_INTEGER_TOL,
        excluded_by_ordering,
    })
}

/// Bound-state content of a symmetric spectrum, with the channel (if any)
/// that carries a zero-energy half-bound state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumFilling {
    pub n_even: usize,
    pub n_odd: usize,
    pub critical: Option<Parity>,
}

impl SpectrumFilling {
    /// Levels of a symmetric well alternate even, odd, even, ... so the
    /// counts differ by at most one and a threshold state has the next parity.
    pub fn respects_even_before_odd(&self) -> bool {
        let ordered = self.n_even == self.n_odd || self.n_even == self.n_odd + 1;
        let next = if self.n_even == self.n_odd {
            Parity::Even
        } else {
            Parity::Odd
        };
        ordered && self.critical.is_none_or(|p| p == next)
    }

    pub fn channel_delta(&self, parity: Parity) -> f64 {
        let n = match parity {
            Parity::Even => self.n_even,
            Parity::Odd => self.n_odd,
        };
        predict_channel_delta(parity, n, self.critical == Some(parity))
    }

    /// Sum of the per-channel coefficients.
    pub fn log_coefficient(&self) -> f64 {
        log_coefficient(self.n_even, self.channel_delta(Parity::Even))
            + log_coefficient(self.n_odd, self.channel_delta(Parity::Odd))
    }
}

/// Measured phase jumps `delta(0) - delta(inf)` of the even and odd channels
/// of a symmetric full-line potential.
pub fn channel_phase_jumps(pot: &PiecewiseConstantPotential) -> Result<(f64, f64), LevinsonError> {
    if pot.geometry() != Geometry::FullLine || !pot.is_symmetric() {
        return Err(LevinsonError::NotSymmetric);
    }
    let half = pot.right_half()?;
    let jump = |b| PhaseTable::build(&half, Channel::HalfLine(b)).threshold_phase();
    Ok((
        jump(ChannelBoundary::Neumann),
        jump(ChannelBoundary::Dirichlet),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevinsonReport {
    pub n_even: usize,
    pub n_odd: usize,
    /// Bound states without a parity label (half-line or asymmetric).
    pub n_unresolved: usize,
    pub delta_diff: f64,
    pub critical: bool,
    pub predicted_log_coeff: f64,
    pub measured_log_coeff: f64,
    pub measured_intercept: f64,
    pub fit_residual: f64,
    pub tolerance: f64,
    pub consistent: bool,
}

/// Largest `|delta|` accepted at the model's asymptotic frequency.
pub const PHASE_DECAY_TOL: f64 = 1e-3;

/// Fit the `ln T` coefficient of a high-temperature sweep and compare it with
/// `N - delta(0)/pi`.
pub fn verify_model(
    model: &SpectralModel,
    sweep: &[ThermoSample],
    tolerance: f64,
) -> Result<LevinsonReport, LevinsonError> {
    let w_inf = model.asymptotic_frequency();
    let d_inf = model.phase(w_inf);
    if !(d_inf.abs() < PHASE_DECAY_TOL) {
        return Err(LevinsonError::PhaseNotDecayed {
            omega: w_inf,
            phase: d_inf,
        });
    }
    let samples: Vec<_> = sweep.iter().map(|s| (s.temperature, s.entropy)).collect();
    let fit = fit_log_linear(&samples)?;

    let bound = model.bound_states();
    let count = |p| bound.iter().filter(|b| b.parity == Some(p)).count();
    let (n_even, n_odd) = (count(Parity::Even), count(Parity::Odd));
    let d0 = model.phase_at_zero();
    let raw = log_coefficient(bound.len(), d0);
    let predicted = (2.0 * raw).round() / 2.0;
    if (raw - predicted).abs() > PHASE_DECAY_TOL {
        return Err(LevinsonError::NotHalfInteger(raw));
    }
    Ok(LevinsonReport {
        n_even,
        n_odd,
        n_unresolved: bound.len() - n_even - n_odd,
        delta_diff: d0 - d_inf,
        critical: model.is_critical(),
        predicted_log_coeff: predicted,
        measured_log_coeff: fit.a,
        measured_intercept: fit.b,
        fit_residual: fit.residual,
        tolerance,
        consistent: (fit.a - predicted).abs() <= tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predict_examples() {
        let (p, _) = levinson_predict_delta(1, 0, false);
        assert!((p - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(levinson_predict_delta(0, 0, false), (-FRAC_PI_2, 0.0));
        assert_eq!(levinson_predict_delta(0, 0, true).0, 0.0);
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(log_coefficient(0, -FRAC_PI_2), 0.5);
        assert_eq!(log_coefficient(1, FRAC_PI_2), 0.5);
        assert_eq!(log_coefficient(0, 0.0), 0.0);
    }

    #[test]
    fn classification() {
        let c = classify_coefficient(0.5).unwrap();
        assert_eq!(c.cells.len(), 1);
        assert!(c.non_negative && !c.excluded_by_ordering);
        let c = classify_coefficient(0.0).unwrap();
        assert_eq!(c.cells.len(), 2);
        let c = classify_coefficient(-0.5).unwrap();
        assert!(!c.non_negative && c.excluded_by_ordering);
        assert!(matches!(
            classify_coefficient(0.3),
            Err(LevinsonError::NotHalfInteger(_))
        ));
        assert!(matches!(
            classify_coefficient(1.5),
            Err(LevinsonError::NotInTable(_))
        ));
        assert!(classify_coefficient(0.5 + 1e-10).is_ok());
    }

    #[test]
    fn channel_coefficients_reproduce_table() {
        for n in 0..=5 {
            for parity in [Parity::Even, Parity::Odd] {
                for (critical, criticality) in [
                    (false, Criticality::NonCritical),
                    (true, Criticality::Critical),
                ] {
                    let c = log_coefficient(n, predict_channel_delta(parity, n, critical));
                    let want = table_value(Cell {
                        parity,
                        criticality,
                    });
                    assert!((c - want).abs() < 1e-12, "{parity:?} {n} {critical}");
                }
            }
        }
    }

    #[test]
    fn square_well_channel_jumps() {
        use crate::solver::bound_states_numeric;
        // width 2, thresholds at depth (k pi / 2)^2
        for depth in [0.5, 1.5, 3.0, 6.0, 12.0] {
            let pot = PiecewiseConstantPotential::square_well(2.0, depth).unwrap();
            let bs = bound_states_numeric(&pot).unwrap();
            let ne = bs.iter().filter(|b| b.parity == Some(Parity::Even)).count();
            let no = bs.iter().filter(|b| b.parity == Some(Parity::Odd)).count();
            let (dp, dm) = channel_phase_jumps(&pot).unwrap();
            let (pp, pm) = levinson_predict_delta(ne, no, false);
            assert!((dp - pp).abs() < 1e-3 * PI, "{depth}: {dp} vs {pp}");
            assert!((dm - pm).abs() < 1e-3 * PI, "{depth}: {dm} vs {pm}");
        }
    }
}
