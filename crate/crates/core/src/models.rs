//! Closed-form scattering data for the plasma point and the delta potential,
//! and the [`SpectralModel`] interface consumed by the thermodynamics.
//!
//! Natural units throughout: frequencies, `Omega`, `alpha`, `mu` and `kappa`
//! are inverse lengths, `R` is a length.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::solver::{self, Channel, Geometry, PhaseTable, PiecewiseConstantPotential, SolverError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error(
        "chemical potential mu = {mu} must exceed every binding energy (kappa = {kappa}); \
         at mu = kappa the bound-state Bose factor ln(1 - e^0) diverges"
    )]
    ChemicalPotentialTooLow { mu: f64, kappa: f64 },
    #[error("Jost function vanishes; no phase is defined")]
    ZeroJost,
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Delta shell of strength `Omega` at distance `R` from a Dirichlet wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmaPointParams {
    plasma_frequency: f64,
    radius: f64,
}

impl PlasmaPointParams {
    pub fn new(plasma_frequency: f64, radius: f64) -> Result<Self, ModelError> {
        if !(plasma_frequency > 0.0 && plasma_frequency.is_finite()) {
            return Err(ModelError::InvalidParameter {
                name: "Omega",
                value: plasma_frequency,
                reason: "plasma frequency must be positive",
            });
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(ModelError::InvalidParameter {
                name: "R",
                value: radius,
                reason: "radius must be positive",
            });
        }
        Ok(Self {
            plasma_frequency,
            radius,
        })
    }

    pub fn plasma_frequency(&self) -> f64 {
        self.plasma_frequency
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Dimensionless coupling `Omega R`.
    pub fn coupling(&self) -> f64 {
        self.plasma_frequency * self.radius
    }
}

/// Whole-line potential `2 alpha delta(x)` with chemical potential `mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaPotentialParams {
    alpha: f64,
    mu: f64,
}

impl DeltaPotentialParams {
    pub fn new(alpha: f64, mu: f64) -> Result<Self, ModelError> {
        if !(alpha != 0.0 && alpha.is_finite()) {
            return Err(ModelError::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "strength must be finite and non-zero",
            });
        }
        if !mu.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "mu",
                value: mu,
                reason: "chemical potential must be finite",
            });
        }
        if alpha < 0.0 && !(mu > -alpha) {
            return Err(ModelError::ChemicalPotentialTooLow { mu, kappa: -alpha });
        }
        if alpha > 0.0 && mu < 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "mu",
                value: mu,
                reason: "chemical potential must be non-negative",
            });
        }
        Ok(Self { alpha, mu })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// Plasma-point phase shift.
///
/// Evaluated as `-atan2(D, N)` with `N = w + Omega sin(wR) cos(wR)` and
/// `D = Omega sin^2(wR) >= 0`, which is the two-argument form of
/// `-pi/2 + atan(N / D)`. Exactly zero on the lattice `wR = n pi` and at `w = 0`.
pub fn plasma_phase_shift(omega: f64, p: &PlasmaPointParams) -> f64 {
    if omega == 0.0 {
        return 0.0;
    }
    let (s, c) = (omega * p.radius).sin_cos();
    let num = omega + p.plasma_frequency * s * c;
    let den = p.plasma_frequency * s * s;
    -den.atan2(num)
}

/// Exact `d delta / d omega` for the plasma point.
pub fn plasma_phase_shift_derivative(omega: f64, p: &PlasmaPointParams) -> f64 {
    if omega == 0.0 {
        return plasma_small_omega_slope(p);
    }
    let (om, r) = (p.plasma_frequency, p.radius);
    let (s, c) = (omega * r).sin_cos();
    let num = omega + om * s * c;
    let den = om * s * s;
    let dnum = 1.0 + om * r * (c * c - s * s);
    let dden = 2.0 * om * r * s * c;
    -(num * dden - den * dnum) / (num * num + den * den)
}

/// Jost function `f(w) = -i (1 + (Omega / w) sin(wR) e^{iwR})`.
pub fn plasma_jost(omega: f64, p: &PlasmaPointParams) -> Complex64 {
    let s = (omega * p.radius).sin();
    let inner = Complex64::new(1.0, 0.0)
        + Complex64::from_polar(p.plasma_frequency / omega * s, omega * p.radius);
    -Complex64::i() * inner
}

/// Half-line phase from a Jost function, `-(1/2i) ln(f / f*)` with the
/// free-field value `f = -i` mapped to zero. Principal range `(-pi, pi]`.
pub fn phase_from_jost(f: Complex64) -> Result<f64, ModelError> {
    if f.norm() == 0.0 || !f.is_finite() {
        return Err(ModelError::ZeroJost);
    }
    Ok(-(Complex64::i() * f).arg())
}

/// Slope of the plasma phase shift at threshold, `delta ~ slope * w`.
///
/// Equals `-(Omega R / (1 + Omega R)) R`; the trailing factor `R` carries the
/// length dimension and is 1 in units of the radius.
pub fn plasma_small_omega_slope(p: &PlasmaPointParams) -> f64 {
    let g = p.coupling();
    -g / (1.0 + g) * p.radius
}

/// Leading large-frequency form `-Omega sin^2(wR) / w`.
pub fn plasma_large_omega_tail(omega: f64, p: &PlasmaPointParams) -> f64 {
    let s = (omega * p.radius).sin();
    -p.plasma_frequency * s * s / omega
}

/// Delta-potential phase shift: `-pi/2 + atan(w/alpha)` for `alpha > 0`,
/// `pi/2 + atan(w/alpha)` for `alpha < 0`. Both are `-atan2(alpha, w)`.
pub fn delta_phase_shift(omega: f64, p: &DeltaPotentialParams) -> f64 {
    -p.alpha.atan2(omega)
}

pub fn delta_phase_shift_derivative(omega: f64, p: &DeltaPotentialParams) -> f64 {
    p.alpha / (p.alpha * p.alpha + omega * omega)
}

/// Binding energies: none for a barrier, `kappa = -alpha` for a well.
pub fn delta_bound_states(p: &DeltaPotentialParams) -> Vec<f64> {
    if p.alpha < 0.0 {
        vec![-p.alpha]
    } else {
        Vec::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundState {
    pub kappa: f64,
    pub parity: Option<Parity>,
}

/// A piecewise-constant potential with its bound states and cached phase table.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericModel {
    potential: PiecewiseConstantPotential,
    bound_states: Vec<BoundState>,
    table: PhaseTable,
    mu: f64,
    critical: bool,
}

impl NumericModel {
    pub fn potential(&self) -> &PiecewiseConstantPotential {
        &self.potential
    }

    pub fn is_critical(&self) -> bool {
        self.critical
    }
}

/// Uniform access to the spectral data of a scattering background.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralModel {
    /// No background: zero phase, no bound states.
    Free,
    PlasmaPoint(PlasmaPointParams),
    Delta(DeltaPotentialParams),
    Numeric(Box<NumericModel>),
}

/// Parameters accepted by [`make_spectral_model`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    PlasmaPoint(PlasmaPointParams),
    Delta(DeltaPotentialParams),
}

/// Bundle closed-form parameters into a [`SpectralModel`]. The plasma point
/// always has `mu = 0`.
pub fn make_spectral_model(params: ModelParams) -> Result<SpectralModel, ModelError> {
    let model = match params {
        ModelParams::PlasmaPoint(p) => SpectralModel::PlasmaPoint(p),
        ModelParams::Delta(p) => SpectralModel::Delta(p),
    };
    model.check_chemical_potential()?;
    Ok(model)
}

impl SpectralModel {
    /// Numeric model of a piecewise-constant potential.
    pub fn numeric(potential: PiecewiseConstantPotential, mu: f64) -> Result<Self, ModelError> {
        if !mu.is_finite() || mu < 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "mu",
                value: mu,
                reason: "chemical potential must be finite and non-negative",
            });
        }
        let bound_states = solver::bound_states_numeric(&potential)?
            .into_iter()
            .map(|b| BoundState {
                kappa: b.kappa,
                parity: b.parity,
            })
            .collect();
        let channel = match potential.geometry() {
            Geometry::FullLine => Channel::Transmission,
            Geometry::HalfLine => Channel::HalfLine(solver::ChannelBoundary::Dirichlet),
        };
        let table = PhaseTable::build(&potential, channel);
        let critical = solver::is_critical(&potential)?;
        let model = Self::Numeric(Box::new(NumericModel {
            potential,
            bound_states,
            table,
            mu,
            critical,
        }));
        model.check_chemical_potential()?;
        Ok(model)
    }

    fn check_chemical_potential(&self) -> Result<(), ModelError> {
        let mu = self.chemical_potential();
        match self.max_binding() {
            Some(kappa) if !(mu > kappa) => Err(ModelError::ChemicalPotentialTooLow { mu, kappa }),
            _ => Ok(()),
        }
    }

    fn max_binding(&self) -> Option<f64> {
        self.bound_states()
            .iter()
            .map(|b| b.kappa)
            .fold(None, |m, k| Some(m.map_or(k, |m: f64| m.max(k))))
    }

    /// Phase shift `delta(w)`, continuous with `delta(inf) = 0`.
    pub fn phase(&self, omega: f64) -> f64 {
        match self {
            Self::Free => 0.0,
            Self::PlasmaPoint(p) => plasma_phase_shift(omega, p),
            Self::Delta(p) => delta_phase_shift(omega, p),
            Self::Numeric(m) => m.table.phase(&m.potential, omega),
        }
    }

    /// `d delta / d w`, the change in the density of states.
    pub fn phase_derivative(&self, omega: f64) -> f64 {
        match self {
            Self::Free => 0.0,
            Self::PlasmaPoint(p) => plasma_phase_shift_derivative(omega, p),
            Self::Delta(p) => delta_phase_shift_derivative(omega, p),
            Self::Numeric(m) => {
                let w = omega.max(solver::threshold_frequency(&m.potential));
                solver::channel_phase(&m.potential, m.table.channel(), w).1
            }
        }
    }

    /// Threshold value `delta(0)`.
    pub fn phase_at_zero(&self) -> f64 {
        match self {
            Self::Numeric(m) => m.table.threshold_phase(),
            _ => self.phase(0.0),
        }
    }

    pub fn bound_states(&self) -> Vec<BoundState> {
        match self {
            Self::Free | Self::PlasmaPoint(_) => Vec::new(),
            Self::Delta(p) => delta_bound_states(p)
                .into_iter()
                .map(|kappa| BoundState {
                    kappa,
                    parity: Some(Parity::Even),
                })
                .collect(),
            Self::Numeric(m) => m.bound_states.clone(),
        }
    }

    pub fn chemical_potential(&self) -> f64 {
        match self {
            Self::Free | Self::PlasmaPoint(_) => 0.0,
            Self::Delta(p) => p.mu,
            Self::Numeric(m) => m.mu,
        }
    }

    /// Whether a zero-energy (half-bound) state is present.
    pub fn is_critical(&self) -> bool {
        match self {
            Self::Numeric(m) => m.critical,
            _ => false,
        }
    }

    /// Upper bound on `sup_{w' >= w} |delta'(w')|`, infinite where none is known.
    pub fn derivative_envelope(&self, omega: f64) -> f64 {
        match self {
            Self::Free => 0.0,
            Self::PlasmaPoint(p) => {
                let (om, r) = (p.plasma_frequency, p.radius);
                if omega < 2.0 * om {
                    return f64::INFINITY;
                }
                // |w + Omega sin e^{iwR}| >= w/2 and the numerator of delta' is
                // at most Omega (1 + Omega R) + (w + Omega) Omega R.
                4.0 * (om * (1.0 + 2.0 * om * r) + omega * om * r) / (omega * omega)
            }
            Self::Delta(p) => {
                let a = p.alpha.abs();
                a / (a * a + omega * omega)
            }
            Self::Numeric(m) => {
                let pot = &m.potential;
                let strength = pot.integrated_strength();
                let (a, b) = pot.support();
                let extent = a.abs().max(b.abs()).max(b - a);
                if omega < 2.0 * pot.max_abs_height().sqrt() + 2.0 * strength {
                    return f64::INFINITY;
                }
                4.0 * (strength + strength * strength * extent + strength * extent * omega)
                    / (omega * omega)
            }
        }
    }

    /// Largest panel width that resolves the oscillations of `delta'`.
    pub fn oscillation_panel(&self) -> f64 {
        match self {
            Self::Free | Self::Delta(_) => f64::INFINITY,
            Self::PlasmaPoint(p) => PI / p.radius,
            // full-line phase oscillations decay fast enough for adaptive refinement
            Self::Numeric(m) if m.potential.geometry() == Geometry::FullLine => f64::INFINITY,
            Self::Numeric(m) => PI / m.potential.support().1,
        }
    }

    /// Frequency above which the phase is numerically at its `w -> inf` value.
    pub fn asymptotic_frequency(&self) -> f64 {
        match self {
            Self::Free => 1.0,
            Self::PlasmaPoint(p) => 1e4 * p.plasma_frequency.max(1.0 / p.radius),
            Self::Delta(p) => 1e4 * p.alpha.abs(),
            Self::Numeric(m) => 1e2 * m.table.anchor(),
        }
    }

    /// Characteristic frequency scale of the background.
    pub fn frequency_scale(&self) -> f64 {
        match self {
            Self::Free => 1.0,
            Self::PlasmaPoint(p) => 1.0 / p.radius,
            Self::Delta(p) => p.alpha.abs(),
            Self::Numeric(m) => 1.0 / m.potential.support_width(),
        }
    }
}

/// Continuous threshold-to-infinity phase difference for the delta potential.
pub fn delta_phase_jump(p: &DeltaPotentialParams) -> f64 {
    if p.alpha > 0.0 {
        -FRAC_PI_2
    } else {
        FRAC_PI_2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{central_difference, log_grid};

    fn plasma(om: f64, r: f64) -> PlasmaPointParams {
        PlasmaPointParams::new(om, r).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(PlasmaPointParams::new(0.0, 1.0).is_err());
        assert!(PlasmaPointParams::new(1.0, -1.0).is_err());
        assert!(DeltaPotentialParams::new(0.0, 1.0).is_err());
        assert!(DeltaPotentialParams::new(1.0, -0.1).is_err());
        assert!(DeltaPotentialParams::new(1.0, 0.0).is_ok());
        assert!(matches!(
            DeltaPotentialParams::new(-1.0, 0.5),
            Err(ModelError::ChemicalPotentialTooLow { .. })
        ));
        assert!(DeltaPotentialParams::new(-1.0, 1.0).is_err());
        assert!(DeltaPotentialParams::new(-1.0, 1.1).is_ok());
    }

    #[test]
    fn plasma_phase_examples() {
        let p = plasma(1.0, 1.0);
        let d = plasma_phase_shift(1e-6, &p);
        assert!((d + 0.5e-6).abs() < 1e-12, "{d}");
        assert_eq!(plasma_phase_shift(0.0, &p), 0.0);
        assert!(plasma_phase_shift(PI, &p).abs() < 1e-15);
        let weak = plasma(1e-12, 1.0);
        assert!(plasma_phase_shift(2.3, &weak).abs() < 1e-11);
    }

    #[test]
    fn plasma_golden_table() {
        let text = include_str!("../tests/data/plasma_phase_golden.csv");
        let (p1, p10) = (plasma(1.0, 1.0), plasma(10.0, 1.0));
        let mut rows = 0;
        for line in text.lines().skip(1) {
            let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            assert!((plasma_phase_shift(v[0], &p1) - v[1]).abs() < 1e-13);
            assert!((plasma_phase_shift(v[0], &p10) - v[2]).abs() < 1e-13);
            rows += 1;
        }
        assert_eq!(rows, 401);
    }

    #[test]
    fn plasma_derivative_examples() {
        let p = plasma(1.0, 1.0);
        assert!((plasma_phase_shift_derivative(1e-6, &p) + 0.5).abs() < 1e-9);
        // mpmath derivative of the arctan form
        assert!((plasma_phase_shift_derivative(2.0, &p) - 0.456_838_496_521_920_3).abs() < 1e-13);
        let weak = plasma(1e-12, 1.0);
        assert!(plasma_phase_shift_derivative(2.0, &weak).abs() < 1e-11);
    }

    #[test]
    fn jost_examples() {
        let weak = plasma(1e-300, 1.0);
        let f = plasma_jost(0.7, &weak);
        assert!((f - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        let p = plasma(1.0, 1.0);
        assert!((plasma_jost(PI, &p) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        let f = plasma_jost(1.0, &p);
        assert!((f.re - 0.708_073_418_273_571_2).abs() < 1e-15);
        assert!((f.im + 1.454_648_713_412_840_8).abs() < 1e-15);
        assert!((phase_from_jost(f).unwrap() - plasma_phase_shift(1.0, &p)).abs() < 1e-14);
        let f = plasma_jost(0.5, &p);
        assert!((phase_from_jost(f).unwrap() - plasma_phase_shift(0.5, &p)).abs() < 1e-10);
    }

    #[test]
    fn phase_from_jost_branch() {
        assert_eq!(phase_from_jost(Complex64::new(0.0, -1.0)).unwrap(), 0.0);
        assert!((phase_from_jost(Complex64::new(2.0, 0.0)).unwrap() + FRAC_PI_2).abs() < 1e-15);
        assert!(matches!(
            phase_from_jost(Complex64::new(0.0, 0.0)),
            Err(ModelError::ZeroJost)
        ));
    }

    #[test]
    fn slope_and_tail() {
        assert!((plasma_small_omega_slope(&plasma(1.0, 1.0)) + 0.5).abs() < 1e-15);
        assert!((plasma_small_omega_slope(&plasma(10.0, 1.0)) + 10.0 / 11.0).abs() < 1e-15);
        assert!(plasma_small_omega_slope(&plasma(1e-14, 1.0)).abs() < 1e-13);
        let p = plasma(1.0, 1.0);
        assert!(plasma_large_omega_tail(3.0 * PI, &p).abs() < 1e-16);
        let t = plasma_large_omega_tail(100.0, &p);
        assert!((t + 100f64.sin().powi(2) / 100.0).abs() < 1e-18);
    }

    #[test]
    fn tail_dominates_at_high_frequency() {
        for om_r in [1.0, 10.0] {
            let p = plasma(om_r, 1.0);
            let mut prev = f64::INFINITY;
            for w in [1e2, 1e3, 1e4] {
                // offset away from the sin(wR) = 0 lattice
                let w = w + 0.4;
                let tail = plasma_large_omega_tail(w, &p);
                let ratio = ((plasma_phase_shift(w, &p) - tail) / tail).abs();
                assert!(ratio < prev, "ratio {ratio} at {w}");
                prev = ratio;
            }
            assert!(prev < 2e-3 * om_r);
        }
    }

    #[test]
    fn delta_phase_examples() {
        let rep = DeltaPotentialParams::new(1.0, 0.0).unwrap();
        let att = DeltaPotentialParams::new(-1.0, 2.0).unwrap();
        assert!((delta_phase_shift(0.0, &rep) + FRAC_PI_2).abs() < 1e-15);
        assert!((delta_phase_shift(0.0, &att) - FRAC_PI_2).abs() < 1e-15);
        assert!((delta_phase_shift(1.0, &rep) + PI / 4.0).abs() < 1e-15);
        assert_eq!(delta_phase_shift_derivative(0.0, &rep), 1.0);
        assert_eq!(delta_phase_shift_derivative(0.0, &att), -1.0);
        let two = DeltaPotentialParams::new(2.0, 0.0).unwrap();
        let fd = central_difference(|w| delta_phase_shift(w, &two), 2.0, 1e-3);
        assert!((fd - 0.25).abs() < 1e-12);
        assert!((delta_phase_shift_derivative(2.0, &two) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn delta_bound_state_examples() {
        assert!(delta_bound_states(&DeltaPotentialParams::new(1.0, 0.0).unwrap()).is_empty());
        assert_eq!(
            delta_bound_states(&DeltaPotentialParams::new(-1.0, 2.0).unwrap()),
            vec![1.0]
        );
        assert_eq!(
            delta_bound_states(&DeltaPotentialParams::new(-3.0, 4.0).unwrap()),
            vec![3.0]
        );
    }

    #[test]
    fn spectral_model_construction() {
        let m = make_spectral_model(ModelParams::PlasmaPoint(plasma(1.0, 1.0))).unwrap();
        assert!(m.bound_states().is_empty());
        assert_eq!(m.chemical_potential(), 0.0);
        let d = DeltaPotentialParams::new(-1.0, 2.0).unwrap();
        let m = make_spectral_model(ModelParams::Delta(d)).unwrap();
        assert_eq!(m.bound_states().len(), 1);
        assert_eq!(m.bound_states()[0].kappa, 1.0);
        // numeric route enforces mu > kappa too
        let well =
            PiecewiseConstantPotential::thin_box(0.0, 1e-3, -2.0, Geometry::FullLine).unwrap();
        assert!(matches!(
            SpectralModel::numeric(well.clone(), 0.5),
            Err(ModelError::ChemicalPotentialTooLow { .. })
        ));
        assert!(SpectralModel::numeric(well, 2.0).is_ok());
    }

    #[test]
    fn derivative_matches_finite_difference_on_log_grid() {
        let models = [
            SpectralModel::PlasmaPoint(plasma(1.0, 1.0)),
            SpectralModel::PlasmaPoint(plasma(10.0, 1.0)),
            SpectralModel::Delta(DeltaPotentialParams::new(1.0, 0.0).unwrap()),
            SpectralModel::Delta(DeltaPotentialParams::new(-1.0, 2.0).unwrap()),
        ];
        for m in &models {
            for w in log_grid(1e-3, 1e3, 61) {
                let h = 1e-3 * w.min(1.0);
                let fd = central_difference(|x| m.phase(x), w, h);
                let an = m.phase_derivative(w);
                let rel = (fd - an).abs() / an.abs().max(1e-300);
                assert!(rel <= 1e-6, "{m:?} w={w} fd={fd} an={an}");
            }
        }
    }

    #[test]
    fn envelopes_bound_the_derivative() {
        let models = [
            SpectralModel::PlasmaPoint(plasma(1.0, 1.0)),
            SpectralModel::PlasmaPoint(plasma(10.0, 2.0)),
            SpectralModel::Delta(DeltaPotentialParams::new(-3.0, 4.0).unwrap()),
        ];
        for m in &models {
            for w in log_grid(1e-2, 1e4, 3000) {
                let env = m.derivative_envelope(w);
                assert!(m.phase_derivative(w).abs() <= env, "{m:?} w={w}");
            }
        }
    }

    #[test]
    fn numeric_thin_box_tracks_closed_forms() {
        let pot = PiecewiseConstantPotential::thin_box(1.0, 1e-4, 1.0, Geometry::HalfLine).unwrap();
        let m = SpectralModel::numeric(pot, 0.0).unwrap();
        let p = plasma(1.0, 1.0);
        for w in [0.3, 1.0, 2.5, 7.0] {
            assert!(
                (m.phase(w) - plasma_phase_shift(w, &p)).abs() < 1e-3,
                "w={w}"
            );
            let rel = (m.phase_derivative(w) - plasma_phase_shift_derivative(w, &p)).abs();
            assert!(rel < 1e-3, "w={w}");
        }
        assert!(m.phase_at_zero().abs() < 1e-6);

        let pot =
            PiecewiseConstantPotential::thin_box(0.0, 1e-4, -2.0, Geometry::FullLine).unwrap();
        let m = SpectralModel::numeric(pot, 2.0).unwrap();
        assert!((m.phase_at_zero() - FRAC_PI_2).abs() < 1e-3);
        assert_eq!(m.bound_states().len(), 1);
    }
}
