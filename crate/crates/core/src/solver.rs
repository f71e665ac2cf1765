//! Transfer-matrix scattering for piecewise-constant potentials.
//!
//! On an interval of constant height `V` the equation `-phi'' + V phi = w^2 phi`
//! has the closed-form propagator
//!
//! ```text
//! [phi ]        [ C(q)     S(q) ] [phi ]          q = w^2 - V
//! [phi']_right = [ -q S(q)  C(q) ] [phi']_left,   C = cos(sqrt(q) d), S = sin(sqrt(q) d)/sqrt(q)
//! ```
//!
//! Both entries are entire functions of `q`, so the same code covers the
//! propagating (`q > 0`), evanescent (`q < 0`) and threshold (`q = 0`) cases
//! and is reused at imaginary frequency for the bound-state search.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::models::Parity;

pub type ComplexMatrix2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("operation requires full-line geometry")]
    NotFullLine,
    #[error("operation requires half-line geometry")]
    NotHalfLine,
    #[error("frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),
    #[error("bound-state search did not close below kappa = {kappa_cap}")]
    BoundStateSearch { kappa_cap: f64 },
    #[error("parity decomposition requires a symmetric full-line potential")]
    NotSymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    /// Whole axis, potential vanishes outside the support.
    FullLine,
    /// Half axis `x >= 0` with a Dirichlet wall at the origin.
    HalfLine,
}

/// Boundary condition at the origin of a half-line channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelBoundary {
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseConstantPotential {
    breakpoints: Vec<f64>,
    heights: Vec<f64>,
    geometry: Geometry,
}

impl PiecewiseConstantPotential {
    /// `heights[i]` is the potential on `[breakpoints[i], breakpoints[i + 1])`.
    pub fn new(
        breakpoints: Vec<f64>,
        heights: Vec<f64>,
        geometry: Geometry,
    ) -> Result<Self, SolverError> {
        if breakpoints.len() < 2 {
            return Err(SolverError::InvalidPotential(
                "need at least two breakpoints".into(),
            ));
        }
        if heights.len() + 1 != breakpoints.len() {
            return Err(SolverError::InvalidPotential(format!(
                "{} breakpoints need {} heights, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                heights.len()
            )));
        }
        if breakpoints.iter().chain(&heights).any(|v| !v.is_finite()) {
            return Err(SolverError::InvalidPotential("non-finite value".into()));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(SolverError::InvalidPotential(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if geometry == Geometry::HalfLine && breakpoints[0] < 0.0 {
            return Err(SolverError::InvalidPotential(
                "half-line support must lie in x >= 0".into(),
            ));
        }
        Ok(Self {
            breakpoints,
            heights,
            geometry,
        })
    }

    /// Box of the given width and integrated strength centred at `center`.
    pub fn thin_box(
        center: f64,
        width: f64,
        strength: f64,
        geometry: Geometry,
    ) -> Result<Self, SolverError> {
        Self::new(
            vec![center - 0.5 * width, center + 0.5 * width],
            vec![strength / width],
            geometry,
        )
    }

    /// Full-line square well of depth `depth > 0` on `[-width/2, width/2]`.
    pub fn square_well(width: f64, depth: f64) -> Result<Self, SolverError> {
        Self::new(
            vec![-0.5 * width, 0.5 * width],
            vec![-depth],
            Geometry::FullLine,
        )
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    pub fn support_width(&self) -> f64 {
        let (a, b) = self.support();
        b - a
    }

    pub fn max_abs_height(&self) -> f64 {
        self.heights.iter().fold(0.0, |m, h| m.max(h.abs()))
    }

    /// Deepest negative height, or zero.
    pub fn max_depth(&self) -> f64 {
        self.heights.iter().fold(0.0, |m, &h| m.max(-h))
    }

    /// `sum |V_i| d_i`.
    pub fn integrated_strength(&self) -> f64 {
        self.intervals().map(|(w, h)| w * h.abs()).sum()
    }

    fn intervals(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.heights)
            .map(|(b, &h)| (b[1] - b[0], h))
    }

    /// Symmetric about the support centre to relative precision 1e-12.
    pub fn is_symmetric(&self) -> bool {
        if self.geometry != Geometry::FullLine {
            return false;
        }
        let (a, b) = self.support();
        let scale = b.abs().max(a.abs()).max(b - a);
        let n = self.breakpoints.len();
        let bp_ok = (0..n).all(|i| {
            ((self.breakpoints[i] - a) - (b - self.breakpoints[n - 1 - i])).abs() <= 1e-12 * scale
        });
        let m = self.heights.len();
        let h_ok = (0..m).all(|i| {
            let (x, y) = (self.heights[i], self.heights[m - 1 - i]);
            (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1e-300)
        });
        bp_ok && h_ok
    }

    /// Half-line channel obtained by cutting a symmetric potential at its
    /// centre and moving the centre to the origin.
    pub fn right_half(&self) -> Result<Self, SolverError> {
        if !self.is_symmetric() {
            return Err(SolverError::NotSymmetric);
        }
        let (a, b) = self.support();
        let c = 0.5 * (a + b);
        let mut bps = vec![0.0];
        let mut hs = Vec::new();
        for (i, win) in self.breakpoints.windows(2).enumerate() {
            if win[1] <= c {
                continue;
            }
            hs.push(self.heights[i]);
            bps.push(win[1] - c);
        }
        Self::new(bps, hs, Geometry::HalfLine)
    }
}

/// Real 2x2 propagator on `(phi, phi')`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Propagator([[f64; 2]; 2]);

impl Propagator {
    const IDENTITY: Self = Self([[1.0, 0.0], [0.0, 1.0]]);
    const ZERO: Self = Self([[0.0, 0.0], [0.0, 0.0]]);

    fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        Self([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.0;
        for (row, r) in out.iter_mut().zip(&rhs.0) {
            for (x, y) in row.iter_mut().zip(r) {
                *x += y;
            }
        }
        Self(out)
    }

    fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|row| row.map(|x| x * s)))
    }
}

/// Interval propagator for `q = w^2 - V` over length `d`, with its `q`-derivative.
fn interval(q: f64, d: f64) -> (Propagator, Propagator) {
    let z = q * d * d;
    let (c, s, ds) = if z.abs() < 1e-3 {
        // series in z = q d^2
        let (mut c, mut s, mut ds) = (0.0, 0.0, 0.0);
        let mut term = 1.0; // (-z)^n
        let mut fact_even = 1.0; // (2n)!
        for n in 0..10 {
            let fact_odd = fact_even * (2 * n + 1) as f64;
            c += term / fact_even;
            s += d * term / fact_odd;
            if n >= 1 {
                // d/dq of d (-q d^2)^n / (2n+1)! = -n d^3 (-z)^{n-1} / (2n+1)!
                ds += -(n as f64) * d * d * d * (term / -z) / fact_odd;
            }
            term *= -z;
            fact_even *= ((2 * n + 1) * (2 * n + 2)) as f64;
        }
        if z == 0.0 {
            ds = -d * d * d / 6.0;
        }
        (c, s, ds)
    } else if q > 0.0 {
        let k = q.sqrt();
        let (sn, cs) = (k * d).sin_cos();
        let s = sn / k;
        (cs, s, (d * cs - s) / (2.0 * q))
    } else {
        let k = (-q).sqrt();
        let (sn, cs) = ((k * d).sinh(), (k * d).cosh());
        let s = sn / k;
        (cs, s, (d * cs - s) / (2.0 * q))
    };
    let m = Propagator([[c, s], [-q * s, c]]);
    let dc = -0.5 * d * s;
    let dqs = -0.5 * (s + d * c);
    let dm = Propagator([[dc, ds], [dqs, dc]]);
    (m, dm)
}

/// Propagator across a sequence of `(length, height)` intervals for energy
/// `e` (`w^2`, or `-kappa^2` below threshold), with its `e`-derivative.
fn propagate<I: IntoIterator<Item = (f64, f64)>>(segments: I, e: f64) -> (Propagator, Propagator) {
    let mut m = Propagator::IDENTITY;
    let mut dm = Propagator::ZERO;
    for (d, h) in segments {
        let (p, dp) = interval(e - h, d);
        dm = p.mul(&dm).add(&dp.mul(&m));
        m = p.mul(&m);
    }
    (m, dm)
}

impl PiecewiseConstantPotential {
    /// Segments from the left edge of the region of interest: the support on
    /// the full line, or `[0, x_last]` including the free gap on the half line.
    fn segments(&self) -> Vec<(f64, f64)> {
        let mut segs = Vec::with_capacity(self.heights.len() + 1);
        if self.geometry == Geometry::HalfLine && self.breakpoints[0] > 0.0 {
            segs.push((self.breakpoints[0], 0.0));
        }
        segs.extend(self.intervals());
        segs
    }

    fn right_edge(&self) -> f64 {
        self.support().1
    }
}

/// Plane-wave transfer matrix `T` with `(a_R, b_R) = T (a_L, b_L)` for
/// `phi = a e^{iwx} + b e^{-iwx}` outside the support.
pub fn transfer_matrix(
    pot: &PiecewiseConstantPotential,
    omega: f64,
) -> Result<ComplexMatrix2, SolverError> {
    if pot.geometry != Geometry::FullLine {
        return Err(SolverError::NotFullLine);
    }
    if !(omega > 0.0) {
        return Err(SolverError::NonPositiveFrequency(omega));
    }
    let (m, _) = propagate(pot.segments(), omega * omega);
    let (xl, xr) = pot.support();
    let i = Complex64::i();
    let el = Complex64::from_polar(1.0, omega * xl);
    let er = Complex64::from_polar(1.0, omega * xr);
    // W(x) maps (a, b) to (phi, phi')
    let wl = [[el, el.inv()], [i * omega * el, -i * omega * el.inv()]];
    let wr_inv = [
        [er.inv() * 0.5, er.inv() / (2.0 * i * omega)],
        [er * 0.5, -er / (2.0 * i * omega)],
    ];
    let mc = m.0.map(|row| row.map(|x| Complex64::new(x, 0.0)));
    Ok(cmul(&wr_inv, &cmul(&mc, &wl)))
}

fn cmul(a: &ComplexMatrix2, b: &ComplexMatrix2) -> ComplexMatrix2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

pub fn det2(m: &ComplexMatrix2) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Transmission and reflection amplitudes for a wave incident from the left.
pub fn transmission_reflection(
    pot: &PiecewiseConstantPotential,
    omega: f64,
) -> Result<(Complex64, Complex64), SolverError> {
    let t = transfer_matrix(pot, omega)?;
    Ok((t[1][1].inv(), -t[1][0] / t[1][1]))
}

/// Transmission amplitude `t(w)`.
pub fn transmission(
    pot: &PiecewiseConstantPotential,
    omega: f64,
) -> Result<Complex64, SolverError> {
    transmission_reflection(pot, omega).map(|(t, _)| t)
}

/// Running state for continuous phase extraction along an ordered grid.
#[derive(Debug, Clone, Copy, Default)]
pub struct PhaseUnwrapper {
    last: Option<f64>,
}

impl PhaseUnwrapper {
    pub fn new() -> Self {
        Self::default()
    }

    /// Start from a known phase value.
    pub fn anchored(phase: f64) -> Self {
        Self { last: Some(phase) }
    }

    /// Shift `principal` by a multiple of `2 pi` towards the previous value.
    pub fn unwrap(&mut self, principal: f64) -> f64 {
        let value = match self.last {
            None => principal,
            Some(prev) => principal + 2.0 * PI * ((prev - principal) / (2.0 * PI)).round(),
        };
        self.last = Some(value);
        value
    }

    pub fn last(&self) -> Option<f64> {
        self.last
    }
}

/// `(1/2i) ln(t/t*)` made continuous through `state`.
///
/// A vanishing amplitude has no phase; the one-sided value is carried across.
pub fn phase_from_transmission(t: Complex64, state: &mut PhaseUnwrapper) -> f64 {
    if t.norm() == 0.0 {
        return state.last().unwrap_or(0.0);
    }
    state.unwrap(t.arg())
}

/// Scattering channel whose phase is extracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// Total transmission phase on the full line.
    Transmission,
    /// Half-line problem with the given boundary at the origin.
    HalfLine(ChannelBoundary),
}

/// Principal phase in the channel together with its exact `w`-derivative.
///
/// The principal value is continuous except for `2 pi` jumps and
/// equals the physical phase near `w -> inf`.
pub(crate) fn channel_phase(
    pot: &PiecewiseConstantPotential,
    channel: Channel,
    omega: f64,
) -> (f64, f64) {
    let (m, dm_de) = propagate(pot.segments(), omega * omega);
    let dm = dm_de.scale(2.0 * omega);
    let [[m11, m12], [m21, m22]] = m.0;
    let [[d11, d12], [d21, d22]] = dm.0;
    match channel {
        Channel::Transmission => {
            // t = 2 e^{-iwL} / D
            let len = pot.support_width();
            let d = Complex64::new(m11 + m22, m21 / omega - omega * m12);
            let dd = Complex64::new(
                d11 + d22,
                d21 / omega - m21 / (omega * omega) - m12 - omega * d12,
            );
            let t = Complex64::from_polar(2.0, -omega * len) / d;
            (t.arg(), -len - (dd / d).im)
        }
        Channel::HalfLine(boundary) => {
            let x = pot.right_edge();
            let (g, dg) = match boundary {
                ChannelBoundary::Dirichlet => (
                    Complex64::new(m22, omega * m12),
                    Complex64::new(d22, m12 + omega * d12),
                ),
                ChannelBoundary::Neumann => (
                    Complex64::new(m11, -m21 / omega),
                    Complex64::new(d11, -d21 / omega + m21 / (omega * omega)),
                ),
            };
            let phase = (g * Complex64::from_polar(1.0, -omega * x)).arg();
            (phase, -x + (dg / g).im)
        }
    }
}

fn default_channel(pot: &PiecewiseConstantPotential) -> Channel {
    match pot.geometry {
        Geometry::FullLine => Channel::Transmission,
        Geometry::HalfLine => Channel::HalfLine(ChannelBoundary::Dirichlet),
    }
}

/// Jost function of a half-line (Dirichlet) problem, normalised so the free
/// field gives `-i`.
pub fn half_line_jost(
    pot: &PiecewiseConstantPotential,
    omega: f64,
) -> Result<Complex64, SolverError> {
    if pot.geometry != Geometry::HalfLine {
        return Err(SolverError::NotHalfLine);
    }
    if !(omega > 0.0) {
        return Err(SolverError::NonPositiveFrequency(omega));
    }
    let (m, _) = propagate(pot.segments(), omega * omega);
    let [[_, m12], [_, m22]] = m.0;
    let x = pot.right_edge();
    let w = Complex64::from_polar(1.0, omega * x) * Complex64::new(m22, -omega * m12);
    Ok(-Complex64::i() * w)
}

/// Large frequency at which the phase is pinned to its `w -> inf` value of zero.
pub fn anchor_frequency(pot: &PiecewiseConstantPotential) -> f64 {
    let base = 50.0 * pot.max_abs_height().sqrt().max(1.0 / pot.support_width());
    // keep the Born estimate sum|V|d / 2w below 0.01
    base.max(50.0 * pot.integrated_strength())
}

/// Smallest frequency resolved by the phase table; below it the phase is
/// taken as its threshold limit.
pub fn threshold_frequency(pot: &PiecewiseConstantPotential) -> f64 {
    let (_, xr) = pot.support();
    let len = pot
        .support_width()
        .max(xr.abs())
        .max(1.0 / pot.max_abs_height().sqrt().max(1e-300));
    1e-7 / len
}

/// Continuous phase on `[w_min, w_anchor]`, tabulated from the anchor downward.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTable {
    channel: Channel,
    // ascending in omega
    omegas: Vec<f64>,
    phases: Vec<f64>,
}

impl PhaseTable {
    pub fn build(pot: &PiecewiseConstantPotential, channel: Channel) -> Self {
        let hi = anchor_frequency(pot);
        let lo = threshold_frequency(pot);
        let mut state = PhaseUnwrapper::anchored(0.0);
        let mut omegas = vec![hi];
        let mut phases = vec![state.unwrap(channel_phase(pot, channel, hi).0)];
        let mut log_w = hi.ln();
        let log_lo = lo.ln();
        let mut step = 0.02;
        while log_w > log_lo {
            let trial = (log_w - step).max(log_lo);
            let w = trial.exp();
            let principal = channel_phase(pot, channel, w).0;
            let prev = *phases.last().unwrap();
            let mut probe = PhaseUnwrapper::anchored(prev);
            let value = probe.unwrap(principal);
            if (value - prev).abs() > 0.3 && step > 1e-9 {
                step *= 0.5;
                continue;
            }
            omegas.push(w);
            phases.push(value);
            log_w = trial;
            step = (step * 1.5).min(0.02);
        }
        omegas.reverse();
        phases.reverse();
        Self {
            channel,
            omegas,
            phases,
        }
    }

    pub fn channel(&self) -> Channel {
        self.channel
    }

    /// Phase in the `w -> 0` limit.
    pub fn threshold_phase(&self) -> f64 {
        self.phases[0]
    }

    pub fn anchor(&self) -> f64 {
        *self.omegas.last().unwrap()
    }

    /// Continuous phase at `omega`, taking the branch nearest the tabulated curve.
    pub fn phase(&self, pot: &PiecewiseConstantPotential, omega: f64) -> f64 {
        if omega <= self.omegas[0] {
            return self.phases[0];
        }
        let principal = channel_phase(pot, self.channel, omega).0;
        if omega >= self.anchor() {
            return PhaseUnwrapper::anchored(0.0).unwrap(principal);
        }
        let idx = self.omegas.partition_point(|&w| w < omega);
        let (w0, w1) = (self.omegas[idx - 1], self.omegas[idx]);
        let (p0, p1) = (self.phases[idx - 1], self.phases[idx]);
        let reference = p0 + (p1 - p0) * (omega - w0) / (w1 - w0);
        PhaseUnwrapper::anchored(reference).unwrap(principal)
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }
}

/// One row of a scattering sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringData {
    pub omega: f64,
    /// `t(w)` on the full line; the Jost function `f(w)` on the half line.
    pub transmission: Complex64,
    /// Reflection amplitude (zero on the half line).
    pub reflection: Complex64,
    pub phase: f64,
}

/// Scattering data along an ascending grid of positive frequencies.
///
/// The phase is unwrapped sequentially from the top of the grid, pinned to the
/// `w -> inf` branch through the phase table.
pub fn scattering_sweep(
    pot: &PiecewiseConstantPotential,
    omegas: &[f64],
) -> Result<Vec<ScatteringData>, SolverError> {
    if let Some(&w) = omegas.iter().find(|&&w| !(w > 0.0)) {
        return Err(SolverError::NonPositiveFrequency(w));
    }
    let channel = default_channel(pot);
    let table = PhaseTable::build(pot, channel);
    omegas
        .iter()
        .map(|&w| {
            let (transmission, reflection) = match pot.geometry {
                Geometry::FullLine => transmission_reflection(pot, w)?,
                Geometry::HalfLine => (half_line_jost(pot, w)?, Complex64::new(0.0, 0.0)),
            };
            Ok(ScatteringData {
                omega: w,
                transmission,
                reflection,
                phase: table.phase(pot, w),
            })
        })
        .collect()
}

/// Continuous half-line (Dirichlet) phase shift at `omega`.
pub fn half_line_phase(pot: &PiecewiseConstantPotential, omega: f64) -> Result<f64, SolverError> {
    if pot.geometry != Geometry::HalfLine {
        return Err(SolverError::NotHalfLine);
    }
    if !(omega > 0.0) {
        return Err(SolverError::NonPositiveFrequency(omega));
    }
    let table = PhaseTable::build(pot, Channel::HalfLine(ChannelBoundary::Dirichlet));
    Ok(table.phase(pot, omega))
}

/// Continuous full-line transmission phase at `omega`.
pub fn full_line_phase(pot: &PiecewiseConstantPotential, omega: f64) -> Result<f64, SolverError> {
    if pot.geometry != Geometry::FullLine {
        return Err(SolverError::NotFullLine);
    }
    if !(omega > 0.0) {
        return Err(SolverError::NonPositiveFrequency(omega));
    }
    let table = PhaseTable::build(pot, Channel::Transmission);
    Ok(table.phase(pot, omega))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericBoundState {
    pub kappa: f64,
    pub parity: Option<Parity>,
}

const KAPPA_GRID_POINTS: usize = 200;
const KAPPA_MIN: f64 = 1e-4;
const KAPPA_TOL: f64 = 1e-10;
const KAPPA_ENLARGEMENTS: usize = 4;

/// Matching function whose zeros in `kappa > 0` are the binding energies.
fn bound_state_mismatch(pot: &PiecewiseConstantPotential, kappa: f64) -> f64 {
    let (m, _) = propagate(pot.segments(), -kappa * kappa);
    let [[m11, m12], [m21, m22]] = m.0;
    let (p, q) = match pot.geometry {
        // decaying e^{kappa x} on the left
        Geometry::FullLine => (m11 + kappa * m12, m21 + kappa * m22),
        // phi(0) = 0, phi'(0) = 1
        Geometry::HalfLine => (m12, m22),
    };
    q + kappa * p
}

fn parity_of(pot: &PiecewiseConstantPotential, kappa: f64) -> Option<Parity> {
    if !pot.is_symmetric() {
        return None;
    }
    let (a, b) = pot.support();
    let c = 0.5 * (a + b);
    let left: Vec<(f64, f64)> = pot
        .breakpoints
        .windows(2)
        .zip(&pot.heights)
        .filter_map(|(w, &h)| {
            let hi = w[1].min(c);
            (hi > w[0]).then(|| (hi - w[0], h))
        })
        .collect();
    let (m, _) = propagate(left, -kappa * kappa);
    let [[m11, m12], [m21, m22]] = m.0;
    let (p, q) = (m11 + kappa * m12, m21 + kappa * m22);
    if q.abs() < kappa * p.abs() {
        Some(Parity::Even)
    } else {
        Some(Parity::Odd)
    }
}

/// Binding energies `kappa` (bound state at `w = i kappa`), ascending.
///
/// Sign changes of the matching function are bracketed on a log grid of 200
/// points over `[1e-4, 2 sqrt(max |V|)]` and refined by bisection. Roots
/// closer than the grid spacing, or with `kappa < 1e-4`, are not resolved.
pub fn bound_states_numeric(
    pot: &PiecewiseConstantPotential,
) -> Result<Vec<NumericBoundState>, SolverError> {
    if pot.max_depth() == 0.0 {
        return Ok(Vec::new());
    }
    let mut kappa_max = 2.0 * pot.max_abs_height().sqrt();
    for _ in 0..=KAPPA_ENLARGEMENTS {
        let grid = crate::numerics::log_grid(KAPPA_MIN, kappa_max, KAPPA_GRID_POINTS);
        let values: Vec<f64> = grid.iter().map(|&k| bound_state_mismatch(pot, k)).collect();
        let mut roots = Vec::new();
        let mut edge_hit = false;
        for i in 0..grid.len() - 1 {
            let (f0, f1) = (values[i], values[i + 1]);
            if f0 == 0.0 {
                roots.push(grid[i]);
                continue;
            }
            if f0.signum() != f1.signum() && f1 != 0.0 {
                if i + 2 == grid.len() {
                    edge_hit = true;
                }
                let (mut lo, mut hi, mut flo) = (grid[i], grid[i + 1], f0);
                while hi - lo > KAPPA_TOL {
                    let mid = 0.5 * (lo + hi);
                    let fm = bound_state_mismatch(pot, mid);
                    if fm.signum() == flo.signum() {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                roots.push(0.5 * (lo + hi));
            }
        }
        if edge_hit || values.last() == Some(&0.0) {
            kappa_max *= 2.0;
            continue;
        }
        return Ok(roots
            .into_iter()
            .map(|kappa| NumericBoundState {
                kappa,
                parity: parity_of(pot, kappa),
            })
            .collect());
    }
    Err(SolverError::BoundStateSearch {
        kappa_cap: kappa_max,
    })
}

/// `|t|` near threshold; it tends to zero unless a zero-energy
/// (half-bound) state is present.
pub fn threshold_transmission(pot: &PiecewiseConstantPotential) -> Result<f64, SolverError> {
    let w = 10.0 * threshold_frequency(pot);
    match pot.geometry {
        Geometry::FullLine => Ok(transmission(pot, w)?.norm()),
        Geometry::HalfLine => {
            // Jost function at threshold vanishes in the critical case
            let f = half_line_jost(pot, w)?;
            Ok((w * pot.right_edge().max(1e-300)) / f.norm().max(1e-300))
        }
    }
}

/// Tolerance band for flagging a threshold (half-bound) state.
pub const CRITICAL_THRESHOLD: f64 = 1e-3;

pub fn is_critical(pot: &PiecewiseConstantPotential) -> Result<bool, SolverError> {
    Ok(threshold_transmission(pot)? > CRITICAL_THRESHOLD)
}
