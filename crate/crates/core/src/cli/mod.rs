//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage or configuration error,
//! 3 domain error, 4 numerical non-convergence.

pub mod figures;
pub mod potential_file;
pub mod svg;
pub mod table;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::levinson::{self, LevinsonError};
use crate::models::{DeltaPotentialParams, ModelError, PlasmaPointParams, SpectralModel};
use crate::numerics::{linear_grid, log_grid, NumericsError, QuadratureSpec};
use crate::solver::{self, SolverError};
use crate::thermo::{self, ThermoError};
use potential_file::PotentialFileError;
use svg::{line_plot, Scale};
use table::Table;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    NonConvergence(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io(_) => 1,
            Self::Usage(_) => 2,
            Self::Domain(_) => 3,
            Self::NonConvergence(_) => 4,
        }
    }

    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        Self::Io(format!("{}: {e}", path.display()))
    }
}

impl From<NumericsError> for CliError {
    fn from(e: NumericsError) -> Self {
        match e {
            NumericsError::Domain { .. } => Self::Domain(e.to_string()),
            NumericsError::InvalidSpec(_) | NumericsError::Fit(_) => Self::Usage(e.to_string()),
            NumericsError::NonConvergence { .. } | NumericsError::TailNotBounded { .. } => {
                Self::NonConvergence(e.to_string())
            }
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::BoundStateSearch { .. } => Self::NonConvergence(e.to_string()),
            SolverError::NonPositiveFrequency(_) => Self::Domain(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Solver(s) => s.into(),
            _ => Self::Domain(e.to_string()),
        }
    }
}

impl From<ThermoError> for CliError {
    fn from(e: ThermoError) -> Self {
        match e {
            ThermoError::Model(m) => m.into(),
            ThermoError::Numerics(n) => n.into(),
            ThermoError::InvalidTemperature(_) | ThermoError::DivergentEndpoint { .. } => {
                Self::Domain(e.to_string())
            }
        }
    }
}

impl From<LevinsonError> for CliError {
    fn from(e: LevinsonError) -> Self {
        match e {
            LevinsonError::Numerics(n) => n.into(),
            LevinsonError::Solver(s) => s.into(),
            LevinsonError::Model(m) => m.into(),
            LevinsonError::PhaseNotDecayed { .. } => Self::NonConvergence(e.to_string()),
            _ => Self::Domain(e.to_string()),
        }
    }
}

impl From<PotentialFileError> for CliError {
    fn from(e: PotentialFileError) -> Self {
        match e {
            PotentialFileError::Io { .. } => Self::Io(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `min:max:points:lin|log`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, points, spacing] = parts.as_slice() else {
            return Err(format!(
                "grid `{s}` is not of the form min:max:points:lin|log"
            ));
        };
        let num = |v: &str| {
            v.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("`{v}` is not a finite number"))
        };
        let grid = Self {
            min: num(min)?,
            max: num(max)?,
            points: points
                .parse()
                .map_err(|_| format!("`{points}` is not a point count"))?,
            spacing: match *spacing {
                "lin" => Spacing::Linear,
                "log" => Spacing::Log,
                other => return Err(format!("spacing `{other}` must be lin or log")),
            },
        };
        if !(grid.min < grid.max) {
            return Err("grid min must be below max".into());
        }
        if grid.points < 2 {
            return Err("grid needs at least 2 points".into());
        }
        if grid.spacing == Spacing::Log && grid.min <= 0.0 {
            return Err("log grid needs min > 0".into());
        }
        Ok(grid)
    }
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Linear => linear_grid(self.min, self.max, self.points),
            Spacing::Log => log_grid(self.min, self.max, self.points),
        }
    }

    fn capped(mut self, cap: Option<f64>) -> Result<Self, CliError> {
        if let Some(cap) = cap {
            if !(cap > self.min) {
                return Err(CliError::Usage(format!(
                    "--omega-cap {cap} must exceed the grid minimum {}",
                    self.min
                )));
            }
            self.max = self.max.min(cap);
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "entropy1d",
    version,
    about = "Phase shifts, free energy and entropy of one-dimensional scattering backgrounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Phase shift and its derivative on a frequency grid.
    Phase {
        #[command(flatten)]
        model: ModelArgs,
        /// Frequency grid, default 0:20:2001:lin.
        #[arg(long)]
        grid: Option<GridSpec>,
        /// Upper bound applied to the grid maximum.
        #[arg(long = "omega-cap")]
        omega_cap: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Entropy (and optionally free energy) on a temperature grid.
    Entropy {
        #[command(flatten)]
        model: ModelArgs,
        /// Temperature grid, default 0.01:100:400:log.
        #[arg(long)]
        grid: Option<GridSpec>,
        /// Add a free-energy column.
        #[arg(long = "free-energy")]
        free_energy: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fit S = a ln T + b at high temperature and compare a with the
    /// Levinson prediction.
    Asymptote {
        #[command(flatten)]
        model: ModelArgs,
        /// Temperature grid, default 1e2..1e4 times the model's frequency scale.
        #[arg(long)]
        grid: Option<GridSpec>,
        /// Allowed |predicted - measured| for the ln T coefficient.
        #[arg(long = "fit-tol", default_value_t = 0.01)]
        fit_tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Regenerate the four reference figures (CSV and SVG).
    Figures {
        /// Output directory.
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        /// Relative quadrature tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Transmission, phase and bound states of a potential file.
    Solver {
        /// Potential file.
        #[arg(long)]
        model: PathBuf,
        /// Frequency grid, default 0.01:20:400:lin.
        #[arg(long)]
        grid: Option<GridSpec>,
        #[arg(long = "omega-cap")]
        omega_cap: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// `plasma`, `delta`, `free`, or a potential-file path.
    #[arg(long)]
    pub model: String,
    /// Plasma frequency.
    #[arg(long = "Omega", default_value_t = 1.0)]
    pub omega: f64,
    /// Plasma-point radius.
    #[arg(long = "R", default_value_t = 1.0)]
    pub radius: f64,
    /// Delta-potential strength.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Chemical potential.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mu: f64,
    /// Relative quadrature tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl ModelArgs {
    pub fn build(&self) -> Result<SpectralModel, CliError> {
        match self.model.as_str() {
            "free" => Ok(SpectralModel::Free),
            "plasma" => Ok(SpectralModel::PlasmaPoint(PlasmaPointParams::new(
                self.omega,
                self.radius,
            )?)),
            "delta" => Ok(SpectralModel::Delta(DeltaPotentialParams::new(
                self.alpha, self.mu,
            )?)),
            path => {
                let pot = potential_file::read_potential(Path::new(path))?;
                Ok(SpectralModel::numeric(pot, self.mu)?)
            }
        }
    }

    pub fn spec(&self) -> Result<QuadratureSpec, CliError> {
        spec_from(self.tol)
    }
}

fn spec_from(tol: Option<f64>) -> Result<QuadratureSpec, CliError> {
    let mut spec = QuadratureSpec::default();
    if let Some(tol) = tol {
        spec.rel_tol = tol;
    }
    spec.validate()?;
    Ok(spec)
}

fn emit(output: &OutputArgs, body: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn render(
    table: &Table,
    output: &OutputArgs,
    x_label: &str,
    y_label: &str,
    scale: Scale,
) -> Result<(), CliError> {
    let body = match output.format {
        Format::Csv => table.to_csv(),
        Format::Json => format!("{:#}\n", table.to_json()),
        Format::Svg => line_plot(table, x_label, y_label, scale),
    };
    emit(output, &body)
}

fn scale_of(grid: &GridSpec) -> Scale {
    match grid.spacing {
        Spacing::Linear => Scale::Linear,
        Spacing::Log => Scale::Log,
    }
}

pub fn phase_table(model: &SpectralModel, grid: &GridSpec) -> Table {
    let mut t = Table::new(
        "omega: 1/length; delta: rad; delta_prime: rad*length",
        &["omega", "delta", "delta_prime"],
    );
    for w in grid.values() {
        let d = if w > 0.0 {
            model.phase_derivative(w)
        } else {
            model.phase_derivative(f64::MIN_POSITIVE)
        };
        t.push(vec![w, model.phase(w), d]);
    }
    t
}

pub fn entropy_table(
    model: &SpectralModel,
    grid: &GridSpec,
    with_free_energy: bool,
    spec: &QuadratureSpec,
) -> Result<Table, CliError> {
    let temps = grid.values();
    if temps[0] <= 0.0 {
        return Err(CliError::Usage("temperatures must be positive".into()));
    }
    if with_free_energy {
        let mut t = Table::new(
            "T: 1/length; S: dimensionless; F: 1/length",
            &["T", "S", "F"],
        );
        for s in thermo::sweep(model, &temps, spec)? {
            t.push(vec![s.temperature, s.entropy, s.free_energy]);
        }
        Ok(t)
    } else {
        let mut t = Table::new("T: 1/length; S: dimensionless", &["T", "S"]);
        for (temp, s) in temps
            .iter()
            .zip(thermo::entropy_sweep(model, &temps, spec)?)
        {
            t.push(vec![*temp, s]);
        }
        Ok(t)
    }
}

/// Levinson report for a model over a high-temperature grid.
pub fn asymptote_report(
    model: &SpectralModel,
    grid: &GridSpec,
    fit_tol: f64,
    spec: &QuadratureSpec,
) -> Result<levinson::LevinsonReport, CliError> {
    let temps = grid.values();
    let sweep = thermo::sweep(model, &temps, spec)?;
    Ok(levinson::verify_model(model, &sweep, fit_tol)?)
}

pub fn default_asymptote_grid(model: &SpectralModel) -> GridSpec {
    let s = model.frequency_scale();
    GridSpec {
        min: 1e2 * s,
        max: 1e4 * s,
        points: 81,
        spacing: Spacing::Log,
    }
}

fn run_solver(path: &Path, grid: &GridSpec, output: &OutputArgs) -> Result<(), CliError> {
    let pot = potential_file::read_potential(path)?;
    let omegas = grid.values();
    if omegas[0] <= 0.0 {
        return Err(CliError::Usage("solver grid needs omega > 0".into()));
    }
    let data = solver::scattering_sweep(&pot, &omegas)?;
    let bound = solver::bound_states_numeric(&pot)?;
    let mut t = Table::new(
        "omega: 1/length; t: dimensionless; delta: rad",
        &["omega", "re_t", "im_t", "delta"],
    );
    for d in &data {
        t.push(vec![d.omega, d.transmission.re, d.transmission.im, d.phase]);
    }
    for b in &bound {
        let parity = match b.parity {
            Some(p) => format!("{p:?}").to_lowercase(),
            None => "unresolved".into(),
        };
        t.notes.push(format!(
            "bound state kappa = {} parity {parity}",
            table::format_value(b.kappa)
        ));
    }
    match output.format {
        Format::Json => {
            let states: Vec<_> = bound
                .iter()
                .map(|b| json!({ "kappa": b.kappa, "parity": b.parity }))
                .collect();
            let mut doc = t.to_json();
            doc["bound_states"] = json!(states);
            emit(output, &format!("{doc:#}\n"))
        }
        Format::Svg => {
            let mut plot = Table::new(t.units.clone(), &["omega", "delta"]);
            for r in &t.rows {
                plot.push(vec![r[0], r[3]]);
            }
            emit(output, &line_plot(&plot, "omega", "delta", scale_of(grid)))
        }
        Format::Csv => emit(output, &t.to_csv()),
    }
}

fn usage(e: String) -> CliError {
    CliError::Usage(e)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Phase {
            model,
            grid,
            omega_cap,
            output,
        } => {
            let m = model.build()?;
            let grid = grid
                .map_or_else(|| "0:20:2001:lin".parse(), Ok)
                .map_err(usage)?
                .capped(omega_cap)?;
            if grid.min < 0.0 {
                return Err(CliError::Usage("frequencies must be non-negative".into()));
            }
            render(
                &phase_table(&m, &grid),
                &output,
                "omega",
                "delta",
                scale_of(&grid),
            )
        }
        Command::Entropy {
            model,
            grid,
            free_energy,
            output,
        } => {
            let m = model.build()?;
            let grid = grid
                .map_or_else(|| "0.01:100:400:log".parse(), Ok)
                .map_err(usage)?;
            let t = entropy_table(&m, &grid, free_energy, &model.spec()?)?;
            render(&t, &output, "T", "S", scale_of(&grid))
        }
        Command::Asymptote {
            model,
            grid,
            fit_tol,
            output,
        } => {
            let m = model.build()?;
            let grid = grid.unwrap_or_else(|| default_asymptote_grid(&m));
            let report = asymptote_report(&m, &grid, fit_tol, &model.spec()?)?;
            let body = match output.format {
                Format::Json => format!("{:#}\n", json!(report)),
                Format::Csv => {
                    let doc = json!(report);
                    let mut s = String::from("field,value\n");
                    for (k, v) in doc.as_object().expect("report is an object") {
                        s.push_str(&format!("{k},{v}\n"));
                    }
                    s
                }
                Format::Svg => {
                    return Err(CliError::Usage("asymptote supports csv or json".into()))
                }
            };
            emit(&output, &body)
        }
        Command::Figures { out, tol } => {
            for path in figures::write_figures(&out, &spec_from(tol)?)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Solver {
            model,
            grid,
            omega_cap,
            output,
        } => {
            let grid = grid
                .map_or_else(|| "0.01:20:400:lin".parse(), Ok)
                .map_err(usage)?
                .capped(omega_cap)?;
            run_solver(&model, &grid, &output)
        }
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g: GridSpec = "0.01:100:400:log".parse().unwrap();
        assert_eq!(g.points, 400);
        assert_eq!(g.values().len(), 400);
        for bad in [
            "1:0:5:lin",
            "0:1:1:lin",
            "0:1:5:log",
            "0:1:5",
            "a:1:5:lin",
            "0:1:5:cubic",
        ] {
            assert!(bad.parse::<GridSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 2);
        let domain: CliError = ModelError::ChemicalPotentialTooLow {
            mu: 1.0,
            kappa: 1.0,
        }
        .into();
        assert_eq!(domain.exit_code(), 3);
        let nc: CliError = NumericsError::NonConvergence {
            best_estimate: 0.0,
            error_estimate: 1.0,
        }
        .into();
        assert_eq!(nc.exit_code(), 4);
        let fit: CliError = NumericsError::Fit(String::new()).into();
        assert_eq!(fit.exit_code(), 2);
    }
}
