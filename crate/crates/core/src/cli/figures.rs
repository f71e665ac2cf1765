//! Data and plots for the four reference figures.
//!
//! Phase figures use `w` in `[0, 20]` on a linear grid of 2001 points.
//! Entropy figures use `T` in `[0.01, 100]` on a log grid of 400 points.
//! Lengths are measured in units of `R` (plasma point) or of the unit length
//! in which `alpha` is given (delta potential).

use std::path::{Path, PathBuf};

use super::svg::{line_plot, Scale};
use super::table::Table;
use super::CliError;
use crate::models::{DeltaPotentialParams, PlasmaPointParams, SpectralModel};
use crate::numerics::{linear_grid, log_grid, QuadratureSpec};
use crate::thermo;

pub const PHASE_GRID: (f64, f64, usize) = (0.0, 20.0, 2001);
pub const TEMPERATURE_GRID: (f64, f64, usize) = (0.01, 100.0, 400);

pub const FIG1_COUPLINGS: [f64; 2] = [1.0, 10.0];
pub const FIG2_COUPLINGS: [f64; 3] = [0.1, 1.0, 10.0];
pub const FIG3_ALPHAS: [f64; 4] = [-10.0, -1.0, 1.0, 10.0];
/// `(alpha, mu)`; the `mu = 1` curve for `alpha = -1` is excluded.
pub const FIG4_CASES: [(f64, f64); 3] = [(1.0, 0.0), (-1.0, 1.1), (-1.0, 2.0)];

pub const FIG4_NOTE: &str = "alpha = -1, mu = 1 omitted: mu equals the binding energy kappa = 1, \
     where the bound-state term ln(1 - exp(-(mu - kappa)/T)) diverges";

fn plasma(coupling: f64) -> SpectralModel {
    SpectralModel::PlasmaPoint(PlasmaPointParams::new(coupling, 1.0).expect("valid parameters"))
}

fn delta(alpha: f64, mu: f64) -> SpectralModel {
    SpectralModel::Delta(DeltaPotentialParams::new(alpha, mu).expect("valid parameters"))
}

fn label(v: f64) -> String {
    format!("{v}")
}

fn phase_table(models: &[(String, SpectralModel)]) -> Table {
    let mut names = vec!["omega".to_string()];
    names.extend(models.iter().map(|(n, _)| n.clone()));
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut t = Table::new("omega: 1/length; delta: rad", &refs);
    let (lo, hi, n) = PHASE_GRID;
    for w in linear_grid(lo, hi, n) {
        let mut row = vec![w];
        row.extend(models.iter().map(|(_, m)| m.phase(w)));
        t.push(row);
    }
    t
}

fn entropy_table(
    models: &[(String, SpectralModel)],
    spec: &QuadratureSpec,
) -> Result<Table, CliError> {
    let mut names = vec!["T".to_string()];
    names.extend(models.iter().map(|(n, _)| n.clone()));
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut t = Table::new("T: 1/length; S: dimensionless", &refs);
    let (lo, hi, n) = TEMPERATURE_GRID;
    let temps = log_grid(lo, hi, n);
    let columns = models
        .iter()
        .map(|(_, m)| thermo::entropy_sweep(m, &temps, spec))
        .collect::<Result<Vec<_>, _>>()?;
    for (i, &temp) in temps.iter().enumerate() {
        let mut row = vec![temp];
        row.extend(columns.iter().map(|c| c[i]));
        t.push(row);
    }
    Ok(t)
}

/// Plasma-point phase shift for `Omega R` in {1, 10}.
pub fn fig1() -> Table {
    let models: Vec<_> = FIG1_COUPLINGS
        .iter()
        .map(|&c| (format!("delta_OmegaR_{}", label(c)), plasma(c)))
        .collect();
    phase_table(&models)
}

/// Plasma-point entropy for `Omega R` in {0.1, 1, 10}.
pub fn fig2(spec: &QuadratureSpec) -> Result<Table, CliError> {
    let models: Vec<_> = FIG2_COUPLINGS
        .iter()
        .map(|&c| (format!("S_OmegaR_{}", label(c)), plasma(c)))
        .collect();
    entropy_table(&models, spec)
}

/// Delta-potential phase shift for `alpha` in {-10, -1, 1, 10}.
pub fn fig3() -> Table {
    let models: Vec<_> = FIG3_ALPHAS
        .iter()
        .map(|&a| (format!("delta_alpha_{}", label(a)), delta(a, 2.0 * a.abs())))
        .collect();
    phase_table(&models)
}

/// Delta-potential entropy for `alpha = 1` and `alpha = -1` with `mu` in {1.1, 2}.
pub fn fig4(spec: &QuadratureSpec) -> Result<Table, CliError> {
    let models: Vec<_> = FIG4_CASES
        .iter()
        .map(|&(a, mu)| {
            (
                format!("S_alpha_{}_mu_{}", label(a), label(mu)),
                delta(a, mu),
            )
        })
        .collect();
    let mut t = entropy_table(&models, spec)?;
    t.notes.push(FIG4_NOTE.into());
    Ok(t)
}

/// Write `figN.csv` and `figN.svg` for all four figures into `dir`.
pub fn write_figures(dir: &Path, spec: &QuadratureSpec) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let figures = [
        ("fig1", fig1(), "omega R", "delta", Scale::Linear),
        ("fig2", fig2(spec)?, "T R", "S", Scale::Log),
        ("fig3", fig3(), "omega", "delta", Scale::Linear),
        ("fig4", fig4(spec)?, "T", "S", Scale::Log),
    ];
    let mut written = Vec::new();
    for (name, table, x, y, scale) in figures {
        let csv = dir.join(format!("{name}.csv"));
        std::fs::write(&csv, table.to_csv()).map_err(|e| CliError::io(&csv, e))?;
        let svg = dir.join(format!("{name}.svg"));
        std::fs::write(&svg, line_plot(&table, x, y, scale)).map_err(|e| CliError::io(&svg, e))?;
        written.extend([csv, svg]);
    }
    Ok(written)
}
