use serde::Serialize;

use super::NumericsError;

/// Least-squares fit `S = a ln T + b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogLinearFit {
    /// Coefficient of `ln T`.
    pub a: f64,
    /// Constant term.
    pub b: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
}

pub const MIN_FIT_SAMPLES: usize = 4;

/// Fit `S = a ln T + b` to `(T, S)` samples.
///
/// Needs at least four samples with positive temperatures spanning two decades.
pub fn fit_log_linear(samples: &[(f64, f64)]) -> Result<LogLinearFit, NumericsError> {
    if samples.len() < MIN_FIT_SAMPLES {
        return Err(NumericsError::Fit(format!(
            "{} samples, need at least {MIN_FIT_SAMPLES}",
            samples.len()
        )));
    }
    if samples.iter().any(|&(t, s)| !(t > 0.0) || !s.is_finite()) {
        return Err(NumericsError::Fit(
            "temperatures must be positive and entropies finite".into(),
        ));
    }
    let (t_min, t_max) = samples
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &(t, _)| {
            (lo.min(t), hi.max(t))
        });
    if t_max == t_min {
        return Err(NumericsError::Fit("all temperatures are equal".into()));
    }
    if t_max / t_min < 100.0 * (1.0 - 1e-12) {
        return Err(NumericsError::Fit(format!(
            "temperature range [{t_min}, {t_max}] spans less than two decades"
        )));
    }

    let n = samples.len() as f64;
    let mean_x = samples.iter().map(|&(t, _)| t.ln()).sum::<f64>() / n;
    let mean_y = samples.iter().map(|&(_, s)| s).sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(t, s) in samples {
        let dx = t.ln() - mean_x;
        sxx += dx * dx;
        sxy += dx * (s - mean_y);
    }
    let a = sxy / sxx;
    let b = mean_y - a * mean_x;
    let ss: f64 = samples
        .iter()
        .map(|&(t, s)| (s - a * t.ln() - b).powi(2))
        .sum();
    Ok(LogLinearFit {
        a,
        b,
        residual: (ss / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_half_log() {
        let samples: Vec<_> = (0..9)
            .map(|k| {
                let t = 10f64.powf(k as f64 * 0.25);
                (t, 0.5 * t.ln() + 0.5)
            })
            .collect();
        let fit = fit_log_linear(&samples).unwrap();
        assert!((fit.a - 0.5).abs() < 1e-12);
        assert!((fit.b - 0.5).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(fit_log_linear(&[(1.0, 0.0), (10.0, 0.0), (100.0, 0.0)]).is_err());
        assert!(fit_log_linear(&[(2.0, 0.0); 5]).is_err());
        assert!(fit_log_linear(&[(1.0, 0.0), (2.0, 0.0), (5.0, 0.0), (10.0, 0.0)]).is_err());
        assert!(fit_log_linear(&[(0.0, 0.0), (1.0, 0.0), (10.0, 0.0), (100.0, 0.0)]).is_err());
    }

    proptest! {
        #[test]
        fn recovers_planted_coefficients(a in -5.0f64..5.0, b in -5.0f64..5.0, lo in 1e-3f64..10.0, n in 4usize..60) {
            let samples: Vec<_> = (0..n)
                .map(|k| {
                    let t = lo * 10f64.powf(2.5 * k as f64 / (n - 1) as f64);
                    (t, a * t.ln() + b)
                })
                .collect();
            let fit = fit_log_linear(&samples).unwrap();
            prop_assert!((fit.a - a).abs() < 1e-9);
            prop_assert!((fit.b - b).abs() < 1e-9);
        }
    }
}
