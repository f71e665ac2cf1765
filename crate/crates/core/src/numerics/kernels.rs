//! Bose-Einstein thermodynamic kernels.
//!
//! Both kernels are evaluated through `exp_m1`/`ln_1p` so that neither the
//! `x -> 0` logarithmic regime nor the Boltzmann-suppressed `x -> inf` regime
//! loses digits to cancellation.

use super::NumericsError;

/// Above this argument the entropy kernel underflows and is returned as zero.
pub const G_UNDERFLOW: f64 = 700.0;

/// `ln(1 - exp(-x))` for `x > 0`, without the checks.
#[inline]
pub(crate) fn log1mexp(x: f64) -> f64 {
    if x > std::f64::consts::LN_2 {
        (-(-x).exp()).ln_1p()
    } else {
        (-(-x).exp_m1()).ln()
    }
}

/// Entropy per mode, `x/(e^x - 1) - ln(1 - e^-x)`, without the checks.
#[inline]
pub(crate) fn g_unchecked(x: f64) -> f64 {
    if x > G_UNDERFLOW {
        return 0.0;
    }
    x / x.exp_m1() - log1mexp(x)
}

/// The entropy kernel `g(x) = x/(e^x - 1) - ln(1 - e^-x)`.
///
/// Strictly positive and strictly decreasing on `(0, inf)`. Returns exactly
/// zero above [`G_UNDERFLOW`].
pub fn g_kernel(x: f64) -> Result<f64, NumericsError> {
    if !(x > 0.0) {
        return Err(NumericsError::Domain {
            function: "g_kernel",
            argument: x,
        });
    }
    Ok(g_unchecked(x))
}

/// Derivative of [`g_kernel`], `-x e^x / (e^x - 1)^2`.
pub fn g_kernel_derivative(x: f64) -> Result<f64, NumericsError> {
    if !(x > 0.0) {
        return Err(NumericsError::Domain {
            function: "g_kernel_derivative",
            argument: x,
        });
    }
    if x > G_UNDERFLOW {
        return Ok(0.0);
    }
    // -x e^{-x} / (1 - e^{-x})^2
    let em1 = (-x).exp_m1();
    Ok(-x * (-x).exp() / (em1 * em1))
}

/// Leading small-argument behaviour of the entropy kernel, `1 - ln x`.
///
/// The next correction is `O(x^2)`; the odd term cancels between the two parts
/// of `g`.
pub fn g_small_expansion(x: f64) -> f64 {
    1.0 - x.ln()
}

/// `ln(1 - e^-x)`, the per-mode free-energy kernel.
///
/// `x == 0` is the singular point reached when the chemical potential equals a
/// binding energy.
pub fn bose_log_term(x: f64) -> Result<f64, NumericsError> {
    if !(x > 0.0) {
        return Err(NumericsError::Domain {
            function: "bose_log_term",
            argument: x,
        });
    }
    Ok(log1mexp(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_matches_high_precision_oracle() {
        let g1 = g_kernel(1.0).unwrap();
        assert!((g1 - 1.040_651_852_256_408_3).abs() < 1e-15);
        let tiny = g_kernel(1e-8).unwrap();
        assert!((tiny - 19.420_680_743_952_365).abs() < 1e-12);
    }

    #[test]
    fn g_underflow_and_domain() {
        assert_eq!(g_kernel(701.0).unwrap(), 0.0);
        assert!(g_kernel(699.0).unwrap() > 0.0);
        assert!(g_kernel(0.0).is_err());
        assert!(g_kernel(-1.0).is_err());
        assert!(g_kernel(f64::NAN).is_err());
    }

    #[test]
    fn small_expansion_values() {
        assert!(g_small_expansion(std::f64::consts::E).abs() < 1e-15);
        assert!((g_small_expansion(1e-8) - 19.420_680_743_952_367).abs() < 1e-12);
    }

    #[test]
    fn small_expansion_has_linear_envelope() {
        // sup over (0, 0.1] of (g - (1 - ln x)) / x from the mpmath sweep is 0.0041656
        const C: f64 = 0.0042;
        let mut x = 0.1;
        while x > 1e-7 {
            let diff = (g_kernel(x).unwrap() - g_small_expansion(x)).abs();
            assert!(diff <= C * x + 1e-14, "x={x} diff={diff}");
            x *= 0.83;
        }
    }

    #[test]
    fn bose_log_values() {
        let v = bose_log_term(std::f64::consts::LN_2).unwrap();
        assert!((v + std::f64::consts::LN_2).abs() < 1e-15);
        let v = bose_log_term(1e-10).unwrap();
        assert!((v + 23.025_850_929_990_457).abs() < 1e-12);
        let v = bose_log_term(50.0).unwrap();
        assert!(v < 0.0 && v > -1e-21);
        assert!(bose_log_term(0.0).is_err());
    }

    #[test]
    fn derivative_oracle() {
        let d = g_kernel_derivative(1.0).unwrap();
        assert!((d + 0.920_673_594_207_792_3).abs() < 1e-14);
    }

    #[test]
    fn g_strictly_decreasing_on_samples() {
        let mut prev = g_kernel(1e-6).unwrap();
        let mut x = 1e-6;
        while x < 600.0 {
            x *= 1.07;
            let next = g_kernel(x).unwrap();
            assert!(next < prev, "not decreasing at {x}");
            assert!(next > 0.0);
            prev = next;
        }
    }
}
