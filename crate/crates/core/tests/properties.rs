use std::f64::consts::{FRAC_PI_2, PI};

use entropy1d::cli::potential_file::parse_potential;
use entropy1d::levinson::{channel_phase_jumps, levinson_predict_delta};
use entropy1d::models::{
    delta_phase_shift, phase_from_jost, plasma_jost, plasma_large_omega_tail, plasma_phase_shift,
    DeltaPotentialParams, Parity, PlasmaPointParams, SpectralModel,
};
use entropy1d::numerics::{central_difference, five_point, g_kernel, QuadratureSpec};
use entropy1d::solver::{
    bound_states_numeric, det2, is_critical, transfer_matrix, transmission_reflection, Geometry,
    PiecewiseConstantPotential,
};
use entropy1d::thermo::{entropy, entropy_high_t, entropy_with, free_energy_with};
use proptest::prelude::*;

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn plasma_params() -> impl Strategy<Value = PlasmaPointParams> {
    (log_uniform(1e-2, 50.0), log_uniform(0.1, 10.0))
        .prop_map(|(o, r)| PlasmaPointParams::new(o, r).unwrap())
}

fn delta_params() -> impl Strategy<Value = DeltaPotentialParams> {
    (
        log_uniform(0.05, 20.0),
        any::<bool>(),
        log_uniform(0.05, 5.0),
    )
        .prop_map(|(a, neg, extra)| {
            if neg {
                DeltaPotentialParams::new(-a, a + extra).unwrap()
            } else {
                DeltaPotentialParams::new(a, 0.0).unwrap()
            }
        })
}

fn full_line_potential() -> impl Strategy<Value = PiecewiseConstantPotential> {
    (
        -1.0f64..0.0,
        proptest::collection::vec((0.05f64..0.4, -5.0f64..5.0), 1..6),
    )
        .prop_map(|(x0, pieces)| {
            let mut b = vec![x0];
            let mut h = Vec::new();
            for (w, v) in pieces {
                b.push(b.last().unwrap() + w);
                h.push(v);
            }
            PiecewiseConstantPotential::new(b, h, Geometry::FullLine).unwrap()
        })
}

/// Mirror-symmetric potential about the origin.
fn symmetric_potential() -> impl Strategy<Value = PiecewiseConstantPotential> {
    proptest::collection::vec((0.05f64..0.5, -8.0f64..3.0), 1..4).prop_map(|pieces| {
        let mut right = vec![0.0];
        for (w, _) in &pieces {
            right.push(right.last().unwrap() + w);
        }
        let mut b: Vec<f64> = right.iter().rev().map(|x| -x).collect();
        b.extend(&right[1..]);
        let mut h: Vec<f64> = pieces.iter().rev().map(|p| p.1).collect();
        h.extend(pieces.iter().map(|p| p.1));
        // merge the two central pieces, which share a height
        let mid = pieces.len();
        b.remove(mid);
        h.remove(mid);
        PiecewiseConstantPotential::new(b, h, Geometry::FullLine).unwrap()
    })
}

proptest! {
    #[test]
    fn jost_phase_equals_closed_form(p in plasma_params(), w in log_uniform(1e-3, 1e3)) {
        let d = phase_from_jost(plasma_jost(w, &p)).unwrap();
        prop_assert!((d - plasma_phase_shift(w, &p)).abs() <= 1e-10);
    }

    #[test]
    fn plasma_phase_is_non_positive(p in plasma_params(), w in 0.0f64..200.0) {
        prop_assert!(plasma_phase_shift(w, &p) <= 0.0);
    }

    #[test]
    fn plasma_tail_is_leading_order(p in plasma_params()) {
        let scale = p.plasma_frequency().max(1.0 / p.radius());
        for k in [1e3, 1e4, 1e5] {
            let w = k * scale;
            let rem = (plasma_phase_shift(w, &p) - plasma_large_omega_tail(w, &p)).abs();
            prop_assert!(rem <= 2.0 * (p.plasma_frequency() / w).powi(2) + 1e-15, "w={w} rem={rem}");
        }
    }

    #[test]
    fn delta_phase_is_monotone_with_endpoints(p in delta_params(), w1 in 0.0f64..100.0, dw in 1e-3f64..10.0) {
        let step = delta_phase_shift(w1 + dw, &p) - delta_phase_shift(w1, &p);
        prop_assert!(step * p.alpha().signum() > 0.0);
        let d0 = delta_phase_shift(0.0, &p);
        prop_assert_eq!(d0, if p.alpha() > 0.0 { -FRAC_PI_2 } else { FRAC_PI_2 });
        prop_assert!(delta_phase_shift(1e9 * p.alpha().abs(), &p).abs() < 1e-8);
    }

    #[test]
    fn analytic_derivative_matches_difference(
        p in plasma_params(),
        d in delta_params(),
        w in log_uniform(1e-3, 1e3),
    ) {
        for m in [SpectralModel::PlasmaPoint(p), SpectralModel::Delta(d)] {
            let fd = central_difference(|x| m.phase(x), w, 1e-3 * w.min(1.0 / m.frequency_scale()).min(1.0));
            let an = m.phase_derivative(w);
            // away from zeros of delta', measured against the local scale
            let scale = an.abs().max(1e-3 * m.derivative_envelope(w));
            prop_assert!((fd - an).abs() <= 1e-6 * scale, "{m:?} w={w} fd={fd} an={an}");
        }
    }

    #[test]
    fn g_kernel_strictly_decreasing(x1 in log_uniform(1e-6, 600.0), ratio in 1.0001f64..10.0) {
        // above 700 the kernel is flushed to zero
        let x2 = (x1 * ratio).min(700.0);
        prop_assert!(g_kernel(x1).unwrap() > g_kernel(x2).unwrap());
        prop_assert!(g_kernel(x2).unwrap() > 0.0);
    }

    #[test]
    fn unitarity_and_unit_determinant(pot in full_line_potential(), w in 0.01f64..30.0) {
        let (t, r) = transmission_reflection(&pot, w).unwrap();
        prop_assert!((t.norm_sqr() + r.norm_sqr() - 1.0).abs() <= 1e-10);
        let det = det2(&transfer_matrix(&pot, w).unwrap());
        prop_assert!((det - 1.0).norm() <= 1e-12, "det={det}");
    }

    #[test]
    fn potential_file_round_trip(pot in full_line_potential()) {
        let mut text = String::from("geometry: full\n");
        for (x, h) in pot.breakpoints().iter().zip(pot.heights()) {
            text.push_str(&format!("{x:e} {h:e}\n"));
        }
        text.push_str(&format!("{:e}\n", pot.breakpoints().last().unwrap()));
        prop_assert_eq!(parse_potential(&text).unwrap(), pot);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetric_parities_alternate_from_even(pot in symmetric_potential()) {
        let states = bound_states_numeric(&pot).unwrap();
        // deepest level first
        for (k, s) in states.iter().rev().enumerate() {
            let want = if k % 2 == 0 { Parity::Even } else { Parity::Odd };
            prop_assert_eq!(s.parity, Some(want));
        }
    }

    #[test]
    fn channel_jumps_obey_levinson(pot in symmetric_potential()) {
        prop_assume!(!is_critical(&pot).unwrap());
        let states = bound_states_numeric(&pot).unwrap();
        let ne = states.iter().filter(|s| s.parity == Some(Parity::Even)).count();
        let no = states.iter().filter(|s| s.parity == Some(Parity::Odd)).count();
        let (dp, dm) = channel_phase_jumps(&pot).unwrap();
        let (pp, pm) = levinson_predict_delta(ne, no, false);
        prop_assert!((dp - pp).abs() <= 1e-3 * PI, "even {dp} vs {pp}");
        prop_assert!((dm - pm).abs() <= 1e-3 * PI, "odd {dm} vs {pm}");
    }

    #[test]
    fn entropy_is_minus_free_energy_slope(
        p in plasma_params(),
        d in delta_params(),
        t in log_uniform(0.05, 20.0),
    ) {
        let spec = QuadratureSpec { rel_tol: 1e-12, abs_tol: 1e-15, ..QuadratureSpec::default() };
        for m in [SpectralModel::PlasmaPoint(p), SpectralModel::Delta(d)] {
            let s = entropy_with(&m, t, &spec).unwrap();
            let dfdt = five_point(|x| free_energy_with(&m, x, &spec).unwrap(), t, 1e-2 * t);
            prop_assert!((s + dfdt).abs() <= 1e-6 * s.abs().max(1.0), "{m:?} T={t} S={s} -dF/dT={}", -dfdt);
        }
    }

    #[test]
    fn entropy_vanishes_at_low_temperature(p in plasma_params(), d in delta_params()) {
        for m in [SpectralModel::PlasmaPoint(p), SpectralModel::Delta(d)] {
            let t0 = 1e-3 * m.frequency_scale().min(1.0);
            let s: Vec<f64> = [t0, 1e-1 * t0, 1e-2 * t0]
                .iter()
                .map(|&t| entropy(&m, t).unwrap().abs())
                .collect();
            prop_assert!(s[1] <= s[0] && s[2] <= s[1], "{m:?} {s:?}");
            prop_assert!(s[2] < 1e-3);
        }
    }

    #[test]
    fn plasma_entropy_is_non_positive(p in plasma_params(), t in log_uniform(1e-2, 1e2)) {
        prop_assert!(entropy(&SpectralModel::PlasmaPoint(p), t).unwrap() <= 0.0);
    }

    #[test]
    fn high_temperature_residual_decays(p in plasma_params(), d in delta_params()) {
        for m in [SpectralModel::PlasmaPoint(p), SpectralModel::Delta(d)] {
            let s = m.frequency_scale().max(m.chemical_potential());
            let r = |t: f64| (entropy(&m, t).unwrap() - entropy_high_t(&m, t).unwrap()).abs();
            let (r3, r4) = (r(1e3 * s), r(1e4 * s));
            prop_assert!(r4 <= 0.2 * r3 + 1e-7, "{m:?} {r3} {r4}");
        }
    }
}
