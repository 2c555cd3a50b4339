// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Property-based invariants over randomized parameters. Case counts are
//! tuned per block: algebraic identities run the proptest default, anything
//! that integrates runs fewer cases to keep the suite quick.

mod support;

use num_complex::Complex64;
use photon_qsl::config::{SweepSpec, SweepVariable};
use photon_qsl::dephasing::{abs_kappa, evolve, kappa, kappa_dot, pure_state, PureStateAngle};
use photon_qsl::nonmarkov::{blp, critical_xi, CriticalPoints};
use photon_qsl::output::{csv_string, json_string};
use photon_qsl::qsl::qsl_time;
use photon_qsl::sweep::{run_sweep, run_sweep_parallel, SweepRow};
use photon_qsl::{RunConfig, SpectralParams, Tolerances};
use proptest::prelude::*;

const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

fn defaults(xi: f64) -> SpectralParams {
    SpectralParams::new(2676.0, 2692.0, 1.8, xi, 0.01).unwrap()
}

fn beat() -> f64 {
    defaults(0.0).beat_period()
}

prop_compose! {
    fn finite_row()(
        variable in -10.0..10.0f64,
        tau1 in prop_oneof![Just(0.0f64), -1e6..1e6f64, -1e-12..1e-12f64],
        n_blp in -1.0..1.0f64,
        saturated in any::<bool>(),
    ) -> SweepRow {
        SweepRow {
            variable,
            tau1_ps: tau1,
            tau2_ps: 2.0 * tau1,
            tau_inf_ps: 3.0 * tau1,
            tau_qsl_ps: 3.0 * tau1,
            n_blp,
            n_rhp: n_blp.abs(),
            rhp_saturated: saturated,
            kappa_tau_abs: 0.5,
            bures_angle_rad: variable / 13.0,
        }
    }
}

proptest! {
    // Pure closed forms: cheap, default case count.

    #[test]
    fn modulus_never_exceeds_one(xi in 0.0..=FRAC_PI_2, u in 0.0..3.0f64) {
        let p = defaults(xi);
        prop_assert!(abs_kappa(&p, u * beat()) <= 1.0 + 1e-12);
    }

    #[test]
    fn modulus_symmetric_under_weight_exchange(xi in 0.0..=FRAC_PI_2, u in 0.0..3.0f64) {
        let t = u * beat();
        let lhs = abs_kappa(&defaults(xi), t);
        let rhs = abs_kappa(&defaults(FRAC_PI_2 - xi), t);
        prop_assert!((lhs - rhs).abs() <= 1e-12, "asymmetry {} at xi {xi}, t {t}", lhs - rhs);
    }

    #[test]
    fn derivative_matches_central_difference(xi in 0.0..=FRAC_PI_2, u in 0.01..3.0f64) {
        let p = defaults(xi);
        let t = u * beat();
        let h = 1e-6;
        let fd = (kappa(&p, t + h) - kappa(&p, t - h)) / Complex64::new(2.0 * h, 0.0);
        let diff = (kappa_dot(&p, t) - fd).norm();
        prop_assert!(diff <= 1e-6, "derivative mismatch {diff} at xi {xi}, t {t}");
    }

    #[test]
    fn evolution_preserves_trace_and_positivity(
        xi in 0.0..=FRAC_PI_2,
        alpha in 0.0..=FRAC_PI_2,
        u in 0.0..3.0f64,
    ) {
        let rho0 = pure_state(PureStateAngle::new(alpha).unwrap());
        let rho = evolve(&rho0, &defaults(xi), u * beat());
        prop_assert_eq!(rho.trace(), 1.0);
        let (a, b) = rho.eigenvalues();
        prop_assert!(a >= -1e-12 && a <= 1.0 + 1e-12);
        prop_assert!(b >= -1e-12 && b <= 1.0 + 1e-12);
    }

    #[test]
    fn sweep_grids_hit_both_endpoints_exactly(
        start in -5.0..5.0f64,
        width in 0.0..4.0f64,
        points in 2usize..50,
    ) {
        let spec = SweepSpec {
            variable: SweepVariable::Tau,
            start,
            stop: start + width,
            points,
        };
        let values = spec.values();
        prop_assert_eq!(values.len(), points);
        prop_assert_eq!(values[0], start);
        prop_assert_eq!(values[points - 1], start + width);
        prop_assert!(values.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn csv_rendering_is_deterministic_and_reparses_bitwise(
        rows in proptest::collection::vec(finite_row(), 1..5)
    ) {
        let a = csv_string(&rows, "tau_ps");
        let b = csv_string(&rows, "tau_ps");
        prop_assert_eq!(&a, &b);
        for (line, row) in a.lines().skip(1).zip(&rows) {
            let fields: Vec<&str> = line.split(',').collect();
            prop_assert_eq!(fields.len(), 10);
            prop_assert_eq!(fields[0].parse::<f64>().unwrap(), row.variable);
            prop_assert_eq!(fields[1].parse::<f64>().unwrap(), row.tau1_ps);
            prop_assert_eq!(fields[5].parse::<f64>().unwrap(), row.n_blp);
            prop_assert_eq!(fields[7].parse::<bool>().unwrap(), row.rhp_saturated);
        }
    }

    #[test]
    fn json_rendering_reparses_bitwise(rows in proptest::collection::vec(finite_row(), 1..4)) {
        let cfg = RunConfig::default_run();
        let text = json_string(&rows, &cfg, "tau_ps");
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let columns = &value["columns"];
        for (k, row) in rows.iter().enumerate() {
            prop_assert_eq!(columns["tau_ps"][k].as_f64().unwrap(), row.variable);
            prop_assert_eq!(columns["n_blp"][k].as_f64().unwrap(), row.n_blp);
            prop_assert_eq!(columns["rhp_saturated"][k].as_bool().unwrap(), row.rhp_saturated);
        }
        prop_assert_eq!(value["metadata"]["tool"].as_str().unwrap(), "photon-qsl");
    }
}

proptest! {
    // One quadrature per case.
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bounds_are_ordered_feasible_and_exact_multiples(
        xi in 0.0..=FRAC_PI_2,
        alpha in 0.05..=(FRAC_PI_2 - 0.05),
        u in 0.2..2.2f64,
    ) {
        let tau = u * beat();
        let b = qsl_time(&defaults(xi), PureStateAngle::new(alpha).unwrap(), tau, &Tolerances::default()).unwrap();
        prop_assert!(!b.degenerate);
        prop_assert!(b.tau1 > 0.0);
        prop_assert!(b.tau1 <= b.tau2 && b.tau2 <= b.tau_inf);
        prop_assert_eq!(b.tau_inf, 2.0 * b.tau1);
        prop_assert!((b.tau_inf - std::f64::consts::SQRT_2 * b.tau2).abs() <= 1e-15 * b.tau_inf);
        prop_assert_eq!(b.tau_qsl, b.tau_inf);
        prop_assert!(b.tau_qsl <= tau * (1.0 + 1e-12), "bound {} above drive time {tau}", b.tau_qsl);
    }

    #[test]
    fn transition_angles_sum_to_a_right_angle(u in 1.0..2.0f64) {
        let tau = u * beat();
        match critical_xi(&defaults(0.3), tau).unwrap() {
            CriticalPoints::Transition { xi_low, xi_high, q } => {
                prop_assert!((xi_low + xi_high - FRAC_PI_2).abs() <= 1e-12);
                prop_assert!((0.0..=1.0).contains(&q));
                prop_assert!(xi_low <= std::f64::consts::FRAC_PI_4);
            }
            CriticalPoints::NoTransition { q } => prop_assert!(q > 1.0),
        }
    }
}

proptest! {
    // Interval scans: a few ms per case.
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn backflow_nonnegative_and_symmetric(xi in 0.0..=FRAC_PI_2, u in 1.0..2.0f64) {
        let tau = u * beat();
        let tol = Tolerances::default();
        let n = blp(&defaults(xi), tau, &tol);
        let mirrored = blp(&defaults(FRAC_PI_2 - xi), tau, &tol);
        prop_assert!(n >= 0.0);
        prop_assert!((n - mirrored).abs() <= 1e-12, "asymmetry {}", n - mirrored);
    }
}

proptest! {
    // Full sweep rows; keep the case count small.
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn parallel_sweep_matches_sequential(start in 0.1..0.6f64, points in 3usize..7) {
        let overrides: Vec<String> = vec![
            "sweep.variable=xi".into(),
            format!("sweep.start={start:.17e}"),
            format!("sweep.stop={:.17e}", start + 0.8),
            format!("sweep.points={points}"),
        ];
        let cfg = RunConfig::load(None, &overrides).unwrap();
        let sequential = run_sweep(&cfg).unwrap();
        let parallel = run_sweep_parallel(&cfg).unwrap();
        prop_assert_eq!(sequential, parallel);
    }
}
