// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Fast end-to-end validation of the numerical core against its own
//! independent routes: closed forms against quadrature, analytic derivatives
//! against finite differences, identities that must hold to tight
//! tolerances. Backs the `check` CLI subcommand; each item reports a
//! measured figure next to its tolerance so failures are diagnosable from
//! the one-line output.

use num_complex::Complex64;

use crate::config::RunConfig;
use crate::dephasing::{abs_kappa, evolve, kappa, pure_state, PureStateAngle};
use crate::nonmarkov::{blp, closed_form_excess, critical_xi, CriticalPoints};
use crate::qsl::{bures_angle, bures_angle_direct, gamma_p, qsl_time, NormOrder};
use crate::spectral::characteristic_numeric;

/// Outcome of one validation item.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn from_measure(name: &'static str, measured: f64, tol: f64) -> Self {
        CheckResult {
            name,
            passed: measured.is_finite() && measured <= tol,
            detail: format!("measured {measured:.3e}, tolerance {tol:.1e}"),
        }
    }
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

/// Run every validation item on the default configuration.
pub fn run_all() -> Vec<CheckResult> {
    let cfg = RunConfig::default_run();
    let tol = cfg.tolerances;
    let p = cfg.spectral;
    let tau = cfg.resolved_tau();
    let mut results = Vec::new();

    // Density normalization across mixing angles.
    {
        let mut worst = 0.0_f64;
        for &xi in &[0.0, 0.4, std::f64::consts::FRAC_PI_4, 1.3] {
            let q = p.with_xi(xi).unwrap();
            match crate::spectral::integrate_pdf(&q, &tol) {
                Ok(norm) => worst = worst.max((norm - 1.0).abs()),
                Err(_) => worst = f64::INFINITY,
            }
        }
        results.push(CheckResult::from_measure("density-normalization", worst, 1e-9));
    }

    // Closed-form dephasing factor against direct quadrature.
    {
        let mut worst = 0.0_f64;
        for &xi in &[0.3, std::f64::consts::FRAC_PI_4] {
            let q = p.with_xi(xi).unwrap();
            for i in 0..8 {
                let t = tau * (i as f64 + 0.5) / 8.0;
                match characteristic_numeric(&q, t, &tol) {
                    Ok(num) => worst = worst.max((num - kappa(&q, t)).norm()),
                    Err(_) => worst = f64::INFINITY,
                }
            }
        }
        results.push(CheckResult::from_measure("characteristic-quadrature", worst, 1e-8));
    }

    // kappa at t = 0 must be exactly 1.
    {
        let exact = [0.0, 0.37, std::f64::consts::FRAC_PI_4, 1.49]
            .iter()
            .all(|&xi| kappa(&p.with_xi(xi).unwrap(), 0.0) == Complex64::new(1.0, 0.0));
        results.push(CheckResult {
            name: "kappa-zero-exact",
            passed: exact,
            detail: if exact {
                "kappa(0) == 1 bitwise".into()
            } else {
                "kappa(0) deviates from 1".into()
            },
        });
    }

    // Bures angle through the dephasing factor and through the evolved state.
    {
        let mut worst = 0.0_f64;
        for &a in &[0.3, std::f64::consts::FRAC_PI_4, 1.1] {
            let alpha = PureStateAngle::new(a).unwrap();
            let via_kappa = bures_angle(alpha, kappa(&p, tau));
            let via_state = bures_angle_direct(alpha, &evolve(&pure_state(alpha), &p, tau));
            worst = worst.max((via_kappa - via_state).abs());
        }
        results.push(CheckResult::from_measure("bures-two-routes", worst, 1e-12));
    }

    // The three averaged norms share one integral with exact prefactors.
    {
        let alpha = PureStateAngle::new(0.6).unwrap();
        let ginf = gamma_p(&p, alpha, tau, NormOrder::Inf, &tol);
        let g1 = gamma_p(&p, alpha, tau, NormOrder::One, &tol);
        let g2 = gamma_p(&p, alpha, tau, NormOrder::Two, &tol);
        let measured = match (ginf, g1, g2) {
            (Ok(gi), Ok(g1), Ok(g2)) => (g1 - 2.0 * gi)
                .abs()
                .max((g2 - std::f64::consts::SQRT_2 * gi).abs())
                / gi.max(f64::MIN_POSITIVE),
            _ => f64::INFINITY,
        };
        results.push(CheckResult::from_measure("gamma-ratio-identity", measured, 1e-15));
    }

    // Interval-based BLP against a dense grid total rise.
    {
        let n = 100_000;
        let h = tau / n as f64;
        let mut grid_sum = 0.0;
        let mut prev = abs_kappa(&p, 0.0);
        for i in 1..=n {
            let cur = abs_kappa(&p, i as f64 * h);
            if cur > prev {
                grid_sum += cur - prev;
            }
            prev = cur;
        }
        let measured = (blp(&p, tau, &tol) - grid_sum).abs();
        results.push(CheckResult::from_measure("blp-grid-cross-check", measured, 1e-4));
    }

    // Closed-form transition angles: symmetric pair, zero of the excess.
    {
        let measured = match critical_xi(&p, tau) {
            Ok(CriticalPoints::Transition { xi_low, xi_high, .. }) => {
                let sym = (xi_low + xi_high - std::f64::consts::FRAC_PI_2).abs();
                let at_root = closed_form_excess(&p.with_xi(xi_low).unwrap(), tau)
                    .map(f64::abs)
                    .unwrap_or(f64::INFINITY);
                sym.max(at_root)
            }
            _ => f64::INFINITY,
        };
        results.push(CheckResult::from_measure("critical-angle-consistency", measured, 1e-9));
    }

    // Bound ordering and feasibility at the working point.
    {
        let alpha = PureStateAngle::new(std::f64::consts::FRAC_PI_4).unwrap();
        let ok = match qsl_time(&p, alpha, tau, &tol) {
            Ok(b) => {
                !b.degenerate
                    && b.tau1 > 0.0
                    && b.tau1 < b.tau2
                    && b.tau2 < b.tau_inf
                    && b.tau_qsl == b.tau_inf
                    && b.tau_qsl <= tau
            }
            Err(_) => false,
        };
        results.push(CheckResult {
            name: "qsl-bound-ordering",
            passed: ok,
            detail: if ok {
                "tau1 < tau2 < tau_inf <= tau".into()
            } else {
                "ordering violated".into()
            },
        });
    }

    // Degenerate preparations give exact zeros, flagged.
    {
        let ok = [0.0, std::f64::consts::FRAC_PI_2].iter().all(|&a| {
            matches!(
                qsl_time(&p, PureStateAngle::new(a).unwrap(), tau, &tol),
                Ok(b) if b.degenerate && b.tau_qsl == 0.0
            )
        });
        results.push(CheckResult {
            name: "degenerate-alpha",
            passed: ok,
            detail: if ok { "bounds are exact zeros".into() } else { "nonzero bound".into() },
        });
    }

    results
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_default_configuration_passes_every_check() {
        let results = run_all();
        assert!(!results.is_empty());
        for r in &results {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
        assert!(all_passed(&results));
    }

    #[test]
    fn check_names_are_unique() {
        let results = run_all();
        let mut names: Vec<&str> = results.iter().map(|r| r.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), results.len());
    }
}
