// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Drivers: evaluate every derived quantity at one working point, sweep one
//! variable over a grid, or locate the Markovian / non-Markovian transition
//! in the mixing angle both ways (closed form and sign scan).

use rayon::prelude::*;

use crate::config::{RunConfig, SweepVariable};
use crate::dephasing::{abs_kappa, PureStateAngle};
use crate::error::{Error, Result};
use crate::nonmarkov::{
    blp_from_intervals, closed_form_excess, critical_xi, find_increasing_intervals,
    rhp_from_intervals, CriticalPoints,
};
use crate::qsl::qsl_time;
use crate::spectral::SpectralParams;
use crate::Tolerances;

/// One evaluated working point; the sweep output schema.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    /// Value of the swept variable (the mixing angle for point runs).
    pub variable: f64,
    pub tau1_ps: f64,
    pub tau2_ps: f64,
    pub tau_inf_ps: f64,
    pub tau_qsl_ps: f64,
    pub n_blp: f64,
    pub n_rhp: f64,
    pub rhp_saturated: bool,
    pub kappa_tau_abs: f64,
    pub bures_angle_rad: f64,
}

fn compute_row(
    spectral: &SpectralParams,
    alpha: PureStateAngle,
    tau: f64,
    variable: f64,
    tol: &Tolerances,
) -> Result<SweepRow> {
    let bounds = qsl_time(spectral, alpha, tau, tol).map_err(|e| e.while_computing("qsl bounds"))?;
    let intervals = find_increasing_intervals(spectral, tau, tol);
    let n_blp = blp_from_intervals(spectral, &intervals);
    let n_rhp = rhp_from_intervals(spectral, &intervals, tol);
    Ok(SweepRow {
        variable,
        tau1_ps: bounds.tau1,
        tau2_ps: bounds.tau2,
        tau_inf_ps: bounds.tau_inf,
        tau_qsl_ps: bounds.tau_qsl,
        n_blp,
        n_rhp: n_rhp.value(),
        rhp_saturated: n_rhp.is_saturated(),
        kappa_tau_abs: abs_kappa(spectral, tau),
        bures_angle_rad: bounds.bures_angle,
    })
}

/// Evaluate the configured working point. The config must not carry a sweep
/// section; the swept-variable column reports the mixing angle.
pub fn run_point(cfg: &RunConfig) -> Result<SweepRow> {
    if cfg.sweep.is_some() {
        return Err(Error::Config(
            "point run given a config with a sweep section; drop it or run a sweep".into(),
        ));
    }
    compute_row(
        &cfg.spectral,
        cfg.alpha,
        cfg.resolved_tau(),
        cfg.spectral.xi(),
        &cfg.tolerances,
    )
}

fn row_at(cfg: &RunConfig, variable: SweepVariable, value: f64) -> Result<SweepRow> {
    match variable {
        SweepVariable::Xi => {
            let spectral = cfg.spectral.with_xi(value)?;
            compute_row(&spectral, cfg.alpha, cfg.resolved_tau(), value, &cfg.tolerances)
        }
        SweepVariable::Alpha => compute_row(
            &cfg.spectral,
            PureStateAngle::new(value)?,
            cfg.resolved_tau(),
            value,
            &cfg.tolerances,
        ),
        SweepVariable::Tau => compute_row(&cfg.spectral, cfg.alpha, value, value, &cfg.tolerances),
    }
}

/// Evaluate the configured sweep grid in order.
pub fn run_sweep(cfg: &RunConfig) -> Result<Vec<SweepRow>> {
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Config("sweep run requires a sweep section".into()))?;
    sweep
        .values()
        .into_iter()
        .map(|v| row_at(cfg, sweep.variable, v))
        .collect()
}

/// Same grid evaluated across threads. Row order and every bit of every row
/// match [`run_sweep`]; rows are independent pure computations.
pub fn run_sweep_parallel(cfg: &RunConfig) -> Result<Vec<SweepRow>> {
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Config("sweep run requires a sweep section".into()))?;
    sweep
        .values()
        .into_par_iter()
        .map(|v| row_at(cfg, sweep.variable, v))
        .collect()
}

/// Bisection tolerance for transition angles, rad.
const XI_ROOT_TOL: f64 = 1e-6;

/// Where the dynamics switches between Markovian and non-Markovian as the
/// mixing angle varies, located three ways.
#[derive(Debug, Clone, Copy)]
pub struct CriticalReport {
    pub tau: f64,
    /// Sign-change angles of the endpoint closed form, evaluated directly.
    pub closed_form: CriticalPoints,
    /// The same closed form root-found by bisection; agreement validates the
    /// arccos algebra.
    pub closed_form_bisection: Option<(f64, f64)>,
    /// Boundary of the set where the sign scan finds rising intervals. This
    /// is the ground truth; it need not coincide with the closed form.
    pub numeric_boundary: Option<(f64, f64)>,
}

fn bisect_sign_change<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> Option<f64> {
    let f_lo = f(lo);
    let f_hi = f(hi);
    if (f_lo < 0.0) != (f_hi < 0.0) {
        while hi - lo > XI_ROOT_TOL {
            let mid = 0.5 * (lo + hi);
            if (f(mid) < 0.0) == (f_lo < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    } else {
        None
    }
}

fn bisect_predicate<F: Fn(f64) -> bool>(f: &F, mut lo: f64, mut hi: f64) -> Option<f64> {
    let p_lo = f(lo);
    if p_lo == f(hi) {
        return None;
    }
    while hi - lo > XI_ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) == p_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Locate the transition angles for the configured environment and drive
/// time. Errors if the drive time is outside the closed form's window.
pub fn solve_critical(cfg: &RunConfig) -> Result<CriticalReport> {
    let tau = cfg.resolved_tau();
    let p = &cfg.spectral;
    let closed_form = critical_xi(p, tau)?;

    let excess = |xi: f64| -> f64 {
        closed_form_excess(&p.with_xi(xi).expect("xi inside [0, pi/2]"), tau)
            .expect("window already checked")
    };
    let quarter = std::f64::consts::FRAC_PI_4;
    let half = std::f64::consts::FRAC_PI_2;
    let closed_form_bisection = match (
        bisect_sign_change(&excess, 0.0, quarter),
        bisect_sign_change(&excess, quarter, half),
    ) {
        (Some(lo), Some(hi)) => Some((lo, hi)),
        _ => None,
    };

    let backflow = |xi: f64| -> bool {
        !find_increasing_intervals(&p.with_xi(xi).expect("xi inside [0, pi/2]"), tau, &cfg.tolerances)
            .is_empty()
    };
    let numeric_boundary = match (
        bisect_predicate(&backflow, 0.0, quarter),
        bisect_predicate(&backflow, quarter, half),
    ) {
        (Some(lo), Some(hi)) => Some((lo, hi)),
        _ => None,
    };

    Ok(CriticalReport {
        tau,
        closed_form,
        closed_form_bisection,
        numeric_boundary,
    })
}

impl std::fmt::Display for CriticalReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "transition angles at tau = {} ps", self.tau)?;
        match self.closed_form {
            CriticalPoints::Transition { xi_low, xi_high, q } => {
                writeln!(
                    f,
                    "  closed form:          xi = {xi_low:.9}, {xi_high:.9} rad (q = {q:.9})"
                )?;
            }
            CriticalPoints::NoTransition { q } => {
                writeln!(
                    f,
                    "  closed form:          no transition (q = {q:.9} > 1), whole range Markovian"
                )?;
            }
        }
        match self.closed_form_bisection {
            Some((lo, hi)) => writeln!(f, "  closed form bisected: xi = {lo:.9}, {hi:.9} rad")?,
            None => writeln!(f, "  closed form bisected: no sign change found")?,
        }
        match self.numeric_boundary {
            Some((lo, hi)) => {
                writeln!(f, "  sign-scan boundary:   xi = {lo:.9}, {hi:.9} rad")?;
                if let CriticalPoints::Transition { xi_low, xi_high, .. } = self.closed_form {
                    writeln!(
                        f,
                        "  closed form  - scan:  {:+.9}, {:+.9} rad",
                        xi_low - lo,
                        xi_high - hi
                    )?;
                }
            }
            None => writeln!(f, "  sign-scan boundary:   no transition found")?,
        }
        Ok(())
    }
}
