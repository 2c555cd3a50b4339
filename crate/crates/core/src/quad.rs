// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Adaptive Simpson quadrature with a forced minimum subdivision depth.
//!
//! The integrands in this crate are oscillatory: a spectral density times
//! e^{i w dn t} in the frequency domain, or |dkappa/dt| in the time domain.
//! Plain adaptive Simpson can terminate early on such integrands when the
//! coarse estimate happens to agree with the refined one by cancellation, so
//! the driver forces subdivision down to a depth chosen from the oscillation
//! count before the usual acceptance test is allowed to fire.

use crate::error::{Error, Result};

/// Tuning knobs for [`adaptive_simpson`].
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    /// Relative tolerance against the running estimate of the integral.
    pub rel_tol: f64,
    /// Absolute tolerance floor; governs when the integral is near zero.
    pub abs_tol: f64,
    /// No panel is accepted before it has been split this many times.
    pub min_depth: u32,
    /// Hard recursion limit; exceeding it with a bad error estimate is an error.
    pub max_depth: u32,
    /// Hard budget on integrand evaluations. Protects against unreachable
    /// tolerances, where every panel fails the acceptance test and the
    /// recursion would otherwise build a full tree of depth `max_depth`.
    pub max_evaluations: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            min_depth: 2,
            max_depth: 48,
            max_evaluations: 4_000_000,
        }
    }
}

impl QuadConfig {
    /// Same tolerances with the minimum depth raised to `min_depth`.
    pub fn with_min_depth(self, min_depth: u32) -> Self {
        QuadConfig {
            min_depth: min_depth.min(self.max_depth.saturating_sub(4)),
            ..self
        }
    }
}

/// Integral value with the accumulated local error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Minimum depth that puts at least `nodes_per_period` panel endpoints into
/// every oscillation of length `period` across a domain of width `width`.
pub fn min_depth_for_oscillations(width: f64, period: f64, nodes_per_period: f64) -> u32 {
    if !(width > 0.0) || !(period > 0.0) || !(nodes_per_period > 0.0) {
        return 0;
    }
    let panels = nodes_per_period * width / period;
    if panels <= 1.0 {
        return 0;
    }
    (panels.log2().ceil() as u32).min(24)
}

fn simpson(h: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

struct Accum {
    error: f64,
    evaluations: usize,
    unconverged: bool,
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    cfg: &QuadConfig,
    acc: &mut Accum,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    acc.evaluations += 2;
    let left = simpson(m - a, fa, flm, fm);
    let right = simpson(b - m, fm, frm, fb);
    let delta = left + right - whole;

    // A panel converges only once it is past the forced depth; the /15 factor
    // is the usual Richardson estimate of the composite rule's error. The
    // depth limit and the evaluation budget both force acceptance, flagged as
    // unconverged when the estimate is still out of tolerance.
    let out_of_budget = depth >= cfg.max_depth || acc.evaluations >= cfg.max_evaluations;
    if (depth >= cfg.min_depth && delta.abs() <= 15.0 * tol) || out_of_budget {
        if delta.abs() > 15.0 * tol {
            acc.unconverged = true;
        }
        acc.error += delta.abs() / 15.0;
        return left + right + delta / 15.0;
    }

    let half_tol = 0.5 * tol;
    recurse(f, a, m, fa, flm, fm, left, half_tol, depth + 1, cfg, acc)
        + recurse(f, m, b, fm, frm, fb, right, half_tol, depth + 1, cfg, acc)
}

/// Integrate `f` over `[a, b]`.
///
/// Swapped bounds negate the result. Errors if the error estimate still
/// exceeds the requested tolerance after the depth limit, carrying both the
/// achieved and the requested figure so the caller can report the gap.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Quadrature> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParams(format!(
            "quadrature bounds must be finite, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let m = 0.5 * (lo + hi);
    let fa = f(lo);
    let fm = f(m);
    let fb = f(hi);
    if !fa.is_finite() || !fm.is_finite() || !fb.is_finite() {
        return Err(Error::NumericalDomain(format!(
            "integrand is not finite on [{lo}, {hi}]"
        )));
    }
    let whole = simpson(hi - lo, fa, fm, fb);
    let tol = cfg.abs_tol.max(cfg.rel_tol * whole.abs());

    let mut acc = Accum {
        error: 0.0,
        evaluations: 3,
        unconverged: false,
    };
    let value = recurse(&f, lo, hi, fa, fm, fb, whole, tol, 0, cfg, &mut acc);
    if !value.is_finite() {
        return Err(Error::NumericalDomain(format!(
            "quadrature over [{lo}, {hi}] produced a non-finite value"
        )));
    }
    let requested = cfg.abs_tol.max(cfg.rel_tol * value.abs());
    if acc.unconverged && acc.error > requested {
        return Err(Error::QuadratureNonConvergence {
            achieved: acc.error,
            requested,
        });
    }
    Ok(Quadrature {
        value: sign * value,
        error_estimate: acc.error,
        evaluations: acc.evaluations,
    })
}
