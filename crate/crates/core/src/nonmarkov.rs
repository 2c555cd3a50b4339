// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Non-Markovianity measures of the dephasing channel.
//!
//! For pure dephasing both standard measures reduce to functionals of
//! `|kappa_t|` on the stretches where it increases (information flowing back
//! from the environment):
//!
//! ```text
//! N_BLP = sum over rising intervals of |kappa(end)| - |kappa(start)|
//! N_RHP = sum over rising intervals of ln|kappa(end)| - ln|kappa(start)|
//! ```
//!
//! The rising intervals are found numerically: sign scan of `d|kappa|/dt`
//! on a beat-resolving grid, density doubled until the interval count is
//! stable, boundaries refined by bisection. Interval starts can be cusps
//! (`|kappa| = 0`, balanced mixture only); there the RHP sum diverges and is
//! reported clamped with a saturation flag.
//!
//! An endpoint closed form exists for drive times inside one beat window:
//! `N = max(0, |kappa_tau| - |cos 2 xi| e^{-(pi sigma / dw)^2 / 2})`,
//! which is exactly `|kappa(tau)| - |kappa(tau/2)|`. It assumes the only
//! rise runs from the single minimum at `tau/2` to the endpoint; the sign
//! scan is the ground truth where that assumption fails.

use serde::Serialize;

use crate::dephasing::{abs_kappa, abs_kappa_dt, CUSP_THRESHOLD};
use crate::error::{Error, Result};
use crate::spectral::SpectralParams;
use crate::Tolerances;

/// What terminates a rising interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundaryKind {
    /// The scan domain edge (t = 0 or t = tau), not a feature of |kappa|.
    DomainEdge,
    /// A smooth zero of d|kappa|/dt.
    StationaryPoint,
    /// A zero of |kappa| itself; the derivative jumps sign here.
    Cusp,
}

/// One maximal interval on which |kappa| increases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub start: f64,
    pub end: f64,
    pub start_kind: BoundaryKind,
    pub end_kind: BoundaryKind,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.end - self.start
    }
}

/// Rising intervals of |kappa| over `[0, tau]`, sorted and disjoint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneIntervals {
    pub intervals: Vec<Interval>,
    pub tau: f64,
}

impl MonotoneIntervals {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// Result of the interval-based RHP sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RhpMeasure {
    Finite(f64),
    /// An interval starts at a cusp; the true sum diverges. The reported
    /// value clamps the starting modulus at the configured floor.
    Saturated { clamped: f64 },
}

impl RhpMeasure {
    pub fn value(&self) -> f64 {
        match self {
            RhpMeasure::Finite(v) => *v,
            RhpMeasure::Saturated { clamped } => *clamped,
        }
    }

    pub fn is_saturated(&self) -> bool {
        matches!(self, RhpMeasure::Saturated { .. })
    }
}

/// Critical mixing angles of the endpoint closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CriticalPoints {
    /// The sign changes at `xi_low` and `xi_high = pi/2 - xi_low`; the
    /// closed form is positive strictly between them.
    Transition { xi_low: f64, xi_high: f64, q: f64 },
    /// The closed form never becomes positive. Cannot occur strictly inside
    /// the validity window (there `q <= 1` always, approaching 1 only as
    /// sigma tends to 0); kept for the window edge where the denominator
    /// degenerates.
    NoTransition { q: f64 },
}

/// Scan points per beat period before any doubling.
const SCAN_PER_BEAT: f64 = 40.0;
/// Density doublings attempted while the interval count is unstable.
const MAX_DOUBLINGS: u32 = 6;
/// Nudge, as a fraction of the grid step, used to take a one-sided sign when
/// a grid node lands on a cusp.
const CUSP_NUDGE: f64 = 1e-3;

/// Sign of d|kappa|/dt at t, taking the one-sided value if t sits on a cusp.
/// `step` is the local grid spacing, `tau` the domain end.
fn rising_at(p: &SpectralParams, t: f64, step: f64, tau: f64) -> bool {
    match abs_kappa_dt(p, t) {
        Ok(d) => d > 0.0,
        Err(_) => {
            let nudged = if t + CUSP_NUDGE * step <= tau {
                t + CUSP_NUDGE * step
            } else {
                t - CUSP_NUDGE * step
            };
            matches!(abs_kappa_dt(p, nudged), Ok(d) if d > 0.0)
        }
    }
}

/// Bisect a sign change of d|kappa|/dt inside `[a, b]` down to `width_tol`,
/// classifying the refined boundary as a cusp or a smooth stationary point.
fn refine_boundary(
    p: &SpectralParams,
    mut a: f64,
    mut b: f64,
    rising_a: bool,
    width_tol: f64,
) -> (f64, BoundaryKind) {
    while b - a > width_tol {
        let mid = 0.5 * (a + b);
        match abs_kappa_dt(p, mid) {
            // Landing inside the cusp threshold pins the boundary outright.
            Err(_) => return (mid, BoundaryKind::Cusp),
            Ok(d) => {
                if (d > 0.0) == rising_a {
                    a = mid;
                } else {
                    b = mid;
                }
            }
        }
    }
    let t_b = 0.5 * (a + b);
    let slope_scale = {
        let da = abs_kappa_dt(p, a).map(f64::abs).unwrap_or(f64::INFINITY);
        let db = abs_kappa_dt(p, b).map(f64::abs).unwrap_or(f64::INFINITY);
        da.max(db)
    };
    // At a cusp |kappa| vanishes linearly, so its value at the refined
    // boundary is bounded by the local |d|kappa|/dt| times the bracket
    // width; at a smooth stationary point it stays order one.
    let kind = if abs_kappa(p, t_b) <= (4.0 * slope_scale * (b - a)).max(CUSP_THRESHOLD) {
        BoundaryKind::Cusp
    } else {
        BoundaryKind::StationaryPoint
    };
    (t_b, kind)
}

fn scan_at_density(
    p: &SpectralParams,
    tau: f64,
    n: usize,
    width_tol: f64,
) -> Vec<(f64, BoundaryKind, bool)> {
    let step = tau / n as f64;
    let rising: Vec<bool> = (0..=n)
        .map(|i| {
            let t = if i == n { tau } else { step * i as f64 };
            rising_at(p, t, step, tau)
        })
        .collect();
    let mut boundaries = Vec::new();
    for i in 0..n {
        if rising[i] != rising[i + 1] {
            let a = step * i as f64;
            let b = if i + 1 == n { tau } else { step * (i + 1) as f64 };
            let (t_b, kind) = refine_boundary(p, a, b, rising[i], width_tol);
            // The flag after the boundary is the complement of the flag before.
            boundaries.push((t_b, kind, rising[i + 1]));
        }
    }
    boundaries
}

/// Maximal rising intervals of `|kappa|` on `[0, tau]`.
///
/// The scan starts at `SCAN_PER_BEAT` nodes per beat period and doubles until
/// two successive densities agree on the interval count; boundaries are then
/// bisected to `root_abs * tau`. A nonpositive `tau` yields no intervals.
pub fn find_increasing_intervals(p: &SpectralParams, tau: f64, tol: &Tolerances) -> MonotoneIntervals {
    if !(tau > 0.0) || !tau.is_finite() {
        return MonotoneIntervals {
            intervals: Vec::new(),
            tau,
        };
    }
    let width_tol = tol.root_abs * tau;
    let base = ((SCAN_PER_BEAT * tau / p.beat_period()).ceil() as usize).max(16);

    let mut n = base;
    let mut boundaries = scan_at_density(p, tau, n, width_tol);
    for _ in 0..MAX_DOUBLINGS {
        let denser = scan_at_density(p, tau, n * 2, width_tol);
        let stable = denser.len() == boundaries.len();
        n *= 2;
        boundaries = denser;
        if stable {
            break;
        }
    }

    // Stitch alternating segments back together; a segment is rising when
    // the flag carried past its left boundary says so.
    let initially_rising = rising_at(p, 0.0, tau / n as f64, tau);
    let mut intervals = Vec::new();
    let mut cursor = 0.0;
    let mut cursor_kind = BoundaryKind::DomainEdge;
    let mut cursor_rising = initially_rising;
    for &(t_b, kind, rising_after) in &boundaries {
        if cursor_rising {
            intervals.push(Interval {
                start: cursor,
                end: t_b,
                start_kind: cursor_kind,
                end_kind: kind,
            });
        }
        cursor = t_b;
        cursor_kind = kind;
        cursor_rising = rising_after;
    }
    if cursor_rising {
        intervals.push(Interval {
            start: cursor,
            end: tau,
            start_kind: cursor_kind,
            end_kind: BoundaryKind::DomainEdge,
        });
    }
    MonotoneIntervals { intervals, tau }
}

/// Trace-distance based measure: total rise of `|kappa|` over `[0, tau]`.
/// Zero exactly when no rising interval exists.
pub fn blp(p: &SpectralParams, tau: f64, tol: &Tolerances) -> f64 {
    blp_from_intervals(p, &find_increasing_intervals(p, tau, tol))
}

/// The BLP sum over intervals that were already scanned; lets callers share
/// one scan between both measures.
pub fn blp_from_intervals(p: &SpectralParams, intervals: &MonotoneIntervals) -> f64 {
    // Folded from +0.0 rather than `.sum()`: the float Sum identity is -0.0,
    // which would leak a negative zero out for interval-free dynamics.
    intervals
        .intervals
        .iter()
        .map(|iv| abs_kappa(p, iv.end) - abs_kappa(p, iv.start))
        .fold(0.0, |acc, rise| acc + rise)
}

/// Unclamped endpoint expression `|kappa_tau| - |cos 2 xi| e^{-(pi sigma/dw)^2/2}`.
/// Negative values mean the closed form predicts no backflow. Shared by the
/// clamped measure and the critical-angle root finding.
pub(crate) fn closed_form_excess(p: &SpectralParams, tau: f64) -> Result<f64> {
    check_window(p, tau)?;
    let damping = (-0.5 * (std::f64::consts::PI * p.sigma() / p.delta_omega()).powi(2)).exp();
    Ok(abs_kappa(p, tau) - (2.0 * p.xi()).cos().abs() * damping)
}

fn check_window(p: &SpectralParams, tau: f64) -> Result<()> {
    let (lo, hi) = p.window();
    // Tiny relative slack so the exact window edges, recomputed by callers,
    // stay inside.
    if tau < lo * (1.0 - 1e-9) || tau > hi * (1.0 + 1e-9) {
        return Err(Error::OutsideWindow { tau, lo, hi });
    }
    Ok(())
}

/// Endpoint closed form of the BLP measure, valid for `tau` inside the beat
/// window `[pi, 2 pi] / (dw |dn|)`.
pub fn blp_closed_form(p: &SpectralParams, tau: f64) -> Result<f64> {
    Ok(closed_form_excess(p, tau)?.max(0.0))
}

/// Instantaneous backflow rate `h_t = max(0, d|kappa|/dt / |kappa|)`.
/// Errors with [`Error::Cusp`] where `|kappa|` vanishes.
pub fn h_t(p: &SpectralParams, t: f64) -> Result<f64> {
    let d = abs_kappa_dt(p, t)?;
    Ok((d / abs_kappa(p, t)).max(0.0))
}

/// Divergence-rate measure: sum of `ln` ratios of `|kappa|` over the rising
/// intervals. A cusp start makes the true sum infinite; the start modulus is
/// then clamped at `epsilon_floor` and the result flagged saturated.
pub fn rhp(p: &SpectralParams, tau: f64, tol: &Tolerances) -> RhpMeasure {
    rhp_from_intervals(p, &find_increasing_intervals(p, tau, tol), tol)
}

/// The RHP sum over intervals that were already scanned.
pub fn rhp_from_intervals(
    p: &SpectralParams,
    intervals: &MonotoneIntervals,
    tol: &Tolerances,
) -> RhpMeasure {
    let mut sum = 0.0;
    let mut saturated = false;
    for iv in &intervals.intervals {
        let start_abs = abs_kappa(p, iv.start);
        if iv.start_kind == BoundaryKind::Cusp || start_abs <= tol.epsilon_floor {
            saturated = true;
        }
        sum += abs_kappa(p, iv.end).ln() - start_abs.max(tol.epsilon_floor).ln();
    }
    if saturated {
        RhpMeasure::Saturated { clamped: sum }
    } else {
        RhpMeasure::Finite(sum)
    }
}

/// Critical-angle kernel for precomputed `u = e^{sigma^2 dn^2 tau^2}`,
/// `v = e^{(pi sigma / dw)^2}` and half phase `delta = dw dn tau / 2`:
///
/// ```text
/// q = sqrt(v) |cos delta| / sqrt(u - v sin^2 delta)
/// ```
///
/// and the closed form changes sign at `xi = arccos(+-q) / 2`.
fn critical_from_uvdelta(u: f64, v: f64, delta: f64) -> CriticalPoints {
    let den_sq = u - v * delta.sin().powi(2);
    if den_sq <= 0.0 {
        return CriticalPoints::NoTransition { q: f64::INFINITY };
    }
    let q = v.sqrt() * delta.cos().abs() / den_sq.sqrt();
    if q > 1.0 {
        CriticalPoints::NoTransition { q }
    } else {
        CriticalPoints::Transition {
            xi_low: 0.5 * q.acos(),
            xi_high: 0.5 * (-q).acos(),
            q,
        }
    }
}

/// Mixing angles where the endpoint closed form changes sign, for `tau`
/// inside the beat window. The pair is symmetric about `pi/4`.
pub fn critical_xi(p: &SpectralParams, tau: f64) -> Result<CriticalPoints> {
    check_window(p, tau)?;
    let u = (p.sigma() * p.delta_n() * tau).powi(2).exp();
    let v = (std::f64::consts::PI * p.sigma() / p.delta_omega()).powi(2).exp();
    let delta = 0.5 * p.delta_omega() * p.delta_n() * tau;
    Ok(critical_from_uvdelta(u, v, delta))
}
