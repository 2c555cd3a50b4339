// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Quantum speed limit times under the dephasing channel.
//!
//! The bound family is
//!
//! ```text
//! tau_p = sin^2(theta) / Gamma_p,   Gamma_p = (1/tau) integral_0^tau ||d rho_t / dt||_p dt
//! ```
//!
//! with `theta` the Bures angle between the initial pure state and the state
//! at the drive time, and `p` a Schatten order (trace, Hilbert-Schmidt,
//! operator). For pure dephasing the generator is off-diagonal,
//! `[[0, z], [conj(z), 0]]` with `z = kappa_dot rho_vh(0)`, whose two
//! singular values are both `|z|`. The three norms are then `2|z|`,
//! `sqrt(2)|z|` and `|z|`, all proportional to the same integrand, so the
//! bounds share one quadrature and obey
//! `tau_inf = 2 tau_1 = sqrt(2) tau_2` identically. The operator-norm bound
//! is the tightest of the family.

use num_complex::Complex64;

use crate::dephasing::{kappa, kappa_dot, DensityMatrix2, PureStateAngle};
use crate::error::{Error, Result};
use crate::quad::{adaptive_simpson, min_depth_for_oscillations, QuadConfig};
use crate::spectral::SpectralParams;
use crate::Tolerances;

/// Schatten order of the generator norm. The type is closed, so an
/// unsupported order cannot be expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormOrder {
    /// Trace norm, sum of singular values.
    One,
    /// Hilbert-Schmidt norm.
    Two,
    /// Operator norm, largest singular value.
    Inf,
}

/// Below this |sin(2 alpha)| the coherence vanishes and every bound is an
/// exact zero; flagged instead of dividing 0 by 0.
const DEGENERATE_SIN_2A: f64 = 1e-15;

/// Relative Hermiticity slack accepted by [`generator_norm`].
const HERMITICITY_TOL: f64 = 1e-12;

/// The three speed-limit bounds at a drive time, with their ingredients.
#[derive(Debug, Clone, Copy)]
pub struct QslBounds {
    /// Trace-norm bound in ps.
    pub tau1: f64,
    /// Hilbert-Schmidt bound in ps.
    pub tau2: f64,
    /// Operator-norm bound in ps; the largest of the three.
    pub tau_inf: f64,
    /// `max(tau1, tau2, tau_inf)`, the quantity plotted against mixing angle.
    pub tau_qsl: f64,
    /// Bures angle between the initial and final state, rad.
    pub bures_angle: f64,
    /// The drive time tau the bounds refer to, ps.
    pub drive_time: f64,
    /// True when `alpha` carries no coherence and the bounds are trivially 0.
    pub degenerate: bool,
}

/// Singular values of a complex 2x2 matrix, descending.
///
/// Closed form from the eigenvalues of `M^dagger M`; no external linear
/// algebra involved so this can serve as one side of oracle comparisons.
pub fn singular_values_2x2(m: &[[Complex64; 2]; 2]) -> (f64, f64) {
    let a = m[0][0].norm_sqr() + m[1][0].norm_sqr();
    let b = m[0][1].norm_sqr() + m[1][1].norm_sqr();
    let c = m[0][0].conj() * m[0][1] + m[1][0].conj() * m[1][1];
    let half_sum = 0.5 * (a + b);
    let r = (0.25 * (a - b).powi(2) + c.norm_sqr()).sqrt();
    let hi = (half_sum + r).max(0.0).sqrt();
    let lo = (half_sum - r).max(0.0).sqrt();
    (hi, lo)
}

/// Schatten norm of a Hermitian 2x2 matrix.
///
/// Errors if the matrix is not Hermitian within a relative 1e-12; the norms
/// below are only quoted for the Hermitian generator.
pub fn generator_norm(m: &[[Complex64; 2]; 2], order: NormOrder) -> Result<f64> {
    let scale = m
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max)
        .max(1.0);
    let violation = (m[0][1] - m[1][0].conj()).norm().max(m[0][0].im.abs()).max(m[1][1].im.abs());
    if violation > HERMITICITY_TOL * scale {
        return Err(Error::InvalidParams(format!(
            "generator_norm requires a Hermitian matrix, violation {violation:.3e} at scale {scale:.3e}"
        )));
    }
    let (s1, s2) = singular_values_2x2(m);
    Ok(match order {
        NormOrder::One => s1 + s2,
        NormOrder::Two => (s1 * s1 + s2 * s2).sqrt(),
        NormOrder::Inf => s1,
    })
}

/// Instantaneous generator `d rho_t / dt` of the dephasing channel for an
/// initial coherence `rho_vh0`: zero diagonal, off-diagonal `kappa_dot rho_vh0`.
pub fn dephasing_generator(kdot: Complex64, rho_vh0: Complex64) -> [[Complex64; 2]; 2] {
    let z = kdot * rho_vh0;
    [
        [Complex64::new(0.0, 0.0), z],
        [z.conj(), Complex64::new(0.0, 0.0)],
    ]
}

fn clamp_fidelity(f: f64) -> f64 {
    f.clamp(0.0, 1.0)
}

/// Bures angle from the dephasing factor:
/// `theta = arccos sqrt(1 - (1 - Re kappa_tau) sin^2(2 alpha) / 2)`.
pub fn bures_angle(alpha: PureStateAngle, kappa_tau: Complex64) -> f64 {
    let s2a = (2.0 * alpha.radians()).sin();
    let fidelity = 1.0 - 0.5 * (1.0 - kappa_tau.re) * s2a * s2a;
    clamp_fidelity(fidelity).sqrt().acos()
}

/// Bures angle from the evolved state itself,
/// `theta = arccos sqrt(<psi_0| rho_tau |psi_0>)`.
///
/// Independent route kept deliberately separate from [`bures_angle`]; the two
/// must agree to near machine precision and the tests hold them to it.
pub fn bures_angle_direct(alpha: PureStateAngle, rho_tau: &DensityMatrix2) -> f64 {
    clamp_fidelity(rho_tau.expectation_pure(alpha)).sqrt().acos()
}

/// `integral_0^tau |kappa_dot| dt` by adaptive Simpson with the base grid
/// forced fine enough for the optical-scale phase `mean_omega * dn`.
pub fn integral_abs_kappa_dot(p: &SpectralParams, tau: f64, tol: &Tolerances) -> Result<f64> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidParams(format!("tau must be > 0, got {tau}")));
    }
    let period = 2.0 * std::f64::consts::PI / (p.mean_omega() * p.delta_n().abs());
    let cfg = QuadConfig {
        rel_tol: tol.quadrature_rel,
        abs_tol: tol.quadrature_rel,
        ..QuadConfig::default()
    }
    .with_min_depth(min_depth_for_oscillations(tau, period, 20.0).max(2));
    Ok(adaptive_simpson(|t| kappa_dot(p, t).norm(), 0.0, tau, &cfg)?.value)
}

fn norm_prefactor(order: NormOrder) -> f64 {
    match order {
        NormOrder::One => 2.0,
        NormOrder::Two => std::f64::consts::SQRT_2,
        NormOrder::Inf => 1.0,
    }
}

/// Time-averaged generator norm `Gamma_p` for the initial pure state of
/// angle `alpha`. All three orders reuse the same quadrature value and differ
/// by the exact prefactor `{2, sqrt(2), 1}`.
pub fn gamma_p(
    p: &SpectralParams,
    alpha: PureStateAngle,
    tau: f64,
    order: NormOrder,
    tol: &Tolerances,
) -> Result<f64> {
    let s2a = (2.0 * alpha.radians()).sin();
    if s2a.abs() < DEGENERATE_SIN_2A {
        return Ok(0.0);
    }
    let integral = integral_abs_kappa_dot(p, tau, tol)?;
    // Prefactor applied last so the three orders are exact multiples of one
    // shared base value, not merely equal to rounding.
    Ok(norm_prefactor(order) * (0.5 * s2a.abs() * integral / tau))
}

/// All three bounds at drive time `tau`.
///
/// For `alpha` in `{0, pi/2}` (no coherence, nothing evolves) the bounds are
/// exactly zero and `degenerate` is set; this is a valid result, not an error.
pub fn qsl_time(
    p: &SpectralParams,
    alpha: PureStateAngle,
    tau: f64,
    tol: &Tolerances,
) -> Result<QslBounds> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidParams(format!("tau must be > 0, got {tau}")));
    }
    let s2a = (2.0 * alpha.radians()).sin();
    if s2a.abs() < DEGENERATE_SIN_2A {
        return Ok(QslBounds {
            tau1: 0.0,
            tau2: 0.0,
            tau_inf: 0.0,
            tau_qsl: 0.0,
            bures_angle: 0.0,
            drive_time: tau,
            degenerate: true,
        });
    }

    let theta = bures_angle(alpha, kappa(p, tau));
    let sin_theta_sq = theta.sin().powi(2);
    let integral = integral_abs_kappa_dot(p, tau, tol)?;
    let gamma_inf = 0.5 * s2a.abs() * integral / tau;
    let tau_inf = sin_theta_sq / gamma_inf;
    let tau1 = sin_theta_sq / (2.0 * gamma_inf);
    let tau2 = sin_theta_sq / (std::f64::consts::SQRT_2 * gamma_inf);
    Ok(QslBounds {
        tau1,
        tau2,
        tau_inf,
        tau_qsl: tau_inf.max(tau2).max(tau1),
        bures_angle: theta,
        drive_time: tau,
        degenerate: false,
    })
}
