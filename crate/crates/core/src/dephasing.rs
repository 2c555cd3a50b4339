// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Pure-dephasing dynamics of the polarization qubit.
//!
//! Tracing the environment photon's frequency out of the birefringent
//! interaction leaves the qubit populations fixed and multiplies the
//! coherence by the dephasing factor
//!
//! ```text
//! kappa_t = E(t) [ cos^2(xi) e^{i w1 dn t} + sin^2(xi) e^{i w2 dn t} ]
//! E(t)    = exp(-sigma^2 dn^2 t^2 / 2)
//! ```
//!
//! the characteristic function of the two-peaked density (positive phase
//! convention `e^{+i w dn t}`; all observables used downstream depend only on
//! `|kappa|` and `Re kappa`). The modulus obeys
//!
//! ```text
//! |kappa_t| = E(t) sqrt(1 - sin^2(2 xi) sin^2(dw dn t / 2))
//! ```
//!
//! so for the balanced mixture `xi = pi/4` it touches zero at odd multiples
//! of the beat period: cusps of `|kappa|`, where its time derivative jumps.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::SpectralParams;

/// Below this modulus a point is treated as a cusp of |kappa|. The exact
/// zeros exist only for xi = pi/4; floating-point evaluation lands within a
/// few 1e-14 of zero there.
pub const CUSP_THRESHOLD: f64 = 1e-13;

/// Dephasing factor `kappa_t`.
///
/// `kappa(p, 0) == 1 + 0i` exactly: the peak weights are built as
/// `(c2, 1 - c2)`, see [`SpectralParams::weights`]. Negative `t` is allowed
/// (useful for finite-difference checks); physical evolution uses `t >= 0`.
pub fn kappa(p: &SpectralParams, t: f64) -> Complex64 {
    let (c2, s2) = p.weights();
    let dn = p.delta_n();
    let envelope = (-0.5 * (p.sigma() * dn * t).powi(2)).exp();
    let ph1 = Complex64::cis(p.omega1() * dn * t);
    let ph2 = Complex64::cis(p.omega2() * dn * t);
    envelope * (c2 * ph1 + s2 * ph2)
}

/// Time derivative of the dephasing factor,
/// `dkappa/dt = E(t) sum_k w_k (-sigma^2 dn^2 t + i w_k dn) e^{i w_k dn t}`.
pub fn kappa_dot(p: &SpectralParams, t: f64) -> Complex64 {
    let (c2, s2) = p.weights();
    let dn = p.delta_n();
    let damp = -p.sigma().powi(2) * dn * dn * t;
    let envelope = (-0.5 * (p.sigma() * dn * t).powi(2)).exp();
    let term1 = Complex64::new(damp, p.omega1() * dn) * Complex64::cis(p.omega1() * dn * t);
    let term2 = Complex64::new(damp, p.omega2() * dn) * Complex64::cis(p.omega2() * dn * t);
    envelope * (c2 * term1 + s2 * term2)
}

/// Modulus `|kappa_t|`.
pub fn abs_kappa(p: &SpectralParams, t: f64) -> f64 {
    kappa(p, t).norm()
}

/// Derivative of the modulus, `d|kappa|/dt = Re(conj(kappa) kappa_dot) / |kappa|`.
///
/// Undefined where `|kappa| = 0`; such points are cusps and come back as
/// [`Error::Cusp`] so interval scans can treat them as boundaries.
pub fn abs_kappa_dt(p: &SpectralParams, t: f64) -> Result<f64> {
    let k = kappa(p, t);
    let n = k.norm();
    if n < CUSP_THRESHOLD {
        return Err(Error::Cusp {
            t,
            abs_kappa: n,
            threshold: CUSP_THRESHOLD,
        });
    }
    Ok((k.conj() * kappa_dot(p, t)).re / n)
}

/// Preparation angle of the pure polarization state
/// `cos(alpha) |V> + sin(alpha) |H>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PureStateAngle(f64);

impl PureStateAngle {
    /// Any finite angle is accepted; `[0, pi/2]` is the canonical range and
    /// everything downstream depends on it only through `sin(2 alpha)`.
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidParams(format!(
                "alpha must be finite, got {alpha}"
            )));
        }
        Ok(PureStateAngle(alpha))
    }

    pub fn radians(&self) -> f64 {
        self.0
    }
}

/// Qubit state in the `{|V>, |H>}` basis. Hermiticity is structural (only
/// one off-diagonal entry is stored); trace and positivity are validated on
/// construction to within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    rho_vv: f64,
    rho_hh: f64,
    rho_vh: Complex64,
}

const STATE_TOL: f64 = 1e-12;

impl DensityMatrix2 {
    pub fn new(rho_vv: f64, rho_hh: f64, rho_vh: Complex64) -> Result<Self> {
        if !rho_vv.is_finite() || !rho_hh.is_finite() || !rho_vh.is_finite() {
            return Err(Error::InvalidParams("density matrix entries must be finite".into()));
        }
        if rho_vv < -STATE_TOL || rho_hh < -STATE_TOL {
            return Err(Error::InvalidParams(format!(
                "populations must be nonnegative, got ({rho_vv}, {rho_hh})"
            )));
        }
        if ((rho_vv + rho_hh) - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidParams(format!(
                "trace must be 1, got {}",
                rho_vv + rho_hh
            )));
        }
        if rho_vv * rho_hh - rho_vh.norm_sqr() < -STATE_TOL {
            return Err(Error::InvalidParams(
                "positivity violated: |rho_vh|^2 > rho_vv rho_hh".into(),
            ));
        }
        Ok(DensityMatrix2 {
            rho_vv,
            rho_hh,
            rho_vh,
        })
    }

    pub fn rho_vv(&self) -> f64 {
        self.rho_vv
    }

    pub fn rho_hh(&self) -> f64 {
        self.rho_hh
    }

    pub fn rho_vh(&self) -> Complex64 {
        self.rho_vh
    }

    pub fn trace(&self) -> f64 {
        self.rho_vv + self.rho_hh
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let half_tr = 0.5 * self.trace();
        let r = (0.25 * (self.rho_vv - self.rho_hh).powi(2) + self.rho_vh.norm_sqr()).sqrt();
        (half_tr + r, half_tr - r)
    }

    /// Overlap `<psi_alpha| rho |psi_alpha>` with the pure state of angle
    /// `alpha`. This is the fidelity to that state since it is pure.
    pub fn expectation_pure(&self, alpha: PureStateAngle) -> f64 {
        let c = alpha.radians().cos();
        let s = alpha.radians().sin();
        c * c * self.rho_vv + s * s * self.rho_hh + 2.0 * c * s * self.rho_vh.re
    }
}

/// Projector onto `cos(alpha) |V> + sin(alpha) |H>`.
pub fn pure_state(alpha: PureStateAngle) -> DensityMatrix2 {
    let c = alpha.radians().cos();
    let s = alpha.radians().sin();
    let c2 = c * c;
    // 1 - c2 instead of s^2 keeps the trace exactly 1.
    DensityMatrix2 {
        rho_vv: c2,
        rho_hh: 1.0 - c2,
        rho_vh: Complex64::new(c * s, 0.0),
    }
}

/// Dephasing channel: populations are left untouched, the coherence picks up
/// the factor `kappa_t`. Trace is preserved bitwise.
pub fn evolve(rho0: &DensityMatrix2, p: &SpectralParams, t: f64) -> DensityMatrix2 {
    DensityMatrix2 {
        rho_vv: rho0.rho_vv,
        rho_hh: rho0.rho_hh,
        rho_vh: kappa(p, t) * rho0.rho_vh,
    }
}
