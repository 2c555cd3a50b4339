// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Two-peaked Gaussian frequency distribution of the environment photon.
//!
//! The density is
//!
//! ```text
//! f(w) = cos^2(xi) G(w; w1, sigma) + sin^2(xi) G(w; w2, sigma)
//! ```
//!
//! with `G` a normalized Gaussian. `xi` tilts the weight between the two
//! peaks; `xi = pi/4` is the balanced case. Frequencies are angular and
//! carried in rad/ps, times in ps, so `w * dn * t` is a plain radian phase.
//! `dn` is the refractive index difference the two polarization components
//! see in the birefringent medium.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{adaptive_simpson, min_depth_for_oscillations, QuadConfig};
use crate::Tolerances;

/// How many sigmas beyond the outer peaks the quadrature domain extends.
/// exp(-12^2/2) ~ 5e-32, far below every tolerance in the crate.
const DOMAIN_SIGMAS: f64 = 12.0;

/// Parameters of the two-peaked environment and the medium.
///
/// Constructed through [`SpectralParams::new`], which enforces
/// `omega2 > omega1`, `sigma > 0`, `delta_n != 0` and `xi` in `[0, pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralParams {
    omega1: f64,
    omega2: f64,
    sigma: f64,
    xi: f64,
    delta_n: f64,
}

impl SpectralParams {
    pub fn new(omega1: f64, omega2: f64, sigma: f64, xi: f64, delta_n: f64) -> Result<Self> {
        for (name, v) in [
            ("omega1", omega1),
            ("omega2", omega2),
            ("sigma", sigma),
            ("xi", xi),
            ("delta_n", delta_n),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be finite, got {v}")));
            }
        }
        if sigma <= 0.0 {
            return Err(Error::InvalidParams(format!("sigma must be > 0, got {sigma}")));
        }
        if omega2 <= omega1 {
            return Err(Error::InvalidParams(format!(
                "peak ordering requires omega2 > omega1, got {omega1} and {omega2}"
            )));
        }
        if delta_n == 0.0 {
            return Err(Error::InvalidParams("delta_n must be nonzero".into()));
        }
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&xi) {
            return Err(Error::InvalidParams(format!(
                "xi must lie in [0, pi/2], got {xi}"
            )));
        }
        Ok(SpectralParams {
            omega1,
            omega2,
            sigma,
            xi,
            delta_n,
        })
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    pub fn omega2(&self) -> f64 {
        self.omega2
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn delta_n(&self) -> f64 {
        self.delta_n
    }

    /// Same environment with the mixing angle replaced.
    pub fn with_xi(&self, xi: f64) -> Result<Self> {
        SpectralParams::new(self.omega1, self.omega2, self.sigma, xi, self.delta_n)
    }

    /// Peak separation `omega2 - omega1`.
    pub fn delta_omega(&self) -> f64 {
        self.omega2 - self.omega1
    }

    /// Midpoint between the peaks.
    pub fn mean_omega(&self) -> f64 {
        0.5 * (self.omega1 + self.omega2)
    }

    /// Peak weights `(cos^2 xi, sin^2 xi)`.
    ///
    /// The second weight is computed as `1 - cos^2 xi` so the pair sums to
    /// exactly 1.0 in floating point; this is what makes `kappa(0) == 1`
    /// exact rather than off by an ulp.
    pub fn weights(&self) -> (f64, f64) {
        let c2 = self.xi.cos().powi(2);
        (c2, 1.0 - c2)
    }

    /// Half period of the two-peak beat, `pi / (delta_omega |delta_n|)`.
    /// `|kappa|` reaches its deepest interference minimum here.
    pub fn beat_period(&self) -> f64 {
        std::f64::consts::PI / (self.delta_omega() * self.delta_n.abs())
    }

    /// Validity window of the endpoint closed forms: one beat period past the
    /// first minimum, `[pi, 2 pi] / (delta_omega |delta_n|)`.
    pub fn window(&self) -> (f64, f64) {
        let b = self.beat_period();
        (b, 2.0 * b)
    }

    /// Upper edge of [`SpectralParams::window`], the default drive time.
    pub fn window_end(&self) -> f64 {
        2.0 * self.beat_period()
    }

    /// Quadrature domain `[omega1 - 12 sigma, omega2 + 12 sigma]`.
    pub fn domain(&self) -> (f64, f64) {
        (
            self.omega1 - DOMAIN_SIGMAS * self.sigma,
            self.omega2 + DOMAIN_SIGMAS * self.sigma,
        )
    }
}

fn gaussian(omega: f64, center: f64, sigma: f64) -> f64 {
    let z = (omega - center) / sigma;
    (-0.5 * z * z).exp() / (sigma * (2.0 * std::f64::consts::PI).sqrt())
}

/// Density value `f(omega)`.
pub fn pdf(p: &SpectralParams, omega: f64) -> f64 {
    let (c2, s2) = p.weights();
    c2 * gaussian(omega, p.omega1, p.sigma) + s2 * gaussian(omega, p.omega2, p.sigma)
}

fn pdf_quad_config(p: &SpectralParams, phase_rate: f64, tol: &Tolerances) -> QuadConfig {
    let (lo, hi) = p.domain();
    let width = hi - lo;
    // Two forcing scales: the e^{i w phase_rate} oscillation and the peak
    // width itself, whichever demands the finer base grid.
    let osc = if phase_rate == 0.0 {
        0
    } else {
        min_depth_for_oscillations(
            width,
            2.0 * std::f64::consts::PI / phase_rate.abs(),
            10.0,
        )
    };
    let peaks = min_depth_for_oscillations(width, p.sigma, 4.0);
    QuadConfig {
        rel_tol: tol.quadrature_rel,
        abs_tol: tol.quadrature_rel,
        ..QuadConfig::default()
    }
    .with_min_depth(osc.max(peaks).max(2))
}

/// Quadrature of the density over its domain. Equals 1 up to the quadrature
/// tolerance for any valid parameters; kept as a runtime check rather than an
/// assumption.
pub fn integrate_pdf(p: &SpectralParams, tol: &Tolerances) -> Result<f64> {
    let (lo, hi) = p.domain();
    let cfg = pdf_quad_config(p, 0.0, tol);
    Ok(adaptive_simpson(|w| pdf(p, w), lo, hi, &cfg)?.value)
}

/// Characteristic function of an arbitrary density over `[lo, hi]`:
/// `integral g(w) e^{i w phase} dw`, evaluated as two real quadratures.
///
/// This is the oracle path: any callable density can be pushed through the
/// same machinery that `characteristic_numeric` uses for the two-peak model.
pub fn characteristic_from_density<F: Fn(f64) -> f64>(
    density: F,
    lo: f64,
    hi: f64,
    phase: f64,
    cfg: &QuadConfig,
) -> Result<Complex64> {
    let re = adaptive_simpson(|w| density(w) * (phase * w).cos(), lo, hi, cfg)?.value;
    let im = adaptive_simpson(|w| density(w) * (phase * w).sin(), lo, hi, cfg)?.value;
    Ok(Complex64::new(re, im))
}

/// Dephasing factor by direct quadrature of the density:
/// `integral f(w) e^{i w dn t} dw`.
///
/// Cross-validates the closed form in the dephasing module; the two share no
/// code beyond the density itself.
pub fn characteristic_numeric(p: &SpectralParams, t: f64, tol: &Tolerances) -> Result<Complex64> {
    let (lo, hi) = p.domain();
    let phase = p.delta_n * t;
    let cfg = pdf_quad_config(p, phase, tol);
    characteristic_from_density(|w| pdf(p, w), lo, hi, phase, &cfg)
}
