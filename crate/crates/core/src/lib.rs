// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Quantum speed limits and information backflow for a polarization qubit
//! dephasing in a structured frequency environment.
//!
//! The physical setting is a single photon whose polarization couples to its
//! own frequency through a birefringent medium. The frequency distribution is
//! a pair of Gaussian peaks with tunable weights; tracing it out leaves the
//! polarization state evolving under pure dephasing with an analytically
//! known dephasing factor. On top of that factor the crate computes
//!
//! * evolution-time lower bounds from averaged generator norms
//!   ([`qsl::qsl_time`]), including the operator-norm bound that is tight
//!   for this channel,
//! * two non-Markovianity measures: distinguishability backflow summed over
//!   the rising intervals of the dephasing factor modulus ([`nonmarkov::blp`])
//!   and the divisibility-based rate integral ([`nonmarkov::rhp`]),
//! * the closed-form mixing angles where backflow switches on
//!   ([`nonmarkov::critical_xi`]).
//!
//! Everything downstream of the dephasing factor has at least two
//! independent computational routes (closed form against quadrature, analytic
//! derivative against finite differences); [`selfcheck::run_all`] exercises
//! those cross-checks on the default configuration.
//!
//! Frequencies are angular, in rad/ps; times are in ps.

pub mod config;
pub mod dephasing;
pub mod error;
pub mod nonmarkov;
pub mod output;
pub mod qsl;
pub mod quad;
pub mod selfcheck;
pub mod spectral;
pub mod sweep;

pub use config::{OutputFormat, RunConfig, SweepSpec, SweepVariable, TauSpec};
pub use dephasing::{DensityMatrix2, PureStateAngle};
pub use error::{Error, Result};
pub use nonmarkov::{CriticalPoints, MonotoneIntervals, RhpMeasure};
pub use qsl::{NormOrder, QslBounds};
pub use spectral::SpectralParams;
pub use sweep::{CriticalReport, SweepRow};

use serde::Serialize;

/// Numerical tolerances shared across quadrature, root finding, and the
/// divisibility measure. One value of this struct flows through a whole
/// computation so that results are reproducible from the configuration
/// alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative tolerance for adaptive quadrature.
    pub quadrature_rel: f64,
    /// Absolute tolerance for interval-boundary bisection, as a fraction of
    /// the drive time (the bisection stops at `root_abs * tau`).
    pub root_abs: f64,
    /// Floor for the dephasing-factor modulus in logarithmic rate ratios;
    /// ratios against smaller moduli are reported as saturated.
    pub epsilon_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { quadrature_rel: 1e-10, root_abs: 1e-12, epsilon_floor: 1e-13 }
    }
}
