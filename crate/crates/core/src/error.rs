// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Error type shared by every module in this crate.
//!
//! Variants group into three families so callers (the CLI in particular) can
//! map them to coarse outcomes: configuration and validation problems,
//! numerical failures, and I/O failures.

use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A physical or numerical parameter violates its domain.
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    /// Run configuration could not be parsed or is inconsistent.
    #[error("config: {0}")]
    Config(String),

    /// Adaptive quadrature hit its depth limit before meeting the tolerance.
    /// `achieved` is the accumulated error estimate it could reach.
    #[error("quadrature did not converge: error estimate {achieved:.3e}, requested {requested:.3e}")]
    QuadratureNonConvergence { achieved: f64, requested: f64 },

    /// A derivative or logarithm was requested at a zero of |kappa|.
    #[error("|kappa| = {abs_kappa:.3e} at t = {t} ps is below {threshold:.1e}; cusp, treat as an interval boundary")]
    Cusp {
        t: f64,
        abs_kappa: f64,
        threshold: f64,
    },

    /// A closed-form expression was evaluated outside its validity window.
    #[error("tau = {tau} ps is outside the closed-form validity window [{lo}, {hi}] ps")]
    OutsideWindow { tau: f64, lo: f64, hi: f64 },

    /// Other numerical domain problems (non-finite intermediate values and the like).
    #[error("numerical domain error: {0}")]
    NumericalDomain(String),

    /// Filesystem failure, tagged with the path involved.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A module error wrapped with the name of the quantity being computed.
    #[error("while computing {quantity}: {source}")]
    Quantity {
        quantity: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Attach the name of the quantity a lower-level error interrupted.
    pub fn while_computing(self, quantity: &'static str) -> Self {
        Error::Quantity {
            quantity,
            source: Box::new(self),
        }
    }

    /// Process exit code contract: 1 config/validation, 2 numerical, 3 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::InvalidParams(_) | Error::Config(_) => 1,
            Error::QuadratureNonConvergence { .. }
            | Error::Cusp { .. }
            | Error::OutsideWindow { .. }
            | Error::NumericalDomain(_) => 2,
            Error::Io { .. } => 3,
            Error::Quantity { source, .. } => source.exit_code(),
        }
    }
}
