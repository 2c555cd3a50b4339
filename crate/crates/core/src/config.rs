// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: a flat `key = value` file with namespaced keys, plus
//! `key=value` command-line overrides applied on top. Unknown keys are
//! errors. Full-line comments start with `#`.
//!
//! ```text
//! spectral.omega1_rad_per_ps = 2676.0
//! spectral.omega2_rad_per_ps = 2692.0
//! spectral.sigma_rad_per_ps  = 1.8
//! spectral.xi_rad            = 0.7853981633974483
//! spectral.delta_n           = 0.01
//! alpha_rad                  = 0.7853981633974483
//! tau_ps                     = window-end
//! sweep.variable             = xi
//! sweep.start                = 0.0
//! sweep.stop                 = 1.5707963267948966
//! sweep.points               = 201
//! tolerances.quadrature_rel  = 1e-10
//! tolerances.root_abs        = 1e-12
//! tolerances.epsilon_floor   = 1e-13
//! output.format              = csv
//! output.path                = sweep.csv
//! ```

use std::path::{Path, PathBuf};

use crate::dephasing::PureStateAngle;
use crate::error::{Error, Result};
use crate::spectral::SpectralParams;
use crate::Tolerances;

/// Drive time: an explicit duration or the upper edge of the beat window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TauSpec {
    WindowEnd,
    Ps(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Xi,
    Alpha,
    Tau,
}

impl SweepVariable {
    /// CSV column name for the swept quantity.
    pub fn column_name(&self) -> &'static str {
        match self {
            SweepVariable::Xi => "xi_rad",
            SweepVariable::Alpha => "alpha_rad",
            SweepVariable::Tau => "tau_ps",
        }
    }

    pub fn key(&self) -> &'static str {
        match self {
            SweepVariable::Xi => "xi",
            SweepVariable::Alpha => "alpha",
            SweepVariable::Tau => "tau",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SweepSpec {
    /// Inclusive linear grid. Both endpoints are emitted exactly as given,
    /// which keeps swept angles inside their validated domain.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|k| {
                if k == n - 1 {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * k as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Fully validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub spectral: SpectralParams,
    pub alpha: PureStateAngle,
    pub tau: TauSpec,
    pub sweep: Option<SweepSpec>,
    pub tolerances: Tolerances,
    pub format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    /// The drive time in ps after resolving `window-end`.
    pub fn resolved_tau(&self) -> f64 {
        match self.tau {
            TauSpec::WindowEnd => self.spectral.window_end(),
            TauSpec::Ps(t) => t,
        }
    }

    /// Defaults: the two-peak environment at 2676 and 2692 rad/ps with
    /// sigma 1.8, dn 0.01, balanced angles, drive time at the window end.
    pub fn default_run() -> Self {
        ConfigDraft::default().finalize().expect("defaults are valid")
    }

    /// Load `path` (when given) and apply `key=value` overrides in order.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let mut draft = ConfigDraft::default();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })?;
            draft.apply_text(&text)?;
        }
        for assignment in overrides {
            draft.apply_assignment(assignment)?;
        }
        draft.finalize()
    }
}

/// Mutable accumulation of settings before validation.
#[derive(Debug, Clone)]
pub struct ConfigDraft {
    omega1: f64,
    omega2: f64,
    sigma: f64,
    xi: f64,
    delta_n: f64,
    alpha: f64,
    tau: TauSpec,
    sweep_variable: Option<SweepVariable>,
    sweep_start: Option<f64>,
    sweep_stop: Option<f64>,
    sweep_points: Option<usize>,
    quadrature_rel: f64,
    root_abs: f64,
    epsilon_floor: f64,
    format: OutputFormat,
    output_path: Option<PathBuf>,
}

impl Default for ConfigDraft {
    fn default() -> Self {
        let t = Tolerances::default();
        ConfigDraft {
            omega1: 2676.0,
            omega2: 2692.0,
            sigma: 1.8,
            xi: std::f64::consts::FRAC_PI_4,
            delta_n: 0.01,
            alpha: std::f64::consts::FRAC_PI_4,
            tau: TauSpec::WindowEnd,
            sweep_variable: None,
            sweep_start: None,
            sweep_stop: None,
            sweep_points: None,
            quadrature_rel: t.quadrature_rel,
            root_abs: t.root_abs,
            epsilon_floor: t.epsilon_floor,
            format: OutputFormat::Csv,
            output_path: None,
        }
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("{key}: expected a number, got {value:?}")))
}

impl ConfigDraft {
    /// Apply a whole config file body.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            self.apply_assignment(line).map_err(|e| match e {
                Error::Config(msg) => Error::Config(format!("line {}: {msg}", lineno + 1)),
                other => other,
            })?;
        }
        Ok(())
    }

    /// Apply one `key = value` assignment.
    pub fn apply_assignment(&mut self, assignment: &str) -> Result<()> {
        let Some((key, value)) = assignment.split_once('=') else {
            return Err(Error::Config(format!(
                "expected key = value, got {assignment:?}"
            )));
        };
        self.set(key.trim(), value.trim())
    }

    /// Set a single key. Unknown keys are configuration errors.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "spectral.omega1_rad_per_ps" => self.omega1 = parse_f64(key, value)?,
            "spectral.omega2_rad_per_ps" => self.omega2 = parse_f64(key, value)?,
            "spectral.sigma_rad_per_ps" => self.sigma = parse_f64(key, value)?,
            "spectral.xi_rad" => self.xi = parse_f64(key, value)?,
            "spectral.delta_n" => self.delta_n = parse_f64(key, value)?,
            "alpha_rad" => self.alpha = parse_f64(key, value)?,
            "tau_ps" => {
                self.tau = if value == "window-end" {
                    TauSpec::WindowEnd
                } else {
                    TauSpec::Ps(parse_f64(key, value)?)
                }
            }
            "sweep.variable" => {
                self.sweep_variable = Some(match value {
                    "xi" => SweepVariable::Xi,
                    "alpha" => SweepVariable::Alpha,
                    "tau" => SweepVariable::Tau,
                    other => {
                        return Err(Error::Config(format!(
                            "sweep.variable must be xi, alpha or tau, got {other:?}"
                        )))
                    }
                })
            }
            "sweep.start" => self.sweep_start = Some(parse_f64(key, value)?),
            "sweep.stop" => self.sweep_stop = Some(parse_f64(key, value)?),
            "sweep.points" => {
                self.sweep_points = Some(value.parse::<usize>().map_err(|_| {
                    Error::Config(format!("sweep.points: expected an integer, got {value:?}"))
                })?)
            }
            "tolerances.quadrature_rel" => self.quadrature_rel = parse_f64(key, value)?,
            "tolerances.root_abs" => self.root_abs = parse_f64(key, value)?,
            "tolerances.epsilon_floor" => self.epsilon_floor = parse_f64(key, value)?,
            "output.format" => {
                self.format = match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    other => {
                        return Err(Error::Config(format!(
                            "output.format must be csv or json, got {other:?}"
                        )))
                    }
                }
            }
            "output.path" => self.output_path = Some(PathBuf::from(value)),
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    fn finalize_sweep(&self) -> Result<Option<SweepSpec>> {
        let parts = [
            self.sweep_variable.is_some(),
            self.sweep_start.is_some(),
            self.sweep_stop.is_some(),
            self.sweep_points.is_some(),
        ];
        if parts.iter().all(|p| !p) {
            return Ok(None);
        }
        if !parts.iter().all(|p| *p) {
            return Err(Error::Config(
                "sweep requires all of sweep.variable, sweep.start, sweep.stop, sweep.points".into(),
            ));
        }
        let spec = SweepSpec {
            variable: self.sweep_variable.unwrap(),
            start: self.sweep_start.unwrap(),
            stop: self.sweep_stop.unwrap(),
            points: self.sweep_points.unwrap(),
        };
        if spec.points < 2 {
            return Err(Error::Config(format!(
                "sweep.points must be at least 2, got {}",
                spec.points
            )));
        }
        if !spec.start.is_finite() || !spec.stop.is_finite() || spec.start > spec.stop {
            return Err(Error::Config(format!(
                "sweep range must be finite with start <= stop, got [{}, {}]",
                spec.start, spec.stop
            )));
        }
        let (lo, hi, what) = match spec.variable {
            SweepVariable::Xi => (0.0, std::f64::consts::FRAC_PI_2, "xi in [0, pi/2]"),
            SweepVariable::Alpha => (0.0, std::f64::consts::FRAC_PI_2, "alpha in [0, pi/2]"),
            SweepVariable::Tau => (f64::MIN_POSITIVE, f64::INFINITY, "tau > 0"),
        };
        if spec.start < lo || spec.stop > hi {
            return Err(Error::Config(format!(
                "sweep range [{}, {}] outside the variable's domain ({what})",
                spec.start, spec.stop
            )));
        }
        Ok(Some(spec))
    }

    /// Validate everything and produce the immutable [`RunConfig`].
    pub fn finalize(self) -> Result<RunConfig> {
        let spectral = SpectralParams::new(self.omega1, self.omega2, self.sigma, self.xi, self.delta_n)?;
        let alpha = PureStateAngle::new(self.alpha)?;
        if let TauSpec::Ps(t) = self.tau {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Config(format!("tau_ps must be > 0, got {t}")));
            }
        }
        for (name, v) in [
            ("tolerances.quadrature_rel", self.quadrature_rel),
            ("tolerances.root_abs", self.root_abs),
            ("tolerances.epsilon_floor", self.epsilon_floor),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("{name} must be > 0, got {v}")));
            }
        }
        let sweep = self.finalize_sweep()?;
        Ok(RunConfig {
            spectral,
            alpha,
            tau: self.tau,
            sweep,
            tolerances: Tolerances {
                quadrature_rel: self.quadrature_rel,
                root_abs: self.root_abs,
                epsilon_floor: self.epsilon_floor,
            },
            format: self.format,
            output_path: self.output_path,
        })
    }
}
