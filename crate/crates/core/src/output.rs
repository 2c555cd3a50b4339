// Copyright 2026 photon-qsl Contributors
// SPDX-License-Identifier: Apache-2.0

//! Serialization of sweep rows.
//!
//! CSV carries a fixed header and one row per working point, floats printed
//! with 17 significant digits so values round-trip bit-exactly; the first
//! column is named after the swept variable. JSON carries the same data as
//! column arrays plus a metadata object echoing the fully resolved
//! configuration, which makes the artifact self-describing.

use std::io::Write;

use serde_json::json;

use crate::config::{OutputFormat, RunConfig, TauSpec};
use crate::error::{Error, Result};
use crate::sweep::SweepRow;

/// Column names after the leading swept-variable column.
const FIXED_COLUMNS: [&str; 9] = [
    "tau1_ps",
    "tau2_ps",
    "tau_inf_ps",
    "tau_qsl_ps",
    "n_blp",
    "n_rhp",
    "rhp_saturated",
    "kappa_tau_abs",
    "bures_angle_rad",
];

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV document: header line plus one line per row, trailing newline.
pub fn csv_string(rows: &[SweepRow], variable_column: &str) -> String {
    let mut out = String::new();
    out.push_str(variable_column);
    for col in FIXED_COLUMNS {
        out.push(',');
        out.push_str(col);
    }
    out.push('\n');
    for row in rows {
        let fields = [
            fmt(row.variable),
            fmt(row.tau1_ps),
            fmt(row.tau2_ps),
            fmt(row.tau_inf_ps),
            fmt(row.tau_qsl_ps),
            fmt(row.n_blp),
            fmt(row.n_rhp),
            row.rhp_saturated.to_string(),
            fmt(row.kappa_tau_abs),
            fmt(row.bures_angle_rad),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn config_echo(cfg: &RunConfig, variable_column: &str) -> serde_json::Value {
    let mut echo = json!({
        "spectral.omega1_rad_per_ps": cfg.spectral.omega1(),
        "spectral.omega2_rad_per_ps": cfg.spectral.omega2(),
        "spectral.sigma_rad_per_ps": cfg.spectral.sigma(),
        "spectral.xi_rad": cfg.spectral.xi(),
        "spectral.delta_n": cfg.spectral.delta_n(),
        "alpha_rad": cfg.alpha.radians(),
        "tau_ps": cfg.resolved_tau(),
        "tau_spec": match cfg.tau {
            TauSpec::WindowEnd => "window-end".to_string(),
            TauSpec::Ps(t) => format!("{t}"),
        },
        "tolerances.quadrature_rel": cfg.tolerances.quadrature_rel,
        "tolerances.root_abs": cfg.tolerances.root_abs,
        "tolerances.epsilon_floor": cfg.tolerances.epsilon_floor,
        "variable_column": variable_column,
    });
    if let Some(sweep) = &cfg.sweep {
        let map = echo.as_object_mut().expect("echo is an object");
        map.insert("sweep.variable".into(), json!(sweep.variable.key()));
        map.insert("sweep.start".into(), json!(sweep.start));
        map.insert("sweep.stop".into(), json!(sweep.stop));
        map.insert("sweep.points".into(), json!(sweep.points));
    }
    echo
}

/// JSON document: `metadata` (tool, version, resolved config) and `columns`
/// (one array per CSV column, same order of rows).
pub fn json_string(rows: &[SweepRow], cfg: &RunConfig, variable_column: &str) -> String {
    let collect = |f: fn(&SweepRow) -> f64| rows.iter().map(f).collect::<Vec<_>>();
    let doc = json!({
        "metadata": {
            "tool": "photon-qsl",
            "version": env!("CARGO_PKG_VERSION"),
            "config": config_echo(cfg, variable_column),
        },
        "columns": {
            variable_column: collect(|r| r.variable),
            "tau1_ps": collect(|r| r.tau1_ps),
            "tau2_ps": collect(|r| r.tau2_ps),
            "tau_inf_ps": collect(|r| r.tau_inf_ps),
            "tau_qsl_ps": collect(|r| r.tau_qsl_ps),
            "n_blp": collect(|r| r.n_blp),
            "n_rhp": collect(|r| r.n_rhp),
            "rhp_saturated": rows.iter().map(|r| r.rhp_saturated).collect::<Vec<_>>(),
            "kappa_tau_abs": collect(|r| r.kappa_tau_abs),
            "bures_angle_rad": collect(|r| r.bures_angle_rad),
        },
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("static structure serializes");
    s.push('\n');
    s
}

/// Render `rows` in the configured format.
pub fn render(rows: &[SweepRow], cfg: &RunConfig, variable_column: &str) -> String {
    match cfg.format {
        OutputFormat::Csv => csv_string(rows, variable_column),
        OutputFormat::Json => json_string(rows, cfg, variable_column),
    }
}

/// Render and deliver: to the configured path when set, otherwise to `sink`
/// (the CLI passes stdout).
pub fn write_output<W: Write>(
    rows: &[SweepRow],
    cfg: &RunConfig,
    variable_column: &str,
    sink: &mut W,
) -> Result<()> {
    let body = render(rows, cfg, variable_column);
    match &cfg.output_path {
        Some(path) => std::fs::write(path, body).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => sink.write_all(body.as_bytes()).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ConfigDraft;
    use crate::sweep::run_point;

    fn sample_row() -> SweepRow {
        SweepRow {
            variable: std::f64::consts::FRAC_PI_4,
            tau1_ps: 0.031941096257524086,
            tau2_ps: 0.045171321156374,
            tau_inf_ps: 0.06388219251504817,
            tau_qsl_ps: 0.06388219251504817,
            n_blp: 0.7883368389709826,
            n_rhp: 28.9,
            rhp_saturated: true,
            kappa_tau_abs: 0.7789375825619012,
            bures_angle_rad: 0.7853981633974483,
        }
    }

    #[test]
    fn header_is_bit_exact() {
        let csv = csv_string(&[], "xi_rad");
        assert_eq!(
            csv,
            "xi_rad,tau1_ps,tau2_ps,tau_inf_ps,tau_qsl_ps,n_blp,n_rhp,rhp_saturated,kappa_tau_abs,bures_angle_rad\n"
        );
    }

    #[test]
    fn variable_column_is_renamed() {
        assert!(csv_string(&[], "alpha_rad").starts_with("alpha_rad,tau1_ps"));
        assert!(csv_string(&[], "tau_ps").starts_with("tau_ps,tau1_ps"));
    }

    #[test]
    fn one_row_gives_two_lines_and_round_trips() {
        let row = sample_row();
        let csv = csv_string(&[row], "xi_rad");
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields.len(), 10);
        assert_eq!(fields[7], "true");
        // 17 significant digits round-trip every f64 bit-exactly.
        assert_eq!(fields[0].parse::<f64>().unwrap(), row.variable);
        assert_eq!(fields[3].parse::<f64>().unwrap(), row.tau_inf_ps);
        assert_eq!(fields[9].parse::<f64>().unwrap(), row.bures_angle_rad);
    }

    #[test]
    fn csv_is_deterministic() {
        let rows = [sample_row(), sample_row()];
        assert_eq!(csv_string(&rows, "xi_rad"), csv_string(&rows, "xi_rad"));
    }

    #[test]
    fn json_embeds_the_resolved_config() {
        let cfg = crate::config::RunConfig::default_run();
        let s = json_string(&[sample_row()], &cfg, "xi_rad");
        let doc: serde_json::Value = serde_json::from_str(&s).unwrap();
        let config = &doc["metadata"]["config"];
        assert_eq!(config["spectral.omega1_rad_per_ps"].as_f64().unwrap(), 2676.0);
        assert_eq!(config["tau_ps"].as_f64().unwrap(), 39.269908169872416);
        assert_eq!(config["tau_spec"].as_str().unwrap(), "window-end");
        assert_eq!(doc["metadata"]["tool"].as_str().unwrap(), "photon-qsl");
        assert_eq!(
            doc["columns"]["kappa_tau_abs"][0].as_f64().unwrap(),
            sample_row().kappa_tau_abs
        );
        assert_eq!(doc["columns"]["rhp_saturated"][0].as_bool().unwrap(), true);
    }

    #[test]
    fn json_round_trips_bit_exactly() {
        let cfg = crate::config::RunConfig::default_run();
        let s = json_string(&[sample_row()], &cfg, "xi_rad");
        let doc: serde_json::Value = serde_json::from_str(&s).unwrap();
        let mut again = serde_json::to_string_pretty(&doc).unwrap();
        again.push('\n');
        assert_eq!(s, again);
    }

    #[test]
    fn json_echoes_sweep_sections() {
        let mut draft = ConfigDraft::default();
        draft
            .apply_text("sweep.variable = alpha\nsweep.start = 0\nsweep.stop = 1\nsweep.points = 3\n")
            .unwrap();
        let cfg = draft.finalize().unwrap();
        let s = json_string(&[], &cfg, "alpha_rad");
        let doc: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(doc["metadata"]["config"]["sweep.points"].as_u64().unwrap(), 3);
        assert_eq!(
            doc["metadata"]["config"]["sweep.variable"].as_str().unwrap(),
            "alpha"
        );
    }

    #[test]
    fn write_output_respects_path_and_reports_io_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("row.csv");
        let mut cfg = crate::config::RunConfig::default_run();
        cfg.output_path = Some(path.clone());
        let row = run_point(&cfg).unwrap();
        let mut devnull = Vec::new();
        write_output(&[row], &cfg, "xi_rad", &mut devnull).unwrap();
        assert!(devnull.is_empty());
        let body = std::fs::read_to_string(&path).unwrap();
        assert_eq!(body, csv_string(&[row], "xi_rad"));

        cfg.output_path = Some(dir.path().join("missing/sub/dir.csv"));
        let err = write_output(&[row], &cfg, "xi_rad", &mut devnull).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn stdout_sink_receives_the_body_when_no_path() {
        let cfg = crate::config::RunConfig::default_run();
        let row = sample_row();
        let mut sink = Vec::new();
        write_output(&[row], &cfg, "xi_rad", &mut sink).unwrap();
        assert_eq!(String::from_utf8(sink).unwrap(), csv_string(&[row], "xi_rad"));
    }
}
