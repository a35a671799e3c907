use std::path::{Path, PathBuf};

use thiserror::Error;

use super::config::{ConfigError, EvolutionMethod, FamilyKind, ScenarioConfig, ScenarioKind};
use super::output::{csv_document, svg_plot, Series};
use crate::evolution::{
    asymptotic_error_bound, asymptotic_form, propagate_spectral_many, short_time_approx,
    short_time_error_bound, sup_density_of_difference,
};
use crate::numerics::{to_momentum, ComplexField, Grid};
use crate::observables::{moments, spread_law_from_state, spread_prediction, PacketMoments};
use crate::packets::{
    galilean_boost, Chi, DerivativePacket, GaussianFamily, HermiteGauss, Packet, SquareFamily,
    SquarePacket,
};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Numerical(#[from] crate::Error),
    #[error("warnings escalated by strict mode:\n  {}", .0.join("\n  "))]
    Strict(Vec<String>),
}

impl RunError {
    /// 1 config, 2 runtime/numerical, 3 strict-mode escalation.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 1,
            RunError::Io { .. } | RunError::Numerical(_) => 2,
            RunError::Strict(_) => 3,
        }
    }
}

/// One summary line per time slice.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub t: f64,
    pub moments: PacketMoments,
    pub predicted_delta_x: f64,
    pub short_time_bound: f64,
    pub asymptotic_bound: f64,
    /// `sup|ψ − short-time form|²`; bounds scenario only.
    pub short_time_error: Option<f64>,
    /// `sup|ψ − asymptotic form|²`; bounds scenario only.
    pub asymptotic_error: Option<f64>,
}

#[derive(Debug)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    pub warnings: Vec<String>,
    pub rows: Vec<SummaryRow>,
    pub slices: Vec<ComplexField>,
}

fn build_packet(cfg: &ScenarioConfig) -> crate::Result<Box<dyn Packet + Send + Sync>> {
    let gaussian = || GaussianFamily::new(cfg.physics, cfg.tau);
    let base: Box<dyn Packet + Send + Sync> = match cfg.family {
        FamilyKind::Gaussian => Box::new(Chi(gaussian()?)),
        FamilyKind::HermiteGauss => Box::new(HermiteGauss::new(gaussian()?, cfg.order)?),
        FamilyKind::Derivative => Box::new(DerivativePacket::new(gaussian()?, cfg.order)?),
        FamilyKind::Square => Box::new(SquarePacket(SquareFamily::new(cfg.physics, cfg.width)?)),
    };
    Ok(if cfg.boost != 0.0 {
        Box::new(galilean_boost(base, cfg.boost, 0.0, cfg.physics))
    } else {
        base
    })
}

/// Time unit of the family: `τ`, or `ma²/ħ` for the square packet.
pub fn time_unit(cfg: &ScenarioConfig) -> f64 {
    match cfg.family {
        FamilyKind::Square => cfg.physics.mass() * cfg.width * cfg.width / cfg.physics.hbar(),
        _ => cfg.tau,
    }
}

fn unavailable() -> PacketMoments {
    PacketMoments {
        mean_x: f64::NAN,
        mean_p: f64::NAN,
        delta_x: f64::INFINITY,
        delta_p: f64::INFINITY,
        mean_r: f64::NAN,
    }
}

fn initial_moments(cfg: &ScenarioConfig, psi0: &ComplexField) -> crate::Result<PacketMoments> {
    if cfg.family == FamilyKind::Square {
        return Ok(PacketMoments {
            mean_x: 0.0,
            mean_p: cfg.boost,
            delta_x: cfg.width / 12f64.sqrt(),
            delta_p: f64::INFINITY,
            mean_r: 0.0,
        });
    }
    moments(psi0, &cfg.physics)
}

/// Density in the outer tenth of the domain relative to the peak.
fn edge_fraction(f: &ComplexField) -> f64 {
    let rho = f.densities();
    let peak = rho.iter().cloned().fold(0.0, f64::max);
    let n = rho.len();
    let band = n / 20;
    let edge = rho[..band]
        .iter()
        .chain(&rho[n - band..])
        .cloned()
        .fold(0.0, f64::max);
    if peak > 0.0 {
        edge / peak
    } else {
        0.0
    }
}

/// Pre-flight warnings that do not depend on the evolution.
pub fn sizing_warnings(cfg: &ScenarioConfig) -> Result<Vec<String>, RunError> {
    let grid = Grid::centered(cfg.half_width, cfg.grid_n)?;
    let packet = build_packet(cfg)?;
    let psi0 = packet.sample(&grid, 0.0);
    let m0 = match initial_moments(cfg, &psi0) {
        Err(crate::Error::Unnormalized(norm2)) => {
            return Ok(vec![format!(
                "grid half-width {} truncates the initial packet (norm² on grid = {norm2})",
                cfg.half_width
            )]);
        }
        other => other?,
    };
    let mut warnings = Vec::new();
    if m0.delta_x.is_infinite() {
        warnings.push(format!(
            "grid half-width {} is too small to resolve the initial Δx",
            cfg.half_width
        ));
    } else if !(cfg.half_width >= 10.0 * m0.delta_x) {
        warnings.push(format!(
            "grid half-width {} is less than 10 × initial Δx = {}",
            cfg.half_width,
            10.0 * m0.delta_x
        ));
    }
    Ok(warnings)
}

/// Computes every slice and summary row without touching the filesystem.
pub fn compute_scenario(cfg: &ScenarioConfig) -> Result<RunReport, RunError> {
    let mut warnings = sizing_warnings(cfg)?;
    let params = cfg.physics;
    let grid = Grid::centered(cfg.half_width, cfg.grid_n)?;
    let packet = build_packet(cfg)?;
    let unit = time_unit(cfg);
    let times: Vec<f64> = cfg.times.iter().map(|t| t * unit).collect();

    let psi0 = packet.sample(&grid, 0.0);
    let m0 = initial_moments(cfg, &psi0)?;
    let law = spread_law_from_state(&m0, &params, 0.0).ok();

    let slices: Vec<ComplexField> = match cfg.method {
        EvolutionMethod::Exact => times.iter().map(|&t| packet.sample(&grid, t)).collect(),
        EvolutionMethod::Spectral => propagate_spectral_many(&psi0, &times, &params)
            .into_iter()
            .map(|r| r.map(|r| r.field))
            .collect::<crate::Result<_>>()?,
    };

    let phi0 = if cfg.scenario == ScenarioKind::Bounds {
        Some(to_momentum(&psi0, &params)?)
    } else {
        None
    };

    let mut rows = Vec::with_capacity(times.len());
    for (&t, field) in times.iter().zip(&slices) {
        if cfg.method == EvolutionMethod::Spectral && edge_fraction(field) > 1e-8 {
            warnings.push(format!(
                "t = {t}: packet reaches the grid edges; spectral evolution wraps around"
            ));
        }
        let m = if cfg.family == FamilyKind::Square && t != 0.0 {
            unavailable()
        } else if cfg.family == FamilyKind::Square {
            m0
        } else {
            moments(field, &params)?
        };
        let predicted = law.map_or(f64::NAN, |l| spread_prediction(&l, &params, t));
        let st_bound = short_time_error_bound(m0.delta_p, t.abs(), &params).unwrap_or(f64::NAN);
        let as_bound = if t == 0.0 {
            f64::NAN
        } else {
            asymptotic_error_bound(m0.delta_x, t.abs(), &params).unwrap_or(f64::NAN)
        };
        let (st_err, as_err) = match &phi0 {
            Some(phi0) if t > 0.0 => {
                let st = short_time_approx(&psi0, t, &params, m0.mean_p)?;
                let asy = asymptotic_form(phi0, m0.mean_x, t, &params)?;
                (
                    Some(sup_density_of_difference(field, &st.field)),
                    Some(sup_density_of_difference(field, &asy.field)),
                )
            }
            Some(_) => (Some(f64::NAN), Some(f64::NAN)),
            None => (None, None),
        };
        rows.push(SummaryRow {
            t,
            moments: m,
            predicted_delta_x: predicted,
            short_time_bound: st_bound,
            asymptotic_bound: as_bound,
            short_time_error: st_err,
            asymptotic_error: as_err,
        });
    }

    Ok(RunReport {
        files: Vec::new(),
        warnings,
        rows,
        slices,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), RunError> {
    std::fs::write(path, contents).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn slice_rows(cfg: &ScenarioConfig, t: f64, field: &ComplexField) -> Vec<Vec<f64>> {
    let xs = field.grid().positions();
    xs.iter()
        .zip(field.values())
        .map(|(&x, v)| {
            let d = v.norm_sqr();
            let mut row = vec![x, v.re, v.im, d];
            if cfg.scenario.rescaled_columns() {
                if t == 0.0 {
                    row.extend([f64::NAN, f64::NAN]);
                } else {
                    row.extend([x / t, t * d]);
                }
            }
            row
        })
        .collect()
}

fn summary_document(cfg: &ScenarioConfig, rows: &[SummaryRow]) -> String {
    let mut header = vec![
        "t",
        "delta_x",
        "delta_p",
        "mean_x",
        "mean_p",
        "mean_r",
        "predicted_delta_x",
        "short_time_bound",
        "asymptotic_bound",
    ];
    let spread = cfg.scenario == ScenarioKind::SpreadLaw;
    let bounds = cfg.scenario == ScenarioKind::Bounds;
    if spread {
        header.push("relative_gap");
    }
    if bounds {
        header.extend(["short_time_error", "asymptotic_error"]);
    }
    let body: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            let m = &r.moments;
            let mut row = vec![
                r.t,
                m.delta_x,
                m.delta_p,
                m.mean_x,
                m.mean_p,
                m.mean_r,
                r.predicted_delta_x,
                r.short_time_bound,
                r.asymptotic_bound,
            ];
            if spread {
                row.push((m.delta_x - r.predicted_delta_x).abs() / r.predicted_delta_x);
            }
            if bounds {
                row.push(r.short_time_error.unwrap_or(f64::NAN));
                row.push(r.asymptotic_error.unwrap_or(f64::NAN));
            }
            row
        })
        .collect();
    csv_document(&header, &body)
}

fn plot(cfg: &ScenarioConfig, report: &RunReport) -> String {
    let rescaled = cfg.scenario.rescaled_columns();
    let series: Vec<Series> = report
        .rows
        .iter()
        .zip(&report.slices)
        .map(|(row, field)| {
            let t = row.t;
            let points = field
                .grid()
                .positions()
                .into_iter()
                .zip(field.densities())
                .map(|(x, d)| {
                    if rescaled && t != 0.0 {
                        (x / t, t * d)
                    } else {
                        (x, d)
                    }
                })
                .collect();
            Series {
                label: format!("t = {t}"),
                points,
            }
        })
        .collect();
    let (xl, yl) = if rescaled {
        ("x/t", "t·|ψ|²")
    } else {
        ("x", "|ψ|²")
    };
    svg_plot(
        &format!("{} ({} packet)", cfg.scenario.name(), cfg.family.name()),
        xl,
        yl,
        &series,
    )
}

/// Runs a scenario and writes its CSV/SVG files into `cfg.out_dir`.
///
/// Slice files are `<scenario>_t<index>.csv`, the summary is
/// `<scenario>_summary.csv`, the plot `<scenario>_density.svg`.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunReport, RunError> {
    if cfg.strict {
        let pre = sizing_warnings(cfg)?;
        if !pre.is_empty() {
            return Err(RunError::Strict(pre));
        }
    }
    let mut report = compute_scenario(cfg)?;
    std::fs::create_dir_all(&cfg.out_dir).map_err(|source| RunError::Io {
        path: cfg.out_dir.clone(),
        source,
    })?;
    let name = cfg.scenario.name();
    let mut files = Vec::new();
    if cfg.formats.csv {
        let mut header = vec!["x", "re_psi", "im_psi", "density"];
        if cfg.scenario.rescaled_columns() {
            header.extend(["x_over_t", "t_times_density"]);
        }
        for (i, (row, field)) in report.rows.iter().zip(&report.slices).enumerate() {
            let path = cfg.out_dir.join(format!("{name}_t{i}.csv"));
            write_file(
                &path,
                &csv_document(&header, &slice_rows(cfg, row.t, field)),
            )?;
            files.push(path);
        }
        let path = cfg.out_dir.join(format!("{name}_summary.csv"));
        write_file(&path, &summary_document(cfg, &report.rows))?;
        files.push(path);
    }
    if cfg.formats.svg {
        let path = cfg.out_dir.join(format!("{name}_density.svg"));
        write_file(&path, &plot(cfg, &report))?;
        files.push(path);
    }
    report.files = files;
    if cfg.strict && !report.warnings.is_empty() {
        return Err(RunError::Strict(report.warnings.clone()));
    }
    Ok(report)
}
