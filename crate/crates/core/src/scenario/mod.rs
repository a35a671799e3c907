//! Scenario runner behind the `wavepacket` binary: the fig1–fig4 presets,
//! the spread-law sweep and the bound checks.

mod config;
mod output;
mod run;

pub use config::{
    parse_config, parse_config_with, ConfigError, EvolutionMethod, FamilyKind, Formats, Origin,
    ScenarioConfig, ScenarioKind, KEYS,
};
pub use output::{csv_document, format_number, svg_plot, Series};
pub use run::{
    compute_scenario, run_scenario, sizing_warnings, time_unit, RunError, RunReport, SummaryRow,
};
