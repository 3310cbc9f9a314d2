//! Scenario configuration, figure presets, grid sweeps, CSV output and the
//! command-line front end.

pub mod cli;
mod config;
mod output;
mod presets;
mod runner;
pub mod validate;

pub use config::{load_config, parse_config, Axis, AxisDoc, AxisName, ConfigDoc, GameKind, Overrides, PointParams, ScenarioConfig};
pub use output::{emit_csv, format_float, write_csv};
pub use presets::{preset_doc, IDS as PRESET_IDS};
pub use runner::{evaluate_point, run_scenario, Columns, ResultRow};
