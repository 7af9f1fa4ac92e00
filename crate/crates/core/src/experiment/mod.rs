//! Config-driven experiments emitting CSV.

pub mod cli;
mod config;
mod run;

pub use config::{
    parse_config, serialize_config, AllocationConfig, BoundsConfig, ExperimentConfig,
    InstanceConfig, RecommendationConfig, XarmedConfig, BOUND_NAMES, DEFAULT_BOUNDS,
};
pub use run::{
    read_csv, run_bounds, run_oracle, run_simulate, run_xarmed, write_csv, BoundRow, CsvRecord,
    OracleRow, SimulateRow, XarmedRow,
};
