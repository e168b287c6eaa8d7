//! Benchmark harness: strict JSON run configuration, epoch-cost
//! accounting, the run loop with deterministic CSV traces, and static SVG
//! chart emission. The `hvi-bench` binary is a thin wrapper over this
//! module.

pub mod config;
pub mod cost;
pub mod runner;
pub mod svg;

pub use config::{parse_config, AlgorithmKind, ProblemKind, RunConfig};
pub use cost::{epoch_cost, CostEvent, EpochCostModel};
pub use runner::{default_start, execute, parse_csv, rows_to_csv, MetricsRow, RunOutput, CSV_HEADER};
pub use svg::{emit_svg, SeriesSet};
