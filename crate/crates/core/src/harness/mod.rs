//! Cross-scheme comparison, parameter sweeps and report rendering.

mod compare;
mod output;
mod parse;
mod sweep;

pub use compare::{
    compare_schemes, compare_schemes_with, normalized_discrepancy, run_scheme, ComparisonReport, SchemeOptions,
    DEFAULT_COMPARISON_TOL,
};
pub use output::{
    records_of, render_records, render_reports, report_json, OutputFormat, ResultRecord, CSV_HEADER,
};
pub use parse::{parse_grid, parse_potential, parse_real_list};
pub use sweep::{parse_schemes, run_sweep, SweepSpec};
