//! The identity registry, its runner, report rendering and the command bodies behind the CLI.

mod commands;
mod exact;
mod registry;
mod report;
mod runner;

pub use commands::{eval, list, parse_ratio, parse_real, render_series, series_expansion, SeriesKind, EVAL_TOL};
pub use exact::{
    a_bc, a_bc_with, b13, cubic, deg11, deg2, deg5, deg8, e36, lambert, prop2_proof, ExactOutcome,
};
pub use registry::{find, list_checks, registry, tol, CheckDef, Sides, Status, INNER_TOL};
pub use report::{fmt15, render_report, Format};
pub use runner::{exit_code, run_all, run_check, CheckResult, RunOptions};
