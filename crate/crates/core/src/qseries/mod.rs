//! Exact truncated q-expansions and floating-point eta/theta evaluation.
//!
//! A [`QExpansion`] lives on the exponent grid `Z/den` and carries a
//! truncation order: every coefficient with exponent `<= order` is exact,
//! nothing above it is stored. Arithmetic never extends the order beyond the
//! smallest order of its operands.

mod eta;
mod numeric;
mod series;
mod theta;

pub use eta::{eta_series, EtaProduct};
pub use numeric::{abc_num, c_via_modular, eta_num, log_eta_num, theta_abc, ThetaAbc};
pub(crate) use numeric::{log_b, log_c, log_eta};
pub use series::{assert_series_identity, Exponent, QExpansion, SeriesComparison, MAX_GRID};
pub use theta::{b_series, b_series_lattice, c_series, c_series_lattice, theta_a_series};

/// Grid used by callers that do not care: covers denominators 24, 9, 8 and 3.
pub const DEFAULT_GRID: i64 = 72;
/// Default truncation order of the exact identity checks.
pub const DEFAULT_ORDER: i64 = 40;
