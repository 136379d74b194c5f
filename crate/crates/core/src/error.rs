use thiserror::Error;

use crate::quad::Quadrature;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("exponent {exponent} does not lie on the grid 1/{den}")]
    GridIncompatible { exponent: String, den: i64 },

    #[error("grid denominator {den} exceeds the bound {bound}")]
    GridOverflow { den: i64, bound: i64 },

    #[error("series division by a series with no known leading term")]
    SeriesDivision,

    #[error("series known only to order {have}, {need} required")]
    InsufficientOrder { have: String, need: String },

    #[error("quadrature did not converge: value {} with error estimate {:e} after {} evaluations",
        .partial.value, .partial.err_estimate, .partial.evaluations)]
    NonConvergence { partial: Quadrature },

    #[error("series did not converge after {terms} terms")]
    SeriesNonConvergence { terms: usize },

    #[error("divergent hypergeometric parameters: {0}")]
    Divergence(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("exponent {0} exceeds the supported magnitude 64")]
    ExponentOverflow(i64),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("unsupported argument: {0}")]
    Unsupported(String),

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("inconsistent evaluation chain: {0}")]
    ChainMismatch(String),
}
