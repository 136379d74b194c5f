//! High-precision special-function numerics around the Mahler measure of
//! `1 + X + 1/X + Y + 1/Y`.
//!
//! The crate is organised bottom-up:
//!
//! * [`qseries`]: exact truncated q-expansions (eta products, the cubic theta
//!   functions `a`, `b`, `c`) and their fast floating-point counterparts.
//! * [`quad`]: adaptive Gauss–Kronrod and tanh-sinh quadrature.
//! * [`hyper`]: generalized hypergeometric series, `K`, `L(chi_-3, s)`, the
//!   `m(alpha)` closed forms and the integral `I(y)`.
//! * [`lfun`]: L-values of eta-product cusp forms and the lattice sums `F(B, C)`.
//! * [`hfun`]: the function `H(x)`, the telescoping integral, the signature-3
//!   parametrization and the elementary integrals for conductor 15.
//! * [`mahler`]: Laurent polynomials, a small parser, and Mahler measures.
//! * [`verify`]: the identity registry, runner and report rendering.
//!
//! All floating-point work goes through the [`Real`] alias.

pub mod dual;
pub mod error;
pub mod hfun;
pub mod hyper;
pub mod lfun;
pub mod mahler;
pub mod par;
pub mod qseries;
pub mod quad;
pub mod verify;

pub use error::{Error, Result};

/// Floating-point type used by every numeric routine.
pub type Real = f64;

/// Mathematical constants at [`Real`] precision.
pub mod consts {
    use crate::Real;

    pub const PI: Real = std::f64::consts::PI;
    pub const TAU: Real = std::f64::consts::TAU;
    pub const LN_2: Real = std::f64::consts::LN_2;
    pub const LN_3: Real = 1.098_612_288_668_109_7;
    pub const SQRT_3: Real = 1.732_050_807_568_877_2;
}
