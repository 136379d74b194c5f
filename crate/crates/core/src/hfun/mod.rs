//! `H(x)` by the theta-product integral and by the signature-3 `alpha`
//! integral, the telescoping integral, and the elementary integrals whose
//! values feed the conductor-15 identity.

mod curve;
mod signature;

pub use curve::{
    curve_point, curve_quartic_residual, dsplit_residual, four_piece_split, prop4_integral, rhs_main_theorem,
    chain2_closed_form, trig_residuals, CurvePoint15, FourPieces, QUARTIC,
};
pub use signature::{nome, signature_params, table_residual, SignatureParams};

use crate::consts::{PI, SQRT_3, TAU};
use crate::qseries::{log_b, log_c, theta_abc};
use crate::quad::{integrate, integrate_to_infinity};
use crate::{Error, Real, Result};

/// Split point of every half-line integral in this module.
const T_SPLIT: Real = 1.0 / 24.0;

fn check_x(x: Real) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("H(x) needs x > 0, got {x}")))
    }
}

/// `H(x) = -(4 pi^2/3) int_0^inf t b(e^{-2 pi x t}) c(e^{-2 pi t}) dt`.
pub fn h_q(x: Real, tol: Real) -> Result<Real> {
    check_x(x)?;
    let scale = 4.0 * PI * PI / 3.0;
    let f = |t: Real| {
        if t <= 0.0 {
            return 0.0;
        }
        t * (log_b(TAU * x * t) + log_c(TAU * t)).exp()
    };
    let head = integrate(f, 0.0, T_SPLIT, 0.5 * tol / scale)?;
    let tail = integrate_to_infinity(f, T_SPLIT, 0.5 * tol / scale)?;
    Ok(-scale * (head.value + tail.value))
}

/// `p = b/a` at `q = e^{-2 pi s}`.
fn p_of_s(s: Real) -> Result<Real> {
    Ok(theta_abc(TAU * s)?.b_over_a())
}

/// `dp/ds` by a central difference with one Richardson step.
fn dp_ds(s: Real) -> Result<Real> {
    let h = 1e-3 * s.min(1.0);
    if s - h <= 0.0 || h == 0.0 {
        return Err(Error::Domain(format!("differentiation step underflows at s = {s}")));
    }
    let d = |h: Real| -> Result<Real> { Ok((p_of_s(s + h)? - p_of_s(s - h)?) / (2.0 * h)) };
    let (d1, d2) = (d(h)?, d(0.5 * h)?);
    Ok((4.0 * d2 - d1) / 3.0)
}

/// `x H(x/3)` through `2 sqrt(3) pi int_0^1 L(p) dp / (1 + p + p^2)` with
/// `p = (1 - alpha)^(1/3)` and `L = log((1 - (1-beta)^(1/3)) / beta^(1/3))`,
/// parametrized by `q = e^{-2 pi s}` and differentiated numerically.
pub fn h_alpha(x: Real, tol: Real) -> Result<Real> {
    check_x(x)?;
    let f = |s: Real| -> Real {
        let inner = || -> Result<Real> {
            let at_q = theta_abc(TAU * s)?;
            let p = at_q.b_over_a();
            let dp = dp_ds(s)?;
            if dp == 0.0 {
                return Ok(0.0);
            }
            let at_qx = theta_abc(TAU * x * s)?;
            let px = at_qx.b_over_a();
            let l = 2.0 * at_qx.c_over_a().ln() - (1.0 + px + px * px).ln();
            Ok(l * dp / (1.0 + p + p * p))
        };
        if s <= 0.0 {
            return 0.0;
        }
        inner().unwrap_or(Real::NAN)
    };
    let scale = 2.0 * SQRT_3 * PI;
    let head = integrate(f, 0.0, 1.0, 0.5 * tol / scale)?;
    let tail = integrate_to_infinity(f, 1.0, 0.5 * tol / scale)?;
    Ok(scale * (head.value + tail.value))
}

/// `int_0^1 (r^2 c(q^r) c(q^rj) - c(q) c(q^j)) log q dq/q`.
///
/// With `q = e^{-2 pi t}` this is `-4 pi^2 int_0^inf t [..] dt`. On `t < 1`
/// each `c` is rewritten through the modular relation as `b` at the dual
/// nome, which makes the cancellation between the two products explicit.
pub fn telescope_integral(r: Real, j: Real, tol: Real) -> Result<Real> {
    if !(r > 0.0 && j > 0.0 && r.is_finite() && j.is_finite()) {
        return Err(Error::Domain(format!("telescope needs r, j > 0, got ({r}, {j})")));
    }
    if r == 1.0 {
        return Ok(0.0);
    }
    let small = |t: Real| -> Real {
        if t <= 0.0 {
            return 0.0;
        }
        let lb = |k: Real| log_b(TAU / (3.0 * k * t));
        let l_r = lb(r) + lb(r * j);
        let l_1 = lb(1.0) + lb(j);
        l_1.exp() * (l_r - l_1).exp_m1() / (3.0 * j * t)
    };
    let large = |t: Real| -> Real {
        let lc = |k: Real| log_c(TAU * k * t);
        t * (r * r * (lc(r) + lc(r * j)).exp() - (lc(1.0) + lc(j)).exp())
    };
    let scale = 4.0 * PI * PI;
    let head = integrate(small, 0.0, 1.0, 0.5 * tol / scale)?;
    let tail = integrate_to_infinity(large, 1.0, 0.5 * tol / scale)?;
    Ok(-scale * (head.value + tail.value))
}
