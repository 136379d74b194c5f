use crate::consts::{LN_3, PI, SQRT_3, TAU};
use crate::{Error, Real, Result};

const PRODUCT_CUTOFF: Real = 1e-17;

/// `sum_{n >= 1} log(1 - e^{-nh})` for `h >= 2`.
fn log_euler_product(h: Real) -> Real {
    let mut s = 0.0;
    let mut n = 1.0;
    loop {
        let t = (-n * h).exp();
        if t < PRODUCT_CUTOFF {
            return s;
        }
        s += (-t).ln_1p();
        n += 1.0;
    }
}

/// `log eta(e^{-h})` for `h > 0`; NaN outside the domain.
pub(crate) fn log_eta(h: Real) -> Real {
    if !(h > 0.0) {
        return Real::NAN;
    }
    if h < 2.0 {
        return 0.5 * (TAU / h).ln() + log_eta(4.0 * PI * PI / h);
    }
    -h / 24.0 + log_euler_product(h)
}

/// `log b(e^{-h})`; for `h >= 2` the `q^(1/8)` prefactors cancel exactly.
pub(crate) fn log_b(h: Real) -> Real {
    if h >= 2.0 {
        3.0 * log_euler_product(h) - log_euler_product(3.0 * h)
    } else {
        3.0 * log_eta(h) - log_eta(3.0 * h)
    }
}

/// `log c(e^{-h})`.
pub(crate) fn log_c(h: Real) -> Real {
    if h >= 2.0 {
        LN_3 - h / 3.0 + 3.0 * log_euler_product(3.0 * h) - log_euler_product(h)
    } else {
        LN_3 + 3.0 * log_eta(3.0 * h) - log_eta(h)
    }
}

/// `log eta(e^{-h})`, finite for every `h > 0` including where `eta_num` underflows.
pub fn log_eta_num(h: Real) -> Result<Real> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain(format!("eta needs h > 0, got {h}")));
    }
    Ok(log_eta(h))
}

/// `eta(e^{-h})` for `h > 0`.
pub fn eta_num(h: Real) -> Result<Real> {
    log_eta_num(h).map(Real::exp)
}

/// The cubic theta functions at one nome, with log-space data kept for
/// quantities that over- or underflow near the ends of `(0,1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaAbc {
    pub a: Real,
    pub b: Real,
    pub c: Real,
    /// `log(b/c)`.
    pub log_b_over_c: Real,
}

impl ThetaAbc {
    /// `c/a` in `(0,1)`.
    pub fn c_over_a(&self) -> Real {
        let r3 = (3.0 * self.log_b_over_c).exp();
        (1.0 + r3).cbrt().recip()
    }

    /// `b/a` in `(0,1)`.
    pub fn b_over_a(&self) -> Real {
        let r3 = (-3.0 * self.log_b_over_c).exp();
        (1.0 + r3).cbrt().recip()
    }
}

/// `a, b, c` at `q = e^{-h}`.
pub fn theta_abc(h: Real) -> Result<ThetaAbc> {
    log_eta_num(h)?;
    let lb = log_b(h);
    let lc = log_c(h);
    let (b, c) = (lb.exp(), lc.exp());
    let a = if b >= c { b * (1.0 + (c / b).powi(3)).cbrt() } else { c * (1.0 + (b / c).powi(3)).cbrt() };
    Ok(ThetaAbc { a, b, c, log_b_over_c: lb - lc })
}

/// `(a, b, c)` at `0 < q < 1`.
pub fn abc_num(q: Real) -> Result<(Real, Real, Real)> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("abc_num needs 0 < q < 1, got {q}")));
    }
    let t = theta_abc(-q.ln())?;
    Ok((t.a, t.b, t.c))
}

/// `c(e^{-h})` through the modular relation with `b` at the dual nome.
pub fn c_via_modular(h: Real) -> Result<Real> {
    let dual = 4.0 * PI * PI / (3.0 * h);
    Ok(TAU / (SQRT_3 * h) * theta_abc(dual)?.b)
}
