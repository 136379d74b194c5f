use crate::consts::{SQRT_3, TAU};
use crate::qseries::theta_abc;
use crate::{Error, Real, Result};

/// The signature-3 modular parametrization at one nome.
///
/// `alpha = c^3/a^3` at `q`, `beta` the same at `q^x`;
/// `u^3 = alpha beta`, `v^3 = (1-alpha)(1-beta)`,
/// `R = (1-alpha)^(1/3) + (1-beta)^(1/3)`, all real cube roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignatureParams {
    pub q: Real,
    pub x: Real,
    pub alpha: Real,
    pub beta: Real,
    pub u: Real,
    pub v: Real,
    pub r: Real,
}

impl SignatureParams {
    /// `R^3 - 3vR - v^3 - (1 - u^3)`, identically zero.
    pub fn cubic_residual(&self) -> Real {
        let (u, v, r) = (self.u, self.v, self.r);
        r.powi(3) - 3.0 * v * r - v.powi(3) - (1.0 - u.powi(3))
    }
}

pub fn signature_params(q: Real, x: Real) -> Result<SignatureParams> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("signature parameters need 0 < q < 1, got {q}")));
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("degree must be positive, got {x}")));
    }
    let h = -q.ln();
    let t1 = theta_abc(h)?;
    let tx = theta_abc(x * h)?;
    let (c1, cx) = (t1.c_over_a(), tx.c_over_a());
    let (b1, bx) = (t1.b_over_a(), tx.b_over_a());
    Ok(SignatureParams { q, x, alpha: c1.powi(3), beta: cx.powi(3), u: c1 * cx, v: b1 * bx, r: b1 + bx })
}

/// Value of the tabulated `u`-`v` relation of degree `p.x` in `{2, 5, 8, 11}`.
pub fn table_residual(p: &SignatureParams) -> Result<Real> {
    let (u, v) = (p.u, p.v);
    let s = u + v - 1.0;
    match p.x {
        2.0 => Ok(s),
        5.0 => Ok(s * s - 9.0 * u * v),
        8.0 => Ok(s.powi(4) + 9.0 * u * v * (4.0 * u + 4.0 * v + 5.0) * s - 162.0 * (u * v).powi(2)),
        11.0 => {
            let (su, sv) = (u.sqrt(), v.sqrt());
            let q4 = (u * v).sqrt().sqrt();
            Ok(u + v + 6.0 * su * sv + 3.0 * SQRT_3 * q4 * (su + sv) - 1.0)
        }
        x => Err(Error::Unsupported(format!("no tabulated relation of degree {x}"))),
    }
}

/// `q = e^{-2 pi s}` helper used by tests and reports.
pub fn nome(s: Real) -> Real {
    (-TAU * s).exp()
}
