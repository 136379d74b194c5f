//! The conductor-15 curve and the elementary integrals along it.
//!
//! Three parametrizations of the same path are used: `t` itself, `t = 1 + s^2`
//! near `t = 1` (where the radical vanishes like `s`), and `t = 1/w^2` for the
//! tail. In each the radical and the factor `(1-t)^2` are written with the
//! small quantity pulled out, so nothing cancels.

use crate::consts::{LN_3, PI, SQRT_3};
use crate::dual::{atan_ratio_derivative, Dual};
use crate::quad::{integrate, integrate_de, Quadrature};
use crate::{Error, Real, Result};

/// Coefficient of `x^i y^j` in `QUARTIC[j][i]`.
pub const QUARTIC: [&[i64]; 5] = [
    &[1, -14, -5, -6, 9],
    &[4, 20, -12],
    &[6, -44, -18, -36, 54],
    &[4, 60, -36],
    &[1, -6, -9, -54, 81],
];

/// The quartic relation between `x` and `y` at an arbitrary point.
pub fn curve_quartic_residual(x: Real, y: Real) -> Real {
    QUARTIC
        .iter()
        .rev()
        .fold(0.0, |acc, row| acc * y + row.iter().rev().fold(0.0, |a, &c| a * x + c as Real))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint15 {
    pub t: Real,
    pub x: Real,
    pub xbar: Real,
    /// Infinite at `t = 3`.
    pub y: Real,
}

fn radicand(t: Real) -> Result<Real> {
    let r = -3.0 + t * t + 2.0 * t.powi(3);
    if t < 1.0 || r < 0.0 {
        return Err(Error::Domain(format!("curve parameter needs t >= 1, got {t}")));
    }
    Ok(r)
}

pub fn curve_point(t: Real) -> Result<CurvePoint15> {
    let rad = radicand(t)?.sqrt();
    let w = t * t + 3.0 * t + SQRT_3 * rad;
    let m = (1.0 - t).powi(2);
    let x = m / w;
    let xbar = m * w / (3.0 + t * t).powi(2);
    let y = (1.0 + t) * (3.0 - 6.0 * t - t * t - 2.0 * SQRT_3 * rad) / ((3.0 - t) * (3.0 + t * t));
    Ok(CurvePoint15 { t, x, xbar, y })
}

/// `Phi' - 2 psi_1' - psi_2'` in `t`, where `Phi = atan(sqrt(3) y)`,
/// `psi_1 = atan(t/sqrt(3))` and `psi_2` the second angle of the split.
pub fn dsplit_residual(t: Real) -> Result<Real> {
    radicand(t)?;
    if t <= 1.0 || t == 3.0 {
        return Err(Error::Domain(format!("differential split needs t > 1 and t != 3, got {t}")));
    }
    let d = t_local(t);
    Ok(d.dphi - 2.0 * d.dpsi1 - d.dpsi2)
}

/// Residuals of the closed forms of `x xbar` and `x + xbar` at `t = sqrt(3) tan(theta)`.
pub fn trig_residuals(theta: Real) -> Result<(Real, Real)> {
    if !(theta > PI / 6.0 && theta < PI / 2.0) {
        return Err(Error::Domain(format!("theta must lie in (pi/6, pi/2), got {theta}")));
    }
    let p = curve_point(SQRT_3 * theta.tan())?;
    let a = theta - PI / 6.0;
    let prod = 16.0 / 9.0 * a.sin().powi(4);
    let sum = 16.0 / 3.0 * a.sin().powi(2) * a.cos() * theta.sin();
    Ok((p.x * p.xbar - prod, p.x + p.xbar - sum))
}

/// Integrand data at one parameter value; derivatives are with respect to that parameter.
#[derive(Debug, Clone, Copy)]
struct Local {
    ln_x: Real,
    ln_xxbar: Real,
    dphi: Real,
    dpsi1: Real,
    dpsi2: Real,
}

impl Local {
    fn ln_ratio(&self) -> Real {
        2.0 * self.ln_x - self.ln_xxbar
    }
}

fn t_local(t: Real) -> Local {
    let t = Dual::var(t);
    let rad = (-3.0 + t * t + 2.0 * t.powi(3)).sqrt();
    let cp = 3.0 + t * t;
    let m = (1.0 - t.re).powi(2);
    Local {
        ln_x: m.ln() - (t.re * t.re + 3.0 * t.re + SQRT_3 * rad.re).ln(),
        ln_xxbar: 2.0 * m.ln() - 2.0 * cp.re.ln(),
        dphi: atan_ratio_derivative(
            SQRT_3 * (1.0 + t) * (3.0 - 6.0 * t - t * t - 2.0 * SQRT_3 * rad),
            (3.0 - t) * cp,
        ),
        dpsi1: atan_ratio_derivative(t, Dual::cst(SQRT_3)),
        dpsi2: atan_ratio_derivative((3.0 - t) * (3.0 + 3.0 * t + 2.0 * t * t), 3.0 * (1.0 + t) * rad),
    }
}

/// `t = 1 + s^2`, `s` in `(0, sqrt 2]`.
fn s_local(s: Real) -> Local {
    let s = Dual::var(s);
    let s2 = s * s;
    let sq = (8.0 + 7.0 * s2 + 2.0 * s2 * s2).sqrt();
    let r = s * sq;
    let cp = 4.0 + 2.0 * s2.re + s2.re * s2.re;
    Local {
        ln_x: 4.0 * s.re.ln() - (4.0 + 5.0 * s2.re + s2.re * s2.re + SQRT_3 * r.re).ln(),
        ln_xxbar: 8.0 * s.re.ln() - 2.0 * cp.ln(),
        dphi: atan_ratio_derivative(
            SQRT_3 * (2.0 + s2) * (-4.0 - 8.0 * s2 - s2 * s2 - 2.0 * SQRT_3 * r),
            (2.0 - s2) * (4.0 + 2.0 * s2 + s2 * s2),
        ),
        dpsi1: atan_ratio_derivative(1.0 + s2, Dual::cst(SQRT_3)),
        dpsi2: atan_ratio_derivative((2.0 - s2) * (8.0 + 7.0 * s2 + 2.0 * s2 * s2), 3.0 * (2.0 + s2) * r),
    }
}

/// `t = 1/w^2`, `w` in `[0, 1/sqrt 3]`.
fn w_local(w: Real) -> Local {
    let w = Dual::var(w);
    let w2 = w * w;
    let sw = (2.0 + w2 - 3.0 * w2.powi(3)).sqrt();
    let r = w * sw;
    let one_m = 1.0 - w2.re;
    Local {
        ln_x: 2.0 * one_m.ln() - (1.0 + 3.0 * w2.re + SQRT_3 * r.re).ln(),
        ln_xxbar: 4.0 * one_m.ln() - 2.0 * (1.0 + 3.0 * w2.re * w2.re).ln(),
        dphi: atan_ratio_derivative(
            SQRT_3 * (w2 + 1.0) * (3.0 * w2 * w2 - 6.0 * w2 - 1.0 - 2.0 * SQRT_3 * r),
            (3.0 * w2 - 1.0) * (3.0 * w2 * w2 + 1.0),
        ),
        dpsi1: atan_ratio_derivative(Dual::cst(1.0), SQRT_3 * w2),
        dpsi2: atan_ratio_derivative((3.0 * w2 - 1.0) * (3.0 * w2 * w2 + 3.0 * w2 + 2.0), 3.0 * (w2 + 1.0) * r),
    }
}

/// `int_{t=1}^{inf} g`, split at `t = 3` into the `s` and `w` charts.
fn along_curve<G: Fn(&Local) -> Real>(g: G, tol: Real) -> Result<Quadrature> {
    let tail0 = g(&w_local(0.0));
    if !tail0.is_finite() {
        return Err(Error::Domain(format!("mapped integrand is not finite at w = 0: {tail0}")));
    }
    let head = integrate_de(|s| g(&s_local(s)), 0.0, 2.0f64.sqrt(), 0.5 * tol)?;
    let tail = integrate_de(|w| g(&w_local(w)), 0.0, 1.0 / SQRT_3, 0.5 * tol)?;
    Ok(Quadrature { value: head.value - tail.value, ..head.combine(tail) })
}

/// `4 pi int_1^inf log x d atan(sqrt(3) y)`, the conductor-15 elementary integral.
pub fn prop4_integral(tol: Real) -> Result<Real> {
    let scale = 4.0 * PI;
    Ok(scale * along_curve(|l| l.ln_x * l.dphi, tol / scale)?.value)
}

/// The four integrals into which `prop4_integral` splits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourPieces {
    /// `int log(x xbar) d psi_1`.
    pub p1: Real,
    /// `int log(x/xbar) d psi_1`.
    pub p2: Real,
    /// `int log(x/xbar) d psi_2`.
    pub p3: Real,
    /// `int log(x xbar) d psi_2`.
    pub p4: Real,
}

impl FourPieces {
    /// `4 pi (P1 + P2) + 2 pi (P3 + P4)`, equal to [`prop4_integral`].
    pub fn assembly(&self) -> Real {
        4.0 * PI * (self.p1 + self.p2) + 2.0 * PI * (self.p3 + self.p4)
    }
}

pub fn four_piece_split(tol: Real) -> Result<FourPieces> {
    Ok(FourPieces {
        p1: along_curve(|l| l.ln_xxbar * l.dpsi1, tol)?.value,
        p2: along_curve(|l| l.ln_ratio() * l.dpsi1, tol)?.value,
        p3: along_curve(|l| l.ln_ratio() * l.dpsi2, tol)?.value,
        p4: along_curve(|l| l.ln_xxbar * l.dpsi2, tol)?.value,
    })
}

/// `log((1-R+v)/u)` and the derivative of `atan(sqrt(3)(1+R)/(1-R-2v))`
/// on the degree-2 path, in `t` (`z = t`) or in `w = 1/t` (`z = w`).
fn chain2_integrand(z: Real, inverted: bool) -> Real {
    let z = Dual::var(z);
    let (den, num_r, v_num) = if inverted {
        (1.0 + 2.0 * z.powi(3), (1.0 - z) * (2.0 - z + 2.0 * z * z), (1.0 - z).powi(3))
    } else {
        (z.powi(3) + 2.0, (z - 1.0) * (2.0 * z * z - z + 2.0), (z - 1.0).powi(3))
    };
    let zr = z.re;
    let ln_ratio = if inverted { 2.0 * zr.ln() - (1.0 - zr + zr * zr).ln() } else { -(1.0 - zr + zr * zr).ln() };
    let d = atan_ratio_derivative(SQRT_3 * (den + num_r), den - num_r - 2.0 * v_num);
    ln_ratio * d
}

/// The right side `4 pi int log((1-R+v)/u) d atan(sqrt(3)(1+R)/(1-R-2v))`
/// along the rational parametrization of degree `x`.
pub fn rhs_main_theorem(x: u32, tol: Real) -> Result<Real> {
    let scale = 4.0 * PI;
    match x {
        2 => {
            let head = integrate(|t| chain2_integrand(t, false), 1.0, 2.0, 0.5 * tol / scale)?;
            let tail = integrate_de(|w| chain2_integrand(w, true), 0.0, 0.5, 0.5 * tol / scale)?;
            Ok(scale * (head.value - tail.value))
        }
        5 => Ok(-prop4_integral(tol)?),
        _ => Err(Error::Unsupported(format!("no rational parametrization of degree {x}"))),
    }
}

/// `-(4 pi^2/3) log 3 - 2 pi sqrt(3) L(chi_-3, 2)`, the value of the degree-2 chain.
pub fn chain2_closed_form(l3: Real) -> Real {
    -4.0 * PI * PI / 3.0 * LN_3 - 2.0 * PI * SQRT_3 * l3
}
