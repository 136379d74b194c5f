//! Hypergeometric series, the complete elliptic integral, `L(chi_-3, s)`,
//! the closed forms of `m(alpha)` and the three routes to `I(y)`.

use num_rational::Ratio;

use crate::consts::{LN_2, PI, SQRT_3};
use crate::quad::integrate_de;
use crate::{Error, Real, Result};

/// Most terms any series may take.
pub const MAX_TERMS: usize = 1_000_000;

/// Parameters of `pFq(upper; lower; z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperParams {
    pub upper: Vec<Ratio<i64>>,
    pub lower: Vec<Ratio<i64>>,
    pub z: Real,
}

fn ratio(r: Ratio<i64>) -> Real {
    *r.numer() as Real / *r.denom() as Real
}

impl HyperParams {
    pub fn new(upper: &[(i64, i64)], lower: &[(i64, i64)], z: Real) -> Self {
        let conv = |v: &[(i64, i64)]| v.iter().map(|&(n, d)| Ratio::new(n, d)).collect();
        HyperParams { upper: conv(upper), lower: conv(lower), z }
    }

    /// `sum lower - sum upper`, the algebraic decay exponent at `|z| = 1`.
    pub fn excess(&self) -> Real {
        self.lower.iter().map(|&r| ratio(r)).sum::<Real>() - self.upper.iter().map(|&r| ratio(r)).sum::<Real>()
    }

    fn terminates(&self) -> bool {
        self.upper.iter().any(|r| r.is_integer() && *r.numer() <= 0)
    }

    fn validate(&self) -> Result<()> {
        if let Some(b) = self.lower.iter().find(|r| r.is_integer() && *r.numer() <= 0) {
            return Err(Error::Divergence(format!("lower parameter {b} is a non-positive integer")));
        }
        if !self.z.is_finite() {
            return Err(Error::Divergence(format!("argument {} is not finite", self.z)));
        }
        if self.terminates() || self.z == 0.0 {
            return Ok(());
        }
        let (p, q) = (self.upper.len(), self.lower.len());
        if p > q + 1 {
            return Err(Error::Divergence(format!("{p}F{q} has zero radius of convergence")));
        }
        if p == q + 1 {
            if self.z.abs() > 1.0 {
                return Err(Error::Divergence(format!("|z| = {} exceeds the radius of convergence", self.z.abs())));
            }
            if self.z.abs() == 1.0 && self.excess() <= 0.0 {
                return Err(Error::Divergence(format!(
                    "unit argument needs sum(lower) - sum(upper) > 0, got {}",
                    self.excess()
                )));
            }
        }
        Ok(())
    }

    /// Ratio `t_{n+1}/t_n` of consecutive terms.
    fn term_ratio(&self, n: Real) -> Real {
        let num: Real = self.upper.iter().map(|&a| ratio(a) + n).product();
        let den: Real = self.lower.iter().map(|&b| ratio(b) + n).product();
        num / den * self.z / (n + 1.0)
    }
}

/// `pFq(upper; lower; z)` to absolute accuracy about `tol`.
///
/// Inside the disc the tail is bounded geometrically; at `z = 1` partial sums
/// over doubling lengths are Richardson-extrapolated in the decay exponents
/// `s, s+1, ...` with `s = sum(lower) - sum(upper)`.
pub fn pfq(p: &HyperParams, tol: Real) -> Result<Real> {
    p.validate()?;
    if p.z.abs() < 1.0 || p.terminates() || p.upper.len() <= p.lower.len() {
        return pfq_disc(p, tol);
    }
    if p.z == 1.0 {
        return pfq_unit(p, tol);
    }
    Err(Error::Unsupported(format!("pFq at z = {} on the unit circle", p.z)))
}

fn pfq_disc(p: &HyperParams, tol: Real) -> Result<Real> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..MAX_TERMS {
        let r = p.term_ratio(n as Real);
        term *= r;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        let rho = p.term_ratio(n as Real + 1.0).abs().max(p.z.abs());
        if rho < 1.0 && term.abs() * rho / (1.0 - rho) < tol * sum.abs().max(1.0) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNonConvergence { terms: MAX_TERMS })
}

fn pfq_unit(p: &HyperParams, tol: Real) -> Result<Real> {
    const N0: usize = 64;
    const LEVELS: usize = 12;
    let s = p.excess();
    let mut partial = Vec::with_capacity(LEVELS);
    let (mut term, mut sum, mut n) = (1.0, 0.0, 0usize);
    let mut target = N0;
    while partial.len() < LEVELS {
        while n < target {
            sum += term;
            term *= p.term_ratio(n as Real);
            n += 1;
        }
        partial.push(sum);
        target *= 2;
    }
    // Neville-style elimination of N^-s, N^-(s+1), ...
    let mut row = partial;
    let mut best = (Real::INFINITY, *row.last().expect("nonempty"));
    for j in 0..LEVELS - 1 {
        let f = (2.0 as Real).powf(s + j as Real);
        row = row.windows(2).map(|w| (f * w[1] - w[0]) / (f - 1.0)).collect();
        if row.len() >= 2 {
            let k = row.len();
            let diff = (row[k - 1] - row[k - 2]).abs();
            if diff < best.0 {
                best = (diff, row[k - 1]);
            }
        }
    }
    if best.0 <= tol.max(1e-9) * best.1.abs().max(1.0) {
        Ok(best.1)
    } else {
        Err(Error::SeriesNonConvergence { terms: n })
    }
}

/// `2F1(a, b; c; z)` with rational parameters.
pub fn f21(a: (i64, i64), b: (i64, i64), c: (i64, i64), z: Real) -> Result<Real> {
    pfq(&HyperParams::new(&[a, b], &[c], z), 1e-16)
}

/// `K(k) = (pi/2) 2F1(1/2, 1/2; 1; k^2)` for `0 <= k < 1`.
pub fn ell_k(k: Real) -> Result<Real> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::Domain(format!("ellK needs 0 <= z < 1, got {k}")));
    }
    let mut k = k;
    let mut kp = ((1.0 - k) * (1.0 + k)).sqrt();
    let mut factor = 1.0;
    // Descending Gauss transformation K(k) = (1 + k1) K(k1), k1 = (1 - k')/(1 + k').
    while k * k > 0.9 {
        let k1 = (1.0 - kp) / (1.0 + kp);
        let kp1 = 2.0 * kp.sqrt() / (1.0 + kp);
        factor *= 1.0 + k1;
        k = k1;
        kp = kp1;
    }
    Ok(factor * 0.5 * PI * f21((1, 2), (1, 2), (1, 1), k * k)?)
}

/// `L(chi_-3, s)` for `s` in `{1, 2}`.
///
/// `s = 1` is the closed form `pi/(3 sqrt 3)`. For `s = 2` the series is split
/// into its two residue classes, each summed by Euler–Maclaurin.
pub fn dirichlet_l3(s: u32) -> Result<Real> {
    match s {
        1 => Ok(PI / (3.0 * SQRT_3)),
        2 => Ok((hurwitz_zeta2(1.0 / 3.0) - hurwitz_zeta2(2.0 / 3.0)) / 9.0),
        _ => Err(Error::Unsupported(format!("L(chi_-3, s) only for s in {{1, 2}}, got {s}"))),
    }
}

/// `sum_{k >= 0} 1/(x+k)^2`.
fn hurwitz_zeta2(x: Real) -> Real {
    const K: usize = 20;
    // B_2, B_4, ..., B_16
    const BERNOULLI: [Real; 8] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
    ];
    let head: Real = (0..K).rev().map(|k| (x + k as Real).powi(-2)).sum();
    let n = x + K as Real;
    let mut tail = 1.0 / n + 0.5 / (n * n);
    let mut pw = n.powi(3);
    for b in BERNOULLI {
        tail += b / pw;
        pw *= n * n;
    }
    head + tail
}

/// Which closed form [`m_alpha_branch`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MAlphaForm {
    /// `(alpha/4) 3F2(1/2,1/2,1/2; 1,3/2; alpha^2/16)`, valid for `alpha <= 4`.
    Small,
    /// `log alpha - (2/alpha^2) 4F3(3/2,3/2,1,1; 2,2,2; 16/alpha^2)`, valid for `alpha >= 4`.
    Large,
}

/// `m(alpha + X + 1/X + Y + 1/Y)` by an explicitly chosen closed form.
pub fn m_alpha_branch(alpha: Real, form: MAlphaForm) -> Result<Real> {
    match form {
        MAlphaForm::Small if alpha > 0.0 && alpha <= 4.0 => {
            Ok(alpha / 4.0 * f32_half(alpha * alpha / 16.0)?)
        }
        MAlphaForm::Large if alpha >= 4.0 => Ok(alpha.ln() - 2.0 / (alpha * alpha) * f43(16.0 / (alpha * alpha))?),
        _ => Err(Error::Domain(format!("{form:?} form of m(alpha) is not valid at alpha = {alpha}"))),
    }
}

/// `m(alpha + X + 1/X + Y + 1/Y)` for `alpha > 0`.
pub fn m_alpha(alpha: Real) -> Result<Real> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("m(alpha) needs alpha > 0, got {alpha}")));
    }
    let form = if alpha <= 4.0 { MAlphaForm::Small } else { MAlphaForm::Large };
    m_alpha_branch(alpha, form)
}

fn f32_half(z: Real) -> Result<Real> {
    pfq(&HyperParams::new(&[(1, 2), (1, 2), (1, 2)], &[(1, 1), (3, 2)], z), 1e-16)
}

fn f43(z: Real) -> Result<Real> {
    pfq(&HyperParams::new(&[(3, 2), (3, 2), (1, 1), (1, 1)], &[(2, 1), (2, 1), (2, 1)], z), 1e-16)
}

fn check_y(y: Real) -> Result<()> {
    if y >= 1.0 && y.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("I(y) needs y >= 1, got {y}")))
    }
}

/// `I(y) = -(2/pi) int_0^1 (y-1+2u) log u / sqrt(u(1-u)(y-1+u)(y+u)) du`.
///
/// Split at `1/2`; the upper half is reflected so both singular endpoints sit at 0.
pub fn i_integral(y: Real, tol: Real) -> Result<Real> {
    check_y(y)?;
    // `u` and `w = 1 - u` are passed separately so neither loses precision.
    let g = |u: Real, w: Real| -> Real {
        let root = u.sqrt() * w.sqrt() * (y - 1.0 + u).sqrt() * (y + u).sqrt();
        (y - 1.0 + 2.0 * u) * u.ln() / root
    };
    let lower = integrate_de(|u| g(u, 1.0 - u), 0.0, 0.5, 0.5 * tol)?;
    let upper = integrate_de(|w| g(1.0 - w, w), 0.0, 0.5, 0.5 * tol)?;
    Ok(-2.0 / PI * (lower.value + upper.value))
}

/// `I(y)` through the `4F3` and `3F2` closed form.
pub fn i_hyper(y: Real) -> Result<Real> {
    check_y(y)?;
    let z = 1.0 / (y * y);
    Ok(4.0 * LN_2 - z / 8.0 * f43(z)? - f32_half(z)? / y)
}

/// `I(y) = m(4y) - m(4/y) - log(y/4)`.
pub fn i_mahler(y: Real) -> Result<Real> {
    check_y(y)?;
    Ok(m_alpha(4.0 * y)? - m_alpha(4.0 / y)? - (y / 4.0).ln())
}

/// `((y+1)/y) 2F1(1/2,1/2;1;1/y^2) - y I'(y)` with a Richardson-extrapolated
/// central difference; equals 1 for `y > 1`.
pub fn i_derivative_residual(y: Real) -> Result<Real> {
    check_y(y)?;
    let h = 1e-4 * y;
    let d = |h: Real| -> Result<Real> { Ok((i_integral(y + h, 1e-13)? - i_integral(y - h, 1e-13)?) / (2.0 * h)) };
    let (d1, d2) = (d(h)?, d(0.5 * h)?);
    let deriv = (4.0 * d2 - d1) / 3.0;
    Ok((y + 1.0) / y * f21((1, 2), (1, 2), (1, 1), 1.0 / (y * y))? - y * deriv - 1.0)
}
