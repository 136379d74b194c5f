//! L-values of eta-product cusp forms and the lattice sums `F(B, C)`.
//!
//! Both reduce to `int_0^inf t g(t) dt` with `g` a product of eta values,
//! evaluated in log space so the transformation branch of `eta` is used
//! wherever `t` is small.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::consts::{PI, TAU};
use crate::qseries::{log_eta, EtaProduct, Exponent};
use crate::quad::{integrate, integrate_to_infinity, Quadrature};
use crate::{Error, Real, Result};

/// Every integrand here is split at this point.
pub const T_SPLIT: Real = 1.0 / 24.0;

/// The pair `(B, C)` of a lattice sum with `A = 24/((B+1)(C+1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSumSpec {
    pub b: Ratio<i64>,
    pub c: Ratio<i64>,
    pub a: Ratio<i64>,
    pub integer_a: bool,
}

impl LatticeSumSpec {
    pub fn new(b: Ratio<i64>, c: Ratio<i64>) -> Result<Self> {
        if b <= Ratio::zero() || c <= Ratio::zero() {
            return Err(Error::Domain(format!("F(B, C) needs B, C > 0, got ({b}, {c})")));
        }
        let one = Ratio::from_integer(1);
        let a = Ratio::from_integer(24) / ((b + one) * (c + one));
        Ok(LatticeSumSpec { b, c, a, integer_a: a.is_integer() })
    }

    pub fn from_ints(b: i64, c: i64) -> Result<Self> {
        Self::new(Ratio::from_integer(b), Ratio::from_integer(c))
    }

    /// `eta(q^A) eta(q^AB) eta(q^AC) eta(q^ABC)` when `A` is an integer.
    pub fn eta_product(&self) -> Option<EtaProduct> {
        if !self.integer_a {
            return None;
        }
        let a = self.a;
        EtaProduct::new([(a, 1), (a * self.b, 1), (a * self.c, 1), (a * self.b * self.c, 1)]).ok()
    }
}

fn to_real(r: Ratio<i64>) -> Real {
    *r.numer() as Real / *r.denom() as Real
}

/// `int_0^inf t g(t) dt` split at [`T_SPLIT`].
fn mellin2<G: Fn(Real) -> Real>(g: G, tol: Real) -> Result<Quadrature> {
    let f = |t: Real| if t > 0.0 { t * g(t) } else { 0.0 };
    let head = integrate(f, 0.0, T_SPLIT, 0.5 * tol)?;
    let tail = integrate_to_infinity(f, T_SPLIT, 0.5 * tol)?;
    Ok(head.combine(tail))
}

/// `L(f, 2) = (2 pi)^2 int_0^inf t f(e^{-2 pi t}) dt` for a weight-2 eta product.
pub fn l_eta_cusp(f: &EtaProduct, tol: Real) -> Result<Real> {
    if !f.is_weight2_cusp_shape() {
        return Err(Error::Domain(format!(
            "{f} is not a weight-2 cusp form shape (total power {}, leading exponent {})",
            f.total_power(),
            f.leading_exponent()
        )));
    }
    let scale = TAU * TAU;
    let q = mellin2(|t| f.eval_h(TAU * t), tol / scale)?;
    Ok(scale * q.value)
}

/// `F(B, C)` through `(B+1)^2 (C+1)^2 int_0^inf t eta(e^{-24t}) eta(e^{-24Bt}) eta(e^{-24Ct}) eta(e^{-24BCt}) dt`.
pub fn f_lattice(spec: &LatticeSumSpec, tol: Real) -> Result<Real> {
    let (b, c) = (to_real(spec.b), to_real(spec.c));
    let pref = ((b + 1.0) * (c + 1.0)).powi(2);
    let g = |t: Real| {
        let h = 24.0 * t;
        (log_eta(h) + log_eta(b * h) + log_eta(c * h) + log_eta(b * c * h)).exp()
    };
    Ok(pref * mellin2(g, tol / pref)?.value)
}

/// `F(B, C)` for integer `B, C`.
pub fn f_lattice_int(b: i64, c: i64, tol: Real) -> Result<Real> {
    f_lattice(&LatticeSumSpec::from_ints(b, c)?, tol)
}

/// Exact coefficients `a_1..a_n` of an eta product with integer exponents.
pub fn eta_coeffs(f: &EtaProduct, n: usize) -> Result<Vec<i64>> {
    if f.leading_exponent() < Exponent::zero() {
        return Err(Error::Domain(format!("{f} has a negative leading exponent")));
    }
    let s = f.expansion(Exponent::from_integer(n as i64))?;
    let mut out = vec![0i64; n];
    for (e, c) in s.terms() {
        if !e.is_integer() || !c.is_integer() {
            return Err(Error::Domain(format!("{f} has the non-integral term {c} q^{e}")));
        }
        let k = e.to_integer();
        if k >= 1 && (k as usize) <= n {
            let v: BigInt = c.to_integer();
            out[k as usize - 1] = v
                .to_i64()
                .ok_or_else(|| Error::Domain(format!("coefficient of q^{k} overflows i64")))?;
        } else if k == 0 {
            return Err(Error::Domain(format!("{f} has a constant term")));
        }
    }
    Ok(out)
}

/// `(4 pi^2 / 15) m(1)`, the L-value side of the conductor-15 identity, via the hypergeometric form.
pub fn main_theorem_rhs() -> Result<Real> {
    Ok(4.0 * PI * PI / 15.0 * crate::hyper::m_alpha(1.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Real = 1e-12;

    #[test]
    fn spec_flags_integer_a() {
        let s = LatticeSumSpec::from_ints(3, 5).unwrap();
        assert_eq!(s.a, Ratio::from_integer(1));
        assert!(s.integer_a);
        let s = LatticeSumSpec::from_ints(3, 7).unwrap();
        assert_eq!(s.a, Ratio::new(3, 4));
        assert!(!s.integer_a && s.eta_product().is_none());
        assert_eq!(LatticeSumSpec::from_ints(1, 1).unwrap().eta_product().unwrap(), EtaProduct::from_ints(&[(6, 4)]));
        assert!(LatticeSumSpec::from_ints(0, 1).is_err());
    }

    #[test]
    fn cusp_precondition() {
        assert!(l_eta_cusp(&EtaProduct::from_ints(&[(1, 3)]), TOL).is_err());
        assert!(l_eta_cusp(&EtaProduct::from_ints(&[(1, 6), (3, -2)]), TOL).is_err());
    }

    #[test]
    fn coefficients() {
        let f = EtaProduct::from_ints(&[(1, 2), (11, 2)]);
        assert_eq!(&eta_coeffs(&f, 3).unwrap(), &[1, -2, -1]);
        let g = EtaProduct::from_ints(&[(6, 4)]);
        assert_eq!(&eta_coeffs(&g, 6).unwrap(), &[1, 0, 0, 0, 0, 0]);
        let h = EtaProduct::from_ints(&[(1, 1), (3, 1), (5, 1), (15, 1)]);
        assert_eq!(eta_coeffs(&h, 1).unwrap()[0], 1);
        assert!(eta_coeffs(&EtaProduct::from_ints(&[(1, 1)]), 3).is_err());
    }

    #[test]
    fn symmetric_in_b_and_c() {
        let a = f_lattice_int(3, 5, TOL).unwrap();
        let b = f_lattice_int(5, 3, TOL).unwrap();
        assert!((a - b).abs() < 1e-10);
        assert!((9.0 * a - 5.953_276_691_289_63).abs() < 1e-9, "{a}");
    }

    #[test]
    fn lattice_sum_equals_cusp_l_value() {
        let f = LatticeSumSpec::from_ints(1, 3).unwrap();
        let l = l_eta_cusp(&f.eta_product().unwrap(), TOL).unwrap();
        let v = f_lattice(&f, TOL).unwrap();
        assert!((l - v).abs() < 1e-10);
        assert!((v - 0.877_646_418_044_873).abs() < 1e-9);
    }

    #[test]
    fn conductor_fifteen() {
        let l = l_eta_cusp(&EtaProduct::from_ints(&[(1, 1), (3, 1), (5, 1), (15, 1)]), TOL).unwrap();
        assert!((l - 0.661_475_187_921_069_7).abs() < 1e-10, "{l}");
        assert!((l - main_theorem_rhs().unwrap()).abs() < 1e-10);
    }
}
