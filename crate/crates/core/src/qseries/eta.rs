use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::numeric::log_eta;
use super::series::{Exponent, QExpansion};
use crate::{Error, Real, Result};

/// `sum_n (-1)^n q^(scale (6n+1)^2 / 24)` on grid `1/den`, truncated at `order`.
pub fn eta_series(scale: Exponent, den: i64, order: Exponent) -> Result<QExpansion> {
    if scale <= Exponent::zero() {
        return Err(Error::Domain(format!("eta scale must be positive, got {scale}")));
    }
    let lead = scale / 24;
    if den % lead.denom() != 0 {
        return Err(Error::GridIncompatible { exponent: lead.to_string(), den });
    }
    let mut terms = Vec::new();
    for sign in [1i64, -1] {
        // n >= 0 gives 6n+1 = 1, 7, 13, ...; n < 0 gives 5, 11, 17, ...
        let mut n: i64 = if sign == 1 { 0 } else { -1 };
        loop {
            let m = 6 * n + 1;
            let e = scale * Exponent::from_integer(m * m) / 24;
            if e > order {
                break;
            }
            let c = if n.is_even() { 1 } else { -1 };
            terms.push((e, BigRational::from_integer(BigInt::from(c))));
            n += sign;
        }
    }
    QExpansion::from_terms(den, order, terms)
}

/// A finite product `prod eta(q^scale)^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaProduct {
    factors: Vec<(Exponent, i32)>,
}

impl EtaProduct {
    /// Merges repeated scales, drops zero powers and sorts by scale.
    pub fn new<I: IntoIterator<Item = (Exponent, i32)>>(factors: I) -> Result<Self> {
        let mut merged: Vec<(Exponent, i32)> = Vec::new();
        for (s, p) in factors {
            if s <= Exponent::zero() {
                return Err(Error::Domain(format!("eta scale must be positive, got {s}")));
            }
            match merged.iter_mut().find(|(t, _)| *t == s) {
                Some(f) => f.1 += p,
                None => merged.push((s, p)),
            }
        }
        merged.retain(|&(_, p)| p != 0);
        merged.sort();
        Ok(EtaProduct { factors: merged })
    }

    /// Integer scales with powers, e.g. `&[(1, 1), (3, 1), (5, 1), (15, 1)]`.
    pub fn from_ints(factors: &[(i64, i32)]) -> Self {
        Self::new(factors.iter().map(|&(s, p)| (Exponent::from_integer(s), p))).expect("positive scales")
    }

    pub fn factors(&self) -> &[(Exponent, i32)] {
        &self.factors
    }

    /// Sum of the powers; 4 for a weight-2 form.
    pub fn total_power(&self) -> i32 {
        self.factors.iter().map(|&(_, p)| p).sum()
    }

    /// `sum power * scale / 24`.
    pub fn leading_exponent(&self) -> Exponent {
        self.factors
            .iter()
            .fold(Exponent::zero(), |acc, &(s, p)| acc + s * Exponent::from_integer(p as i64) / 24)
    }

    pub fn is_weight2_cusp_shape(&self) -> bool {
        self.total_power() == 4 && self.leading_exponent() > Exponent::zero()
    }

    /// Smallest grid carrying every factor's exponents.
    pub fn grid(&self) -> i64 {
        self.factors.iter().fold(1, |g: i64, &(s, _)| g.lcm((s / 24).denom()))
    }

    /// Exact expansion up to `order`.
    pub fn expansion(&self, order: Exponent) -> Result<QExpansion> {
        let den = self.grid();
        let slack = self
            .factors
            .iter()
            .fold(Exponent::one(), |acc, &(s, p)| acc + s * Exponent::from_integer(p.abs() as i64) / 24);
        let work = order + slack;
        let mut acc = QExpansion::one(work);
        for &(s, p) in &self.factors {
            acc = acc.mul(&eta_series(s, den, work)?.pow(p)?)?;
        }
        if acc.order() < order {
            return Err(Error::InsufficientOrder { have: acc.order().to_string(), need: order.to_string() });
        }
        Ok(acc.truncate(order))
    }

    /// `log prod eta(e^{-scale h})^power` for `h > 0`.
    pub fn log_eval_h(&self, h: Real) -> Real {
        self.factors
            .iter()
            .map(|&(s, p)| p as Real * log_eta(ratio_to_f64(s) * h))
            .sum()
    }

    /// Value at `q = e^{-h}`.
    pub fn eval_h(&self, h: Real) -> Real {
        self.log_eval_h(h).exp()
    }
}

pub(crate) fn ratio_to_f64(r: Exponent) -> Real {
    *r.numer() as Real / *r.denom() as Real
}

impl fmt::Display for EtaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|(s, p)| format!("{s}^{p}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for EtaProduct {
    type Err = Error;

    /// Comma list of `scale^power`, e.g. `6^4` or `3^2,9^2`; a bare scale means power 1.
    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let bad = |m: &str| Error::Syntax { offset, message: format!("{m} in eta factor '{}'", part.trim()) };
            let (scale, power) = match part.split_once('^') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (part.trim(), "1"),
            };
            let scale: Exponent = scale.parse().map_err(|_| bad("invalid scale"))?;
            let power: i32 = power.parse().map_err(|_| bad("invalid power"))?;
            if scale <= Exponent::zero() {
                return Err(bad("non-positive scale"));
            }
            factors.push((scale, power));
            offset += part.len() + 1;
        }
        Self::new(factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::assert_series_identity;

    fn ex(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    fn coeff(s: &QExpansion, n: i64, d: i64) -> BigRational {
        s.coeff(ex(n, d)).unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn pentagonal_coefficients() {
        let e = eta_series(ex(1, 1), 24, ex(6, 1)).unwrap();
        assert_eq!(coeff(&e, 1, 24), int(1));
        assert_eq!(coeff(&e, 25, 24), int(-1));
        assert_eq!(coeff(&e, 49, 24), int(-1));
        assert_eq!(coeff(&e, 121, 24), int(1));
        assert_eq!(coeff(&e, 2, 24), int(0));
    }

    #[test]
    fn scale_three_is_substitution() {
        let e1 = eta_series(ex(1, 1), 24, ex(10, 1)).unwrap();
        let e3 = eta_series(ex(3, 1), 8, ex(30, 1)).unwrap();
        assert!(assert_series_identity(&e3, &e1.subst(ex(3, 1)).unwrap(), ex(30, 1)).unwrap().equal);
    }

    #[test]
    fn matches_product_form() {
        let order = 30;
        let mut prod = QExpansion::monomial(int(1), ex(1, 24), ex(order, 1)).unwrap();
        for n in 1..=order {
            let f = QExpansion::from_terms(1, ex(order, 1), [(ex(0, 1), int(1)), (ex(n, 1), int(-1))]).unwrap();
            prod = prod.mul(&f).unwrap();
        }
        let e = eta_series(ex(1, 1), 24, ex(order, 1)).unwrap();
        assert!(assert_series_identity(&prod, &e, ex(order, 1)).unwrap().equal);
    }

    #[test]
    fn grid_incompatibility() {
        assert!(matches!(eta_series(ex(1, 1), 12, ex(2, 1)), Err(Error::GridIncompatible { .. })));
        assert!(eta_series(ex(3, 1), 8, ex(2, 1)).is_ok());
    }

    #[test]
    fn parse_and_leading_exponent() {
        let f: EtaProduct = "3^2,9^2".parse().unwrap();
        assert_eq!(f.factors(), &[(ex(3, 1), 2), (ex(9, 1), 2)]);
        assert_eq!(f.leading_exponent(), ex(1, 1));
        assert!(f.is_weight2_cusp_shape());
        let g: EtaProduct = "6^4".parse().unwrap();
        assert_eq!(g.expansion(ex(20, 1)).unwrap().leading_exponent(), Some(g.leading_exponent()));
        assert!("6^x".parse::<EtaProduct>().is_err());
        assert!("0^2".parse::<EtaProduct>().is_err());
        assert_eq!("1,1^-1".parse::<EtaProduct>().unwrap().factors(), &[]);
    }

    #[test]
    fn quotient_expansion_is_exact() {
        // eta(q)^3 / eta(q^3) expands as 1 - 3q + 6q^3 + ...
        let b = EtaProduct::from_ints(&[(1, 3), (3, -1)]).expansion(ex(4, 1)).unwrap();
        assert_eq!(coeff(&b, 0, 1), int(1));
        assert_eq!(coeff(&b, 1, 1), int(-3));
        assert_eq!(coeff(&b, 2, 1), int(0));
        assert_eq!(coeff(&b, 3, 1), int(6));
        assert_eq!(b.order(), ex(4, 1));
    }
}
