use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Real, Result};

/// Exponents and truncation orders are exact small rationals.
pub type Exponent = Ratio<i64>;

/// Largest grid denominator any operation may produce.
pub const MAX_GRID: i64 = 10_000;

/// Truncated series `sum c_k q^(k/den)` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExpansion {
    den: i64,
    terms: BTreeMap<i64, BigRational>,
    order: Exponent,
}

fn check_grid(den: i64) -> Result<i64> {
    if den <= 0 {
        return Err(Error::Domain(format!("grid denominator must be positive, got {den}")));
    }
    if den > MAX_GRID {
        return Err(Error::GridOverflow { den, bound: MAX_GRID });
    }
    Ok(den)
}

/// Largest numerator `k` with `k/den <= order`.
fn max_numerator(order: Exponent, den: i64) -> i64 {
    (order * den).floor().to_integer()
}

impl QExpansion {
    /// The zero series on grid `1/den`, known up to `order`.
    pub fn zero(den: i64, order: Exponent) -> Result<Self> {
        Ok(QExpansion { den: check_grid(den)?, terms: BTreeMap::new(), order })
    }

    pub fn one(order: Exponent) -> Self {
        let mut s = QExpansion { den: 1, terms: BTreeMap::new(), order };
        s.add_term(0, BigRational::one());
        s
    }

    /// `coef * q^exp` truncated at `order`.
    pub fn monomial(coef: BigRational, exp: Exponent, order: Exponent) -> Result<Self> {
        let den = check_grid(*exp.denom())?;
        let mut s = QExpansion { den, terms: BTreeMap::new(), order };
        s.add_term(*exp.numer(), coef);
        Ok(s)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; terms above
    /// `order` are dropped and repeated exponents accumulate.
    pub fn from_terms<I>(den: i64, order: Exponent, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut s = QExpansion::zero(den, order)?;
        for (e, c) in terms {
            let k = e * den;
            if !k.is_integer() {
                return Err(Error::GridIncompatible { exponent: e.to_string(), den });
            }
            s.add_term(k.to_integer(), c);
        }
        Ok(s)
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn order(&self) -> Exponent {
        self.order
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigRational)> + '_ {
        self.terms.iter().map(move |(&k, c)| (Exponent::new(k, self.den), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^exp`; `None` when `exp` exceeds the order.
    pub fn coeff(&self, exp: Exponent) -> Option<BigRational> {
        if exp > self.order {
            return None;
        }
        let k = exp * self.den;
        if !k.is_integer() {
            return Some(BigRational::zero());
        }
        Some(self.terms.get(&k.to_integer()).cloned().unwrap_or_else(BigRational::zero))
    }

    /// Exponent of the lowest nonzero term.
    pub fn leading_exponent(&self) -> Option<Exponent> {
        self.terms.keys().next().map(|&k| Exponent::new(k, self.den))
    }

    fn add_term(&mut self, k: i64, c: BigRational) {
        if c.is_zero() || Exponent::new(k, self.den) > self.order {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Moves the series to the finer grid `1/den`, a multiple of the current one.
    pub fn regrid(&self, den: i64) -> Result<Self> {
        check_grid(den)?;
        if den % self.den != 0 {
            return Err(Error::Domain(format!("grid 1/{den} does not refine 1/{}", self.den)));
        }
        let f = den / self.den;
        Ok(QExpansion {
            den,
            terms: self.terms.iter().map(|(&k, c)| (k * f, c.clone())).collect(),
            order: self.order,
        })
    }

    /// Coarsest grid carrying every stored exponent.
    pub fn normalized(&self) -> Self {
        let g = self.terms.keys().fold(self.den, |g, &k| g.gcd(&k));
        if g <= 1 {
            return self.clone();
        }
        QExpansion {
            den: self.den / g,
            terms: self.terms.iter().map(|(&k, c)| (k / g, c.clone())).collect(),
            order: self.order,
        }
    }

    /// Drops every term above `order`; the order can only go down.
    pub fn truncate(&self, order: Exponent) -> Self {
        let order = order.min(self.order);
        let kmax = max_numerator(order, self.den);
        QExpansion {
            den: self.den,
            terms: self.terms.range(..=kmax).map(|(&k, c)| (k, c.clone())).collect(),
            order,
        }
    }

    fn common_grid(&self, other: &Self) -> Result<(Self, Self)> {
        let den = check_grid(self.den.lcm(&other.den))?;
        Ok((self.regrid(den)?, other.regrid(den)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common_grid(other)?;
        let mut a = a.truncate(b.order);
        for (&k, c) in &b.terms {
            a.add_term(k, c.clone());
        }
        Ok(a)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(&k, v)| (k, v * c)).collect()
        };
        QExpansion { den: self.den, terms, order: self.order }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common_grid(other)?;
        let mut order = a.order.min(b.order);
        if let (Some(la), Some(lb)) = (a.leading_exponent(), b.leading_exponent()) {
            order = order.min(a.order + lb).min(b.order + la);
        }
        let kmax = max_numerator(order, a.den);
        let mut out = QExpansion { den: a.den, terms: BTreeMap::new(), order };
        for (&ka, ca) in &a.terms {
            for (&kb, cb) in b.terms.range(..=kmax - ka) {
                out.add_term(ka + kb, ca * cb);
            }
        }
        Ok(out)
    }

    /// Exact quotient by long division on the common grid.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common_grid(other)?;
        let Some((&klb, lead)) = b.terms.iter().next() else {
            return Err(Error::SeriesDivision);
        };
        let lead = lead.clone();
        let den = a.den;
        let lb = Exponent::new(klb, den);
        let la = a.leading_exponent().unwrap_or(a.order);
        let order = (a.order - lb).min(b.order - lb - lb + la).min(a.order).min(b.order);
        let kmax = max_numerator(order, den);
        let mut quotient = QExpansion { den, terms: BTreeMap::new(), order };
        let mut rem: BTreeMap<i64, BigRational> =
            a.terms.range(..=kmax + klb).map(|(&k, c)| (k, c.clone())).collect();
        while let Some((k, ck)) = rem.pop_first() {
            let kq = k - klb;
            if kq > kmax {
                break;
            }
            let c = ck / &lead;
            for (&kb, cb) in b.terms.iter().skip(1) {
                let kk = kq + kb;
                if kk > kmax + klb {
                    break;
                }
                let e = rem.entry(kk).or_insert_with(BigRational::zero);
                *e -= &c * cb;
                if e.is_zero() {
                    rem.remove(&kk);
                }
            }
            quotient.terms.insert(kq, c);
        }
        Ok(quotient)
    }

    /// Integer power; negative powers divide into one.
    pub fn pow(&self, n: i32) -> Result<Self> {
        if n < 0 {
            let p = self.pow(-n)?;
            return QExpansion::one(p.order).div(&p);
        }
        let mut result = QExpansion::one(self.order);
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Substitution `q -> q^r` for rational `r > 0`; the order scales by `r`.
    pub fn subst(&self, r: Exponent) -> Result<Self> {
        if r <= Exponent::zero() {
            return Err(Error::Domain(format!("substitution exponent must be positive, got {r}")));
        }
        let (p, s) = (*r.numer(), *r.denom());
        let den = self
            .den
            .checked_mul(s)
            .ok_or(Error::GridOverflow { den: i64::MAX, bound: MAX_GRID })?;
        let g = p.gcd(&den);
        let out = QExpansion {
            den: den / g,
            terms: self.terms.iter().map(|(&k, c)| (k * (p / g), c.clone())).collect(),
            order: self.order * r,
        }
        .normalized();
        check_grid(out.den)?;
        Ok(out)
    }

    /// True when every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Value at `0 < q < 1` of the stored truncation.
    pub fn evaluate(&self, q: Real) -> Real {
        let lq = q.ln();
        self.terms
            .iter()
            .map(|(&k, c)| {
                let cf = c.to_f64().unwrap_or(Real::NAN);
                cf * (lq * k as Real / self.den as Real).exp()
            })
            .sum()
    }

    /// Sorted `exponent<TAB>coefficient` lines, exponents as exact fractions.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.terms() {
            out.push_str(&format!("{e}\t{c}\n"));
        }
        out
    }

    /// Largest absolute coefficient as a float.
    pub fn max_abs_coeff(&self) -> Real {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(Real::INFINITY))
            .fold(0.0, Real::max)
    }
}

impl fmt::Display for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*q^({e})")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^({}))", self.order)
    }
}

/// Outcome of a coefficientwise comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesComparison {
    pub equal: bool,
    pub checked_to: Exponent,
    pub mismatches: usize,
    /// Smallest offending exponent with the two coefficients.
    pub first_failure: Option<(Exponent, BigRational, BigRational)>,
}

/// Compares `lhs` and `rhs` exactly for all exponents `<= order`.
pub fn assert_series_identity(lhs: &QExpansion, rhs: &QExpansion, order: Exponent) -> Result<SeriesComparison> {
    for s in [lhs, rhs] {
        if s.order() < order {
            return Err(Error::InsufficientOrder { have: s.order().to_string(), need: order.to_string() });
        }
    }
    let diff = lhs.truncate(order).sub(&rhs.truncate(order))?;
    let first_failure = diff.leading_exponent().map(|e| {
        let l = lhs.coeff(e).unwrap_or_else(BigRational::zero);
        let r = rhs.coeff(e).unwrap_or_else(BigRational::zero);
        (e, l, r)
    });
    Ok(SeriesComparison { equal: diff.is_empty(), checked_to: order, mismatches: diff.len(), first_failure })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn ex(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    fn geometric(order: i64) -> QExpansion {
        QExpansion::from_terms(1, ex(order, 1), (0..=order).map(|k| (ex(k, 1), r(1)))).unwrap()
    }

    fn one_minus_q(order: i64) -> QExpansion {
        QExpansion::from_terms(1, ex(order, 1), [(ex(0, 1), r(1)), (ex(1, 1), r(-1))]).unwrap()
    }

    #[test]
    fn one_minus_q_times_geometric_is_one() {
        let prod = one_minus_q(25).mul(&geometric(25)).unwrap();
        let cmp = assert_series_identity(&prod, &QExpansion::one(ex(25, 1)), ex(25, 1)).unwrap();
        assert!(cmp.equal, "{prod}");
    }

    #[test]
    fn division_inverts_multiplication() {
        let g = geometric(20);
        let q = QExpansion::one(ex(20, 1)).div(&one_minus_q(20)).unwrap();
        assert!(assert_series_identity(&q, &g, ex(20, 1)).unwrap().equal);
        assert_eq!(g.pow(-1).unwrap(), one_minus_q(20));
    }

    #[test]
    fn substitution_identity_and_inverse() {
        let s = QExpansion::from_terms(3, ex(10, 1), [(ex(1, 3), r(2)), (ex(2, 1), r(-5)), (ex(7, 3), r(1))])
            .unwrap();
        assert_eq!(s.subst(ex(1, 1)).unwrap(), s.normalized());
        let back = s.subst(ex(2, 1)).unwrap().subst(ex(1, 2)).unwrap();
        assert!(assert_series_identity(&back, &s, ex(10, 1)).unwrap().equal);
        assert_eq!(s.subst(ex(3, 1)).unwrap().order(), ex(30, 1));
    }

    #[test]
    fn order_never_extends() {
        let a = geometric(10);
        let b = geometric(30);
        assert_eq!(a.add(&b).unwrap().order(), ex(10, 1));
        assert_eq!(a.mul(&b).unwrap().order(), ex(10, 1));
        assert!(a.div(&b).unwrap().order() <= ex(10, 1));
    }

    #[test]
    fn grid_overflow_is_reported() {
        let a = QExpansion::zero(9_999, ex(1, 1)).unwrap();
        let b = QExpansion::zero(9_998, ex(1, 1)).unwrap();
        assert!(matches!(a.add(&b), Err(Error::GridOverflow { .. })));
        assert!(matches!(QExpansion::zero(20_000, ex(1, 1)), Err(Error::GridOverflow { .. })));
    }

    #[test]
    fn off_grid_terms_are_rejected() {
        let e = QExpansion::from_terms(2, ex(1, 1), [(ex(1, 3), r(1))]);
        assert!(matches!(e, Err(Error::GridIncompatible { den: 2, .. })));
    }

    #[test]
    fn comparison_reports_first_failure() {
        let a = QExpansion::from_terms(2, ex(5, 1), [(ex(1, 2), r(1)), (ex(3, 2), r(4))]).unwrap();
        let b = QExpansion::from_terms(2, ex(5, 1), [(ex(1, 2), r(1)), (ex(3, 2), r(3))]).unwrap();
        let cmp = assert_series_identity(&a, &b, ex(5, 1)).unwrap();
        assert!(!cmp.equal);
        assert_eq!(cmp.first_failure, Some((ex(3, 2), r(4), r(3))));
        assert!(matches!(assert_series_identity(&a, &b, ex(6, 1)), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn render_uses_exact_fractions() {
        let a = QExpansion::from_terms(24, ex(2, 1), [(ex(1, 24), r(1)), (ex(25, 24), r(-1))]).unwrap();
        assert_eq!(a.render(), "1/24\t1\n25/24\t-1\n");
    }
}
