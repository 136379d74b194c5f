use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::algebra::{divmod, monic_gcd, Dense};
use crate::{Error, Real, Result};

/// Largest exponent magnitude accepted anywhere in a polynomial.
pub const MAX_EXPONENT: i64 = 64;

/// A two-variable Laurent polynomial with exact rational coefficients.
///
/// Keys are `(i, j)` for `X^i Y^j`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), BigRational>,
}

fn check_exp(e: i64) -> Result<i64> {
    if e.abs() > MAX_EXPONENT {
        Err(Error::ExponentOverflow(e))
    } else {
        Ok(e)
    }
}

fn rat_to_f64(r: &BigRational) -> Real {
    r.to_f64().unwrap_or(Real::NAN)
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, BigRational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, BigRational::one())
    }

    pub fn monomial(i: i64, j: i64, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        LaurentPoly2 { terms }
    }

    /// Builds from `(i, j, coefficient)` triples, summing repeats.
    pub fn from_int_terms(terms: &[(i64, i64, i64)]) -> Result<Self> {
        let mut p = Self::zero();
        for &(i, j, c) in terms {
            check_exp(i)?;
            check_exp(j)?;
            p.add_term((i, j), BigRational::from_integer(BigInt::from(c)));
        }
        Ok(p)
    }

    fn add_term(&mut self, key: (i64, i64), c: BigRational) {
        let e = self.terms.entry(key).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), BigRational> {
        &self.terms
    }

    pub fn support(&self) -> Vec<(i64, i64)> {
        self.terms.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i64, j: i64) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The single term, if this is a monomial.
    pub fn as_monomial(&self) -> Option<((i64, i64), &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    /// Product, failing if an exponent leaves `[-64, 64]`.
    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                out.add_term((check_exp(i1 + i2)?, check_exp(j1 + j2)?), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Power with a signed exponent; negative powers need a monomial.
    pub fn checked_pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            let ((i, j), c) = self
                .as_monomial()
                .ok_or_else(|| Error::Unsupported(format!("negative power of the non-monomial {self}")))?;
            let inv = Self::monomial(check_exp(-i)?, check_exp(-j)?, c.recip());
            return inv.checked_pow(-n);
        }
        check_exp(n)?;
        let mut acc = Self::from_int(1);
        for _ in 0..n {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Division by a nonzero monomial.
    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.checked_mul(&o.checked_pow(-1)?)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    /// `X^a Y^b P`.
    pub fn shift(&self, a: i64, b: i64) -> Result<Self> {
        self.map_keys(|(i, j)| Ok((check_exp(i + a)?, check_exp(j + b)?)))
    }

    /// `P(1/X, Y)`.
    pub fn invert_x(&self) -> Self {
        self.map_keys(|(i, j)| Ok((-i, j))).expect("negation preserves the exponent bound")
    }

    /// `P(Y, X)`.
    pub fn swap(&self) -> Self {
        self.map_keys(|(i, j)| Ok((j, i))).expect("swap preserves the exponent bound")
    }

    fn map_keys<F: Fn((i64, i64)) -> Result<(i64, i64)>>(&self, f: F) -> Result<Self> {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(f(*k)?, c.clone());
        }
        Ok(out)
    }

    /// True if no term involves `Y` (respectively `X` when `in_x` is false).
    pub fn is_free_of(&self, in_y: bool) -> bool {
        self.terms.keys().all(|&(i, j)| if in_y { j == 0 } else { i == 0 })
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| x.powi(i as i32) * y.powi(j as i32) * rat_to_f64(c))
            .sum()
    }

    /// Coefficients of `P(x, Y)` in ascending powers of `Y`, starting at the
    /// lowest `Y` exponent present.
    pub fn slice_in_y(&self, x: Complex64) -> Vec<Complex64> {
        let (lo, hi) = match self.y_range() {
            Some(r) => r,
            None => return Vec::new(),
        };
        let mut out = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (&(i, j), c) in &self.terms {
            out[(j - lo) as usize] += x.powi(i as i32) * rat_to_f64(c);
        }
        out
    }

    /// Smallest and largest exponent of `Y`.
    pub fn y_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|k| k.1).min()?;
        let hi = self.terms.keys().map(|k| k.1).max()?;
        Some((lo, hi))
    }

    /// Complex coefficients in ascending `X` powers, for a polynomial free of `Y`.
    pub fn univariate_x(&self) -> Vec<Complex64> {
        self.swap().slice_in_y(Complex64::new(1.0, 0.0))
    }

    /// Splits `P = c(X) Q` where `c` is the monic gcd of the `Y`-coefficients.
    ///
    /// `c` is returned in ascending powers from `X^0` and has a nonzero
    /// constant term. `None` when `c = 1`.
    pub fn x_content(&self) -> Option<(Vec<BigRational>, LaurentPoly2)> {
        let lo = self.terms.keys().map(|k| k.0).min()?;
        let mut columns: BTreeMap<i64, Dense> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let col = columns.entry(j).or_default();
            let k = (i - lo) as usize;
            if col.len() <= k {
                col.resize(k + 1, BigRational::zero());
            }
            col[k] = c.clone();
        }
        let g = columns.values().cloned().reduce(monic_gcd)?;
        let g = monic_gcd(g, Vec::new());
        if g.len() <= 1 {
            return None;
        }
        let mut rest = Self::zero();
        for (j, col) in &columns {
            for (k, c) in divmod(col, &g).0.into_iter().enumerate() {
                rest.add_term((lo + k as i64, *j), c);
            }
        }
        Some((g, rest))
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, o: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, o: &LaurentPoly2) -> LaurentPoly2 {
        self + &(-o)
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    /// Panics if an exponent leaves `[-64, 64]`; see [`LaurentPoly2::checked_mul`].
    fn mul(self, o: &LaurentPoly2) -> LaurentPoly2 {
        self.checked_mul(o).expect("exponent overflow in polynomial product")
    }
}

fn fmt_var(f: &mut fmt::Formatter<'_>, name: char, e: i64) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{name}"),
        _ => write!(f, "{name}^{e}"),
    }
}

impl fmt::Display for LaurentPoly2 {
    /// Renders in the parser's grammar, so the output parses back to `self`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if n > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let unit = a.is_one() && (i, j) != (0, 0);
            if !unit {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "({}/{})", a.numer(), a.denom())?;
                }
            }
            if i != 0 {
                if !unit {
                    write!(f, "*")?;
                }
                fmt_var(f, 'x', i)?;
            }
            if j != 0 {
                if !unit || i != 0 {
                    write!(f, "*")?;
                }
                fmt_var(f, 'y', j)?;
            }
        }
        Ok(())
    }
}
