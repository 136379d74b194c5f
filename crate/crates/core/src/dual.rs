//! Forward-mode automatic differentiation with first-order dual numbers.
//!
//! Used to differentiate the arctangent arguments in the elementary
//! integrals: the derivative of `atan(n/d)` is taken as
//! `(n' d - n d') / (n^2 + d^2)`, which is finite across poles of `n/d`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::Real;

/// `re + eps * e` with `e^2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub re: Real,
    pub eps: Real,
}

impl Dual {
    pub const fn new(re: Real, eps: Real) -> Self {
        Dual { re, eps }
    }

    /// The independent variable at `x`.
    pub const fn var(x: Real) -> Self {
        Dual { re: x, eps: 1.0 }
    }

    pub const fn cst(x: Real) -> Self {
        Dual { re: x, eps: 0.0 }
    }

    pub fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Dual::new(s, self.eps / (2.0 * s))
    }

    pub fn ln(self) -> Self {
        Dual::new(self.re.ln(), self.eps / self.re)
    }

    pub fn atan(self) -> Self {
        Dual::new(self.re.atan(), self.eps / (1.0 + self.re * self.re))
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Dual::cst(1.0);
        }
        let p = self.re.powi(n - 1);
        Dual::new(p * self.re, Real::from(n) * p * self.eps)
    }

    pub fn recip(self) -> Self {
        Dual::new(1.0 / self.re, -self.eps / (self.re * self.re))
    }
}

/// Derivative of `atan(num/den)` with respect to the dual variable.
pub fn atan_ratio_derivative(num: Dual, den: Dual) -> Real {
    (num.eps * den.re - num.re * den.eps) / (num.re * num.re + den.re * den.re)
}

impl From<Real> for Dual {
    fn from(x: Real) -> Self {
        Dual::cst(x)
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual::new(self.re * o.re, self.eps * o.re + self.re * o.eps)
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        let q = self.re / o.re;
        Dual::new(q, (self.eps - q * o.eps) / o.re)
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.re, -self.eps)
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Real> for Dual {
            type Output = Dual;
            fn $f(self, o: Real) -> Dual {
                self.$f(Dual::cst(o))
            }
        }
        impl $tr<Dual> for Real {
            type Output = Dual;
            fn $f(self, o: Dual) -> Dual {
                Dual::cst(self).$f(o)
            }
        }
    )*};
}

scalar_ops!(Add add, Sub sub, Mul mul, Div div);
