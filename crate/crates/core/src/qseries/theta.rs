use num_bigint::BigInt;
use num_rational::BigRational;

use super::eta::EtaProduct;
use super::series::{Exponent, QExpansion};
use crate::Result;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `a(q) = sum q^(m^2+mn+n^2)` by lattice enumeration, to order `n_max`.
pub fn theta_a_series(n_max: i64) -> QExpansion {
    let n_max = n_max.max(0);
    let r = (2.0 * (n_max as f64).sqrt()).ceil() as i64;
    let mut counts = vec![0i64; n_max as usize + 1];
    for m in -r..=r {
        for n in -r..=r {
            let k = m * m + m * n + n * n;
            if k <= n_max {
                counts[k as usize] += 1;
            }
        }
    }
    let terms = counts.iter().enumerate().map(|(k, &c)| (Exponent::from_integer(k as i64), int(c)));
    QExpansion::from_terms(1, Exponent::from_integer(n_max), terms).expect("integer grid")
}

/// `b(q) = eta(q)^3 / eta(q^3)` by exact division.
pub fn b_series(order: i64) -> Result<QExpansion> {
    EtaProduct::from_ints(&[(1, 3), (3, -1)]).expansion(Exponent::from_integer(order))
}

/// `c(q) = 3 eta(q^3)^3 / eta(q)` by exact division.
pub fn c_series(order: i64) -> Result<QExpansion> {
    Ok(EtaProduct::from_ints(&[(1, -1), (3, 3)]).expansion(Exponent::from_integer(order))?.scale_int(3).normalized())
}

/// `b(q) = sum w^(m-n) q^(m^2+mn+n^2)` with `w` a primitive cube root of unity.
pub fn b_series_lattice(order: i64) -> QExpansion {
    let order = order.max(0);
    let r = (2.0 * (order as f64).sqrt()).ceil() as i64;
    // Twice the real part of w^k: 2 when 3 | k, else -1.
    let mut twice = vec![0i64; order as usize + 1];
    for m in -r..=r {
        for n in -r..=r {
            let k = m * m + m * n + n * n;
            if k <= order {
                twice[k as usize] += if (m - n).rem_euclid(3) == 0 { 2 } else { -1 };
            }
        }
    }
    let terms = twice
        .iter()
        .enumerate()
        .map(|(k, &c)| (Exponent::from_integer(k as i64), BigRational::new(BigInt::from(c), BigInt::from(2))));
    QExpansion::from_terms(1, Exponent::from_integer(order), terms).expect("integer grid")
}

/// `c(q) = sum q^((m+1/3)^2+(m+1/3)(n+1/3)+(n+1/3)^2)` by lattice enumeration.
pub fn c_series_lattice(order: i64) -> QExpansion {
    let order = order.max(0);
    // With M = 3m+1, N = 3n+1 the exponent is (M^2+MN+N^2)/9.
    let bound = 9 * order;
    let r = (2.0 * (bound as f64).sqrt()).ceil() as i64 + 1;
    let mut terms = Vec::new();
    for mm in -r..=r {
        for nn in -r..=r {
            let big_m = 3 * mm + 1;
            let big_n = 3 * nn + 1;
            let k = big_m * big_m + big_m * big_n + big_n * big_n;
            if k <= bound {
                terms.push((Exponent::new(k, 9), int(1)));
            }
        }
    }
    QExpansion::from_terms(9, Exponent::from_integer(order), terms).expect("grid 9").normalized()
}
