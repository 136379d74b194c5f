//! Exact polynomial arithmetic over Q: gcds and square-free parts in one
//! variable, and in `Y` over `Q[X]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::LaurentPoly2;

/// Dense one-variable polynomial over Q, ascending, no trailing zeros.
pub(crate) type Dense = Vec<BigRational>;

pub(crate) fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Quotient and remainder of `a / b`, `b` nonzero.
pub(crate) fn divmod(a: &[BigRational], b: &[BigRational]) -> (Dense, Dense) {
    let mut r: Dense = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead = &b[db];
    for k in (0..q.len()).rev() {
        let f = &r[k + db] / lead;
        if !f.is_zero() {
            for (t, bc) in b.iter().enumerate() {
                r[k + t] -= &f * bc;
            }
        }
        q[k] = f;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn derivative(p: &[BigRational]) -> Dense {
    p.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(BigInt::from(k))).collect()
}

fn sub_dense(a: &[BigRational], b: &[BigRational]) -> Dense {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).collect())
}

/// Square-free parts `(f_i, i)` of a monic `f = prod f_i^i`, by Yun's algorithm.
pub fn squarefree_parts(f: &[BigRational]) -> Vec<(Vec<BigRational>, usize)> {
    let f = trim(f.to_vec());
    let df = derivative(&f);
    if df.is_empty() {
        return Vec::new();
    }
    let a0 = monic_gcd(f.clone(), df.clone());
    let mut b = divmod(&f, &a0).0;
    let c = divmod(&df, &a0).0;
    let mut d = sub_dense(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = monic_gcd(b.clone(), d.clone());
        b = divmod(&b, &a).0;
        let c = divmod(&d, &a).0;
        d = sub_dense(&c, &derivative(&b));
        if a.len() > 1 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

pub(crate) fn monic_gcd(a: Dense, b: Dense) -> Dense {
    let (mut a, mut b) = (a, b);
    while !b.is_empty() {
        let r = divmod(&a, &b).1;
        a = b;
        b = r;
    }
    let lead = a.last().cloned().unwrap_or_else(BigRational::one);
    a.iter().map(|c| c / &lead).collect()
}

/// Polynomial in `Z[X]`, ascending, no trailing zeros.
type Z = Vec<BigInt>;
/// Polynomial in `Y` over `Z[X]`, ascending in `Y`, no trailing zero coefficients.
type ZBi = Vec<Z>;

fn z_trim(mut a: Z) -> Z {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn z_mul(a: &[BigInt], b: &[BigInt]) -> Z {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn z_sub(a: &[BigInt], b: &[BigInt]) -> Z {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    z_trim((0..n).map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).collect())
}

fn z_pow(a: &[BigInt], n: usize) -> Z {
    (0..n).fold(vec![BigInt::one()], |acc, _| z_mul(&acc, a))
}

fn int_content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// `a / b` when `b` divides `a` exactly in `Z[X]`.
fn z_div(a: &[BigInt], b: &[BigInt]) -> Z {
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lead = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let f = &r[k + db] / lead;
        if !f.is_zero() {
            for (t, bc) in b.iter().enumerate() {
                r[k + t] -= &f * bc;
            }
        }
        q[k] = f;
    }
    z_trim(q)
}

/// `lc(b)^(deg a - deg b + 1) a mod b` in `Z[X]`.
fn z_prem(a: &[BigInt], b: &[BigInt]) -> Z {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    for k in (0..a.len().saturating_sub(db)).rev() {
        let top = r[db + k].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (t, bc) in b.iter().enumerate() {
            r[k + t] -= &top * bc;
        }
    }
    r.truncate(db);
    z_trim(r)
}

/// Divides out the integer content and makes the leading coefficient positive.
fn z_primitive(a: &[BigInt]) -> Z {
    let mut g = int_content(a);
    if a.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    if g.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c / &g).collect()
}

fn z_gcd(a: &[BigInt], b: &[BigInt]) -> Z {
    if a.is_empty() {
        return z_primitive(b).into_iter().map(|c| c * int_content(b)).collect();
    }
    if b.is_empty() {
        return z_gcd(b, a);
    }
    let g = int_content(a).gcd(&int_content(b));
    let (mut a, mut b) = (z_primitive(a), z_primitive(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 {
        let r = z_primitive(&z_prem(&a, &b));
        a = std::mem::replace(&mut b, r);
    }
    if b.len() == 1 {
        return vec![g];
    }
    a.into_iter().map(|c| c * &g).collect()
}

fn zb_trim(mut a: ZBi) -> ZBi {
    while a.last().is_some_and(|c| c.is_empty()) {
        a.pop();
    }
    a
}

fn zb_content(a: &ZBi) -> Z {
    let mut g: Z = Vec::new();
    for c in a.iter().filter(|c| !c.is_empty()) {
        g = z_gcd(&g, c);
        if g.len() == 1 {
            let n = a.iter().fold(g[0].clone(), |n, c| n.gcd(&int_content(c)));
            return vec![n];
        }
    }
    g
}

/// Divides out the content in `Z[X]`, with a positive leading coefficient.
fn zb_primitive(a: &ZBi) -> ZBi {
    let mut c = zb_content(a);
    if c.is_empty() {
        return Vec::new();
    }
    if a.last().and_then(|x| x.last()).is_some_and(|v| v.is_negative()) {
        c = c.iter().map(|v| -v).collect();
    }
    zb_trim(a.iter().map(|x| z_div(x, &c)).collect())
}

/// `a - Y^k m b`.
fn zb_sub_shifted(a: &mut ZBi, b: &ZBi, k: usize, m: &[BigInt]) {
    if a.len() < b.len() + k {
        a.resize(b.len() + k, Vec::new());
    }
    for (j, c) in b.iter().enumerate() {
        a[j + k] = z_sub(&a[j + k], &z_mul(c, m));
    }
}

/// `lc(b)^(deg a - deg b + 1) a mod b` in `Y`.
fn zb_prem(a: &ZBi, b: &ZBi) -> ZBi {
    let lb = b.last().expect("nonzero divisor");
    let db = b.len() - 1;
    let mut r = a.clone();
    for k in (0..a.len() - db).rev() {
        let top = r.get(db + k).cloned().unwrap_or_default();
        r = r.iter().map(|c| z_mul(c, lb)).collect();
        if !top.is_empty() {
            zb_sub_shifted(&mut r, b, k, &top);
        }
    }
    r.truncate(db);
    zb_trim(r)
}

/// Gcd by the subresultant remainder sequence.
fn zb_gcd(a: &ZBi, b: &ZBi) -> ZBi {
    let c = z_gcd(&zb_content(a), &zb_content(b));
    let (mut a, mut b) = (zb_primitive(a), zb_primitive(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if !b.is_empty() {
        let (mut g, mut h) = (vec![BigInt::one()], vec![BigInt::one()]);
        loop {
            let delta = a.len() - b.len();
            let r = zb_prem(&a, &b);
            if r.is_empty() {
                break;
            }
            let scale = z_mul(&g, &z_pow(&h, delta));
            a = std::mem::replace(&mut b, r.iter().map(|x| z_div(x, &scale)).collect());
            g = a.last().cloned().expect("nonzero");
            if delta > 0 {
                h = z_div(&z_pow(&g, delta), &z_pow(&h, delta - 1));
            }
        }
        a = zb_primitive(&b);
    }
    a.iter().map(|x| z_mul(x, &c)).collect()
}

/// `a / b` when `b` divides `a` exactly.
fn zb_div(a: &ZBi, b: &ZBi) -> ZBi {
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.clone();
    let mut q: ZBi = vec![Vec::new(); a.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() {
        let m = z_div(r.last().expect("nonempty"), lb);
        let k = r.len() - b.len();
        zb_sub_shifted(&mut r, b, k, &m);
        r = zb_trim(r);
        q[k] = m;
    }
    zb_trim(q)
}

fn zb_dy(a: &ZBi) -> ZBi {
    zb_trim(a.iter().enumerate().skip(1).map(|(j, c)| c.iter().map(|v| v * BigInt::from(j)).collect()).collect())
}

fn zb_sub(a: &ZBi, b: &ZBi) -> ZBi {
    let n = a.len().max(b.len());
    let z = Vec::new();
    zb_trim((0..n).map(|j| z_sub(a.get(j).unwrap_or(&z), b.get(j).unwrap_or(&z))).collect())
}

/// Integer coefficients after clearing denominators and shifting exponents to start at 0.
fn to_zb(p: &LaurentPoly2) -> ZBi {
    let lo_x = p.terms().keys().map(|k| k.0).min().unwrap_or(0);
    let lo_y = p.terms().keys().map(|k| k.1).min().unwrap_or(0);
    let den = p.terms().values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut out: ZBi = Vec::new();
    for (&(i, j), c) in p.terms() {
        let (i, j) = ((i - lo_x) as usize, (j - lo_y) as usize);
        if out.len() <= j {
            out.resize(j + 1, Vec::new());
        }
        if out[j].len() <= i {
            out[j].resize(i + 1, BigInt::zero());
        }
        out[j][i] = c.numer() * (&den / c.denom());
    }
    out
}

fn from_zb(a: &ZBi) -> LaurentPoly2 {
    let mut out = LaurentPoly2::zero();
    for (j, col) in a.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &LaurentPoly2::monomial(i as i64, j as i64, BigRational::from_integer(c.clone()));
            }
        }
    }
    out
}

fn eval_z(a: &[BigInt], x: &BigInt) -> BigRational {
    BigRational::from_integer(a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c))
}

/// True if `f(x0, Y)` and `g(x0, Y)` are coprime for some small integer `x0`
/// at which the leading coefficient of `f` survives, which proves `gcd(f, g)` is free of `Y`.
fn coprime_at_some_point(f: &ZBi, g: &ZBi) -> bool {
    (2..6).any(|x0| {
        let x0 = BigInt::from(x0);
        let fy: Dense = f.iter().map(|c| eval_z(c, &x0)).collect();
        if fy.last().is_none_or(|c| c.is_zero()) {
            return false;
        }
        let gy: Dense = trim(g.iter().map(|c| eval_z(c, &x0)).collect());
        monic_gcd(trim(fy), gy).len() <= 1
    })
}

/// Square-free parts `(P_i, i)` in `Y` of a polynomial with no factor free of `Y`,
/// with `P = lambda X^a Y^b prod P_i^i` for a rational `lambda`.
pub fn squarefree_parts_y(p: &LaurentPoly2) -> Vec<(LaurentPoly2, usize)> {
    let f = zb_primitive(&to_zb(p));
    if f.len() <= 1 {
        return Vec::new();
    }
    let df = zb_dy(&f);
    if coprime_at_some_point(&f, &df) {
        return vec![(from_zb(&f), 1)];
    }
    let a0 = zb_gcd(&f, &df);
    let mut b = zb_div(&f, &a0);
    let mut d = zb_sub(&zb_div(&df, &a0), &zb_dy(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = zb_gcd(&b, &d);
        b = zb_div(&b, &a);
        d = zb_sub(&zb_div(&d, &a), &zb_dy(&b));
        if a.len() > 1 {
            out.push((from_zb(&a), i));
        }
        i += 1;
    }
    out
}
