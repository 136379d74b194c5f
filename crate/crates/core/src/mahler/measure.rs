use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use super::algebra::{squarefree_parts, squarefree_parts_y};
use super::poly::LaurentPoly2;
use crate::consts::{PI, TAU};
use crate::par::{self, Parallelism};
use crate::quad::{integrate, Quadrature};
use crate::{Error, Real, Result};

/// Largest degree accepted after stripping.
pub const MAX_DEGREE: usize = 64;
/// Coefficients below this fraction of the largest are treated as zero.
pub const STRIP_THRESHOLD: Real = 1e-30;
/// Roots within this distance of the unit circle make an outside count ambiguous.
pub const CIRCLE_GUARD: Real = 1e-12;
/// Number of `theta` panels integrated independently by [`mahler_2var`].
pub const THETA_CHUNKS: usize = 8;
/// Cells on `[0, 1/2]` scanned for roots crossing the unit circle.
pub const CROSSING_GRID: usize = 512;
/// Roots within this margin outside the circle still count as inside when
/// locating crossings.
pub const CROSSING_MARGIN: Real = 1e-9;
/// Roots closer than this (relative to `max(1, |z|)`) are treated as one multiple root.
pub const CLUSTER_RADIUS: Real = 1e-5;

/// Drops negligible leading and trailing coefficients; `None` for the zero polynomial.
fn strip(coeffs: &[Complex64]) -> Option<&[Complex64]> {
    let big = coeffs.iter().map(|c| c.norm()).fold(0.0, Real::max);
    if big == 0.0 || !big.is_finite() {
        return None;
    }
    let keep = |c: &Complex64| c.norm() > STRIP_THRESHOLD * big;
    let lo = coeffs.iter().position(keep)?;
    let hi = coeffs.iter().rposition(keep)?;
    Some(&coeffs[lo..=hi])
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Power-of-two diagonal balancing, in place.
fn balance(m: &mut DMatrix<Complex64>) {
    let n = m.nrows();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let (mut r, mut c) = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].norm();
                    r += m[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let (mut cc, rr) = (c, r);
            while cc < rr / 2.0 {
                cc *= 4.0;
                f *= 2.0;
            }
            while cc >= rr * 2.0 {
                cc /= 4.0;
                f /= 2.0;
            }
            if (c * f + r / f) < 0.95 * s {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// Roots of `sum coeffs[k] z^k` after stripping, zero roots from a monomial factor excluded.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let p = strip(coeffs).ok_or(Error::ZeroPolynomial)?;
    let d = p.len() - 1;
    if d > MAX_DEGREE {
        return Err(Error::Unsupported(format!("degree {d} exceeds {MAX_DEGREE}")));
    }
    match d {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-p[0] / p[1]]),
        _ => {}
    }
    let lead = p[d];
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for k in 0..d {
        m[(0, k)] = -p[d - 1 - k] / lead;
        if k + 1 < d {
            m[(k + 1, k)] = Complex64::new(1.0, 0.0);
        }
    }
    balance(&mut m);
    let eig: Vec<Complex64> = match Schur::try_new(m, Real::EPSILON, 30 * d.max(4)) {
        Some(s) => {
            let (_, t) = s.unpack();
            (0..d).map(|k| t[(k, k)]).collect()
        }
        None => aberth(p)?,
    };
    let mut eig = eig;
    let clustered = merge_clusters(&mut eig);
    Ok(eig
        .into_iter()
        .zip(clustered)
        .map(|(z, c)| {
            if c {
                return z;
            }
            let (pz, dpz) = horner(p, z);
            if dpz.norm() == 0.0 {
                return z;
            }
            let z1 = z - pz / dpz;
            if horner(p, z1).0.norm() <= pz.norm() {
                z1
            } else {
                z
            }
        })
        .collect())
}

/// Replaces each group of nearby roots by copies of its centroid, which a
/// multiple root's perturbed copies locate far more accurately than any one of
/// them. Returns which entries were merged.
fn merge_clusters(z: &mut [Complex64]) -> Vec<bool> {
    let n = z.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn root(g: &mut [usize], mut i: usize) -> usize {
        while g[i] != i {
            g[i] = g[g[i]];
            i = g[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).norm() <= CLUSTER_RADIUS * z[i].norm().max(1.0) {
                let (a, b) = (root(&mut group, i), root(&mut group, j));
                group[a.max(b)] = a.min(b);
            }
        }
    }
    let mut merged = vec![false; n];
    for i in 0..n {
        let g = root(&mut group, i);
        if g != i {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&k| root(&mut group, k) == g).collect();
        if members.len() > 1 {
            let c = members.iter().map(|&k| z[k]).sum::<Complex64>() / members.len() as Real;
            for k in members {
                z[k] = c;
                merged[k] = true;
            }
        }
    }
    merged
}

/// Simultaneous Aberth–Ehrlich iteration from points on a circle.
fn aberth(p: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = p.len() - 1;
    let lead = p[d].norm();
    let radius = p[..d].iter().map(|c| c.norm() / lead).fold(0.0, Real::max).max(1e-300);
    let r0 = radius.powf(1.0 / d as Real).max(0.5);
    let mut z: Vec<Complex64> =
        (0..d).map(|k| Complex64::from_polar(r0, TAU * (k as Real + 0.25) / d as Real)).collect();
    for _ in 0..500 {
        let mut moved: Real = 0.0;
        for k in 0..d {
            let (pz, dpz) = horner(p, z[k]);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / dpz;
            let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[k] -= w;
            moved = moved.max(w.norm() / z[k].norm().max(1e-300));
        }
        if moved < 1e-15 {
            return Ok(z);
        }
    }
    Err(Error::Unsupported("root iteration did not converge".into()))
}

/// `log|lead| + sum log+ |root|` for `sum coeffs[k] z^k`.
///
/// When the trailing coefficient dominates the leading one the reversed
/// polynomial is used instead; both have the same measure.
pub fn mahler_1var(coeffs: &[Complex64]) -> Result<Real> {
    let p = strip(coeffs).ok_or(Error::ZeroPolynomial)?;
    let (lead, trail) = (p[p.len() - 1], p[0]);
    let rev: Vec<Complex64>;
    let q = if lead.norm() < trail.norm() {
        rev = p.iter().rev().copied().collect();
        &rev[..]
    } else {
        p
    };
    let roots = poly_roots(q)?;
    let lead = q[q.len() - 1];
    Ok(lead.norm().ln() + roots.iter().map(|r| r.norm().ln().max(0.0)).sum::<Real>())
}

/// Real coefficients in ascending order.
pub fn mahler_1var_real(coeffs: &[Real]) -> Result<Real> {
    let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    mahler_1var(&c)
}

/// Number of roots outside the circle of the given radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutsideRoots {
    pub count: usize,
    /// Roots within [`CIRCLE_GUARD`] of the circle; nonzero means `count` is ambiguous.
    pub near_circle: usize,
}

pub fn outside_root_count(coeffs: &[Complex64], radius: Real) -> Result<OutsideRoots> {
    let roots = poly_roots(coeffs)?;
    let mut out = OutsideRoots { count: 0, near_circle: 0 };
    for r in roots {
        let d = r.norm() - radius;
        if d.abs() <= CIRCLE_GUARD {
            out.near_circle += 1;
        } else if d > 0.0 {
            out.count += 1;
        }
    }
    Ok(out)
}

/// The one-variable polynomial `P(e^{2 pi i theta}, Y)` with its roots.
#[derive(Debug, Clone, PartialEq)]
pub struct JensenSlice {
    pub theta: Real,
    /// Ascending powers of `Y` from the lowest exponent present in `P`.
    pub coeffs: Vec<Complex64>,
    pub roots: Vec<Complex64>,
}

impl JensenSlice {
    pub fn new(p: &LaurentPoly2, theta: Real) -> Result<Self> {
        let coeffs = p.slice_in_y(Complex64::from_polar(1.0, TAU * theta));
        let roots = poly_roots(&coeffs)?;
        Ok(JensenSlice { theta, coeffs, roots })
    }

    pub fn measure(&self) -> Result<Real> {
        mahler_1var(&self.coeffs)
    }

    /// `|sum log|root| - log|trail/lead||`, zero up to rounding.
    pub fn consistency_residual(&self) -> Real {
        let p = match strip(&self.coeffs) {
            Some(p) => p,
            None => return Real::NAN,
        };
        let ratio = (p[0] / p[p.len() - 1]).norm().ln();
        (self.roots.iter().map(|r| r.norm().ln()).sum::<Real>() - ratio).abs()
    }
}

/// `m(P)` by Jensen's formula in `Y` and adaptive quadrature in `theta`.
///
/// Coefficients are real, so the slices at `theta` and `1 - theta` are
/// conjugate and only `[0, 1/2]` is integrated. The integrand has a kink
/// wherever a root of the slice crosses `|Y| = 1`; those points are located
/// first and become panel boundaries, along with a uniform split into
/// [`THETA_CHUNKS`] panels.
pub fn mahler_2var(p: &LaurentPoly2, tol: Real) -> Result<Quadrature> {
    mahler_2var_with(p, tol, Parallelism::default())
}

/// Slice outside-count, with a margin so roots lying on the circle over a
/// whole interval do not flicker.
fn crossing_count(p: &LaurentPoly2, theta: Real) -> usize {
    outside_root_count(&p.slice_in_y(Complex64::from_polar(1.0, TAU * theta)), 1.0 + CROSSING_MARGIN)
        .map(|o| o.count)
        .unwrap_or(usize::MAX)
}

/// Points of `(0, 1/2)` where a slice root crosses the unit circle, as seen on
/// a grid of [`CROSSING_GRID`] cells and refined by bisection.
fn crossings(p: &LaurentPoly2, mode: Parallelism) -> Vec<Real> {
    let h = 0.5 / CROSSING_GRID as Real;
    let counts = par::map_range(CROSSING_GRID + 1, mode, |k| crossing_count(p, k as Real * h));
    let cells: Vec<usize> = (0..CROSSING_GRID).filter(|&k| counts[k] != counts[k + 1]).collect();
    par::map(&cells, mode, |&k| {
        let (mut a, mut b) = (k as Real * h, (k + 1) as Real * h);
        let ca = counts[k];
        while b - a > 1e-15 {
            let mid = 0.5 * (a + b);
            if crossing_count(p, mid) == ca {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    })
}

/// `m` of an exact one-variable polynomial, root-finding on its square-free parts.
fn content_measure(c: &[num_rational::BigRational]) -> Result<Real> {
    let mut m = 0.0;
    for (f, k) in squarefree_parts(c) {
        let f: Vec<Complex64> = f.iter().map(|r| Complex64::new(r.to_f64().unwrap_or(Real::NAN), 0.0)).collect();
        m += k as Real * mahler_1var(&f)?;
    }
    Ok(m)
}

pub fn mahler_2var_with(p: &LaurentPoly2, tol: Real, mode: Parallelism) -> Result<Quadrature> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    for swapped in [false, true] {
        let split = if swapped { p.swap().x_content().map(|(c, r)| (c, r.swap())) } else { p.x_content() };
        if let Some((c, rest)) = split {
            let q = mahler_2var_with(&rest, tol, mode)?;
            return Ok(Quadrature { value: q.value + content_measure(&c)?, ..q });
        }
    }
    let parts = squarefree_parts_y(p);
    let weight: usize = parts.iter().map(|q| q.1).sum();
    if weight > 1 {
        let lead = |r: &LaurentPoly2| r.terms().values().next_back().cloned().expect("nonzero polynomial");
        let mut lambda = lead(p);
        for (q, k) in &parts {
            lambda /= num_traits::pow(lead(q), *k);
        }
        let mut acc = Quadrature { value: lambda.abs().to_f64().unwrap_or(Real::NAN).ln(), err_estimate: 0.0, evaluations: 0 };
        for (q, k) in &parts {
            let r = mahler_2var_with(q, tol / weight as Real, mode)?;
            acc.value += *k as Real * r.value;
            acc.err_estimate += *k as Real * r.err_estimate;
            acc.evaluations += r.evaluations;
        }
        return Ok(acc);
    }
    if p.is_free_of(true) || p.is_free_of(false) {
        let coeffs = if p.is_free_of(true) { p.univariate_x() } else { p.slice_in_y(Complex64::new(1.0, 0.0)) };
        return Ok(Quadrature { value: mahler_1var(&coeffs)?, err_estimate: 0.0, evaluations: 1 });
    }
    let f = |theta: Real| {
        let c = p.slice_in_y(Complex64::from_polar(1.0, TAU * theta));
        mahler_1var(&c).unwrap_or(Real::NAN)
    };
    let mut breaks: Vec<Real> = (0..=THETA_CHUNKS).map(|k| 0.5 * k as Real / THETA_CHUNKS as Real).collect();
    breaks.extend(crossings(p, mode));
    breaks.sort_by(Real::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let panels: Vec<(Real, Real)> = breaks.windows(2).map(|w| (w[0], w[1])).collect();
    let floor = 0.5 / panels.len() as Real;
    let parts = par::map(&panels, mode, |&(a, b)| integrate(f, a, b, tol * (b - a).max(floor)));
    let mut total: Option<Quadrature> = None;
    for part in parts {
        let q = part?;
        total = Some(match total {
            None => q,
            Some(t) => t.combine(q),
        });
    }
    let q = total.expect("at least one panel");
    Ok(Quadrature { value: 2.0 * q.value, err_estimate: 2.0 * q.err_estimate, evaluations: q.evaluations })
}

/// The A-polynomial of the figure-eight knot.
pub fn knot_a_poly() -> LaurentPoly2 {
    LaurentPoly2::from_int_terms(&[(0, 2, -1), (1, 0, 1), (1, 1, -1), (1, 2, -2), (1, 3, -1), (1, 4, 1), (2, 2, -1)])
        .expect("exponents are small")
}

/// `(1-Y)(1-Y^3) X - Y^2 (X+1)^2`.
pub fn piece3_poly() -> LaurentPoly2 {
    super::parse_poly("(1-Y)*(1-Y^3)*X - Y^2*(X+1)^2").expect("fixed polynomial parses")
}

/// `2 pi m((1-Y)(1-Y^3)X - Y^2(X+1)^2)`, after checking it against
/// `4 int_0^{pi/2} m((1-Y)(1-Y^3) - 4 Y^2 cos^2 theta) d theta`.
pub fn piece3_mahler_form(tol: Real) -> Result<Real> {
    let slice = |theta: Real| {
        let k = 4.0 * theta.cos().powi(2);
        mahler_1var_real(&[1.0, -1.0, -k, -1.0, 1.0]).unwrap_or(Real::NAN)
    };
    let by_theta = 4.0 * integrate(slice, 0.0, PI / 2.0, tol / 8.0)?.value;
    let two_var = TAU * mahler_2var(&piece3_poly(), tol / (4.0 * PI))?.value;
    if (by_theta - two_var).abs() > 1e3 * tol.max(1e-12) {
        return Err(Error::ChainMismatch(format!("theta integral {by_theta} vs two-variable measure {two_var}")));
    }
    Ok(two_var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::{LN_2, SQRT_3};
    use crate::hyper::dirichlet_l3;
    use crate::mahler::parse_poly;

    fn re(v: &[Real]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn one_variable_basics() {
        assert!((mahler_1var(&re(&[-2.0, 1.0])).unwrap() - LN_2).abs() < 1e-15);
        assert!(mahler_1var(&re(&[1.0, 1.0, 1.0])).unwrap().abs() < 1e-15);
        assert!((mahler_1var(&re(&[0.0, 0.0, 6.0, -3.0])).unwrap() - (6.0 as Real).ln()).abs() < 1e-14);
        assert!(matches!(mahler_1var(&re(&[0.0, 0.0])), Err(Error::ZeroPolynomial)));
        // (z - 3)(z - 0.5)(z + 2i)
        let roots = [Complex64::new(3.0, 0.0), Complex64::new(0.5, 0.0), Complex64::new(0.0, -2.0)];
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for r in roots {
            let mut n = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, a) in c.iter().enumerate() {
                n[k + 1] += a;
                n[k] -= a * r;
            }
            c = n;
        }
        assert!((mahler_1var(&c).unwrap() - (6.0 as Real).ln()).abs() < 1e-13);
    }

    #[test]
    fn high_degree_cyclotomic() {
        let mut c = vec![Complex64::new(0.0, 0.0); 61];
        c[0] = Complex64::new(-1.0, 0.0);
        c[60] = Complex64::new(1.0, 0.0);
        assert!(mahler_1var(&c).unwrap().abs() < 1e-12);
        let big = vec![Complex64::new(1.0, 0.0); 66];
        assert!(mahler_1var(&big).is_err());
    }

    #[test]
    fn outside_counts() {
        assert_eq!(outside_root_count(&re(&[-2.0, 1.0]), 1.0).unwrap().count, 1);
        let n = outside_root_count(&re(&[1.0, 1.0, 1.0]), 1.0).unwrap();
        assert_eq!((n.count, n.near_circle), (0, 2));
        let r: Real = 0.1;
        let k = 4.0 * (1.0 - 3.0 * r) / (1.0 + r).powi(2);
        // palindromic: the other real root is inside, the remaining pair sits on the circle
        let n = outside_root_count(&re(&[1.0, -1.0, -k, -1.0, 1.0]), 1.0).unwrap();
        assert_eq!((n.count, n.near_circle), (1, 2));
    }

    #[test]
    fn jensen_slice_consistency() {
        let s = JensenSlice::new(&knot_a_poly(), 0.3).unwrap();
        assert_eq!(s.roots.len(), 4);
        assert!(s.consistency_residual() < 1e-9);
    }

    #[test]
    fn two_variable_values() {
        let m = mahler_2var(&parse_poly("5*x*y^-1").unwrap(), 1e-12).unwrap().value;
        assert!((m - (5.0 as Real).ln()).abs() < 1e-14);
        let l3 = dirichlet_l3(2).unwrap();
        let smyth = mahler_2var(&parse_poly("1+x+y").unwrap(), 1e-12).unwrap().value;
        assert!((smyth - 3.0 * SQRT_3 / (4.0 * PI) * l3).abs() < 1e-10, "{smyth}");
        let knot = mahler_2var(&knot_a_poly(), 1e-12).unwrap().value;
        assert!((PI * knot - 1.5 * SQRT_3 * l3).abs() < 1e-9, "{knot}");
    }

    #[test]
    fn sequential_matches_parallel() {
        let p = parse_poly("1+x+1/x+y+1/y").unwrap();
        let a = mahler_2var_with(&p, 1e-12, Parallelism::Parallel).unwrap();
        let b = mahler_2var_with(&p, 1e-12, Parallelism::Sequential).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn piece3_chain() {
        let v = piece3_mahler_form(1e-11).unwrap();
        assert!((v - 3.0 * SQRT_3 * dirichlet_l3(2).unwrap()).abs() < 1e-8, "{v}");
        assert_eq!(knot_a_poly(), piece3_poly());
    }

    #[test]
    fn many_crossings_both_orientations() {
        let p = parse_poly("-4*x^-2*y^-2 + 3*x^-1*y^2 + 3*x^2*y").unwrap();
        assert!(crossings(&p, Parallelism::Sequential).len() > 10);
        let a = mahler_2var(&p, 1e-12).unwrap().value;
        let b = mahler_2var(&p.swap(), 1e-12).unwrap().value;
        assert!((a - b).abs() < 1e-11, "{a} {b}");
        assert!((a - 1.535_077_212_636_3).abs() < 1e-11);
    }

    #[test]
    fn slices_vanishing_on_the_circle() {
        let p = parse_poly("2*x^-2*y^-2 + 3*x^-1*y^-2 - x*y^-2").unwrap();
        let q = parse_poly("-x^-1 - 3*y^-2 + 4*x*y^-2 + x*y^-1 - 4*x^2*y^-1").unwrap();
        let pq = mahler_2var(&(&p * &q), 1e-12).unwrap().value;
        let mq = mahler_2var(&q, 1e-12).unwrap().value;
        assert!((pq - mq - LN_2).abs() < 1e-11, "{pq} {mq}");
    }

    #[test]
    fn repeated_factors_on_the_circle() {
        let q = parse_poly("1 + x + 1/x + y + 1/y").unwrap();
        let m = mahler_2var(&q, 1e-12).unwrap().value;
        let smyth = 3.0 * SQRT_3 / (4.0 * PI) * dirichlet_l3(2).unwrap();
        for (extra, shift) in [("(1+y)^2", 0.0), ("(1+x)^3", 0.0), ("(x-y)^2", 0.0), ("(1+x+y)^2", 2.0 * smyth)] {
            let p = &parse_poly(extra).unwrap() * &q;
            let v = mahler_2var(&p, 1e-12).unwrap().value;
            assert!((v - m - shift).abs() < 1e-11, "{extra}: {v} vs {m}");
        }
        let sq = parse_poly("(1+x)^2*(x-2)").unwrap();
        assert!((mahler_2var(&sq, 1e-12).unwrap().value - LN_2).abs() < 1e-15);
    }
}
