//! The twelve acceptance criteria, one line each.
//!
//! Runs without the libtest harness so every line is printed; exits nonzero if
//! any criterion fails.

use std::time::{Duration, Instant};

use mahlerlab::consts::{LN_2, LN_3, PI, SQRT_3};
use mahlerlab::hfun::{
    four_piece_split, h_q, prop4_integral, rhs_main_theorem, signature_params, table_residual, telescope_integral,
};
use mahlerlab::hyper::{dirichlet_l3, i_derivative_residual, i_hyper, i_integral, i_mahler, m_alpha};
use mahlerlab::lfun::{f_lattice_int, l_eta_cusp, LatticeSumSpec};
use mahlerlab::mahler::{knot_a_poly, mahler_2var, parse_poly, LaurentPoly2};
use mahlerlab::qseries::{abc_num, b_series, c_series, eta_num, EtaProduct, Exponent};
use mahlerlab::quad::{integrate, integrate_de, integrate_halfline};
use mahlerlab::verify::{run_all, RunOptions, Status};
use mahlerlab::Real;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: Real = 1e-12;

/// m(1 + X + 1/X + Y + 1/Y), frozen after agreeing with the Riemann oracle below.
const M1: Real = 0.251_330_433_713_252_2;
const L_E15: Real = 0.661_475_187_921_069_7;

type Verdict = Result<String, String>;

fn within(what: &str, got: Real, want: Real, tol: Real) -> Verdict {
    let e = (got - want).abs();
    if e < tol {
        Ok(format!("{what}: {e:.2e} < {tol:.0e}"))
    } else {
        Err(format!("{what}: |{got} - {want}| = {e:.3e} >= {tol:.0e}"))
    }
}

fn all(parts: Vec<Verdict>) -> Verdict {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join("; "))
}

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let t = Instant::now();
    let v = f()?;
    let dt = t.elapsed();
    if dt < limit {
        Ok(format!("{v}; {:.2}s", dt.as_secs_f64()))
    } else {
        Err(format!("{v}; took {:.1}s, limit {}s", dt.as_secs_f64(), limit.as_secs()))
    }
}

fn ok<T>(r: mahlerlab::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// Oracles.

/// Midpoint rule for int_0^1 int_0^1 log|P(e^{2 pi i s}, e^{2 pi i t})| ds dt.
fn riemann_mahler(p: &LaurentPoly2, n: usize) -> Real {
    let h = 1.0 / n as Real;
    let xs: Vec<_> = (0..n).map(|k| num_complex::Complex64::from_polar(1.0, 2.0 * PI * (k as Real + 0.5) * h)).collect();
    let mut sum = 0.0;
    for x in &xs {
        for y in &xs {
            sum += p.eval(*x, *y).norm().ln();
        }
    }
    sum * h * h
}

/// Sparse `prod_n (1 - q^{s n})` through `q^m` by the pentagonal number theorem.
fn pentagonal(s: usize, m: usize) -> Vec<(usize, i64)> {
    let mut out = vec![(0, 1)];
    for k in 1.. {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        let e1 = s * k * (3 * k - 1) / 2;
        if e1 > m {
            break;
        }
        out.push((e1, sign));
        let e2 = s * k * (3 * k + 1) / 2;
        if e2 <= m {
            out.push((e2, sign));
        }
    }
    out
}

/// Coefficients a_0..a_m of `q prod_i prod_n (1 - q^{s_i n})`.
fn weight2_coeffs(scales: &[usize], m: usize) -> Vec<i64> {
    let mut acc = vec![0i64; m + 1];
    acc[1] = 1;
    for &s in scales {
        let mut next = vec![0i64; m + 1];
        for (e, c) in pentagonal(s, m) {
            for k in 0..=m - e {
                next[k + e] += c * acc[k];
            }
        }
        acc = next;
    }
    acc
}

/// L(f, 2) from `S(X) = sum a_n n^-2 e^{-n/X} = L(f,2) - L(f,1)/X`, using two X.
fn smoothed_l2(scales: &[usize], m: usize) -> Real {
    let a = weight2_coeffs(scales, m);
    let s = |x: Real| -> Real {
        a.iter().enumerate().skip(1).map(|(n, &c)| c as Real / (n * n) as Real * (-(n as Real) / x).exp()).sum()
    };
    let (x1, x2) = (m as Real / 40.0, m as Real / 80.0);
    (x1 * s(x1) - x2 * s(x2)) / (x1 - x2)
}

fn family(k: i64) -> LaurentPoly2 {
    parse_poly(&format!("{k}+x+1/x+y+1/y")).expect("family parses")
}

// Criteria.

fn c1_main_theorem() -> Verdict {
    timed(Duration::from_secs(60), || {
        let l = ok(l_eta_cusp(&EtaProduct::from_ints(&[(1, 1), (3, 1), (5, 1), (15, 1)]), TOL))?;
        let m = ok(mahler_2var(&family(1), TOL))?.value;
        all(vec![
            within("L - (4pi^2/15) m", l, 4.0 * PI * PI / 15.0 * m, 1e-8),
            within("L vs smoothed series", l, smoothed_l2(&[1, 3, 5, 15], 400_000), 1e-10),
            within("m vs Riemann oracle", riemann_mahler(&family(1), 3000), m, 1e-4),
            within("frozen m", m, M1, 1e-12),
            within("frozen L", l, L_E15, 1e-12),
        ])
    })
}

fn c2_exact_series() -> Verdict {
    timed(Duration::from_secs(30), || {
        let r = ok(run_all(&RunOptions { filter: Some("qs-*".into()), ..Default::default() }))?;
        if r.len() != 10 {
            return Err(format!("{} q-series checks, expected 10", r.len()));
        }
        for c in &r {
            if !c.pass || c.lhs != 0.0 || c.tol != 0.0 {
                return Err(format!("{}: {} mismatching coefficients ({})", c.id, c.lhs, c.description));
            }
            let need = if c.id == "qs-deg11" { 60 } else { 40 };
            let order: i64 = c
                .description
                .rsplit("q^")
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| format!("{}: no order in the description", c.id))?;
            if order < need {
                return Err(format!("{} checked to q^{order}, q^{need} required", c.id));
            }
        }
        Ok("10 identities, 0 mismatches".into())
    })
}

fn c3_telescoping() -> Verdict {
    all([(2.0, 1.0), (3.0, 2.0), (5.0, 3.0)]
        .iter()
        .map(|&(r, j): &(Real, Real)| {
            let v = ok(telescope_integral(r, j, TOL))?;
            within(&format!("r={r} j={j}"), v, 4.0 * PI * PI / (3.0 * j) * r.ln(), 1e-8)
        })
        .collect())
}

fn c4_prop2() -> Verdict {
    let proved = ok(run_all(&RunOptions { filter: Some("prop2-*".into()), ..Default::default() }))?;
    let non_integer_a = ["prop2-F111-311", "prop2-F37", "prop2-F67", "prop2-F327"];
    for c in &proved {
        let cap = if non_integer_a.contains(&c.id.as_str()) { 1e-6 } else { 1e-7 };
        if c.status != Status::Proved || c.tol > cap || !c.pass {
            return Err(format!("{}: err {:.3e}, tol {:.0e}, cap {cap:.0e}", c.id, c.abs_err, c.tol));
        }
    }
    let conj = ok(run_all(&RunOptions { filter: Some("conj-*".into()), ..Default::default() }))?;
    if conj.len() != 4 {
        return Err(format!("{} conjectural checks, expected 4", conj.len()));
    }
    for c in &conj {
        if c.status != Status::Conjectural || c.tol != 1e-5 || !c.pass {
            return Err(format!("{}: err {:.3e}, status {}", c.id, c.abs_err, c.status.as_str()));
        }
    }
    let f35 = ok(f_lattice_int(3, 5, TOL))?;
    all(vec![
        Ok(format!("{} proved, 4 conjectural", proved.len())),
        within("9F(3,5) frozen", 9.0 * f35, 5.953_276_691_289_63, 1e-12),
        within("F(3,5) vs smoothed series", f35, smoothed_l2(&[1, 3, 5, 15], 400_000), 1e-10),
        within("H(1/3) = -pi sqrt3 L3", ok(h_q(1.0 / 3.0, TOL))?, -PI * SQRT_3 * ok(dirichlet_l3(2))?, 1e-9),
    ])
}

fn c5_signature_table() -> Verdict {
    let mut worst: Real = 0.0;
    for x in [2.0, 5.0, 8.0, 11.0] {
        for q in [0.1, 0.2, 0.35, 0.5, 0.65] {
            let r = ok(signature_params(q, x).and_then(|p| table_residual(&p)))?;
            if !(r.abs() < 1e-10) {
                return Err(format!("x = {x}, q = {q}: residual {r:e}"));
            }
            worst = worst.max(r.abs());
        }
    }
    Ok(format!("20 residuals, largest {worst:.2e}"))
}

fn c6_chain() -> Verdict {
    let r = ok(rhs_main_theorem(2, TOL))?;
    let l3 = ok(dirichlet_l3(2))?;
    let h = |x| h_q(x, TOL);
    let hcomb = 2.0 * ok(h(2.0 / 3.0))? + 0.5 * ok(h(1.0 / 6.0))? + 2.0 * ok(h(1.0 / 3.0))?;
    all(vec![
        within("closed form", r, -4.0 * PI * PI / 3.0 * LN_3 - 2.0 * PI * SQRT_3 * l3, 1e-7),
        within("H combination", r, hcomb, 1e-7),
    ])
}

fn c7_prop4() -> Verdict {
    let rhs = 45.0 * ok(f_lattice_int(3, 5, TOL))? + 2.0 * PI * SQRT_3 * ok(dirichlet_l3(2))? + 4.0 * PI * PI / 3.0 * LN_3;
    let v = ok(prop4_integral(TOL))?;
    all(vec![within("integral", v, rhs, 1e-6), within("frozen", v, 52.726_296_614_3, 1e-9)])
}

fn c8_four_pieces() -> Verdict {
    let p = ok(four_piece_split(TOL))?;
    let l3 = ok(dirichlet_l3(2))?;
    let m1 = ok(m_alpha(1.0))?;
    let l = ok(l_eta_cusp(&EtaProduct::from_ints(&[(1, 1), (3, 1), (5, 1), (15, 1)]), TOL))?;
    all(vec![
        within("P1", p.p1, -SQRT_3 * l3 - 2.0 * PI / 3.0 * LN_3, 1e-7),
        within("P2", p.p2, -2.0 * PI * m1, 1e-7),
        within("P3", p.p3, 3.0 * SQRT_3 * l3, 1e-7),
        within("P4", p.p4, 2.0 * PI * LN_3 + 10.0 * PI * m1, 1e-7),
        within("assembly", p.assembly(), 45.0 * l + 2.0 * PI * SQRT_3 * l3 + 4.0 * PI * PI / 3.0 * LN_3, 1e-7),
    ])
}

fn c9_iy() -> Verdict {
    let mut parts = Vec::new();
    for y in [1.0, 1.5, 4.0, 25.0] {
        let i = ok(i_integral(y, TOL))?;
        parts.push(within(&format!("hyper y={y}"), i, ok(i_hyper(y))?, 1e-9));
        parts.push(within(&format!("mahler y={y}"), i, ok(i_mahler(y))?, 1e-9));
    }
    parts.push(within("I(4) = 10 m(1)", ok(i_integral(4.0, TOL))?, 10.0 * ok(m_alpha(1.0))?, 1e-9));
    parts.push(within("I(4) frozen", ok(i_integral(4.0, TOL))?, 10.0 * M1, 1e-9));
    for y in [1.5, 2.0, 4.0, 10.0] {
        parts.push(within(&format!("derivative y={y}"), ok(i_derivative_residual(y))?, 0.0, 1e-5));
    }
    all(parts).map(|_| "12 comparisons".into())
}

fn c10_knot() -> Verdict {
    let m = ok(mahler_2var(&knot_a_poly(), TOL))?.value;
    all(vec![
        within("pi m(A)", PI * m, 1.5 * SQRT_3 * ok(dirichlet_l3(2))?, 1e-8),
        within("m(A) vs Riemann oracle", riemann_mahler(&knot_a_poly(), 3000), m, 1e-4),
    ])
}

fn c11_f_equals_l() -> Verdict {
    let mut parts = Vec::new();
    for (b, c) in [(1, 1), (1, 3), (2, 3), (3, 5), (2, 7), (1, 5), (1, 11)] {
        let spec = ok(LatticeSumSpec::from_ints(b, c))?;
        let prod = spec.eta_product().ok_or("integer A expected")?;
        let f = ok(f_lattice_int(b, c, TOL))?;
        parts.push(within(&format!("F({b},{c})"), f, ok(l_eta_cusp(&prod, TOL))?, 1e-8));
        let a = (24 / ((b + 1) * (c + 1))) as usize;
        let scales = [a, a * b as usize, a * c as usize, a * (b * c) as usize];
        parts.push(within(&format!("F({b},{c}) smoothed"), f, smoothed_l2(&scales, 200_000), 1e-9));
    }
    all(parts).map(|_| "7 pairs, both routes".into())
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly2 {
    loop {
        let n = rng.random_range(3..7);
        let terms: Vec<(i64, i64, i64)> =
            (0..n).map(|_| (rng.random_range(-2..3), rng.random_range(-2..3), rng.random_range(-4..5))).collect();
        let p = LaurentPoly2::from_int_terms(&terms).expect("small exponents");
        if !p.is_free_of(true) && !p.is_free_of(false) {
            return p;
        }
    }
}

fn c12_properties() -> Verdict {
    // Mahler measure invariances.
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let two = LaurentPoly2::from_int(2);
    for case in 0..100 {
        let p = random_poly(&mut rng);
        let m = ok(mahler_2var(&p, TOL))?.value;
        let (a, b) = (rng.random_range(-3..4), rng.random_range(-3..4));
        let variants = [
            ("1/X", ok(mahler_2var(&p.invert_x(), TOL))?.value),
            ("swap", ok(mahler_2var(&p.swap(), TOL))?.value),
            ("shift", ok(mahler_2var(&ok(p.shift(a, b))?, TOL))?.value),
            ("negate", ok(mahler_2var(&-&p, TOL))?.value),
            ("double", ok(mahler_2var(&(&p * &two), TOL))?.value - LN_2),
        ];
        for (name, v) in variants {
            if (v - m).abs() >= 1e-9 {
                return Err(format!("case {case}, {p}: {name} differs by {:.3e}", (v - m).abs()));
            }
        }
    }

    // q-series integrality and numeric/exact consistency.
    let b = ok(b_series(60))?;
    let c = ok(c_series(60))?;
    if !b.is_integral() || !c.is_integral() {
        return Err("b or c has a non-integral coefficient".into());
    }
    let cusp = ok(EtaProduct::from_ints(&[(1, 1), (3, 1), (5, 1), (15, 1)]).expansion(Exponent::from_integer(60)))?;
    if !cusp.is_integral() {
        return Err("eta(q)eta(q^3)eta(q^5)eta(q^15) has a non-integral coefficient".into());
    }
    for h in [6.0, 8.0] {
        let q = (-h as Real).exp();
        let (_, bn, cn) = ok(abc_num(q))?;
        let tail = 10.0 * q.powi(60);
        if (b.evaluate(q) - bn).abs() > tail + 1e-15 || (c.evaluate(q) - cn).abs() > tail + 1e-15 {
            return Err(format!("b or c exact/numeric mismatch at q = e^-{h}"));
        }
        let en = ok(eta_num(h))?;
        let es = ok(EtaProduct::from_ints(&[(1, 1)]).expansion(Exponent::from_integer(60)))?.evaluate(q);
        if ((en - es) / en).abs() > 1e-14 {
            return Err(format!("eta exact/numeric mismatch at q = e^-{h}"));
        }
    }

    // Quadrature closed forms.
    let quad = [
        ("int_0^1 log x", ok(integrate_de(|x: Real| x.ln(), 0.0, 1.0, TOL))?.value, -1.0),
        ("int_0^1 x^-1/2", ok(integrate_de(|x: Real| x.powf(-0.5), 0.0, 1.0, TOL))?.value, 2.0),
        ("int_0^pi log sin", ok(integrate_de(|x: Real| x.sin().ln(), 0.0, PI, TOL))?.value, -PI * LN_2),
        ("int_0^inf e^-x", ok(integrate_halfline(|x: Real| (-x).exp(), TOL))?.value, 1.0),
        ("int_0^1 4/(1+x^2)", ok(integrate(|x: Real| 4.0 / (1.0 + x * x), 0.0, 1.0, TOL))?.value, PI),
    ];
    for (name, got, want) in quad {
        within(name, got, want, 1e-11)?;
    }

    // Full registry.
    timed(Duration::from_secs(600), || {
        let r = ok(run_all(&RunOptions { parallel: true, ..Default::default() }))?;
        let failed: Vec<_> = r.iter().filter(|c| c.status == Status::Proved && !c.pass).map(|c| c.id.clone()).collect();
        if failed.is_empty() {
            Ok(format!("100 invariance cases, series and quadrature suites; full run of {} checks", r.len()))
        } else {
            Err(format!("failed: {}", failed.join(", ")))
        }
    })
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("main theorem", c1_main_theorem),
        ("exact q-series identities", c2_exact_series),
        ("telescoping lemma", c3_telescoping),
        ("H and F relations", c4_prop2),
        ("signature-3 table", c5_signature_table),
        ("x = 2 chain", c6_chain),
        ("conductor-15 elementary integral", c7_prop4),
        ("four-piece split", c8_four_pieces),
        ("I(y) forms", c9_iy),
        ("figure-eight knot", c10_knot),
        ("F = L coherence", c11_f_equals_l),
        ("property suites and full run", c12_properties),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", k + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", k + 1);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
