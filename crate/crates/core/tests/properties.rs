use mahlerlab::consts::{LN_2, PI};
use mahlerlab::hyper::m_alpha;
use mahlerlab::mahler::{mahler_2var, parse_poly, LaurentPoly2};
use mahlerlab::qseries::{eta_num, EtaProduct, Exponent};
use mahlerlab::quad::{integrate, integrate_de};
use mahlerlab::Real;
use proptest::prelude::*;

const TOL: Real = 1e-12;

fn poly() -> impl Strategy<Value = LaurentPoly2> {
    prop::collection::vec((-2i64..=2, -2i64..=2, -4i64..=4), 3..7)
        .prop_map(|t| LaurentPoly2::from_int_terms(&t).unwrap())
        .prop_filter("needs both variables", |p| !p.is_free_of(true) && !p.is_free_of(false))
}

fn m(p: &LaurentPoly2) -> Real {
    mahler_2var(p, TOL).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn mahler_invariances(p in poly(), a in -3i64..=3, b in -3i64..=3) {
        let base = m(&p);
        prop_assert!((m(&p.invert_x()) - base).abs() < 1e-9);
        prop_assert!((m(&p.swap()) - base).abs() < 1e-9);
        prop_assert!((m(&p.shift(a, b).unwrap()) - base).abs() < 1e-9);
        prop_assert!((m(&-&p) - base).abs() < 1e-9);
    }

    #[test]
    fn mahler_is_additive_on_products(p in poly(), q in poly()) {
        prop_assert!((m(&(&p * &q)) - m(&p) - m(&q)).abs() < 1e-8);
    }

    #[test]
    fn repeated_factors_count_with_multiplicity(p in poly(), q in poly()) {
        let pq = &(&p * &p) * &q;
        prop_assert!((m(&pq) - 2.0 * m(&p) - m(&q)).abs() < 1e-8);
    }

    #[test]
    fn parser_round_trips(p in poly()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn eta_products_have_integral_coefficients(
        f in prop::collection::vec((1i64..=12, -2i32..=4), 1..4)
    ) {
        let e = EtaProduct::from_ints(&f);
        prop_assume!(e.leading_exponent().is_integer());
        let s = e.expansion(Exponent::from_integer(30)).unwrap();
        prop_assert!(s.is_integral());
    }

    #[test]
    fn exact_and_numeric_eta_agree(scale in 1i64..=6, h in 6.0f64..10.0) {
        let s = EtaProduct::from_ints(&[(scale, 1)]).expansion(Exponent::from_integer(60)).unwrap();
        let exact = s.evaluate((-h).exp());
        let num = eta_num(scale as Real * h).unwrap();
        prop_assert!(((exact - num) / num).abs() < 1e-13);
    }

    #[test]
    fn eta_modular_transformation(h in 0.05f64..20.0) {
        let lhs = eta_num(h).unwrap();
        let rhs = (2.0 * PI / h).sqrt() * eta_num(4.0 * PI * PI / h).unwrap();
        prop_assert!(((lhs - rhs) / lhs).abs() < 1e-13);
    }

    #[test]
    fn monomial_integrals(n in 0i32..12, a in -2.0f64..0.0, w in 0.5f64..3.0) {
        let b = a + w;
        let want = (b.powi(n + 1) - a.powi(n + 1)) / (n + 1) as Real;
        let got = integrate(|x: Real| x.powi(n), a, b, TOL).unwrap().value;
        prop_assert!((got - want).abs() < 1e-11 * (1.0 + want.abs()));
    }

    #[test]
    fn endpoint_power_singularities(s in 0.1f64..0.9) {
        let got = integrate_de(|x: Real| x.powf(-s), 0.0, 1.0, TOL).unwrap().value;
        prop_assert!((got - 1.0 / (1.0 - s)).abs() < 1e-10);
    }
}

#[test]
fn family_matches_closed_forms() {
    for k in [1, 2, 3, 5, 8, 16] {
        let p = parse_poly(&format!("{k}+x+1/x+y+1/y")).unwrap();
        let a = m_alpha(k as Real).unwrap();
        assert!((m(&p) - a).abs() < 1e-9, "k = {k}: {} vs {a}", m(&p));
    }
}

#[test]
fn scaling_shifts_by_log() {
    let p = parse_poly("1+x+1/x+y+1/y").unwrap();
    let two = LaurentPoly2::from_int(2);
    assert!((m(&(&p * &two)) - m(&p) - LN_2).abs() < 1e-12);
}
