use mahlerlab::verify::{exit_code, list_checks, render_report, run_all, run_check, Format, RunOptions, Status};
use mahlerlab::Error;

fn opts(filter: &str) -> RunOptions {
    RunOptions { filter: Some(filter.into()), ..Default::default() }
}

#[test]
fn single_checks() {
    let r = run_check("tele-3-2", None).unwrap();
    assert!(r.pass && r.abs_err < 1e-8);
    let c = run_check("conj-F15", None).unwrap();
    assert_eq!(c.status, Status::Conjectural);
    assert!(c.pass && c.tol == 1e-5);
    assert!(matches!(run_check("no-such-id", None), Err(Error::UnknownCheck(_))));
}

#[test]
fn tolerance_override_applies() {
    let r = run_check("tele-2-1", Some(-1.0)).unwrap();
    assert!(!r.pass);
    assert_eq!(r.tol, -1.0);
}

#[test]
fn filters() {
    let qs = run_all(&opts("qs-*")).unwrap();
    assert_eq!(qs.len(), 10);
    assert!(qs.iter().all(|r| r.pass && r.lhs == 0.0));
    let conj = run_all(&opts("conj-*")).unwrap();
    assert_eq!(conj.len(), 4);
    assert!(conj.iter().all(|r| r.status == Status::Conjectural));
    assert!(run_all(&opts("zzz*")).unwrap().is_empty());
    let proved = run_all(&RunOptions { proved_only: true, ..Default::default() }).unwrap();
    assert_eq!(proved.len(), list_checks().len() - 4);
}

#[test]
fn full_run_in_registry_order_and_passing() {
    let r = run_all(&RunOptions { parallel: true, ..Default::default() }).unwrap();
    let ids: Vec<&str> = r.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, list_checks());
    let failed: Vec<_> = r.iter().filter(|c| !c.pass).map(|c| &c.id).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(exit_code(&r), 0);
    assert_eq!(render_report(&r, Format::Table).lines().count(), r.len() + 2);
}

#[test]
fn conjectural_failures_do_not_gate() {
    let mut r = run_all(&opts("conj-F11b")).unwrap();
    r[0].pass = false;
    assert_eq!(exit_code(&r), 0);
    let mut p = run_all(&opts("tele-2-1")).unwrap();
    p[0].pass = false;
    assert_eq!(exit_code(&p), 1);
}

#[test]
fn runs_are_deterministic() {
    let strip = |s: String| -> Vec<serde_json::Value> {
        let mut v: Vec<serde_json::Value> = serde_json::from_str(&s).unwrap();
        for row in &mut v {
            row.as_object_mut().unwrap().remove("seconds");
        }
        v
    };
    let a = run_all(&RunOptions { parallel: true, ..Default::default() }).unwrap();
    let b = run_all(&RunOptions { parallel: false, ..Default::default() }).unwrap();
    assert_eq!(strip(render_report(&a, Format::Json)), strip(render_report(&b, Format::Json)));
}
