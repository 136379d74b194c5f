use serde_json::{json, Value};

use super::runner::CheckResult;
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Unsupported(format!("report format `{s}`"))),
        }
    }
}

/// `x` with 15 significant digits; positional for moderate magnitudes, scientific otherwise.
pub fn fmt15(x: Real) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-3..15).contains(&mag) {
        format!("{:.*}", (14 - mag) as usize, x)
    } else {
        format!("{x:.14e}")
    }
}

fn json_row(r: &CheckResult) -> Value {
    json!({
        "id": r.id,
        "description": r.description,
        "paper_anchor": r.paper_anchor,
        "status": r.status,
        "lhs": fmt15(r.lhs),
        "rhs": fmt15(r.rhs),
        "abs_err": fmt15(r.abs_err),
        "tol": fmt15(r.tol),
        "pass": r.pass,
        "seconds": fmt15(r.seconds),
    })
}

fn verdict(r: &CheckResult) -> &'static str {
    match (r.pass, r.status) {
        (true, _) => "pass",
        (false, super::Status::Proved) => "FAIL",
        (false, super::Status::Conjectural) => "warn",
    }
}

pub fn render_report(results: &[CheckResult], format: Format) -> String {
    match format {
        Format::Json => {
            let rows: Vec<Value> = results.iter().map(json_row).collect();
            serde_json::to_string_pretty(&rows).expect("json values serialize")
        }
        Format::Csv => {
            let mut out = String::from("id,status,lhs,rhs,abs_err,tol,pass,seconds\n");
            for r in results {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.id,
                    r.status.as_str(),
                    fmt15(r.lhs),
                    fmt15(r.rhs),
                    fmt15(r.abs_err),
                    fmt15(r.tol),
                    r.pass,
                    fmt15(r.seconds)
                ));
            }
            out
        }
        Format::Table => {
            let idw = results.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
            let mut out = format!(
                "{:<idw$}  {:<11}  {:>22}  {:>22}  {:>10}  {:>8}  {:>7}  {}\n",
                "id", "status", "lhs", "rhs", "abs_err", "tol", "seconds", "result"
            );
            for r in results {
                out.push_str(&format!(
                    "{:<idw$}  {:<11}  {:>22}  {:>22}  {:>10.2e}  {:>8.0e}  {:>7.2}  {}\n",
                    r.id,
                    r.status.as_str(),
                    fmt15(r.lhs),
                    fmt15(r.rhs),
                    r.abs_err,
                    r.tol,
                    r.seconds,
                    verdict(r)
                ));
            }
            let failed = results.iter().filter(|r| !r.pass).count();
            out.push_str(&format!("{} checks, {} passed, {} not passed\n", results.len(), results.len() - failed, failed));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Status;

    fn sample() -> CheckResult {
        CheckResult {
            id: "x".into(),
            description: "d".into(),
            paper_anchor: "a".into(),
            status: Status::Proved,
            lhs: 1.0,
            rhs: 1.0 + 1e-12,
            abs_err: 1e-12,
            tol: 1e-8,
            pass: true,
            seconds: 0.5,
        }
    }

    #[test]
    fn significant_digits() {
        assert_eq!(fmt15(52.726_296_614_3), "52.7262966143000");
        assert_eq!(fmt15(-0.25), "-0.250000000000000");
        assert_eq!(fmt15(1e-12), "1.00000000000000e-12");
        assert_eq!(fmt15(0.0), "0");
    }

    #[test]
    fn formats() {
        assert_eq!(render_report(&[], Format::Json), "[]");
        let csv = render_report(&[sample()], Format::Csv);
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.starts_with("id,status,lhs,rhs,abs_err,tol,pass,seconds\n"));
        let v: Value = serde_json::from_str(&render_report(&[sample()], Format::Json)).unwrap();
        let obj = v[0].as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(|s| s.as_str()).collect();
        keys.sort();
        assert_eq!(
            keys,
            ["abs_err", "description", "id", "lhs", "paper_anchor", "pass", "rhs", "seconds", "status", "tol"]
        );
        assert_eq!(obj["status"], "proved");
        assert_eq!(render_report(&[sample()], Format::Table).lines().count(), 3);
        assert!("xml".parse::<Format>().is_err());
    }
}
