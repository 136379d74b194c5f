use std::time::Instant;

use glob::Pattern;
use serde::Serialize;

use super::registry::{find, registry, CheckDef, Status};
use crate::par::{self, Parallelism};
use crate::{Error, Real, Result};

/// One evaluated identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    pub paper_anchor: String,
    pub status: Status,
    pub lhs: Real,
    pub rhs: Real,
    pub abs_err: Real,
    pub tol: Real,
    pub pass: bool,
    pub seconds: Real,
}

fn run_def(def: &CheckDef, tol_override: Option<Real>) -> CheckResult {
    let tol = tol_override.unwrap_or(def.tol);
    let start = Instant::now();
    let outcome = def.evaluate();
    let seconds = start.elapsed().as_secs_f64();
    let (lhs, rhs, description) = match outcome {
        Ok((l, r)) => (l, r, def.description.clone()),
        Err(e) => (Real::NAN, Real::NAN, format!("{} [error: {e}]", def.description)),
    };
    let abs_err = (lhs - rhs).abs();
    CheckResult {
        id: def.id.clone(),
        description,
        paper_anchor: def.paper_anchor.to_string(),
        status: def.status,
        lhs,
        rhs,
        abs_err,
        tol,
        pass: abs_err <= tol,
        seconds,
    }
}

/// Runs one check; computation errors become failed results.
pub fn run_check(id: &str, tol_override: Option<Real>) -> Result<CheckResult> {
    let def = find(id).ok_or_else(|| Error::UnknownCheck(id.to_string()))?;
    Ok(run_def(def, tol_override))
}

/// Options for [`run_all`].
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Glob over ids; `None` runs everything.
    pub filter: Option<String>,
    pub tol_override: Option<Real>,
    pub proved_only: bool,
    pub parallel: bool,
}

/// Runs the matching checks, returning results in registry order.
pub fn run_all(opts: &RunOptions) -> Result<Vec<CheckResult>> {
    let pattern = match &opts.filter {
        Some(f) => Some(Pattern::new(f).map_err(|e| Error::Syntax { offset: e.pos, message: e.msg.to_string() })?),
        None => None,
    };
    let selected: Vec<&CheckDef> = registry()
        .iter()
        .filter(|d| pattern.as_ref().is_none_or(|p| p.matches(&d.id)))
        .filter(|d| !opts.proved_only || d.status == Status::Proved)
        .collect();
    Ok(par::map(&selected, Parallelism::from_flag(opts.parallel), |d| run_def(d, opts.tol_override)))
}

/// 0 when every proved check passed, 1 otherwise; conjectural results never count.
pub fn exit_code(results: &[CheckResult]) -> i32 {
    i32::from(results.iter().any(|r| r.status == Status::Proved && !r.pass))
}
