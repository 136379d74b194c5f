//! Text-producing bodies of the `eval`, `series` and `list` subcommands.

use num_rational::Ratio;
use num_traits::ToPrimitive;

use super::registry::registry;
use super::report::fmt15;
use crate::hfun::h_q;
use crate::hyper::{dirichlet_l3, i_integral, m_alpha};
use crate::lfun::{f_lattice, l_eta_cusp, LatticeSumSpec};
use crate::mahler::{mahler_2var, parse_poly};
use crate::qseries::{b_series, c_series, eta_series, theta_a_series, EtaProduct, Exponent, QExpansion};
use crate::{Error, Real, Result};

/// Tolerance for quadratures started from the command line.
pub const EVAL_TOL: Real = 1e-12;

/// Parses `p/q`, an integer, or a decimal into an exact ratio.
pub fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let s = s.trim();
    let bad = || Error::Syntax { offset: 0, message: format!("`{s}` is not a number") };
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(Error::Domain(format!("zero denominator in `{s}`")));
        }
        return Ok(Ratio::new(n, d));
    }
    if let Ok(n) = s.parse::<i64>() {
        return Ok(Ratio::from_integer(n));
    }
    let x: Real = s.parse().map_err(|_| bad())?;
    Ratio::approximate_float(x).ok_or_else(bad)
}

/// A fraction or a plain float.
pub fn parse_real(s: &str) -> Result<Real> {
    if s.contains('/') {
        let r = parse_ratio(s)?;
        return Ok(r.to_f64().expect("i64 ratio converts"));
    }
    s.trim().parse().map_err(|_| Error::Syntax { offset: 0, message: format!("`{s}` is not a number") })
}

fn arity(verb: &str, args: &[String], n: usize) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("`eval {verb}` takes {n} argument(s), got {}", args.len())))
    }
}

/// Evaluates one verb and formats the value with 15 significant digits.
pub fn eval(verb: &str, args: &[String]) -> Result<String> {
    let v = match verb {
        "H" => {
            arity(verb, args, 1)?;
            h_q(parse_real(&args[0])?, EVAL_TOL)?
        }
        "F" => {
            arity(verb, args, 2)?;
            f_lattice(&LatticeSumSpec::new(parse_ratio(&args[0])?, parse_ratio(&args[1])?)?, EVAL_TOL)?
        }
        "Lcusp" => {
            arity(verb, args, 1)?;
            l_eta_cusp(&args[0].parse::<EtaProduct>()?, EVAL_TOL)?
        }
        "I" => {
            arity(verb, args, 1)?;
            i_integral(parse_real(&args[0])?, EVAL_TOL)?
        }
        "malpha" => {
            arity(verb, args, 1)?;
            m_alpha(parse_real(&args[0])?)?
        }
        "L3" => {
            arity(verb, args, 1)?;
            let s: u32 = args[0]
                .parse()
                .map_err(|_| Error::Syntax { offset: 0, message: format!("`{}` is not a small integer", args[0]) })?;
            dirichlet_l3(s)?
        }
        "mahler" => {
            if args.is_empty() {
                return Err(Error::Unsupported("`eval mahler` needs a polynomial".into()));
            }
            mahler_2var(&parse_poly(&args.join(" "))?, EVAL_TOL)?.value
        }
        _ => return Err(Error::Unsupported(format!("unknown eval verb `{verb}`"))),
    };
    Ok(fmt15(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Eta,
    A,
    B,
    C,
}

impl std::str::FromStr for SeriesKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eta" => Ok(SeriesKind::Eta),
            "a" => Ok(SeriesKind::A),
            "b" => Ok(SeriesKind::B),
            "c" => Ok(SeriesKind::C),
            _ => Err(Error::Unsupported(format!("unknown series `{s}`"))),
        }
    }
}

/// The expansion of `kind(q^scale)` through `q^order`.
pub fn series_expansion(kind: SeriesKind, scale: Exponent, order: i64) -> Result<QExpansion> {
    if scale <= Exponent::from_integer(0) {
        return Err(Error::Domain(format!("scale must be positive, got {scale}")));
    }
    if order < 0 {
        return Err(Error::Domain(format!("order must be nonnegative, got {order}")));
    }
    let n = Exponent::from_integer(order);
    if kind == SeriesKind::Eta {
        return eta_series(scale, *(scale / 24).denom(), n);
    }
    let inner = (n / scale).ceil().to_integer().max(1);
    let base = match kind {
        SeriesKind::A => theta_a_series(inner),
        SeriesKind::B => b_series(inner)?,
        _ => c_series(inner)?,
    };
    Ok(base.subst(scale)?.truncate(n))
}

/// One `exponent<TAB>coefficient` line per nonzero term, ascending.
pub fn render_series(s: &QExpansion) -> String {
    s.terms().map(|(e, c)| format!("{e}\t{c}\n")).collect()
}

/// `id<TAB>status<TAB>description` per registry entry.
pub fn list() -> String {
    registry()
        .iter()
        .map(|d| format!("{}\t{}\t{}\n", d.id, d.status.as_str(), d.description))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios() {
        assert_eq!(parse_ratio("2/3").unwrap(), Ratio::new(2, 3));
        assert_eq!(parse_ratio("1.5").unwrap(), Ratio::new(3, 2));
        assert!(parse_ratio("x").is_err());
        assert!((parse_real("1/18").unwrap() - 1.0 / 18.0).abs() < 1e-17);
    }

    #[test]
    fn eta_lines() {
        let s = series_expansion(SeriesKind::Eta, Exponent::from_integer(1), 3).unwrap();
        assert_eq!(render_series(&s), "1/24\t1\n25/24\t-1\n49/24\t-1\n");
        let b = series_expansion(SeriesKind::B, Exponent::from_integer(2), 4).unwrap();
        assert_eq!(render_series(&b), "0\t1\n2\t-3\n");
    }

    #[test]
    fn eval_verbs() {
        let l3: Real = eval("L3", &["2".into()]).unwrap().parse().unwrap();
        assert!((l3 - 0.781_302_412_896_486_3).abs() < 1e-14);
        assert!(eval("nope", &[]).is_err());
        assert!(eval("H", &[]).is_err());
        let m: Real = eval("malpha", &["4".into()]).unwrap().parse().unwrap();
        let k: Real = eval("mahler", &["4+x+1/x+y+1/y".into()]).unwrap().parse().unwrap();
        assert!((m - k).abs() < 1e-9);
    }
}
