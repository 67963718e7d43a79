//! The text grammar for `θ` and `η`.
//!
//! ```text
//! poly:c0,c1,...,cn;interval:lo,hi     root of c0 + c1 x + ... + cn x^n in (lo, hi]
//! quad:(x+y*sqrt(r))/z                 (x + y √r) / z, also sqrt(r/s)
//! elt:c0,c1,...                        c0 + c1 θ + c2 θ² + ... in Q(θ)
//! ```
//!
//! Coefficients are ascending (constant first); numbers are integers or
//! fractions `p/q`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;
use regex::Regex;
use ut4k::exact::{parse_rat, rat_to_string, Rat};
use ut4k::{Poly, QuadraticForm};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThetaSpec {
    Poly { coeffs: Vec<Rat>, lo: Rat, hi: Rat },
    Quad(QuadraticForm),
    Elt(Vec<Rat>),
}

fn rat_list(s: &str) -> Result<Vec<Rat>, String> {
    s.split(',')
        .map(|t| parse_rat(t.trim()).ok_or_else(|| format!("not a rational number: {t:?}")))
        .collect()
}

fn quad_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(
            r"^\(\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*(?:/\s*(\d+)\s*)?\)\s*\)\s*(?:/\s*(-?\d+))?$",
        )
        .expect("valid regex")
    })
}

impl ThetaSpec {
    /// Malformed text is an input error; a well-formed but rational surd is a domain error.
    pub fn parse(s: &str) -> Result<ThetaSpec, CliError> {
        let bad = CliError::Input;
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("poly:") {
            let (coeffs, interval) = rest
                .split_once(";interval:")
                .ok_or_else(|| bad("poly spec needs ';interval:lo,hi'".into()))?;
            let coeffs = rat_list(coeffs).map_err(bad)?;
            let iv = rat_list(interval).map_err(bad)?;
            let [lo, hi]: [Rat; 2] = iv.try_into().map_err(|_| bad("interval needs exactly two endpoints".into()))?;
            if coeffs.len() < 2 {
                return Err(bad("polynomial must have degree at least 1".into()));
            }
            return Ok(ThetaSpec::Poly { coeffs, lo, hi });
        }
        if let Some(rest) = s.strip_prefix("quad:") {
            let c = quad_regex()
                .captures(rest.trim())
                .ok_or_else(|| bad(format!("expected quad:(x±y*sqrt(r))/z, got {rest:?}")))?;
            let int = |i: usize| c.get(i).map(|m| m.as_str().parse::<BigInt>().expect("digits"));
            let mut y = int(3).expect("y");
            if &c[2] == "-" {
                y = -y;
            }
            return QuadraticForm::from_parts(
                int(1).expect("x"),
                y,
                int(6).unwrap_or_else(BigInt::one),
                int(4).expect("r"),
                int(5).unwrap_or_else(BigInt::one),
            )
            .map(ThetaSpec::Quad)
            .map_err(CliError::from);
        }
        if let Some(rest) = s.strip_prefix("elt:") {
            return Ok(ThetaSpec::Elt(rat_list(rest).map_err(bad)?));
        }
        Err(bad(format!("unknown spec {s:?}: expected poly:, quad: or elt:")))
    }

    pub fn poly(&self) -> Option<Poly> {
        match self {
            ThetaSpec::Poly { coeffs, .. } => Some(Poly::new(coeffs.clone())),
            _ => None,
        }
    }
}

fn join(v: &[Rat]) -> String {
    v.iter().map(rat_to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaSpec::Poly { coeffs, lo, hi } => {
                write!(f, "poly:{};interval:{},{}", join(coeffs), rat_to_string(lo), rat_to_string(hi))
            }
            ThetaSpec::Quad(q) => {
                let sign = if q.y() < &BigInt::from(0) { '-' } else { '+' };
                let y: BigInt = if sign == '-' { -q.y().clone() } else { q.y().clone() };
                write!(f, "quad:({}{}{}*sqrt({}))/{}", q.x(), sign, y, q.radicand(), q.z())
            }
            ThetaSpec::Elt(c) => write!(f, "elt:{}", join(c)),
        }
    }
}
