//! Exact values and their decimal renderings.

use monoideal_core::surface::QuadraticIrrational;
use monoideal_core::Rational;
use serde::{Deserialize, Serialize};

/// Parses `7`, `-3/2` or `0.125` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Ok(q) = text.parse::<Rational>() {
        return Some(q);
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = body.split_once('.')?;
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let int: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let scale = 10i64.checked_pow(u32::try_from(frac.len()).ok()?)?;
    let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    let value = Rational::new(int.checked_mul(scale)?.checked_add(frac)?, scale);
    Some(if negative { -value } else { value })
}

/// `q` rounded half away from zero to six decimal places.
pub fn decimal(q: Rational) -> String {
    let n = i128::from(*q.numer());
    let d = i128::from(*q.denom());
    let scaled = n.abs() * 1_000_000;
    let mut units = scaled / d;
    if 2 * (scaled % d) >= d {
        units += 1;
    }
    let sign = if n < 0 && units != 0 { "-" } else { "" };
    format!("{sign}{}.{:06}", units / 1_000_000, units % 1_000_000)
}

/// A rational reported both exactly and as a decimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    pub exact: String,
    pub decimal: String,
}

impl From<Rational> for ExactRational {
    fn from(q: Rational) -> Self {
        ExactRational { exact: q.to_string(), decimal: decimal(q) }
    }
}

/// `a + b√n` reported exactly, by parts, and as a decimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactQuadratic {
    pub exact: String,
    pub rational_part: Option<String>,
    pub irrational_coefficient: Option<String>,
    pub radicand: i64,
    pub decimal: String,
}

impl From<&QuadraticIrrational> for ExactQuadratic {
    fn from(x: &QuadraticIrrational) -> Self {
        ExactQuadratic {
            exact: x.to_string(),
            rational_part: x.rational_part().map(|q| q.to_string()),
            irrational_coefficient: x.irrational_coefficient().map(|q| q.to_string()),
            radicand: x.radicand(),
            decimal: format!("{:.6}", x.approximate(f64::sqrt)),
        }
    }
}
