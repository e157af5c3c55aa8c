//! Exact rational arithmetic used throughout: thresholds like
//! `(16/(1-lambda) + 2/inf_AK)k - 2` must be compared exactly, never in
//! floating point.

use crate::{Error, Result};
use num_rational::Ratio;

/// Exact rational number.
pub type Rat = Ratio<i64>;

/// Shorthand constructor, `rat(a, b) = a/b`.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Ratio::new(numer, denom)
}

/// Parses `p/q` or a plain integer.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer: i64 = n
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational `{s}`")))?;
    let denom: i64 = d
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational `{s}`")))?;
    if denom == 0 {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Ratio::new(numer, denom))
}
