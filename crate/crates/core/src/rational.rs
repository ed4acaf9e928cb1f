//! Exact rational helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for every probability, weight, utility and regret.
pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"a/b"`, `"a"` or `"-a/b"`. Decimal and exponent forms are rejected.
pub fn parse(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::Parse(format!("malformed rational `{s}` (expected \"a/b\")"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let ok_digits = |x: &str, signed: bool| {
        let body = if signed { x.strip_prefix('-').unwrap_or(x) } else { x };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok_digits(num, true) || !ok_digits(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Q::new(n, d))
}

/// Canonical `"a/b"` form (`"a"` for integers).
pub fn format(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Human-facing rendering: the exact value, plus a decimal when it is not an integer.
pub fn display(q: &Q) -> String {
    if q.is_integer() {
        format(q)
    } else {
        format!("{} [{}]", format(q), to_f64(q))
    }
}

pub fn max_of<'a, I: IntoIterator<Item = &'a Q>>(it: I) -> Option<Q> {
    it.into_iter().fold(None, |acc: Option<Q>, x| match acc {
        Some(a) if &a >= x => Some(a),
        _ => Some(x.clone()),
    })
}

pub fn is_nonneg(q: &Q) -> bool {
    !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse("3/5").unwrap(), frac(3, 5));
        assert_eq!(parse("6/10").unwrap(), frac(3, 5));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert_eq!(parse(" 1 / 4 ").unwrap(), frac(1, 4));
    }

    #[test]
    fn rejects_floats_and_junk() {
        for s in ["0.6", "1e3", "", "a/b", "1/0", "1/-2", "--1"] {
            assert!(parse(s).is_err(), "{s} should be rejected");
        }
    }

    #[test]
    fn format_round_trips() {
        for q in [frac(61, 4), int(15), frac(-3, 7), int(0)] {
            assert_eq!(parse(&format(&q)).unwrap(), q);
        }
        assert_eq!(display(&frac(61, 4)), "61/4 [15.25]");
    }
}
