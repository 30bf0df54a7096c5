//! The base field: arbitrary-precision rationals.

use num::{BigInt, BigRational, Zero};
use thiserror::Error;

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator, so equality is canonical-form equality.
pub type Scalar = BigRational;

/// Failures when reading a rational from its text form.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ScalarParseError {
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"p/q"` or `"p"` with the sign on the numerator.
///
/// This is intentionally strict: no whitespace, no leading `+`, no sign on
/// the denominator. `"1/0"` is reported as a zero denominator rather than a
/// panic.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    let malformed = || ScalarParseError::Malformed(text.to_string());
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer = parse_int(num_text, true).ok_or_else(malformed)?;
    let denom = match den_text {
        Some(d) => parse_int(d, false).ok_or_else(malformed)?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(ScalarParseError::ZeroDenominator(text.to_string()));
    }
    Ok(Scalar::new(numer, denom))
}

fn parse_int(text: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match text.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => text,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut value: BigInt = digits.parse().ok()?;
    if text.starts_with('-') {
        value = -value;
    }
    Some(value)
}

/// Formats a scalar as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_scalar(s: &Scalar) -> String {
    use num::One;
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Shorthand for an integer scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from(BigInt::from(n))
}

/// Shorthand for the fraction `p/q`.
pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for text in ["0", "7", "-3", "1/2", "-22/7", "1000000000000000000000/3"] {
            let s = parse_scalar(text).unwrap();
            assert_eq!(format_scalar(&s), text);
        }
    }

    #[test]
    fn parse_normalizes_to_lowest_terms() {
        assert_eq!(parse_scalar("4/6").unwrap(), frac(2, 3));
        assert_eq!(format_scalar(&parse_scalar("4/6").unwrap()), "2/3");
        assert_eq!(format_scalar(&parse_scalar("3/1").unwrap()), "3");
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(
            parse_scalar("1/0"),
            Err(ScalarParseError::ZeroDenominator("1/0".into()))
        );
    }

    #[test]
    fn rejects_garbage() {
        for text in ["", "a", "1/", "/2", "1/-2", "+1", "1/2/3", " 1", "1 ", "1.5"] {
            assert!(matches!(parse_scalar(text), Err(ScalarParseError::Malformed(_))), "{text}");
        }
    }
}
