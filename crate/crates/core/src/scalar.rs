//! Exact rational scalars and their `"p/q"` text form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The ground field: arbitrary-precision rationals, always kept reduced.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Serializes as a reduced `"p/q"` string; integers keep the `/1`.
pub fn to_fraction_string(q: &Scalar) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Human-facing rendering: integers without a denominator.
pub fn to_display_string(q: &Scalar) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        to_fraction_string(q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {0:?}")]
pub struct ScalarParseError(pub String);

/// Accepts `p` or `p/q` with an optional leading sign on `p` and `q > 0`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    let err = || ScalarParseError(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let numer = BigInt::from_str(num).map_err(|_| err())?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let d = BigInt::from_str(d).map_err(|_| err())?;
            if !d.is_positive() {
                return Err(err());
            }
            d
        }
    };
    Ok(Scalar::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_strings_are_reduced() {
        assert_eq!(to_fraction_string(&parse_scalar("6/4").unwrap()), "3/2");
        assert_eq!(to_fraction_string(&parse_scalar("-2").unwrap()), "-2/1");
        assert_eq!(to_fraction_string(&zero()), "0/1");
        assert_eq!(to_display_string(&int(7)), "7");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "/", "1/0", "1/-2", "a", "1/2/3", "--1", "+1", "1 "] {
            assert!(parse_scalar(bad).is_err(), "{bad:?} accepted");
        }
    }
}
