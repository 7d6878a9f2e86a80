//! Decimal rendering and text parsing of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Renders `value` with exactly `digits` places after the decimal point,
/// rounding half to even.
///
/// ```
/// use num_rational::BigRational;
/// use recurseq::decimal::to_decimal;
///
/// let r: BigRational = "1/8".parse().unwrap();
/// assert_eq!(to_decimal(&r, 2), "0.12");
/// assert_eq!(to_decimal(&-r, 2), "-0.12");
/// ```
pub fn to_decimal(value: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = value * BigRational::from_integer(scale);
    let rounded = round_half_even(&scaled);

    let negative = rounded.is_negative();
    let mut body = rounded.abs().to_string();
    if digits > 0 {
        if body.len() <= digits {
            body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
        }
        body.insert(body.len() - digits, '.');
    }
    if negative {
        body.insert(0, '-');
    }
    body
}

fn round_half_even(x: &BigRational) -> BigInt {
    // floor division keeps the remainder in [0, denom)
    let (floor, rem) = x.numer().div_mod_floor(x.denom());
    let twice = rem * 2u32;
    match twice.cmp(x.denom()) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1u32,
        std::cmp::Ordering::Equal if floor.is_even() => floor,
        std::cmp::Ordering::Equal => floor + 1u32,
    }
}

/// Parses `num/den` or a bare integer into a reduced rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let parsed = match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(
            text.parse().map_err(|_| Error::Parse(format!("not a rational: {text:?}")))?,
        ),
    };
    Ok(parsed)
}
