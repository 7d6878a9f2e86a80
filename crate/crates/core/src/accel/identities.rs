//! Fibonacci identities that fall out of the acceleration formulas.
//!
//! Each identity is exposed twice: a `*_sides` function returning both sides
//! so callers can report counterexamples, and a `verify_*` wrapper returning
//! the comparison.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::limits::overflow;
use crate::recurrence::{basis_ut, RecurrenceParams};

/// `F_n` for any integer `n` (`F_{−n} = (−1)^{n+1}·F_n`).
pub(crate) fn fib(n: i64) -> Result<BigInt> {
    let (u, _) = basis_ut(&RecurrenceParams::fibonacci(), n)?;
    // q = -1, so negative powers of M stay integral
    Ok(u.to_integer())
}

fn fib_index(n: i64) -> Result<i64> {
    let f = fib(n)?;
    i64::try_from(&f).map_err(|_| overflow("Fibonacci index"))
}

fn sign(exponent: i64) -> BigInt {
    if exponent.is_even() {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// Both sides of `F_{F_n} = F_{F_{n−1}}·F_{F_{n−2}−1} + F_{F_{n−1}−1}·F_{F_{n−2}} + F_{F_{n−1}}·F_{F_{n−2}}`.
pub fn nested_fibonacci_sides(n: i64) -> Result<(BigInt, BigInt)> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("nested identity needs n >= 3, got {n}")));
    }
    let (fa, fb) = (fib_index(n - 1)?, fib_index(n - 2)?);
    let lhs = fib(fib_index(n)?)?;
    let (a, a1) = (fib(fa)?, fib(fa - 1)?);
    let (b, b1) = (fib(fb)?, fib(fb - 1)?);
    let rhs = &a * &b1 + &a1 * &b + &a * &b;
    Ok((lhs, rhs))
}

pub fn verify_nested_fibonacci_identity(n: i64) -> Result<bool> {
    let (l, r) = nested_fibonacci_sides(n)?;
    Ok(l == r)
}

/// Both sides of the cubic identity for `F_{kn}`:
///
/// ```text
/// F_{kn} = (−1)^{k(n−2)}·( −F_A²·F_B + 2·F_A·F_{A−1}·F_{B−1} + F_A²·F_{B−1} − F_B·F_{A−1}² )
/// ```
///
/// with `A = k(n−1)`, `B = k(n−2)`.
pub fn fkn_sides(k: i64, n: i64) -> Result<(BigInt, BigInt)> {
    if k < 1 || n < 2 {
        return Err(Error::InvalidArgument(format!("F_kn identity needs k >= 1, n >= 2 (got k={k}, n={n})")));
    }
    let a_idx = k.checked_mul(n - 1).ok_or_else(|| overflow("k(n-1)"))?;
    let b_idx = k.checked_mul(n - 2).ok_or_else(|| overflow("k(n-2)"))?;
    let lhs = fib(k.checked_mul(n).ok_or_else(|| overflow("kn"))?)?;
    let (fa, fa1) = (fib(a_idx)?, fib(a_idx - 1)?);
    let (fb, fb1) = (fib(b_idx)?, fib(b_idx - 1)?);
    let fa_sq = &fa * &fa;
    let body = -&fa_sq * &fb + BigInt::from(2) * &fa * &fa1 * &fb1 + &fa_sq * &fb1 - &fb * &fa1 * &fa1;
    Ok((lhs, sign(b_idx) * body))
}

pub fn verify_fkn_identity(k: i64, n: i64) -> Result<bool> {
    let (l, r) = fkn_sides(k, n)?;
    Ok(l == r)
}

/// Both sides of the `k = 1` specialisation
/// `F_n = (−1)^n·(−F_{n−1}²·F_{n−2} + 2·F_{n−1}·F_{n−2}·F_{n−3} + F_{n−1}²·F_{n−3} − F_{n−2}³)`.
pub fn cubic_fibonacci_sides(n: i64) -> Result<(BigInt, BigInt)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("cubic identity needs n >= 2, got {n}")));
    }
    let (f1, f2, f3) = (fib(n - 1)?, fib(n - 2)?, fib(n - 3)?);
    let f1_sq = &f1 * &f1;
    let body = -&f1_sq * &f2 + BigInt::from(2) * &f1 * &f2 * &f3 + &f1_sq * &f3 - &f2 * &f2 * &f2;
    Ok((fib(n)?, sign(n) * body))
}

pub fn verify_cubic_fibonacci_identity(n: i64) -> Result<bool> {
    let (l, r) = cubic_fibonacci_sides(n)?;
    Ok(l == r)
}
