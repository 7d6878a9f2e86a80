//! Independent oracles shared by the integration suites. Nothing here calls
//! into the evaluation paths it is used to check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Terms `a_0..=a_n` of `W(a0, a1, p, q)` by straight iteration.
pub fn naive_terms(a0: &BigInt, a1: &BigInt, p: &BigInt, q: &BigInt, n: usize) -> Vec<BigInt> {
    let mut v = vec![a0.clone(), a1.clone()];
    while v.len() <= n {
        let k = v.len();
        let next = p * &v[k - 1] - q * &v[k - 2];
        v.push(next);
    }
    v.truncate(n + 1);
    v
}

pub fn naive_u(p: i64, q: i64, n: usize) -> Vec<BigInt> {
    naive_terms(&BigInt::zero(), &BigInt::one(), &p.into(), &q.into(), n)
}

pub fn naive_t(p: i64, q: i64, n: usize) -> Vec<BigInt> {
    naive_terms(&BigInt::one(), &BigInt::zero(), &p.into(), &q.into(), n)
}

/// `U_n / U_{n-1}` from a naive table, `None` when the denominator vanishes.
pub fn naive_ratio(u: &[BigInt], n: usize) -> Option<BigRational> {
    if u[n - 1].is_zero() {
        None
    } else {
        Some(BigRational::new(u[n].clone(), u[n - 1].clone()))
    }
}

/// `√d` truncated to `digits` decimal places, as a rational.
pub fn sqrt_rational(d: &BigInt, digits: u32) -> BigRational {
    let scale = BigInt::from(10u32).pow(digits);
    let root = (d * &scale * &scale).sqrt();
    BigRational::new(root, scale)
}

/// Larger-modulus root of `A·t² + B·t + C` (real, distinct, unequal moduli)
/// to `digits` places.
pub fn larger_root(a: &BigInt, b: &BigInt, c: &BigInt, digits: u32) -> BigRational {
    let disc = b * b - BigInt::from(4) * a * c;
    assert!(disc.is_positive());
    let s = sqrt_rational(&disc, digits);
    let minus_b = BigRational::from_integer(-b);
    let two_a = BigRational::from_integer(BigInt::from(2) * a);
    let plus = (&minus_b + &s) / &two_a;
    let minus = (&minus_b - &s) / &two_a;
    if plus.abs() >= minus.abs() {
        plus
    } else {
        minus
    }
}

pub fn pow10(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(k))
}

pub fn fib_table(n: usize) -> Vec<BigInt> {
    naive_u(1, -1, n)
}
