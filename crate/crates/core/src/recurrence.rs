//! Order-2 linear recurrences `a_n = p·a_{n-1} − q·a_{n-2}` over the integers.
//!
//! Every sequence with parameters `(p, q)` is a combination `a1·U + a0·T` of
//! the basis sequences `U = W(0, 1, p, q)` and `T = W(1, 0, p, q)`, and the
//! companion matrix `M = [[0, 1], [−q, p]]` packs them as
//! `M^n = [[T_n, U_n], [T_{n+1}, U_{n+1}]]`. All evaluation goes through
//! binary exponentiation of `M`, so a term costs `O(log n)` big-number
//! multiplications.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::limits::check_index;

/// Coefficients of the characteristic polynomial `t² − p·t + q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RecurrenceParams {
    pub p: BigInt,
    pub q: BigInt,
}

impl RecurrenceParams {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        Self { p: p.into(), q: q.into() }
    }

    /// `(p, q) = (1, −1)`, whose `U` sequence is Fibonacci.
    pub fn fibonacci() -> Self {
        Self::new(1, -1)
    }

    /// `p² − 4q`; zero exactly when the characteristic roots coincide.
    pub fn discriminant(&self) -> BigInt {
        &self.p * &self.p - BigInt::from(4) * &self.q
    }

    pub(crate) fn require_invertible(&self) -> Result<()> {
        if self.q.is_zero() {
            Err(Error::InverseUnavailable)
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for RecurrenceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={})", self.p, self.q)
    }
}

/// The sequence `W(a0, a1, p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinRecSequence {
    pub a0: BigInt,
    pub a1: BigInt,
    pub params: RecurrenceParams,
}

impl LinRecSequence {
    pub fn new(a0: impl Into<BigInt>, a1: impl Into<BigInt>, params: RecurrenceParams) -> Self {
        Self { a0: a0.into(), a1: a1.into(), params }
    }

    pub fn term(&self, n: u64) -> Result<BigInt> {
        term(self, n)
    }
}

/// A 2×2 matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix2 {
    pub e11: BigRational,
    pub e12: BigRational,
    pub e21: BigRational,
    pub e22: BigRational,
}

impl Matrix2 {
    pub fn new(e11: BigRational, e12: BigRational, e21: BigRational, e22: BigRational) -> Self {
        Self { e11, e12, e21, e22 }
    }

    pub fn identity() -> Self {
        let (o, z) = (BigRational::one(), BigRational::zero());
        Self::new(o.clone(), z.clone(), z, o)
    }

    /// Companion matrix `[[0, 1], [−q, p]]` for rational coefficients.
    pub fn companion(p: &BigRational, q: &BigRational) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), -q, p.clone())
    }

    pub fn det(&self) -> BigRational {
        &self.e11 * &self.e22 - &self.e12 * &self.e21
    }

    pub fn trace(&self) -> BigRational {
        &self.e11 + &self.e22
    }

    /// `self^n` for `n ≥ 0` by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut result = Self::identity();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn scale(self, k: &BigRational) -> Self {
        Self::new(self.e11 * k, self.e12 * k, self.e21 * k, self.e22 * k)
    }
}

impl Mul for &Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: &Matrix2) -> Matrix2 {
        Matrix2::new(
            &self.e11 * &rhs.e11 + &self.e12 * &rhs.e21,
            &self.e11 * &rhs.e12 + &self.e12 * &rhs.e22,
            &self.e21 * &rhs.e11 + &self.e22 * &rhs.e21,
            &self.e21 * &rhs.e12 + &self.e22 * &rhs.e22,
        )
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.e11, self.e12, self.e21, self.e22)
    }
}

/// Integer counterpart of [`Matrix2`] used on the hot path; avoids gcd
/// normalisation on every product.
#[derive(Clone)]
struct IntMatrix([BigInt; 4]);

impl IntMatrix {
    fn identity() -> Self {
        Self([BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()])
    }

    fn mul(&self, rhs: &Self) -> Self {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &rhs.0;
        Self([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    fn pow(&self, mut n: u64) -> Self {
        let mut result = Self::identity();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    fn into_rational(self) -> Matrix2 {
        let [a, b, c, d] = self.0;
        Matrix2::new(
            BigRational::from_integer(a),
            BigRational::from_integer(b),
            BigRational::from_integer(c),
            BigRational::from_integer(d),
        )
    }
}

fn int_companion_power(params: &RecurrenceParams, n: u64) -> IntMatrix {
    let m = IntMatrix([BigInt::zero(), BigInt::one(), -&params.q, params.p.clone()]);
    m.pow(n)
}

/// `(U_n, T_n)` for `n ≥ 0` as integers.
pub fn basis_ut_int(params: &RecurrenceParams, n: u64) -> Result<(BigInt, BigInt)> {
    check_index(i64::try_from(n).map_err(|_| crate::limits::overflow("index"))?)?;
    let IntMatrix([t, u, _, _]) = int_companion_power(params, n);
    Ok((u, t))
}

/// Exact `n`-th term, via `a_n = a1·U_n + a0·T_n`.
pub fn term(seq: &LinRecSequence, n: u64) -> Result<BigInt> {
    let (u, t) = basis_ut_int(&seq.params, n)?;
    Ok(&seq.a1 * u + &seq.a0 * t)
}

/// `M^n` for any integer `n`; negative powers need `q ≠ 0`.
///
/// For `n < 0` this uses `M^{−k} = q^{−k}·[[T_k + p·U_k, −U_k], [q·U_k, T_k]]`.
pub fn companion_power(params: &RecurrenceParams, n: i64) -> Result<Matrix2> {
    check_index(n)?;
    if n >= 0 {
        return Ok(int_companion_power(params, n as u64).into_rational());
    }
    params.require_invertible()?;
    let k = n.unsigned_abs();
    let IntMatrix([t, u, _, _]) = int_companion_power(params, k);
    let adj = IntMatrix([&t + &params.p * &u, -&u, &params.q * &u, t]).into_rational();
    let q_pow = num_traits::pow(BigRational::from_integer(params.q.clone()), k as usize);
    Ok(adj.scale(&q_pow.recip()))
}

/// `(U_n, T_n)` for any integer `n`. Negative indices follow the Binet
/// extension and generally produce non-integer rationals.
pub fn basis_ut(params: &RecurrenceParams, n: i64) -> Result<(BigRational, BigRational)> {
    if n >= 0 {
        let (u, t) = basis_ut_int(params, n as u64)?;
        return Ok((BigRational::from_integer(u), BigRational::from_integer(t)));
    }
    let m = companion_power(params, n)?;
    Ok((m.e12, m.e11))
}

/// Lucas companion `V_n = W(2, p, p, q)_n = 2·T_n + p·U_n`.
pub fn lucas_v(params: &RecurrenceParams, n: u64) -> Result<BigInt> {
    let (u, t) = basis_ut_int(params, n)?;
    Ok(BigInt::from(2) * t + &params.p * u)
}

/// Parameters `(V_m, q^m)` of the `m`-decimated basis sequences, so that
/// `U_{mn} = U_m·U'_n` and `T_{mn} = T'_n + T_m·U'_n`.
pub fn decimated_params(params: &RecurrenceParams, m: u64) -> Result<RecurrenceParams> {
    if m == 0 {
        return Err(Error::InvalidArgument("decimation factor must be at least 1".into()));
    }
    let v = lucas_v(params, m)?;
    let q = num_traits::pow(params.q.clone(), usize::try_from(m).map_err(|_| crate::limits::overflow("m"))?);
    Ok(RecurrenceParams { p: v, q })
}

/// `(U_n, T_n)` for rational parameters `(p, q)` and `n ≥ 0`, read off the
/// first row of the rational companion power.
pub(crate) fn rational_basis(p: &BigRational, q: &BigRational, n: u64) -> Result<(BigRational, BigRational)> {
    check_index(i64::try_from(n).map_err(|_| crate::limits::overflow("index"))?)?;
    let m = Matrix2::companion(p, q).pow(n);
    Ok((m.e12, m.e11))
}

/// `q^n` as a rational for any integer `n` (`q ≠ 0` when `n < 0`).
pub(crate) fn rational_pow(q: &BigInt, n: i64) -> Result<BigRational> {
    let base = BigRational::from_integer(q.clone());
    if n >= 0 {
        return Ok(num_traits::pow(base, n as usize));
    }
    if q.is_zero() {
        return Err(Error::InverseUnavailable);
    }
    Ok(num_traits::pow(base, n.unsigned_abs() as usize).recip())
}
