//! Exact secant, Newton, Halley and Householder steps on quadratics.
//!
//! Two polynomial conventions are used, matching how the methods connect to
//! the ratio sequence:
//!
//! - [`QuadraticAbc`] is `a·t² − b·t − c`, the form whose larger-modulus root
//!   is the value of the continued fraction `[b/a, b/c, b/a, b/c, …]`.
//! - [`QuadraticPq`] is `t² − p·t + q`, the characteristic polynomial of the
//!   recurrence. Substituting `z = a·t` turns the first into the second with
//!   `p = b`, `q = −a·c`.
//!
//! Starting from the ratio `x_k = U_k / U_{k−1}`, one Newton step lands on
//! `x_{2k−1}`, one Halley step on `x_{3k−2}`, and one Householder step of
//! order `d` on `x_{(d+1)k−d}`. The secant method walks the indices
//! `F_{n+2} + 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::accel::ratio_x;
use crate::decimal::to_decimal;
use crate::error::{Error, Result};
use crate::limits::{check_index, overflow};
use crate::recurrence::RecurrenceParams;

/// Default cap on iterations in [`approximate_root`].
pub const DEFAULT_MAX_ITERATIONS: usize = 64;

/// `a·t² − b·t − c` with `a ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticAbc {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadraticAbc {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let a = a.into();
        if a.is_zero() {
            return Err(Error::InvalidArgument("leading coefficient a must be nonzero".into()));
        }
        Ok(Self { a, b: b.into(), c: c.into() })
    }

    /// `b² + 4ac`.
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b + BigInt::from(4) * &self.a * &self.c
    }

    /// The monic polynomial `z² − b·z − a·c` satisfied by `z = a·t`.
    pub fn monic_scaled(&self) -> QuadraticPq {
        QuadraticPq { p: self.b.clone(), q: -(&self.a * &self.c) }
    }

    pub fn eval(&self, y: &BigRational) -> BigRational {
        let (a, b, c) = (rat(&self.a), rat(&self.b), rat(&self.c));
        (a * y - b) * y - c
    }

    fn require_real_roots(&self) -> Result<()> {
        let discriminant = self.discriminant();
        if discriminant.is_positive() {
            Ok(())
        } else {
            Err(Error::NonRealRoots { discriminant })
        }
    }
}

/// `t² − p·t + q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPq {
    pub p: BigInt,
    pub q: BigInt,
}

impl QuadraticPq {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        Self { p: p.into(), q: q.into() }
    }

    /// The same polynomial written as `1·t² − p·t − (−q)`.
    pub fn as_abc(&self) -> QuadraticAbc {
        QuadraticAbc { a: BigInt::one(), b: self.p.clone(), c: -&self.q }
    }

    pub fn eval(&self, y: &BigRational) -> BigRational {
        (y - rat(&self.p)) * y + rat(&self.q)
    }

    /// Coefficients, constant term first.
    fn coefficients(&self) -> Poly {
        Poly(vec![self.q.clone(), -&self.p, BigInt::one()])
    }
}

impl From<&RecurrenceParams> for QuadraticPq {
    fn from(params: &RecurrenceParams) -> Self {
        Self { p: params.p.clone(), q: params.q.clone() }
    }
}

/// Iteration schemes. `Householder(1)` is Newton and `Householder(2)` is Halley.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Secant,
    Newton,
    Halley,
    Householder(u32),
}

impl Method {
    /// Householder order of a one-point method; `None` for secant.
    pub fn order(self) -> Option<u32> {
        match self {
            Method::Secant => None,
            Method::Newton => Some(1),
            Method::Halley => Some(2),
            Method::Householder(d) => Some(d),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Secant => f.write_str("secant"),
            Method::Newton => f.write_str("newton"),
            Method::Halley => f.write_str("halley"),
            Method::Householder(d) => write!(f, "householder:{d}"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Accepts `secant`, `newton`, `halley` and `householder:<d>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "secant" => Ok(Method::Secant),
            "newton" => Ok(Method::Newton),
            "halley" => Ok(Method::Halley),
            _ => {
                let d = s
                    .strip_prefix("householder:")
                    .and_then(|d| d.parse::<u32>().ok())
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))?;
                Ok(Method::Householder(d))
            }
        }
    }
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn divide(num: BigRational, den: BigRational, method: &'static str) -> Result<BigRational> {
    if den.is_zero() {
        Err(Error::DegenerateStep { method })
    } else {
        Ok(num / den)
    }
}

/// Secant step `(a·x₁·x₂ + c) / (a·x₁ + a·x₂ − b)` from the two most recent
/// iterates.
pub fn secant_step(f: &QuadraticAbc, x_prev: &BigRational, x_prev2: &BigRational) -> Result<BigRational> {
    let (a, b, c) = (rat(&f.a), rat(&f.b), rat(&f.c));
    let num = &a * x_prev * x_prev2 + c;
    let den = &a * x_prev + &a * x_prev2 - b;
    divide(num, den, "secant")
}

/// Newton step `(a·y² + c) / (2a·y − b)`.
pub fn newton_step(f: &QuadraticAbc, y: &BigRational) -> Result<BigRational> {
    let (a, b, c) = (rat(&f.a), rat(&f.b), rat(&f.c));
    let num = &a * y * y + c;
    let den = BigRational::from_integer(BigInt::from(2)) * a * y - b;
    divide(num, den, "newton")
}

/// Halley step `y + (y² − p·y + q)(p − 2y) / (3y² − 3p·y + p² − q)`.
pub fn halley_step(f: &QuadraticPq, y: &BigRational) -> Result<BigRational> {
    let (p, q) = (rat(&f.p), rat(&f.q));
    let three = BigRational::from_integer(BigInt::from(3));
    let two = BigRational::from_integer(BigInt::from(2));
    let num = f.eval(y) * (&p - two * y);
    let den = &three * y * y - &three * &p * y + &p * &p - q;
    Ok(y + divide(num, den, "halley")?)
}

/// Integer polynomial, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly(Vec<BigInt>);

impl Poly {
    fn derivative(&self) -> Poly {
        Poly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    fn mul(&self, rhs: &Poly) -> Poly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return Poly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    fn sub(&self, rhs: &Poly) -> Poly {
        let len = self.0.len().max(rhs.0.len());
        let zero = BigInt::zero();
        let mut out: Vec<BigInt> = (0..len)
            .map(|i| self.0.get(i).unwrap_or(&zero) - rhs.0.get(i).unwrap_or(&zero))
            .collect();
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        Poly(out)
    }

    fn scale(&self, k: &BigInt) -> Poly {
        Poly(self.0.iter().map(|c| c * k).collect())
    }

    fn eval(&self, y: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * y + rat(c))
    }
}

/// Numerator polynomials of the derivatives of `1/f`:
/// `(1/f)^{(d)} = P_d / f^{d+1}` with `P_0 = 1` and
/// `P_d = P'_{d−1}·f − d·P_{d−1}·f'`. Returns `[P_0, …, P_d]`, each as
/// coefficients with the constant term first.
pub fn householder_polynomials(f: &QuadraticPq, d: u32) -> Vec<Vec<BigInt>> {
    polys(f, d).into_iter().map(|p| p.0).collect()
}

fn polys(f: &QuadraticPq, d: u32) -> Vec<Poly> {
    let fp = f.coefficients();
    let dfp = fp.derivative();
    let mut out = vec![Poly(vec![BigInt::one()])];
    for k in 1..=d {
        let prev = &out[k as usize - 1];
        let next = prev.derivative().mul(&fp).sub(&prev.mul(&dfp).scale(&BigInt::from(k)));
        out.push(next);
    }
    out
}

/// Householder step of order `d`: `y + d·P_{d−1}(y)·f(y) / P_d(y)`.
pub fn householder_step(f: &QuadraticPq, y: &BigRational, d: u32) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::InvalidArgument("Householder order must be at least 1".into()));
    }
    let ps = polys(f, d);
    let num = rat(&BigInt::from(d)) * ps[d as usize - 1].eval(y) * f.eval(y);
    let den = ps[d as usize].eval(y);
    Ok(y + divide(num, den, "householder")?)
}

/// One step of `method` on `a·t² − b·t − c`. One-point methods of order ≥ 2
/// run on the monic form in the scaled variable `z = a·t`.
///
/// For [`Method::Secant`] use [`secant_step`], which needs two iterates.
pub fn one_point_step(f: &QuadraticAbc, method: Method, y: &BigRational) -> Result<BigRational> {
    match method {
        Method::Secant => Err(Error::InvalidArgument("the secant method needs two iterates".into())),
        Method::Newton => newton_step(f, y),
        Method::Halley | Method::Householder(_) => {
            let d = method.order().unwrap_or(2);
            let a = rat(&f.a);
            let z = householder_step(&f.monic_scaled(), &(&a * y), d)?;
            Ok(z / a)
        }
    }
}

fn require_k(k: i64) -> Result<()> {
    if k < 2 {
        Err(Error::InvalidArgument(format!("ratio index must be at least 2, got {k}")))
    } else {
        Ok(())
    }
}

/// `2k − 1`: a Newton step from `x_k` lands on `x_{2k−1}`.
pub fn newton_index(k: i64) -> Result<i64> {
    householder_index(k, 1)
}

/// `3k − 2`: a Halley step from `x_k` lands on `x_{3k−2}`.
pub fn halley_index(k: i64) -> Result<i64> {
    householder_index(k, 2)
}

/// `(d+1)·k − d`: a Householder step of order `d` from `x_k`.
pub fn householder_index(k: i64, d: u32) -> Result<i64> {
    require_k(k)?;
    if d == 0 {
        return Err(Error::InvalidArgument("Householder order must be at least 1".into()));
    }
    let d = i64::from(d);
    (d + 1).checked_mul(k).and_then(|v| v.checked_sub(d)).ok_or_else(|| overflow("(d+1)k - d"))
}

/// `g_0 = 2`, `g_1 = 3`, `g_n = g_{n−1} + g_{n−2} − 1`, i.e. `g_n = F_{n+2} + 1`.
pub fn secant_index_sequence(count: usize) -> Result<Vec<i64>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let mut out: Vec<i64> = Vec::with_capacity(count);
    for n in 0..count {
        let g = match n {
            0 => 2,
            1 => 3,
            _ => out[n - 1]
                .checked_add(out[n - 2])
                .map(|v| v - 1)
                .ok_or_else(|| overflow("secant index"))?,
        };
        out.push(g);
    }
    Ok(out)
}

/// Result of comparing one method step against the ratio term it should hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapOutcome {
    /// Step and target are both defined and equal.
    Agree { target_index: i64, value: BigRational },
    /// The step denominator vanished and the target ratio is undefined too.
    BothUndefined { target_index: i64 },
    Mismatch { target_index: i64, step: Option<BigRational>, target: Option<BigRational> },
}

impl MapOutcome {
    pub fn is_consistent(&self) -> bool {
        !matches!(self, MapOutcome::Mismatch { .. })
    }
}

/// Checks one instance of an index map for the ratio sequence of `params`.
///
/// For one-point methods, `k` is the source ratio index and the step is
/// applied to `x_k`. For [`Method::Secant`], `k ≥ 2` is a position in
/// [`secant_index_sequence`] and the step is applied to the two preceding
/// entries. Inputs whose source ratios are undefined fail with
/// [`Error::DegenerateRatio`]; double roots are rejected.
pub fn check_index_map(params: &RecurrenceParams, method: Method, k: i64) -> Result<MapOutcome> {
    if params.discriminant().is_zero() {
        return Err(Error::InvalidArgument(format!("{params} has a double root")));
    }
    let f = QuadraticPq::from(params);
    let (target_index, step) = match method {
        Method::Secant => {
            require_k(k)?;
            let pos = usize::try_from(k).map_err(|_| overflow("position"))?;
            let g = secant_index_sequence(pos + 1)?;
            let (x1, x2) = (ratio_x(params, g[pos - 1])?, ratio_x(params, g[pos - 2])?);
            (g[pos], secant_step(&f.as_abc(), &x1, &x2))
        }
        _ => {
            let d = method.order().unwrap_or(1);
            let target = householder_index(k, d)?;
            check_index(target)?;
            let x = ratio_x(params, k)?;
            let step = match method {
                Method::Newton => newton_step(&f.as_abc(), &x),
                Method::Halley => halley_step(&f, &x),
                _ => householder_step(&f, &x, d),
            };
            (target, step)
        }
    };
    let target = match ratio_x(params, target_index) {
        Ok(v) => Some(v),
        Err(Error::DegenerateRatio { .. }) => None,
        Err(e) => return Err(e),
    };
    let step = match step {
        Ok(v) => Some(v),
        Err(Error::DegenerateStep { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(match (step, target) {
        (Some(s), Some(t)) if s == t => MapOutcome::Agree { target_index, value: s },
        (None, None) => MapOutcome::BothUndefined { target_index },
        (step, target) => MapOutcome::Mismatch { target_index, step, target },
    })
}

/// Starting points `(s₀, s₁)` for the iteration chains.
///
/// When `b ≠ 0` these are the first two convergents `b/a` and `b/a + c/b` of
/// the continued fraction `[b/a, b/c, …]`. When `b = 0` the roots `±√(c/a)`
/// share a modulus and the fraction is undefined; the seeds are then
/// `R = 1 + |c/a|` and `R + 1`, both above the positive root.
pub fn canonical_seeds(f: &QuadraticAbc) -> (BigRational, BigRational) {
    let (a, b, c) = (rat(&f.a), rat(&f.b), rat(&f.c));
    if f.b.is_zero() {
        let r = BigRational::one() + (c / a).abs();
        let r1 = &r + BigRational::one();
        (r, r1)
    } else {
        let c0 = &b / a;
        let c1 = &c0 + c / b;
        (c0, c1)
    }
}

/// The first `count` iterates of `method` from [`canonical_seeds`]. For the
/// secant method both seeds are included (`[s₀, s₁, secant(s₁, s₀), …]`);
/// otherwise the chain is `[s₀, step(s₀), …]`.
pub fn iterate_chain(f: &QuadraticAbc, method: Method, count: usize) -> Result<Vec<BigRational>> {
    let (s0, s1) = canonical_seeds(f);
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    out.push(s0);
    if method == Method::Secant {
        if count > 1 {
            out.push(s1);
        }
        while out.len() < count {
            let n = out.len();
            let next = secant_step(f, &out[n - 1], &out[n - 2])?;
            out.push(next);
        }
    } else {
        while out.len() < count {
            let next = one_point_step(f, method, out.last().expect("non-empty"))?;
            out.push(next);
        }
    }
    Ok(out)
}

/// A converged root approximation with its iteration history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootApproximation {
    pub decimal: String,
    pub value: BigRational,
    /// Every iterate, seeds included, ending with `value`.
    pub iterates: Vec<BigRational>,
}

/// Larger-modulus root of `a·t² − b·t − c` to `digits` decimal places.
///
/// Iterates `method` from [`canonical_seeds`] until two successive iterates
/// differ by at most `10^{−(digits+1)}`, then rounds the last iterate half to
/// even. Gives up with [`Error::NoProgress`] after
/// [`DEFAULT_MAX_ITERATIONS`] steps.
///
/// ```
/// use recurseq::rootfind::{approximate_root, Method, QuadraticAbc};
///
/// let golden = QuadraticAbc::new(1, 1, 1).unwrap();
/// assert_eq!(approximate_root(&golden, Method::Newton, 10).unwrap(), "1.6180339887");
/// ```
pub fn approximate_root(f: &QuadraticAbc, method: Method, digits: usize) -> Result<String> {
    approximate_root_with(f, method, digits, DEFAULT_MAX_ITERATIONS).map(|r| r.decimal)
}

pub fn approximate_root_with(
    f: &QuadraticAbc,
    method: Method,
    digits: usize,
    max_iterations: usize,
) -> Result<RootApproximation> {
    f.require_real_roots()?;
    if digits == 0 {
        return Err(Error::InvalidArgument("digits must be at least 1".into()));
    }
    let exponent = u32::try_from(digits + 1).map_err(|_| Error::InvalidArgument("too many digits".into()))?;
    let tolerance = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(exponent));

    let (s0, s1) = canonical_seeds(f);
    let mut iterates = vec![s0];
    if method == Method::Secant {
        iterates.push(s1);
    }
    for _ in 0..max_iterations {
        let n = iterates.len();
        let next = match method {
            Method::Secant => secant_step(f, &iterates[n - 1], &iterates[n - 2])?,
            _ => one_point_step(f, method, &iterates[n - 1])?,
        };
        let converged = (&next - &iterates[n - 1]).abs() <= tolerance;
        iterates.push(next);
        if converged {
            let value = iterates.last().expect("non-empty").clone();
            return Ok(RootApproximation { decimal: to_decimal(&value, digits), value, iterates });
        }
    }
    Err(Error::NoProgress { iterations: max_iterations })
}
