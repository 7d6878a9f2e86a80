//! Continued fractions with rational partial quotients.
//!
//! A fraction `[a₀/b₀, a₁/b₁, …]` stands for
//! `a₀/b₀ + 1/(a₁/b₁ + 1/(a₂/b₂ + …))`. Its convergents can be computed
//! directly with rational numerators and denominators, or through integer
//! sequences `s, t, u` with `C_n = s_n / (b₀·t_n)`.
//!
//! The period-2 fraction `[b/a, b/c, b/a, b/c, …]` converges to the
//! larger-modulus root of `a·t² − b·t − c`, and its convergents are ratios of
//! the recurrence `σ = W(0, 1, b, −ac)`: `C_n = σ_{n+2} / (a·σ_{n+1})`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::limits::{check_index, overflow};
use crate::recurrence::{companion_power, RecurrenceParams};
use crate::rootfind::{Method, QuadraticAbc};

/// One partial quotient `num/den`, kept unreduced: the integer convergent
/// sequences depend on the pair, not just its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialQuotient {
    pub num: BigInt,
    pub den: BigInt,
}

impl PartialQuotient {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.den.clone())
    }
}

/// A finite or eventually periodic list of nonzero rational partial quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCf {
    quotients: Vec<PartialQuotient>,
    /// The last `period` quotients repeat forever.
    period: Option<usize>,
}

impl RationalCf {
    pub fn new(quotients: Vec<(BigInt, BigInt)>, period: Option<usize>) -> Result<Self> {
        if quotients.is_empty() {
            return Err(Error::InvalidArgument("continued fraction needs at least one quotient".into()));
        }
        if let Some(k) = period {
            if k == 0 || k > quotients.len() {
                return Err(Error::InvalidArgument(format!(
                    "period {k} must be between 1 and {}",
                    quotients.len()
                )));
            }
        }
        let quotients = quotients
            .into_iter()
            .enumerate()
            .map(|(i, (num, den))| {
                if num.is_zero() || den.is_zero() {
                    Err(Error::InvalidArgument(format!("partial quotient {i} ({num}/{den}) has a zero part")))
                } else {
                    Ok(PartialQuotient { num, den })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { quotients, period })
    }

    pub fn quotients(&self) -> &[PartialQuotient] {
        &self.quotients
    }

    pub fn period(&self) -> Option<usize> {
        self.period
    }

    /// The `i`-th partial quotient with the period expanded, or `None` past
    /// the end of a finite fraction.
    pub fn quotient(&self, i: usize) -> Option<&PartialQuotient> {
        let len = self.quotients.len();
        if i < len {
            return self.quotients.get(i);
        }
        let k = self.period?;
        let start = len - k;
        self.quotients.get(start + (i - start) % k)
    }

    fn take(&self, count: usize) -> Result<Vec<&PartialQuotient>> {
        if count == 0 {
            return Err(Error::InvalidArgument("count must be at least 1".into()));
        }
        (0..count)
            .map(|i| {
                self.quotient(i).ok_or_else(|| {
                    Error::InvalidArgument(format!("{count} convergents need {count} quotients, fraction has {}", self.quotients.len()))
                })
            })
            .collect()
    }
}

impl FromStr for RationalCf {
    type Err = Error;

    /// Parses `a/b, a/b, … [| period=k]`. A bare integer is a quotient with
    /// denominator 1.
    fn from_str(s: &str) -> Result<Self> {
        let (body, suffix) = match s.split_once('|') {
            Some((body, suffix)) => (body, Some(suffix.trim())),
            None => (s, None),
        };
        let period = match suffix {
            None => None,
            Some(text) => {
                let k = text
                    .strip_prefix("period")
                    .map(str::trim_start)
                    .and_then(|t| t.strip_prefix('='))
                    .and_then(|t| t.trim().parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("expected `period=k`, found {text:?}")))?;
                Some(k)
            }
        };
        let quotients = body
            .split(',')
            .map(|token| {
                let token = token.trim();
                let (n, d) = token.split_once('/').unwrap_or((token, "1"));
                let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad quotient {token:?}")))?;
                let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad quotient {token:?}")))?;
                Ok((n, d))
            })
            .collect::<Result<Vec<_>>>()?;
        RationalCf::new(quotients, period)
    }
}

impl fmt::Display for RationalCf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.quotients.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}/{}", q.num, q.den)?;
        }
        if let Some(k) = self.period {
            write!(f, " | period={k}")?;
        }
        Ok(())
    }
}

/// Auxiliary terms behind a convergent, depending on how it was computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvergentTerms {
    /// Rational recurrence: `C_n = p_n / q_n`.
    Direct { p: BigRational, q: BigRational },
    /// Integer recurrence: `C_n = s_n / (b₀·t_n)`, with `u_n = b₁⋯b_n`.
    Integer { s: BigInt, t: BigInt, u: BigInt },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentRecord {
    pub index: u64,
    pub value: BigRational,
    pub terms: ConvergentTerms,
}

/// The first `count` convergents from
/// `p_n = (a_n/b_n)·p_{n−1} + p_{n−2}`, `q_n = (a_n/b_n)·q_{n−1} + q_{n−2}`.
pub fn convergents_direct(cf: &RationalCf, count: usize) -> Result<Vec<ConvergentRecord>> {
    let qs = cf.take(count)?;
    let mut out: Vec<ConvergentRecord> = Vec::with_capacity(count);
    let (mut p_prev, mut q_prev) = (BigRational::one(), BigRational::zero());
    let (mut p_prev2, mut q_prev2) = (BigRational::zero(), BigRational::one());
    for (n, pq) in qs.iter().enumerate() {
        let x = pq.value();
        // seeding (p₋₁, q₋₁) = (1, 0) and (p₋₂, q₋₂) = (0, 1) reproduces
        // p₀ = a₀/b₀, q₀ = 1, p₁ = (a₀/b₀)(a₁/b₁) + 1, q₁ = a₁/b₁
        let p = &x * &p_prev + &p_prev2;
        let q = &x * &q_prev + &q_prev2;
        if q.is_zero() {
            return Err(Error::DegenerateConvergent { index: n as u64 });
        }
        out.push(ConvergentRecord {
            index: n as u64,
            value: &p / &q,
            terms: ConvergentTerms::Direct { p: p.clone(), q: q.clone() },
        });
        p_prev2 = std::mem::replace(&mut p_prev, p);
        q_prev2 = std::mem::replace(&mut q_prev, q);
    }
    Ok(out)
}

/// The first `count` convergents from the integer sequences
/// `s_n = a_n·s_{n−1} + b_n·b_{n−1}·s_{n−2}` (likewise `t`), `u_n = b_n·u_{n−1}`,
/// with `s₀ = a₀`, `s₁ = a₀a₁ + b₀b₁`, `t₀ = 1`, `t₁ = a₁`, `u₀ = 1`.
pub fn convergents_integer(cf: &RationalCf, count: usize) -> Result<Vec<ConvergentRecord>> {
    let qs = cf.take(count)?;
    let b0 = &qs[0].den;
    let mut s: Vec<BigInt> = Vec::with_capacity(count);
    let mut t: Vec<BigInt> = Vec::with_capacity(count);
    let mut u = BigInt::one();
    let mut out = Vec::with_capacity(count);
    for (n, pq) in qs.iter().enumerate() {
        let (sn, tn) = match n {
            0 => (pq.num.clone(), BigInt::one()),
            1 => (&qs[0].num * &pq.num + b0 * &pq.den, pq.num.clone()),
            _ => {
                let bb = &pq.den * &qs[n - 1].den;
                (&pq.num * &s[n - 1] + &bb * &s[n - 2], &pq.num * &t[n - 1] + &bb * &t[n - 2])
            }
        };
        if n > 0 {
            u *= &pq.den;
        }
        if tn.is_zero() {
            return Err(Error::DegenerateConvergent { index: n as u64 });
        }
        out.push(ConvergentRecord {
            index: n as u64,
            value: BigRational::new(sn.clone(), b0 * &tn),
            terms: ConvergentTerms::Integer { s: sn.clone(), t: tn.clone(), u: u.clone() },
        });
        s.push(sn);
        t.push(tn);
    }
    Ok(out)
}

/// The period-2 fraction `[b/a, b/c, b/a, b/c, …]` with `a, b, c ≠ 0`.
///
/// Convergents computed through [`quad_cf_convergent`] are memoised per
/// instance; the memo is safe to share between threads.
#[derive(Debug)]
pub struct PeriodicQuadCf {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    memo: RwLock<HashMap<u64, BigRational>>,
}

impl Clone for PeriodicQuadCf {
    fn clone(&self) -> Self {
        Self { a: self.a.clone(), b: self.b.clone(), c: self.c.clone(), memo: RwLock::default() }
    }
}

impl PartialEq for PeriodicQuadCf {
    fn eq(&self, other: &Self) -> bool {
        (&self.a, &self.b, &self.c) == (&other.a, &other.b, &other.c)
    }
}

impl Eq for PeriodicQuadCf {}

impl PeriodicQuadCf {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::InvalidArgument(format!("a, b, c must all be nonzero (got {a}, {b}, {c})")));
        }
        Ok(Self { a, b, c, memo: RwLock::default() })
    }

    /// Parameters `(b, −ac)` of `σ = W(0, 1, b, −ac)`.
    pub fn sigma_params(&self) -> RecurrenceParams {
        RecurrenceParams { p: self.b.clone(), q: -(&self.a * &self.c) }
    }

    /// `a·t² − b·t − c`.
    pub fn quadratic(&self) -> QuadraticAbc {
        QuadraticAbc { a: self.a.clone(), b: self.b.clone(), c: self.c.clone() }
    }

    pub fn to_rational_cf(&self) -> RationalCf {
        RationalCf {
            quotients: vec![
                PartialQuotient { num: self.b.clone(), den: self.a.clone() },
                PartialQuotient { num: self.b.clone(), den: self.c.clone() },
            ],
            period: Some(2),
        }
    }
}

/// `C_n = σ_{n+2} / (a·σ_{n+1})`.
pub fn quad_cf_convergent(qcf: &PeriodicQuadCf, n: u64) -> Result<BigRational> {
    if let Some(v) = qcf.memo.read().expect("memo lock poisoned").get(&n) {
        return Ok(v.clone());
    }
    let idx = i64::try_from(n).ok().and_then(|n| n.checked_add(1)).ok_or_else(|| overflow("n + 1"))?;
    // second column of M^{n+1} holds σ_{n+1}, σ_{n+2}
    let m = companion_power(&qcf.sigma_params(), idx)?;
    let (sigma1, sigma2) = (m.e12, m.e22);
    if sigma1.is_zero() {
        return Err(Error::DegenerateConvergent { index: n });
    }
    let value = sigma2 / (sigma1 * BigRational::from_integer(qcf.a.clone()));
    qcf.memo.write().expect("memo lock poisoned").insert(n, value.clone());
    Ok(value)
}

/// Convergent indices visited by `method`: `F_{n+2} − 1` (secant),
/// `2ⁿ − 1` (Newton), `3ⁿ − 1` (Halley), `(d+1)ⁿ − 1` (Householder order `d`).
pub fn method_cf_indices(method: Method, count: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    match method.order() {
        None => {
            let (mut f1, mut f2) = (1u64, 2u64); // F_2, F_3
            for _ in 0..count {
                out.push(f1 - 1);
                let next = f1.checked_add(f2).ok_or_else(|| overflow("secant index"))?;
                (f1, f2) = (f2, next);
            }
        }
        Some(d) => {
            let base = u64::from(d) + 1;
            let mut power = 1u64;
            for n in 0..count {
                if n > 0 {
                    power = power.checked_mul(base).ok_or_else(|| overflow("method index"))?;
                }
                out.push(power - 1);
            }
        }
    }
    for &i in &out {
        check_index(i64::try_from(i).map_err(|_| overflow("method index"))?)?;
    }
    Ok(out)
}

/// Convergents at the indices where `method` lands, paired with the index.
///
/// The values coincide with [`iterate_chain`](crate::rootfind::iterate_chain)
/// on `a·t² − b·t − c`.
pub fn method_subsequence(qcf: &PeriodicQuadCf, method: Method, count: usize) -> Result<Vec<(u64, BigRational)>> {
    let discriminant = qcf.quadratic().discriminant();
    if discriminant <= BigInt::zero() {
        return Err(Error::NonRealRoots { discriminant });
    }
    method_cf_indices(method, count)?
        .into_iter()
        .map(|i| Ok((i, quad_cf_convergent(qcf, i)?)))
        .collect()
}
