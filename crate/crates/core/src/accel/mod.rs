//! Ratio sequences `x_n = U_n / U_{n−1}` and closed-form accelerations.
//!
//! Every acceleration here produces a subsequence `x_{g_n}` of the ratio
//! sequence from earlier members of the same subsequence, without touching the
//! intervening terms. The index sequences `g` are themselves order-2
//! recurrences: doubling (`g_n = 2·g_{n−1}`), Fibonacci indices, arithmetic
//! progressions, and the general case `g = W(i, j, s, t)`.

mod identities;

pub use identities::{
    cubic_fibonacci_sides, fkn_sides, nested_fibonacci_sides, verify_cubic_fibonacci_identity,
    verify_fkn_identity, verify_nested_fibonacci_identity,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::limits::{check_index, overflow};
use crate::recurrence::{
    basis_ut, companion_power, rational_basis, rational_pow, LinRecSequence, RecurrenceParams,
};

/// Value of a ratio-sequence term. Always a reduced rational.
pub type RatioValue = BigRational;

/// Index sequence `g = W(i, j, s, t)`: `g_0 = i`, `g_1 = j`,
/// `g_n = s·g_{n−1} − t·g_{n−2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexSequenceParams {
    pub i: i64,
    pub j: i64,
    pub s: i64,
    pub t: i64,
}

impl IndexSequenceParams {
    pub fn new(i: i64, j: i64, s: i64, t: i64) -> Self {
        Self { i, j, s, t }
    }

    /// `g = W(2, 3, 1, −1)`, i.e. `g_n = F_{n+3}`.
    pub fn fibonacci() -> Self {
        Self::new(2, 3, 1, -1)
    }

    /// The first `count` indices. Fails if any is below 2, beyond the index
    /// cap, or overflows.
    pub fn indices(&self, count: usize) -> Result<Vec<i64>> {
        let mut out: Vec<i64> = Vec::with_capacity(count);
        for n in 0..count {
            let g = match n {
                0 => self.i,
                1 => self.j,
                _ => self
                    .s
                    .checked_mul(out[n - 1])
                    .zip(self.t.checked_mul(out[n - 2]))
                    .and_then(|(a, b)| a.checked_sub(b))
                    .ok_or_else(|| overflow("index sequence term"))?,
            };
            if g < 2 {
                return Err(Error::InvalidArgument(format!(
                    "index sequence term g_{n} = {g} is below 2"
                )));
            }
            check_index(g)?;
            out.push(g);
        }
        Ok(out)
    }
}

/// One row of an acceleration table: `(g_n, U_{g_n}, T_{g_n}, x_{g_n})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccelEntry {
    pub index: i64,
    pub u: BigRational,
    pub t: BigRational,
    pub x: RatioValue,
}

fn degenerate(op: &'static str, index: Option<i64>) -> Error {
    Error::DegenerateRatio { op, index }
}

fn divide(num: BigRational, den: BigRational, op: &'static str, index: Option<i64>) -> Result<BigRational> {
    if den.is_zero() {
        Err(degenerate(op, index))
    } else {
        Ok(num / den)
    }
}

/// `x_n = U_n / U_{n−1}` for `n ≥ 2`.
pub fn ratio_x(params: &RecurrenceParams, n: i64) -> Result<RatioValue> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("ratio index must be at least 2, got {n}")));
    }
    check_index(n)?;
    // one power gives both U_{n-1} (top right) and U_n (bottom right)
    let m = companion_power(params, n - 1)?;
    divide(m.e22, m.e12, "ratio_x", Some(n))
}

/// `a_n / a_{n−1}` for an arbitrary sequence with the same `(p, q)`, computed
/// from `x_n` as `(a1·x_n − a0·q) / (a0·x_n + a1 − a0·p)`.
pub fn general_ratio_y(seq: &LinRecSequence, n: i64) -> Result<RatioValue> {
    let x = ratio_x(&seq.params, n)?;
    let (a0, a1) = (int(&seq.a0), int(&seq.a1));
    let (p, q) = (int(&seq.params.p), int(&seq.params.q));
    let num = &a1 * &x - &a0 * &q;
    let den = &a0 * &x + &a1 - &a0 * &p;
    divide(num, den, "general_ratio_y", Some(n))
}

/// `x_{n+m}` from `x_n` and `x_{m+1}`:
/// `(x_{m+1}·x_n − q) / (x_n + x_{m+1} − p)`.
pub fn shift_ratio(params: &RecurrenceParams, x_n: &RatioValue, x_m1: &RatioValue) -> Result<RatioValue> {
    let (p, q) = (int(&params.p), int(&params.q));
    let num = x_m1 * x_n - &q;
    let den = x_n + x_m1 - p;
    divide(num, den, "shift_ratio", None)
}

/// `x_{2n}` from `x_n`: `(2q·x_n − p·x_n²) / (q − x_n²)`.
pub fn double_ratio(params: &RecurrenceParams, x_n: &RatioValue) -> Result<RatioValue> {
    let (p, q) = (int(&params.p), int(&params.q));
    let sq = x_n * x_n;
    let num = BigRational::from_integer(BigInt::from(2)) * &q * x_n - &p * &sq;
    let den = q - sq;
    divide(num, den, "double_ratio", None)
}

/// `x_{F_n}` from `x_{F_{n−1}}` and `x_{F_{n−2}}`:
/// `(q·x_a + q·x_b − p·x_a·x_b) / (q − x_a·x_b)`.
pub fn fibonacci_index_accel(params: &RecurrenceParams, x_a: &RatioValue, x_b: &RatioValue) -> Result<RatioValue> {
    let (p, q) = (int(&params.p), int(&params.q));
    let prod = x_a * x_b;
    let num = &q * x_a + &q * x_b - &p * &prod;
    let den = q - prod;
    divide(num, den, "fibonacci_index_accel", None)
}

fn seed_entry(params: &RecurrenceParams, index: i64) -> Result<AccelEntry> {
    let (u, t) = basis_ut(params, index)?;
    let x = ratio_x(params, index)?;
    Ok(AccelEntry { index, u, t, x })
}

/// Acceleration along a general index sequence `g = W(i, j, s, t)`.
///
/// Entries 0 and 1 are evaluated directly. From entry 2 on, `U_{g_n}` and
/// `T_{g_n}` come from the bilinear expansion of `M^{s·g_{n−1}}·M^{−t·g_{n−2}}`
/// in the decimated bases `U^(s), T^(s)` (parameters of `M^s`) and
/// `U^(−t), T^(−t)` (parameters of `M^{−t}`), and `x_{g_n}` from the scaled
/// ratios `x^(s) = −q·U^(s)/T^(s)`, `x^(−t) = −q·U^(−t)/T^(−t)`:
///
/// ```text
///            q²·a2·X + q²·b2·Y − q·(a1·b2 + a2·b4)·X·Y
/// x_{g_n} = -------------------------------------------
///            q² − q·a1·X − q·b1·Y + (a1·b1 + a2·b3)·X·Y
/// ```
///
/// with `M^s = [[a1, a2], [a3, a4]]`, `M^{−t} = [[b1, b2], [b3, b4]]`,
/// `X = x^(s)_{g_{n−1}}` and `Y = x^(−t)_{g_{n−2}}`.
pub fn accelerate_general(params: &RecurrenceParams, g: &IndexSequenceParams, count: usize) -> Result<Vec<AccelEntry>> {
    const OP: &str = "accelerate_general";
    params.require_invertible()?;
    let indices = g.indices(count)?;
    let minus_t = g.t.checked_neg().ok_or_else(|| overflow("-t"))?;
    let ms = companion_power(params, g.s)?;
    let mt = companion_power(params, minus_t)?;
    let (ps, qs) = (ms.trace(), rational_pow(&params.q, g.s)?);
    let (pt, qt) = (mt.trace(), rational_pow(&params.q, minus_t)?);
    let (a1, a2) = (&ms.e11, &ms.e12);
    let (b1, b2, b3, b4) = (&mt.e11, &mt.e12, &mt.e21, &mt.e22);
    let c_u = a1 * b2 + a2 * b4;
    let c_t = a1 * b1 + a2 * b3;
    let q = int(&params.q);
    let q2 = &q * &q;

    let mut out = Vec::with_capacity(count);
    for (n, &index) in indices.iter().enumerate() {
        if n < 2 {
            out.push(seed_entry(params, index)?);
            continue;
        }
        let (us, ts) = rational_basis(&ps, &qs, indices[n - 1] as u64)?;
        let (ut, tt) = rational_basis(&pt, &qt, indices[n - 2] as u64)?;
        let u = a2 * &us * &tt + b2 * &ts * &ut + &c_u * &us * &ut;
        let t = &ts * &tt + a1 * &us * &tt + b1 * &ts * &ut + &c_t * &us * &ut;

        let xs = divide(-&q * &us, ts, OP, Some(index))?;
        let xt = divide(-&q * &ut, tt, OP, Some(index))?;
        let num = &q2 * a2 * &xs + &q2 * b2 * &xt - &q * &c_u * &xs * &xt;
        let den = &q2 - &q * a1 * &xs - &q * b1 * &xt + &c_t * &xs * &xt;
        let x = divide(num, den, OP, Some(index))?;
        out.push(AccelEntry { index, u, t, x });
    }
    Ok(out)
}

/// Acceleration along the arithmetic progression `g_n = k·n + h`
/// (`g = W(h, h+k, 2, 1)`), using `M^{g_n} = M^{2·g_{n−1}}·M^{−g_{n−2}}`.
///
/// Unlike [`accelerate_general`], each entry is computed from the two
/// previous entries of the table itself.
pub fn arithmetic_index_accel(params: &RecurrenceParams, h: i64, k: i64, count: usize) -> Result<Vec<AccelEntry>> {
    const OP: &str = "arithmetic_index_accel";
    params.require_invertible()?;
    if k < 0 {
        return Err(Error::InvalidArgument(format!("step k must be non-negative, got {k}")));
    }
    let h_plus_k = h.checked_add(k).ok_or_else(|| overflow("h + k"))?;
    let indices = IndexSequenceParams::new(h, h_plus_k, 2, 1).indices(count)?;
    let (p, q) = (int(&params.p), int(&params.q));
    let two = BigRational::from_integer(BigInt::from(2));

    let mut out: Vec<AccelEntry> = Vec::with_capacity(count);
    for (n, &index) in indices.iter().enumerate() {
        if n < 2 {
            out.push(seed_entry(params, index)?);
            continue;
        }
        let (e1, e2) = (&out[n - 1], &out[n - 2]);
        let scale = rational_pow(&params.q, -e2.index)?;
        let (u1, t1, u2, t2) = (&e1.u, &e1.t, &e2.u, &e2.t);
        let u1sq = u1 * u1;
        let t1sq = t1 * t1;
        let u = &scale * (&q * &u1sq * u2 + &two * t1 * u1 * t2 + &p * &u1sq * t2 - u2 * &t1sq);
        let t = &scale * (&t1sq * t2 + &p * &t1sq * u2 - &q * t2 * &u1sq + &two * &q * t1 * u1 * u2);

        let (x1, x2) = (&e1.x, &e2.x);
        let x1sq = x1 * x1;
        let num = &x1sq * x2 + &two * &q * x1 - &p * &x1sq - &q * x2;
        let den = &q - &p * x2 - &x1sq + &two * x1 * x2;
        let x = divide(num, den, OP, Some(index))?;
        out.push(AccelEntry { index, u, t, x });
    }
    Ok(out)
}

fn int(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}
