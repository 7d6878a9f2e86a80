//! Exact arithmetic for order-2 linear recurrences `a_n = p·a_{n−1} − q·a_{n−2}`.
//!
//! The crate is organised around the ratio sequence `x_n = U_n / U_{n−1}` of
//! the fundamental sequence `U = W(0, 1, p, q)`, which converges to the
//! larger-modulus root of `t² − p·t + q` when that root is real:
//!
//! - [`recurrence`]: term evaluation, the `U`/`T` basis, Lucas companions and
//!   integer powers of the companion matrix.
//! - [`accel`]: closed-form formulas that jump along subsequences `x_{g_n}`,
//!   plus the Fibonacci identities they imply.
//! - [`rootfind`]: secant, Newton, Halley and Householder steps on quadratics,
//!   and the index maps showing each method walks a subsequence of `x`.
//! - [`contfrac`]: continued fractions with rational partial quotients and the
//!   period-2 expansion `[b/a, b/c]` of quadratic irrationals.
//!
//! Every value is an exact [`BigRational`](num_rational::BigRational) or
//! [`BigInt`](num_bigint::BigInt); identities are checked by equality, never
//! by tolerance.
//!
//! ```
//! use recurseq::accel::{double_ratio, ratio_x};
//! use recurseq::recurrence::RecurrenceParams;
//!
//! let fib = RecurrenceParams::fibonacci();
//! let x4 = ratio_x(&fib, 4).unwrap();
//! assert_eq!(double_ratio(&fib, &x4).unwrap(), ratio_x(&fib, 8).unwrap());
//! ```

pub mod accel;
pub mod contfrac;
pub mod decimal;
pub mod error;
pub mod limits;
pub mod recurrence;
pub mod rootfind;

pub use error::{Error, Result};

// Book chapters are compiled as doc-tests so their snippets stay in sync.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/recurrences.md")]
    mod recurrences {}
    #[doc = include_str!("../../../book/src/accelerations.md")]
    mod accelerations {}
    #[doc = include_str!("../../../book/src/root_finding.md")]
    mod root_finding {}
    #[doc = include_str!("../../../book/src/continued_fractions.md")]
    mod continued_fractions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
