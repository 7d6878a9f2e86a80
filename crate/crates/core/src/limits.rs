//! Process-wide guard against runaway index growth.
//!
//! Subsequence indices such as `2^n + 1` or `F_{F_n}` grow exponentially, and
//! the corresponding terms have digit counts proportional to the index. Every
//! evaluation entry point checks its index against [`max_index`] and fails
//! with [`Error::IndexCap`] rather than attempting the computation.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default cap on the absolute value of any evaluated index.
pub const DEFAULT_MAX_INDEX: u64 = 10_000_000;

static MAX_INDEX: AtomicU64 = AtomicU64::new(DEFAULT_MAX_INDEX);

pub fn max_index() -> u64 {
    MAX_INDEX.load(Ordering::Relaxed)
}

/// Replaces the process-wide cap. Intended to be called once at startup.
pub fn set_max_index(cap: u64) {
    MAX_INDEX.store(cap, Ordering::Relaxed);
}

pub(crate) fn check_index(n: i64) -> Result<()> {
    let cap = max_index();
    if n.unsigned_abs() > cap {
        return Err(Error::IndexCap { index: n.to_string(), cap });
    }
    Ok(())
}

/// Error for an index computation that overflowed `i64`.
pub(crate) fn overflow(what: &str) -> Error {
    Error::IndexCap { index: what.to_string(), cap: max_index() }
}
