//! Batch identity checks. Instances run on the rayon pool; results are
//! collected in input order so the report is deterministic.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use recurseq::accel::{cubic_fibonacci_sides, fkn_sides, nested_fibonacci_sides, ratio_x};
use recurseq::contfrac::{convergents_direct, convergents_integer, quad_cf_convergent, PeriodicQuadCf};
use recurseq::recurrence::RecurrenceParams;
use recurseq::rootfind::{check_index_map, MapOutcome, Method};
use recurseq::{Error, Result};

/// Outcome of one instance: `Ok(None)` passes, `Ok(Some(details))` fails
/// with a counterexample description.
pub type Check = Result<Option<String>>;

pub struct Report {
    pub lines: Vec<String>,
    pub passed: usize,
    pub total: usize,
    pub error: Option<Error>,
}

impl Report {
    pub fn summary(&self) -> String {
        if self.passed == self.total {
            format!("PASS {}/{}", self.passed, self.total)
        } else {
            format!("FAIL {}/{} passed", self.passed, self.total)
        }
    }
}

pub fn run<T, F>(instances: Vec<(String, T)>, check: F) -> Report
where
    T: Send + Sync,
    F: Fn(&T) -> Check + Send + Sync,
{
    let results: Vec<(String, Check)> =
        instances.into_par_iter().map(|(label, input)| { let c = check(&input); (label, c) }).collect();
    let mut report = Report { lines: Vec::new(), passed: 0, total: results.len(), error: None };
    for (label, result) in results {
        match result {
            Ok(None) => {
                report.passed += 1;
                report.lines.push(format!("PASS {label}"));
            }
            Ok(Some(details)) => report.lines.push(format!("FAIL {label}: {details}")),
            Err(e) => {
                report.lines.push(format!("FAIL {label}: {e}"));
                report.error.get_or_insert(e);
            }
        }
    }
    report
}

fn sides(lhs: BigInt, rhs: BigInt) -> Check {
    Ok((lhs != rhs).then(|| format!("lhs = {lhs}, rhs = {rhs}")))
}

pub fn nested_fib(n_max: i64) -> Report {
    let instances = (3..=n_max).map(|n| (format!("nested-fib n={n}"), n)).collect();
    run(instances, |&n| nested_fibonacci_sides(n).and_then(|(l, r)| sides(l, r)))
}

pub fn fkn(k_max: i64, n_max: i64) -> Report {
    let instances = (1..=k_max)
        .flat_map(|k| (2..=n_max).map(move |n| (format!("fkn k={k} n={n}"), (k, n))))
        .collect();
    run(instances, |&(k, n)| fkn_sides(k, n).and_then(|(l, r)| sides(l, r)))
}

pub fn cubic_fib(n_max: i64) -> Report {
    let instances = (3..=n_max).map(|n| (format!("cubic-fib n={n}"), n)).collect();
    run(instances, |&n| cubic_fibonacci_sides(n).and_then(|(l, r)| sides(l, r)))
}

/// Secant positions index the Fibonacci-shaped chain `F_{k+2} + 1`, which
/// outgrows the one-point methods quickly, so they stop here.
pub const SECANT_POSITION_LIMIT: i64 = 24;

pub fn method_maps(params: &RecurrenceParams, k_max: i64) -> Report {
    let mut methods = vec![Method::Newton, Method::Halley];
    methods.extend((1..=5).map(Method::Householder));
    let mut instances: Vec<(String, (Method, i64))> = Vec::new();
    for method in methods {
        for k in 2..=k_max {
            instances.push((format!("{method} k={k}"), (method, k)));
        }
    }
    for pos in 2..=k_max.min(SECANT_POSITION_LIMIT) {
        instances.push((format!("secant position={pos}"), (Method::Secant, pos)));
    }
    run(instances, |&(method, k)| match check_index_map(params, method, k) {
        Ok(MapOutcome::Mismatch { target_index, step, target }) => {
            let show = |v: &Option<BigRational>| v.as_ref().map_or("undefined".to_string(), ToString::to_string);
            Ok(Some(format!("x_{target_index}: step gives {}, direct gives {}", show(&step), show(&target))))
        }
        Ok(_) => Ok(None),
        // the source ratio itself is undefined, so there is nothing to map
        Err(Error::DegenerateRatio { .. }) => Ok(None),
        Err(e) => Err(e),
    })
}

/// Direct, integer and σ-ratio convergents of `[b/a, b/c, …]` for
/// `0 ≤ n ≤ n_max`, plus `a·C_n = x_{n+2}` for the `(b, −ac)` recurrence.
/// Stops after the first index where the forms are jointly undefined.
pub fn cf_threeway(qcf: &PeriodicQuadCf, n_max: usize) -> Report {
    let cf = qcf.to_rational_cf();
    let count = n_max + 1;
    let degenerate_at = |r: &Result<Vec<_>>| match r {
        Err(Error::DegenerateConvergent { index }) => Some(*index as usize),
        _ => None,
    };
    let direct = convergents_direct(&cf, count);
    let integer = convergents_integer(&cf, count);
    let stop = degenerate_at(&direct).or(degenerate_at(&integer)).map_or(count, |d| d.min(count));
    let direct = match direct {
        Ok(v) => Ok(v),
        Err(Error::DegenerateConvergent { .. }) => convergents_direct(&cf, stop),
        Err(e) => Err(e),
    };
    let integer = match integer {
        Ok(v) => Ok(v),
        Err(Error::DegenerateConvergent { .. }) => convergents_integer(&cf, stop),
        Err(e) => Err(e),
    };
    let (direct, integer) = match (direct, integer) {
        (Ok(d), Ok(i)) => (d, i),
        (Err(e), _) | (_, Err(e)) => {
            return Report { lines: vec![format!("FAIL cf-threeway: {e}")], passed: 0, total: 1, error: Some(e) };
        }
    };
    let params = qcf.sigma_params();
    let a = BigRational::from_integer(qcf.a.clone());
    let mut instances: Vec<(String, usize)> = (0..stop).map(|n| (format!("cf-threeway n={n}"), n)).collect();
    if stop < count {
        instances.push((format!("cf-threeway n={stop} (undefined)"), stop));
    }
    run(instances, |&n| {
        if n == stop {
            let quad = quad_cf_convergent(qcf, n as u64);
            let bridge = ratio_x(&params, n as i64 + 2);
            return Ok((quad.is_ok() || bridge.is_ok())
                .then(|| format!("direct and integer forms are undefined but σ-ratio gives {quad:?}")));
        }
        let quad = quad_cf_convergent(qcf, n as u64)?;
        let (d, i) = (&direct[n].value, &integer[n].value);
        if d != &quad || i != &quad {
            return Ok(Some(format!("direct {d}, integer {i}, σ-ratio {quad}")));
        }
        let x = ratio_x(&params, n as i64 + 2)?;
        Ok((&a * &quad != x).then(|| format!("a·C_n = {}, x_{} = {x}", &a * &quad, n + 2)))
    })
}
