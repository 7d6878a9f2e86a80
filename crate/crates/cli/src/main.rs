mod output;
mod verify;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use recurseq::accel::{
    accelerate_general, arithmetic_index_accel, double_ratio, fibonacci_index_accel, general_ratio_y, ratio_x,
    shift_ratio, AccelEntry, IndexSequenceParams,
};
use recurseq::contfrac::{
    convergents_direct, convergents_integer, method_cf_indices, quad_cf_convergent, PeriodicQuadCf, RationalCf,
};
use recurseq::limits::{max_index, set_max_index};
use recurseq::recurrence::{term, LinRecSequence, RecurrenceParams};
use recurseq::rootfind::{approximate_root_with, Method, QuadraticAbc, DEFAULT_MAX_ITERATIONS};
use recurseq::{Error, Result};

use output::OutputFormat;

/// Exact arithmetic for order-2 linear recurrences, their ratio
/// accelerations and the continued fractions behind them.
///
/// Negative values may follow a flag directly (`-q -1`) or be attached
/// with `=` (`-q=-1`, `--a0=-3`).
#[derive(Parser)]
#[command(name = "recurseq", version)]
struct Cli {
    /// Output format: rational, decimal:N or records (JSON lines).
    #[arg(long, global = true, default_value = "rational")]
    format: OutputFormat,

    /// Largest index any computation may reach.
    #[arg(long, global = true, env = "RECURSEQ_MAX_INDEX")]
    max_index: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Recurrence {
    #[arg(short, allow_hyphen_values = true)]
    p: BigInt,
    #[arg(short, allow_hyphen_values = true)]
    q: BigInt,
}

impl Recurrence {
    fn params(&self) -> RecurrenceParams {
        RecurrenceParams::new(self.p.clone(), self.q.clone())
    }
}

#[derive(Args)]
struct Quadratic {
    #[arg(short, allow_hyphen_values = true)]
    a: BigInt,
    #[arg(short, allow_hyphen_values = true)]
    b: BigInt,
    #[arg(short, allow_hyphen_values = true)]
    c: BigInt,
}

#[derive(Subcommand)]
enum Command {
    /// Term a_n of a_n = p·a_{n−1} − q·a_{n−2}.
    Seq {
        #[command(flatten)]
        rec: Recurrence,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a0: BigInt,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a1: BigInt,
        #[arg(short)]
        n: u64,
    },
    /// Ratio a_n / a_{n−1} (x_n = U_n / U_{n−1} without --a0/--a1).
    Ratio {
        #[command(flatten)]
        rec: Recurrence,
        #[arg(short, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, requires = "a1", allow_hyphen_values = true)]
        a0: Option<BigInt>,
        #[arg(long, requires = "a0", allow_hyphen_values = true)]
        a1: Option<BigInt>,
    },
    /// Ratios x_n along an accelerated index chain, one `index value` per line.
    Accelerate(Accelerate),
    /// Decimal approximation of the larger root of a·t² − b·t − c.
    Root {
        #[command(flatten)]
        quad: Quadratic,
        /// newton, secant, halley or householder (with --order).
        #[arg(long, default_value = "newton")]
        method: String,
        /// Householder order d ≥ 1.
        #[arg(long)]
        order: Option<u32>,
        #[arg(long, default_value_t = 10)]
        digits: usize,
        /// Also print each exact iterate with its convergent index.
        #[arg(long)]
        trace: bool,
    },
    /// Convergents of a continued fraction `a/b, c/d, … | period=k`, or of
    /// [b/a, b/c, b/a, …] with -a -b -c.
    Cf {
        #[arg(conflicts_with_all = ["a", "b", "c"])]
        fraction: Option<String>,
        #[arg(short, requires_all = ["b", "c"], allow_hyphen_values = true)]
        a: Option<BigInt>,
        #[arg(short, allow_hyphen_values = true)]
        b: Option<BigInt>,
        #[arg(short, allow_hyphen_values = true)]
        c: Option<BigInt>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = CfForm::Direct)]
        form: CfForm,
    },
    /// Check identities over a range and report PASS/FAIL per instance.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Args)]
struct Accelerate {
    #[command(flatten)]
    rec: Recurrence,
    #[arg(long, value_enum)]
    scheme: Scheme,
    /// First index for shift and double.
    #[arg(long, default_value_t = 2)]
    start: i64,
    /// Shift step: x_n → x_{n+m}.
    #[arg(long, default_value_t = 1)]
    m: i64,
    /// Arithmetic chain g_n = k·n + h.
    #[arg(long, default_value_t = 2)]
    h: i64,
    #[arg(long, default_value_t = 1)]
    k: i64,
    /// General chain g = W(i, j, s, t).
    #[arg(long, default_value_t = 2)]
    i: i64,
    #[arg(long, default_value_t = 3)]
    j: i64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    s: i64,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    t: i64,
    #[arg(long, default_value_t = 5)]
    count: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    Shift,
    Double,
    FibIndex,
    Arith,
    General,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CfForm {
    Direct,
    Integer,
    Quad,
}

#[derive(Subcommand)]
enum Verify {
    /// F_{F_n} in terms of F_{F_{n−1}} and F_{F_{n−2}}, for 3 ≤ n ≤ n-max.
    NestedFib {
        #[arg(long, default_value_t = 20)]
        n_max: i64,
    },
    /// F_{kn} in terms of F_{k(n−1)} and F_{k(n−2)}, for 1 ≤ k ≤ k-max, 2 ≤ n ≤ n-max.
    Fkn {
        #[arg(long, default_value_t = 5)]
        k_max: i64,
        #[arg(long, default_value_t = 15)]
        n_max: i64,
    },
    /// The k = 1 cubic identity for 3 ≤ n ≤ n-max.
    CubicFib {
        #[arg(long, default_value_t = 50)]
        n_max: i64,
    },
    /// Newton, Halley and Householder (d ≤ 5) steps on x_k land on x_{(d+1)k−d};
    /// secant steps follow the F_{n+2} + 1 chain.
    MethodMaps {
        #[command(flatten)]
        rec: Recurrence,
        #[arg(long, default_value_t = 32)]
        k_max: i64,
    },
    /// Direct, integer and σ-ratio convergents of [b/a, b/c, …] agree.
    CfThreeway {
        #[command(flatten)]
        quad: Quadratic,
        #[arg(long, default_value_t = 50)]
        n_max: usize,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::IndexCap { .. } | Error::NoProgress { .. } => 3,
        Error::InverseUnavailable
        | Error::DegenerateRatio { .. }
        | Error::DegenerateStep { .. }
        | Error::DegenerateConvergent { .. } => 4,
        Error::NonRealRoots { .. } => 5,
        Error::InvalidArgument(_) | Error::Parse(_) => 2,
    }
}

struct Out {
    format: OutputFormat,
    lines: io::StdoutLock<'static>,
}

impl Out {
    fn line(&mut self, text: &str) {
        // a closed pipe is not worth a panic
        let _ = writeln!(self.lines, "{text}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.max_index {
        set_max_index(cap);
    }
    let mut out = Out { format: cli.format, lines: io::stdout().lock() };
    let status = match cli.command {
        Command::Verify(which) => return run_verify(which, &mut out),
        Command::Seq { rec, a0, a1, n } => cmd_seq(&rec, a0, a1, n, &mut out),
        Command::Ratio { rec, n, a0, a1 } => cmd_ratio(&rec, n, a0.zip(a1), &mut out),
        Command::Accelerate(args) => cmd_accelerate(&args, &mut out),
        Command::Root { quad, method, order, digits, trace } => cmd_root(&quad, &method, order, digits, trace, &mut out),
        Command::Cf { fraction, a, b, c, count, form } => {
            let abc = match (a, b, c) {
                (Some(a), Some(b), Some(c)) => Some((a, b, c)),
                _ => None,
            };
            cmd_cf(fraction.as_deref(), abc, count, form, &mut out)
        }
    };
    match status {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.lines.flush();
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn integer(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn cmd_seq(rec: &Recurrence, a0: BigInt, a1: BigInt, n: u64, out: &mut Out) -> Result<()> {
    let value = term(&LinRecSequence::new(a0, a1, rec.params()), n)?;
    let index = i64::try_from(n).ok();
    out.line(&out.format.plain("seq", index, &integer(value)));
    Ok(())
}

fn cmd_ratio(rec: &Recurrence, n: i64, seeds: Option<(BigInt, BigInt)>, out: &mut Out) -> Result<()> {
    let value = match seeds {
        Some((a0, a1)) => general_ratio_y(&LinRecSequence::new(a0, a1, rec.params()), n)?,
        None => ratio_x(&rec.params(), n)?,
    };
    out.line(&out.format.plain("ratio", Some(n), &value));
    Ok(())
}

/// Re-labels a degenerate step with the index it was meant to produce.
fn at(index: i64, op: &'static str) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::DegenerateRatio { .. } => Error::DegenerateRatio { op, index: Some(index) },
        other => other,
    }
}

/// Next index of a chain built here, held to the same cap as the library.
fn checked(value: Option<i64>, what: &str) -> Result<i64> {
    let cap = max_index();
    match value {
        Some(n) if n.unsigned_abs() <= cap => Ok(n),
        Some(n) => Err(Error::IndexCap { index: n.to_string(), cap }),
        None => Err(Error::IndexCap { index: what.into(), cap }),
    }
}

fn cmd_accelerate(args: &Accelerate, out: &mut Out) -> Result<()> {
    let params = args.rec.params();
    let name = match args.scheme {
        Scheme::Shift => "shift",
        Scheme::Double => "double",
        Scheme::FibIndex => "fib-index",
        Scheme::Arith => "arith",
        Scheme::General => "general",
    };
    let emit = |out: &mut Out, index: i64, x: &BigRational| out.line(&out.format.indexed(name, index, x));
    let emit_table = |out: &mut Out, rows: Vec<AccelEntry>| {
        for row in rows {
            out.line(&out.format.indexed(name, row.index, &row.x));
        }
    };
    if args.count == 0 {
        return Ok(());
    }
    match args.scheme {
        Scheme::Shift => {
            if args.m < 1 {
                return Err(Error::InvalidArgument(format!("shift step m must be at least 1, got {}", args.m)));
            }
            let x_step = ratio_x(&params, checked(args.m.checked_add(1), "m + 1")?)?;
            let (mut n, mut x) = (args.start, ratio_x(&params, args.start)?);
            emit(out, n, &x);
            for _ in 1..args.count {
                n = checked(n.checked_add(args.m), "n + m")?;
                x = shift_ratio(&params, &x, &x_step).map_err(at(n, "shift_ratio"))?;
                emit(out, n, &x);
            }
        }
        Scheme::Double => {
            let (mut n, mut x) = (args.start, ratio_x(&params, args.start)?);
            emit(out, n, &x);
            for _ in 1..args.count {
                n = checked(n.checked_mul(2), "2n")?;
                x = double_ratio(&params, &x).map_err(at(n, "double_ratio"))?;
                emit(out, n, &x);
            }
        }
        Scheme::FibIndex => {
            let indices = IndexSequenceParams::fibonacci().indices(args.count)?;
            let mut xs: Vec<BigRational> = Vec::with_capacity(args.count);
            for (k, &index) in indices.iter().enumerate() {
                let x = if k < 2 {
                    ratio_x(&params, index)?
                } else {
                    fibonacci_index_accel(&params, &xs[k - 1], &xs[k - 2]).map_err(at(index, "fibonacci_index_accel"))?
                };
                emit(out, index, &x);
                xs.push(x);
            }
        }
        Scheme::Arith => emit_table(out, arithmetic_index_accel(&params, args.h, args.k, args.count)?),
        Scheme::General => {
            let g = IndexSequenceParams::new(args.i, args.j, args.s, args.t);
            emit_table(out, accelerate_general(&params, &g, args.count)?)
        }
    }
    Ok(())
}

fn parse_method(name: &str, order: Option<u32>) -> Result<Method> {
    match (name, order) {
        ("householder", Some(d)) if d >= 1 => Ok(Method::Householder(d)),
        ("householder", _) => Err(Error::InvalidArgument("householder needs --order d with d >= 1".into())),
        (_, Some(_)) => Err(Error::InvalidArgument("--order only applies to householder".into())),
        _ => name.parse(),
    }
}

fn cmd_root(quad: &Quadratic, method: &str, order: Option<u32>, digits: usize, trace: bool, out: &mut Out) -> Result<()> {
    let method = parse_method(method, order)?;
    let f = QuadraticAbc::new(quad.a.clone(), quad.b.clone(), quad.c.clone())?;
    let approx = approximate_root_with(&f, method, digits, DEFAULT_MAX_ITERATIONS)?;
    let label = method.to_string();
    match out.format {
        OutputFormat::Records => out.line(&out.format.plain(&label, None, &approx.value)),
        _ => out.line(&approx.decimal),
    }
    if trace {
        // the iterates coincide with convergents of [b/a, b/c, ...], which
        // only exists for b ≠ 0
        let indices = if quad.b.sign() == num_bigint::Sign::NoSign {
            None
        } else {
            method_cf_indices(method, approx.iterates.len()).ok()
        };
        for (k, x) in approx.iterates.iter().enumerate() {
            let line = match (&indices, out.format) {
                (Some(idx), OutputFormat::Records) => out.format.plain(&label, Some(idx[k] as i64), x),
                (None, OutputFormat::Records) => out.format.plain(&label, None, x),
                (Some(idx), _) => format!("idx {} → {x}", idx[k]),
                (None, _) => format!("iter {k} → {x}"),
            };
            out.line(&line);
        }
    }
    Ok(())
}

fn cmd_cf(
    fraction: Option<&str>,
    abc: Option<(BigInt, BigInt, BigInt)>,
    count: usize,
    form: CfForm,
    out: &mut Out,
) -> Result<()> {
    let method = match form {
        CfForm::Direct => "direct",
        CfForm::Integer => "integer",
        CfForm::Quad => "quad",
    };
    let (cf, qcf) = match (fraction, abc) {
        (Some(text), None) => {
            if form == CfForm::Quad {
                return Err(Error::InvalidArgument("--form quad needs -a -b -c".into()));
            }
            (text.parse::<RationalCf>()?, None)
        }
        (None, Some((a, b, c))) => {
            let qcf = PeriodicQuadCf::new(a, b, c)?;
            (qcf.to_rational_cf(), Some(qcf))
        }
        _ => return Err(Error::InvalidArgument("give either a fraction or -a -b -c".into())),
    };
    let values: Vec<(u64, BigRational)> = match (form, qcf) {
        (CfForm::Quad, Some(qcf)) => {
            (0..count as u64).map(|n| Ok((n, quad_cf_convergent(&qcf, n)?))).collect::<Result<_>>()?
        }
        (CfForm::Integer, _) => convergents_integer(&cf, count)?.into_iter().map(|r| (r.index, r.value)).collect(),
        _ => convergents_direct(&cf, count)?.into_iter().map(|r| (r.index, r.value)).collect(),
    };
    for (index, value) in values {
        out.line(&out.format.plain(method, Some(index as i64), &value));
    }
    Ok(())
}

fn run_verify(which: Verify, out: &mut Out) -> ExitCode {
    let report = match which {
        Verify::NestedFib { n_max } => verify::nested_fib(n_max),
        Verify::Fkn { k_max, n_max } => verify::fkn(k_max, n_max),
        Verify::CubicFib { n_max } => verify::cubic_fib(n_max),
        Verify::MethodMaps { rec, k_max } => verify::method_maps(&rec.params(), k_max),
        Verify::CfThreeway { quad, n_max } => match PeriodicQuadCf::new(quad.a, quad.b, quad.c) {
            Ok(qcf) => verify::cf_threeway(&qcf, n_max),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(exit_code(&e));
            }
        },
    };
    for line in &report.lines {
        out.line(line);
    }
    out.line(&report.summary());
    if let Some(e) = &report.error {
        let _ = out.lines.flush();
        eprintln!("error: {e}");
        return ExitCode::from(exit_code(e));
    }
    if report.passed == report.total {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
