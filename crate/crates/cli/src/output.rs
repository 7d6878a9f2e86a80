use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use recurseq::decimal::to_decimal;
use serde_json::json;

/// How result values are printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    /// Reduced `num/den`, or a bare integer when the denominator is 1.
    Rational,
    /// Correctly rounded decimal with a fixed number of places.
    Decimal(usize),
    /// One JSON object per line with `index`, `value` and `method` fields.
    Records,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rational" => Ok(OutputFormat::Rational),
            "records" => Ok(OutputFormat::Records),
            _ => {
                let digits = s
                    .strip_prefix("decimal:")
                    .ok_or_else(|| format!("expected rational, decimal:N or records, found {s:?}"))?;
                match digits.parse::<usize>() {
                    Ok(n) if n >= 1 => Ok(OutputFormat::Decimal(n)),
                    _ => Err(format!("decimal places must be a positive integer, found {digits:?}")),
                }
            }
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutputFormat::Rational => f.write_str("rational"),
            OutputFormat::Decimal(n) => write!(f, "decimal:{n}"),
            OutputFormat::Records => f.write_str("records"),
        }
    }
}

impl OutputFormat {
    fn value(&self, value: &BigRational) -> String {
        match self {
            OutputFormat::Decimal(n) => to_decimal(value, *n),
            _ => value.to_string(),
        }
    }

    /// A bare value line.
    pub fn plain(&self, method: &str, index: Option<i64>, value: &BigRational) -> String {
        match self {
            OutputFormat::Records => self.record(method, index, value),
            _ => self.value(value),
        }
    }

    /// An `index value` line.
    pub fn indexed(&self, method: &str, index: i64, value: &BigRational) -> String {
        match self {
            OutputFormat::Records => self.record(method, Some(index), value),
            _ => format!("{index} {}", self.value(value)),
        }
    }

    fn record(&self, method: &str, index: Option<i64>, value: &BigRational) -> String {
        json!({ "index": index, "value": value.to_string(), "method": method }).to_string()
    }
}
