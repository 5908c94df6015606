use clap::{Args, Parser, Subcommand, ValueEnum};

use logser_core::{parse_rational, ExactRational, Method};

use crate::bench::BenchMethod;

#[derive(Debug, Parser)]
#[command(
    name = "logser",
    version,
    about = "Balanced cyclic harmonic series: ln, pi, gamma and relations"
)]
pub struct Cli {
    /// Cap on exact block-terms (or float blocks) per evaluation.
    /// Overrides LOGSER_BLOCK_BUDGET.
    #[arg(long, global = true, value_parser = parse_budget)]
    pub block_budget: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct FormatArg {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct Shared {
    /// Target absolute error.
    #[arg(long = "abs-err", default_value_t = 1e-9, value_parser = parse_positive)]
    pub abs_err: f64,

    #[arg(long, default_value = "accelerated", value_parser = parse_method)]
    pub method: Method,

    #[command(flatten)]
    pub output: FormatArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate S_T(a_1, ..., a_T) for rational coefficients.
    Eval {
        #[arg(long = "T")]
        t: usize,
        /// Comma separated, each `p/q` or an integer.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true,
              value_parser = parse_coeff)]
        coeffs: Vec<ExactRational>,
        #[command(flatten)]
        shared: Shared,
    },
    /// ln T for a natural number T.
    Ln {
        t: usize,
        #[command(flatten)]
        shared: Shared,
    },
    /// ln(M/L) for positive integers M and L.
    Lnq {
        #[arg(value_parser = parse_ratio)]
        ratio: (u64, u64),
        #[command(flatten)]
        shared: Shared,
    },
    /// pi = 3 sqrt(3) S_3(1, -1, 0).
    Pi {
        #[command(flatten)]
        shared: Shared,
    },
    /// A_n = H_n - ln n.
    Gamma {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        shared: Shared,
    },
    /// Compare the integral of (u^j - u^(j-1))/(u^T - 1) with its series.
    IntegralCheck {
        #[arg(long = "T")]
        t: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value_t = 1e-9, value_parser = parse_positive)]
        tol: f64,
        #[command(flatten)]
        output: FormatArg,
    },
    /// Rebuild ln T as sum_j j * integral(T, j).
    Decompose {
        #[arg(long = "T")]
        t: usize,
        #[arg(long, default_value_t = 1e-10, value_parser = parse_positive)]
        tol: f64,
        #[command(flatten)]
        output: FormatArg,
    },
    /// Exact relations among the log series of the divisors of T.
    Relations {
        #[arg(long = "T")]
        t: u64,
        /// Tolerance for the numeric zero check of each witness.
        #[arg(long, default_value_t = 1e-6, value_parser = parse_positive)]
        eps: f64,
        #[command(flatten)]
        output: FormatArg,
    },
    /// First n terms of 1/(kT+1), ..., 1/(kT+T), -1/(k+1), ...
    Rearranged {
        #[arg(long = "T")]
        t: usize,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        output: FormatArg,
    },
    /// Convergence table as CSV.
    Bench {
        /// `ln:T`, `lnq:M/L`, `pi`, or `vector` (with --T and --coeffs).
        #[arg(long)]
        target: TargetName,
        #[arg(long, value_delimiter = ',', required = true)]
        methods: Vec<BenchMethod>,
        #[arg(long, value_delimiter = ',', required = true)]
        work: Vec<u64>,
        #[arg(long = "T")]
        t: Option<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_coeff)]
        coeffs: Option<Vec<ExactRational>>,
    },
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err(format!("`{s}` is not a positive finite number")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
        .map_err(|e: logser_core::SeriesError| e.to_string())
}

fn parse_coeff(s: &str) -> Result<ExactRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Accepts `M/L` or a bare `M`.
pub fn parse_ratio(s: &str) -> Result<(u64, u64), String> {
    let (m, l) = s.split_once('/').unwrap_or((s, "1"));
    let m: u64 = m
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator in `{s}`"))?;
    let l: u64 = l
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator in `{s}`"))?;
    if m == 0 || l == 0 {
        return Err(format!("`{s}` must be a ratio of positive integers"));
    }
    Ok((m, l))
}

/// Integer, or an integral float such as `1e6`; at least 2.
pub fn parse_budget(s: &str) -> Result<u64, String> {
    let n = match s.trim().parse::<u64>() {
        Ok(n) => n,
        Err(_) => match s.trim().parse::<f64>() {
            Ok(x) if x.fract() == 0.0 && x >= 0.0 && x < u64::MAX as f64 => x as u64,
            _ => return Err(format!("block budget `{s}` is not a non-negative integer")),
        },
    };
    if n < 2 {
        return Err(format!("block budget must be at least 2, got {n}"));
    }
    Ok(n)
}

impl std::str::FromStr for TargetName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "pi" {
            return Ok(TargetName::Pi);
        }
        if s == "vector" {
            return Ok(TargetName::Vector);
        }
        if let Some(t) = s.strip_prefix("ln:") {
            return t
                .parse()
                .map(TargetName::Ln)
                .map_err(|_| format!("bad modulus in target `{s}`"));
        }
        if let Some(q) = s.strip_prefix("lnq:") {
            let (m, l) = parse_ratio(q)?;
            return Ok(TargetName::LnRational(m, l));
        }
        Err(format!(
            "unknown bench target `{s}` (expected ln:T, lnq:M/L, pi or vector)"
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetName {
    Ln(usize),
    LnRational(u64, u64),
    Pi,
    Vector,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios() {
        assert_eq!(parse_ratio("4/3"), Ok((4, 3)));
        assert_eq!(parse_ratio("7"), Ok((7, 1)));
        assert!(parse_ratio("0/3").is_err());
        assert!(parse_ratio("a/3").is_err());
    }

    #[test]
    fn budgets() {
        assert_eq!(parse_budget("1000"), Ok(1000));
        assert_eq!(parse_budget("1e6"), Ok(1_000_000));
        assert!(parse_budget("1").is_err());
        assert!(parse_budget("2.5").is_err());
        assert!(parse_budget("-4").is_err());
    }

    #[test]
    fn targets() {
        assert_eq!("ln:7".parse(), Ok(TargetName::Ln(7)));
        assert_eq!("lnq:4/3".parse(), Ok(TargetName::LnRational(4, 3)));
        assert_eq!("pi".parse(), Ok(TargetName::Pi));
        assert!("e".parse::<TargetName>().is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
