//! Convergence tables: one row per (method, work) pair against a reference.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;

use logser_core::evaluator::tail_bound;

use crate::report::real;
use logser_core::quadrature::integrate_fixed;
use logser_core::rational::to_f64;
use logser_core::relations::express_in_basis;
use logser_core::{
    ln_rational_vector, ln_vector, CoefficientVector, Evaluator, ExactRational, Result, SeriesError,
};

pub const CSV_HEADER: &str =
    "method,work,value,error_bound,abs_error_vs_reference,wall_time_micros";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchMethod {
    /// `work` blocks summed in floating point.
    Raw,
    /// `work` exact blocks plus the moment tail.
    Accelerated,
    /// `work` blocks of the stream `1/(kT+1), ..., 1/(kT+T), -1/(k+1)`.
    Rearranged,
    /// Composite Gauss-Legendre with `work` panels per difference integral.
    Quadrature,
}

impl BenchMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            BenchMethod::Raw => "raw",
            BenchMethod::Accelerated => "accelerated",
            BenchMethod::Rearranged => "rearranged",
            BenchMethod::Quadrature => "quadrature",
        }
    }
}

impl fmt::Display for BenchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BenchMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "raw" => Ok(BenchMethod::Raw),
            "accelerated" => Ok(BenchMethod::Accelerated),
            "rearranged" => Ok(BenchMethod::Rearranged),
            "quadrature" => Ok(BenchMethod::Quadrature),
            other => Err(format!(
                "unknown bench method `{other}` (expected raw, accelerated, rearranged or quadrature)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub method: BenchMethod,
    pub work: u64,
    pub value: f64,
    pub error_bound: f64,
    pub abs_error_vs_reference: f64,
    pub wall_time_micros: u128,
}

impl ConvergenceRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.method,
            self.work,
            real(self.value),
            real(self.error_bound),
            real(self.abs_error_vs_reference),
            self.wall_time_micros
        )
    }
}

/// What to benchmark: a vector, a scale applied to its value, and the
/// reference the rows are compared against.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchTarget {
    pub label: String,
    pub vector: CoefficientVector,
    pub scale: f64,
    pub reference: Option<f64>,
    /// Modulus of the `ln T` stream, when the target is `ln:T`.
    pub ln_modulus: Option<usize>,
}

impl BenchTarget {
    pub fn ln(t: usize) -> Result<Self> {
        Ok(Self {
            label: format!("ln:{t}"),
            vector: ln_vector(t)?,
            scale: 1.0,
            reference: Some((t as f64).ln()),
            ln_modulus: Some(t),
        })
    }

    pub fn ln_rational(m: u64, l: u64) -> Result<Self> {
        Ok(Self {
            label: format!("lnq:{m}/{l}"),
            vector: ln_rational_vector(m, l)?,
            scale: 1.0,
            reference: Some((m as f64).ln() - (l as f64).ln()),
            ln_modulus: None,
        })
    }

    pub fn pi() -> Result<Self> {
        Ok(Self {
            label: "pi".into(),
            vector: logser_core::quadrature::difference_vector(3, 1)?,
            scale: 3.0 * 3.0f64.sqrt(),
            reference: Some(std::f64::consts::PI),
            ln_modulus: None,
        })
    }

    /// Reference is computed from the vector itself at 1000x the largest work.
    pub fn vector(v: CoefficientVector) -> Self {
        Self {
            label: v.to_string(),
            vector: v,
            scale: 1.0,
            reference: None,
            ln_modulus: None,
        }
    }
}

fn run_one(
    ev: &Evaluator,
    target: &BenchTarget,
    method: BenchMethod,
    work: u64,
) -> Result<(f64, f64)> {
    let v = &target.vector;
    match method {
        BenchMethod::Raw => {
            let r = ev.raw_at(v, work)?;
            Ok((r.value, r.error_bound))
        }
        BenchMethod::Accelerated => {
            let r = ev.accelerated_at(v, work)?;
            Ok((r.value, r.error_bound))
        }
        BenchMethod::Rearranged => {
            let t = target.ln_modulus.ok_or_else(|| {
                SeriesError::InvalidArgument(
                    "the rearranged stream is only defined for ln:T targets".into(),
                )
            })?;
            let terms = ev.rearranged_terms(t, work * (t as u64 + 1))?;
            let sum: ExactRational = terms.iter().sum();
            // block sums coincide with those of ln_vector(T)
            Ok((to_f64(&sum), tail_bound(v, work)?))
        }
        BenchMethod::Quadrature => {
            let t = v.modulus();
            if t < 2 {
                return Ok((0.0, 0.0));
            }
            let mut value = 0.0;
            let mut bound = 0.0;
            for (i, d) in express_in_basis(v).iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                let (x, est) = integrate_fixed(t, i + 1, work as usize)?;
                let d = to_f64(d);
                value += d * x;
                bound += d.abs() * est;
            }
            Ok((value, bound))
        }
    }
}

/// One row per `(method, work)` pair, methods outermost.
pub fn bench(
    ev: &Evaluator,
    target: &BenchTarget,
    methods: &[BenchMethod],
    work: &[u64],
) -> Result<Vec<ConvergenceRow>> {
    let reference = match target.reference {
        Some(r) => r,
        None => {
            let k = work
                .iter()
                .copied()
                .max()
                .unwrap_or(1)
                .max(2)
                .saturating_mul(1000);
            target.scale * ev.reference_value(&target.vector, k)?
        }
    };
    let mut rows = Vec::with_capacity(methods.len() * work.len());
    for &method in methods {
        for &w in work {
            let start = Instant::now();
            let (value, bound) = run_one(ev, target, method, w)?;
            let elapsed = start.elapsed().as_micros();
            let value = target.scale * value;
            rows.push(ConvergenceRow {
                method,
                work: w,
                value,
                error_bound: target.scale * bound,
                abs_error_vs_reference: (value - reference).abs(),
                wall_time_micros: elapsed,
            });
        }
    }
    Ok(rows)
}
