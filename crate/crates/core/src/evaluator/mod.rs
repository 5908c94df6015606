//! Numeric evaluation of balanced series.
//!
//! Two routes are offered. `Raw` sums enough blocks for the rigorous tail
//! bound [`tail_bound`] to meet the target and adds a floating-point rounding
//! allowance, so its error bound is a guarantee. `Accelerated` sums a short
//! exact prefix and replaces the remainder by the moment expansion
//!
//! ```text
//! sum_{k >= K0} block_k = sum_{m >= 1} (-1)^m mu_m T^-(m+1) zeta(m+1, K0),
//! mu_m = sum_j a_j j^m
//! ```
//!
//! whose `m = 0` term vanishes by balance. Its error bound is an estimate.

mod float_sum;
mod zeta;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Result, SeriesError};
use crate::rational::{to_f64, to_f64_up, ExactRational, RationalAccumulator};
use crate::series::{BlockIndex, CoefficientVector};

pub use float_sum::{block_range_sum, FloatSum};
pub use zeta::hurwitz_tail;

pub const DEFAULT_BLOCK_BUDGET: u64 = 1_000_000;
pub const DEFAULT_PREFIX_BLOCKS: u64 = 1000;
pub const DEFAULT_MOMENT_ORDER: usize = 8;
pub const MAX_MOMENT_ORDER: usize = 16;

/// Smallest achievable absolute error per unit of `sum_j |a_j|`.
const FLOOR_PER_UNIT: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Raw,
    Accelerated,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Raw => "raw",
            Method::Accelerated => "accelerated",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Method::Raw),
            "accelerated" => Ok(Method::Accelerated),
            other => Err(SeriesError::InvalidArgument(format!(
                "unknown method `{other}` (expected raw or accelerated)"
            ))),
        }
    }
}

/// Limits and tuning for evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Exact sums may touch at most this many block terms (`K * T`); floating
    /// sums at most this many blocks.
    pub block_budget: u64,
    /// Exact prefix length `K0` for the accelerated route.
    pub prefix_blocks: u64,
    /// Highest moment kept in the accelerated tail.
    pub moment_order: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            block_budget: DEFAULT_BLOCK_BUDGET,
            prefix_blocks: DEFAULT_PREFIX_BLOCKS,
            moment_order: DEFAULT_MOMENT_ORDER,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    /// Absolute error bound; rigorous unless `bound_is_heuristic`.
    pub error_bound: f64,
    pub blocks_used: u64,
    pub method: Method,
    pub bound_is_heuristic: bool,
}

/// `A_n = H_n - ln n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPartial {
    pub n: u64,
    pub value: f64,
}

/// The k-th block `sum_j a_j / (kT + j)`, exactly.
pub fn block_term(v: &CoefficientVector, k: BlockIndex) -> ExactRational {
    let mut acc = RationalAccumulator::default();
    add_block(&mut acc, v, k.0);
    acc.finish()
}

fn add_block(acc: &mut RationalAccumulator, v: &CoefficientVector, k: u64) {
    let base = BigInt::from(k) * BigInt::from(v.modulus());
    for (i, a) in v.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let den = (&base + (i + 1)) * a.denom();
        acc.add(a.numer(), &den);
    }
}

/// `M / (T^2 (K - 1))` with `M = sum_j |a_j| (T - j)`: a rigorous bound on
/// `|S_T(a) - partial_sum_exact(a, K)|` for `K >= 2`.
///
/// Balance lets each block be rewritten as `sum_j a_j (T-j) / ((kT+j)(kT+T))`,
/// which is at most `M / (kT)^2` in absolute value; the tail of `1/k^2` from
/// `K` on is below `1/(K-1)`.
pub fn tail_bound(v: &CoefficientVector, k: u64) -> Result<f64> {
    Ok(to_f64_up(&tail_bound_exact(v, k)?))
}

pub fn tail_bound_exact(v: &CoefficientVector, k: u64) -> Result<ExactRational> {
    if k < 2 {
        return Err(SeriesError::InvalidArgument(format!(
            "tail bound needs at least 2 blocks, got {k}"
        )));
    }
    let t = v.modulus();
    let weight = weighted_norm(v);
    let scale = BigInt::from(t) * BigInt::from(t) * BigInt::from(k - 1);
    Ok(weight / ExactRational::from_integer(scale))
}

/// `M = sum_j |a_j| (T - j)`.
fn weighted_norm(v: &CoefficientVector) -> ExactRational {
    let t = v.modulus();
    v.coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| a.abs() * ExactRational::from_integer(BigInt::from(t - i - 1)))
        .sum()
}

/// `mu_m = sum_j a_j j^m` for `m = 1..=m_max`.
pub fn moments(v: &CoefficientVector, m_max: usize) -> Result<Vec<ExactRational>> {
    if !(1..=MAX_MOMENT_ORDER).contains(&m_max) {
        return Err(SeriesError::InvalidArgument(format!(
            "moment order must be in 1..={MAX_MOMENT_ORDER}, got {m_max}"
        )));
    }
    Ok(moments_unchecked(v, m_max))
}

fn moments_unchecked(v: &CoefficientVector, m_max: usize) -> Vec<ExactRational> {
    let mut out = vec![ExactRational::zero(); m_max];
    for (i, a) in v.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let j = BigInt::from(i + 1);
        let mut power = j.clone();
        for mu in out.iter_mut() {
            *mu += a * ExactRational::from_integer(power.clone());
            power *= &j;
        }
    }
    out
}

/// Evaluation entry point carrying an [`EvalConfig`]. The free functions in
/// this module use the default configuration.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Evaluator {
    pub config: EvalConfig,
}

/// `sum 1/i` for `i` in `[lo, hi)` as an unreduced fraction, by binary splitting.
fn harmonic_split(lo: u64, hi: u64) -> (BigInt, BigInt) {
    if hi <= lo {
        return (BigInt::from(0), BigInt::from(1));
    }
    if hi - lo <= 16 {
        let mut num = BigInt::from(0);
        let mut den = BigInt::from(1);
        for i in lo..hi {
            num = num * i + &den;
            den *= i;
        }
        return (num, den);
    }
    let mid = lo + (hi - lo) / 2;
    let (ln, ld) = harmonic_split(lo, mid);
    let (rn, rd) = harmonic_split(mid, hi);
    (ln * &rd + rn * &ld, ld * rd)
}

impl Evaluator {
    pub fn new(config: EvalConfig) -> Self {
        Self { config }
    }

    fn check_terms(&self, terms: u128) -> Result<()> {
        if terms > self.config.block_budget as u128 {
            return Err(SeriesError::BudgetExceeded {
                required: terms,
                budget: self.config.block_budget,
            });
        }
        Ok(())
    }

    /// Sum of the first `k` blocks, exactly.
    pub fn partial_sum_exact(&self, v: &CoefficientVector, k: u64) -> Result<ExactRational> {
        self.check_terms(k as u128 * v.modulus() as u128)?;
        let mut acc = RationalAccumulator::default();
        if !v.is_zero() {
            for block in 0..k {
                add_block(&mut acc, v, block);
            }
        }
        Ok(acc.finish())
    }

    /// `H_n = 1 + 1/2 + ... + 1/n`, exactly.
    pub fn harmonic(&self, n: u64) -> Result<ExactRational> {
        self.check_terms(n as u128)?;
        let (num, den) = harmonic_split(1, n + 1);
        Ok(ExactRational::new(num, den))
    }

    /// First `n` terms of the stream
    /// `1/(kT+1), ..., 1/(kT+T), -1/(k+1)` for `k = 0, 1, ...`.
    pub fn rearranged_terms(&self, t: usize, n: u64) -> Result<Vec<ExactRational>> {
        if t == 0 {
            return Err(SeriesError::InvalidArgument(
                "modulus must be at least 1".into(),
            ));
        }
        self.check_terms(n as u128)?;
        let t64 = t as u64;
        let per_block = t64 + 1;
        Ok((0..n)
            .map(|idx| {
                let (k, pos) = (idx / per_block, idx % per_block);
                if pos < t64 {
                    ExactRational::new(1.into(), BigInt::from(k * t64 + pos + 1))
                } else {
                    ExactRational::new((-1).into(), BigInt::from(k + 1))
                }
            })
            .collect())
    }

    /// `A_n = H_n - ln n` with the harmonic part summed exactly.
    pub fn gamma_partial(&self, n: u64) -> Result<GammaPartial> {
        if n == 0 {
            return Err(SeriesError::InvalidArgument("n must be at least 1".into()));
        }
        self.check_terms(n as u128)?;
        // reducing n!-sized fractions costs far more than the division
        let (num, den) = harmonic_split(1, n + 1);
        let h = ExactRational::new_raw(num, den)
            .to_f64()
            .unwrap_or(f64::NAN);
        Ok(GammaPartial {
            n,
            value: h - (n as f64).ln(),
        })
    }

    /// `A_1, ..., A_n` in one pass over the harmonic sum.
    pub fn gamma_partials(&self, n: u64) -> Result<Vec<GammaPartial>> {
        self.check_terms(n as u128)?;
        let mut acc = RationalAccumulator::default();
        let one = BigInt::from(1);
        let mut out = Vec::with_capacity(n as usize);
        for i in 1..=n {
            acc.add(&one, &BigInt::from(i));
            out.push(GammaPartial {
                n: i,
                value: acc.to_f64() - (i as f64).ln(),
            });
        }
        Ok(out)
    }

    fn precision_floor(v: &CoefficientVector) -> f64 {
        FLOOR_PER_UNIT * to_f64(&v.l1_norm()).max(1.0)
    }

    /// Evaluates `S_T(v)` to absolute accuracy `abs_err`.
    pub fn evaluate(
        &self,
        v: &CoefficientVector,
        abs_err: f64,
        method: Method,
    ) -> Result<EvalResult> {
        if !(abs_err.is_finite() && abs_err > 0.0) {
            return Err(SeriesError::InvalidArgument(format!(
                "absolute error must be positive, got {abs_err}"
            )));
        }
        let floor = Self::precision_floor(v);
        if abs_err < floor {
            return Err(SeriesError::Unachievable {
                requested: abs_err,
                floor,
            });
        }
        match method {
            Method::Raw => {
                let k = self.raw_blocks_for(v, abs_err)?;
                self.raw_at(v, k)
            }
            Method::Accelerated => {
                let mut k0 = self.config.prefix_blocks.max(2);
                loop {
                    let res = self.accelerated_at(v, k0)?;
                    if res.error_bound <= abs_err {
                        return Ok(res);
                    }
                    k0 *= 2;
                }
            }
        }
    }

    /// Smallest `K >= 2` with `tail_bound(v, K) <= abs_err`.
    fn raw_blocks_for(&self, v: &CoefficientVector, abs_err: f64) -> Result<u64> {
        let t = v.modulus() as f64;
        let weight = to_f64_up(&weighted_norm(v));
        if weight == 0.0 {
            return Ok(2);
        }
        let estimate = (weight / (t * t * abs_err)).ceil() + 1.0;
        if estimate.is_nan() || estimate > self.config.block_budget as f64 {
            return Err(SeriesError::BudgetExceeded {
                required: estimate.min(u128::MAX as f64) as u128,
                budget: self.config.block_budget,
            });
        }
        // The float estimate may be off by a block or two either way.
        let mut k = (estimate as u64).saturating_sub(2).max(2);
        while tail_bound(v, k)? > abs_err {
            k += 1;
        }
        self.check_terms(k as u128)?;
        Ok(k)
    }

    /// Raw evaluation with a fixed number of blocks `k >= 2`.
    pub fn raw_at(&self, v: &CoefficientVector, k: u64) -> Result<EvalResult> {
        self.check_terms(k as u128)?;
        let tail = tail_bound(v, k)?;
        let sum = block_range_sum(v, 0, k);
        Ok(EvalResult {
            value: sum.value,
            error_bound: tail + sum.rounding,
            blocks_used: k,
            method: Method::Raw,
            bound_is_heuristic: false,
        })
    }

    /// Exact prefix of `k0 >= 2` blocks plus the moment-expansion tail.
    pub fn accelerated_at(&self, v: &CoefficientVector, k0: u64) -> Result<EvalResult> {
        if k0 < 2 {
            return Err(SeriesError::InvalidArgument(format!(
                "accelerated evaluation needs an exact prefix of at least 2 blocks, got {k0}"
            )));
        }
        let prefix = to_f64(&self.partial_sum_exact(v, k0)?);
        let tail = moment_tail(v, k0, self.config.moment_order);
        let value = prefix + tail.value;
        let rounding = 4.0 * f64::EPSILON * (prefix.abs() + tail.abs_sum);
        Ok(EvalResult {
            value,
            error_bound: 2.0 * tail.first_omitted + tail.remainder + rounding,
            blocks_used: k0,
            method: Method::Accelerated,
            bound_is_heuristic: true,
        })
    }

    /// Floating prefix of `k` blocks plus the moment tail. Cheap enough for
    /// very large `k`; used for reference values.
    pub fn reference_value(&self, v: &CoefficientVector, k: u64) -> Result<f64> {
        if k < 2 {
            return Err(SeriesError::InvalidArgument(
                "reference needs k >= 2".into(),
            ));
        }
        let prefix = block_range_sum(v, 0, k).value;
        Ok(prefix + moment_tail(v, k, self.config.moment_order).value)
    }
}

#[derive(Debug, Clone, Copy)]
struct MomentTail {
    value: f64,
    abs_sum: f64,
    first_omitted: f64,
    remainder: f64,
}

/// `sum_{m=1}^{order} (-1)^m mu_m T^-(m+1) zeta(m+1, k0)`.
fn moment_tail(v: &CoefficientVector, k0: u64, order: usize) -> MomentTail {
    let t = BigInt::from(v.modulus());
    // Two extra moments: a symmetric vector can make the next one vanish.
    let mus = moments_unchecked(v, order + 2);
    let mut t_power = t.clone();
    let mut value = 0.0;
    let mut abs_sum = 0.0;
    let mut remainder = 0.0;
    let mut first_omitted = 0.0f64;
    for (idx, mu) in mus.iter().enumerate() {
        let m = idx + 1;
        t_power *= &t;
        let coef = to_f64(&(mu / ExactRational::from_integer(t_power.clone())));
        let (z, z_rem) = hurwitz_tail(m as u32 + 1, k0);
        let term = if m % 2 == 0 { coef * z } else { -coef * z };
        if m <= order {
            value += term;
            abs_sum += term.abs();
            remainder += coef.abs() * z_rem;
        } else {
            first_omitted = first_omitted.max(term.abs());
        }
    }
    MomentTail {
        value,
        abs_sum,
        first_omitted,
        remainder,
    }
}

pub fn partial_sum_exact(v: &CoefficientVector, k: u64) -> Result<ExactRational> {
    Evaluator::default().partial_sum_exact(v, k)
}

pub fn harmonic(n: u64) -> Result<ExactRational> {
    Evaluator::default().harmonic(n)
}

pub fn evaluate(v: &CoefficientVector, abs_err: f64, method: Method) -> Result<EvalResult> {
    Evaluator::default().evaluate(v, abs_err, method)
}

pub fn rearranged_terms(t: usize, n: u64) -> Result<Vec<ExactRational>> {
    Evaluator::default().rearranged_terms(t, n)
}

pub fn gamma_partial(n: u64) -> Result<GammaPartial> {
    Evaluator::default().gamma_partial(n)
}

#[cfg(test)]
mod tests;
