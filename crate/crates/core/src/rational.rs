//! Exact rational scalars and the helpers that move them across the
//! exact/floating boundary.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, SeriesError};

/// Arbitrary-precision signed rational, always kept in lowest terms with a
/// positive denominator.
pub type ExactRational = BigRational;

pub fn int(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> ExactRational {
    ExactRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p/q` or a plain integer. Whitespace around the parts is ignored.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let bad = || SeriesError::InvalidArgument(format!("cannot parse rational `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(SeriesError::InvalidArgument(format!(
            "zero denominator in `{text}`"
        )));
    }
    Ok(ExactRational::new(num, den))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &ExactRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64`. Values outside the finite range saturate to infinity.
pub fn to_f64(r: &ExactRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Smallest `f64` that is certainly `>= r`.
pub fn to_f64_up(r: &ExactRational) -> f64 {
    let x = to_f64(r);
    if !x.is_finite() {
        return x;
    }
    match ExactRational::from_float(x) {
        Some(back) if back >= *r => x,
        _ => x.next_up(),
    }
}

/// Running exact sum of fractions whose denominator is kept at the lcm of the
/// denominators seen so far. The numerator is only reduced in [`finish`].
///
/// [`finish`]: RationalAccumulator::finish
#[derive(Debug, Clone)]
pub(crate) struct RationalAccumulator {
    num: BigInt,
    den: BigInt,
}

impl Default for RationalAccumulator {
    fn default() -> Self {
        Self {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }
}

impl RationalAccumulator {
    /// Adds `p/q`; `q` must be positive and is expected to be small relative
    /// to the running denominator.
    pub(crate) fn add(&mut self, p: &BigInt, q: &BigInt) {
        if p.is_zero() {
            return;
        }
        // gcd(den, q) = gcd(q, den mod q): one linear pass over the big value.
        let r = &self.den % q;
        let g = q.gcd(&r);
        let q_red = q / &g;
        if q_red.is_one() {
            self.num += p * (&self.den / q);
        } else {
            self.num = &self.num * &q_red + p * (&self.den / &g);
            self.den *= q_red;
        }
    }

    #[cfg(test)]
    pub(crate) fn add_rational(&mut self, r: &ExactRational) {
        self.add(r.numer(), r.denom());
    }

    pub(crate) fn finish(self) -> ExactRational {
        ExactRational::new(self.num, self.den)
    }

    /// Current value as the nearest `f64`, without reducing the fraction.
    pub(crate) fn to_f64(&self) -> f64 {
        ExactRational::new_raw(self.num.clone(), self.den.clone())
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator<'a>(
    values: impl IntoIterator<Item = &'a ExactRational>,
) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scales a rational tuple to coprime integers with a positive first nonzero
/// entry. The zero tuple is returned unchanged.
pub(crate) fn normalize_tuple(values: &[ExactRational]) -> Vec<ExactRational> {
    let den = common_denominator(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|r| r.numer() * (&den / r.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return values.to_vec();
    }
    let flip = ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.sign() == Sign::Minus);
    ints.into_iter()
        .map(|x| {
            let x = x / &g;
            ExactRational::from_integer(if flip { -x } else { x })
        })
        .collect()
}
