//! Balanced coefficient vectors and their exact algebra.
//!
//! A [`CoefficientVector`] over modulus `T` holds rationals `a_1, ..., a_T` and
//! stands for the series
//!
//! ```text
//! S_T(a) = sum_{k >= 0} ( a_1/(kT+1) + a_2/(kT+2) + ... + a_T/(kT+T) )
//! ```
//!
//! which converges exactly when the coefficients sum to zero. Every vector in
//! this crate is balanced; the constructors reject anything else.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Result, SeriesError};
use crate::factor::factorize;
use crate::rational::{format_rational, int, ExactRational};

/// Largest modulus a vector may have. Bigger moduli are rejected rather than
/// allocated.
pub const MAX_MODULUS: usize = 1 << 24;

/// Index `k >= 0` of a block `sum_j a_j/(kT+j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BlockIndex(pub u64);

impl From<u64> for BlockIndex {
    fn from(k: u64) -> Self {
        BlockIndex(k)
    }
}

/// Modulus `T` together with `T` exact rational coefficients summing to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoefficientVector {
    coeffs: Vec<ExactRational>,
}

impl CoefficientVector {
    pub fn modulus(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_1, ..., a_T`; slot `j` (1-based) is at index `j - 1`.
    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The all-zero vector over modulus `t`.
    pub fn zero(t: usize) -> Result<Self> {
        check_modulus(t as u128)?;
        Ok(Self {
            coeffs: vec![ExactRational::zero(); t],
        })
    }

    /// `sum_j |a_j|`.
    pub fn l1_norm(&self) -> ExactRational {
        self.coeffs.iter().map(|a| a.abs()).sum()
    }

    /// Used by the algebra below once balance is guaranteed by construction.
    fn from_balanced(coeffs: Vec<ExactRational>) -> Self {
        debug_assert!(coeffs.iter().sum::<ExactRational>().is_zero());
        Self { coeffs }
    }
}

impl std::ops::Neg for &CoefficientVector {
    type Output = CoefficientVector;

    fn neg(self) -> CoefficientVector {
        CoefficientVector::from_balanced(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for CoefficientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{}(", self.modulus())?;
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&format_rational(a))?;
        }
        f.write_str(")")
    }
}

fn check_modulus(t: u128) -> Result<()> {
    if t == 0 {
        return Err(SeriesError::InvalidArgument(
            "modulus must be at least 1".into(),
        ));
    }
    if t > MAX_MODULUS as u128 {
        return Err(SeriesError::ModulusTooLarge {
            modulus: t,
            limit: MAX_MODULUS,
        });
    }
    Ok(())
}

/// Validates length and balance.
pub fn make_vector(t: usize, coeffs: Vec<ExactRational>) -> Result<CoefficientVector> {
    check_modulus(t as u128)?;
    if coeffs.len() != t {
        return Err(SeriesError::LengthMismatch {
            expected: t,
            found: coeffs.len(),
        });
    }
    let sum: ExactRational = coeffs.iter().sum();
    if !sum.is_zero() {
        return Err(SeriesError::UnbalancedCoefficients {
            sum: format_rational(&sum),
        });
    }
    Ok(CoefficientVector { coeffs })
}

/// `(1, 1, ..., 1, -(T-1))`, whose series sums to `ln T`. For `T = 1` this is
/// the zero vector.
pub fn ln_vector(t: usize) -> Result<CoefficientVector> {
    check_modulus(t as u128)?;
    let mut coeffs = vec![int(1); t];
    coeffs[t - 1] = int(1 - t as i64);
    Ok(CoefficientVector::from_balanced(coeffs))
}

/// Repeats the coefficients `m` times, giving a vector over `m*T` with the
/// same series value: each lifted block is `m` consecutive original blocks.
pub fn lift(v: &CoefficientVector, m: usize) -> Result<CoefficientVector> {
    if m == 0 {
        return Err(SeriesError::InvalidArgument(
            "lift factor must be at least 1".into(),
        ));
    }
    check_modulus(v.modulus() as u128 * m as u128)?;
    let coeffs = v
        .coeffs
        .iter()
        .cycle()
        .take(v.modulus() * m)
        .cloned()
        .collect();
    Ok(CoefficientVector::from_balanced(coeffs))
}

/// Coefficient-wise `sum_i s_i * v_i`. All vectors must share one modulus.
pub fn linear_combine(terms: &[(ExactRational, &CoefficientVector)]) -> Result<CoefficientVector> {
    let Some((_, first)) = terms.first() else {
        return Err(SeriesError::InvalidArgument(
            "linear combination needs at least one term".into(),
        ));
    };
    let t = first.modulus();
    let mut acc = vec![ExactRational::zero(); t];
    for (s, v) in terms {
        if v.modulus() != t {
            return Err(SeriesError::ModulusMismatch {
                left: t,
                right: v.modulus(),
            });
        }
        if s.is_zero() {
            continue;
        }
        for (slot, a) in acc.iter_mut().zip(&v.coeffs) {
            *slot += s * a;
        }
    }
    Ok(CoefficientVector::from_balanced(acc))
}

/// Balanced vector whose series value is `ln(M/L)`, over the modulus
/// `T = product of the distinct primes dividing M*L`.
///
/// Built as `sum_p (e_p(M) - e_p(L)) * lift(ln_vector(p), T/p)`. When
/// `M == L` the result is the zero vector over `T = 1`.
pub fn ln_rational_vector(m: u64, l: u64) -> Result<CoefficientVector> {
    if m == 0 || l == 0 {
        return Err(SeriesError::InvalidArgument(
            "numerator and denominator must be positive".into(),
        ));
    }
    if m == l {
        return ln_vector(1);
    }
    // (prime, exponent in M minus exponent in L), merged by prime.
    let mut exps: Vec<(u64, i64)> = factorize(m)
        .into_iter()
        .map(|(p, e)| (p, e as i64))
        .collect();
    for (p, e) in factorize(l) {
        match exps.iter_mut().find(|(q, _)| *q == p) {
            Some(slot) => slot.1 -= e as i64,
            None => exps.push((p, -(e as i64))),
        }
    }
    exps.sort_unstable();
    let radical = exps
        .iter()
        .try_fold(1u128, |acc, &(p, _)| acc.checked_mul(p as u128))
        .unwrap_or(u128::MAX);
    check_modulus(radical)?;
    let t = radical as usize;

    let mut parts = Vec::with_capacity(exps.len());
    for &(p, e) in &exps {
        parts.push((int(e), lift(&ln_vector(p as usize)?, t / p as usize)?));
    }
    let terms: Vec<(ExactRational, &CoefficientVector)> =
        parts.iter().map(|(s, v)| (s.clone(), v)).collect();
    linear_combine(&terms)
}

#[cfg(test)]
pub(crate) fn ints(values: &[i64]) -> Vec<ExactRational> {
    values.iter().map(|&x| int(x)).collect()
}

#[cfg(test)]
pub(crate) fn vector(values: &[i64]) -> CoefficientVector {
    make_vector(values.len(), ints(values)).unwrap()
}
