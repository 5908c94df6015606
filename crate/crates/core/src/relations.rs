//! Linear relations among balanced series.
//!
//! Coefficient vectors over one modulus `T` form a `T-1` dimensional space
//! spanned by the difference vectors `e_i - e_{i+1}`. Vector relations are
//! found exactly with fraction-free elimination. Relations among series
//! *values* that are not vector relations, such as
//! `2 * S_4(1,-1,1,-1) - S_4(1,1,1,-3) = S_4(1,-3,1,1) = 0`, are produced by
//! [`divisor_relations`] from the multiplicativity of the logarithm and then
//! checked numerically.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Result, SeriesError};
use crate::evaluator::{EvalResult, Evaluator, Method};
use crate::factor::{factorize, is_prime};
use crate::rational::{int, normalize_tuple, ExactRational};
use crate::series::{
    lift, linear_combine, ln_rational_vector, ln_vector, make_vector, CoefficientVector,
};

/// Largest modulus accepted by [`divisor_relations`].
pub const MAX_RELATION_MODULUS: u64 = 64;

/// Basis of the rational null space of a family of columns.
///
/// Every tuple has one entry per family member, is nonzero, consists of
/// coprime integers and starts with a positive entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<ExactRational>>,
    pub family_size: usize,
}

impl KernelBasis {
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }
}

/// `S_T(1,-1,0,...), S_T(0,1,-1,0,...), ..., S_T(0,...,1,-1)`.
pub fn spanning_basis(t: usize) -> Result<Vec<CoefficientVector>> {
    if t < 2 {
        return Err(SeriesError::InvalidArgument(format!(
            "need T >= 2, got {t}"
        )));
    }
    (1..t)
        .map(|i| {
            let mut coeffs = vec![int(0); t];
            coeffs[i - 1] = int(1);
            coeffs[i] = int(-1);
            make_vector(t, coeffs)
        })
        .collect()
}

/// Coordinates of `v` in [`spanning_basis`]: the prefix sums
/// `d_i = a_1 + ... + a_i`, `i = 1..T-1`.
pub fn express_in_basis(v: &CoefficientVector) -> Vec<ExactRational> {
    let t = v.modulus();
    v.coeffs()[..t.saturating_sub(1)]
        .iter()
        .scan(ExactRational::zero(), |acc, a| {
            *acc += a;
            Some(acc.clone())
        })
        .collect()
}

/// Exact kernel of the family, with the vectors as matrix columns.
pub fn kernel(family: &[CoefficientVector]) -> Result<KernelBasis> {
    let Some(first) = family.first() else {
        return Err(SeriesError::InvalidArgument(
            "kernel of an empty family".into(),
        ));
    };
    let t = first.modulus();
    if let Some(v) = family.iter().find(|v| v.modulus() != t) {
        return Err(SeriesError::ModulusMismatch {
            left: t,
            right: v.modulus(),
        });
    }
    let columns: Vec<&[ExactRational]> = family.iter().map(|v| v.coeffs()).collect();
    Ok(kernel_of_columns(&columns))
}

/// Null space of the matrix whose columns are given, by Bareiss elimination
/// over the integers after clearing row denominators. Pivots are the first
/// nonzero entry at or below the current row.
pub fn kernel_of_columns(columns: &[&[ExactRational]]) -> KernelBasis {
    let ncols = columns.len();
    let nrows = columns.first().map_or(0, |c| c.len());
    let mut m: Vec<Vec<BigInt>> = (0..nrows)
        .map(|r| {
            let den = columns
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c[r].denom()));
            columns
                .iter()
                .map(|c| c[r].numer() * (&den / c[r].denom()))
                .collect()
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let row = pivots.len();
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let (top, rest) = m.split_at_mut(row + 1);
        let pivot_row = &top[row];
        for other in rest.iter_mut() {
            let factor = other[col].clone();
            for c in col + 1..ncols {
                let num = &pivot_row[col] * &other[c] - &factor * &pivot_row[c];
                debug_assert!((&num % &prev).is_zero());
                other[c] = num / &prev;
            }
            other[col] = BigInt::zero();
        }
        prev = pivot_row[col].clone();
        pivots.push(col);
    }

    let mut vectors = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![ExactRational::zero(); ncols];
        x[free] = ExactRational::one();
        for (row, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = ExactRational::zero();
            for c in pc + 1..ncols {
                if !x[c].is_zero() && !m[row][c].is_zero() {
                    acc += ExactRational::from_integer(m[row][c].clone()) * &x[c];
                }
            }
            x[pc] = -acc / ExactRational::from_integer(m[row][pc].clone());
        }
        vectors.push(normalize_tuple(&x));
    }
    KernelBasis {
        vectors,
        family_size: ncols,
    }
}

/// Evaluates `v` in raw mode to `eps` and reports whether `|value|` is within
/// the rigorous error bound.
pub fn verify_zero(v: &CoefficientVector, eps: f64) -> Result<(bool, EvalResult)> {
    verify_zero_with(&Evaluator::default(), v, eps)
}

pub fn verify_zero_with(
    ev: &Evaluator,
    v: &CoefficientVector,
    eps: f64,
) -> Result<(bool, EvalResult)> {
    let r = ev.evaluate(v, eps, Method::Raw)?;
    Ok((r.value.abs() <= r.error_bound, r))
}

/// A log-valued vector over the relation modulus with its value expressed as
/// exponents of the primes of the modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMember {
    pub label: String,
    pub vector: CoefficientVector,
    pub log_exponents: Vec<i64>,
}

/// A nonzero vector whose series value is zero, with the relation that
/// produced it and its coordinates in [`spanning_basis`].
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroWitness {
    pub relation: Vec<ExactRational>,
    pub vector: CoefficientVector,
    pub basis_coords: Vec<ExactRational>,
    pub check: Result<(bool, EvalResult)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisorRelations {
    pub modulus: usize,
    pub primes: Vec<u64>,
    pub family: Vec<FamilyMember>,
    /// Kernel of the families' prime-exponent labels.
    pub relations: KernelBasis,
    /// Linearly independent nonzero vectors `sum_i c_i family_i` over the
    /// relations; each has series value zero.
    pub witnesses: Vec<ZeroWitness>,
}

pub fn divisor_relations(t: u64) -> Result<DivisorRelations> {
    divisor_relations_with(&Evaluator::default(), t, 1e-6)
}

/// Relations among `ln d` vectors for the divisors `d` of a composite `T`.
///
/// The family holds `lift(ln_vector(d), T/d)` for every divisor `d >= 2` and
/// the lifted `ln_rational_vector(d, e)` for divisor pairs `d > e` (with
/// `e = 1` allowed), exact duplicates removed. Any rational combination that
/// cancels the prime exponents has value zero; the nonzero, independent
/// ones are returned as witnesses of the linear dependence of the spanning
/// basis values and verified with [`verify_zero`] at `eps`.
pub fn divisor_relations_with(ev: &Evaluator, t: u64, eps: f64) -> Result<DivisorRelations> {
    if t < 4 || is_prime(t) {
        return Err(SeriesError::NotComposite(t));
    }
    if t > MAX_RELATION_MODULUS {
        return Err(SeriesError::InvalidArgument(format!(
            "relation modulus is limited to {MAX_RELATION_MODULUS}, got {t}"
        )));
    }
    let modulus = t as usize;
    let primes: Vec<u64> = factorize(t).into_iter().map(|(p, _)| p).collect();
    let exponents = |n: u64| -> Vec<i64> {
        let f = factorize(n);
        primes
            .iter()
            .map(|p| f.iter().find(|(q, _)| q == p).map_or(0, |&(_, e)| e as i64))
            .collect()
    };
    let divisors: Vec<u64> = (2..=t).filter(|d| t % d == 0).collect();

    let mut family: Vec<FamilyMember> = Vec::new();
    let mut push = |label: String, vector: CoefficientVector, log_exponents: Vec<i64>| {
        if !family.iter().any(|m| m.vector == vector) {
            family.push(FamilyMember {
                label,
                vector,
                log_exponents,
            });
        }
    };
    for &d in &divisors {
        let v = lift(&ln_vector(d as usize)?, modulus / d as usize)?;
        push(format!("ln {d}"), v, exponents(d));
    }
    for &d in &divisors {
        for e in std::iter::once(1).chain(divisors.iter().copied()) {
            if e >= d {
                continue;
            }
            let v = ln_rational_vector(d, e)?;
            let v = lift(&v, modulus / v.modulus())?;
            let label_exps = exponents(d)
                .iter()
                .zip(exponents(e))
                .map(|(a, b)| a - b)
                .collect();
            push(format!("ln {d}/{e}"), v, label_exps);
        }
    }

    let labels: Vec<Vec<ExactRational>> = family
        .iter()
        .map(|m| m.log_exponents.iter().map(|&e| int(e)).collect())
        .collect();
    let label_cols: Vec<&[ExactRational]> = labels.iter().map(Vec::as_slice).collect();
    let relations = kernel_of_columns(&label_cols);

    let mut span = RowSpace::default();
    let mut witnesses = Vec::new();
    for c in &relations.vectors {
        let terms: Vec<(ExactRational, &CoefficientVector)> = c
            .iter()
            .cloned()
            .zip(family.iter().map(|m| &m.vector))
            .collect();
        let w = linear_combine(&terms)?;
        if w.is_zero() || !span.insert(w.coeffs()) {
            continue;
        }
        let check = verify_zero_with(ev, &w, eps);
        witnesses.push(ZeroWitness {
            relation: c.clone(),
            basis_coords: express_in_basis(&w),
            vector: w,
            check,
        });
    }

    Ok(DivisorRelations {
        modulus,
        primes,
        family,
        relations,
        witnesses,
    })
}

/// Row-reduced set of rational rows, for independence tests.
#[derive(Debug, Default, Clone)]
pub(crate) struct RowSpace {
    /// (pivot column, row with a one at the pivot)
    rows: Vec<(usize, Vec<ExactRational>)>,
}

impl RowSpace {
    /// Adds `row` if it is independent of the rows so far.
    pub(crate) fn insert(&mut self, row: &[ExactRational]) -> bool {
        let mut r = row.to_vec();
        for (pc, basis) in &self.rows {
            if r[*pc].is_zero() {
                continue;
            }
            let f = r[*pc].clone();
            for (x, b) in r.iter_mut().zip(basis) {
                *x -= &f * b;
            }
        }
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = r[pc].clone();
        for x in r.iter_mut() {
            *x /= &lead;
        }
        // keep existing rows reduced at the new pivot
        for (_, basis) in self.rows.iter_mut() {
            if basis[pc].is_zero() {
                continue;
            }
            let f = basis[pc].clone();
            for (x, n) in basis.iter_mut().zip(&r) {
                *x -= &f * n;
            }
        }
        self.rows.push((pc, r));
        true
    }

    #[cfg(test)]
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }
}
