//! Floating-point block summation with a rigorous rounding allowance.

use crate::rational::to_f64;
use crate::series::CoefficientVector;

const U: f64 = f64::EPSILON / 2.0;

/// Higham's gamma_n = n u / (1 - n u).
fn gamma(n: usize) -> f64 {
    let nu = n as f64 * U;
    nu / (1.0 - nu)
}

/// Floating sum of blocks `start..end` with a bound on its deviation from
/// the exact rational sum of the same blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatSum {
    pub value: f64,
    pub rounding: f64,
}

/// Sums blocks in `start..end`. Each block is added in plain precision, the
/// blocks are combined with Neumaier compensation.
pub fn block_range_sum(v: &CoefficientVector, start: u64, end: u64) -> FloatSum {
    let t = v.modulus() as u64;
    let slots: Vec<(f64, f64)> = v
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !num_traits::Zero::is_zero(*a))
        .map(|(i, a)| (i as f64 + 1.0, to_f64(a)))
        .collect();
    if slots.is_empty() || start >= end {
        return FloatSum {
            value: 0.0,
            rounding: 0.0,
        };
    }

    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut abs_terms = 0.0f64;
    let mut abs_blocks = 0.0f64;
    for k in start..end {
        let base = (k * t) as f64;
        let mut block = 0.0;
        let mut block_abs = 0.0;
        for &(j, a) in &slots {
            let term = a / (base + j);
            block += term;
            block_abs += term.abs();
        }
        abs_terms += block_abs;
        abs_blocks += block.abs();
        let next = sum + block;
        if sum.abs() >= block.abs() {
            comp += (sum - next) + block;
        } else {
            comp += (block - next) + sum;
        }
        sum = next;
    }
    let value = sum + comp;
    let n = (end - start) as f64;
    // coefficient rounding + division + in-block accumulation
    let per_term = gamma(slots.len() + 2) * abs_terms;
    let across = 2.0 * U * value.abs() + 4.0 * n * U * U * abs_blocks;
    FloatSum {
        value,
        rounding: 1.01 * (per_term + across),
    }
}
