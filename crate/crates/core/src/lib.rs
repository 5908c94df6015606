//! Exact and numeric machinery for balanced cyclic harmonic series
//! `S_T(a_1, ..., a_T) = sum_k sum_j a_j / (kT + j)`.
//!
//! * [`series`]: balanced coefficient vectors, lifting, `ln` vectors.
//! * [`evaluator`]: exact partial sums, tail bounds, raw and accelerated
//!   evaluation, the rearranged stream, and `H_n - ln n`.
//! * [`quadrature`]: the integral route and the `pi` formula.
//! * [`relations`]: spanning sets, exact kernels and zero-valued series.

pub mod error;
pub mod evaluator;
pub mod factor;
pub mod quadrature;
pub mod rational;
pub mod relations;
pub mod series;

pub use error::{Result, SeriesError};
pub use evaluator::{
    block_term, evaluate, gamma_partial, harmonic, moments, partial_sum_exact, rearranged_terms,
    tail_bound, EvalConfig, EvalResult, Evaluator, GammaPartial, Method,
};
pub use factor::factor_radical;
pub use quadrature::{
    decomposition_check, integral_series_check, integrand, integrate, pi_estimate, IntegralCheck,
};
pub use rational::{format_rational, parse_rational, ExactRational};
pub use relations::{
    divisor_relations, express_in_basis, kernel, spanning_basis, verify_zero, KernelBasis,
};
pub use series::{
    lift, linear_combine, ln_rational_vector, ln_vector, make_vector, BlockIndex, CoefficientVector,
};
