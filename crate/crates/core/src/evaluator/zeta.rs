//! Hurwitz-zeta tails `sum_{k >= n} k^-s` for integer `s >= 2`.

/// Bernoulli numbers B2, B4, B6, B8.
const BERNOULLI: [f64; 4] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0];

/// Terms below `max(DIRECT_BELOW, SHIFT_PER_ORDER * s)` are summed directly
/// before switching to Euler-Maclaurin.
const DIRECT_BELOW: u64 = 100;
const SHIFT_PER_ORDER: u64 = 20;

/// Returns `(value, remainder_bound)` for `sum_{k >= n} k^-s`.
///
/// Euler-Maclaurin with correction terms through B6; the B8 term bounds the
/// remainder since `x^-s` is completely monotone.
pub fn hurwitz_tail(s: u32, n: u64) -> (f64, f64) {
    assert!(s >= 2, "hurwitz_tail needs s >= 2");
    assert!(n >= 1, "hurwitz_tail needs n >= 1");
    let sf = s as f64;
    let mut head = 0.0;
    let shift = DIRECT_BELOW.max(SHIFT_PER_ORDER * s as u64);
    let mut start = n;
    while start < shift {
        head += (start as f64).powi(-(s as i32));
        start += 1;
    }
    let x = start as f64;
    let xs = x.powf(-sf);
    let mut sum = x * xs / (sf - 1.0) + 0.5 * xs;
    // rising factorial s (s+1) ... (s+2i-2) and (2i)!
    let mut rising = sf;
    let mut fact = 2.0;
    let mut power = xs / x;
    let mut remainder = 0.0;
    for (i, b) in BERNOULLI.iter().enumerate() {
        let term = b / fact * rising * power;
        if i + 1 < BERNOULLI.len() {
            sum += term;
        } else {
            remainder = term.abs();
        }
        let r = 2.0 * (i as f64 + 1.0);
        rising *= (sf + r - 1.0) * (sf + r);
        fact *= (r + 1.0) * (r + 2.0);
        power /= x * x;
    }
    (head + sum, remainder)
}
