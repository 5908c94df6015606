//! Gauss-Legendre panels and a globally adaptive bisection driver.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Result, SeriesError};

pub const POINTS: usize = 15;

/// Nodes on [-1, 1] and their weights.
pub struct Rule {
    pub nodes: [f64; POINTS],
    pub weights: [f64; POINTS],
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

pub fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = POINTS;
        let mut nodes = [0.0; POINTS];
        let mut weights = [0.0; POINTS];
        for i in 0..n {
            // Tricomi's initial guess, then Newton.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        Rule { nodes, weights }
    })
}

pub fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let r = rule();
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let s: f64 = r
        .nodes
        .iter()
        .zip(&r.weights)
        .map(|(x, w)| w * f(mid + half * x))
        .sum();
    s * half
}

/// Composite rule over `panels` equal panels.
pub fn composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| panel(f, a + i as f64 * h, a + (i + 1) as f64 * h))
        .sum()
}

struct Piece {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    error: f64,
}

impl Piece {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64) -> Self {
        let m = 0.5 * (a + b);
        let left = panel(f, a, m);
        let right = panel(f, m, b);
        Piece {
            a,
            b,
            left,
            right,
            error: (whole - left - right).abs(),
        }
    }

    fn value(&self) -> f64 {
        self.left + self.right
    }
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adaptive {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

/// Bisects the panel with the largest error estimate until the summed
/// estimate is at most `tol`. The estimate of a panel is the difference
/// between one rule on it and the rule on its two halves.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> Result<Adaptive> {
    let mut heap = BinaryHeap::new();
    heap.push(Piece::new(f, a, b, panel(f, a, b)));
    loop {
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if error <= tol {
            let value = heap.iter().map(Piece::value).sum();
            return Ok(Adaptive {
                value,
                error_estimate: error,
                panels: heap.len() * 2,
            });
        }
        if heap.len() * 2 >= max_panels {
            return Err(SeriesError::NoConvergence {
                panels: heap.len() * 2,
                estimate: error,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let m = 0.5 * (worst.a + worst.b);
        heap.push(Piece::new(f, worst.a, m, worst.left));
        heap.push(Piece::new(f, m, worst.b, worst.right));
    }
}
