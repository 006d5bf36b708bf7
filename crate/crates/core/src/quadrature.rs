//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! Infinite endpoints are handled by mapping onto a finite interval; the
//! Kronrod nodes never touch the endpoints, so integrable endpoint
//! singularities are tolerated.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Outcome of an integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-12, rel: 1e-10, max_intervals: 4000 }
    }
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Tolerance { abs: 0.0, rel, ..Tolerance::default() }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kron * h;
    let error = ((kron - gauss) * h).abs();
    Segment { a, b, value, error }
}

/// Integrates `f` over `[a, b]`; either bound may be infinite.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0, intervals: 0 });
    }
    if a > b {
        let q = integrate(f, b, a, tol)?;
        return Ok(Quadrature { value: -q.value, ..q });
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => integrate_finite(&f, a, b, tol),
        (true, false) => integrate_finite(
            &|t: f64| {
                let s = 1.0 - t;
                f(a + t / s) / (s * s)
            },
            0.0,
            1.0,
            tol,
        ),
        (false, true) => integrate_finite(
            &|t: f64| {
                let s = 1.0 - t;
                f(b - t / s) / (s * s)
            },
            0.0,
            1.0,
            tol,
        ),
        (false, false) => integrate_finite(
            &|t: f64| {
                let s = 1.0 - t * t;
                f(t / s) * (1.0 + t * t) / (s * s)
            },
            -1.0,
            1.0,
            tol,
        ),
    }
}

fn integrate_finite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: Tolerance) -> Result<Quadrature> {
    let first = kronrod(f, a, b);
    let mut total = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    while error > tol.abs.max(tol.rel * total.abs()) {
        if heap.len() >= tol.max_intervals {
            return Err(Error::QuadratureNotConverged { estimate: total, error });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine precision; accept it as is
            heap.push(worst);
            break;
        }
        let left = kronrod(f, worst.a, mid);
        let right = kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // resum to shed accumulated rounding from the running updates
    let value: f64 = heap.iter().map(|s| s.value).sum();
    let error: f64 = heap.iter().map(|s| s.error).sum();
    if !value.is_finite() || error > tol.abs.max(tol.rel * value.abs()) {
        return Err(Error::QuadratureNotConverged { estimate: value, error });
    }
    Ok(Quadrature { value, error, intervals: heap.len() })
}
