//! Small numerical kernels shared across modules: factorials, binomials,
//! Poisson tails, the standard normal and a monotone bisection solver.

use libm::erfc;
pub use statrs::function::gamma::ln_gamma;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// `k!` as a float. Exact up to 22!, correctly rounded beyond.
pub fn factorial(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * f64::from(i))
}

/// Binomial coefficient C(n, k) computed exactly in integer arithmetic while
/// it fits, through log-gamma otherwise.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul(u128::from(n - i)) {
            Some(v) => acc = v / u128::from(i + 1),
            None => {
                let (n, k) = (n as f64, k as f64);
                return (ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)).exp();
            }
        }
    }
    acc as f64
}

/// Beta function B(a, b) for positive integers, via exact factorial ratios.
pub fn beta_int(a: u32, b: u32) -> f64 {
    1.0 / (f64::from(a + b - 1) * binomial(u64::from(a + b - 2), u64::from(a - 1)))
}

/// `e^{-xi} xi^k / k!`, the Poisson(xi) mass at `k`, evaluated in log space.
pub fn poisson_pmf(k: u32, xi: f64) -> f64 {
    if xi == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if xi.is_infinite() {
        return 0.0;
    }
    (-xi + f64::from(k) * xi.ln() - ln_gamma(f64::from(k) + 1.0)).exp()
}

/// `P(Poisson(xi) <= k - 1) = e^{-xi} sum_{i<k} xi^i / i!`.
pub fn poisson_lower(k: u32, xi: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    if xi.is_infinite() {
        return 0.0;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for i in 1..k {
        term *= xi / f64::from(i);
        sum += term;
    }
    ((-xi).exp() * sum).min(1.0)
}

/// `P(Poisson(xi) >= k)`, accurate when it is tiny (small `xi`).
pub fn poisson_upper(k: u32, xi: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if xi <= 0.0 {
        return 0.0;
    }
    if xi.is_infinite() {
        return 1.0;
    }
    if xi > f64::from(k) {
        return 1.0 - poisson_lower(k, xi);
    }
    // terms decrease geometrically once i + 1 > xi
    let mut term = poisson_pmf(k, xi);
    let mut sum = 0.0;
    let mut i = k;
    while term > sum * 1e-17 {
        sum += term;
        i += 1;
        term *= xi / f64::from(i);
        if term == 0.0 {
            break;
        }
    }
    sum
}

/// Standard normal df.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

/// Standard normal survival function, accurate deep in the upper tail.
pub fn normal_sf(x: f64) -> f64 {
    0.5 * erfc(x / SQRT_2)
}

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Standard normal quantile: Acklam's rational approximation refined by
/// Halley steps against the erfc-based df.
pub fn normal_quantile(p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    if p > 0.5 {
        return -normal_quantile_lower(1.0 - p);
    }
    normal_quantile_lower(p)
}

/// Inverse of [`normal_sf`]; keeps full precision for tiny upper-tail mass.
pub fn normal_quantile_upper(q: f64) -> f64 {
    if q <= 0.0 {
        return f64::INFINITY;
    }
    if q >= 1.0 {
        return f64::NEG_INFINITY;
    }
    if q > 0.5 {
        return normal_quantile_lower(1.0 - q);
    }
    -normal_quantile_lower(q)
}

// p <= 0.5
fn normal_quantile_lower(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    let mut x = if p < 0.02425 {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    };
    for _ in 0..3 {
        let e = normal_cdf(x) - p;
        let u = e / normal_pdf(x);
        if !u.is_finite() {
            break;
        }
        let step = u / (1.0 + 0.5 * x * u);
        x -= step;
        if step.abs() <= 1e-16 * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// Root of a nondecreasing function `f` on `[lo, hi]` by bisection, stopping
/// when the bracket is narrower than `tol` (absolute) or cannot shrink further.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= tol {
            return mid;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
