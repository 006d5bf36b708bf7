//! Kolmogorov-Smirnov distances.

/// `sup_x |F_M(x) - F(x)|` for a sorted sample, evaluated exactly at the
/// jump points: `max_i max(i/M - F(x_i), F(x_i) - (i-1)/M)`.
pub fn ks_distance<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let m = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0, |acc: f64, (i, &x)| {
        let f = cdf(x);
        let i = i as f64;
        acc.max((i + 1.0) / m - f).max(f - i / m)
    })
}

/// Two-sample statistic `sup_x |F_A(x) - F_B(x)|` for sorted samples.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}
