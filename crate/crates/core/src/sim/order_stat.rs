//! Sampling the k-th upper order statistic of `N` iid draws in `O(k)`.

use rand::Rng;

use crate::error::{domain, Result};
use crate::level::LevelDf;

/// Draws `X_{N-k+1:N}` from `base` by descending through the uniform order
/// statistics `U_(N) = V_1^(1/N)`, `U_(N-j) = U_(N-j+1) V_(j+1)^(1/(N-j))`,
/// kept as logarithms so that `N` may be astronomically large.
pub fn kth_upper_order_stat<D, R>(base: &D, n: u64, k: u32, rng: &mut R) -> Result<f64>
where
    D: LevelDf + ?Sized,
    R: Rng + ?Sized,
{
    if k == 0 || u64::from(k) > n {
        return domain(format!("order statistic k = {k} needs 1 <= k <= N = {n}"));
    }
    let mut log_u = 0.0;
    for j in 0..u64::from(k) {
        let v = 1.0 - rng.random::<f64>();
        log_u += v.ln() / (n - j) as f64;
    }
    if log_u == 0.0 {
        return Ok(base.right_extremity());
    }
    base.point_at_xi(-log_u)
}
