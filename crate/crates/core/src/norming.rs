//! Norming constants `(a_n, b_n)` for base distributions and for the derived
//! families, and the convergence check `n {1 - V(a_n x + b_n)} → -ln G(x)`.

use serde::Serialize;

use crate::base::{BaseDistribution, Mda};
use crate::error::{domain, Result};
use crate::laws::MaxStableLaw;
use crate::level::LevelDf;
use crate::special::{beta_int, factorial};
use crate::transforms::{DerivedDistribution, Family, TailTransform};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum NormingMode {
    /// Constants from the tail-equivalence constant `η_k` and base quantiles.
    ClosedForm,
    /// Constants from quantiles of the derived df itself.
    #[default]
    QuantileBased,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormingConstants {
    pub n: u64,
    pub a: f64,
    pub b: f64,
}

/// `η_k`: `δ_k = 1/k!` for `F_k`, `δ_{k+1}` for `U_k`, `δ_1 = 1` for `R_k`,
/// `θ_k = 1/(k B(r,k))` for `T_k`, `γ_k = E[τ^k]/k!` for `B_k`, `1` for `H_k`.
pub fn eta_constant(t: &TailTransform) -> f64 {
    let k = t.k();
    match t.family() {
        Family::Hk | Family::Rk => 1.0,
        Family::Fk => 1.0 / factorial(k),
        Family::Uk => 1.0 / factorial(k + 1),
        Family::Tk { r } => 1.0 / (f64::from(k) * beta_int(*r, k)),
        Family::Bk { tau } => tau.moment(k) / factorial(k),
    }
}

fn check_n(n: u64) -> Result<()> {
    if n < 2 {
        return domain(format!("norming needs n >= 2, got {n}"));
    }
    Ok(())
}

/// Constants for the base df itself: `(F^-(1-1/n), 0)`, `(r - F^-(1-1/n), r)`
/// or `(v(b_n), F^-(1-1/n))` by domain.
pub fn base_norming(dist: &BaseDistribution, n: u64) -> Result<NormingConstants> {
    check_n(n)?;
    let q = dist.quantile_upper(1.0 / n as f64)?;
    let (a, b) = match dist.mda() {
        Mda::Frechet(_) => (q, 0.0),
        Mda::Weibull(_) => {
            let r = dist.right_extremity();
            (r - q, r)
        }
        Mda::Gumbel => (dist.auxiliary_function(q)?, q),
    };
    Ok(NormingConstants { n, a, b })
}

/// Constants for `V_k` built on `base`.
pub fn transform_norming(t: &TailTransform, base: &BaseDistribution, n: u64, mode: NormingMode) -> Result<NormingConstants> {
    check_n(n)?;
    let nf = n as f64;
    let v = DerivedDistribution::new(t.clone(), *base);
    let r = base.right_extremity();
    let (a, b) = match (mode, base.mda()) {
        (NormingMode::ClosedForm, Mda::Gumbel) => {
            let b = v.quantile_upper(1.0 / nf)?;
            (base.auxiliary_function(b)? / f64::from(t.k()), b)
        }
        (NormingMode::ClosedForm, mda) => {
            let s = (1.0 / (nf * eta_constant(t))).powf(1.0 / f64::from(t.k()));
            let q = base.quantile_upper(s)?;
            match mda {
                Mda::Frechet(_) => (q, 0.0),
                _ => (r - q, r),
            }
        }
        (NormingMode::QuantileBased, Mda::Frechet(_)) => (v.quantile_upper(1.0 / nf)?, 0.0),
        (NormingMode::QuantileBased, Mda::Weibull(_)) => (r - v.quantile_upper(1.0 / nf)?, r),
        (NormingMode::QuantileBased, Mda::Gumbel) => {
            let b = v.quantile_upper(1.0 / nf)?;
            let above = v.quantile_upper(1.0 / (nf * std::f64::consts::E))?;
            (above - b, b)
        }
    };
    if !(a > 0.0 && a.is_finite()) {
        return domain(format!("norming scale a_{n} = {a} is not positive"));
    }
    Ok(NormingConstants { n, a, b })
}

/// The limit law of `V_k` under linear norming: `Φ_{kα}`, `Ψ_{kα}` or `Λ`.
pub fn target_law(t: &TailTransform, base: &BaseDistribution) -> MaxStableLaw {
    base.mda().law().with_exponent_scaled(t.k())
}

/// `n ↦ (a_n, b_n)` attached to a derived df.
#[derive(Debug, Clone, PartialEq)]
pub struct NormingSequence {
    transform: TailTransform,
    base: BaseDistribution,
    source: NormingMode,
}

impl NormingSequence {
    pub fn new(transform: TailTransform, base: BaseDistribution, source: NormingMode) -> Self {
        NormingSequence { transform, base, source }
    }

    pub fn source(&self) -> NormingMode {
        self.source
    }

    pub fn at(&self, n: u64) -> Result<NormingConstants> {
        transform_norming(&self.transform, &self.base, n, self.source)
    }

    pub fn a(&self, n: u64) -> Result<f64> {
        Ok(self.at(n)?.a)
    }

    pub fn b(&self, n: u64) -> Result<f64> {
        Ok(self.at(n)?.b)
    }

    pub fn target_law(&self) -> MaxStableLaw {
        target_law(&self.transform, &self.base)
    }

    /// Worst deviation of the convergence criterion over the grids.
    pub fn verify(&self, n_grid: &[u64], x_grid: &[f64]) -> Result<f64> {
        let v = DerivedDistribution::new(self.transform.clone(), self.base);
        verify_norming(&v, &self.target_law(), |n| self.at(n), n_grid, x_grid)
    }
}

/// `max |−n ln V(a_n x + b_n) − (−ln G(x))|` over the grids.
///
/// `−n ln V` and `n (1 − V)` differ by `O(n (1 − V)^2)`, so this is the same
/// criterion; the log form is exact under the stability norming of a
/// max-stable `V`.
pub fn verify_norming<D, N>(df: &D, target: &MaxStableLaw, norming: N, n_grid: &[u64], x_grid: &[f64]) -> Result<f64>
where
    D: LevelDf + ?Sized,
    N: Fn(u64) -> Result<NormingConstants>,
{
    let mut worst: f64 = 0.0;
    for &n in n_grid {
        let c = norming(n)?;
        for &x in x_grid {
            let lhs = n as f64 * df.level(c.a * x + c.b).xi();
            let dev = (lhs - target.neg_log_cdf(x)).abs();
            worst = if dev.is_nan() { f64::NAN } else { worst.max(dev) };
        }
    }
    Ok(worst)
}

/// Quantiles of `law` at the given probabilities.
pub fn target_quantile_grid(law: &MaxStableLaw, probs: &[f64]) -> Result<Vec<f64>> {
    probs.iter().map(|&p| law.quantile(p)).collect()
}
