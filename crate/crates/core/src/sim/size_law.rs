//! Random sample-size laws `N_n` and their asymptotic couplings.

use rand::Rng;
use rand_distr::{Binomial, Distribution, Geometric, Poisson};

use crate::error::{invalid, Error, Result};
use crate::transforms::{LimitFamily, TauSpec};

/// A concrete law of the sample size.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleSizeLaw {
    Fixed { n: u64 },
    /// Uniform on `m+1, ..., m+n`.
    DiscreteUniform { m: u64, n: u64 },
    /// `m + Binomial(n, p)`.
    ShiftedBinomial { m: u64, n: u64, p: f64 },
    /// `m + Poisson(λ)`.
    ShiftedPoisson { m: u64, lambda: f64 },
    /// `n + L` with `P(L = j) = θ^j / (j (-ln(1-θ)))`, `j ≥ 1`.
    ShiftedLogarithmic { n: u64, theta: f64 },
    /// `P(N = m + j) = p q^j`, `j ≥ 0`.
    ShiftedGeometric { m: u64, p: f64 },
    /// `m` plus the failure count before the `r`-th success.
    ShiftedNegBinomial { m: u64, r: u32, p: f64 },
    /// `max(1, round(τ n))` with `τ` drawn from a finite law.
    TauMixture { n: u64, tau: TauSpec },
}

impl SampleSizeLaw {
    pub fn validate(&self) -> Result<()> {
        let prob = |name: &str, p: f64, allow_one: bool| {
            if p > 0.0 && (p < 1.0 || (allow_one && p == 1.0)) {
                Ok(())
            } else {
                invalid(format!("{name} = {p} outside its range"))
            }
        };
        match self {
            SampleSizeLaw::Fixed { n } | SampleSizeLaw::DiscreteUniform { n, .. } if *n == 0 => invalid("n must be >= 1"),
            SampleSizeLaw::ShiftedBinomial { p, .. } => prob("p", *p, true),
            SampleSizeLaw::ShiftedPoisson { lambda, .. } if !(*lambda > 0.0 && lambda.is_finite()) => {
                invalid(format!("lambda = {lambda} must be finite and > 0"))
            }
            SampleSizeLaw::ShiftedLogarithmic { theta, .. } => prob("theta", *theta, false),
            SampleSizeLaw::ShiftedGeometric { p, .. } => prob("p", *p, true),
            SampleSizeLaw::ShiftedNegBinomial { r, p, .. } => {
                if *r == 0 {
                    return invalid("negative binomial r must be >= 1");
                }
                prob("p", *p, true)
            }
            _ => Ok(()),
        }
    }

    /// Smallest value the sample size can take.
    pub fn min_size(&self) -> u64 {
        match self {
            SampleSizeLaw::Fixed { n } => *n,
            SampleSizeLaw::DiscreteUniform { m, .. } => m + 1,
            SampleSizeLaw::ShiftedBinomial { m, n, p } => {
                if *p == 1.0 {
                    m + n
                } else {
                    *m
                }
            }
            SampleSizeLaw::ShiftedPoisson { m, .. }
            | SampleSizeLaw::ShiftedGeometric { m, .. }
            | SampleSizeLaw::ShiftedNegBinomial { m, .. } => *m,
            SampleSizeLaw::ShiftedLogarithmic { n, .. } => n + 1,
            SampleSizeLaw::TauMixture { n, tau } => tau
                .support()
                .iter()
                .map(|&(t, _)| ((t * *n as f64).round() as u64).max(1))
                .min()
                .unwrap_or(1),
        }
    }
}

/// One draw of the sample size.
pub fn sample_size<R: Rng + ?Sized>(law: &SampleSizeLaw, rng: &mut R) -> Result<u64> {
    let bad = |e: String| Error::InvalidParameter(e);
    Ok(match law {
        SampleSizeLaw::Fixed { n } => *n,
        SampleSizeLaw::DiscreteUniform { m, n } => m + 1 + rng.random_range(0..*n),
        SampleSizeLaw::ShiftedBinomial { m, n, p } => {
            m + Binomial::new(*n, *p).map_err(|e| bad(e.to_string()))?.sample(rng)
        }
        SampleSizeLaw::ShiftedPoisson { m, lambda } => {
            m + Poisson::new(*lambda).map_err(|e| bad(e.to_string()))?.sample(rng) as u64
        }
        SampleSizeLaw::ShiftedLogarithmic { n, theta } => n + logarithmic(*theta, rng),
        SampleSizeLaw::ShiftedGeometric { m, p } => m + Geometric::new(*p).map_err(|e| bad(e.to_string()))?.sample(rng),
        SampleSizeLaw::ShiftedNegBinomial { m, r, p } => {
            let g = Geometric::new(*p).map_err(|e| bad(e.to_string()))?;
            m + (0..*r).map(|_| g.sample(rng)).sum::<u64>()
        }
        SampleSizeLaw::TauMixture { n, tau } => {
            let mut u: f64 = rng.random();
            let mut pick = tau.support()[tau.support().len() - 1].0;
            for &(t, p) in tau.support() {
                if u < p {
                    pick = t;
                    break;
                }
                u -= p;
            }
            ((pick * *n as f64).round() as u64).max(1)
        }
    })
}

/// Logarithmic-series variate on `1, 2, ...` (Kemp's second algorithm).
fn logarithmic<R: Rng + ?Sized>(theta: f64, rng: &mut R) -> u64 {
    let r = (-theta).ln_1p();
    loop {
        let v: f64 = rng.random();
        if v >= theta {
            return 1;
        }
        let u: f64 = rng.random();
        let q = -(r * u).exp_m1();
        if v <= q * q {
            let x = (1.0 + v.ln() / q.ln()).floor();
            if x < 1.0 || v == 0.0 {
                continue;
            }
            return x as u64;
        }
        return if v >= q { 1 } else { 2 };
    }
}

/// A sample-size family indexed by `n`, instantiated at the coupling used
/// for the asymptotics: `p_n = 1/n` (geometric, negative binomial),
/// `λ_n = n` (Poisson), `p_n = 1 - n^(-1/2)` with `n` trials (binomial),
/// `θ_n = 1 - 1/n` (logarithmic).
#[derive(Debug, Clone, PartialEq)]
pub enum SizeLawTemplate {
    Fixed,
    DiscreteUniform { m: u64 },
    Binomial { m: u64 },
    Poisson { m: u64 },
    Logarithmic,
    Geometric { m: u64 },
    NegBinomial { m: u64, r: u32 },
    Tau { tau: TauSpec },
}

/// Names accepted by [`SizeLawTemplate::from_name`].
pub const SIZE_LAW_NAMES: [&str; 8] =
    ["fixed", "discrete-uniform", "binomial", "poisson", "logarithmic", "geometric", "negbin", "tau"];

impl SizeLawTemplate {
    /// Resolves a name; `m` defaults to `k` where the law has a shift.
    pub fn from_name(name: &str, m: Option<u64>, k: u32, r: Option<u32>, tau: Option<TauSpec>) -> Result<Self> {
        let m = m.unwrap_or(u64::from(k));
        Ok(match name {
            "fixed" => SizeLawTemplate::Fixed,
            "discrete-uniform" | "uniform" => SizeLawTemplate::DiscreteUniform { m },
            "binomial" => SizeLawTemplate::Binomial { m },
            "poisson" => SizeLawTemplate::Poisson { m },
            "logarithmic" => SizeLawTemplate::Logarithmic,
            "geometric" => SizeLawTemplate::Geometric { m },
            "negbin" | "negative-binomial" => SizeLawTemplate::NegBinomial { m, r: r.unwrap_or(1) },
            "tau" => SizeLawTemplate::Tau {
                tau: tau.ok_or_else(|| Error::InvalidParameter("size law tau needs a tau spec".into()))?,
            },
            _ => return Err(Error::UnknownName(format!("sample-size law '{name}'"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SizeLawTemplate::Fixed => "fixed",
            SizeLawTemplate::DiscreteUniform { .. } => "discrete-uniform",
            SizeLawTemplate::Binomial { .. } => "binomial",
            SizeLawTemplate::Poisson { .. } => "poisson",
            SizeLawTemplate::Logarithmic => "logarithmic",
            SizeLawTemplate::Geometric { .. } => "geometric",
            SizeLawTemplate::NegBinomial { .. } => "negbin",
            SizeLawTemplate::Tau { .. } => "tau",
        }
    }

    pub fn instantiate(&self, n: u64) -> Result<SampleSizeLaw> {
        if n < 2 {
            return invalid(format!("coupled sample-size laws need n >= 2, got {n}"));
        }
        let nf = n as f64;
        let law = match self {
            SizeLawTemplate::Fixed => SampleSizeLaw::Fixed { n },
            SizeLawTemplate::DiscreteUniform { m } => SampleSizeLaw::DiscreteUniform { m: *m, n },
            SizeLawTemplate::Binomial { m } => SampleSizeLaw::ShiftedBinomial { m: *m, n, p: 1.0 - nf.sqrt().recip() },
            SizeLawTemplate::Poisson { m } => SampleSizeLaw::ShiftedPoisson { m: *m, lambda: nf },
            SizeLawTemplate::Logarithmic => SampleSizeLaw::ShiftedLogarithmic { n, theta: 1.0 - 1.0 / nf },
            SizeLawTemplate::Geometric { m } => SampleSizeLaw::ShiftedGeometric { m: *m, p: 1.0 / nf },
            SizeLawTemplate::NegBinomial { m, r } => SampleSizeLaw::ShiftedNegBinomial { m: *m, r: *r, p: 1.0 / nf },
            SizeLawTemplate::Tau { tau } => SampleSizeLaw::TauMixture { n, tau: tau.clone() },
        };
        law.validate()?;
        Ok(law)
    }

    /// The limit family of the normalized k-th upper order statistic.
    pub fn predicted_family(&self) -> LimitFamily {
        match self {
            SizeLawTemplate::Fixed
            | SizeLawTemplate::Binomial { .. }
            | SizeLawTemplate::Poisson { .. }
            | SizeLawTemplate::Logarithmic => LimitFamily::Gk,
            SizeLawTemplate::DiscreteUniform { .. } => LimitFamily::Jk,
            SizeLawTemplate::Geometric { .. } | SizeLawTemplate::NegBinomial { r: 1, .. } => LimitFamily::Lk,
            SizeLawTemplate::NegBinomial { r, .. } => LimitFamily::Sk { r: *r },
            SizeLawTemplate::Tau { tau } => LimitFamily::BarakatNigm { tau: tau.clone() },
        }
    }
}
