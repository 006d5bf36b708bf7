//! The three max-stable laws, their stability normings and the fixed-`n`
//! limit law of the k-th largest observation.
//!
//! `-ln G(x)` is available in closed form for every law (`x^-α`, `|x|^α`,
//! `e^-x`), so all evaluations route through it instead of `ln(G(x))`.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::level::{Level, LevelDf};
use crate::special::{bisect, poisson_lower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LawKind {
    Frechet,
    Weibull,
    Gumbel,
}

/// One of Φ_α, Ψ_α or Λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxStableLaw {
    kind: LawKind,
    alpha: f64,
}

/// Constants `(A_n, B_n)` with `G^n(A_n x + B_n) = G(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityNorming {
    pub a: f64,
    pub b: f64,
}

impl MaxStableLaw {
    pub fn frechet(alpha: f64) -> Result<Self> {
        Self::with_shape(LawKind::Frechet, alpha)
    }

    pub fn weibull(alpha: f64) -> Result<Self> {
        Self::with_shape(LawKind::Weibull, alpha)
    }

    pub fn gumbel() -> Self {
        MaxStableLaw { kind: LawKind::Gumbel, alpha: f64::NAN }
    }

    fn with_shape(kind: LawKind, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return invalid(format!("{kind:?} law needs a finite alpha > 0, got {alpha}"));
        }
        Ok(MaxStableLaw { kind, alpha })
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    /// Shape parameter; `None` for the Gumbel law.
    pub fn alpha(&self) -> Option<f64> {
        match self.kind {
            LawKind::Gumbel => None,
            _ => Some(self.alpha),
        }
    }

    /// The law whose shape is multiplied by `k` (Φ_{kα}, Ψ_{kα}); Λ is unchanged.
    pub fn with_exponent_scaled(&self, k: u32) -> Self {
        match self.kind {
            LawKind::Gumbel => *self,
            _ => MaxStableLaw { kind: self.kind, alpha: self.alpha * f64::from(k) },
        }
    }

    /// `-ln G(x)`: `+inf` left of the support, `0` right of it.
    pub fn neg_log_cdf(&self, x: f64) -> f64 {
        match self.kind {
            LawKind::Frechet => {
                if x > 0.0 {
                    x.powf(-self.alpha)
                } else {
                    f64::INFINITY
                }
            }
            LawKind::Weibull => {
                if x < 0.0 {
                    (-x).powf(self.alpha)
                } else {
                    0.0
                }
            }
            LawKind::Gumbel => (-x).exp(),
        }
    }

    pub fn level(&self, x: f64) -> Level {
        Level::from_xi(self.neg_log_cdf(x))
    }

    pub fn cdf(&self, x: f64) -> f64 {
        (-self.neg_log_cdf(x)).exp()
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let xi = self.neg_log_cdf(x);
        if xi == 0.0 || xi.is_infinite() {
            return 0.0;
        }
        // d/dx (-xi) times G
        let dxi = match self.kind {
            LawKind::Frechet => self.alpha * xi / x,
            LawKind::Weibull => -self.alpha * xi / x,
            LawKind::Gumbel => xi,
        };
        dxi * (-xi).exp()
    }

    /// `(left, right)` extremities of the support.
    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            LawKind::Frechet => (0.0, f64::INFINITY),
            LawKind::Weibull => (f64::NEG_INFINITY, 0.0),
            LawKind::Gumbel => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Inverse of `-ln G`.
    fn at_neg_log(&self, xi: f64) -> f64 {
        match self.kind {
            LawKind::Frechet => xi.powf(-1.0 / self.alpha),
            LawKind::Weibull => -xi.powf(1.0 / self.alpha),
            LawKind::Gumbel => -xi.ln(),
        }
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return crate::error::domain(format!("quantile level {p} outside (0, 1)"));
        }
        Ok(self.at_neg_log(-p.ln()))
    }

    /// Quantile at upper-tail mass `q`, i.e. `G^-(1 - q)` without forming `1 - q`.
    pub fn quantile_upper(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return crate::error::domain(format!("upper-tail mass {q} outside (0, 1)"));
        }
        Ok(self.at_neg_log(-(-q).ln_1p()))
    }

    /// Quantile by bisection on the cdf; the cross-check for [`Self::quantile`].
    pub fn quantile_by_bisection(&self, p: f64) -> Result<f64> {
        let guess = self.quantile(p)?;
        let span = 1.0 + guess.abs();
        let (l, r) = self.support();
        let lo = (guess - span).max(l);
        let hi = (guess + span).min(r);
        Ok(bisect(|x| self.cdf(x) - p, lo, hi, 1e-14))
    }

    pub fn stability_norming(&self, n: u64) -> StabilityNorming {
        let n = n.max(1) as f64;
        match self.kind {
            LawKind::Frechet => StabilityNorming { a: n.powf(1.0 / self.alpha), b: 0.0 },
            LawKind::Weibull => StabilityNorming { a: n.powf(-1.0 / self.alpha), b: 0.0 },
            LawKind::Gumbel => StabilityNorming { a: 1.0, b: n.ln() },
        }
    }

    /// `G_k(x) = G(x) Σ_{i<k} (-ln G(x))^i / i!`.
    pub fn limit_kth_cdf(&self, k: u32, x: f64) -> f64 {
        let xi = self.neg_log_cdf(x);
        if xi.is_infinite() {
            return 0.0;
        }
        poisson_lower(k.max(1), xi)
    }

    pub fn name(&self) -> String {
        match self.kind {
            LawKind::Frechet => format!("frechet({})", self.alpha),
            LawKind::Weibull => format!("weibull({})", self.alpha),
            LawKind::Gumbel => "gumbel".to_string(),
        }
    }
}

impl LevelDf for MaxStableLaw {
    fn level(&self, x: f64) -> Level {
        MaxStableLaw::level(self, x)
    }

    fn pdf(&self, x: f64) -> f64 {
        MaxStableLaw::pdf(self, x)
    }

    fn point_at_xi(&self, xi: f64) -> Result<f64> {
        if !(xi > 0.0) {
            return crate::error::domain(format!("-ln G = {xi} is not positive"));
        }
        Ok(self.at_neg_log(xi))
    }

    fn left_extremity(&self) -> f64 {
        self.support().0
    }

    fn right_extremity(&self) -> f64 {
        self.support().1
    }
}
