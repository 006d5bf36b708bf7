//! Base distributions with their max-domain-of-attraction metadata.
//!
//! Every distribution evaluates its df as a [`Level`], so that `1 - F` is
//! computed directly rather than by subtraction. Quantiles come in two
//! flavours: [`BaseDistribution::quantile`] takes `p = F(x)` and
//! [`BaseDistribution::quantile_upper`] takes `s = 1 - F(x)`.

use std::f64::consts::PI;

use serde::Serialize;
use statrs::function::beta::{beta_reg, ln_beta};
use statrs::function::gamma::{gamma_lr, gamma_ur};

use crate::error::{domain, invalid, Error, Result};
use crate::laws::MaxStableLaw;
use crate::level::{Level, LevelDf};
use crate::quadrature::{integrate, Tolerance};
use crate::special::{bisect, ln_gamma, normal_cdf, normal_pdf, normal_quantile, normal_quantile_upper, normal_sf};

/// Max domain of attraction of a base distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Mda {
    Frechet(f64),
    Weibull(f64),
    Gumbel,
}

impl Mda {
    /// The limit law `G` of the normalized maximum.
    pub fn law(&self) -> MaxStableLaw {
        match *self {
            Mda::Frechet(a) => MaxStableLaw::frechet(a).expect("validated tail index"),
            Mda::Weibull(a) => MaxStableLaw::weibull(a).expect("validated tail index"),
            Mda::Gumbel => MaxStableLaw::gumbel(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Mda::Frechet(a) => format!("frechet({a})"),
            Mda::Weibull(a) => format!("weibull({a})"),
            Mda::Gumbel => "gumbel".to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Frechet { alpha: f64 },
    Pareto { c: f64, alpha: f64 },
    WeibullLaw { alpha: f64 },
    Uniform,
    Normal,
    RatioExp,
    Gamma { alpha: f64 },
    Exponential,
    LogGamma { alpha: f64, beta: f64 },
    Cauchy,
    Beta { alpha: f64, beta: f64 },
}

/// An absolutely continuous base df `F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseDistribution {
    kind: Kind,
}

/// Optional named parameters used when resolving a distribution by name.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BaseParams {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub c: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub distribution: BaseDistribution,
    pub parameters: Vec<(&'static str, f64)>,
}

/// Names accepted by [`BaseDistribution::from_name`].
pub const BASE_NAMES: [&str; 11] = [
    "frechet",
    "pareto",
    "weibull-law",
    "uniform",
    "normal",
    "ratio-exp",
    "gamma",
    "exponential",
    "log-gamma",
    "cauchy",
    "beta",
];

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        invalid(format!("{name} must be finite and > 0, got {v}"))
    }
}

impl BaseDistribution {
    pub fn frechet(alpha: f64) -> Result<Self> {
        Ok(Self { kind: Kind::Frechet { alpha: positive("alpha", alpha)? } })
    }

    /// Pareto tail `1 - F(x) = c x^-α` on `x >= c^(1/α)`.
    pub fn pareto(c: f64, alpha: f64) -> Result<Self> {
        Ok(Self { kind: Kind::Pareto { c: positive("c", c)?, alpha: positive("alpha", alpha)? } })
    }

    /// The Weibull max-stable law `Ψ_α` used as a base df.
    pub fn weibull_law(alpha: f64) -> Result<Self> {
        Ok(Self { kind: Kind::WeibullLaw { alpha: positive("alpha", alpha)? } })
    }

    pub fn uniform() -> Self {
        Self { kind: Kind::Uniform }
    }

    pub fn normal() -> Self {
        Self { kind: Kind::Normal }
    }

    /// `F(x) = 1 - exp(-x / (1 - x))` on `[0, 1)`.
    pub fn ratio_exp() -> Self {
        Self { kind: Kind::RatioExp }
    }

    /// Density `x^α e^-x / Γ(α + 1)`; `α = 0` is the exponential.
    pub fn gamma(alpha: f64) -> Result<Self> {
        if !(alpha > -1.0 && alpha.is_finite()) {
            return invalid(format!("gamma alpha must be finite and > -1, got {alpha}"));
        }
        Ok(Self { kind: Kind::Gamma { alpha } })
    }

    pub fn exponential() -> Self {
        Self { kind: Kind::Exponential }
    }

    /// Density `α^β x^(-α-1) (ln x)^(β-1) / Γ(β)` on `x > 1`.
    pub fn log_gamma(alpha: f64, beta: f64) -> Result<Self> {
        Ok(Self { kind: Kind::LogGamma { alpha: positive("alpha", alpha)?, beta: positive("beta", beta)? } })
    }

    pub fn cauchy() -> Self {
        Self { kind: Kind::Cauchy }
    }

    pub fn beta(alpha: f64, beta: f64) -> Result<Self> {
        Ok(Self { kind: Kind::Beta { alpha: positive("alpha", alpha)?, beta: positive("beta", beta)? } })
    }

    /// Resolves a catalog name, filling unspecified parameters with defaults.
    pub fn from_name(name: &str, params: &BaseParams) -> Result<Self> {
        let allowed: &[&str] = match name {
            "frechet" | "weibull-law" | "gamma" => &["alpha"],
            "pareto" => &["alpha", "c"],
            "log-gamma" | "beta" => &["alpha", "beta"],
            "uniform" | "normal" | "ratio-exp" | "exponential" | "cauchy" => &[],
            _ => return Err(Error::UnknownName(format!("base distribution '{name}'"))),
        };
        for (key, value) in [("alpha", params.alpha), ("beta", params.beta), ("c", params.c)] {
            if value.is_some() && !allowed.contains(&key) {
                return invalid(format!("{name} takes no parameter {key}"));
            }
        }
        let alpha = params.alpha;
        match name {
            "frechet" => Self::frechet(alpha.unwrap_or(1.0)),
            "pareto" => Self::pareto(params.c.unwrap_or(1.0), alpha.unwrap_or(1.0)),
            "weibull-law" => Self::weibull_law(alpha.unwrap_or(1.0)),
            "uniform" => Ok(Self::uniform()),
            "normal" => Ok(Self::normal()),
            "ratio-exp" => Ok(Self::ratio_exp()),
            "gamma" => Self::gamma(alpha.unwrap_or(1.0)),
            "exponential" => Ok(Self::exponential()),
            "log-gamma" => Self::log_gamma(alpha.unwrap_or(2.0), params.beta.unwrap_or(2.0)),
            "cauchy" => Ok(Self::cauchy()),
            _ => Self::beta(alpha.unwrap_or(2.0), params.beta.unwrap_or(3.0)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            Kind::Frechet { .. } => "frechet",
            Kind::Pareto { .. } => "pareto",
            Kind::WeibullLaw { .. } => "weibull-law",
            Kind::Uniform => "uniform",
            Kind::Normal => "normal",
            Kind::RatioExp => "ratio-exp",
            Kind::Gamma { .. } => "gamma",
            Kind::Exponential => "exponential",
            Kind::LogGamma { .. } => "log-gamma",
            Kind::Cauchy => "cauchy",
            Kind::Beta { .. } => "beta",
        }
    }

    pub fn parameters(&self) -> Vec<(&'static str, f64)> {
        match self.kind {
            Kind::Frechet { alpha } | Kind::WeibullLaw { alpha } | Kind::Gamma { alpha } => vec![("alpha", alpha)],
            Kind::Pareto { c, alpha } => vec![("c", c), ("alpha", alpha)],
            Kind::LogGamma { alpha, beta } | Kind::Beta { alpha, beta } => vec![("alpha", alpha), ("beta", beta)],
            _ => vec![],
        }
    }

    /// Name with parameters, e.g. `pareto(c=1,alpha=1)`.
    pub fn label(&self) -> String {
        let params = self.parameters();
        if params.is_empty() {
            return self.name().to_string();
        }
        let inner: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.name(), inner.join(","))
    }

    pub fn mda(&self) -> Mda {
        match self.kind {
            Kind::Frechet { alpha } | Kind::Pareto { alpha, .. } | Kind::LogGamma { alpha, .. } => Mda::Frechet(alpha),
            Kind::Cauchy => Mda::Frechet(1.0),
            Kind::WeibullLaw { alpha } => Mda::Weibull(alpha),
            Kind::Uniform => Mda::Weibull(1.0),
            Kind::Beta { beta, .. } => Mda::Weibull(beta),
            Kind::Normal | Kind::RatioExp | Kind::Gamma { .. } | Kind::Exponential => Mda::Gumbel,
        }
    }

    /// `l(F)`.
    pub fn left_extremity(&self) -> f64 {
        match self.kind {
            Kind::Frechet { .. } | Kind::Uniform | Kind::RatioExp | Kind::Gamma { .. } | Kind::Exponential | Kind::Beta { .. } => 0.0,
            Kind::Pareto { c, alpha } => c.powf(1.0 / alpha),
            Kind::LogGamma { .. } => 1.0,
            Kind::WeibullLaw { .. } | Kind::Normal | Kind::Cauchy => f64::NEG_INFINITY,
        }
    }

    /// `r(F)`.
    pub fn right_extremity(&self) -> f64 {
        match self.kind {
            Kind::WeibullLaw { .. } => 0.0,
            Kind::Uniform | Kind::RatioExp | Kind::Beta { .. } => 1.0,
            _ => f64::INFINITY,
        }
    }

    /// `F(x)` together with `1 - F(x)` and `-ln F(x)`.
    pub fn level(&self, x: f64) -> Level {
        if x.is_nan() {
            return Level::from_cdf(f64::NAN);
        }
        if x <= self.left_extremity() {
            return Level::BOTTOM;
        }
        if x >= self.right_extremity() {
            return Level::TOP;
        }
        match self.kind {
            Kind::Frechet { alpha } => Level::from_xi(x.powf(-alpha)),
            Kind::Pareto { c, alpha } => Level::from_sf(c * x.powf(-alpha)),
            Kind::WeibullLaw { alpha } => Level::from_xi((-x).powf(alpha)),
            Kind::Uniform => Level::from_parts(x, 1.0 - x),
            Kind::Normal => Level::from_parts(normal_cdf(x), normal_sf(x)),
            Kind::RatioExp => {
                let u = x / (1.0 - x);
                Level::from_parts(-(-u).exp_m1(), (-u).exp())
            }
            Kind::Gamma { alpha } => Level::from_parts(gamma_lr(alpha + 1.0, x), gamma_ur(alpha + 1.0, x)),
            Kind::Exponential => Level::from_parts(-(-x).exp_m1(), (-x).exp()),
            Kind::LogGamma { alpha, beta } => {
                let y = alpha * x.ln();
                Level::from_parts(gamma_lr(beta, y), gamma_ur(beta, y))
            }
            Kind::Cauchy => Level::from_parts(1.0f64.atan2(-x) / PI, 1.0f64.atan2(x) / PI),
            Kind::Beta { alpha, beta } => Level::from_parts(beta_reg(alpha, beta, x), beta_reg(beta, alpha, 1.0 - x)),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.level(x).cdf()
    }

    /// `1 - F(x)`, computed without cancellation.
    pub fn sf(&self, x: f64) -> f64 {
        self.level(x).sf()
    }

    /// `ln(1 - F(x))`, finite past the point where `1 - F` underflows for
    /// the tails that have a closed form.
    pub fn ln_sf(&self, x: f64) -> f64 {
        if x <= self.left_extremity() {
            return 0.0;
        }
        if x >= self.right_extremity() {
            return f64::NEG_INFINITY;
        }
        match self.kind {
            Kind::Pareto { c, alpha } => c.ln() - alpha * x.ln(),
            Kind::RatioExp => -x / (1.0 - x),
            Kind::Exponential => -x,
            Kind::Frechet { alpha } => (-(-x.powf(-alpha)).exp_m1()).ln(),
            Kind::WeibullLaw { alpha } => (-(-(-x).powf(alpha)).exp_m1()).ln(),
            _ => self.sf(x).ln(),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let (l, r) = (self.left_extremity(), self.right_extremity());
        if !(x > l && x < r) {
            return match self.kind {
                Kind::Uniform if x == 0.0 || x == 1.0 => 1.0,
                Kind::Pareto { alpha, c } if x == l => alpha * c * x.powf(-alpha - 1.0),
                Kind::Exponential if x == 0.0 => 1.0,
                Kind::RatioExp if x == 0.0 => 1.0,
                _ => 0.0,
            };
        }
        match self.kind {
            Kind::Frechet { alpha } => {
                let xi = x.powf(-alpha);
                alpha * xi / x * (-xi).exp()
            }
            Kind::Pareto { c, alpha } => alpha * c * x.powf(-alpha - 1.0),
            Kind::WeibullLaw { alpha } => {
                let xi = (-x).powf(alpha);
                alpha * xi / (-x) * (-xi).exp()
            }
            Kind::Uniform => 1.0,
            Kind::Normal => normal_pdf(x),
            Kind::RatioExp => {
                let w = 1.0 - x;
                (-x / w).exp() / (w * w)
            }
            Kind::Gamma { alpha } => (alpha * x.ln() - x - ln_gamma(alpha + 1.0)).exp(),
            Kind::Exponential => (-x).exp(),
            Kind::LogGamma { alpha, beta } => {
                let lx = x.ln();
                (beta * alpha.ln() - (alpha + 1.0) * lx + (beta - 1.0) * lx.ln() - ln_gamma(beta)).exp()
            }
            Kind::Cauchy => 1.0 / (PI * (1.0 + x * x)),
            Kind::Beta { alpha, beta } => {
                ((alpha - 1.0) * x.ln() + (beta - 1.0) * (-x).ln_1p() - ln_beta(alpha, beta)).exp()
            }
        }
    }

    /// `F^-(p)` for `0 < p < 1`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return domain(format!("quantile level {p} outside (0, 1)"));
        }
        Ok(match self.kind {
            Kind::Frechet { alpha } => (-p.ln()).powf(-1.0 / alpha),
            Kind::WeibullLaw { alpha } => -(-p.ln()).powf(1.0 / alpha),
            Kind::Pareto { c, alpha } => ((c.ln() - (-p).ln_1p()) / alpha).exp(),
            Kind::Uniform => p,
            Kind::Normal => normal_quantile(p),
            Kind::RatioExp => {
                let u = -(-p).ln_1p();
                u / (1.0 + u)
            }
            Kind::Exponential => -(-p).ln_1p(),
            Kind::Cauchy if p < 0.5 => -1.0 / (PI * p).tan(),
            Kind::Gamma { alpha } if p < 0.5 => gamma_quantile(alpha + 1.0, p),
            Kind::LogGamma { alpha, beta } if p < 0.5 => (gamma_quantile(beta, p) / alpha).exp(),
            Kind::Beta { alpha, beta } if p < 0.5 => {
                bisect(|x| beta_reg(alpha, beta, x) - p, 0.0, 1.0, 0.0)
            }
            _ => return self.quantile_upper(1.0 - p),
        })
    }

    /// `F^-(1 - s)` for `0 < s < 1`, accurate for tiny `s`.
    pub fn quantile_upper(&self, s: f64) -> Result<f64> {
        if !(s > 0.0 && s < 1.0) {
            return domain(format!("upper-tail mass {s} outside (0, 1)"));
        }
        Ok(match self.kind {
            Kind::Frechet { alpha } => (-(-s).ln_1p()).powf(-1.0 / alpha),
            Kind::Pareto { c, alpha } => (c / s).powf(1.0 / alpha),
            Kind::WeibullLaw { alpha } => -(-(-s).ln_1p()).powf(1.0 / alpha),
            Kind::Uniform => 1.0 - s,
            Kind::Normal => normal_quantile_upper(s),
            Kind::RatioExp => {
                let u = -s.ln();
                u / (1.0 + u)
            }
            Kind::Exponential => -s.ln(),
            Kind::Cauchy => 1.0 / (PI * s).tan(),
            Kind::Gamma { alpha } => gamma_quantile_upper(alpha + 1.0, s),
            Kind::LogGamma { alpha, beta } => (gamma_quantile_upper(beta, s) / alpha).exp(),
            Kind::Beta { alpha, beta } => 1.0 - bisect(|w| beta_reg(beta, alpha, w) - s, 0.0, 1.0, 0.0),
        })
    }

    /// `F''(x)` in closed form where one is registered.
    pub fn closed_form_second_derivative(&self, x: f64) -> Option<f64> {
        if !(x > self.left_extremity() && x < self.right_extremity()) {
            return None;
        }
        match self.kind {
            Kind::Exponential => Some(-(-x).exp()),
            Kind::Normal => Some(-x * normal_pdf(x)),
            Kind::Gamma { alpha } => Some(self.pdf(x) * (alpha / x - 1.0)),
            Kind::RatioExp => {
                let w = 1.0 - x;
                Some((-x / w).exp() * (1.0 - 2.0 * x) / w.powi(4))
            }
            _ => None,
        }
    }

    /// Central finite difference of the pdf with step `max(1e-6, 1e-6 |x|)`.
    pub fn finite_difference_second_derivative(&self, x: f64) -> f64 {
        let h = (1e-6 * x.abs()).max(1e-6);
        (self.pdf(x + h) - self.pdf(x - h)) / (2.0 * h)
    }

    /// Registered closed-form auxiliary function `v(t)`, Gumbel domain only.
    pub fn closed_form_auxiliary(&self, t: f64) -> Option<f64> {
        match self.kind {
            Kind::Exponential | Kind::Gamma { .. } => Some(1.0),
            Kind::RatioExp => Some((1.0 - t) * (1.0 - t)),
            Kind::Normal => Some(normal_mean_residual_life(t)),
            _ => None,
        }
    }

    /// `(1 - F(tx)) / (1 - F(t))`; tends to `x^-α` in the Fréchet domain.
    pub fn regular_variation_ratio(&self, x: f64, t: f64) -> Result<f64> {
        let den = self.ln_sf(t);
        if den == f64::NEG_INFINITY {
            return Err(Error::BeyondRightExtremity);
        }
        Ok((self.ln_sf(t * x) - den).exp())
    }

    /// `(1 - F(r - 1/(tx))) / (1 - F(r - 1/t))` for finite `r = r(F)`;
    /// tends to `x^-α` in the Weibull domain.
    pub fn weibull_tail_ratio(&self, x: f64, t: f64) -> Result<f64> {
        let r = self.right_extremity();
        if !r.is_finite() {
            return domain("right extremity is infinite");
        }
        let den = self.ln_sf(r - 1.0 / t);
        if den == f64::NEG_INFINITY {
            return Err(Error::BeyondRightExtremity);
        }
        Ok((self.ln_sf(r - 1.0 / (t * x)) - den).exp())
    }

    /// `(1 - F(x)) F''(x) / F'(x)^2`; tends to `-1` for von Mises functions.
    pub fn von_mises_ratio(&self, x: f64) -> Result<f64> {
        let f = self.pdf(x);
        if f <= 0.0 || !f.is_finite() {
            return Err(Error::RatioUndefined(x));
        }
        let second = self
            .closed_form_second_derivative(x)
            .unwrap_or_else(|| self.finite_difference_second_derivative(x));
        Ok(self.sf(x) * second / (f * f))
    }

    /// Mean residual life `∫_t^r (1 - F(s)) ds / (1 - F(t))` by quadrature.
    pub fn mean_residual_life(&self, t: f64) -> Result<f64> {
        let r = self.right_extremity();
        if t >= r {
            return Err(Error::BeyondRightExtremity);
        }
        let t = t.max(self.left_extremity());
        let base = self.ln_sf(t);
        if base == f64::NEG_INFINITY {
            return Err(Error::TailTooDeep(t));
        }
        let tol = Tolerance { abs: 0.0, rel: 1e-9, max_intervals: 4000 };
        match integrate(|s| (self.ln_sf(s) - base).exp(), t, r, tol) {
            Ok(q) => Ok(q.value),
            Err(Error::QuadratureNotConverged { estimate, .. }) => Err(Error::NotGumbelDomain(format!(
                "mean residual life integral of {} does not converge at t = {t} (estimate {estimate})",
                self.label()
            ))),
            Err(e) => Err(e),
        }
    }

    /// The auxiliary function `v(t)` of a Gumbel-domain df: the registered
    /// closed form when present, the mean residual life otherwise.
    pub fn auxiliary_function(&self, t: f64) -> Result<f64> {
        if self.mda() != Mda::Gumbel {
            return domain(format!("{} is not in the Gumbel domain", self.label()));
        }
        if t >= self.right_extremity() {
            return Err(Error::BeyondRightExtremity);
        }
        match self.closed_form_auxiliary(t) {
            Some(v) => Ok(v),
            None => self.mean_residual_life(t),
        }
    }
}

impl LevelDf for BaseDistribution {
    fn level(&self, x: f64) -> Level {
        BaseDistribution::level(self, x)
    }

    fn pdf(&self, x: f64) -> f64 {
        BaseDistribution::pdf(self, x)
    }

    fn point_at_xi(&self, xi: f64) -> Result<f64> {
        if xi < std::f64::consts::LN_2 {
            self.quantile_upper(-(-xi).exp_m1())
        } else {
            self.quantile((-xi).exp())
        }
    }

    fn left_extremity(&self) -> f64 {
        BaseDistribution::left_extremity(self)
    }

    fn right_extremity(&self) -> f64 {
        BaseDistribution::right_extremity(self)
    }
}

/// Every catalog entry at its default parameters.
pub fn catalog() -> Vec<CatalogEntry> {
    BASE_NAMES
        .iter()
        .map(|&name| {
            let distribution = BaseDistribution::from_name(name, &BaseParams::default()).expect("catalog defaults are valid");
            CatalogEntry { name, distribution, parameters: distribution.parameters() }
        })
        .collect()
}

/// Mean residual life of the standard normal, `φ(t)/(1 - Φ(t)) - t`.
/// Past `t = 5` the difference is evaluated through the continued fraction
/// of the Mills ratio, which avoids the cancellation.
fn normal_mean_residual_life(t: f64) -> f64 {
    if t <= 5.0 {
        return normal_pdf(t) / normal_sf(t) - t;
    }
    let mut tail = 0.0;
    for j in (2..=200).rev() {
        tail = f64::from(j) / (t + tail);
    }
    1.0 / (t + tail)
}

fn gamma_quantile(shape: f64, p: f64) -> f64 {
    let mut hi = shape.max(1.0);
    while gamma_lr(shape, hi) < p {
        hi *= 2.0;
    }
    bisect(|x| if x <= 0.0 { -p } else { gamma_lr(shape, x) - p }, 0.0, hi, 0.0)
}

fn gamma_quantile_upper(shape: f64, s: f64) -> f64 {
    let mut hi = shape.max(1.0);
    while gamma_ur(shape, hi) > s {
        hi *= 2.0;
    }
    bisect(|x| if x <= 0.0 { s - 1.0 } else { s - gamma_ur(shape, x) }, 0.0, hi, 0.0)
}
