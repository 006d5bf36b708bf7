//! The derived df families `H_k, F_k, U_k, R_k, T_k(r), B_k(τ)` and their
//! limit-law counterparts `G_k, J_k, L_k, S_k` and Barakat-Nigm.
//!
//! Each family is a function of the base level only. With `F = F(x)`,
//! `s = 1 - F` and `ξ = -ln F`:
//!
//! | family | df |
//! |---|---|
//! | `H_k` | `1 - s^k` |
//! | `F_k` | `F Σ_{i<k} ξ^i / i!` |
//! | `U_k` | `k s / ξ - F Σ_{l=1}^{k-1} (k-l) ξ^(l-1) / l!` |
//! | `R_k` | `1 - (ξ / (1 + ξ))^k` |
//! | `T_k` | `Σ_{l<k} C(l+r-1, l) ξ^l / (1 + ξ)^(l+r)` |
//! | `B_k` | `E_τ[F^τ Σ_{i<k} (τξ)^i / i!]` |
//!
//! Every pdf factors as `(f / F) g(ξ)`, where `f / F` is the reverse hazard
//! of the base; [`TailTransform::reverse_hazard_factor`] returns `g`.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, invalid, Error, Result};
use crate::laws::MaxStableLaw;
use crate::level::{Level, LevelDf};
use crate::special::{beta_int, binomial, bisect, factorial, ln_gamma, poisson_lower, poisson_pmf, poisson_upper};

/// Largest `k` and `r` accepted by the public constructors.
pub const MAX_ORDER: u32 = 20;

/// A finitely supported distribution of the limit `τ` of `N_n / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauSpec {
    support: Vec<(f64, f64)>,
}

impl TauSpec {
    /// From `(value, probability)` pairs.
    pub fn new(support: Vec<(f64, f64)>) -> Result<Self> {
        if support.is_empty() {
            return invalid("tau support is empty");
        }
        let mut total = 0.0;
        for &(v, p) in &support {
            if !(v > 0.0 && v.is_finite()) {
                return invalid(format!("tau value {v} is not finite and positive"));
            }
            if !(p > 0.0 && p <= 1.0) {
                return invalid(format!("tau probability {p} outside (0, 1]"));
            }
            total += p;
        }
        if (total - 1.0).abs() > 1e-12 {
            return invalid(format!("tau probabilities sum to {total}, not 1"));
        }
        Ok(TauSpec { support })
    }

    /// Point mass at `value`.
    pub fn degenerate(value: f64) -> Result<Self> {
        Self::new(vec![(value, 1.0)])
    }

    /// Equal weights on `values`.
    pub fn uniform(values: &[f64]) -> Result<Self> {
        let p = 1.0 / values.len().max(1) as f64;
        let mut support: Vec<(f64, f64)> = values.iter().map(|&v| (v, p)).collect();
        // absorb the rounding of 1/len into the last weight
        if let Some(last) = support.last_mut() {
            last.1 = 1.0 - p * (values.len() - 1) as f64;
        }
        Self::new(support)
    }

    pub fn support(&self) -> &[(f64, f64)] {
        &self.support
    }

    /// `E[τ^k]`.
    pub fn moment(&self, k: u32) -> f64 {
        self.support.iter().map(|&(v, p)| p * v.powi(k as i32)).sum()
    }

    /// `E[φ(τ)]`.
    pub fn expect<F: Fn(f64) -> f64>(&self, phi: F) -> f64 {
        self.support.iter().map(|&(v, p)| p * phi(v)).sum()
    }
}

impl fmt::Display for TauSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support.iter().map(|(v, p)| format!("{v}:{p}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses `value:prob,value:prob,...`; a bare `value,value,...` list gets
/// equal weights.
impl FromStr for TauSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let items: Vec<&str> = s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
        let num = |t: &str| t.parse::<f64>().map_err(|_| Error::InvalidParameter(format!("cannot parse '{t}' in tau spec")));
        if items.iter().all(|t| !t.contains(':')) {
            let values = items.iter().map(|t| num(t)).collect::<Result<Vec<_>>>()?;
            return Self::uniform(&values);
        }
        let mut support = Vec::with_capacity(items.len());
        for item in items {
            let (v, p) = item
                .split_once(':')
                .ok_or_else(|| Error::InvalidParameter(format!("tau item '{item}' is not value:prob")))?;
            support.push((num(v)?, num(p)?));
        }
        Self::new(support)
    }
}

/// Transform family tag.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Hk,
    Fk,
    Uk,
    Rk,
    Tk { r: u32 },
    Bk { tau: TauSpec },
}

impl Family {
    /// `hk, fk, uk, rk, tk, bk`; `r` and `tau` are consumed by `tk` and `bk`.
    pub fn from_name(name: &str, r: Option<u32>, tau: Option<TauSpec>) -> Result<Self> {
        Ok(match name {
            "hk" => Family::Hk,
            "fk" => Family::Fk,
            "uk" => Family::Uk,
            "rk" => Family::Rk,
            "tk" => Family::Tk { r: r.unwrap_or(1) },
            "bk" => Family::Bk { tau: tau.ok_or_else(|| Error::InvalidParameter("family bk needs a tau spec".into()))? },
            _ => return Err(Error::UnknownName(format!("transform family '{name}'"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Hk => "hk",
            Family::Fk => "fk",
            Family::Uk => "uk",
            Family::Rk => "rk",
            Family::Tk { .. } => "tk",
            Family::Bk { .. } => "bk",
        }
    }
}

/// A family member `V_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailTransform {
    family: Family,
    k: u32,
}

impl TailTransform {
    pub fn new(family: Family, k: u32) -> Result<Self> {
        if !(1..=MAX_ORDER).contains(&k) {
            return invalid(format!("k = {k} outside 1..={MAX_ORDER}"));
        }
        if let Family::Tk { r } = family {
            if !(1..=MAX_ORDER).contains(&r) {
                return invalid(format!("r = {r} outside 1..={MAX_ORDER}"));
            }
        }
        Ok(TailTransform { family, k })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The same family at order `k`, bypassing the public cap.
    pub(crate) fn at_order(&self, k: u32) -> TailTransform {
        TailTransform { family: self.family.clone(), k }
    }

    pub fn label(&self) -> String {
        match &self.family {
            Family::Tk { r } => format!("tk(k={},r={r})", self.k),
            Family::Bk { tau } => format!("bk(k={},tau={tau})", self.k),
            f => format!("{}(k={})", f.name(), self.k),
        }
    }

    /// `V_k` as a function of the base level.
    pub fn cdf_at(&self, lv: &Level) -> f64 {
        if lv.is_bottom() {
            return 0.0;
        }
        if lv.is_top() {
            return 1.0;
        }
        let k = self.k;
        let xi = lv.xi();
        match &self.family {
            Family::Hk => -(f64::from(k) * ln_sf(lv)).exp_m1(),
            Family::Fk => poisson_lower(k, xi),
            Family::Uk => {
                let mut tail = 0.0;
                let mut power = 1.0;
                for l in 1..k {
                    tail += f64::from(k - l) * power / factorial(l);
                    power *= xi;
                }
                (f64::from(k) * lv.sf() / xi - lv.cdf() * tail).clamp(0.0, 1.0)
            }
            Family::Rk => -(f64::from(k) * ln_geometric_q(xi)).exp_m1(),
            Family::Tk { r } => negbin_lower(k, *r, xi),
            Family::Bk { tau } => tau.expect(|t| poisson_lower(k, t * xi)),
        }
    }

    /// `1 - V_k`, computed without cancellation in the upper tail.
    pub fn sf_at(&self, lv: &Level) -> f64 {
        if lv.is_bottom() {
            return 1.0;
        }
        if lv.is_top() {
            return 0.0;
        }
        let k = self.k;
        let xi = lv.xi();
        match &self.family {
            Family::Hk => (f64::from(k) * ln_sf(lv)).exp(),
            Family::Fk => poisson_upper(k, xi),
            Family::Uk => {
                if xi > 1.0 {
                    return 1.0 - self.cdf_at(lv);
                }
                // e^-ξ Σ_{j>k} (j-k) ξ^(j-1) / j!
                let mut j = k + 1;
                let mut term = (-xi + f64::from(k) * xi.ln() - ln_gamma(f64::from(j) + 1.0)).exp();
                let mut sum = 0.0;
                while term > sum * 1e-17 {
                    sum += term;
                    term *= f64::from(j + 1 - k) / f64::from(j - k) * xi / f64::from(j + 1);
                    j += 1;
                }
                sum
            }
            Family::Rk => (f64::from(k) * ln_geometric_q(xi)).exp(),
            Family::Tk { r } => negbin_upper(k, *r, xi),
            Family::Bk { tau } => tau.expect(|t| poisson_upper(k, t * xi)),
        }
    }

    /// `V_k` at the level together with its complement.
    pub fn level_at(&self, lv: &Level) -> Level {
        Level::from_parts(self.cdf_at(lv), self.sf_at(lv))
    }

    /// `g(ξ)` with `v_k(x) = f(x) / F(x) · g(ξ(x))`.
    pub fn reverse_hazard_factor(&self, lv: &Level) -> f64 {
        if lv.xi().is_infinite() {
            return 0.0;
        }
        let k = self.k;
        let kf = f64::from(k);
        let xi = lv.xi();
        match &self.family {
            Family::Hk => kf * lv.sf().powi(k as i32 - 1) * lv.cdf(),
            Family::Fk => poisson_pmf(k - 1, xi),
            Family::Uk => {
                if xi >= 1.0 {
                    return kf * poisson_upper(k + 1, xi) / (xi * xi);
                }
                // k e^{-ξ} Σ_{j>k} ξ^{j-2} / j!
                let mut term = (-xi).exp() * xi.powi(k as i32 - 1) / factorial(k + 1);
                let mut sum = 0.0;
                let mut j = k + 1;
                while term > sum * 1e-17 {
                    sum += term;
                    j += 1;
                    term *= xi / f64::from(j);
                }
                kf * sum
            }
            Family::Rk => {
                if xi.is_infinite() {
                    return 0.0;
                }
                let lead = if k == 1 { 0.0 } else { (kf - 1.0) * xi.ln() };
                kf * (lead - (kf + 1.0) * xi.ln_1p()).exp()
            }
            Family::Tk { r } => {
                if xi.is_infinite() {
                    return 0.0;
                }
                let lead = if k == 1 { 0.0 } else { (kf - 1.0) * xi.ln() };
                (lead - f64::from(r + k) * xi.ln_1p()).exp() / beta_int(*r, k)
            }
            Family::Bk { tau } => tau.expect(|t| t * poisson_pmf(k - 1, t * xi)),
        }
    }

    pub fn cdf<D: LevelDf + ?Sized>(&self, base: &D, x: f64) -> f64 {
        self.cdf_at(&base.level(x))
    }

    pub fn sf<D: LevelDf + ?Sized>(&self, base: &D, x: f64) -> f64 {
        self.sf_at(&base.level(x))
    }

    pub fn pdf<D: LevelDf + ?Sized>(&self, base: &D, x: f64) -> f64 {
        let lv = base.level(x);
        if lv.is_bottom() {
            return 0.0;
        }
        let f = base.pdf(x);
        if f == 0.0 {
            return 0.0;
        }
        f / lv.cdf() * self.reverse_hazard_factor(&lv)
    }

    /// `lim (1 - V_k(x)) / (1 - F(x))^k` as `x → r(F)`.
    pub fn tail_constant(&self) -> f64 {
        let k = self.k;
        match &self.family {
            Family::Hk | Family::Rk => 1.0,
            Family::Fk => 1.0 / factorial(k),
            Family::Uk => 1.0 / factorial(k + 1),
            Family::Tk { r } => 1.0 / (f64::from(k) * beta_int(*r, k)),
            Family::Bk { tau } => tau.moment(k) / factorial(k),
        }
    }

    /// `(1 - V_k(x)) / (1 - F(x))^k` at the base point with upper-tail mass
    /// `s`, evaluated in log space.
    pub fn empirical_tail_ratio_upper<D: LevelDf + ?Sized>(&self, base: &D, s: f64) -> Result<f64> {
        if !(s > 0.0 && s < 1.0) {
            return domain(format!("upper-tail mass {s} outside (0, 1)"));
        }
        let x = base.point_at_xi(-(-s).ln_1p())?;
        let lv = base.level(x);
        let num = self.sf_at(&lv);
        if num <= 0.0 || lv.sf() <= 0.0 || !num.is_normal() {
            return Err(Error::TailTooDeep(1.0 - s));
        }
        Ok((num.ln() - f64::from(self.k) * lv.sf().ln()).exp())
    }

    /// [`Self::empirical_tail_ratio_upper`] at `s = 1 - p`.
    pub fn empirical_tail_ratio<D: LevelDf + ?Sized>(&self, base: &D, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return domain(format!("probability {p} outside (0, 1)"));
        }
        self.empirical_tail_ratio_upper(base, 1.0 - p)
    }

    /// `V_{k+1}(x)` minus the right-hand side of the family's recurrence.
    pub fn recurrence_residual<D: LevelDf + ?Sized>(&self, base: &D, x: f64) -> Result<f64> {
        let lv = base.level(x);
        let k = self.k;
        let xi = lv.xi();
        let next = self.at_order(k + 1).cdf_at(&lv);
        let current = self.cdf_at(&lv);
        if lv.is_bottom() || lv.is_top() {
            return match self.family {
                Family::Hk | Family::Rk => self.no_recurrence(),
                _ => Ok(next - current),
            };
        }
        let increment = match &self.family {
            Family::Fk => lv.cdf() * xi.powi(k as i32) / factorial(k),
            Family::Uk => {
                let u1 = self.at_order(1).cdf_at(&lv);
                let mut sum = 0.0;
                for l in 1..=k {
                    sum += xi.powi(l as i32 - 1) / factorial(l);
                }
                u1 - lv.cdf() * sum
            }
            Family::Tk { r } => {
                binomial(u64::from(k + r - 1), u64::from(k)) * xi.powi(k as i32) / (1.0 + xi).powi((k + r) as i32)
            }
            Family::Bk { tau } => {
                xi.powi(k as i32) / factorial(k) * tau.expect(|t| t.powi(k as i32) * lv.cdf().powf(t))
            }
            Family::Hk | Family::Rk => return self.no_recurrence(),
        };
        Ok(next - (current + increment))
    }

    fn no_recurrence(&self) -> Result<f64> {
        domain(format!("family {} has no recurrence", self.family.name()))
    }
}

/// `r_k(x) - (1 - R_k(x)) h_1(x)` with `h_1 = k f / (F (1 + ξ) ξ)`, the
/// Burr differential equation satisfied by `R_k`.
pub fn burr_ode_residual<D: LevelDf + ?Sized>(base: &D, k: u32, x: f64) -> Result<f64> {
    let rk = TailTransform::new(Family::Rk, k)?;
    let lv = base.level(x);
    if lv.is_bottom() || lv.is_top() {
        return Ok(0.0);
    }
    let xi = lv.xi();
    let f = base.pdf(x);
    let h1 = f64::from(k) * f / (lv.cdf() * (1.0 + xi) * xi);
    Ok(rk.pdf(base, x) - rk.sf_at(&lv) * h1)
}

fn ln_sf(lv: &Level) -> f64 {
    if lv.cdf() < 0.5 {
        (-lv.cdf()).ln_1p()
    } else {
        lv.sf().ln()
    }
}

/// `ln(ξ / (1 + ξ))`.
fn ln_geometric_q(xi: f64) -> f64 {
    if xi < 1.0 {
        xi.ln() - xi.ln_1p()
    } else {
        (-1.0 / (1.0 + xi)).ln_1p()
    }
}

/// `P(NB ≤ k - 1)` for the failure count of a negative binomial with `r`
/// successes and success probability `1 / (1 + ξ)`.
fn negbin_lower(k: u32, r: u32, xi: f64) -> f64 {
    let ln_q = ln_geometric_q(xi);
    let q = ln_q.exp();
    let mut term = (-f64::from(r) * xi.ln_1p()).exp();
    let mut sum = 0.0;
    for l in 0..k {
        sum += term;
        term *= q * f64::from(l + r) / f64::from(l + 1);
    }
    sum.min(1.0)
}

fn negbin_upper(k: u32, r: u32, xi: f64) -> f64 {
    let ln_q = ln_geometric_q(xi);
    let q = ln_q.exp();
    if q > 0.5 {
        return 1.0 - negbin_lower(k, r, xi);
    }
    let ln_c = ln_gamma(f64::from(k + r)) - ln_gamma(f64::from(k) + 1.0) - ln_gamma(f64::from(r));
    let mut term = (ln_c - f64::from(r) * xi.ln_1p() + f64::from(k) * ln_q).exp();
    let mut sum = 0.0;
    let mut l = k;
    while term > sum * 1e-17 || l < k + r {
        sum += term;
        term *= q * f64::from(l + r) / f64::from(l + 1);
        l += 1;
        if term == 0.0 {
            break;
        }
    }
    sum
}

/// A derived df `V_k` of some underlying df.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedDistribution<D> {
    transform: TailTransform,
    base: D,
}

impl<D: LevelDf> DerivedDistribution<D> {
    pub fn new(transform: TailTransform, base: D) -> Self {
        DerivedDistribution { transform, base }
    }

    pub fn transform(&self) -> &TailTransform {
        &self.transform
    }

    pub fn base(&self) -> &D {
        &self.base
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.transform.cdf(&self.base, x)
    }

    pub fn sf(&self, x: f64) -> f64 {
        self.transform.sf(&self.base, x)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.transform.pdf(&self.base, x)
    }

    pub fn tail_constant(&self) -> f64 {
        self.transform.tail_constant()
    }

    /// The underlying `-ln F` at which `V_k` reaches the requested level.
    /// Bisection runs on `ln ξ`, where every family is monotone.
    fn solve_xi(&self, target: f64, upper: bool) -> Result<f64> {
        let h = |u: f64| {
            let lv = Level::from_xi(u.exp());
            if upper {
                self.transform.sf_at(&lv) - target
            } else {
                target - self.transform.cdf_at(&lv)
            }
        };
        let (lo, hi) = (-700.0, 700.0);
        if h(lo) > 0.0 || h(hi) < 0.0 {
            return Err(Error::TailTooDeep(if upper { 1.0 - target } else { target }));
        }
        Ok(bisect(h, lo, hi, 0.0).exp())
    }

    /// `V_k^-(p)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return domain(format!("quantile level {p} outside (0, 1)"));
        }
        if p > 0.5 {
            return self.quantile_upper(1.0 - p);
        }
        self.base.point_at_xi(self.solve_xi(p, false)?)
    }

    /// `V_k^-(1 - q)`, accurate for tiny `q`.
    pub fn quantile_upper(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return domain(format!("upper-tail mass {q} outside (0, 1)"));
        }
        self.base.point_at_xi(self.solve_xi(q, true)?)
    }
}

impl<D: LevelDf> LevelDf for DerivedDistribution<D> {
    fn level(&self, x: f64) -> Level {
        self.transform.level_at(&self.base.level(x))
    }

    fn pdf(&self, x: f64) -> f64 {
        DerivedDistribution::pdf(self, x)
    }

    fn point_at_xi(&self, xi: f64) -> Result<f64> {
        if xi < std::f64::consts::LN_2 {
            self.quantile_upper(-(-xi).exp_m1())
        } else {
            self.quantile((-xi).exp())
        }
    }

    fn left_extremity(&self) -> f64 {
        self.base.left_extremity()
    }

    fn right_extremity(&self) -> f64 {
        self.base.right_extremity()
    }
}

/// Limit laws of the normalized k-th random upper order statistic.
#[derive(Debug, Clone, PartialEq)]
pub enum LimitFamily {
    /// Fixed sample size, `G_k`.
    Gk,
    /// Discrete uniform sample size, `J_k = U_k ∘ G`.
    Jk,
    /// Geometric sample size, `L_k = R_k ∘ G`.
    Lk,
    /// Negative binomial sample size, `S_k = T_k ∘ G`.
    Sk { r: u32 },
    /// `N_n / n → τ` in probability, `B_k ∘ G`.
    BarakatNigm { tau: TauSpec },
}

impl LimitFamily {
    /// `gk, jk, lk, sk, bn`.
    pub fn from_name(name: &str, r: Option<u32>, tau: Option<TauSpec>) -> Result<Self> {
        Ok(match name {
            "gk" => LimitFamily::Gk,
            "jk" => LimitFamily::Jk,
            "lk" => LimitFamily::Lk,
            "sk" => LimitFamily::Sk { r: r.unwrap_or(1) },
            "bn" => LimitFamily::BarakatNigm {
                tau: tau.ok_or_else(|| Error::InvalidParameter("limit family bn needs a tau spec".into()))?,
            },
            _ => return Err(Error::UnknownName(format!("limit family '{name}'"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            LimitFamily::Gk => "gk",
            LimitFamily::Jk => "jk",
            LimitFamily::Lk => "lk",
            LimitFamily::Sk { .. } => "sk",
            LimitFamily::BarakatNigm { .. } => "bn",
        }
    }

    /// The transform whose composition with `G` gives this limit.
    pub fn transform(&self, k: u32) -> Result<TailTransform> {
        let family = match self {
            LimitFamily::Gk => Family::Fk,
            LimitFamily::Jk => Family::Uk,
            LimitFamily::Lk => Family::Rk,
            LimitFamily::Sk { r } => Family::Tk { r: *r },
            LimitFamily::BarakatNigm { tau } => Family::Bk { tau: tau.clone() },
        };
        TailTransform::new(family, k)
    }
}

/// A limit law `V_k ∘ G`.
pub type LimitLaw = DerivedDistribution<MaxStableLaw>;

pub fn limit_law(family: &LimitFamily, law: MaxStableLaw, k: u32) -> Result<LimitLaw> {
    Ok(DerivedDistribution::new(family.transform(k)?, law))
}

/// The limit df of `family` at `x`.
pub fn limit_law_cdf(family: &LimitFamily, law: MaxStableLaw, k: u32, x: f64) -> Result<f64> {
    Ok(limit_law(family, law, k)?.cdf(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseDistribution;
    use approx::assert_relative_eq;

    const LN2: f64 = std::f64::consts::LN_2;

    fn half() -> Level {
        Level::from_cdf(0.5)
    }

    fn t(family: Family, k: u32) -> TailTransform {
        TailTransform::new(family, k).unwrap()
    }

    #[test]
    fn cdf_examples_at_half() {
        let lv = half();
        assert_relative_eq!(t(Family::Hk, 2).cdf_at(&lv), 0.75, max_relative = 1e-15);
        assert_relative_eq!(t(Family::Fk, 2).cdf_at(&lv), 0.5 * (1.0 + LN2), max_relative = 1e-15);
        assert_relative_eq!(t(Family::Uk, 1).cdf_at(&lv), 0.5 / LN2, max_relative = 1e-15);
        assert_relative_eq!(t(Family::Rk, 1).cdf_at(&lv), 1.0 - LN2 / (1.0 + LN2), max_relative = 1e-15);
        let two_terms = 1.0 / (1.0 + LN2).powi(2) + 2.0 * LN2 / (1.0 + LN2).powi(3);
        assert_relative_eq!(t(Family::Tk { r: 2 }, 2).cdf_at(&lv), two_terms, max_relative = 1e-14);
        // 50-digit evaluation of the same two terms
        assert_relative_eq!(two_terms, 0.634_436_015_373_189_5, max_relative = 1e-15);
    }

    #[test]
    fn cdf_and_sf_are_complements() {
        let tau = TauSpec::uniform(&[1.0, 2.0]).unwrap();
        let fams = [Family::Hk, Family::Fk, Family::Uk, Family::Rk, Family::Tk { r: 3 }, Family::Bk { tau }];
        for fam in fams {
            for k in 1..=5 {
                let tr = t(fam.clone(), k);
                for &p in &[1e-6, 0.01, 0.3, 0.5, 0.9, 0.999] {
                    let lv = Level::from_cdf(p);
                    let sum = tr.cdf_at(&lv) + tr.sf_at(&lv);
                    assert!((sum - 1.0).abs() < 1e-14, "{} p={p}: {sum}", tr.label());
                }
            }
        }
    }

    #[test]
    fn boundary_values() {
        for fam in [Family::Hk, Family::Fk, Family::Uk, Family::Rk, Family::Tk { r: 2 }] {
            let tr = t(fam, 1);
            assert_eq!(tr.cdf_at(&Level::TOP), 1.0);
            assert_eq!(tr.cdf_at(&Level::BOTTOM), 0.0);
        }
    }

    #[test]
    fn pdf_examples() {
        let u = BaseDistribution::uniform();
        assert_relative_eq!(t(Family::Rk, 1).pdf(&u, 0.5), 1.0 / (0.5 * (1.0 + LN2).powi(2)), max_relative = 1e-14);
        assert_relative_eq!(t(Family::Hk, 3).pdf(&u, 0.5), 0.75, max_relative = 1e-14);
        let e = BaseDistribution::exponential();
        assert_relative_eq!(t(Family::Fk, 1).pdf(&e, 0.7), e.pdf(0.7), max_relative = 1e-14);
    }

    #[test]
    fn tail_constant_examples() {
        assert_relative_eq!(t(Family::Fk, 3).tail_constant(), 1.0 / 6.0, max_relative = 1e-15);
        assert_eq!(t(Family::Rk, 7).tail_constant(), 1.0);
        assert_relative_eq!(t(Family::Tk { r: 1 }, 2).tail_constant(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(t(Family::Tk { r: 2 }, 2).tail_constant(), 3.0, max_relative = 1e-15);
    }

    #[test]
    fn tail_ratio_examples() {
        let e = BaseDistribution::exponential();
        let h = t(Family::Hk, 3).empirical_tail_ratio(&e, 0.9).unwrap();
        assert_relative_eq!(h, 1.0, max_relative = 1e-12);
        let f2 = t(Family::Fk, 2).empirical_tail_ratio(&e, 1.0 - 1e-6).unwrap();
        assert!((f2 / 0.5 - 1.0).abs() < 0.01);
        let u1 = t(Family::Uk, 1).empirical_tail_ratio(&e, 1.0 - 1e-6).unwrap();
        assert!((u1 / 0.5 - 1.0).abs() < 0.01);
        let deep = t(Family::Fk, 20).empirical_tail_ratio_upper(&e, 1e-300);
        assert!(matches!(deep, Err(Error::TailTooDeep(_))));
    }

    #[test]
    fn recurrence_examples() {
        let u = BaseDistribution::uniform();
        assert!(t(Family::Fk, 1).recurrence_residual(&u, 0.5).unwrap().abs() < 1e-14);
        assert!(t(Family::Tk { r: 2 }, 1).recurrence_residual(&u, 0.5).unwrap().abs() < 1e-14);
        let one = TauSpec::degenerate(1.0).unwrap();
        assert!(t(Family::Bk { tau: one }, 2).recurrence_residual(&u, 0.5).unwrap().abs() < 1e-14);
        assert!(t(Family::Uk, 3).recurrence_residual(&u, 0.3).unwrap().abs() < 1e-14);
        assert!(t(Family::Hk, 1).recurrence_residual(&u, 0.5).is_err());
        assert!(t(Family::Rk, 1).recurrence_residual(&u, 0.5).is_err());
    }

    #[test]
    fn burr_examples() {
        let e = BaseDistribution::exponential();
        assert!(burr_ode_residual(&e, 1, 1.0).unwrap().abs() < 1e-12);
        let u = BaseDistribution::uniform();
        assert!(burr_ode_residual(&u, 2, 0.5).unwrap().abs() < 1e-12);
        assert!(burr_ode_residual(&e, 2, 60.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn limit_law_examples() {
        let g = MaxStableLaw::gumbel();
        assert_relative_eq!(limit_law_cdf(&LimitFamily::Lk, g, 1, 0.0).unwrap(), 0.5, max_relative = 1e-15);
        let phi = MaxStableLaw::frechet(1.0).unwrap();
        assert_relative_eq!(limit_law_cdf(&LimitFamily::Lk, phi, 2, 1.0).unwrap(), 0.75, max_relative = 1e-15);
        for &x in &[0.3, 1.0, 4.0] {
            let s = limit_law_cdf(&LimitFamily::Sk { r: 1 }, phi, 3, x).unwrap();
            let l = limit_law_cdf(&LimitFamily::Lk, phi, 3, x).unwrap();
            assert!((s - l).abs() < 1e-15);
            let gk = limit_law_cdf(&LimitFamily::Gk, phi, 3, x).unwrap();
            assert!((gk - phi.limit_kth_cdf(3, x)).abs() < 1e-15);
        }
    }

    #[test]
    fn derived_quantiles_invert() {
        let p1 = BaseDistribution::pareto(1.0, 1.0).unwrap();
        let tau = TauSpec::uniform(&[1.0, 2.0]).unwrap();
        for fam in [Family::Hk, Family::Fk, Family::Uk, Family::Rk, Family::Tk { r: 2 }, Family::Bk { tau }] {
            let d = DerivedDistribution::new(t(fam, 2), p1);
            for &p in &[0.01, 0.2, 0.5, 0.8, 0.999] {
                // correct to one ulp in x: the df may jump across p between
                // neighbouring floats near the left extremity
                let x = d.quantile(p).unwrap();
                let (below, above) = (d.cdf(x.next_down()), d.cdf(x.next_up()));
                assert!(below - 1e-12 <= p && p <= above + 1e-12, "{} p={p}: {below} {above}", d.transform().label());
                if above - below < 1e-9 {
                    assert!((d.cdf(x) - p).abs() < 1e-12, "{} p={p}", d.transform().label());
                }
            }
            let x = d.quantile_upper(1e-9).unwrap();
            assert_relative_eq!(d.sf(x), 1e-9, max_relative = 1e-9);
        }
    }

    #[test]
    fn tau_parsing() {
        let a: TauSpec = "1,2".parse().unwrap();
        assert_eq!(a.support(), &[(1.0, 0.5), (2.0, 0.5)]);
        let b: TauSpec = "0.5:0.25, 3:0.75".parse().unwrap();
        assert_relative_eq!(b.moment(1), 0.125 + 2.25, max_relative = 1e-15);
        assert!("1:0.5,2:0.6".parse::<TauSpec>().is_err());
        assert!("x".parse::<TauSpec>().is_err());
        assert!("-1".parse::<TauSpec>().is_err());
    }

    #[test]
    fn order_caps() {
        assert!(TailTransform::new(Family::Fk, 0).is_err());
        assert!(TailTransform::new(Family::Fk, 21).is_err());
        assert!(TailTransform::new(Family::Tk { r: 0 }, 2).is_err());
        assert!(TailTransform::new(Family::Tk { r: 20 }, 20).is_ok());
    }
}
