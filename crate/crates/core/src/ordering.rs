//! Pointwise cdf orderings between the derived families.
//!
//! Each claim is checked as `lhs(x) >= rhs(x)` for every inequality it
//! contains; the recorded violation is the largest `rhs - lhs` over a grid of
//! base quantiles, so a holding claim reports a value at or below zero up to
//! rounding.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::base::BaseDistribution;
use crate::error::{invalid, Error, Result};
use crate::level::Level;
use crate::transforms::{Family, TailTransform, MAX_ORDER};

/// A claim holds when its violation does not exceed this.
pub const ORDERING_TOLERANCE: f64 = 1e-12;

/// Probability range spanned by the quantile grid.
pub const GRID_RANGE: (f64, f64) = (1e-4, 1.0 - 1e-4);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    /// `U_1 >= F`.
    I,
    /// `F_{k+1} >= F_k`, `H_{k+1} >= H_k`, `R_{k+1} >= R_k`, `T_{k+1} >= T_k`.
    Ii,
    /// `U_{k+1} >= U_k >= F`.
    Iii,
    /// `R_k >= H_k >= F`.
    Iv,
    /// `F_k >= F` and `T_k >= F^r`.
    V,
    /// `R_k >= T_k`.
    Vi,
    /// `U_k >= F_k`.
    Vii,
}

impl ClaimId {
    pub const ALL: [ClaimId; 7] = [ClaimId::I, ClaimId::Ii, ClaimId::Iii, ClaimId::Iv, ClaimId::V, ClaimId::Vi, ClaimId::Vii];

    pub fn roman(&self) -> &'static str {
        match self {
            ClaimId::I => "i",
            ClaimId::Ii => "ii",
            ClaimId::Iii => "iii",
            ClaimId::Iv => "iv",
            ClaimId::V => "v",
            ClaimId::Vi => "vi",
            ClaimId::Vii => "vii",
        }
    }

    /// Human-readable form of the inequalities checked.
    pub fn statement(&self) -> &'static str {
        match self {
            ClaimId::I => "U_1 >= F",
            ClaimId::Ii => "F_{k+1} >= F_k, H_{k+1} >= H_k, R_{k+1} >= R_k, T_{k+1} >= T_k",
            ClaimId::Iii => "U_{k+1} >= U_k >= F",
            ClaimId::Iv => "R_k >= H_k >= F",
            ClaimId::V => "F_k >= F, T_k >= F^r",
            ClaimId::Vi => "R_k >= T_k",
            ClaimId::Vii => "U_k >= F_k",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.roman())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').to_ascii_lowercase();
        ClaimId::ALL
            .into_iter()
            .enumerate()
            .find(|(i, c)| c.roman() == t || (i + 1).to_string() == t)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::UnknownName(format!("ordering claim '{s}' (expected i..vii)")))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderingCheck {
    pub claim_id: ClaimId,
    pub base: String,
    pub k: u32,
    pub r: u32,
    #[serde(skip)]
    pub grid_size: usize,
    pub max_violation: f64,
    pub pass: bool,
}

/// `grid_size` base quantiles at equally spaced probabilities in [`GRID_RANGE`].
pub fn quantile_grid(base: &BaseDistribution, grid_size: usize) -> Result<Vec<f64>> {
    if grid_size < 2 {
        return invalid(format!("ordering grid needs at least 2 points, got {grid_size}"));
    }
    let (lo, hi) = GRID_RANGE;
    (0..grid_size)
        .map(|i| base.quantile(lo + (hi - lo) * i as f64 / (grid_size - 1) as f64))
        .collect()
}

fn cdf(family: Family, k: u32, lv: &Level) -> Result<f64> {
    Ok(TailTransform::new(family, k)?.cdf_at(lv))
}

/// Pairs `(lhs, rhs)` that must satisfy `lhs >= rhs` at level `lv`.
fn sides(claim: ClaimId, k: u32, r: u32, lv: &Level) -> Result<Vec<(f64, f64)>> {
    let f = lv.cdf();
    let t = Family::Tk { r };
    Ok(match claim {
        ClaimId::I => vec![(cdf(Family::Uk, 1, lv)?, f)],
        ClaimId::Ii => {
            let mut out = Vec::with_capacity(4);
            for fam in [Family::Fk, Family::Hk, Family::Rk, t] {
                out.push((cdf(fam.clone(), k + 1, lv)?, cdf(fam, k, lv)?));
            }
            out
        }
        ClaimId::Iii => {
            let uk = cdf(Family::Uk, k, lv)?;
            vec![(cdf(Family::Uk, k + 1, lv)?, uk), (uk, f)]
        }
        ClaimId::Iv => {
            let hk = cdf(Family::Hk, k, lv)?;
            vec![(cdf(Family::Rk, k, lv)?, hk), (hk, f)]
        }
        ClaimId::V => vec![(cdf(Family::Fk, k, lv)?, f), (cdf(t, k, lv)?, (-f64::from(r) * lv.xi()).exp())],
        ClaimId::Vi => vec![(cdf(Family::Rk, k, lv)?, cdf(t, k, lv)?)],
        ClaimId::Vii => vec![(cdf(Family::Uk, k, lv)?, cdf(Family::Fk, k, lv)?)],
    })
}

/// Largest `rhs - lhs` over the quantile grid.
pub fn check_ordering(claim: ClaimId, base: &BaseDistribution, k: u32, r: u32, grid_size: usize) -> Result<OrderingCheck> {
    if k == 0 || k >= MAX_ORDER || r == 0 {
        return invalid(format!("ordering needs 1 <= k < {MAX_ORDER} and r >= 1, got k = {k}, r = {r}"));
    }
    let mut worst = f64::NEG_INFINITY;
    for x in quantile_grid(base, grid_size)? {
        let lv = base.level(x);
        for (lhs, rhs) in sides(claim, k, r, &lv)? {
            worst = worst.max(rhs - lhs);
        }
    }
    Ok(OrderingCheck {
        claim_id: claim,
        base: base.label(),
        k,
        r,
        grid_size,
        max_violation: worst,
        pass: worst <= ORDERING_TOLERANCE,
    })
}

/// Every claim for `k = 1..=k_max`, `r = 1..=r_max`.
pub fn ordering_report(base: &BaseDistribution, k_max: u32, r_max: u32, grid_size: usize) -> Result<Vec<OrderingCheck>> {
    let mut rows = Vec::new();
    for claim in ClaimId::ALL {
        for k in 1..=k_max {
            for r in 1..=r_max {
                rows.push(check_ordering(claim, base, k, r, grid_size)?);
            }
        }
    }
    Ok(rows)
}

/// The row with the largest violation for each claim present in `rows`.
pub fn worst_per_claim(rows: &[OrderingCheck]) -> Vec<OrderingCheck> {
    let mut out: Vec<OrderingCheck> = Vec::new();
    for row in rows {
        match out.iter_mut().find(|w| w.claim_id == row.claim_id) {
            Some(w) if row.max_violation > w.max_violation => *w = row.clone(),
            Some(_) => {}
            None => out.push(row.clone()),
        }
    }
    out.sort_by_key(|w| w.claim_id);
    out
}
