//! A df value carried with its complements, so that tail quantities stay
//! accurate when `F(x)` is within rounding of 0 or 1.

/// The value `F(x)` of some df at a point, stored as the triple
/// `(F, 1 - F, -ln F)` with every component computed on its accurate side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    cdf: f64,
    sf: f64,
    xi: f64,
}

impl Level {
    /// `F = 0`, i.e. at or left of the left extremity.
    pub const BOTTOM: Level = Level { cdf: 0.0, sf: 1.0, xi: f64::INFINITY };
    /// `F = 1`, i.e. at or right of the right extremity.
    pub const TOP: Level = Level { cdf: 1.0, sf: 0.0, xi: 0.0 };

    pub fn from_cdf(cdf: f64) -> Level {
        let cdf = cdf.clamp(0.0, 1.0);
        Level { cdf, sf: 1.0 - cdf, xi: -cdf.ln() }
    }

    pub fn from_sf(sf: f64) -> Level {
        let sf = sf.clamp(0.0, 1.0);
        Level { cdf: 1.0 - sf, sf, xi: -(-sf).ln_1p() }
    }

    /// From `xi = -ln F`, which is how the max-stable laws are naturally given.
    pub fn from_xi(xi: f64) -> Level {
        let xi = xi.max(0.0);
        Level { cdf: (-xi).exp(), sf: -(-xi).exp_m1(), xi }
    }

    /// Builds a level from independently computed `F` and `1 - F`, taking
    /// `-ln F` from whichever side is better conditioned.
    pub fn from_parts(cdf: f64, sf: f64) -> Level {
        let cdf = cdf.clamp(0.0, 1.0);
        let sf = sf.clamp(0.0, 1.0);
        let xi = if cdf < 0.5 { -cdf.ln() } else { -(-sf).ln_1p() };
        Level { cdf, sf, xi }
    }

    pub fn cdf(&self) -> f64 {
        self.cdf
    }

    pub fn sf(&self) -> f64 {
        self.sf
    }

    /// `-ln F`.
    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn is_bottom(&self) -> bool {
        self.cdf <= 0.0
    }

    pub fn is_top(&self) -> bool {
        self.sf <= 0.0
    }
}

/// A continuous df that can report its value at `x` as a [`Level`] and
/// invert `-ln F`. Implemented by base distributions and max-stable laws so
/// that the transform families apply to both.
pub trait LevelDf {
    fn level(&self, x: f64) -> Level;

    fn pdf(&self, x: f64) -> f64;

    /// The point `x` with `-ln F(x) = xi`.
    fn point_at_xi(&self, xi: f64) -> crate::Result<f64>;

    fn left_extremity(&self) -> f64;

    fn right_extremity(&self) -> f64;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_agree_in_the_bulk() {
        let a = Level::from_cdf(0.3);
        let b = Level::from_sf(0.7);
        let c = Level::from_xi(-(0.3f64).ln());
        for l in [b, c] {
            assert!((a.cdf() - l.cdf()).abs() < 1e-15);
            assert!((a.sf() - l.sf()).abs() < 1e-15);
            assert!((a.xi() - l.xi()).abs() < 1e-15);
        }
    }

    #[test]
    fn upper_tail_keeps_precision() {
        let l = Level::from_sf(1e-20);
        assert_eq!(l.sf(), 1e-20);
        assert!((l.xi() / 1e-20 - 1.0).abs() < 1e-15);
        assert!(Level::TOP.is_top() && Level::BOTTOM.is_bottom());
    }
}
