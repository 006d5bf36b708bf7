use extremalk::{
    limit_law_cdf, BaseDistribution, DerivedDistribution, Family, Level, LimitFamily, MaxStableLaw, TailTransform, TauSpec,
};
use proptest::prelude::*;

fn families() -> Vec<Family> {
    vec![
        Family::Hk,
        Family::Fk,
        Family::Uk,
        Family::Rk,
        Family::Tk { r: 1 },
        Family::Tk { r: 3 },
        Family::Bk { tau: TauSpec::uniform(&[1.0, 2.0]).unwrap() },
    ]
}

fn bases() -> Vec<BaseDistribution> {
    vec![BaseDistribution::exponential(), BaseDistribution::uniform(), BaseDistribution::pareto(1.0, 1.0).unwrap()]
}

fn grid(base: &BaseDistribution, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| base.quantile(lo + (hi - lo) * i as f64 / (n - 1) as f64).unwrap()).collect()
}

#[test]
fn cdf_nondecreasing_on_quantile_grid() {
    for base in bases() {
        let xs = grid(&base, 1e-4, 1.0 - 1e-4, 1000);
        for family in families() {
            for k in 1..=4 {
                let t = TailTransform::new(family.clone(), k).unwrap();
                let mut last = 0.0;
                for &x in &xs {
                    let c = t.cdf(&base, x);
                    assert!(c >= last - 1e-14, "{} on {}: x={x} {c} < {last}", t.label(), base.label());
                    last = c;
                }
            }
        }
    }
}

#[test]
fn pdf_matches_difference_quotient() {
    for base in bases() {
        for x in grid(&base, 0.04, 0.96, 20) {
            let h = 1e-3 * x.abs().max(1.0);
            for family in families() {
                for k in 1..=4 {
                    let t = TailTransform::new(family.clone(), k).unwrap();
                    let upper = t.cdf(&base, x) > 0.5;
                    let d = |h: f64| {
                        if upper {
                            (t.sf(&base, x - h) - t.sf(&base, x + h)) / (2.0 * h)
                        } else {
                            (t.cdf(&base, x + h) - t.cdf(&base, x - h)) / (2.0 * h)
                        }
                    };
                    let dq = (4.0 * d(h / 2.0) - d(h)) / 3.0;
                    let pdf = t.pdf(&base, x);
                    assert!((dq / pdf - 1.0).abs() <= 1e-6, "{} on {} at {x}: {dq} vs {pdf}", t.label(), base.label());
                }
            }
        }
    }
}

#[test]
fn tail_ratios_approach_the_constant_monotonically() {
    for base in [BaseDistribution::exponential(), BaseDistribution::pareto(1.0, 1.0).unwrap()] {
        for family in families() {
            for k in 1..=3 {
                let t = TailTransform::new(family.clone(), k).unwrap();
                let c = t.tail_constant();
                let gaps: Vec<f64> = [1e-4, 1e-5, 1e-6]
                    .iter()
                    .map(|&s| (t.empirical_tail_ratio_upper(&base, s).unwrap() - c).abs())
                    .collect();
                assert!(gaps[1] <= gaps[0] + 1e-12 && gaps[2] <= gaps[1] + 1e-12, "{}: {gaps:?}", t.label());
                assert!(gaps[2] / c <= 0.01, "{}: {}", t.label(), gaps[2] / c);
            }
        }
    }
}

#[test]
fn identities_hold_on_the_grid() {
    let one = TauSpec::degenerate(1.0).unwrap();
    for base in bases() {
        for x in grid(&base, 1e-4, 1.0 - 1e-4, 1000) {
            for k in 1..=4 {
                let t1 = TailTransform::new(Family::Tk { r: 1 }, k).unwrap().cdf(&base, x);
                let rk = TailTransform::new(Family::Rk, k).unwrap().cdf(&base, x);
                assert!((t1 - rk).abs() <= 1e-12);
                let b1 = TailTransform::new(Family::Bk { tau: one.clone() }, k).unwrap().cdf(&base, x);
                let fk = TailTransform::new(Family::Fk, k).unwrap().cdf(&base, x);
                assert!((b1 - fk).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn limit_families_match_closed_forms() {
    let gumbel = MaxStableLaw::gumbel();
    let phi = MaxStableLaw::frechet(1.0).unwrap();
    for i in 0..200 {
        let x = -5.0 + 0.05 * f64::from(i);
        for k in 1..=4 {
            let lk = 1.0 - (1.0 + x.exp()).powi(-(k as i32));
            assert!((limit_law_cdf(&LimitFamily::Lk, gumbel, k, x).unwrap() - lk).abs() <= 1e-12, "L_{k}({x})");
        }
        let y = 0.05 * f64::from(i + 1);
        let xi = 1.0 / y;
        let j2 = 2.0 * -(-xi).exp_m1() / xi - (-xi).exp();
        assert!((limit_law_cdf(&LimitFamily::Jk, phi, 2, y).unwrap() - j2).abs() <= 1e-12, "J_2({y})");
        for (family, transform) in [(LimitFamily::Jk, Family::Uk), (LimitFamily::Lk, Family::Rk)] {
            for law in [gumbel, phi] {
                let direct = TailTransform::new(transform.clone(), 3).unwrap().cdf(&law, y);
                assert!((limit_law_cdf(&family, law, 3, y).unwrap() - direct).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn recurrences_and_burr_equation_hold_across_the_grid() {
    for base in bases() {
        for x in grid(&base, 1e-4, 1.0 - 1e-4, 500) {
            for k in 1..=3 {
                for family in [Family::Fk, Family::Uk, Family::Tk { r: 2 }, Family::Bk { tau: TauSpec::uniform(&[0.5, 1.5]).unwrap() }] {
                    let res = TailTransform::new(family, k).unwrap().recurrence_residual(&base, x).unwrap();
                    assert!(res.abs() <= 1e-12, "{res}");
                }
                let burr = extremalk::burr_ode_residual(&base, k, x).unwrap();
                assert!(burr.abs() <= 1e-10, "{burr}");
            }
        }
    }
}

fn family_strategy() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::Hk),
        Just(Family::Fk),
        Just(Family::Uk),
        Just(Family::Rk),
        (1u32..6).prop_map(|r| Family::Tk { r }),
        prop::collection::vec(0.1f64..4.0, 1..4).prop_map(|v| Family::Bk { tau: TauSpec::uniform(&v).unwrap() }),
    ]
}

proptest! {
    #[test]
    fn cdf_and_sf_are_complements(family in family_strategy(), k in 1u32..=6, ln_xi in -30.0f64..5.0) {
        let t = TailTransform::new(family, k).unwrap();
        let lv = Level::from_xi(ln_xi.exp());
        let c = t.cdf_at(&lv);
        let s = t.sf_at(&lv);
        prop_assert!((0.0..=1.0).contains(&c) && (0.0..=1.0).contains(&s));
        prop_assert!((c + s - 1.0).abs() <= 1e-12, "cdf {c} sf {s}");
    }

    #[test]
    fn cdf_decreases_in_xi(family in family_strategy(), k in 1u32..=6, a in 1e-6f64..20.0, b in 1e-6f64..20.0) {
        let t = TailTransform::new(family, k).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(t.cdf_at(&Level::from_xi(lo)) >= t.cdf_at(&Level::from_xi(hi)) - 1e-15);
    }

    #[test]
    fn derived_quantile_inverts_cdf(family in family_strategy(), k in 1u32..=4, p in 0.02f64..0.98) {
        let d = DerivedDistribution::new(TailTransform::new(family, k).unwrap(), BaseDistribution::normal());
        let x = d.quantile(p).unwrap();
        prop_assert!((d.cdf(x) - p).abs() <= 1e-9);
    }

    #[test]
    fn tail_constant_is_positive(family in family_strategy(), k in 1u32..=6) {
        let c = TailTransform::new(family, k).unwrap().tail_constant();
        prop_assert!(c > 0.0 && c.is_finite());
    }

    #[test]
    fn limit_kth_cdf_increases_in_k_and_x(k in 1u32..10, x in -3.0f64..3.0, dx in 0.0f64..2.0) {
        for law in [MaxStableLaw::gumbel(), MaxStableLaw::frechet(2.0).unwrap(), MaxStableLaw::weibull(1.5).unwrap()] {
            let here = law.limit_kth_cdf(k, x);
            prop_assert!((0.0..=1.0).contains(&here));
            prop_assert!(law.limit_kth_cdf(k + 1, x) >= here - 1e-15);
            prop_assert!(law.limit_kth_cdf(k, x + dx) >= here - 1e-15);
        }
    }

    #[test]
    fn tau_spec_display_round_trips(v in prop::collection::vec(0.01f64..10.0, 1..5)) {
        let tau = TauSpec::uniform(&v).unwrap();
        let back: TauSpec = tau.to_string().parse().unwrap();
        prop_assert_eq!(back, tau);
    }
}
