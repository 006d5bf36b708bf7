//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use extremalk::norming::target_quantile_grid;
use extremalk::ordering::ORDERING_TOLERANCE;
use extremalk::quadrature::{integrate, Tolerance};
use extremalk::sim::{ks_distance, normalized_sample, SizeLawTemplate, BLOCK};
use extremalk::{
    base_norming, burr_ode_residual, check_ordering, kth_upper_order_stat, transform_norming, verify_norming,
    BaseDistribution, ClaimId, DerivedDistribution, Family, Level, LevelDf, MaxStableLaw, NormingMode, RngState,
    TailTransform, TauSpec,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn fact(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn tt(family: Family, k: u32) -> TailTransform {
    TailTransform::new(family, k).unwrap()
}

fn grid(base: &BaseDistribution, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| base.quantile(lo + (hi - lo) * i as f64 / (n - 1) as f64).unwrap()).collect()
}

fn tau12() -> TauSpec {
    TauSpec::uniform(&[1.0, 2.0]).unwrap()
}

fn tail_constants() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut at = String::new();
    for base in [BaseDistribution::exponential(), BaseDistribution::pareto(1.0, 1.0).unwrap()] {
        for k in 1..=3u32 {
            let mut cases = vec![
                (Family::Fk, 1.0 / fact(k)),
                (Family::Uk, 1.0 / fact(k + 1)),
                (Family::Rk, 1.0),
                (Family::Bk { tau: tau12() }, (1.0 + 2f64.powi(k as i32)) / 2.0 / fact(k)),
            ];
            for r in 1..=3u32 {
                let beta = fact(r - 1) * fact(k - 1) / fact(r + k - 1);
                cases.push((Family::Tk { r }, 1.0 / (f64::from(k) * beta)));
            }
            for (family, expected) in cases {
                let label = tt(family.clone(), k).label();
                let ratio = tt(family, k).empirical_tail_ratio(&base, 1.0 - 1e-6).unwrap();
                let rel = (ratio / expected - 1.0).abs();
                if rel > worst {
                    worst = rel;
                    at = format!("{label} on {}", base.label());
                }
            }
        }
    }
    outcome(worst <= 0.01, format!("worst relative error {worst:.2e} ({at})"))
}

fn identities() -> Outcome {
    let one = TauSpec::degenerate(1.0).unwrap();
    let mut worst: f64 = 0.0;
    for base in [BaseDistribution::exponential(), BaseDistribution::uniform(), BaseDistribution::pareto(1.0, 1.0).unwrap(), BaseDistribution::normal()] {
        for x in grid(&base, 1e-4, 1.0 - 1e-4, 1000) {
            for k in 1..=4 {
                let t1 = tt(Family::Tk { r: 1 }, k).cdf(&base, x) - tt(Family::Rk, k).cdf(&base, x);
                let b1 = tt(Family::Bk { tau: one.clone() }, k).cdf(&base, x) - tt(Family::Fk, k).cdf(&base, x);
                worst = worst.max(t1.abs()).max(b1.abs());
            }
        }
    }
    outcome(worst <= 1e-12, format!("worst |difference| {worst:.2e}"))
}

fn families() -> Vec<Family> {
    vec![Family::Hk, Family::Fk, Family::Uk, Family::Rk, Family::Tk { r: 1 }, Family::Tk { r: 2 }, Family::Tk { r: 3 }, Family::Bk { tau: tau12() }]
}

/// Central difference of the cdf, Richardson-extrapolated, using the
/// survival side above the median.
fn fd_pdf(t: &TailTransform, base: &BaseDistribution, x: f64, h: f64) -> f64 {
    let upper = t.cdf(base, x) > 0.5;
    let d = |h: f64| {
        if upper {
            (t.sf(base, x - h) - t.sf(base, x + h)) / (2.0 * h)
        } else {
            (t.cdf(base, x + h) - t.cdf(base, x - h)) / (2.0 * h)
        }
    };
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

fn total_mass(t: &TailTransform, base: &BaseDistribution) -> f64 {
    let tol = Tolerance { abs: 1e-13, rel: 1e-11, max_intervals: 4000 };
    let x_star = base.point_at_xi(1.0).unwrap();
    let upper = integrate(|x| t.pdf(base, x), x_star, base.right_extremity(), tol).unwrap().value;
    let lower = integrate(|xi| t.reverse_hazard_factor(&Level::from_xi(xi)), 1.0, f64::INFINITY, tol).unwrap().value;
    upper + lower
}

fn analytic_consistency() -> Outcome {
    let bases = [BaseDistribution::exponential(), BaseDistribution::uniform()];
    let mut rec: f64 = 0.0;
    let mut burr: f64 = 0.0;
    let mut fd: f64 = 0.0;
    let mut mass: f64 = 0.0;
    for base in &bases {
        let xs = grid(base, 0.01, 0.99, 200);
        for k in 1..=3 {
            for family in [Family::Fk, Family::Uk, Family::Tk { r: 2 }, Family::Bk { tau: tau12() }] {
                let t = tt(family, k);
                for &x in &xs {
                    rec = rec.max(t.recurrence_residual(base, x).unwrap().abs());
                }
            }
            for &x in &xs {
                burr = burr.max(burr_ode_residual(base, k, x).unwrap().abs());
            }
            for family in families() {
                let t = tt(family, k);
                for &x in grid(base, 0.05, 0.95, 19).iter() {
                    let h = 1e-3 * x.abs().max(1.0);
                    let exact = t.pdf(base, x);
                    fd = fd.max((fd_pdf(&t, base, x, h) / exact - 1.0).abs());
                }
                mass = mass.max((total_mass(&t, base) - 1.0).abs());
            }
        }
    }
    let ok = rec <= 1e-12 && burr <= 1e-10 && fd <= 1e-6 && mass <= 1e-6;
    outcome(ok, format!("recurrence {rec:.2e}, burr {burr:.2e}, pdf vs difference quotient {fd:.2e}, |mass - 1| {mass:.2e}"))
}

fn stability() -> Outcome {
    let mut worst: f64 = 0.0;
    for law in [MaxStableLaw::frechet(1.5).unwrap(), MaxStableLaw::weibull(2.0).unwrap(), MaxStableLaw::gumbel()] {
        let probs: Vec<f64> = (0..50).map(|i| 0.01 + 0.98 * f64::from(i) / 49.0).collect();
        for x in target_quantile_grid(&law, &probs).unwrap() {
            for n in [2u64, 10, 100] {
                let s = law.stability_norming(n);
                let lhs = law.cdf(s.a * x + s.b).powi(n as i32);
                worst = worst.max((lhs - law.cdf(x)).abs());
            }
        }
    }
    outcome(worst <= 1e-12, format!("worst |G^n(A x + B) - G(x)| {worst:.2e}"))
}

fn mda_norming() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut at = String::new();
    for base in [BaseDistribution::pareto(1.0, 1.0).unwrap(), BaseDistribution::uniform(), BaseDistribution::exponential()] {
        for k in 1..=2 {
            for family in [Family::Hk, Family::Fk, Family::Uk, Family::Rk, Family::Tk { r: 2 }] {
                let t = tt(family, k);
                let target = base.mda().law().with_exponent_scaled(k);
                let xs = target_quantile_grid(&target, &[0.1, 0.5, 0.9]).unwrap();
                let v = DerivedDistribution::new(t.clone(), base);
                for mode in [NormingMode::QuantileBased, NormingMode::ClosedForm] {
                    let dev = verify_norming(&v, &target, |n| transform_norming(&t, &base, n, mode), &[1_000_000], &xs).unwrap();
                    if !(dev <= worst) {
                        worst = dev;
                        at = format!("{} on {} ({mode:?})", t.label(), base.label());
                    }
                }
            }
        }
    }
    outcome(worst <= 0.02, format!("worst deviation at n = 1e6: {worst:.2e} ({at})"))
}

fn frechet1_xi(x: f64) -> f64 {
    if x > 0.0 { 1.0 / x } else { f64::INFINITY }
}

fn monte_carlo() -> Outcome {
    const M: usize = 200_000;
    const SEED: u64 = 42;
    let n = 10_000u64;
    let pareto = BaseDistribution::pareto(1.0, 1.0).unwrap();
    let g2 = |x: f64| {
        let xi = frechet1_xi(x);
        (-xi).exp() * (1.0 + xi)
    };
    let j2 = |x: f64| {
        let xi = frechet1_xi(x);
        if xi == 0.0 { 1.0 } else { 2.0 * -(-xi).exp_m1() / xi - (-xi).exp() }
    };
    let s2 = |x: f64| {
        let xi = frechet1_xi(x);
        if xi.is_infinite() { 0.0 } else { (1.0 + 3.0 * xi) / (1.0 + xi).powi(3) }
    };
    let logistic = |x: f64| 1.0 / (1.0 + (-x).exp());
    type Case<'a> = (&'a str, BaseDistribution, SizeLawTemplate, u32, &'a dyn Fn(f64) -> f64, f64);
    let cases: Vec<Case> = vec![
        ("fixed", pareto, SizeLawTemplate::Fixed, 2, &g2, 0.02),
        ("geometric", BaseDistribution::exponential(), SizeLawTemplate::Geometric { m: 1 }, 1, &logistic, 0.02),
        ("discrete-uniform", pareto, SizeLawTemplate::DiscreteUniform { m: 5 }, 2, &j2, 0.03),
        ("negbin r=2", pareto, SizeLawTemplate::NegBinomial { m: 2, r: 2 }, 2, &s2, 0.03),
        ("poisson", pareto, SizeLawTemplate::Poisson { m: 2 }, 2, &g2, 0.03),
        ("binomial", pareto, SizeLawTemplate::Binomial { m: 2 }, 2, &g2, 0.03),
    ];
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, base, template, k, limit, bound) in &cases {
        let norming = base_norming(base, n).unwrap();
        let law = template.instantiate(n).unwrap();
        let sample = normalized_sample(base, &law, *k, norming, M, SEED, n, 1).unwrap();
        let ks = ks_distance(&sample, limit);
        ok &= ks < *bound;
        parts.push(format!("{name} {ks:.4}"));
    }
    let single = start.elapsed().as_secs_f64();
    let (_, base, template, k, _, _) = &cases[3];
    let law = template.instantiate(n).unwrap();
    let norming = base_norming(base, n).unwrap();
    let a = normalized_sample(base, &law, *k, norming, M, SEED, n, 1).unwrap();
    let b = normalized_sample(base, &law, *k, norming, M, SEED, n, 4).unwrap();
    let identical = a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()) && M > BLOCK;
    ok &= identical && single < 120.0;
    outcome(ok, format!("KS: {}; single-worker {single:.1} s; identical across 1 and 4 workers: {identical}", parts.join(", ")))
}

fn exact_kth(n: u32, k: u32, f: f64) -> f64 {
    let s = 1.0 - f;
    (0..k)
        .map(|j| fact(n) / (fact(j) * fact(n - j)) * s.powi(j as i32) * f.powi((n - j) as i32))
        .sum()
}

fn small_n() -> Outcome {
    let mut worst: f64 = 0.0;
    let bases: [(BaseDistribution, fn(f64) -> f64); 2] = [
        (BaseDistribution::uniform(), |x| x.clamp(0.0, 1.0)),
        (BaseDistribution::exponential(), |x| if x > 0.0 { -(-x).exp_m1() } else { 0.0 }),
    ];
    for (i, (base, cdf)) in bases.iter().enumerate() {
        for n in 1..=8u32 {
            for k in 1..=n {
                let mut rng = RngState::for_block(7, i as u64, u64::from(n * 8 + k)).rng();
                let mut xs: Vec<f64> = (0..100_000).map(|_| kth_upper_order_stat(base, u64::from(n), k, &mut rng).unwrap()).collect();
                xs.sort_by(f64::total_cmp);
                worst = worst.max(ks_distance(&xs, |x| exact_kth(n, k, cdf(x))));
            }
        }
    }
    outcome(worst < 0.01, format!("worst KS {worst:.4}"))
}

fn ordering() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    let mut at = String::new();
    for base in [BaseDistribution::exponential(), BaseDistribution::uniform(), BaseDistribution::pareto(1.0, 1.0).unwrap(), BaseDistribution::normal()] {
        for claim in ClaimId::ALL {
            for k in 1..=4 {
                for r in 1..=3 {
                    let c = check_ordering(claim, &base, k, r, 1000).unwrap();
                    if c.max_violation > worst {
                        worst = c.max_violation;
                        at = format!("{claim} on {} k={k} r={r}", c.base);
                    }
                }
            }
        }
    }
    outcome(worst <= ORDERING_TOLERANCE, format!("worst violation {worst:.2e} ({at})"))
}

fn main() -> ExitCode {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !filters.is_empty() && !filters.iter().any(|f| "acceptance".contains(f.as_str())) {
        return ExitCode::SUCCESS;
    }
    let criteria: [(&str, f64, fn() -> Outcome); 8] = [
        ("tail constants", 5.0, tail_constants),
        ("identities", 5.0, identities),
        ("analytic consistency", 60.0, analytic_consistency),
        ("max-stability", 1.0, stability),
        ("domain-of-attraction norming", 30.0, mda_norming),
        ("Monte Carlo convergence", 120.0, monte_carlo),
        ("small-n exactness", 10.0, small_n),
        ("orderings", 10.0, ordering),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let secs = start.elapsed().as_secs_f64();
        let ok = out.ok && secs < *budget;
        if !ok {
            failed += 1;
        }
        println!("{} {}. {name}: {} [{secs:.2} s of {budget} s]", if ok { "PASS" } else { "FAIL" }, i + 1, out.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
