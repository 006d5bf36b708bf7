//! One function per subcommand, each producing report rows.

use std::error::Error;

use extremalk::sim::SizeLawTemplate;
use extremalk::{
    base_norming, catalog, convergence_study, limit_law, ordering_report, transform_norming, BaseDistribution, BaseParams,
    DerivedDistribution, Family, LevelDf, LimitFamily, NormingConstants, NormingMode, StudyConfig, TailTransform, TauSpec,
};
use serde::Serialize;

use crate::config::{Cli, Command, Mode, Opts, Output, DEFAULT_SEED};
use crate::report::write_rows;

type Res<T> = Result<T, Box<dyn Error>>;

const LIMIT_NAMES: [&str; 5] = ["gk", "jk", "lk", "sk", "bn"];

pub fn run(cli: &Cli) -> Res<()> {
    let o = cli.command.opts();
    match &cli.command {
        Command::Eval(_) => emit(&eval(o)?, o),
        Command::Norming(_) => emit(&norming(o)?, o),
        Command::Simulate(_) => emit(&simulate(o)?, o),
        Command::Tails(_) => emit(&tails(o)?, o),
        Command::Order(_) => emit(&ordering_report(&base(o)?, o.k.unwrap_or(4), o.r.unwrap_or(3), o.grid.unwrap_or(1000))?, o),
        Command::Catalog(_) => emit(&catalog_rows(), o),
    }
}

fn emit<T: Serialize>(rows: &[T], o: &Opts) -> Res<()> {
    write_rows(rows, o.output.unwrap_or(Output::Csv), o.out.as_deref())
}

fn base(o: &Opts) -> Res<BaseDistribution> {
    let name = o.base.as_deref().ok_or("--base is required")?;
    Ok(BaseDistribution::from_name(name, &BaseParams { alpha: o.alpha, beta: o.beta, c: o.c })?)
}

fn tau(o: &Opts) -> Res<Option<TauSpec>> {
    Ok(match &o.tau {
        Some(s) => Some(s.parse()?),
        None => None,
    })
}

fn k(o: &Opts) -> u32 {
    o.k.unwrap_or(1)
}

fn list<T: std::str::FromStr>(flag: &str, s: &str) -> Res<Vec<T>> {
    s.split(',')
        .map(|v| v.trim().parse::<T>().map_err(|_| format!("--{flag}: cannot parse '{}'", v.trim()).into()))
        .collect()
}

fn n_grid(o: &Opts, default: &[u64]) -> Res<Vec<u64>> {
    Ok(match (&o.n_grid, o.n) {
        (Some(g), _) => list("n-grid", g)?,
        (None, Some(n)) => vec![n],
        (None, None) => default.to_vec(),
    })
}

fn seed(o: &Opts) -> Res<u64> {
    let Some(s) = o.seed.as_deref() else { return Ok(DEFAULT_SEED) };
    let s = s.trim();
    if s == "random" {
        return Ok(rand::random());
    }
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|_| format!("--seed: expected an integer or 'random', got '{s}'").into())
}

#[derive(Serialize)]
struct EvalRow {
    family: String,
    base: String,
    x: f64,
    cdf: f64,
    sf: f64,
    pdf: f64,
}

fn eval_points<D: LevelDf>(d: &DerivedDistribution<D>, base: String, o: &Opts) -> Res<Vec<EvalRow>> {
    let mut xs: Vec<f64> = match &o.x {
        Some(s) => list("x", s)?,
        None => Vec::new(),
    };
    if let Some(p) = &o.p {
        for p in list::<f64>("p", p)? {
            xs.push(d.quantile(p)?);
        }
    }
    if xs.is_empty() {
        return Err("eval needs --x or --p".into());
    }
    let family = d.transform().label();
    Ok(xs.into_iter().map(|x| EvalRow { family: family.clone(), base: base.clone(), x, cdf: d.cdf(x), sf: d.sf(x), pdf: d.pdf(x) }).collect())
}

fn eval(o: &Opts) -> Res<Vec<EvalRow>> {
    let name = o.family.as_deref().ok_or("--family is required")?;
    let b = base(o)?;
    if LIMIT_NAMES.contains(&name) {
        let g = b.mda().law();
        let law = limit_law(&LimitFamily::from_name(name, o.r, tau(o)?)?, g, k(o))?;
        eval_points(&law, g.name(), o)
    } else {
        let t = TailTransform::new(Family::from_name(name, o.r, tau(o)?)?, k(o))?;
        eval_points(&DerivedDistribution::new(t, b), b.label(), o)
    }
}

#[derive(Serialize)]
struct NormingRow {
    n: u64,
    a_n: f64,
    b_n: f64,
}

fn norming(o: &Opts) -> Res<Vec<NormingRow>> {
    let b = base(o)?;
    let mode = match o.mode {
        Some(Mode::ClosedForm) => NormingMode::ClosedForm,
        Some(Mode::Quantile) | None => NormingMode::QuantileBased,
    };
    let transform = match o.family.as_deref() {
        Some(name) => Some(TailTransform::new(Family::from_name(name, o.r, tau(o)?)?, k(o))?),
        None => None,
    };
    n_grid(o, &[100, 1_000, 10_000, 100_000, 1_000_000])?
        .into_iter()
        .map(|n| {
            let NormingConstants { n, a, b: shift } = match &transform {
                Some(t) => transform_norming(t, &b, n, mode)?,
                None => base_norming(&b, n)?,
            };
            Ok(NormingRow { n, a_n: a, b_n: shift })
        })
        .collect()
}

fn simulate(o: &Opts) -> Res<Vec<extremalk::ConvergenceRow>> {
    let k = k(o);
    let tau = tau(o)?;
    let template = SizeLawTemplate::from_name(o.size_law.as_deref().unwrap_or("fixed"), o.m, k, o.r, tau.clone())?;
    let limit = match o.family.as_deref() {
        Some(name) => Some(LimitFamily::from_name(name, o.r, tau)?),
        None => None,
    };
    let cfg = StudyConfig {
        base: base(o)?,
        template,
        k,
        n_grid: n_grid(o, &[100, 1_000, 10_000])?,
        replicates: o.replicates.unwrap_or(10_000),
        seed: seed(o)?,
        workers: o.workers.unwrap_or(0),
        limit,
    };
    Ok(convergence_study(&cfg)?)
}

#[derive(Serialize)]
struct TailRow {
    family: String,
    base: String,
    k: u32,
    p: f64,
    ratio: f64,
    constant: f64,
    rel_error: f64,
}

fn tails(o: &Opts) -> Res<Vec<TailRow>> {
    let b = base(o)?;
    let tau = tau(o)?;
    let families = match o.family.as_deref() {
        Some(name) => vec![Family::from_name(name, o.r, tau)?],
        None => {
            let mut all = vec![Family::Hk, Family::Fk, Family::Uk, Family::Rk, Family::Tk { r: o.r.unwrap_or(1) }];
            all.extend(tau.map(|tau| Family::Bk { tau }));
            all
        }
    };
    let orders: Vec<u32> = match o.k {
        Some(k) => vec![k],
        None => vec![1, 2, 3],
    };
    let probs: Vec<f64> = match &o.p {
        Some(p) => list("p", p)?,
        None => vec![1.0 - 1e-4, 1.0 - 1e-5, 1.0 - 1e-6],
    };
    let mut rows = Vec::new();
    for family in &families {
        for &k in &orders {
            let t = TailTransform::new(family.clone(), k)?;
            let constant = t.tail_constant();
            for &p in &probs {
                let ratio = t.empirical_tail_ratio(&b, p)?;
                rows.push(TailRow { family: t.label(), base: b.label(), k, p, ratio, constant, rel_error: ratio / constant - 1.0 });
            }
        }
    }
    Ok(rows)
}

#[derive(Serialize)]
struct CatalogRow {
    name: &'static str,
    parameters: String,
    mda: String,
    left_extremity: f64,
    right_extremity: f64,
}

fn catalog_rows() -> Vec<CatalogRow> {
    catalog()
        .into_iter()
        .map(|e| CatalogRow {
            name: e.name,
            parameters: e.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";"),
            mda: e.distribution.mda().label(),
            left_extremity: e.distribution.left_extremity(),
            right_extremity: e.distribution.right_extremity(),
        })
        .collect()
}
