//! Verification suites: closed forms against quadrature oracles and against
//! each other, one row per case.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use spherical_core::cfun::{c_alpha, c_full, c_sigma};
use spherical_core::complexmath::ComplexScalar;
use spherical_core::higherrank::{det_a, det_a_factorwise, hs_norm_check, FactorKTypeTable};
use spherical_core::models::{
    functional_equation_check, functional_equation_check_chi, quad_c_nbar, quad_csigma_sl2, quad_eisenstein_sl2,
    quad_phi_k,
};
use spherical_core::rankone::{
    asymptotic_limit, c_lambda_delta, c_sigma_minus, eisenstein_entry, hc_series_eval, hc_series_gammas, limit_large_t,
    phi_tau, small_t_ratio, KTypeRankOne, KTypeSelector, RankOneSpace,
};
use spherical_core::rootdata::{length, longest_element, weyl_apply, weyl_group_elements, RootDatum, SpectralParam, WeylElement};

use crate::parse::format_lambda;
use crate::table::{Cell, Table};
use crate::{resolve_ktype, CliError, Report, RunConfig, Space};

pub const SUITES: &[&str] = &[
    "c-vs-integral",
    "phi-vs-integral",
    "functional",
    "series",
    "growth",
    "eisenstein",
    "asymptotic",
    "csigma",
    "hs-norm",
    "small-t",
    "eigen",
    "cocycle",
    "det-a",
    "catalog",
];

#[derive(Debug, Clone, Copy)]
enum Metric {
    Rel,
    Abs,
    /// `value.re` must stay below the tolerance.
    Upper,
}

/// One comparison: `value` against `reference`.
struct Measured {
    reference: ComplexScalar,
    value: ComplexScalar,
    nodes: usize,
    /// Denominator floor for `rel_err`, for references that vanish.
    scale: f64,
    /// An extra condition that must also hold (e.g. monotone convergence).
    side_condition: Result<(), String>,
}

impl Measured {
    fn plain(reference: ComplexScalar, value: ComplexScalar, nodes: usize) -> Self {
        Self { reference, value, nodes, scale: 0.0, side_condition: Ok(()) }
    }
}

type Eval = Box<dyn Fn() -> Result<Measured, String> + Send + Sync>;

struct Case {
    suite: &'static str,
    name: String,
    metric: Metric,
    tolerance: f64,
    eval: Eval,
}

fn case(suite: &'static str, name: String, metric: Metric, tolerance: f64, eval: Eval) -> Case {
    Case { suite, name, metric, tolerance, eval }
}

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Rank-one λ values from the config, or `defaults`.
fn rank_one_lambdas(cfg: &RunConfig, defaults: &[ComplexScalar]) -> Vec<ComplexScalar> {
    let given: Vec<ComplexScalar> = cfg.lambdas.iter().filter(|l| l.len() == 1).map(|l| l.coords()[0]).collect();
    if given.is_empty() {
        defaults.to_vec()
    } else {
        given
    }
}

/// The configured rank-one space, the defaults, or a usage error when the
/// configured space does not fit (`None` means skip inside `all`).
fn spaces(
    cfg: &RunConfig,
    defaults: &[RankOneSpace],
    fits: impl Fn(&RankOneSpace) -> bool,
    explicit: bool,
    suite: &str,
) -> Result<Option<Vec<RankOneSpace>>, CliError> {
    match &cfg.space {
        None => Ok(Some(defaults.to_vec())),
        Some(Space::RankOne(sp)) if fits(sp) => Ok(Some(vec![*sp])),
        Some(_) if explicit => Err(CliError::Usage(format!("suite {suite} does not apply to the given space"))),
        Some(_) => Ok(None),
    }
}

fn hyperbolic(n: u32) -> RankOneSpace {
    RankOneSpace::hyperbolic(n).expect("valid dimension")
}

fn is_hyperbolic(sp: &RankOneSpace) -> bool {
    sp.m_2alpha() == 0 && sp.m_alpha() < 64
}

fn label(sp: &RankOneSpace) -> String {
    if sp.m_2alpha() == 0 {
        format!("H^{}", sp.m_alpha() + 1)
    } else {
        format!("rankone:{},{}", sp.m_alpha(), sp.m_2alpha())
    }
}

fn ktypes_or(cfg: &RunConfig, space: &RankOneSpace, defaults: &[(i64, u32)]) -> Result<Vec<(String, KTypeRankOne)>, CliError> {
    if let Some(text) = &cfg.ktype {
        return Ok(vec![(text.clone(), resolve_ktype(text, space, cfg.catalog.as_ref())?)]);
    }
    Ok(defaults
        .iter()
        .filter_map(|&(r, s)| KTypeRankOne::from_rs(space, r, s).ok().map(|kt| (format!("s{s}r{r}"), kt)))
        .collect())
}

fn c_vs_integral(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let Some(spaces) = spaces(cfg, &[hyperbolic(2), hyperbolic(3), hyperbolic(4)], is_hyperbolic, explicit, "c-vs-integral")? else {
        return Ok(vec![]);
    };
    let lams = rank_one_lambdas(cfg, &[c(0.0, -0.5), c(1.3, -0.2), c(-2.0, -1.1), c(0.7, -2.5)]);
    let mut out = Vec::new();
    for sp in spaces {
        for &lam in &lams {
            let spec = cfg.spec;
            out.push(case("c-vs-integral", format!("{} λ={}", label(&sp), lam), Metric::Rel, 1e-6, Box::new(move || {
                let closed = c_alpha(lam, sp.m_alpha(), 0).map_err(s)?.into_finite().map_err(s)?;
                let q = quad_c_nbar(sp.m_alpha() as usize + 1, lam, &spec).map_err(s)?;
                Ok(Measured::plain(closed, q.value, q.nodes))
            })));
        }
    }
    Ok(out)
}

fn phi_vs_integral(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let Some(spaces) = spaces(cfg, &[hyperbolic(2), hyperbolic(3)], is_hyperbolic, explicit, "phi-vs-integral")? else {
        return Ok(vec![]);
    };
    let lams = rank_one_lambdas(cfg, &[c(0.5, 0.0), c(1.7, 0.0), c(2.2, -0.3)]);
    let mut out = Vec::new();
    for sp in spaces {
        for &lam in &lams {
            for t in [0.0, 0.5, 1.0, 2.0, 3.0] {
                let spec = cfg.spec;
                out.push(case("phi-vs-integral", format!("{} λ={} t={t}", label(&sp), lam), Metric::Abs, 1e-8, Box::new(move || {
                    let closed = phi_tau(&sp, &KTypeRankOne::trivial(), lam, t).map_err(s)?;
                    let q = quad_phi_k(sp.m_alpha() as usize + 1, lam, t, &spec).map_err(s)?;
                    Ok(Measured::plain(closed, q.value, q.nodes))
                })));
            }
        }
    }
    Ok(out)
}

fn functional(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let Some(spaces) = spaces(cfg, &[hyperbolic(2), hyperbolic(3)], is_hyperbolic, explicit, "functional")? else {
        return Ok(vec![]);
    };
    let lams = rank_one_lambdas(cfg, &[c(0.8, 0.0), c(1.9, 0.2)]);
    let mut out = Vec::new();
    for sp in spaces {
        for &lam in &lams {
            for (t1, t2) in [(0.0, 1.0), (1.0, 1.0), (0.5, 2.0)] {
                let spec = cfg.spec;
                let n = sp.m_alpha() as usize + 1;
                out.push(case("functional", format!("{} λ={} t=({t1},{t2})", label(&sp), lam), Metric::Rel, 1e-6, Box::new(move || {
                    let r = functional_equation_check(n, lam, t1, t2, &spec).map_err(s)?;
                    Ok(Measured::plain(r.closed_form, r.quadrature, r.nodes_used))
                })));
                if n == 2 {
                    out.push(case("functional", format!("H^2 chi2 λ={} t=({t1},{t2})", lam), Metric::Rel, 1e-6, Box::new(move || {
                        let r = functional_equation_check_chi(2, lam, t1, t2, &spec).map_err(s)?;
                        let scale = if r.rel_err > 0.0 { r.abs_err / r.rel_err } else { 0.0 };
                        Ok(Measured { scale, ..Measured::plain(r.closed_form, r.quadrature, r.nodes_used) })
                    })));
                }
            }
        }
    }
    Ok(out)
}

fn series(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let Some(spaces) = spaces(cfg, &[hyperbolic(2), hyperbolic(3), RankOneSpace::new(4, 3).expect("valid")], |_| true, explicit, "series")? else {
        return Ok(vec![]);
    };
    let lams = rank_one_lambdas(cfg, &[c(0.6, 0.1), c(1.4, -0.3), c(2.9, 0.0)]);
    let truncation = cfg.truncation;
    let mut out = Vec::new();
    for sp in spaces {
        for &lam in &lams {
            for t in [1.0, 2.0, 5.0] {
                out.push(case("series", format!("{} λ={} t={t} N={truncation}", label(&sp), lam), Metric::Rel, 1e-8, Box::new(move || {
                    let closed = phi_tau(&sp, &KTypeRankOne::trivial(), lam, t).map_err(s)?;
                    let series = hc_series_eval(&sp, lam, t, truncation).map_err(s)?;
                    Ok(Measured::plain(closed, series, truncation))
                })));
            }
        }
    }
    Ok(out)
}

fn growth(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let Some(spaces) = spaces(cfg, &[hyperbolic(2), RankOneSpace::new(4, 3).expect("valid")], |_| true, explicit, "growth")? else {
        return Ok(vec![]);
    };
    let lams = rank_one_lambdas(cfg, &[c(0.6, 0.1), c(-2.3, 0.7), c(1.4, -0.9)]);
    let mut out = Vec::new();
    for sp in spaces {
        for &lam in &lams {
            out.push(case("growth", format!("{} λ={} n=20..60", label(&sp), lam), Metric::Upper, 0.5, Box::new(move || {
                let rate = hc_series_gammas(&sp, lam, 60).map_err(s)?.growth_rate(20, 60);
                Ok(Measured::plain(c(0.0, 0.0), c(rate, 0.0), 60))
            })));
        }
    }
    Ok(out)
}

fn eisenstein(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let h2 = hyperbolic(2);
    if spaces(cfg, &[h2], |sp| *sp == h2, explicit, "eisenstein")?.is_none() {
        return Ok(vec![]);
    }
    let lams = rank_one_lambdas(cfg, &[c(0.7, 0.0), c(1.9, -0.3)]);
    let mut out = Vec::new();
    for char_n in [0i64, 2, 4] {
        let kt = KTypeSelector::Character(char_n).resolve(&h2, None).map_err(|e| CliError::Usage(e.to_string()))?;
        for &lam in &lams {
            for t in [0.3, 1.0, 2.5] {
                let spec = cfg.spec;
                out.push(case("eisenstein", format!("H^2 chi{char_n} λ={} t={t}", lam), Metric::Rel, 1e-8, Box::new(move || {
                    let q = quad_eisenstein_sl2(char_n, lam, t, &spec).map_err(s)?;
                    Ok(Measured::plain(eisenstein_entry(&h2, &kt, lam, t).map_err(s)?, q.value, q.nodes))
                })));
            }
        }
    }
    Ok(out)
}

fn asymptotic(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let Some(spaces) = spaces(cfg, &[hyperbolic(2), hyperbolic(3)], |_| true, explicit, "asymptotic")? else {
        return Ok(vec![]);
    };
    // The limit holds for Im Λ < 0, where the c(λ) term dominates.
    let lams = rank_one_lambdas(cfg, &[c(1.1, -0.8), c(0.6, -1.2)]);
    let mut out = Vec::new();
    for sp in spaces {
        for (name, kt) in ktypes_or(cfg, &sp, &[(0, 0), (0, 2)])? {
            for &lam in &lams {
                out.push(case("asymptotic", format!("{} {name} λ={} t=18", label(&sp), lam), Metric::Rel, 1e-5, Box::new(move || {
                    let limit = asymptotic_limit(&sp, &kt, lam).map_err(s)?;
                    let at18 = limit_large_t(&sp, &kt, lam, 18.0).map_err(s)?;
                    let at10 = limit_large_t(&sp, &kt, lam, 10.0).map_err(s)?;
                    let (e10, e18) = ((at10 - limit).norm(), (at18 - limit).norm());
                    let side_condition = if e10 > e18 { Ok(()) } else { Err(format!("error at t=10 ({e10:e}) does not exceed error at t=18 ({e18:e})")) };
                    Ok(Measured { side_condition, ..Measured::plain(limit, at18, 0) })
                })));
            }
        }
    }
    Ok(out)
}

fn csigma(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let h2 = hyperbolic(2);
    if spaces(cfg, &[h2], |sp| *sp == h2, explicit, "csigma")?.is_none() {
        return Ok(vec![]);
    }
    let lams = rank_one_lambdas(cfg, &[c(0.4, -0.6), c(-1.3, -0.35), c(2.0, -1.2)]);
    let kts = ktypes_or(cfg, &h2, &[(0, 0), (0, 1), (0, 2)])?;
    let mut out = Vec::new();
    for (name, kt) in kts {
        for &lam in &lams {
            let spec = cfg.spec;
            let char_n = 2 * kt.s() as i64;
            out.push(case("csigma", format!("H^2 {name} λ={}", lam), Metric::Rel, 1e-6, Box::new(move || {
                let closed = c_sigma_minus(&h2, &kt, lam).map_err(s)?;
                let q = quad_csigma_sl2(char_n, lam, &spec).map_err(s)?;
                Ok(Measured::plain(closed, q.value, q.nodes))
            })));
        }
    }
    Ok(out)
}

fn hs_norm(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let Some(spaces) = spaces(cfg, &[hyperbolic(3), RankOneSpace::new(4, 3).expect("valid")], |_| true, explicit, "hs-norm")? else {
        return Ok(vec![]);
    };
    let lams: Vec<f64> = rank_one_lambdas(cfg, &[c(0.3, 0.0), c(1.2, 0.0), c(-2.5, 0.0)]).iter().map(|l| l.re).collect();
    let mut out = Vec::new();
    for sp in spaces {
        for (name, kt) in ktypes_or(cfg, &sp, &[(0, 1), (0, 2)])? {
            for &lam in &lams {
                out.push(case("hs-norm", format!("{} {name} λ={lam}", label(&sp)), Metric::Rel, 1e-8, Box::new(move || {
                    let r = hs_norm_check(&sp, &kt, lam).map_err(s)?;
                    Ok(Measured::plain(r.closed_form, r.quadrature, 0))
                })));
            }
        }
    }
    Ok(out)
}

fn small_t(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let Some(spaces) = spaces(cfg, &[hyperbolic(2)], |_| true, explicit, "small-t")? else {
        return Ok(vec![]);
    };
    let lams = rank_one_lambdas(cfg, &[c(0.8, -0.3), c(1.7, 0.2)]);
    let mut out = Vec::new();
    for sp in spaces {
        for (name, kt) in ktypes_or(cfg, &sp, &[(0, 1), (0, 2)])? {
            for &lam in &lams {
                out.push(case("small-t", format!("{} {name} λ={} t=1e-3", label(&sp), lam), Metric::Rel, 1e-4, Box::new(move || {
                    let target = c_lambda_delta(&sp, &kt, lam).map_err(s)? / c_lambda_delta(&sp, &kt, -lam).map_err(s)?;
                    let ratio = small_t_ratio(&sp, &kt, lam, 1e-3).map_err(s)?;
                    Ok(Measured::plain(target, ratio, 0))
                })));
            }
        }
    }
    Ok(out)
}

fn eigen(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let Some(spaces) = spaces(cfg, &[hyperbolic(2), RankOneSpace::new(4, 3).expect("valid")], |_| true, explicit, "eigen")? else {
        return Ok(vec![]);
    };
    let lams = rank_one_lambdas(cfg, &[c(0.9, -0.35)]);
    let mut out = Vec::new();
    for sp in spaces {
        for &lam in &lams {
            for t in [0.5, 1.5, 3.0] {
                out.push(case("eigen", format!("{} λ={} t={t}", label(&sp), lam), Metric::Rel, 1e-6, Box::new(move || {
                    let h = 4e-3;
                    let f = |x: f64| phi_tau(&sp, &KTypeRankOne::trivial(), lam, x);
                    let (m2, m1, f0, p1, p2) = (f(t - 2.0 * h).map_err(s)?, f(t - h).map_err(s)?, f(t).map_err(s)?, f(t + h).map_err(s)?, f(t + 2.0 * h).map_err(s)?);
                    let d2 = (-p2 + 16.0 * p1 - 30.0 * f0 + 16.0 * m1 - m2) / (12.0 * h * h);
                    let d1 = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
                    let estimate = (d2 + sp.radial_coefficient(t) * d1) / f0;
                    Ok(Measured::plain(sp.eigenvalue(lam), estimate, 5))
                })));
            }
        }
    }
    Ok(out)
}

fn data(cfg: &RunConfig, explicit: bool, suite: &str) -> Result<Option<Vec<(String, RootDatum)>>, CliError> {
    match &cfg.space {
        None => Ok(Some(vec![
            ("A2".into(), RootDatum::a2(1).expect("valid")),
            ("B2".into(), RootDatum::b2(1, 2).expect("valid")),
        ])),
        Some(Space::Datum(d)) => Ok(Some(vec![("datum".into(), d.clone())])),
        Some(Space::RankOne(_)) if explicit => Err(CliError::Usage(format!("suite {suite} needs a higher-rank datum"))),
        Some(Space::RankOne(_)) => Ok(None),
    }
}

fn random_lambdas(rank: usize, count: usize) -> Vec<SpectralParam> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..count)
        .map(|_| SpectralParam::new((0..rank).map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0))).collect()))
        .collect()
}

fn cocycle(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let Some(data) = data(cfg, explicit, "cocycle")? else {
        return Ok(vec![]);
    };
    let mut out = Vec::new();
    for (name, datum) in data {
        let elements = weyl_group_elements(&datum).map_err(|e| CliError::Usage(e.to_string()))?;
        let w0 = longest_element(&datum).map_err(|e| CliError::Usage(e.to_string()))?;
        let lams = if cfg.lambdas.is_empty() { random_lambdas(datum.rank(), 5) } else { cfg.lambdas.clone() };
        for lam in lams {
            for u in &elements {
                for v in &elements {
                    let uv = u.compose(v);
                    if length(&datum, &uv).map_err(|e| CliError::Usage(e.to_string()))? != u.word_len() + v.word_len() || u.word_len() * v.word_len() == 0 {
                        continue;
                    }
                    let (datum, lam, u, v) = (datum.clone(), lam.clone(), u.clone(), v.clone());
                    out.push(case("cocycle", format!("{name} u={u} v={v} λ={}", format_lambda(&lam)), Metric::Rel, 1e-10, Box::new(move || {
                        let left = c_sigma(&datum, &u.compose(&v), &lam).map_err(s)?.value;
                        let vl = weyl_apply(&datum, &v, &lam).map_err(s)?;
                        let right = c_sigma(&datum, &u, &vl).map_err(s)?.value * c_sigma(&datum, &v, &lam).map_err(s)?.value;
                        Ok(Measured::plain(left, right, 0))
                    })));
                }
            }
            let (datum, lam, w0) = (datum.clone(), lam.clone(), w0.clone());
            out.push(case("cocycle", format!("{name} c_w0 vs c_full λ={}", format_lambda(&lam)), Metric::Rel, 1e-13, Box::new(move || {
                let full = c_full(&datum, &lam).map_err(s)?.value;
                Ok(Measured::plain(full, c_sigma(&datum, &w0, &lam).map_err(s)?.value, 0))
            })));
        }
    }
    Ok(out)
}

/// A2 (m = 2) along `1,2,1` with two nontrivial K-types per factor.
fn default_a2_table() -> (RootDatum, FactorKTypeTable) {
    let datum = RootDatum::a2(2).expect("valid");
    let sp = RankOneSpace::new(2, 0).expect("valid");
    let picks = [(0, 1), (0, 2), (1, 2), (0, 0), (0, 3), (0, 1)];
    let mut entries = Vec::new();
    for (k, &(r, s)) in picks.iter().enumerate() {
        entries.push(((k / 2 + 1, k % 2 + 1), sp, KTypeRankOne::from_rs(&sp, r, s).expect("valid K-type")));
    }
    let table = FactorKTypeTable::new(WeylElement::from_word(vec![1, 2, 1]), entries).expect("complete table");
    (datum, table)
}

fn det_a_suite(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let (datum, table) = match (&cfg.space, &cfg.table) {
        (Some(Space::Datum(d)), Some(t)) => (d.clone(), t.clone()),
        (None, None) => default_a2_table(),
        _ if explicit => return Err(CliError::Usage("suite det-a needs --datum/--space with --table, or neither".into())),
        _ => return Ok(vec![]),
    };
    let w = table.word().clone();
    table.validate_against(&datum, &w).map_err(|e| CliError::Usage(e.to_string()))?;
    let lams = if cfg.lambdas.is_empty() { random_lambdas(datum.rank(), 5) } else { cfg.lambdas.clone() };
    let mut out = Vec::new();
    for lam in lams {
        let (datum, table, w) = (datum.clone(), table.clone(), w.clone());
        out.push(case("det-a", format!("w={w} λ={}", format_lambda(&lam)), Metric::Rel, 1e-10, Box::new(move || {
            let direct = det_a(&datum, &w, &lam, &table).map_err(s)?;
            let factorwise = det_a_factorwise(&datum, &w, &lam, &table).map_err(s)?;
            Ok(Measured::plain(direct, factorwise, 0))
        })));
    }
    Ok(out)
}

fn catalog(cfg: &RunConfig, explicit: bool) -> Result<Vec<Case>, CliError> {
    let Some(cat) = cfg.catalog.clone() else {
        if explicit {
            return Err(CliError::Usage("suite catalog needs --catalog".into()));
        }
        return Ok(vec![]);
    };
    let mut out = Vec::new();
    for rec in cat.records().iter().cloned() {
        out.push(case("catalog", format!("{} ({},{})", rec.name, rec.m_alpha, rec.m_2alpha), Metric::Rel, 1e-10, Box::new(move || {
            let (sp, kt) = rec.resolve().map_err(s)?;
            // Closed form against the same function rebuilt from the record's own (r, s).
            let lam = c(1.1, -0.8);
            let again = KTypeRankOne::from_rs(&sp, kt.r(), kt.s()).map_err(s)?;
            let a = asymptotic_limit(&sp, &kt, lam).map_err(s)?;
            let b = asymptotic_limit(&sp, &again, lam).map_err(s)?;
            Ok(Measured::plain(a, b, 0))
        })));
    }
    Ok(out)
}

type SuiteFn = fn(&RunConfig, bool) -> Result<Vec<Case>, CliError>;

fn suite_fn(name: &str) -> Option<SuiteFn> {
    Some(match name {
        "c-vs-integral" => c_vs_integral,
        "phi-vs-integral" => phi_vs_integral,
        "functional" => functional,
        "series" => series,
        "growth" => growth,
        "eisenstein" => eisenstein,
        "asymptotic" => asymptotic,
        "csigma" => csigma,
        "hs-norm" => hs_norm,
        "small-t" => small_t,
        "eigen" => eigen,
        "cocycle" => cocycle,
        "det-a" => det_a_suite,
        "catalog" => catalog,
        _ => return None,
    })
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let name = cfg.suite.as_deref().ok_or_else(|| CliError::Usage(format!("--suite is required: all, {}", SUITES.join(", "))))?;
    let mut cases = Vec::new();
    if name == "all" {
        for s in SUITES {
            cases.extend(suite_fn(s).expect("listed suite")(cfg, false)?);
        }
    } else {
        let f = suite_fn(name).ok_or_else(|| CliError::Usage(format!("unknown suite {name:?}: all, {}", SUITES.join(", "))))?;
        cases = f(cfg, true)?;
    }
    let results: Vec<Result<Measured, String>> = cases.par_iter().map(|c| (c.eval)()).collect();

    let mut table = Table::new([
        "suite", "case", "reference_re", "reference_im", "value_re", "value_im", "abs_err", "rel_err", "tolerance", "metric",
        "nodes", "pass",
    ]);
    let mut failures = Vec::new();
    for (case, result) in cases.iter().zip(results) {
        let metric = match case.metric {
            Metric::Rel => "rel",
            Metric::Abs => "abs",
            Metric::Upper => "upper",
        };
        let mut row: Vec<Cell> = vec![case.suite.into(), case.name.clone().into()];
        match result {
            Ok(m) => {
                let abs = (m.value - m.reference).norm();
                let scale = m.reference.norm().max(m.scale);
                let rel = if scale > 0.0 { abs / scale } else { abs };
                let measured = match case.metric {
                    Metric::Rel => rel,
                    Metric::Abs => abs,
                    Metric::Upper => m.value.re,
                };
                let within = measured <= case.tolerance;
                let pass = within && m.side_condition.is_ok();
                if !within {
                    failures.push(format!("{} {}: {metric} error {measured:e} exceeds {:e}", case.suite, case.name, case.tolerance));
                }
                if let Err(msg) = &m.side_condition {
                    failures.push(format!("{} {}: {msg}", case.suite, case.name));
                }
                row.extend([
                    m.reference.re.into(),
                    m.reference.im.into(),
                    m.value.re.into(),
                    m.value.im.into(),
                    abs.into(),
                    rel.into(),
                    case.tolerance.into(),
                    metric.into(),
                    Cell::Int(m.nodes as i64),
                    pass.into(),
                ]);
            }
            Err(msg) => {
                failures.push(format!("{} {}: {msg}", case.suite, case.name));
                row.extend(std::iter::repeat_n(Cell::Empty, 6));
                row.extend([case.tolerance.into(), metric.into(), Cell::Empty, false.into()]);
            }
        }
        table.push(row);
    }
    Ok(Report { table, failures })
}
