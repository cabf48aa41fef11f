use rayon::prelude::*;
use spherical_core::cfun::{c_full, c_sigma, non_simple_witnesses, SIMPLE_TOLERANCE};
use spherical_core::complexmath::ComplexScalar;
use spherical_core::higherrank::{det_a as det_a_direct, det_a_factorwise, det_c_sigma_inverse, FactorKTypeTable};
use spherical_core::models::{quad_eisenstein_sl2, quad_phi_k};
use spherical_core::rankone::{
    asymptotic_limit, c_e, c_lambda_delta, c_sigma_minus, eisenstein_factor, hc_series_eval, limit_large_t, phi_tau,
    small_t_ratio, KTypeRankOne, RankOneSpace,
};
use spherical_core::rootdata::{validate_reduced, SpectralParam, WeylElement};

use crate::parse::{format_lambda, Methods};
use crate::table::{Cell, Table};
use crate::{CliError, Report, RunConfig, Space};

fn complex_cells(z: ComplexScalar) -> [Cell; 2] {
    [Cell::Num(z.re), Cell::Num(z.im)]
}

fn rel_err(a: ComplexScalar, reference: ComplexScalar) -> f64 {
    let d = (a - reference).norm();
    let s = reference.norm();
    if s > 0.0 {
        d / s
    } else {
        d
    }
}

/// Evaluates rows in parallel; output order follows `items`. A failed row
/// keeps its key cells, leaves the rest empty and is reported.
fn assemble<I, K, E>(columns: Vec<String>, items: &[I], key: K, eval: E) -> Report
where
    I: Sync,
    K: Fn(&I) -> Vec<Cell> + Sync,
    E: Fn(&I) -> Result<Vec<Cell>, String> + Sync,
{
    let results: Vec<(Vec<Cell>, Result<Vec<Cell>, String>)> = items.par_iter().map(|it| (key(it), eval(it))).collect();
    let mut table = Table::new(columns);
    let mut failures = Vec::new();
    let width = table.columns.len();
    for (k, (mut cells, result)) in results.into_iter().enumerate() {
        match result {
            Ok(values) => cells.extend(values),
            Err(msg) => {
                let label: Vec<String> = cells
                    .iter()
                    .zip(&table.columns)
                    .map(|(c, name)| match c {
                        Cell::Text(s) => format!("{name}={s}"),
                        Cell::Num(x) => format!("{name}={x}"),
                        _ => String::new(),
                    })
                    .collect();
                failures.push(format!("row {} ({}): {msg}", k + 1, label.join(", ")));
                cells.resize(width, Cell::Empty);
            }
        }
        table.push(cells);
    }
    Report { table, failures }
}

fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn c_eval(cfg: &RunConfig) -> Result<Report, CliError> {
    let datum = cfg.datum()?;
    if let Some(w) = &cfg.word {
        validate_reduced(&datum, w).map_err(|e| CliError::Usage(format!("--word: {e}")))?;
    }
    let lambdas = cfg.require_lambdas()?;
    Ok(assemble(
        cols(&["lambda", "c_value_re", "c_value_im", "pole_flag"]),
        lambdas,
        |lam| vec![format_lambda(lam).into()],
        |lam| {
            let v = match &cfg.word {
                Some(w) => c_sigma(&datum, w, lam),
                None => c_full(&datum, lam),
            }
            .map_err(|e| e.to_string())?;
            let [re, im] = complex_cells(v.value);
            Ok(vec![re, im, v.pole_flag.into()])
        },
    ))
}

pub fn csigma_eval(cfg: &RunConfig) -> Result<Report, CliError> {
    let space = cfg.rank_one()?;
    let kt = cfg.ktype_on(&space)?;
    let lambdas = cfg.require_lambdas()?;
    Ok(assemble(
        cols(&[
            "lambda", "r", "s", "csigma_minus_re", "csigma_minus_im", "c_delta_re", "c_delta_im", "c_minus_delta_re",
            "c_minus_delta_im", "c_re", "c_im",
        ]),
        lambdas,
        |lam| vec![format_lambda(lam).into(), Cell::Int(kt.r()), Cell::Int(kt.s() as i64)],
        |lam| {
            let l = lam.coords()[0];
            let e = |e: spherical_core::rankone::RankOneError| e.to_string();
            let mut cells = Vec::new();
            cells.extend(complex_cells(c_sigma_minus(&space, &kt, l).map_err(e)?));
            cells.extend(complex_cells(c_lambda_delta(&space, &kt, l).map_err(e)?));
            cells.extend(complex_cells(c_lambda_delta(&space, &kt, -l).map_err(e)?));
            cells.extend(complex_cells(c_e(&space, l).map_err(e)?));
            Ok(cells)
        },
    ))
}

/// How the quadrature column of `phi-eval` is computed, if it can be.
enum PhiQuadrature {
    Zonal(usize),
    Character { char_n: i64, factor: f64 },
}

fn phi_quadrature(space: &RankOneSpace, kt: &KTypeRankOne) -> Result<PhiQuadrature, CliError> {
    if space.m_2alpha() != 0 || space.m_alpha() > 63 {
        return Err(CliError::Usage("quadrature needs H^n with n ≤ 64".into()));
    }
    if kt.is_trivial() {
        return Ok(PhiQuadrature::Zonal(space.m_alpha() as usize + 1));
    }
    if space.m_alpha() != 1 {
        return Err(CliError::Usage("quadrature for a nontrivial K-type is available on H² only".into()));
    }
    let factor = eisenstein_factor(space, kt).map_err(|e| CliError::Eval(e.to_string()))?;
    Ok(PhiQuadrature::Character { char_n: 2 * kt.s() as i64, factor })
}

pub fn phi_eval(cfg: &RunConfig) -> Result<Report, CliError> {
    let space = cfg.rank_one()?;
    let kt = cfg.ktype_on(&space)?;
    let lambdas = cfg.require_lambdas()?;
    let ts = cfg.require_ts()?;
    let methods = cfg.methods.unwrap_or(Methods { closed: true, series: false, quadrature: false });
    if methods.count() == 0 {
        return Err(CliError::Usage("--methods is empty".into()));
    }
    if methods.series && !kt.is_trivial() {
        return Err(CliError::Usage("the series method is available for the trivial K-type only".into()));
    }
    let quad = if methods.quadrature { Some(phi_quadrature(&space, &kt)?) } else { None };

    let active: Vec<&str> = [("closed", methods.closed), ("series", methods.series), ("quadrature", methods.quadrature)]
        .iter()
        .filter(|(_, on)| *on)
        .map(|(n, _)| *n)
        .collect();
    let value_cols: Vec<String> = active.iter().flat_map(|m| [format!("{m}_re"), format!("{m}_im")]).collect();
    let mut err_cols = Vec::new();
    for i in 0..active.len() {
        for j in i + 1..active.len() {
            err_cols.push(format!("err_{}_{}", active[i], active[j]));
        }
    }
    let mut columns = cols(&["t", "lambda"]);
    columns.extend(value_cols);
    columns.extend(err_cols);

    let items: Vec<(SpectralParam, f64)> = lambdas.iter().flat_map(|l| ts.iter().map(move |&t| (l.clone(), t))).collect();
    Ok(assemble(
        columns,
        &items,
        |(lam, t)| vec![Cell::Num(*t), format_lambda(lam).into()],
        |(lam, t)| {
            let l = lam.coords()[0];
            let mut values: Vec<Option<ComplexScalar>> = Vec::new();
            if methods.closed {
                values.push(Some(phi_tau(&space, &kt, l, *t).map_err(|e| e.to_string())?));
            }
            if methods.series {
                values.push(if *t > 0.0 {
                    Some(hc_series_eval(&space, l, *t, cfg.truncation).map_err(|e| e.to_string())?)
                } else {
                    None
                });
            }
            if let Some(q) = &quad {
                let v = match q {
                    PhiQuadrature::Zonal(n) => quad_phi_k(*n, l, *t, &cfg.spec).map(|r| r.value),
                    PhiQuadrature::Character { char_n, factor } => {
                        quad_eisenstein_sl2(*char_n, l, *t, &cfg.spec).map(|r| r.value * *factor)
                    }
                }
                .map_err(|e| e.to_string())?;
                values.push(Some(v));
            }
            let mut cells = Vec::new();
            for v in &values {
                match v {
                    Some(z) => cells.extend(complex_cells(*z)),
                    None => cells.extend([Cell::Empty, Cell::Empty]),
                }
            }
            for i in 0..values.len() {
                for j in i + 1..values.len() {
                    cells.push(match (values[i], values[j]) {
                        (Some(a), Some(b)) => Cell::Num((a - b).norm()),
                        _ => Cell::Empty,
                    });
                }
            }
            Ok(cells)
        },
    ))
}

pub fn simple_check(cfg: &RunConfig) -> Result<Report, CliError> {
    let datum = cfg.datum()?;
    let lambdas = cfg.require_lambdas()?;
    Ok(assemble(
        cols(&["lambda", "simple", "witnesses"]),
        lambdas,
        |lam| vec![format_lambda(lam).into()],
        |lam| {
            let w = non_simple_witnesses(&datum, lam, SIMPLE_TOLERANCE).map_err(|e| e.to_string())?;
            let text: Vec<String> = w.iter().map(|x| format!("root{}:{}", x.root_index + 1, x.pole)).collect();
            Ok(vec![w.is_empty().into(), text.join(" ").into()])
        },
    ))
}

fn factor_table(cfg: &RunConfig) -> Result<(WeylElement, FactorKTypeTable), CliError> {
    let datum = cfg.datum()?;
    let table = match (&cfg.table, &cfg.space) {
        (Some(t), _) => t.clone(),
        (None, Some(Space::RankOne(space))) => {
            let kt = cfg.ktype_on(space)?;
            FactorKTypeTable::new(WeylElement::from_word(vec![1]), vec![((1, 1), *space, kt)])
                .map_err(|e| CliError::Usage(e.to_string()))?
        }
        (None, _) => {
            let w = cfg.word.clone().ok_or_else(|| CliError::Usage("det-a needs --table or --word".into()))?;
            FactorKTypeTable::trivial(&datum, &w, 1).map_err(|e| CliError::Usage(e.to_string()))?
        }
    };
    let w = cfg.word.clone().unwrap_or_else(|| table.word().clone());
    table.validate_against(&datum, &w).map_err(|e| CliError::Usage(e.to_string()))?;
    validate_reduced(&datum, &w).map_err(|e| CliError::Usage(format!("word {w}: {e}")))?;
    Ok((w, table))
}

pub fn det_a(cfg: &RunConfig) -> Result<Report, CliError> {
    let datum = cfg.datum()?;
    let (w, table) = factor_table(cfg)?;
    let lambdas = cfg.require_lambdas()?;
    Ok(assemble(
        cols(&[
            "lambda", "det_a_re", "det_a_im", "factorwise_re", "factorwise_im", "rel_diff", "det_c_inverse_re",
            "det_c_inverse_im",
        ]),
        lambdas,
        |lam| vec![format_lambda(lam).into()],
        |lam| {
            let e = |e: spherical_core::higherrank::HigherRankError| e.to_string();
            let direct = det_a_direct(&datum, &w, lam, &table).map_err(e)?;
            let factorwise = det_a_factorwise(&datum, &w, lam, &table).map_err(e)?;
            let adjoint = det_c_sigma_inverse(&datum, &w, lam, &table).map_err(e)?;
            let mut cells = Vec::new();
            cells.extend(complex_cells(direct));
            cells.extend(complex_cells(factorwise));
            cells.push(Cell::Num(rel_err(factorwise, direct)));
            cells.extend(complex_cells(adjoint));
            Ok(cells)
        },
    ))
}

pub fn limits(cfg: &RunConfig) -> Result<Report, CliError> {
    let space = cfg.rank_one()?;
    let kt = cfg.ktype_on(&space)?;
    let lambdas = cfg.require_lambdas()?;
    let ts = cfg.require_ts()?;
    let items: Vec<(SpectralParam, f64)> = lambdas.iter().flat_map(|l| ts.iter().map(move |&t| (l.clone(), t))).collect();
    Ok(assemble(
        cols(&[
            "t", "lambda", "large_t_re", "large_t_im", "limit_re", "limit_im", "large_t_rel_err", "small_t_re",
            "small_t_im", "small_t_target_re", "small_t_target_im", "small_t_rel_err",
        ]),
        &items,
        |(lam, t)| vec![Cell::Num(*t), format_lambda(lam).into()],
        |(lam, t)| {
            let l = lam.coords()[0];
            let e = |e: spherical_core::rankone::RankOneError| e.to_string();
            let large = limit_large_t(&space, &kt, l, *t).map_err(e)?;
            let limit = asymptotic_limit(&space, &kt, l).map_err(e)?;
            let target = c_lambda_delta(&space, &kt, l).map_err(e)? / c_lambda_delta(&space, &kt, -l).map_err(e)?;
            let mut cells = Vec::new();
            cells.extend(complex_cells(large));
            cells.extend(complex_cells(limit));
            cells.push(Cell::Num(rel_err(large, limit)));
            if *t > 0.0 {
                let small = small_t_ratio(&space, &kt, l, *t).map_err(e)?;
                cells.extend(complex_cells(small));
                cells.extend(complex_cells(target));
                cells.push(Cell::Num(rel_err(small, target)));
            } else {
                cells.extend([Cell::Empty, Cell::Empty]);
                cells.extend(complex_cells(target));
                cells.push(Cell::Empty);
            }
            Ok(cells)
        },
    ))
}
