//! Command-line front end: evaluation grids, verification suites and
//! CSV/JSON reports.
//!
//! Exit codes: 0 success, 1 evaluation or verification failure, 2 usage or
//! configuration error.

mod commands;
pub mod parse;
pub mod table;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spherical_core::complexmath::ComplexScalar;
use spherical_core::higherrank::FactorKTypeTable;
use spherical_core::models::{QuadratureScheme, QuadratureSpec};
use spherical_core::rankone::{KTypeCatalog, KTypeRankOne, KTypeSelector, RankOneSpace};
use spherical_core::rootdata::{RootDatum, SpectralParam, WeylElement};

use parse::{parse_grid, parse_lambda, parse_methods, parse_space, parse_word, rank_one_of, Methods, SpaceSpec};
use table::{Format, Table};

pub use verify::SUITES;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Eval(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Eval(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "spherical", version, about = "Evaluate c-functions and spherical functions of K-type; run verification suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// c(λ) (or c_σ(λ) with --word) on a grid of λ.
    CEval,
    /// Rank-one C_σ(−λ) = c_{−λ,δ}/c_{λ,δ} · c(λ) for a K-type.
    CsigmaEval,
    /// φ_{λ,δ}(a_t) by closed form, series and quadrature side by side.
    PhiEval,
    /// Simplicity of λ with the offending Gamma arguments.
    SimpleCheck,
    /// Run a verification suite (or `all`).
    Verify,
    /// det A(λ, σ) on V^M_δ from a factor K-type table, two ways.
    DetA,
    /// Large-t and small-t limits against their predicted values.
    Limits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    GaussLegendre,
    TanhSinh,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// h<n> | hn:<n> | rankone:<m_a>,<m_2a> | a2:<m> | b2:<l>,<s> | bc2:<l>,<s>,<2s> | datum file.
    #[arg(long, global = true)]
    pub space: Option<String>,
    /// Root-datum JSON file (alternative to --space).
    #[arg(long, global = true)]
    pub datum: Option<PathBuf>,
    /// Spectral parameter `re,im` (higher rank: coordinates separated by `;`). Repeatable.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Vec<String>,
    /// Real parts `start:stop:count`; the imaginary part comes from --im.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda_grid: Option<String>,
    /// Imaginary part for --lambda-grid.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub im: Option<f64>,
    /// Radial parameter t. Repeatable.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Vec<f64>,
    /// t values `start:stop:count`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t_grid: Option<String>,
    /// trivial | s<S>r<R> | chi<N> | d:<d_a>,<d_2a> | catalog name.
    #[arg(long, global = true)]
    pub ktype: Option<String>,
    /// K-type catalog JSON; records are checked when first used
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Factor K-type table JSON for det-a.
    #[arg(long, global = true)]
    pub table: Option<PathBuf>,
    /// Reduced word, e.g. `1,2,1`.
    #[arg(long, global = true)]
    pub word: Option<String>,
    /// Quadrature absolute tolerance
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    /// Quadrature relative tolerance
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub scheme: Option<SchemeArg>,
    /// closed,series,quadrature (phi-eval).
    #[arg(long, global = true)]
    pub methods: Option<String>,
    /// Suite name for verify, or `all`.
    #[arg(long, global = true)]
    pub suite: Option<String>,
    /// Harish-Chandra series truncation.
    #[arg(long, global = true, default_value_t = 40)]
    pub truncation: usize,
    /// JSON is an array of objects keyed by the CSV column names
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the table here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    RankOne(RankOneSpace),
    Datum(RootDatum),
}

/// Validated options.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub space: Option<Space>,
    pub lambdas: Vec<SpectralParam>,
    pub ts: Vec<f64>,
    pub ktype: Option<String>,
    pub catalog: Option<KTypeCatalog>,
    pub table: Option<FactorKTypeTable>,
    pub word: Option<WeylElement>,
    pub spec: QuadratureSpec,
    pub methods: Option<Methods>,
    pub suite: Option<String>,
    pub truncation: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

fn read(path: &PathBuf, what: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{what} {}: {e}", path.display())))
}

fn load_datum(path: &PathBuf) -> Result<RootDatum, CliError> {
    RootDatum::from_json_str(&read(path, "datum")?).map_err(|e| CliError::Usage(format!("datum {}: {e}", path.display())))
}

impl RunConfig {
    pub fn from_options(o: &Options) -> Result<Self, CliError> {
        let space = match (&o.space, &o.datum) {
            (Some(_), Some(_)) => return Err(CliError::Usage("give exactly one of --space and --datum".into())),
            (Some(text), None) => Some(match parse_space(text)? {
                SpaceSpec::RankOne(s) => Space::RankOne(s),
                SpaceSpec::Datum(d) => Space::Datum(d),
                SpaceSpec::File(p) => Space::Datum(load_datum(&p)?),
            }),
            (None, Some(p)) => Some(Space::Datum(load_datum(p)?)),
            (None, None) => None,
        };
        let space = space.map(|s| match s {
            Space::Datum(d) => rank_one_of(&d).map(Space::RankOne).unwrap_or(Space::Datum(d)),
            other => other,
        });

        let mut lambdas = o.lambda.iter().map(|s| parse_lambda(s)).collect::<Result<Vec<_>, _>>()?;
        match (&o.lambda_grid, o.im) {
            (Some(g), im) => {
                let im = im.unwrap_or(0.0);
                if !im.is_finite() {
                    return Err(CliError::Usage("--im must be finite".into()));
                }
                lambdas.extend(parse_grid(g)?.into_iter().map(|re| SpectralParam::rank_one(ComplexScalar::new(re, im))));
            }
            (None, Some(_)) => return Err(CliError::Usage("--im needs --lambda-grid".into())),
            (None, None) => {}
        }
        if let Some(space) = &space {
            let rank = match space {
                Space::RankOne(_) => 1,
                Space::Datum(d) => d.rank(),
            };
            if let Some(bad) = lambdas.iter().find(|l| l.len() != rank) {
                return Err(CliError::Usage(format!(
                    "lambda {} has {} coordinates, the space has rank {rank}",
                    parse::format_lambda(bad),
                    bad.len()
                )));
            }
        }

        let mut ts = o.t.clone();
        if let Some(g) = &o.t_grid {
            ts.extend(parse_grid(g)?);
        }
        if let Some(bad) = ts.iter().find(|t| !t.is_finite() || **t < 0.0) {
            return Err(CliError::Usage(format!("t = {bad} must be finite and non-negative")));
        }

        let catalog = match &o.catalog {
            Some(p) => Some(
                KTypeCatalog::from_json_str(&read(p, "catalog")?)
                    .map_err(|e| CliError::Usage(format!("catalog {}: {e}", p.display())))?,
            ),
            None => None,
        };
        let table = match &o.table {
            Some(p) => Some(
                FactorKTypeTable::from_json_str(&read(p, "table")?)
                    .map_err(|e| CliError::Usage(format!("table {}: {e}", p.display())))?,
            ),
            None => None,
        };
        let word = o.word.as_deref().map(parse_word).transpose()?;

        let mut spec = QuadratureSpec::default();
        for (v, name) in [(o.abs_tol, "--abs-tol"), (o.rel_tol, "--rel-tol")] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(CliError::Usage(format!("{name} must be positive")));
                }
            }
        }
        spec = spec.with_tolerances(o.abs_tol.unwrap_or(spec.abs_tol), o.rel_tol.unwrap_or(spec.rel_tol));
        if let Some(s) = o.scheme {
            spec.scheme = match s {
                SchemeArg::GaussLegendre => QuadratureScheme::GaussLegendreComposite,
                SchemeArg::TanhSinh => QuadratureScheme::TanhSinhHalfline,
            };
        }
        spec.validate().map_err(CliError::Usage)?;

        let methods = o.methods.as_deref().map(parse_methods).transpose()?;
        if o.truncation == 0 || o.truncation > 10_000 {
            return Err(CliError::Usage("--truncation must be in 1..=10000".into()));
        }
        Ok(Self {
            space,
            lambdas,
            ts,
            ktype: o.ktype.clone(),
            catalog,
            table,
            word,
            spec,
            methods,
            suite: o.suite.clone(),
            truncation: o.truncation,
            format: o.format,
            out: o.out.clone(),
        })
    }

    pub fn rank_one(&self) -> Result<RankOneSpace, CliError> {
        match &self.space {
            Some(Space::RankOne(s)) => Ok(*s),
            Some(Space::Datum(_)) => Err(CliError::Usage("this command needs a rank-one space".into())),
            None => Err(CliError::Usage("--space is required".into())),
        }
    }

    pub fn datum(&self) -> Result<RootDatum, CliError> {
        match &self.space {
            Some(Space::RankOne(s)) => Ok(s.datum()),
            Some(Space::Datum(d)) => Ok(d.clone()),
            None => Err(CliError::Usage("--space or --datum is required".into())),
        }
    }

    pub fn require_lambdas(&self) -> Result<&[SpectralParam], CliError> {
        if self.lambdas.is_empty() {
            return Err(CliError::Usage("give --lambda or --lambda-grid".into()));
        }
        Ok(&self.lambdas)
    }

    pub fn require_ts(&self) -> Result<&[f64], CliError> {
        if self.ts.is_empty() {
            return Err(CliError::Usage("give --t or --t-grid".into()));
        }
        Ok(&self.ts)
    }

    /// The selected K-type on `space` (trivial when none is given).
    pub fn ktype_on(&self, space: &RankOneSpace) -> Result<KTypeRankOne, CliError> {
        match &self.ktype {
            None => Ok(KTypeRankOne::trivial()),
            Some(text) => resolve_ktype(text, space, self.catalog.as_ref()),
        }
    }
}

/// Unknown names are configuration errors; a catalog record that fails its
/// own consistency check is an evaluation error.
pub fn resolve_ktype(text: &str, space: &RankOneSpace, catalog: Option<&KTypeCatalog>) -> Result<KTypeRankOne, CliError> {
    if let Some(rec) = catalog.and_then(|c| c.find(text.trim(), space)) {
        return rec
            .resolve()
            .map(|(_, kt)| kt)
            .map_err(|e| CliError::Eval(format!("catalog record {:?}: {e}", rec.name)));
    }
    KTypeSelector::parse(text)
        .and_then(|s| s.resolve(space, catalog))
        .map_err(|e| CliError::Usage(format!("ktype {text:?}: {e}")))
}

/// A finished command: the table plus one message per failed row.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    pub failures: Vec<String>,
}

pub fn execute(command: Command, cfg: &RunConfig) -> Result<Report, CliError> {
    match command {
        Command::CEval => commands::c_eval(cfg),
        Command::CsigmaEval => commands::csigma_eval(cfg),
        Command::PhiEval => commands::phi_eval(cfg),
        Command::SimpleCheck => commands::simple_check(cfg),
        Command::DetA => commands::det_a(cfg),
        Command::Limits => commands::limits(cfg),
        Command::Verify => verify::run(cfg),
    }
}

/// Parses, runs and writes; returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = RunConfig::from_options(&cli.opts).and_then(|cfg| {
        let report = execute(cli.command, &cfg)?;
        match &cfg.out {
            Some(path) => {
                let file = fs::File::create(path).map_err(|e| CliError::Usage(format!("--out {}: {e}", path.display())))?;
                report.table.write(cfg.format, std::io::BufWriter::new(file))?;
            }
            None => report.table.write(cfg.format, &mut *stdout)?,
        }
        Ok(report.failures)
    });
    match result {
        Ok(failures) if failures.is_empty() => 0,
        Ok(failures) => {
            for f in &failures {
                let _ = writeln!(stderr, "error: {f}");
            }
            1
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
