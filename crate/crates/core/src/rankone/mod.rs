//! Rank-one spaces: K-type parameters `(r, s)`, the hypergeometric closed form
//! of the spherical function of K-type δ, its Harish-Chandra series and the
//! scalar C-functions.
//!
//! Throughout, `α(H) = 1` and a spectral parameter is the complex number
//! `Λ = λ(H)`, so `⟨iλ, α₀⟩ = iΛ` and `ρ(H) = ½m_α + m_2α`.

mod catalog;
mod closed_form;
mod series;

pub use catalog::{CatalogRecord, KTypeCatalog, KTypeSelector};
pub use closed_form::{
    asymptotic_limit, c_e, c_lambda_delta, c_sigma_minus, eisenstein_entry, eisenstein_factor,
    limit_large_t, phi_tau, second_coefficient_diagnostic, small_t_ratio,
};
pub use series::{
    hc_series_eval, hc_series_eval_with_tail, hc_series_gammas, SeriesCoefficients,
    SeriesEvaluation, DEFAULT_TRUNCATION, RESONANCE_TOLERANCE,
};

use crate::cfun::CFunctionError;
use crate::complexmath::{ComplexScalar, SpecialFunctionError};
use crate::rootdata::{RootDataError, RootDatum};

const INTEGER_TOLERANCE: f64 = 1e-9;
const RESIDUAL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RankOneError {
    #[error("invalid rank-one space: {0}")]
    InvalidSpace(String),
    #[error("no integer root: {0}")]
    NoIntegerRoot(String),
    #[error("inconsistent K-type: {0}")]
    InconsistentKType(String),
    #[error("resonant recursion denominator n(n - 2iΛ) at n = {n} (Λ = {lam})")]
    Resonance { n: usize, lam: ComplexScalar },
    #[error("precondition violated: {0}")]
    Domain(String),
    #[error("denominator vanishes: {0}")]
    ZeroDenominator(String),
    #[error("unknown K-type {0:?}")]
    UnknownKType(String),
    #[error("K-type catalog: {0}")]
    Catalog(String),
    #[error(transparent)]
    CFunction(#[from] CFunctionError),
    #[error(transparent)]
    Special(#[from] SpecialFunctionError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

/// A rank-one space given by its root multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankOneSpace {
    m_alpha: u32,
    m_2alpha: u32,
}

impl RankOneSpace {
    pub fn new(m_alpha: u32, m_2alpha: u32) -> Result<Self, RankOneError> {
        if m_alpha == 0 || m_alpha > 1000 || m_2alpha > 1000 {
            return Err(RankOneError::InvalidSpace(format!(
                "(m_α, m_2α) = ({m_alpha}, {m_2alpha}); need 1 ≤ m_α ≤ 1000, m_2α ≤ 1000"
            )));
        }
        Ok(Self { m_alpha, m_2alpha })
    }

    /// Real hyperbolic space `H^n`.
    pub fn hyperbolic(n: u32) -> Result<Self, RankOneError> {
        if n < 2 {
            return Err(RankOneError::InvalidSpace(format!("H^{n} needs n >= 2")));
        }
        Self::new(n - 1, 0)
    }

    pub fn m_alpha(&self) -> u32 {
        self.m_alpha
    }

    pub fn m_2alpha(&self) -> u32 {
        self.m_2alpha
    }

    /// `ρ(H) = ½m_α + m_2α`.
    pub fn rho(&self) -> f64 {
        0.5 * self.m_alpha as f64 + self.m_2alpha as f64
    }

    /// `n = dim X = m_α + m_2α + 1`.
    pub fn dim(&self) -> u32 {
        self.m_alpha + self.m_2alpha + 1
    }

    pub fn datum(&self) -> RootDatum {
        RootDatum::rank_one(self.m_alpha, self.m_2alpha).expect("validated multiplicities")
    }

    /// First-order coefficient of the radial Laplacian,
    /// `m_α coth t + 2 m_2α coth 2t`.
    pub fn radial_coefficient(&self, t: f64) -> f64 {
        self.m_alpha as f64 / t.tanh() + 2.0 * self.m_2alpha as f64 / (2.0 * t).tanh()
    }

    /// Laplace eigenvalue `−(Λ² + ρ(H)²)`.
    pub fn eigenvalue(&self, lam: ComplexScalar) -> ComplexScalar {
        -(lam * lam + self.rho() * self.rho())
    }
}

/// A rank-one K-type through the scalars `(d_α, d_2α)` and integers `(r, s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KTypeRankOne {
    d_alpha: f64,
    d_2alpha: f64,
    r: i64,
    s: u32,
}

fn integer_roots(linear: f64, constant: f64) -> Result<Vec<i64>, String> {
    // x² + linear·x + constant = 0
    let disc = linear * linear - 4.0 * constant;
    let scale = 1.0 + linear.abs() + constant.abs().sqrt();
    if disc < -INTEGER_TOLERANCE * scale * scale {
        return Err(format!("x² + {linear}x + {constant} has no real root"));
    }
    let sq = disc.max(0.0).sqrt();
    let mut out = Vec::new();
    for x in [(-linear - sq) / 2.0, (-linear + sq) / 2.0] {
        let n = x.round();
        if (x - n).abs() <= INTEGER_TOLERANCE * (1.0 + n.abs()) && n.abs() < 1e9 && !out.contains(&(n as i64)) {
            out.push(n as i64);
        }
    }
    if out.is_empty() {
        Err(format!("x² + {linear}x + {constant} has no integer root"))
    } else {
        Ok(out)
    }
}

/// Solves `s(s + m_α + m_2α − 1) = −d_α − ¼d_2α` for the nonnegative root and
/// `r(r + m_2α − 1) = −¼d_2α` for `r ≤ s`, preferring the smallest
/// nonnegative admissible root.
pub fn solve_rs(space: &RankOneSpace, d_alpha: f64, d_2alpha: f64) -> Result<(i64, u32), RankOneError> {
    if !(d_alpha.is_finite() && d_2alpha.is_finite()) {
        return Err(RankOneError::NoIntegerRoot("non-finite d values".into()));
    }
    let ma = space.m_alpha as f64;
    let m2a = space.m_2alpha as f64;
    let s_roots = integer_roots(ma + m2a - 1.0, d_alpha + 0.25 * d_2alpha).map_err(RankOneError::NoIntegerRoot)?;
    let s = s_roots
        .into_iter()
        .filter(|&x| x >= 0)
        .max()
        .ok_or_else(|| RankOneError::NoIntegerRoot("no nonnegative root for s".into()))?;
    let r_roots = integer_roots(m2a - 1.0, 0.25 * d_2alpha).map_err(RankOneError::NoIntegerRoot)?;
    let admissible: Vec<i64> = r_roots.into_iter().filter(|&x| x <= s).collect();
    let r = admissible
        .iter()
        .copied()
        .filter(|&x| x >= 0)
        .min()
        .or_else(|| admissible.iter().copied().max())
        .ok_or_else(|| RankOneError::NoIntegerRoot(format!("no root r ≤ s = {s}")))?;
    Ok((r, u32::try_from(s).map_err(|_| RankOneError::NoIntegerRoot("s too large".into()))?))
}

impl KTypeRankOne {
    pub fn trivial() -> Self {
        Self { d_alpha: 0.0, d_2alpha: 0.0, r: 0, s: 0 }
    }

    /// Builds a K-type from all four parameters, checking both quadratics.
    pub fn new(space: &RankOneSpace, d_alpha: f64, d_2alpha: f64, r: i64, s: u32) -> Result<Self, RankOneError> {
        let kt = Self { d_alpha, d_2alpha, r, s };
        let (res_r, res_s) = kt.residuals(space);
        let scale = 1.0 + d_alpha.abs() + d_2alpha.abs();
        if !(res_r.abs() <= RESIDUAL_TOLERANCE * scale && res_s.abs() <= RESIDUAL_TOLERANCE * scale) {
            return Err(RankOneError::InconsistentKType(format!(
                "(r, s) = ({r}, {s}) leaves residuals {res_r:e}, {res_s:e} for (d_α, d_2α) = ({d_alpha}, {d_2alpha})"
            )));
        }
        if r > s as i64 {
            return Err(RankOneError::InconsistentKType(format!("r = {r} exceeds s = {s}")));
        }
        Ok(kt)
    }

    /// The K-type determined by `(d_α, d_2α)`, with `(r, s)` from [`solve_rs`].
    pub fn from_d(space: &RankOneSpace, d_alpha: f64, d_2alpha: f64) -> Result<Self, RankOneError> {
        let (r, s) = solve_rs(space, d_alpha, d_2alpha)?;
        Self::new(space, d_alpha, d_2alpha, r, s)
    }

    /// The K-type with prescribed `(r, s)`; `(d_α, d_2α)` are read off the quadratics.
    pub fn from_rs(space: &RankOneSpace, r: i64, s: u32) -> Result<Self, RankOneError> {
        let ma = space.m_alpha as f64;
        let m2a = space.m_2alpha as f64;
        let rf = r as f64;
        let sf = s as f64;
        let d_2alpha = -4.0 * rf * (rf + m2a - 1.0);
        let d_alpha = -sf * (sf + ma + m2a - 1.0) - 0.25 * d_2alpha;
        Self::new(space, d_alpha, d_2alpha, r, s)
    }

    pub fn d_alpha(&self) -> f64 {
        self.d_alpha
    }

    pub fn d_2alpha(&self) -> f64 {
        self.d_2alpha
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn is_trivial(&self) -> bool {
        self.r == 0 && self.s == 0
    }

    /// `ℓ(δ) = dim V^M_δ`, always 1 in rank one.
    pub fn ell(&self) -> usize {
        1
    }

    /// Residuals of the `r` and `s` quadratics.
    pub fn residuals(&self, space: &RankOneSpace) -> (f64, f64) {
        let ma = space.m_alpha as f64;
        let m2a = space.m_2alpha as f64;
        let r = self.r as f64;
        let s = self.s as f64;
        (
            r * (r + m2a - 1.0) + 0.25 * self.d_2alpha,
            s * (s + ma + m2a - 1.0) + self.d_alpha + 0.25 * self.d_2alpha,
        )
    }
}
