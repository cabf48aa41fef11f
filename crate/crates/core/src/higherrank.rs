//! Higher-rank composites built from rank-one factors along a reduced word:
//! the spectral chain `λ_j`, the determinant of `A(λ, σ)` on `V^M_δ`, the
//! adjoint identity for `det C_{σ⁻¹}` and the Hilbert–Schmidt norm check.
//!
//! For `σ = σ₁ ⋯ σ_p` reduced, `σ^{(j)} = σ_{j+1} ⋯ σ_p` and
//! `λ_j = ⟨σ^{(j)}λ, α_j⁰⟩`, where `α_j` is the simple root of the letter `σ_j`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cfun::{c_alpha, c_full, c_sigma, CFunctionError};
use crate::complexmath::ComplexScalar;
use crate::models::OracleReport;
use crate::rankone::{c_e, c_lambda_delta, c_sigma_minus, KTypeRankOne, RankOneError, RankOneSpace};
use crate::rootdata::{
    restrict, validate_reduced, weyl_apply, RootDataError, RootDatum, SpectralParam, WeylElement,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HigherRankError {
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    CFunction(#[from] CFunctionError),
    #[error(transparent)]
    RankOne(#[from] RankOneError),
    #[error("factor (j = {j}, i = {i}): {source}")]
    Factor { j: usize, i: usize, source: RankOneError },
    #[error("factor table: {0}")]
    Table(String),
    #[error("c_σ(λ) vanishes or has a pole at {0}")]
    Degenerate(String),
}

/// Per-factor rank-one K-type data `δ(i, j)` for one reduced word.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorKTypeTable {
    word: WeylElement,
    ell: usize,
    entries: BTreeMap<(usize, usize), (RankOneSpace, KTypeRankOne)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorTableFile {
    pub word: Vec<usize>,
    pub entries: Vec<FactorEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorEntry {
    pub j: usize,
    pub i: usize,
    pub m_alpha: u32,
    pub m_2alpha: u32,
    pub d_alpha: f64,
    pub d_2alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
}

const MAX_TABLE_ENTRIES: usize = 4096;

impl FactorKTypeTable {
    /// Checks completeness: every `(j, i)` with `1 ≤ j ≤ p`, `1 ≤ i ≤ ℓ` present once.
    pub fn new(
        word: WeylElement,
        entries: Vec<((usize, usize), RankOneSpace, KTypeRankOne)>,
    ) -> Result<Self, HigherRankError> {
        let p = word.word_len();
        if p == 0 {
            return Err(HigherRankError::Table("empty word".into()));
        }
        if entries.len() > MAX_TABLE_ENTRIES {
            return Err(HigherRankError::Table(format!("more than {MAX_TABLE_ENTRIES} entries")));
        }
        let ell = entries.iter().map(|((_, i), _, _)| *i).max().unwrap_or(0);
        match p.checked_mul(ell) {
            Some(n) if n <= MAX_TABLE_ENTRIES => {}
            _ => return Err(HigherRankError::Table(format!("p·ℓ = {p}·{ell} exceeds {MAX_TABLE_ENTRIES} entries"))),
        }
        let mut map = BTreeMap::new();
        for ((j, i), space, kt) in entries {
            if j == 0 || j > p || i == 0 {
                return Err(HigherRankError::Table(format!("entry (j = {j}, i = {i}) out of range for p = {p}")));
            }
            if map.insert((j, i), (space, kt)).is_some() {
                return Err(HigherRankError::Table(format!("entry (j = {j}, i = {i}) listed twice")));
            }
        }
        if map.len() != p * ell {
            let missing: Vec<String> = (1..=p)
                .flat_map(|j| (1..=ell).map(move |i| (j, i)))
                .filter(|k| !map.contains_key(k))
                .take(16)
                .map(|(j, i)| format!("({j},{i})"))
                .collect();
            return Err(HigherRankError::Table(format!("missing entries {}", missing.join(" "))));
        }
        Ok(Self { word, ell, entries: map })
    }

    /// All factors trivial, `ℓ(δ)` copies per word position.
    pub fn trivial(datum: &RootDatum, word: &WeylElement, ell: usize) -> Result<Self, HigherRankError> {
        let mut entries = Vec::new();
        for (jm1, &letter) in word.word().iter().enumerate() {
            let m = datum.simple_multiplicity(letter)?;
            let space = RankOneSpace::new(m.m_alpha, m.m_2alpha)?;
            for i in 1..=ell {
                entries.push(((jm1 + 1, i), space, KTypeRankOne::trivial()));
            }
        }
        Self::new(word.clone(), entries)
    }

    pub fn from_json_str(text: &str) -> Result<Self, HigherRankError> {
        let file: FactorTableFile =
            serde_json::from_str(text).map_err(|e| HigherRankError::Table(e.to_string()))?;
        file.try_into()
    }

    pub fn to_json_string(&self) -> String {
        let file = FactorTableFile {
            word: self.word.word().to_vec(),
            entries: self
                .entries
                .iter()
                .map(|(&(j, i), (space, kt))| FactorEntry {
                    j,
                    i,
                    m_alpha: space.m_alpha(),
                    m_2alpha: space.m_2alpha(),
                    d_alpha: kt.d_alpha(),
                    d_2alpha: kt.d_2alpha(),
                    r: Some(kt.r()),
                    s: Some(kt.s()),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("plain data serializes")
    }

    pub fn word(&self) -> &WeylElement {
        &self.word
    }

    /// `ℓ(δ) = dim V^M_δ`.
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn entry(&self, j: usize, i: usize) -> Option<&(RankOneSpace, KTypeRankOne)> {
        self.entries.get(&(j, i))
    }

    /// Checks the word against `w` and each entry's multiplicities against
    /// those of the simple root `α_j`.
    pub fn validate_against(&self, datum: &RootDatum, w: &WeylElement) -> Result<(), HigherRankError> {
        if self.word != *w {
            return Err(HigherRankError::Table(format!("table is for word {}, not {}", self.word, w)));
        }
        for (&(j, i), (space, _)) in &self.entries {
            let m = datum.simple_multiplicity(w.word()[j - 1])?;
            if (m.m_alpha, m.m_2alpha) != (space.m_alpha(), space.m_2alpha()) {
                return Err(HigherRankError::Table(format!(
                    "entry (j = {j}, i = {i}) has multiplicities ({}, {}), root α_{j} has ({}, {})",
                    space.m_alpha(),
                    space.m_2alpha(),
                    m.m_alpha,
                    m.m_2alpha
                )));
            }
        }
        Ok(())
    }
}

impl TryFrom<FactorTableFile> for FactorKTypeTable {
    type Error = HigherRankError;

    fn try_from(file: FactorTableFile) -> Result<Self, Self::Error> {
        if file.entries.len() > MAX_TABLE_ENTRIES || file.word.len() > 256 {
            return Err(HigherRankError::Table("table too large".into()));
        }
        let mut entries = Vec::with_capacity(file.entries.len());
        for e in &file.entries {
            let space = RankOneSpace::new(e.m_alpha, e.m_2alpha)
                .map_err(|source| HigherRankError::Factor { j: e.j, i: e.i, source })?;
            let kt = match (e.r, e.s) {
                (Some(r), Some(s)) => KTypeRankOne::new(&space, e.d_alpha, e.d_2alpha, r, s),
                _ => KTypeRankOne::from_d(&space, e.d_alpha, e.d_2alpha),
            }
            .map_err(|source| HigherRankError::Factor { j: e.j, i: e.i, source })?;
            entries.push(((e.j, e.i), space, kt));
        }
        Self::new(WeylElement::from_word(file.word), entries)
    }
}

/// `[λ_1, …, λ_p]` with `λ_j = ⟨σ^{(j)}λ, α_j⁰⟩`.
pub fn lambda_chain(datum: &RootDatum, w: &WeylElement, lam: &SpectralParam) -> Result<Vec<ComplexScalar>, HigherRankError> {
    validate_reduced(datum, w)?;
    let mut out = Vec::with_capacity(w.word_len());
    for j in 1..=w.word_len() {
        let moved = weyl_apply(datum, &w.tail(j), lam)?;
        let root = datum.simple_root_index(w.word()[j - 1])?;
        out.push(restrict(datum, &moved, root)?);
    }
    Ok(out)
}

/// `Π_j c_{α_j}(λ_j)`, the cocycle evaluation of `c_σ(λ)`.
pub fn c_sigma_chain(datum: &RootDatum, w: &WeylElement, lam: &SpectralParam) -> Result<ComplexScalar, HigherRankError> {
    let chain = lambda_chain(datum, w, lam)?;
    let mut acc = ComplexScalar::new(1.0, 0.0);
    for (j, lj) in chain.iter().enumerate() {
        let m = datum.simple_multiplicity(w.word()[j])?;
        acc *= c_alpha(*lj, m.m_alpha, m.m_2alpha)?.into_finite()?;
    }
    Ok(acc)
}

fn factor_ratio(table: &FactorKTypeTable, j: usize, i: usize, lj: ComplexScalar) -> Result<ComplexScalar, HigherRankError> {
    let (space, kt) = table.entry(j, i).expect("table validated complete");
    let wrap = |source| HigherRankError::Factor { j, i, source };
    let plus = c_lambda_delta(space, kt, lj).map_err(wrap)?;
    if plus == ComplexScalar::new(0.0, 0.0) {
        return Err(wrap(RankOneError::ZeroDenominator(format!("c_(λ_j,δ) = 0 at λ_j = {lj}"))));
    }
    let minus = c_lambda_delta(space, kt, -lj).map_err(wrap)?;
    Ok(minus / plus)
}

/// `det A(λ, σ)|_{V^M_δ} = c_σ(λ)^ℓ Π_j Π_i c_{−λ_j,δ(i,j)} / c_{λ_j,δ(i,j)}`.
pub fn det_a(
    datum: &RootDatum,
    w: &WeylElement,
    lam: &SpectralParam,
    table: &FactorKTypeTable,
) -> Result<ComplexScalar, HigherRankError> {
    table.validate_against(datum, w)?;
    let chain = lambda_chain(datum, w, lam)?;
    let cs = c_sigma(datum, w, lam)?.into_finite()?;
    let mut acc = cs.powu(table.ell() as u32);
    for (jm1, lj) in chain.iter().enumerate() {
        for i in 1..=table.ell() {
            acc *= factor_ratio(table, jm1 + 1, i, *lj)?;
        }
    }
    Ok(acc)
}

/// The same determinant as a product of rank-one `C_σ(−λ_j)` over every
/// `(j, i)`, without the global `c_σ`.
pub fn det_a_factorwise(
    datum: &RootDatum,
    w: &WeylElement,
    lam: &SpectralParam,
    table: &FactorKTypeTable,
) -> Result<ComplexScalar, HigherRankError> {
    table.validate_against(datum, w)?;
    let chain = lambda_chain(datum, w, lam)?;
    let mut acc = ComplexScalar::new(1.0, 0.0);
    for (jm1, lj) in chain.iter().enumerate() {
        for i in 1..=table.ell() {
            let (space, kt) = table.entry(jm1 + 1, i).expect("table validated complete");
            acc *= c_sigma_minus(space, kt, *lj).map_err(|source| HigherRankError::Factor { j: jm1 + 1, i, source })?;
        }
    }
    Ok(acc)
}

/// `det C_{σ⁻¹}(−σλ) = (c(−λ)/c_σ(−λ))^ℓ · conj(det A(λ̄, σ))`, from the
/// adjoint formula for `A(λ̄, σ)`.
pub fn det_c_sigma_inverse(
    datum: &RootDatum,
    w: &WeylElement,
    lam: &SpectralParam,
    table: &FactorKTypeTable,
) -> Result<ComplexScalar, HigherRankError> {
    let minus = lam.scale(ComplexScalar::new(-1.0, 0.0));
    let c_minus = c_full(datum, &minus)?.into_finite()?;
    let cs_minus = c_sigma(datum, w, &minus)?.into_finite()?;
    if cs_minus == ComplexScalar::new(0.0, 0.0) {
        return Err(HigherRankError::Degenerate("c_σ(−λ) = 0".into()));
    }
    let det = det_a(datum, w, &lam.conj(), table)?;
    Ok((c_minus / cs_minus).powu(table.ell() as u32) * det.conj())
}

/// `‖C_σ(λ)‖² = |c(λ)|² ℓ(δ)` for real `Λ`, with `ℓ(δ) = 1` in rank one.
/// `closed_form` holds `|c(Λ)|²`, `quadrature` holds `|C_σ(−Λ)|²`.
pub fn hs_norm_check(space: &RankOneSpace, kt: &KTypeRankOne, lam_real: f64) -> Result<OracleReport, HigherRankError> {
    if !lam_real.is_finite() {
        return Err(HigherRankError::RankOne(RankOneError::Domain(format!("Λ = {lam_real} is not finite"))));
    }
    let lam = ComplexScalar::new(lam_real, 0.0);
    let lhs = c_sigma_minus(space, kt, lam)?.norm_sqr();
    let rhs = c_e(space, lam)?.norm_sqr() * kt.ell() as f64;
    Ok(OracleReport::new(ComplexScalar::new(rhs, 0.0), ComplexScalar::new(lhs, 0.0), 0))
}
