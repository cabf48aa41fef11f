//! K-type catalog files and K-type selector strings.
//!
//! A catalog is a JSON array of records
//! `{name, m_alpha, m_2alpha, d_alpha, d_2alpha, r?, s?}`. Records are parsed
//! structurally and resolved lazily, so an inconsistent record surfaces as an
//! evaluation failure rather than a load failure.

use serde::{Deserialize, Serialize};

use super::{KTypeRankOne, RankOneError, RankOneSpace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogRecord {
    pub name: String,
    pub m_alpha: u32,
    pub m_2alpha: u32,
    pub d_alpha: f64,
    pub d_2alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
}

impl CatalogRecord {
    pub fn space(&self) -> Result<RankOneSpace, RankOneError> {
        RankOneSpace::new(self.m_alpha, self.m_2alpha)
    }

    /// Validates the record against its quadratics; missing `r`/`s` are solved for.
    pub fn resolve(&self) -> Result<(RankOneSpace, KTypeRankOne), RankOneError> {
        let space = self.space()?;
        let kt = match (self.r, self.s) {
            (Some(r), Some(s)) => KTypeRankOne::new(&space, self.d_alpha, self.d_2alpha, r, s)?,
            (None, None) => KTypeRankOne::from_d(&space, self.d_alpha, self.d_2alpha)?,
            (r, s) => {
                let (r0, s0) = super::solve_rs(&space, self.d_alpha, self.d_2alpha)?;
                KTypeRankOne::new(&space, self.d_alpha, self.d_2alpha, r.unwrap_or(r0), s.unwrap_or(s0))?
            }
        };
        Ok((space, kt))
    }

    pub fn from_ktype(name: &str, space: &RankOneSpace, kt: &KTypeRankOne) -> Self {
        Self {
            name: name.to_string(),
            m_alpha: space.m_alpha(),
            m_2alpha: space.m_2alpha(),
            d_alpha: kt.d_alpha(),
            d_2alpha: kt.d_2alpha(),
            r: Some(kt.r()),
            s: Some(kt.s()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct KTypeCatalog {
    records: Vec<CatalogRecord>,
}

impl KTypeCatalog {
    pub fn new(records: Vec<CatalogRecord>) -> Self {
        Self { records }
    }

    pub fn from_json_str(text: &str) -> Result<Self, RankOneError> {
        let records: Vec<CatalogRecord> =
            serde_json::from_str(text).map_err(|e| RankOneError::Catalog(e.to_string()))?;
        for (k, rec) in records.iter().enumerate() {
            if rec.name.is_empty() {
                return Err(RankOneError::Catalog(format!("record {} has an empty name", k + 1)));
            }
        }
        Ok(Self { records })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.records).expect("plain data serializes")
    }

    pub fn records(&self) -> &[CatalogRecord] {
        &self.records
    }

    /// First record with this name and the multiplicities of `space`.
    pub fn find(&self, name: &str, space: &RankOneSpace) -> Option<&CatalogRecord> {
        self.records
            .iter()
            .find(|r| r.name == name && r.m_alpha == space.m_alpha() && r.m_2alpha == space.m_2alpha())
    }

    /// Built-in catalog: `trivial`, `s1r0`, `s2r0`, `s2r1`, `s3r0` on the given
    /// spaces, plus the SO(2) characters `chi2`, `chi4` on `H²`.
    pub fn builtin(spaces: &[RankOneSpace]) -> Self {
        let mut records = Vec::new();
        for space in spaces {
            for (r, s) in [(0, 0), (0, 1), (0, 2), (1, 2), (0, 3)] {
                if let Ok(kt) = KTypeRankOne::from_rs(space, r, s) {
                    let name = if s == 0 { "trivial".to_string() } else { format!("s{s}r{r}") };
                    records.push(CatalogRecord::from_ktype(&name, space, &kt));
                }
            }
            if space.m_alpha() == 1 && space.m_2alpha() == 0 {
                for k in [1u32, 2] {
                    let kt = KTypeRankOne::from_rs(space, 0, k).expect("valid character");
                    records.push(CatalogRecord::from_ktype(&format!("chi{}", 2 * k), space, &kt));
                }
            }
        }
        Self { records }
    }
}

/// How a K-type is named on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum KTypeSelector {
    Trivial,
    /// `s<S>r<R>`.
    Rs { r: i64, s: u32 },
    /// `chi<N>`: the SO(2) character `k_θ ↦ e^{iNθ}` on `H²`, `N` even.
    Character(i64),
    /// `d:<d_alpha>,<d_2alpha>`.
    Explicit { d_alpha: f64, d_2alpha: f64 },
    /// Any other name, looked up in a catalog.
    Named(String),
}

impl KTypeSelector {
    pub fn parse(text: &str) -> Result<Self, RankOneError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(RankOneError::UnknownKType(String::new()));
        }
        if text == "trivial" {
            return Ok(Self::Trivial);
        }
        if let Some(rest) = text.strip_prefix("d:") {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| RankOneError::UnknownKType(format!("{text}: expected d:<d_alpha>,<d_2alpha>")))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| RankOneError::UnknownKType(format!("{text}: bad number {x:?}")))
            };
            return Ok(Self::Explicit { d_alpha: parse(a)?, d_2alpha: parse(b)? });
        }
        if let Some(n) = text.strip_prefix("chi").and_then(|n| n.parse::<i64>().ok()) {
            if n % 2 != 0 || n.unsigned_abs() > 2_000 {
                return Err(RankOneError::UnknownKType(format!("{text}: character index must be even, |N| ≤ 2000")));
            }
            return Ok(Self::Character(n));
        }
        if let Some(rest) = text.strip_prefix('s') {
            if let Some((s, r)) = rest.split_once('r') {
                if let (Ok(s), Ok(r)) = (s.parse::<u32>(), r.parse::<i64>()) {
                    if s > 1000 || r.unsigned_abs() > 1000 {
                        return Err(RankOneError::UnknownKType(format!("{text}: r, s limited to 1000")));
                    }
                    return Ok(Self::Rs { r, s });
                }
            }
        }
        Ok(Self::Named(text.to_string()))
    }

    /// Resolves against `space`, consulting `catalog` first for any name.
    pub fn resolve(&self, space: &RankOneSpace, catalog: Option<&KTypeCatalog>) -> Result<KTypeRankOne, RankOneError> {
        match self {
            Self::Trivial => Ok(KTypeRankOne::trivial()),
            Self::Rs { r, s } => KTypeRankOne::from_rs(space, *r, *s),
            Self::Character(n) => {
                if space.m_alpha() != 1 || space.m_2alpha() != 0 {
                    return Err(RankOneError::UnknownKType(format!(
                        "chi{n} is an SO(2) character; it needs H² (m_α = 1, m_2α = 0)"
                    )));
                }
                KTypeRankOne::from_rs(space, 0, (n.unsigned_abs() / 2) as u32)
            }
            Self::Explicit { d_alpha, d_2alpha } => KTypeRankOne::from_d(space, *d_alpha, *d_2alpha),
            Self::Named(name) => catalog
                .and_then(|c| c.find(name, space))
                .ok_or_else(|| RankOneError::UnknownKType(name.clone()))?
                .resolve()
                .map(|(_, kt)| kt),
        }
    }

    /// Like [`Self::resolve`], but a catalog record with the same name wins over
    /// the built-in interpretation.
    pub fn resolve_named_first(
        text: &str,
        space: &RankOneSpace,
        catalog: Option<&KTypeCatalog>,
    ) -> Result<KTypeRankOne, RankOneError> {
        if let Some(rec) = catalog.and_then(|c| c.find(text.trim(), space)) {
            return rec.resolve().map(|(_, kt)| kt);
        }
        Self::parse(text)?.resolve(space, catalog)
    }
}
