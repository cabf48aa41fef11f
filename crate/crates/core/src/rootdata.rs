//! Restricted root data, spectral parameters and Weyl-group elements held as
//! words in the simple reflections.
//!
//! Roots live in explicit coordinates with respect to an orthonormal basis of
//! `a*`. A spectral parameter is a complex coordinate vector in the same basis
//! and `⟨·,·⟩` is extended complex-bilinearly (no conjugation).
//!
//! Word letters are 1-based simple-root indices. The word `[i1, …, ip]` is the
//! product `s_{i1} ⋯ s_{ip}`, so it acts on a vector by applying `s_{ip}` first.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complexmath::ComplexScalar;

/// Largest rank accepted from external input.
pub const MAX_RANK: usize = 8;
/// Largest number of positive indivisible roots accepted from external input.
pub const MAX_POSITIVE_ROOTS: usize = 128;
/// Largest Weyl group [`weyl_group_elements`] will enumerate.
pub const MAX_WEYL_ORDER: usize = 100_000;

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootDataError {
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("spectral parameter has {got} coordinates, datum has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("word letter {letter} is outside 1..={rank}")]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("root index {index} out of range ({count} positive roots)")]
    RootIndexOutOfRange { index: usize, count: usize },
    #[error("word {word:?} is not reduced (length {length})")]
    NotReduced { word: Vec<usize>, length: usize },
    #[error("unsupported root datum: {0}")]
    Unsupported(String),
    #[error("root datum JSON: {0}")]
    Json(String),
}

/// Multiplicities `(m_α, m_2α)` of an indivisible root and its double.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multiplicity {
    pub m_alpha: u32,
    pub m_2alpha: u32,
}

impl Multiplicity {
    pub const fn new(m_alpha: u32, m_2alpha: u32) -> Self {
        Self { m_alpha, m_2alpha }
    }

    /// `⟨ρ_α, α₀⟩ = ½m_α + m_2α`, the ρ of the rank-one subgroup `G_α`.
    pub fn rho_alpha(&self) -> f64 {
        0.5 * self.m_alpha as f64 + self.m_2alpha as f64
    }
}

/// A restricted root system with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct RootDatum {
    rank: usize,
    simple_roots: Vec<Vec<f64>>,
    positive_roots: Vec<Vec<f64>>,
    multiplicities: Vec<Multiplicity>,
    /// Position of each simple root inside `positive_roots`.
    simple_index: Vec<usize>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn approx_eq(a: &[f64], b: &[f64]) -> bool {
    let scale = 1.0 + dot(a, a).sqrt().max(dot(b, b).sqrt());
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= TOL * scale)
}

fn reflect_real(v: &[f64], alpha: &[f64]) -> Vec<f64> {
    let k = 2.0 * dot(v, alpha) / dot(alpha, alpha);
    v.iter().zip(alpha).map(|(x, a)| x - k * a).collect()
}

fn is_near_integer(x: f64) -> bool {
    (x - x.round()).abs() <= TOL * (1.0 + x.abs())
}

/// Solves `Σ_j c_j s_j = v` for the coefficients `c` (simple roots `s_j` as
/// columns) by Gaussian elimination with partial pivoting.
fn solve_in_basis(basis: &[Vec<f64>], v: &[f64]) -> Option<Vec<f64>> {
    let n = basis.len();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|row| {
            let mut r: Vec<f64> = basis.iter().map(|col| col[row]).collect();
            r.push(v[row]);
            r
        })
        .collect();
    let scale = basis
        .iter()
        .flat_map(|c| c.iter())
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
        .max(1e-300);
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[pivot][col].abs() <= 1e-9 * scale {
            return None;
        }
        m.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let f = m[row][col] / m[col][col];
                if f != 0.0 {
                    for k in col..=n {
                        m[row][k] -= f * m[col][k];
                    }
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

impl RootDatum {
    /// Builds and validates a datum. `multiplicities[k]` belongs to
    /// `positive_roots[k]`.
    pub fn new(
        simple_roots: Vec<Vec<f64>>,
        positive_roots: Vec<Vec<f64>>,
        multiplicities: Vec<Multiplicity>,
    ) -> Result<Self, RootDataError> {
        let bad = |msg: String| Err(RootDataError::InvalidDatum(msg));
        let rank = simple_roots.len();
        if rank == 0 || rank > MAX_RANK {
            return bad(format!("rank {rank} outside 1..={MAX_RANK}"));
        }
        if positive_roots.is_empty() || positive_roots.len() > MAX_POSITIVE_ROOTS {
            return bad(format!(
                "{} positive roots (allowed 1..={MAX_POSITIVE_ROOTS})",
                positive_roots.len()
            ));
        }
        if multiplicities.len() != positive_roots.len() {
            return bad(format!(
                "{} multiplicity entries for {} positive roots",
                multiplicities.len(),
                positive_roots.len()
            ));
        }
        for v in simple_roots.iter().chain(&positive_roots) {
            if v.len() != rank {
                return bad(format!("root {v:?} does not have {rank} coordinates"));
            }
            if v.iter().any(|x| !x.is_finite() || x.abs() > 1e6) {
                return bad(format!("root {v:?} has non-finite or huge coordinates"));
            }
            if dot(v, v) < 1e-12 {
                return bad("zero root".into());
            }
        }
        if let Some(m) = multiplicities.iter().find(|m| m.m_alpha == 0 || m.m_alpha > 1000 || m.m_2alpha > 1000) {
            return bad(format!("multiplicity {m:?} outside 1 ≤ m_α ≤ 1000, m_2α ≤ 1000"));
        }
        for (i, a) in positive_roots.iter().enumerate() {
            for b in &positive_roots[i + 1..] {
                if approx_eq(a, b) {
                    return bad(format!("duplicate root {a:?}"));
                }
                let twice_a: Vec<f64> = a.iter().map(|x| 2.0 * x).collect();
                let twice_b: Vec<f64> = b.iter().map(|x| 2.0 * x).collect();
                if approx_eq(&twice_a, b) || approx_eq(&twice_b, a) {
                    return bad("positive roots must be indivisible".into());
                }
            }
        }
        let mut simple_index = Vec::with_capacity(rank);
        for s in &simple_roots {
            match positive_roots.iter().position(|p| approx_eq(p, s)) {
                Some(k) => simple_index.push(k),
                None => return bad(format!("simple root {s:?} missing from the positive roots")),
            }
        }
        for p in &positive_roots {
            let coeffs = match solve_in_basis(&simple_roots, p) {
                Some(c) => c,
                None => return bad("simple roots are linearly dependent".into()),
            };
            if coeffs.iter().any(|&c| !is_near_integer(c) || c < -TOL) {
                return bad(format!(
                    "root {p:?} is not a nonnegative integer combination of simple roots"
                ));
            }
        }
        for a in &positive_roots {
            for b in &positive_roots {
                if !is_near_integer(2.0 * dot(a, b) / dot(b, b)) {
                    return bad(format!("roots {a:?}, {b:?} violate the crystallographic condition"));
                }
            }
        }
        // Each simple reflection must permute the other positive roots and
        // preserve multiplicities.
        for (i, s) in simple_roots.iter().enumerate() {
            for (k, p) in positive_roots.iter().enumerate() {
                if k == simple_index[i] {
                    continue;
                }
                let image = reflect_real(p, s);
                match positive_roots.iter().position(|q| approx_eq(q, &image)) {
                    Some(j) if multiplicities[j] == multiplicities[k] => {}
                    Some(_) => return bad("multiplicities are not Weyl-invariant".into()),
                    None => {
                        return bad(format!(
                            "reflection in simple root {} does not permute the positive roots",
                            i + 1
                        ))
                    }
                }
            }
        }
        Ok(Self {
            rank,
            simple_roots,
            positive_roots,
            multiplicities,
            simple_index,
        })
    }

    /// Rank one with `α(H) = 1`: a single root `α = (1)`.
    pub fn rank_one(m_alpha: u32, m_2alpha: u32) -> Result<Self, RootDataError> {
        Self::new(vec![vec![1.0]], vec![vec![1.0]], vec![Multiplicity::new(m_alpha, m_2alpha)])
    }

    /// Real hyperbolic space `H^n` (`m_α = n - 1`).
    pub fn hyperbolic(n: u32) -> Result<Self, RootDataError> {
        if n < 2 {
            return Err(RootDataError::InvalidDatum(format!("H^{n} needs n >= 2")));
        }
        Self::rank_one(n - 1, 0)
    }

    pub fn a1xa1(first: Multiplicity, second: Multiplicity) -> Result<Self, RootDataError> {
        let e = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        Self::new(e.clone(), e, vec![first, second])
    }

    /// `A₂` with roots of squared length 2 and common multiplicity `m`.
    pub fn a2(m: u32) -> Result<Self, RootDataError> {
        let r2 = std::f64::consts::SQRT_2;
        let a1 = vec![r2, 0.0];
        let a2 = vec![-r2 / 2.0, 6f64.sqrt() / 2.0];
        let sum = vec![a1[0] + a2[0], a1[1] + a2[1]];
        Self::new(
            vec![a1.clone(), a2.clone()],
            vec![a1, a2, sum],
            vec![Multiplicity::new(m, 0); 3],
        )
    }

    /// `B₂` with simple roots `e1 - e2` (long) and `e2` (short).
    pub fn b2(m_long: u32, m_short: u32) -> Result<Self, RootDataError> {
        Self::bc2(m_long, m_short, 0)
    }

    /// `BC₂`: `B₂` whose short roots carry doubles with multiplicity `m_2short`.
    pub fn bc2(m_long: u32, m_short: u32, m_2short: u32) -> Result<Self, RootDataError> {
        let long = Multiplicity::new(m_long, 0);
        let short = Multiplicity::new(m_short, m_2short);
        Self::new(
            vec![vec![1.0, -1.0], vec![0.0, 1.0]],
            vec![vec![1.0, -1.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]],
            vec![long, short, short, long],
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple_roots(&self) -> &[Vec<f64>] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Vec<f64>] {
        &self.positive_roots
    }

    pub fn multiplicities(&self) -> &[Multiplicity] {
        &self.multiplicities
    }

    pub fn multiplicity(&self, root_index: usize) -> Multiplicity {
        self.multiplicities[root_index]
    }

    /// Multiplicity of the 1-based simple root `letter`.
    pub fn simple_multiplicity(&self, letter: usize) -> Result<Multiplicity, RootDataError> {
        self.check_letter(letter)?;
        Ok(self.multiplicities[self.simple_index[letter - 1]])
    }

    /// Position of the 1-based simple root `letter` in [`Self::positive_roots`].
    pub fn simple_root_index(&self, letter: usize) -> Result<usize, RootDataError> {
        self.check_letter(letter)?;
        Ok(self.simple_index[letter - 1])
    }

    fn check_letter(&self, letter: usize) -> Result<(), RootDataError> {
        if letter == 0 || letter > self.rank {
            Err(RootDataError::LetterOutOfRange { letter, rank: self.rank })
        } else {
            Ok(())
        }
    }

    fn check_param(&self, lam: &SpectralParam) -> Result<(), RootDataError> {
        if lam.coords.len() != self.rank {
            Err(RootDataError::DimensionMismatch { expected: self.rank, got: lam.coords.len() })
        } else {
            Ok(())
        }
    }

    fn check_word(&self, w: &WeylElement) -> Result<(), RootDataError> {
        w.word.iter().try_for_each(|&l| self.check_letter(l))
    }

    fn find_positive(&self, v: &[f64]) -> Option<usize> {
        self.positive_roots.iter().position(|p| approx_eq(p, v))
    }

    /// Applies `w` to a real root vector.
    fn apply_to_root(&self, w: &WeylElement, v: &[f64]) -> Vec<f64> {
        w.word.iter().rev().fold(v.to_vec(), |acc, &l| reflect_real(&acc, &self.simple_roots[l - 1]))
    }

    pub fn from_json_str(text: &str) -> Result<Self, RootDataError> {
        let file: RootDatumFile =
            serde_json::from_str(text).map_err(|e| RootDataError::Json(e.to_string()))?;
        file.try_into()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&RootDatumFile::from(self)).expect("plain data serializes")
    }
}

/// On-disk root datum. `root_index` is 1-based into `positive_indivisible_roots`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumFile {
    pub rank: usize,
    pub simple_roots: Vec<Vec<f64>>,
    pub positive_indivisible_roots: Vec<Vec<f64>>,
    pub multiplicities: Vec<MultiplicityEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplicityEntry {
    pub root_index: usize,
    pub m_alpha: u32,
    pub m_2alpha: u32,
}

impl TryFrom<RootDatumFile> for RootDatum {
    type Error = RootDataError;

    fn try_from(file: RootDatumFile) -> Result<Self, Self::Error> {
        if file.rank != file.simple_roots.len() {
            return Err(RootDataError::InvalidDatum(format!(
                "rank {} but {} simple roots",
                file.rank,
                file.simple_roots.len()
            )));
        }
        let count = file.positive_indivisible_roots.len();
        let mut mult: Vec<Option<Multiplicity>> = vec![None; count];
        for e in &file.multiplicities {
            if e.root_index == 0 || e.root_index > count {
                return Err(RootDataError::RootIndexOutOfRange { index: e.root_index, count });
            }
            let slot = &mut mult[e.root_index - 1];
            if slot.is_some() {
                return Err(RootDataError::InvalidDatum(format!(
                    "root_index {} listed twice",
                    e.root_index
                )));
            }
            *slot = Some(Multiplicity::new(e.m_alpha, e.m_2alpha));
        }
        let mult = mult
            .into_iter()
            .enumerate()
            .map(|(k, m)| {
                m.ok_or_else(|| RootDataError::InvalidDatum(format!("no multiplicity for root_index {}", k + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        RootDatum::new(file.simple_roots, file.positive_indivisible_roots, mult)
    }
}

impl From<&RootDatum> for RootDatumFile {
    fn from(d: &RootDatum) -> Self {
        Self {
            rank: d.rank,
            simple_roots: d.simple_roots.clone(),
            positive_indivisible_roots: d.positive_roots.clone(),
            multiplicities: d
                .multiplicities
                .iter()
                .enumerate()
                .map(|(k, m)| MultiplicityEntry { root_index: k + 1, m_alpha: m.m_alpha, m_2alpha: m.m_2alpha })
                .collect(),
        }
    }
}

/// A point `λ ∈ a*_ℂ` in orthonormal coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralParam {
    coords: Vec<ComplexScalar>,
}

impl SpectralParam {
    pub fn new(coords: Vec<ComplexScalar>) -> Self {
        Self { coords }
    }

    /// Rank-one parameter `λ(H)` under `α(H) = 1`.
    pub fn rank_one(lam: ComplexScalar) -> Self {
        Self { coords: vec![lam] }
    }

    pub fn from_real(coords: &[f64]) -> Self {
        Self { coords: coords.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect() }
    }

    pub fn coords(&self) -> &[ComplexScalar] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Complex-bilinear pairing with a real vector.
    pub fn pair(&self, v: &[f64]) -> ComplexScalar {
        self.coords.iter().zip(v).map(|(c, x)| c * x).sum()
    }

    /// Complex-bilinear pairing `⟨λ, μ⟩`.
    pub fn bilinear(&self, other: &SpectralParam) -> ComplexScalar {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: ComplexScalar) -> Self {
        Self { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { coords: self.coords.iter().map(|c| c.conj()).collect() }
    }

    /// Reflection `λ ↦ λ - 2⟨λ,α⟩/⟨α,α⟩ α`.
    pub fn reflect(&self, alpha: &[f64]) -> Self {
        let k = 2.0 * self.pair(alpha) / dot(alpha, alpha);
        Self { coords: self.coords.iter().zip(alpha).map(|(c, a)| c - k * a).collect() }
    }
}

/// A Weyl-group element as a word in simple reflections (1-based letters).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeylElement {
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Wraps a word without checking reducedness; see [`validate_reduced`].
    pub fn from_word(word: Vec<usize>) -> Self {
        Self { word }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn word_len(&self) -> usize {
        self.word.len()
    }

    /// Concatenation `self · other`.
    pub fn compose(&self, other: &WeylElement) -> Self {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Self { word }
    }

    pub fn inverse(&self) -> Self {
        Self { word: self.word.iter().rev().copied().collect() }
    }

    /// Tail `σ^{(j)} = σ_{j+1} ⋯ σ_p` for a 1-based position `j`.
    pub fn tail(&self, j: usize) -> Self {
        Self { word: self.word[j.min(self.word.len())..].to_vec() }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.word.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", letters.join(","))
    }
}

/// `ρ = ½ Σ_{α ∈ Σ₀⁺} (m_α + 2 m_2α) α`.
pub fn rho(datum: &RootDatum) -> SpectralParam {
    let mut coords = vec![0.0; datum.rank];
    for (alpha, m) in datum.positive_roots.iter().zip(&datum.multiplicities) {
        let weight = 0.5 * (m.m_alpha as f64 + 2.0 * m.m_2alpha as f64);
        for (c, a) in coords.iter_mut().zip(alpha) {
            *c += weight * a;
        }
    }
    SpectralParam::from_real(&coords)
}

/// Reflection in the 1-based simple root `letter`.
pub fn simple_reflection(
    datum: &RootDatum,
    letter: usize,
    lam: &SpectralParam,
) -> Result<SpectralParam, RootDataError> {
    datum.check_letter(letter)?;
    datum.check_param(lam)?;
    Ok(lam.reflect(&datum.simple_roots[letter - 1]))
}

/// `w·λ`, applying the rightmost letter first.
pub fn weyl_apply(
    datum: &RootDatum,
    w: &WeylElement,
    lam: &SpectralParam,
) -> Result<SpectralParam, RootDataError> {
    datum.check_word(w)?;
    datum.check_param(lam)?;
    Ok(w.word.iter().rev().fold(lam.clone(), |acc, &l| acc.reflect(&datum.simple_roots[l - 1])))
}

/// Indices (into [`RootDatum::positive_roots`]) of `{α ∈ Σ₀⁺ : wα ∈ Σ₀⁻}`.
pub fn negative_set(datum: &RootDatum, w: &WeylElement) -> Result<Vec<usize>, RootDataError> {
    datum.check_word(w)?;
    let mut out = Vec::new();
    for (k, alpha) in datum.positive_roots.iter().enumerate() {
        let image = datum.apply_to_root(w, alpha);
        let neg: Vec<f64> = image.iter().map(|x| -x).collect();
        if datum.find_positive(&neg).is_some() {
            out.push(k);
        }
    }
    Ok(out)
}

/// `ℓ(w) = |Σ₀⁺ ∩ w⁻¹Σ₀⁻|`.
pub fn length(datum: &RootDatum, w: &WeylElement) -> Result<usize, RootDataError> {
    negative_set(datum, w).map(|s| s.len())
}

pub fn is_reduced(datum: &RootDatum, w: &WeylElement) -> Result<bool, RootDataError> {
    Ok(length(datum, w)? == w.word_len())
}

pub fn validate_reduced(datum: &RootDatum, w: &WeylElement) -> Result<(), RootDataError> {
    let l = length(datum, w)?;
    if l == w.word_len() {
        Ok(())
    } else {
        Err(RootDataError::NotReduced { word: w.word.clone(), length: l })
    }
}

/// A vector strictly inside the positive chamber.
fn dominant_probe(datum: &RootDatum) -> Vec<f64> {
    let mut v = vec![0.0; datum.rank];
    for alpha in &datum.positive_roots {
        for (c, a) in v.iter_mut().zip(alpha) {
            *c += a;
        }
    }
    v
}

/// Reduced word for the longest element, found by walking from the positive
/// chamber to the negative one across simple walls.
pub fn longest_element(datum: &RootDatum) -> Result<WeylElement, RootDataError> {
    let mut u = dominant_probe(datum);
    let mut pushed = Vec::new();
    let cap = datum.positive_roots.len() + 1;
    loop {
        let wall = datum
            .simple_roots
            .iter()
            .position(|s| dot(&u, s) > TOL * (1.0 + dot(&u, &u).sqrt()));
        match wall {
            None => break,
            Some(i) => {
                u = reflect_real(&u, &datum.simple_roots[i]);
                pushed.push(i + 1);
                if pushed.len() > cap {
                    return Err(RootDataError::Unsupported(
                        "chamber walk did not terminate; Weyl group not finite".into(),
                    ));
                }
            }
        }
    }
    pushed.reverse();
    let w = WeylElement::from_word(pushed);
    if length(datum, &w)? != datum.positive_roots.len() {
        return Err(RootDataError::Unsupported("longest element walk ended early".into()));
    }
    Ok(w)
}

/// `⟨λ, α₀⟩ = ⟨λ, α⟩ / ⟨α, α⟩` for the positive root at `root_index`.
pub fn restrict(
    datum: &RootDatum,
    lam: &SpectralParam,
    root_index: usize,
) -> Result<ComplexScalar, RootDataError> {
    datum.check_param(lam)?;
    let alpha = datum.positive_roots.get(root_index).ok_or(RootDataError::RootIndexOutOfRange {
        index: root_index,
        count: datum.positive_roots.len(),
    })?;
    Ok(lam.pair(alpha) / dot(alpha, alpha))
}

/// All Weyl-group elements with reduced words, in order of length.
pub fn weyl_group_elements(datum: &RootDatum) -> Result<Vec<WeylElement>, RootDataError> {
    let probe = dominant_probe(datum);
    let key = |v: &[f64]| -> Vec<i64> { v.iter().map(|x| (x * 1e6).round() as i64).collect() };
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    seen.insert(key(&probe), ());
    let mut elements = vec![(WeylElement::identity(), probe)];
    let mut frontier = 0;
    while frontier < elements.len() {
        let (w, image) = elements[frontier].clone();
        frontier += 1;
        for letter in 1..=datum.rank {
            let next = reflect_real(&image, &datum.simple_roots[letter - 1]);
            let k = key(&next);
            if seen.contains_key(&k) {
                continue;
            }
            seen.insert(k, ());
            let mut word = vec![letter];
            word.extend_from_slice(w.word());
            elements.push((WeylElement::from_word(word), next));
            if elements.len() > MAX_WEYL_ORDER {
                return Err(RootDataError::Unsupported(format!(
                    "Weyl group larger than {MAX_WEYL_ORDER}"
                )));
            }
        }
    }
    Ok(elements.into_iter().map(|(w, _)| w).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    #[test]
    fn rho_rank_one() {
        let d = RootDatum::rank_one(1, 0).unwrap();
        assert_eq!(rho(&d).coords(), &[c(0.5, 0.0)]);
        let d = RootDatum::hyperbolic(5).unwrap();
        assert_eq!(rho(&d).coords(), &[c(2.0, 0.0)]);
        let d = RootDatum::rank_one(4, 3).unwrap();
        assert_eq!(rho(&d).coords(), &[c(5.0, 0.0)]);
    }

    #[test]
    fn rho_a2_is_sum_of_simple_roots() {
        let d = RootDatum::a2(1).unwrap();
        let r = rho(&d);
        let s = &d.simple_roots();
        for k in 0..2 {
            assert!((r.coords()[k].re - (s[0][k] + s[1][k])).abs() < 1e-14);
        }
    }

    #[test]
    fn rank_one_reflection_negates() {
        let d = RootDatum::rank_one(2, 1).unwrap();
        let lam = SpectralParam::rank_one(c(0.7, -0.3));
        let out = weyl_apply(&d, &WeylElement::from_word(vec![1]), &lam).unwrap();
        assert_eq!(out.coords(), &[c(-0.7, 0.3)]);
        let same = weyl_apply(&d, &WeylElement::identity(), &lam).unwrap();
        assert_eq!(same, lam);
    }

    #[test]
    fn negative_sets() {
        let d = RootDatum::a2(1).unwrap();
        assert!(negative_set(&d, &WeylElement::identity()).unwrap().is_empty());
        assert_eq!(negative_set(&d, &WeylElement::from_word(vec![1])).unwrap(), vec![0]);
        let w0 = longest_element(&d).unwrap();
        assert_eq!(w0.word_len(), 3);
        assert_eq!(negative_set(&d, &w0).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn longest_elements() {
        assert_eq!(longest_element(&RootDatum::rank_one(1, 0).unwrap()).unwrap().word(), &[1]);
        let b2 = RootDatum::b2(1, 1).unwrap();
        assert_eq!(longest_element(&b2).unwrap().word_len(), 4);
        let a11 = RootDatum::a1xa1(Multiplicity::new(1, 0), Multiplicity::new(2, 0)).unwrap();
        assert_eq!(longest_element(&a11).unwrap().word_len(), 2);
    }

    #[test]
    fn group_orders() {
        assert_eq!(weyl_group_elements(&RootDatum::a2(1).unwrap()).unwrap().len(), 6);
        assert_eq!(weyl_group_elements(&RootDatum::bc2(1, 2, 1).unwrap()).unwrap().len(), 8);
        assert_eq!(weyl_group_elements(&RootDatum::rank_one(1, 0).unwrap()).unwrap().len(), 2);
    }

    #[test]
    fn restrict_rank_one_rho() {
        for (ma, m2a) in [(1, 0), (2, 0), (4, 3), (2, 1), (8, 7)] {
            let d = RootDatum::rank_one(ma, m2a).unwrap();
            let r = restrict(&d, &rho(&d), 0).unwrap();
            assert_eq!(r, c(0.5 * ma as f64 + m2a as f64, 0.0));
        }
        let d = RootDatum::a1xa1(Multiplicity::new(1, 0), Multiplicity::new(1, 0)).unwrap();
        let orth = SpectralParam::new(vec![c(0.0, 0.0), c(1.3, 0.4)]);
        assert_eq!(restrict(&d, &orth, 0).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn errors() {
        let d = RootDatum::a2(1).unwrap();
        let lam = SpectralParam::new(vec![c(1.0, 0.0), c(0.0, 1.0)]);
        assert!(matches!(
            weyl_apply(&d, &WeylElement::from_word(vec![3]), &lam),
            Err(RootDataError::LetterOutOfRange { letter: 3, rank: 2 })
        ));
        assert!(matches!(
            weyl_apply(&d, &WeylElement::from_word(vec![0]), &lam),
            Err(RootDataError::LetterOutOfRange { .. })
        ));
        assert!(matches!(
            validate_reduced(&d, &WeylElement::from_word(vec![1, 1])),
            Err(RootDataError::NotReduced { .. })
        ));
        let short = SpectralParam::rank_one(c(1.0, 0.0));
        assert!(matches!(
            weyl_apply(&d, &WeylElement::identity(), &short),
            Err(RootDataError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn invalid_data_rejected() {
        // Not closed under reflections (A2 missing α1+α2).
        let r2 = std::f64::consts::SQRT_2;
        let a1 = vec![r2, 0.0];
        let a2 = vec![-r2 / 2.0, 6f64.sqrt() / 2.0];
        let err = RootDatum::new(
            vec![a1.clone(), a2.clone()],
            vec![a1, a2],
            vec![Multiplicity::new(1, 0); 2],
        );
        assert!(err.is_err());
        // Zero multiplicity.
        assert!(RootDatum::rank_one(0, 0).is_err());
        // Non-crystallographic angle.
        let err = RootDatum::new(
            vec![vec![1.0, 0.0], vec![0.3, 1.0]],
            vec![vec![1.0, 0.0], vec![0.3, 1.0]],
            vec![Multiplicity::new(1, 0); 2],
        );
        assert!(err.is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = RootDatum::bc2(1, 2, 1).unwrap();
        let back = RootDatum::from_json_str(&d.to_json_string()).unwrap();
        assert_eq!(back, d);
        let text = r#"{"rank":1,"simple_roots":[[1.0]],"positive_indivisible_roots":[[1.0]],
                       "multiplicities":[{"root_index":1,"m_alpha":2,"m_2alpha":0}]}"#;
        let d = RootDatum::from_json_str(text).unwrap();
        assert_eq!(d.multiplicity(0), Multiplicity::new(2, 0));
        let missing = r#"{"rank":1,"simple_roots":[[1.0]],"positive_indivisible_roots":[[1.0]],
                       "multiplicities":[]}"#;
        assert!(RootDatum::from_json_str(missing).is_err());
    }
}
