//! Harish-Chandra expansion of the zonal spherical function.
//!
//! Writing `coth t = 1 + 2Σ e^{−2kt}` and `coth 2t = 1 + 2Σ e^{−4kt}`, the
//! radial equation `f'' + (m_α coth t + 2m_2α coth 2t) f' = −(Λ²+ρ²) f` for
//! `f = Σ Γ_n e^{(μ−n)t}`, `μ = iΛ − ρ`, gives
//!
//! `n(n − 2iΛ) Γ_n = −Σ_{k=1}^{n/2} a_k (μ − n + 2k) Γ_{n−2k}`
//!
//! with `a_k = 2m_α + 4m_2α·[k even]`. Odd coefficients vanish.

use super::{RankOneError, RankOneSpace};
use crate::complexmath::ComplexScalar;

pub const DEFAULT_TRUNCATION: usize = 40;
/// `|n − 2iΛ|` below which the recursion is rejected as resonant.
pub const RESONANCE_TOLERANCE: f64 = 1e-9;

/// `Γ_0(Λ), …, Γ_N(Λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    gammas: Vec<ComplexScalar>,
    lam: ComplexScalar,
}

impl SeriesCoefficients {
    pub fn gammas(&self) -> &[ComplexScalar] {
        &self.gammas
    }

    pub fn lam(&self) -> ComplexScalar {
        self.lam
    }

    pub fn truncation(&self) -> usize {
        self.gammas.len() - 1
    }

    /// `Σ_{n≤N} Γ_n e^{−nt}`.
    pub fn partial_sum(&self, t: f64) -> ComplexScalar {
        let q = (-t).exp();
        // Horner in q from the top.
        self.gammas.iter().rev().fold(ComplexScalar::new(0.0, 0.0), |acc, g| acc * q + g)
    }

    /// `|Γ_M e^{−Mt}| / (1 − e^{−(t−½)})` for the last nonzero `Γ_M`;
    /// infinite when `t ≤ ½`.
    pub fn tail_estimate(&self, t: f64) -> f64 {
        if t <= 0.5 {
            return f64::INFINITY;
        }
        let m = self.truncation() & !1;
        self.gammas[m].norm() * (-(m as f64) * t).exp() / (1.0 - (-(t - 0.5)).exp())
    }

    /// `max_{lo ≤ n ≤ hi, Γ_n ≠ 0} ln|Γ_n| / n`.
    pub fn growth_rate(&self, lo: usize, hi: usize) -> f64 {
        (lo.max(1)..=hi.min(self.truncation()))
            .filter(|&n| self.gammas[n].norm() > 0.0)
            .map(|n| self.gammas[n].norm().ln() / n as f64)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn hc_series_gammas(space: &RankOneSpace, lam: ComplexScalar, truncation: usize) -> Result<SeriesCoefficients, RankOneError> {
    if !(lam.re.is_finite() && lam.im.is_finite()) {
        return Err(RankOneError::Domain(format!("Λ = {lam} is not finite")));
    }
    let i_lam = ComplexScalar::i() * lam;
    let mu = i_lam - space.rho();
    let ma = space.m_alpha() as f64;
    let m2a = space.m_2alpha() as f64;
    let mut gammas = vec![ComplexScalar::new(0.0, 0.0); truncation + 1];
    gammas[0] = ComplexScalar::new(1.0, 0.0);
    for n in (2..=truncation).step_by(2) {
        let nf = n as f64;
        let gap = nf - 2.0 * i_lam;
        if gap.norm() < RESONANCE_TOLERANCE {
            return Err(RankOneError::Resonance { n, lam });
        }
        let mut sum = ComplexScalar::new(0.0, 0.0);
        for k in 1..=n / 2 {
            let a_k = 2.0 * ma + if k % 2 == 0 { 4.0 * m2a } else { 0.0 };
            sum += a_k * (mu - nf + 2.0 * k as f64) * gammas[n - 2 * k];
        }
        gammas[n] = -sum / (nf * gap);
    }
    Ok(SeriesCoefficients { gammas, lam })
}

/// A truncated two-term series value with its a posteriori tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEvaluation {
    pub value: ComplexScalar,
    pub tail_estimate: f64,
}

/// `c(Λ) e^{(iΛ−ρ)t} ΣΓ_n(Λ)e^{−nt} + c(−Λ) e^{(−iΛ−ρ)t} ΣΓ_n(−Λ)e^{−nt}`.
pub fn hc_series_eval_with_tail(
    space: &RankOneSpace,
    lam: ComplexScalar,
    t: f64,
    truncation: usize,
) -> Result<SeriesEvaluation, RankOneError> {
    if !t.is_finite() || t <= 0.0 {
        return Err(RankOneError::Domain(format!("series needs t > 0, got {t}")));
    }
    let mut value = ComplexScalar::new(0.0, 0.0);
    let mut tail = 0.0;
    for l in [lam, -lam] {
        let coeffs = hc_series_gammas(space, l, truncation)?;
        let lead = super::c_e(space, l)? * ((ComplexScalar::i() * l - space.rho()) * t).exp();
        value += lead * coeffs.partial_sum(t);
        tail += lead.norm() * coeffs.tail_estimate(t);
    }
    Ok(SeriesEvaluation { value, tail_estimate: tail })
}

pub fn hc_series_eval(space: &RankOneSpace, lam: ComplexScalar, t: f64, truncation: usize) -> Result<ComplexScalar, RankOneError> {
    hc_series_eval_with_tail(space, lam, t, truncation).map(|e| e.value)
}
