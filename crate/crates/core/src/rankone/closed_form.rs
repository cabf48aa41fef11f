//! Hypergeometric closed form of `φ_{λ,δ}(a_t)`, the constant `c_{λ,δ}` and
//! the limits built from them.

use std::f64::consts::LN_2;

use super::{KTypeRankOne, RankOneError, RankOneSpace};
use crate::cfun::c_alpha;
use crate::complexmath::{gamma_ratio, gauss_2f1_with_complement, ComplexScalar};

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

/// `ln cosh t` without overflow.
fn ln_cosh(t: f64) -> f64 {
    let t = t.abs();
    t + (-2.0 * t).exp().ln_1p() - LN_2
}

fn check_t(t: f64) -> Result<(), RankOneError> {
    if !t.is_finite() || t < 0.0 {
        return Err(RankOneError::Domain(format!("t = {t} must be finite and nonnegative")));
    }
    Ok(())
}

fn check_lam(lam: ComplexScalar) -> Result<(), RankOneError> {
    if !(lam.re.is_finite() && lam.im.is_finite()) {
        return Err(RankOneError::Domain(format!("Λ = {lam} is not finite")));
    }
    Ok(())
}

/// `c_{λ,δ} = Γ(½(Z+s+r)) Γ(½(Z+1−m_2α+s−r)) / [Γ(½Z) Γ(½(Z+1−m_2α))]`
/// with `Z = iΛ + ρ(H)`.
pub fn c_lambda_delta(space: &RankOneSpace, kt: &KTypeRankOne, lam: ComplexScalar) -> Result<ComplexScalar, RankOneError> {
    check_lam(lam)?;
    if kt.is_trivial() {
        return Ok(c(1.0, 0.0));
    }
    let z = ComplexScalar::i() * lam + space.rho();
    let m2a = space.m_2alpha() as f64;
    let (r, s) = (kt.r() as f64, kt.s() as f64);
    Ok(gamma_ratio(
        &[0.5 * (z + s + r), 0.5 * (z + 1.0 - m2a + s - r)],
        &[0.5 * z, 0.5 * (z + 1.0 - m2a)],
    )?)
}

/// `φ_{λ,δ}(a_t) = c_{λ,δ} tanh^s t cosh^l t F(½(s+r−l), ½(s−r−l+1−m_2α); s+½(m_α+m_2α+1); tanh²t)`
/// with `l = iΛ − ρ(H)`.
pub fn phi_tau(space: &RankOneSpace, kt: &KTypeRankOne, lam: ComplexScalar, t: f64) -> Result<ComplexScalar, RankOneError> {
    check_t(t)?;
    let constant = c_lambda_delta(space, kt, lam)?;
    let s = kt.s() as f64;
    if t == 0.0 {
        return Ok(if kt.s() == 0 { constant } else { c(0.0, 0.0) });
    }
    let r = kt.r() as f64;
    let ma = space.m_alpha() as f64;
    let m2a = space.m_2alpha() as f64;
    let l = ComplexScalar::i() * lam - space.rho();
    let a = 0.5 * (s + r - l);
    let b = 0.5 * (s - r - l + 1.0 - m2a);
    let cc = c(s + 0.5 * (ma + m2a + 1.0), 0.0);
    let th = t.tanh();
    let sech = 1.0 / t.cosh();
    let f = gauss_2f1_with_complement(a, b, cc, c(th * th, 0.0), c(sech * sech, 0.0))?;
    let log_prefactor = s * th.ln() + l * ln_cosh(t);
    Ok(constant * log_prefactor.exp() * f)
}

/// `Γ(s + n/2) / Γ(n/2)`, `n = dim X`.
pub fn eisenstein_factor(space: &RankOneSpace, kt: &KTypeRankOne) -> Result<f64, RankOneError> {
    let half_n = c(0.5 * space.dim() as f64, 0.0);
    Ok(gamma_ratio(&[half_n + kt.s() as f64], &[half_n])?.re)
}

/// The `V^M_δ`-entry of the Eisenstein integral, `φ_{λ,δ} Γ(n/2) / Γ(s+n/2)`.
/// Its leading coefficient at infinity is `c(λ)` for every K-type.
pub fn eisenstein_entry(space: &RankOneSpace, kt: &KTypeRankOne, lam: ComplexScalar, t: f64) -> Result<ComplexScalar, RankOneError> {
    Ok(phi_tau(space, kt, lam, t)? / eisenstein_factor(space, kt)?)
}

/// `C_e(λ) = c(λ)`.
pub fn c_e(space: &RankOneSpace, lam: ComplexScalar) -> Result<ComplexScalar, RankOneError> {
    check_lam(lam)?;
    Ok(c_alpha(lam, space.m_alpha(), space.m_2alpha())?.into_finite()?)
}

/// `C_σ(−λ) = c_{−λ,δ} / c_{λ,δ} · c(λ)`.
pub fn c_sigma_minus(space: &RankOneSpace, kt: &KTypeRankOne, lam: ComplexScalar) -> Result<ComplexScalar, RankOneError> {
    let plus = c_lambda_delta(space, kt, lam)?;
    if plus == c(0.0, 0.0) {
        return Err(RankOneError::ZeroDenominator(format!("c_(λ,δ) = 0 at Λ = {lam}")));
    }
    let minus = c_lambda_delta(space, kt, -lam)?;
    Ok(minus / plus * c_e(space, lam)?)
}

/// `Γ(s + n/2)/Γ(n/2) · c(λ)`, the large-t limit of [`limit_large_t`].
pub fn asymptotic_limit(space: &RankOneSpace, kt: &KTypeRankOne, lam: ComplexScalar) -> Result<ComplexScalar, RankOneError> {
    Ok(eisenstein_factor(space, kt)? * c_e(space, lam)?)
}

/// `(2 cosh t)^{−l} φ_{λ,δ}(a_t)`.
///
/// Converges to [`asymptotic_limit`] as `t → ∞` when `Im Λ < 0`; for
/// `Im Λ > 0` the `c(−λ)` term dominates and the expression grows like
/// `e^{2 Im Λ · t}`.
pub fn limit_large_t(space: &RankOneSpace, kt: &KTypeRankOne, lam: ComplexScalar, t: f64) -> Result<ComplexScalar, RankOneError> {
    let phi = phi_tau(space, kt, lam, t)?;
    let l = ComplexScalar::i() * lam - space.rho();
    Ok((-l * (LN_2 + ln_cosh(t))).exp() * phi)
}

/// `e^{(iΛ+ρ)t} φ_{λ,δ}(a_t)`. Tends to the coefficient of `e^{(−iΛ−ρ)t}`
/// only when `Im Λ > 0`; reported without a threshold.
pub fn second_coefficient_diagnostic(
    space: &RankOneSpace,
    kt: &KTypeRankOne,
    lam: ComplexScalar,
    t: f64,
) -> Result<ComplexScalar, RankOneError> {
    let phi = phi_tau(space, kt, lam, t)?;
    Ok(((ComplexScalar::i() * lam + space.rho()) * t).exp() * phi)
}

/// `φ_{λ,δ}(a_t) / φ_{−λ,δ}(a_t)`; tends to `c_{λ,δ}/c_{−λ,δ}` as `t → 0⁺`.
pub fn small_t_ratio(space: &RankOneSpace, kt: &KTypeRankOne, lam: ComplexScalar, t: f64) -> Result<ComplexScalar, RankOneError> {
    if t <= 0.0 {
        return Err(RankOneError::Domain(format!("t = {t} must be positive")));
    }
    let num = phi_tau(space, kt, lam, t)?;
    let den = phi_tau(space, kt, -lam, t)?;
    if den.norm() <= 1e-300 || den.norm() <= 1e-15 * num.norm() {
        return Err(RankOneError::ZeroDenominator(format!("φ_(−λ,δ)(a_t) = {den} at t = {t}")));
    }
    Ok(num / den)
}
