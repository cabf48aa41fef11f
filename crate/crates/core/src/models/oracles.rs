//! Quadrature oracles for the integral definitions.

use std::cell::{Cell, RefCell};
use std::f64::consts::{LN_2, PI};

use super::quadrature::{integrate_half_line, integrate_interval, Integral, QuadratureSpec};
use super::ModelError;
use crate::complexmath::{gamma_ratio, ComplexScalar};

/// Closed form (or reference side) against a quadrature value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub closed_form: ComplexScalar,
    pub quadrature: ComplexScalar,
    pub abs_err: f64,
    /// `abs_err / |closed_form|`, or `abs_err` when the closed form is 0.
    pub rel_err: f64,
    pub nodes_used: usize,
}

impl OracleReport {
    pub fn new(closed_form: ComplexScalar, quadrature: ComplexScalar, nodes_used: usize) -> Self {
        let abs_err = (closed_form - quadrature).norm();
        let scale = closed_form.norm();
        let rel_err = if scale > 0.0 { abs_err / scale } else { abs_err };
        Self { closed_form, quadrature, abs_err, rel_err, nodes_used }
    }

    /// Relative error taken against `max(|closed_form|, scale)`.
    pub fn with_scale(closed_form: ComplexScalar, quadrature: ComplexScalar, scale: f64, nodes_used: usize) -> Self {
        let mut r = Self::new(closed_form, quadrature, nodes_used);
        let s = closed_form.norm().max(scale);
        if s > 0.0 {
            r.rel_err = r.abs_err / s;
        }
        r
    }
}

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

fn check_dim(n: usize) -> Result<(), ModelError> {
    if !(2..=64).contains(&n) {
        return Err(ModelError::InvalidArgument(format!("dimension n = {n} outside 2..=64")));
    }
    Ok(())
}

fn check_t(t: f64) -> Result<(), ModelError> {
    if !t.is_finite() || !(0.0..=40.0).contains(&t) {
        return Err(ModelError::InvalidArgument(format!("t = {t} outside [0, 40]")));
    }
    Ok(())
}

fn check_lam(lam: ComplexScalar) -> Result<(), ModelError> {
    if !(lam.re.is_finite() && lam.im.is_finite()) {
        return Err(ModelError::InvalidArgument(format!("Λ = {lam} is not finite")));
    }
    Ok(())
}

fn check_character(char_n: i64) -> Result<(), ModelError> {
    if char_n % 2 != 0 || char_n.unsigned_abs() > 2000 {
        return Err(ModelError::InvalidArgument(format!(
            "character index {char_n} must be even with |n| ≤ 2000 (M = ±1 must act trivially)"
        )));
    }
    Ok(())
}

fn ln_cosh(u: f64) -> f64 {
    u + (-2.0 * u).exp().ln_1p() - LN_2
}

fn ln_sinh(u: f64) -> f64 {
    if u < 1.0 {
        u.sinh().ln()
    } else {
        u + (-(-2.0 * u).exp()).ln_1p() - LN_2
    }
}

/// `∫_0^π sin^{n−2}θ dθ = √π Γ((n−1)/2) / Γ(n/2)`.
fn sphere_normalizer(n: usize) -> f64 {
    let nf = n as f64;
    PI.sqrt() * gamma_ratio(&[c(0.5 * (nf - 1.0), 0.0)], &[c(0.5 * nf, 0.0)]).expect("positive arguments").re
}

/// `ln[(1 − r²) / (1 − 2r cos θ + r²)]` with `r = tanh(t/2)`, written to stay
/// accurate as `r → 1`.
fn ln_poisson_radial(t: f64, theta: f64) -> f64 {
    let r = (0.5 * t).tanh();
    let one_minus_r = 2.0 / (1.0 + t.exp());
    let half = (0.5 * theta).sin();
    let denom = one_minus_r * one_minus_r + 4.0 * r * half * half;
    -2.0 * ln_cosh(0.5 * t) - denom.ln()
}

/// Zonal spherical function of `H^n` at `a_t·o` as the boundary integral
/// `∫_B P(x, b)^{iΛ+ρ} db` with normalized measure.
pub fn quad_phi_k(n: usize, lam: ComplexScalar, t: f64, spec: &QuadratureSpec) -> Result<Integral, ModelError> {
    check_dim(n)?;
    check_t(t)?;
    check_lam(lam)?;
    let rho = 0.5 * (n as f64 - 1.0);
    let expo = ComplexScalar::i() * lam + rho;
    let power = (n - 2) as i32;
    let norm = sphere_normalizer(n);
    let f = |theta: f64| (expo * ln_poisson_radial(t, theta)).exp() * theta.sin().powi(power);
    let mut r = integrate_interval(f, 0.0, PI, spec)?;
    r.value /= norm;
    r.error_estimate /= norm;
    Ok(r)
}

/// `∫_0^∞ sinh^{n−2}u cosh^{1−2p}u du`, the radial `N̄` integral of
/// `(1 + |v|²)^{−p}` after `|v| = sinh u` (sphere area omitted).
fn nbar_radial(n: usize, p: ComplexScalar, spec: &QuadratureSpec) -> Result<Integral, ModelError> {
    let k = (n - 2) as f64;
    let expo = 1.0 - 2.0 * p;
    let f = move |u: f64| {
        let log = expo * ln_cosh(u) + if n == 2 { 0.0 } else { k * ln_sinh(u) };
        log.exp()
    };
    Ok(integrate_half_line(f, spec)?)
}

/// The measure constant `∫_{N̄} e^{−2ρ(H(n̄))} dn̄` (radial part), shared by
/// [`quad_c_nbar`] and [`quad_csigma_sl2`].
pub fn nbar_normalizer(n: usize, spec: &QuadratureSpec) -> Result<Integral, ModelError> {
    check_dim(n)?;
    let rho = 0.5 * (n as f64 - 1.0);
    nbar_radial(n, c(2.0 * rho, 0.0), spec)
}

fn convergence_margin(lam: ComplexScalar) -> Result<ComplexScalar, ModelError> {
    check_lam(lam)?;
    let z = ComplexScalar::i() * lam;
    if z.re <= 0.05 {
        return Err(ModelError::Divergent(format!(
            "Re(iΛ) = {} must exceed 0.05 for absolute convergence",
            z.re
        )));
    }
    Ok(z)
}

/// `c(λ) = ∫_{N̄} e^{−(iλ+ρ)(H(n̄))} dn̄` on `H^n`, with
/// `e^{α(H(n̄(v)))} = 1 + |v|²` and `dn̄` normalized by [`nbar_normalizer`].
pub fn quad_c_nbar(n: usize, lam: ComplexScalar, spec: &QuadratureSpec) -> Result<Integral, ModelError> {
    check_dim(n)?;
    let z = convergence_margin(lam)?;
    let rho = 0.5 * (n as f64 - 1.0);
    let num = nbar_radial(n, z + rho, spec)?;
    let den = nbar_normalizer(n, spec)?;
    Ok(Integral {
        value: num.value / den.value,
        error_estimate: num.error_estimate / den.value.norm() + num.value.norm() * den.error_estimate / den.value.norm_sqr(),
        nodes: num.nodes + den.nodes,
    })
}

/// `C_σ(−λ) = ∫_{N̄} e^{−(iλ+ρ)(H(n̄))} δ(k(n̄)⁻¹ m*) dn̄` on `SL(2,ℝ)` for the
/// character `δ(k_θ) = e^{i n θ}`, with `k(n̄(x)) = k_{atan x}` and
/// `δ(m*) = iⁿ`. Odd parts cancel, leaving
/// `iⁿ ∫_0^∞ cosh^{−2iΛ}u cos(n gd u) du / N`, `gd u = 2 atan(tanh(u/2))`.
pub fn quad_csigma_sl2(char_n: i64, lam: ComplexScalar, spec: &QuadratureSpec) -> Result<Integral, ModelError> {
    check_character(char_n)?;
    let z = convergence_margin(lam)?;
    let nf = char_n as f64;
    let f = |u: f64| {
        let gd = 2.0 * (0.5 * u).tanh().atan();
        (-2.0 * z * ln_cosh(u)).exp() * (nf * gd).cos()
    };
    let num = integrate_half_line(f, spec)?;
    let den = nbar_normalizer(2, spec)?;
    let delta_m_star = if (char_n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(Integral {
        value: delta_m_star * num.value / den.value,
        error_estimate: num.error_estimate / den.value.norm() + num.value.norm() * den.error_estimate / den.value.norm_sqr(),
        nodes: num.nodes + den.nodes,
    })
}

/// `V^M_δ`-entry of the Eisenstein integral on `SL(2,ℝ)` at a disk point `x`:
/// `(1/2π) ∫ P(x, e^{iψ})^{iΛ+½} e^{−ikψ} dψ`, `k = char_n / 2`.
pub fn quad_eisenstein_sl2_at(
    char_n: i64,
    lam: ComplexScalar,
    x: ComplexScalar,
    spec: &QuadratureSpec,
) -> Result<Integral, ModelError> {
    check_character(char_n)?;
    check_lam(lam)?;
    let x2 = x.norm_sqr();
    if !(x2 < 1.0) {
        return Err(ModelError::OutsideBall(x2.sqrt()));
    }
    let k = (char_n / 2) as f64;
    let expo = ComplexScalar::i() * lam + 0.5;
    let ln_num = (1.0 - x2).ln();
    let center = x.arg();
    let f = |psi: f64| {
        let b = ComplexScalar::from_polar(1.0, psi);
        let ln_p = ln_num - (x - b).norm_sqr().ln();
        (expo * ln_p - ComplexScalar::i() * k * psi).exp()
    };
    let mut r = integrate_interval(f, center - PI, center + PI, spec)?;
    r.value /= 2.0 * PI;
    r.error_estimate /= 2.0 * PI;
    Ok(r)
}

/// [`quad_eisenstein_sl2_at`] at `a_t·o = tanh(t/2)`.
pub fn quad_eisenstein_sl2(char_n: i64, lam: ComplexScalar, t: f64, spec: &QuadratureSpec) -> Result<Integral, ModelError> {
    check_t(t)?;
    quad_eisenstein_sl2_at(char_n, lam, c((0.5 * t).tanh(), 0.0), spec)
}

/// Runs `outer` with an integrand that may fail; the first inner error is
/// reported instead of the resulting non-finite value.
fn nested<F>(outer: impl FnOnce(&dyn Fn(f64) -> ComplexScalar) -> Result<Integral, ModelError>, inner: F) -> Result<(Integral, usize), ModelError>
where
    F: Fn(f64) -> Result<Integral, ModelError>,
{
    let failure: RefCell<Option<ModelError>> = RefCell::new(None);
    let inner_nodes = Cell::new(0usize);
    let f = |x: f64| match inner(x) {
        Ok(r) => {
            inner_nodes.set(inner_nodes.get() + r.nodes);
            r.value
        }
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            c(f64::NAN, f64::NAN)
        }
    };
    let result = outer(&f);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let r = result?;
    Ok((r, inner_nodes.get()))
}

/// `∫_K φ(a_{t1} k a_{t2}) dk` (double quadrature) against `φ(a_{t1}) φ(a_{t2})`.
/// The `K`-average reduces to `θ ∈ [0, π]` with weight `sin^{n−2}θ`, where
/// `cosh d = cosh t1 cosh t2 + sinh t1 sinh t2 cos θ`.
pub fn functional_equation_check(
    n: usize,
    lam: ComplexScalar,
    t1: f64,
    t2: f64,
    spec: &QuadratureSpec,
) -> Result<OracleReport, ModelError> {
    check_dim(n)?;
    check_t(t1)?;
    check_t(t2)?;
    let power = (n - 2) as i32;
    let norm = sphere_normalizer(n);
    let distance = |theta: f64| {
        let ch = t1.cosh() * t2.cosh() + t1.sinh() * t2.sinh() * theta.cos();
        ch.max(1.0).acosh()
    };
    let (lhs, inner_nodes) = nested(
        |f| Ok(integrate_interval(|theta| f(theta) * theta.sin().powi(power), 0.0, PI, spec)?),
        |theta| quad_phi_k(n, lam, distance(theta), spec),
    )?;
    let p1 = quad_phi_k(n, lam, t1, spec)?;
    let p2 = quad_phi_k(n, lam, t2, spec)?;
    Ok(OracleReport::new(
        p1.value * p2.value,
        lhs.value / norm,
        lhs.nodes + inner_nodes + p1.nodes + p2.nodes,
    ))
}

/// The same identity with the left factor replaced by the Eisenstein entry
/// `Φ` of the SO(2) character `char_n`: `∫_K Φ(a_{t1} k a_{t2}) dk` against
/// `Φ(a_{t1}) φ(a_{t2})`. In the disk, `k a_{t2}·o = r₂e^{iψ}` and `a_{t1}`
/// acts by `w ↦ (w + r₁)/(1 + r₁w)`. Both sides vanish at `t1 = 0` for
/// `char_n ≠ 0`, so `rel_err` is scaled by `max(|Φ(a_{t1})φ(a_{t2})|, |Φ(a_{t2})|)`,
/// the second term being the modulus of the integrand on that circle.
pub fn functional_equation_check_chi(
    char_n: i64,
    lam: ComplexScalar,
    t1: f64,
    t2: f64,
    spec: &QuadratureSpec,
) -> Result<OracleReport, ModelError> {
    check_t(t1)?;
    check_t(t2)?;
    let r1 = (0.5 * t1).tanh();
    let r2 = (0.5 * t2).tanh();
    let point = |psi: f64| {
        let w = ComplexScalar::from_polar(r2, psi);
        (w + r1) / (1.0 + r1 * w)
    };
    let (lhs, inner_nodes) = nested(
        |f| Ok(integrate_interval(f, -PI, PI, spec)?),
        |psi| quad_eisenstein_sl2_at(char_n, lam, point(psi), spec),
    )?;
    let left = quad_eisenstein_sl2(char_n, lam, t1, spec)?;
    let right = quad_phi_k(2, lam, t2, spec)?;
    let circle = quad_eisenstein_sl2(char_n, lam, t2, spec)?;
    Ok(OracleReport::with_scale(
        left.value * right.value,
        lhs.value / (2.0 * PI),
        circle.value.norm(),
        lhs.nodes + inner_nodes + left.nodes + right.nodes + circle.nodes,
    ))
}
