//! Gauss hypergeometric function `2F1(a, b; c; z)` on the closed unit disk.
//!
//! Strategy:
//! - terminating series when `a` or `b` is a non-positive integer;
//! - the power series in `z` for `|z| <= 0.9` (or when `1 - z` is not small);
//! - the `z -> 1 - z` connection formula otherwise, with the caller able to
//!   pass `1 - z` exactly (`tanh²t` loses everything to rounding for large `t`);
//! - when `c - a - b` sits near an integer the connection coefficients blow up
//!   and cancel. There the value is recovered by interpolating the analytic
//!   function `c ↦ F(a, b; c; z)` from a circle of nodes around the degenerate
//!   point.

use std::f64::consts::PI;

use super::gamma::{gamma_ratio, is_pole, nearest_pole, POLE_TOLERANCE};
use super::{ComplexScalar, SpecialFunctionError};

/// Hard cap on series terms.
pub const MAX_SERIES_TERMS: usize = 100_000;

const SERIES_EPS: f64 = 1e-17;
const DIRECT_RADIUS: f64 = 0.9;
/// `|c - a - b - m|` below which the connection formula is not used directly.
const DEGENERATE_DISTANCE: f64 = 1e-3;
const INTERP_RADIUS: f64 = 1e-2;
const INTERP_NODES: usize = 16;

fn one() -> ComplexScalar {
    ComplexScalar::new(1.0, 0.0)
}

/// Plain power series `Σ (a)_n (b)_n / ((c)_n n!) z^n`.
fn power_series(
    a: ComplexScalar,
    b: ComplexScalar,
    c: ComplexScalar,
    z: ComplexScalar,
) -> Result<ComplexScalar, SpecialFunctionError> {
    let mut term = one();
    let mut sum = one();
    // Neumaier compensation term.
    let mut comp = ComplexScalar::new(0.0, 0.0);
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0));
        term *= ratio * z;
        let next = sum + term;
        for (s, t, n, cm) in [
            (sum.re, term.re, next.re, &mut comp.re),
            (sum.im, term.im, next.im, &mut comp.im),
        ] {
            if s.abs() >= t.abs() {
                *cm += (s - n) + t;
            } else {
                *cm += (t - n) + s;
            }
        }
        sum = next;
        if term.norm() == 0.0 {
            return Ok(sum + comp);
        }
        // Tail bound once the term ratio has settled below one.
        let r = (ratio * z).norm();
        if r < 1.0 && term.norm() / (1.0 - r) <= SERIES_EPS * sum.norm().max(1e-300) {
            return Ok(sum + comp);
        }
    }
    Err(SpecialFunctionError::NonConvergence { terms: MAX_SERIES_TERMS })
}

/// Finite sum when `a` (or `b`) is the non-positive integer `-m`.
fn terminating_series(
    a: ComplexScalar,
    b: ComplexScalar,
    c: ComplexScalar,
    z: ComplexScalar,
    m: u64,
) -> ComplexScalar {
    let mut term = one();
    let mut sum = one();
    for n in 0..m {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
    }
    sum
}

fn terminating_degree(p: ComplexScalar) -> Option<u64> {
    // Exact integers only: the polynomial shortcut must not perturb values.
    if p.im == 0.0 && p.re <= 0.0 && p.re.fract() == 0.0 && p.re > -1e6 {
        Some((-p.re) as u64)
    } else {
        None
    }
}

/// Connection formula around `z = 1`, valid when `c - a - b` is not an integer.
fn connection(
    a: ComplexScalar,
    b: ComplexScalar,
    c: ComplexScalar,
    w: ComplexScalar,
) -> Result<ComplexScalar, SpecialFunctionError> {
    let s = c - a - b;
    let coef_a = gamma_ratio(&[c, s], &[c - a, c - b])?;
    let coef_b = gamma_ratio(&[c, -s], &[a, b])?;
    let mut value = ComplexScalar::new(0.0, 0.0);
    if coef_a != ComplexScalar::new(0.0, 0.0) {
        value += coef_a * power_series(a, b, one() - s, w)?;
    }
    if coef_b != ComplexScalar::new(0.0, 0.0) {
        let ws = (s * w.ln()).exp();
        value += coef_b * ws * power_series(c - a, c - b, one() + s, w)?;
    }
    Ok(value)
}

/// Barycentric interpolation in `c` on a circle of nodes centred on the
/// degenerate point `a + b + m`.
fn degenerate_connection(
    a: ComplexScalar,
    b: ComplexScalar,
    c: ComplexScalar,
    w: ComplexScalar,
    m: f64,
) -> Result<ComplexScalar, SpecialFunctionError> {
    let centre = a + b + m;
    let x = c - centre;
    let mut num = ComplexScalar::new(0.0, 0.0);
    let mut den = ComplexScalar::new(0.0, 0.0);
    for k in 0..INTERP_NODES {
        let node = ComplexScalar::from_polar(INTERP_RADIUS, 2.0 * PI * k as f64 / INTERP_NODES as f64);
        let ck = centre + node;
        if is_pole(ck) {
            return Err(SpecialFunctionError::ParameterPole(ck));
        }
        let fk = connection(a, b, ck, w)?;
        let diff = x - node;
        if diff.norm() < 1e-15 {
            return Ok(fk);
        }
        let weight = node / diff;
        num += weight * fk;
        den += weight;
    }
    Ok(num / den)
}

/// `2F1(a, b; c; z)` given both `z` and `1 - z`.
///
/// Callers that know `1 - z` more accurately than `1.0 - z` (e.g. `sech²t`
/// alongside `tanh²t`) should use this entry point.
pub fn gauss_2f1_with_complement(
    a: ComplexScalar,
    b: ComplexScalar,
    c: ComplexScalar,
    z: ComplexScalar,
    one_minus_z: ComplexScalar,
) -> Result<ComplexScalar, SpecialFunctionError> {
    for p in [a, b, c, z, one_minus_z] {
        if !(p.re.is_finite() && p.im.is_finite()) {
            return Err(SpecialFunctionError::NonFinite(p));
        }
    }
    if nearest_pole(c, POLE_TOLERANCE).is_some() {
        return Err(SpecialFunctionError::ParameterPole(c));
    }
    if z.norm() > 1.0 + 1e-14 {
        return Err(SpecialFunctionError::Domain(format!("|z| = {} exceeds 1", z.norm())));
    }
    if z == ComplexScalar::new(0.0, 0.0) {
        return Ok(one());
    }
    if let Some(m) = terminating_degree(a).or_else(|| terminating_degree(b)) {
        return Ok(terminating_series(a, b, c, z, m));
    }
    let w = one_minus_z;
    if w == ComplexScalar::new(0.0, 0.0) {
        return gauss_2f1_at_one(a, b, c);
    }
    if z.norm() <= DIRECT_RADIUS || w.norm() > 0.5 {
        if (z.norm() - 1.0).abs() <= 1e-14 && (c - a - b).re <= 0.0 {
            return Err(SpecialFunctionError::Domain(
                "series on |z| = 1 needs Re(c - a - b) > 0".into(),
            ));
        }
        return power_series(a, b, c, z);
    }
    let s = c - a - b;
    let m = s.re.round();
    if (s - m).norm() < DEGENERATE_DISTANCE {
        degenerate_connection(a, b, c, w, m)
    } else {
        connection(a, b, c, w)
    }
}

/// `2F1(a, b; c; z)` for `|z| <= 1`.
pub fn gauss_2f1(
    a: ComplexScalar,
    b: ComplexScalar,
    c: ComplexScalar,
    z: ComplexScalar,
) -> Result<ComplexScalar, SpecialFunctionError> {
    gauss_2f1_with_complement(a, b, c, z, one() - z)
}

/// Gauss summation: `2F1(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))`.
pub fn gauss_2f1_at_one(
    a: ComplexScalar,
    b: ComplexScalar,
    c: ComplexScalar,
) -> Result<ComplexScalar, SpecialFunctionError> {
    if nearest_pole(c, POLE_TOLERANCE).is_some() {
        return Err(SpecialFunctionError::ParameterPole(c));
    }
    let s = c - a - b;
    if s.re <= 0.0 {
        return Err(SpecialFunctionError::Domain(format!(
            "Gauss summation needs Re(c - a - b) > 0, got {s}"
        )));
    }
    gamma_ratio(&[c, s], &[c - a, c - b])
}
