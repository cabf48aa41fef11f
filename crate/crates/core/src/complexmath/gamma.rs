//! Complex Gamma, log-Gamma and reciprocal Gamma.
//!
//! Right half-plane values come from the Lanczos approximation with g = 7 and
//! nine coefficients; the left half-plane is reached through the reflection
//! formula with an exactly range-reduced `sin(πz)`.

use std::f64::consts::PI;

use super::{ComplexScalar, SpecialFunctionError};

/// Absolute distance to a non-positive integer below which `z` counts as a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFICIENTS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

// 0.5 * ln(2π)
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Returns the non-positive integer `n` with `|z - n| < tol`, if any.
pub fn nearest_pole(z: ComplexScalar, tol: f64) -> Option<i64> {
    if z.re > 0.5 {
        return None;
    }
    let n = z.re.round();
    if n <= 0.0 && (z - ComplexScalar::new(n, 0.0)).norm() < tol {
        Some(n as i64)
    } else {
        None
    }
}

pub fn is_pole(z: ComplexScalar) -> bool {
    nearest_pole(z, POLE_TOLERANCE).is_some()
}

/// `sin(πz)` with the real part reduced modulo 2 before scaling by π, so that
/// integers give exact zeros.
pub fn sin_pi(z: ComplexScalar) -> ComplexScalar {
    let n = z.re.round();
    let r = z.re - n;
    let sign = if (n as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let (s, c) = (PI * r).sin_cos();
    let y = PI * z.im;
    ComplexScalar::new(sign * s * y.cosh(), sign * c * y.sinh())
}

/// Natural log of `sin(πz)`, overflow-safe for large `|Im z|`.
fn ln_sin_pi(z: ComplexScalar) -> ComplexScalar {
    if z.im.abs() < 30.0 {
        return sin_pi(z).ln();
    }
    // sin(πz) = (e^{iπz} - e^{-iπz}) / 2i; keep the dominant exponential in log form.
    let i = ComplexScalar::i();
    let n = z.re.round();
    let zr = ComplexScalar::new(z.re - n, z.im);
    let parity = if (n as i64).rem_euclid(2) == 0 {
        ComplexScalar::new(0.0, 0.0)
    } else {
        ComplexScalar::new(0.0, PI)
    };
    let base = if zr.im > 0.0 {
        // dominant term: -e^{-iπz}/(2i) = (i/2) e^{-iπz}
        -i * PI * zr + ComplexScalar::new(-std::f64::consts::LN_2, PI / 2.0)
            + (ComplexScalar::new(1.0, 0.0) - (2.0 * i * PI * zr).exp()).ln()
    } else {
        // dominant term: e^{iπz}/(2i) = (-i/2) e^{iπz}
        i * PI * zr + ComplexScalar::new(-std::f64::consts::LN_2, -PI / 2.0)
            + (ComplexScalar::new(1.0, 0.0) - (-2.0 * i * PI * zr).exp()).ln()
    };
    base + parity
}

fn lanczos_sum(zm1: ComplexScalar) -> ComplexScalar {
    let mut acc = ComplexScalar::new(LANCZOS_COEFFICIENTS[0], 0.0);
    for (k, &coef) in LANCZOS_COEFFICIENTS.iter().enumerate().skip(1) {
        acc += coef / (zm1 + k as f64);
    }
    acc
}

/// `ln Γ(z)` for `Re z >= 0.5`.
fn ln_gamma_right(z: ComplexScalar) -> ComplexScalar {
    let zm1 = z - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (zm1 + 0.5) * t.ln() - t + lanczos_sum(zm1).ln()
}

fn gamma_right(z: ComplexScalar) -> ComplexScalar {
    let zm1 = z - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    let power = ((zm1 + 0.5) * t.ln() - t).exp();
    (2.0 * PI).sqrt() * power * lanczos_sum(zm1)
}

fn check_pole(z: ComplexScalar) -> Result<(), SpecialFunctionError> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(SpecialFunctionError::NonFinite(z));
    }
    match nearest_pole(z, POLE_TOLERANCE) {
        Some(n) => Err(SpecialFunctionError::Pole { at: n, z }),
        None => Ok(()),
    }
}

/// Complex Gamma function.
pub fn gamma(z: ComplexScalar) -> Result<ComplexScalar, SpecialFunctionError> {
    check_pole(z)?;
    if z.re < 0.5 {
        Ok(PI / (sin_pi(z) * gamma_right(1.0 - z)))
    } else {
        Ok(gamma_right(z))
    }
}

/// Complex log-Gamma. Agrees with `ln Γ(z)` up to an additive multiple of `2πi`,
/// which is all that exponentiated ratios need.
pub fn log_gamma(z: ComplexScalar) -> Result<ComplexScalar, SpecialFunctionError> {
    check_pole(z)?;
    if z.re < 0.5 {
        Ok(ComplexScalar::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_right(1.0 - z))
    } else {
        Ok(ln_gamma_right(z))
    }
}

/// `1/Γ(z)`, entire; exactly zero at non-positive integers.
pub fn recip_gamma(z: ComplexScalar) -> ComplexScalar {
    if z.re < 0.5 {
        sin_pi(z) * gamma_right(1.0 - z) / PI
    } else {
        1.0 / gamma_right(z)
    }
}

/// `Π Γ(num) / Π Γ(den)` evaluated in log space.
///
/// A denominator argument at a pole makes the whole ratio vanish; a numerator
/// argument at a pole is an error.
pub fn gamma_ratio(
    num: &[ComplexScalar],
    den: &[ComplexScalar],
) -> Result<ComplexScalar, SpecialFunctionError> {
    for &z in num {
        check_pole(z)?;
    }
    let mut log = ComplexScalar::new(0.0, 0.0);
    for &z in den {
        if is_pole(z) {
            return Ok(ComplexScalar::new(0.0, 0.0));
        }
        log -= log_gamma(z)?;
    }
    for &z in num {
        log += log_gamma(z)?;
    }
    Ok(log.exp())
}
