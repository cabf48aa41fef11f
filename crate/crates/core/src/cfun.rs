//! The c-function as a product of rank-one Gamma factors, the partial
//! c-functions `c_σ`, the Gamma function `Γ⁺_X` of the space and the
//! simplicity predicate.

use std::f64::consts::LN_2;

use crate::complexmath::{log_gamma, nearest_pole, ComplexScalar, SpecialFunctionError};
use crate::rootdata::{negative_set, restrict, rho, RootDataError, RootDatum, SpectralParam, WeylElement};

/// Default tolerance of [`is_simple`].
pub const SIMPLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CFunctionError {
    /// A Gamma argument in the denominator hit a pole: c vanishes there and
    /// the parameter is not simple.
    #[error("denominator Gamma pole{} at argument {argument}", root_suffix(*.root))]
    DenominatorPole { root: Option<usize>, argument: ComplexScalar },
    /// Γ(⟨iλ,α₀⟩) hit a pole: a genuine pole of c.
    #[error("c has a pole{} (⟨iλ,α₀⟩ = {argument})", root_suffix(*.root))]
    NumeratorPole { root: Option<usize>, argument: ComplexScalar },
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Special(#[from] SpecialFunctionError),
}

fn root_suffix(root: Option<usize>) -> String {
    root.map(|r| format!(" for root {r}")).unwrap_or_default()
}

impl CFunctionError {
    fn at_root(self, index: usize) -> Self {
        match self {
            Self::DenominatorPole { argument, .. } => Self::DenominatorPole { root: Some(index + 1), argument },
            Self::NumeratorPole { argument, .. } => Self::NumeratorPole { root: Some(index + 1), argument },
            other => other,
        }
    }
}

/// A c-function value; `pole_flag` marks a numerator pole, in which case
/// `value` is infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CFunctionValue {
    pub value: ComplexScalar,
    pub pole_flag: bool,
    /// `⟨iλ,α₀⟩` of the (first) factor that produced the pole.
    pole_argument: Option<ComplexScalar>,
}

impl CFunctionValue {
    fn finite(value: ComplexScalar) -> Self {
        Self { value, pole_flag: false, pole_argument: None }
    }

    fn pole(argument: ComplexScalar) -> Self {
        Self {
            value: ComplexScalar::new(f64::INFINITY, 0.0),
            pole_flag: true,
            pole_argument: Some(argument),
        }
    }

    /// The value, or [`CFunctionError::NumeratorPole`] when flagged.
    pub fn into_finite(self) -> Result<ComplexScalar, CFunctionError> {
        match self.pole_argument {
            Some(argument) if self.pole_flag => Err(CFunctionError::NumeratorPole { root: None, argument }),
            _ => Ok(self.value),
        }
    }
}

/// The two denominator Gamma arguments of one factor, for `z = ⟨iλ,α₀⟩`.
pub fn denominator_arguments(z: ComplexScalar, m_alpha: u32, m_2alpha: u32) -> [ComplexScalar; 2] {
    let ma = m_alpha as f64;
    let m2a = m_2alpha as f64;
    [0.5 * (0.5 * ma + 1.0 + z), 0.5 * (0.5 * ma + m2a + z)]
}

/// Log of the uncalibrated single-root factor at `z = ⟨iλ,α₀⟩`.
fn log_factor_verbatim(z: ComplexScalar, m_alpha: u32, m_2alpha: u32) -> Result<ComplexScalar, CFunctionError> {
    let ma = m_alpha as f64;
    let m2a = m_2alpha as f64;
    let rho_alpha = 0.5 * ma + m2a;
    let mut log = (rho_alpha - z) * LN_2;
    for arg in denominator_arguments(z, m_alpha, m_2alpha) {
        if nearest_pole(arg, crate::complexmath::POLE_TOLERANCE).is_some() {
            return Err(CFunctionError::DenominatorPole { root: None, argument: arg });
        }
        log -= log_gamma(arg)?;
    }
    if nearest_pole(z, crate::complexmath::POLE_TOLERANCE).is_some() {
        return Err(CFunctionError::NumeratorPole { root: None, argument: z });
    }
    log += log_gamma(ComplexScalar::new(0.5 * (ma + m2a + 1.0), 0.0))?;
    log += log_gamma(z)?;
    Ok(log)
}

/// Calibration constant `κ(m_α, m_2α)`: the reciprocal of the uncalibrated
/// factor at `⟨iλ,α₀⟩ = ½m_α + m_2α`.
pub fn calibration_constant(m_alpha: u32, m_2alpha: u32) -> Result<f64, CFunctionError> {
    let rho_alpha = ComplexScalar::new(0.5 * m_alpha as f64 + m_2alpha as f64, 0.0);
    Ok((-log_factor_verbatim(rho_alpha, m_alpha, m_2alpha)?).exp().re)
}

/// Single-root factor of the c-function with `Λ = ⟨λ,α₀⟩`:
///
/// `κ · 2^{ρ_α − iΛ} Γ(½(m_α+m_2α+1)) Γ(iΛ) / [Γ(½(½m_α+1+iΛ)) Γ(½(½m_α+m_2α+iΛ))]`
///
/// normalized by `κ` so that the value at `Λ = −i(½m_α + m_2α)` is 1.
pub fn c_alpha(lam: ComplexScalar, m_alpha: u32, m_2alpha: u32) -> Result<CFunctionValue, CFunctionError> {
    let z = ComplexScalar::i() * lam;
    match log_factor_verbatim(z, m_alpha, m_2alpha) {
        Ok(log) => {
            let kappa = calibration_constant(m_alpha, m_2alpha)?;
            Ok(CFunctionValue::finite(log.exp() * kappa))
        }
        Err(CFunctionError::NumeratorPole { argument, .. }) => Ok(CFunctionValue::pole(argument)),
        Err(e) => Err(e),
    }
}

fn product_over(
    datum: &RootDatum,
    lam: &SpectralParam,
    roots: impl IntoIterator<Item = usize>,
) -> Result<CFunctionValue, CFunctionError> {
    let mut acc = ComplexScalar::new(1.0, 0.0);
    let mut pole: Option<ComplexScalar> = None;
    for k in roots {
        let m = datum.multiplicity(k);
        let factor = c_alpha(restrict(datum, lam, k)?, m.m_alpha, m.m_2alpha).map_err(|e| e.at_root(k))?;
        if factor.pole_flag {
            pole = pole.or(factor.pole_argument);
        } else {
            acc *= factor.value;
        }
    }
    Ok(match pole {
        Some(argument) => CFunctionValue::pole(argument),
        None => CFunctionValue::finite(acc),
    })
}

/// `c(λ) = Π_{α ∈ Σ₀⁺} c_α(⟨λ,α₀⟩)`.
pub fn c_full(datum: &RootDatum, lam: &SpectralParam) -> Result<CFunctionValue, CFunctionError> {
    product_over(datum, lam, 0..datum.positive_roots().len())
}

/// `c_σ(λ) = Π_{α ∈ Σ₀⁺ ∩ σ⁻¹Σ₀⁻} c_α(⟨λ,α₀⟩)`.
pub fn c_sigma(datum: &RootDatum, w: &WeylElement, lam: &SpectralParam) -> Result<CFunctionValue, CFunctionError> {
    let roots = negative_set(datum, w)?;
    product_over(datum, lam, roots)
}

/// A denominator Gamma argument sitting on a pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonSimpleWitness {
    /// 0-based index into the positive roots.
    pub root_index: usize,
    pub argument: ComplexScalar,
    pub pole: i64,
}

/// Every denominator Gamma argument within `tol` of a non-positive integer.
pub fn non_simple_witnesses(
    datum: &RootDatum,
    lam: &SpectralParam,
    tol: f64,
) -> Result<Vec<NonSimpleWitness>, RootDataError> {
    let mut out = Vec::new();
    for k in 0..datum.positive_roots().len() {
        let m = datum.multiplicity(k);
        let z = ComplexScalar::i() * restrict(datum, lam, k)?;
        for argument in denominator_arguments(z, m.m_alpha, m.m_2alpha) {
            if let Some(pole) = nearest_pole(argument, tol) {
                out.push(NonSimpleWitness { root_index: k, argument, pole });
            }
        }
    }
    Ok(out)
}

/// `λ` is simple iff `1/Γ⁺_X(λ) ≠ 0`.
pub fn is_simple(datum: &RootDatum, lam: &SpectralParam, tol: f64) -> Result<bool, RootDataError> {
    Ok(non_simple_witnesses(datum, lam, tol)?.is_empty())
}

/// `Γ⁺_X(λ) = Π_α Γ(½(½m_α+1+⟨iλ,α₀⟩)) Γ(½(½m_α+m_2α+⟨iλ,α₀⟩))`.
pub fn gamma_plus_x(datum: &RootDatum, lam: &SpectralParam) -> Result<ComplexScalar, CFunctionError> {
    let mut log = ComplexScalar::new(0.0, 0.0);
    for k in 0..datum.positive_roots().len() {
        let m = datum.multiplicity(k);
        let z = ComplexScalar::i() * restrict(datum, lam, k)?;
        for argument in denominator_arguments(z, m.m_alpha, m.m_2alpha) {
            log += log_gamma(argument).map_err(|e| match e {
                SpecialFunctionError::Pole { .. } => CFunctionError::DenominatorPole { root: Some(k + 1), argument },
                other => other.into(),
            })?;
        }
    }
    Ok(log.exp())
}

/// Verbatim-versus-calibrated comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationReport {
    /// Per positive root: the uncalibrated factor at `⟨iλ,α₀⟩ = ½m_α + m_2α`.
    pub verbatim_at_rho_alpha: Vec<ComplexScalar>,
    /// Per positive root: `κ`.
    pub kappa: Vec<f64>,
    /// `c(−iρ)` of the calibrated product. Equals 1 in rank one; in higher
    /// rank `⟨ρ,α₀⟩ ≠ ½m_α + m_2α` for non-simple roots, so it need not.
    pub c_full_at_minus_i_rho: ComplexScalar,
}

pub fn calibration_report(datum: &RootDatum) -> Result<CalibrationReport, CFunctionError> {
    let mut verbatim = Vec::new();
    let mut kappa = Vec::new();
    for m in datum.multiplicities() {
        let rho_alpha = ComplexScalar::new(m.rho_alpha(), 0.0);
        verbatim.push(log_factor_verbatim(rho_alpha, m.m_alpha, m.m_2alpha)?.exp());
        kappa.push(calibration_constant(m.m_alpha, m.m_2alpha)?);
    }
    let minus_i_rho = rho(datum).scale(-ComplexScalar::i());
    let c = c_full(datum, &minus_i_rho)?.into_finite()?;
    Ok(CalibrationReport { verbatim_at_rho_alpha: verbatim, kappa, c_full_at_minus_i_rho: c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexmath::gamma;
    use crate::rootdata::{longest_element, Multiplicity};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    fn rel(a: ComplexScalar, b: ComplexScalar) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn normalized_at_minus_i_rho() {
        for (ma, m2a) in [(1, 0), (2, 0), (3, 0), (4, 3), (2, 1), (8, 7)] {
            let rho_alpha = 0.5 * ma as f64 + m2a as f64;
            let v = c_alpha(c(0.0, -rho_alpha), ma, m2a).unwrap();
            assert!((v.value - 1.0).norm() < 1e-14, "{ma} {m2a}");
        }
    }

    #[test]
    fn hyperbolic_plane_closed_form() {
        // m_α = 1: c(Λ) = Γ(iΛ) / (√π Γ(iΛ + ½)).
        for lam in [c(1.0, -0.5), c(0.3, 0.0), c(-2.0, -1.1)] {
            let z = ComplexScalar::i() * lam;
            let expect = gamma(z).unwrap() / (PI.sqrt() * gamma(z + 0.5).unwrap());
            assert!(rel(c_alpha(lam, 1, 0).unwrap().value, expect) < 1e-13);
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for lam in [c(0.7, -0.2), c(1.9, 0.4), c(-3.0, -2.0)] {
            for (ma, m2a) in [(1, 0), (4, 3)] {
                let a = c_alpha(-lam.conj(), ma, m2a).unwrap().value;
                let b = c_alpha(lam, ma, m2a).unwrap().value.conj();
                assert!(rel(a, b) < 1e-13);
            }
        }
    }

    #[test]
    fn numerator_pole_flagged() {
        let v = c_alpha(c(0.0, 0.0), 1, 0).unwrap();
        assert!(v.pole_flag && !v.value.is_finite());
        assert!(matches!(v.into_finite(), Err(CFunctionError::NumeratorPole { .. })));
        // iΛ = -2 on H³: Γ(iΛ) pole, denominators Γ(0) and Γ(-1/2) ... ½(1+1-2)=0 is a pole too.
        assert!(matches!(c_alpha(c(0.0, 2.0), 2, 0), Err(CFunctionError::DenominatorPole { .. })));
    }

    #[test]
    fn denominator_pole_is_error() {
        let r = c_alpha(c(0.0, 1.5), 1, 0);
        assert!(matches!(r, Err(CFunctionError::DenominatorPole { .. })));
    }

    #[test]
    fn c_sigma_extremes() {
        let d = RootDatum::a2(1).unwrap();
        let lam = SpectralParam::new(vec![c(0.4, -0.3), c(-1.1, 0.25)]);
        let id = c_sigma(&d, &WeylElement::identity(), &lam).unwrap();
        assert_eq!(id.value, c(1.0, 0.0));
        let w0 = longest_element(&d).unwrap();
        let full = c_full(&d, &lam).unwrap().value;
        assert!(rel(c_sigma(&d, &w0, &lam).unwrap().value, full) < 1e-13);
        let s1 = c_sigma(&d, &WeylElement::from_word(vec![1]), &lam).unwrap().value;
        let direct = c_alpha(restrict(&d, &lam, 0).unwrap(), 1, 0).unwrap().value;
        assert!(rel(s1, direct) < 1e-15);
    }

    #[test]
    fn rank_one_c_full_is_c_alpha() {
        let d = RootDatum::rank_one(4, 3).unwrap();
        let lam = c(0.8, -0.6);
        let a = c_full(&d, &SpectralParam::rank_one(lam)).unwrap().value;
        assert_eq!(a, c_alpha(lam, 4, 3).unwrap().value);
    }

    #[test]
    fn simplicity_examples() {
        let h2 = RootDatum::hyperbolic(2).unwrap();
        let at = |l: ComplexScalar| SpectralParam::rank_one(l);
        assert!(is_simple(&h2, &at(c(1.0, -0.37)), SIMPLE_TOLERANCE).unwrap());
        assert!(!is_simple(&h2, &at(c(0.0, 1.5)), SIMPLE_TOLERANCE).unwrap());
        assert!(is_simple(&h2, &at(c(0.0, 0.0)), SIMPLE_TOLERANCE).unwrap());
        let w = non_simple_witnesses(&h2, &at(c(0.0, 1.5)), SIMPLE_TOLERANCE).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].pole, 0);
    }

    #[test]
    fn gamma_plus_values() {
        let h2 = RootDatum::hyperbolic(2).unwrap();
        let v = gamma_plus_x(&h2, &SpectralParam::rank_one(c(0.0, 0.0))).unwrap();
        assert!(rel(v, c(PI * 2f64.sqrt(), 0.0)) < 1e-13);
        let h3 = RootDatum::hyperbolic(3).unwrap();
        let v = gamma_plus_x(&h3, &SpectralParam::rank_one(c(1.0, 0.0))).unwrap();
        let expect = gamma(c(1.0, 0.5)).unwrap() * gamma(c(0.5, 0.5)).unwrap();
        assert!(rel(v, expect) < 1e-13);
        assert!(gamma_plus_x(&h2, &SpectralParam::rank_one(c(0.0, 1.5))).is_err());
        let near = gamma_plus_x(&h2, &SpectralParam::rank_one(c(0.0, 1.5 - 1e-7))).unwrap();
        assert!(near.norm() > 1e6);
    }

    #[test]
    fn calibration_diagnostic() {
        let r = calibration_report(&RootDatum::bc2(1, 2, 1).unwrap()).unwrap();
        for v in &r.verbatim_at_rho_alpha {
            assert!((v - 1.0).norm() < 1e-14);
        }
        let h = calibration_report(&RootDatum::rank_one(4, 3).unwrap()).unwrap();
        assert!((h.c_full_at_minus_i_rho - 1.0).norm() < 1e-14);
        let a2 = calibration_report(&RootDatum::a2(1).unwrap()).unwrap();
        assert!((a2.c_full_at_minus_i_rho - 1.0).norm() > 0.1);
        let a11 = RootDatum::a1xa1(Multiplicity::new(1, 0), Multiplicity::new(3, 0)).unwrap();
        assert!((calibration_report(&a11).unwrap().c_full_at_minus_i_rho - 1.0).norm() < 1e-14);
    }
}
