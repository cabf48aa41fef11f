//! Concrete models: `SL(2,ℝ)` with its Iwasawa decomposition, the ball model
//! of `H^n`, and quadrature oracles for the defining integrals of the
//! spherical functions, the c-function and the Eisenstein integral.
//!
//! Conventions: `K = SO(2)` with `k_θ = [[cos θ, −sin θ], [sin θ, cos θ]]`,
//! `a_t = diag(e^{t/2}, e^{−t/2})` so that `α(H) = 1`, `N` upper unipotent.
//! In the disk picture `a_t·o = tanh(t/2)` and `k_θ` acts as rotation by
//! `e^{−2iθ}`; the boundary point of `k_θ M` is `e^{−2iθ}`. The Weyl
//! representative `m*` is `k_{π/2}`.

mod oracles;
mod quadrature;

pub use oracles::{
    functional_equation_check, functional_equation_check_chi, nbar_normalizer, quad_c_nbar,
    quad_csigma_sl2, quad_eisenstein_sl2, quad_eisenstein_sl2_at, quad_phi_k, OracleReport,
};
pub use quadrature::{
    integrate_exp_sinh, integrate_half_line, integrate_interval, CompensatedSum, Integral,
    QuadratureError, QuadratureScheme, QuadratureSpec,
};

use crate::complexmath::ComplexScalar;
use crate::rankone::RankOneError;

const UNIMODULAR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("matrix is not unimodular: det = {0}")]
    NonUnimodular(f64),
    #[error("point outside the open unit ball: |x| = {0}")]
    OutsideBall(f64),
    #[error("boundary point has norm {0}, expected 1")]
    NotOnBoundary(f64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("x is within 1e-14 of the boundary point b")]
    BoundaryDegenerate,
    #[error("integral diverges: {0}")]
    Divergent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    RankOne(#[from] RankOneError),
}

/// `[[a, b], [c, d]]` with `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Matrix2 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, ModelError> {
        let m = Self { a, b, c, d };
        let det = m.det();
        let scale = 1.0 + (a * d).abs() + (b * c).abs();
        if !det.is_finite() || (det - 1.0).abs() > UNIMODULAR_TOLERANCE * scale {
            return Err(ModelError::NonUnimodular(det));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { a: c, b: -s, c: s, d: c }
    }

    /// `a_t = diag(e^{t/2}, e^{−t/2})`.
    pub fn a_t(t: f64) -> Self {
        Self { a: (0.5 * t).exp(), b: 0.0, c: 0.0, d: (-0.5 * t).exp() }
    }

    pub fn n_upper(x: f64) -> Self {
        Self { a: 1.0, b: x, c: 0.0, d: 1.0 }
    }

    /// `n̄(x) = [[1, 0], [x, 1]]`.
    pub fn n_lower(x: f64) -> Self {
        Self { a: 1.0, b: 0.0, c: x, d: 1.0 }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d]
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// `g·o` in the unit disk: `g·i` in the upper half plane mapped by
    /// `τ ↦ (τ − i)/(τ + i)`.
    pub fn disk_point(&self) -> ComplexScalar {
        let i = ComplexScalar::i();
        let tau = (self.a * i + self.b) / (self.c * i + self.d);
        (tau - i) / (tau + i)
    }
}

/// `g = k_θ · exp(h H) · n_upper(n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Iwasawa {
    pub theta: f64,
    pub h: f64,
    pub n: f64,
}

impl Iwasawa {
    pub fn reconstruct(&self) -> Matrix2 {
        Matrix2::rotation(self.theta).mul(&Matrix2::a_t(self.h)).mul(&Matrix2::n_upper(self.n))
    }
}

/// KAN factorization. The first column of `g` is `e^{h/2}(cos θ, sin θ)`.
pub fn iwasawa(g: &Matrix2) -> Result<Iwasawa, ModelError> {
    Matrix2::new(g.a, g.b, g.c, g.d)?;
    let r2 = g.a * g.a + g.c * g.c;
    let theta = g.c.atan2(g.a);
    let h = r2.ln();
    // k⁻¹g = [[e^{h/2}, e^{h/2} n], [0, e^{−h/2}]]
    let (s, c) = theta.sin_cos();
    let upper = c * g.b + s * g.d;
    let n = upper / r2.sqrt();
    Ok(Iwasawa { theta, h, n })
}

/// `α(H(g))` for the KAN decomposition: `ln(g₁₁² + g₂₁²)`.
pub fn iwasawa_h(g: &Matrix2) -> Result<f64, ModelError> {
    iwasawa(g).map(|d| d.h)
}

/// A point of the open unit ball in `ℝ^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    coords: Vec<f64>,
}

impl BallPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self, ModelError> {
        let norm = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm < 1.0) {
            return Err(ModelError::OutsideBall(norm));
        }
        Ok(Self { coords })
    }

    pub fn origin(n: usize) -> Self {
        Self { coords: vec![0.0; n] }
    }

    /// The point at hyperbolic distance `t` from the origin along `e₁`.
    pub fn radial(n: usize, t: f64) -> Self {
        let mut coords = vec![0.0; n];
        coords[0] = (0.5 * t).tanh();
        Self { coords }
    }

    pub fn from_disk(w: ComplexScalar) -> Result<Self, ModelError> {
        Self::new(vec![w.re, w.im])
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// A point of the unit sphere `B = K/M`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    coords: Vec<f64>,
}

impl BoundaryPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self, ModelError> {
        let norm = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !((norm - 1.0).abs() <= 1e-12) {
            return Err(ModelError::NotOnBoundary(norm));
        }
        Ok(Self { coords })
    }

    /// `e^{iψ}` on the unit circle.
    pub fn angle(psi: f64) -> Self {
        let (s, c) = psi.sin_cos();
        Self { coords: vec![c, s] }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// `A(x, b)(H) = ln[(1 − |x|²)/|x − b|²]`, the log of the Poisson kernel.
pub fn horocycle_bracket(n: usize, x: &BallPoint, b: &BoundaryPoint) -> Result<f64, ModelError> {
    if x.coords.len() != n || b.coords.len() != n {
        return Err(ModelError::Dimension(format!(
            "n = {n}, |x| has {} coordinates, b has {}",
            x.coords.len(),
            b.coords.len()
        )));
    }
    let x2: f64 = x.coords.iter().map(|v| v * v).sum();
    let d2: f64 = x.coords.iter().zip(&b.coords).map(|(p, q)| (p - q) * (p - q)).sum();
    if d2.sqrt() < 1e-14 {
        return Err(ModelError::BoundaryDegenerate);
    }
    Ok((1.0 - x2).ln() - d2.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn iwasawa_examples() {
        assert_eq!(iwasawa_h(&Matrix2::identity()).unwrap(), 0.0);
        assert!((iwasawa_h(&Matrix2::a_t(1.7)).unwrap() - 1.7).abs() < 1e-15);
        assert!((iwasawa_h(&Matrix2::n_lower(1.0)).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!(iwasawa_h(&Matrix2 { a: 2.0, b: 0.0, c: 0.0, d: 2.0 }).is_err());
    }

    #[test]
    fn iwasawa_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let g = Matrix2::rotation(rng.gen_range(-3.0..3.0))
                .mul(&Matrix2::a_t(rng.gen_range(-4.0..4.0)))
                .mul(&Matrix2::n_lower(rng.gen_range(-3.0..3.0)))
                .mul(&Matrix2::n_upper(rng.gen_range(-3.0..3.0)));
            let back = iwasawa(&g).unwrap().reconstruct();
            assert!(back.max_abs_diff(&g) < 1e-12 * (1.0 + g.a.abs() + g.b.abs() + g.c.abs() + g.d.abs()));
        }
    }

    #[test]
    fn disk_conventions() {
        assert!((Matrix2::a_t(1.2).disk_point() - (0.6f64).tanh()).norm() < 1e-15);
        let theta = 0.4;
        let moved = Matrix2::rotation(theta).mul(&Matrix2::a_t(1.2)).disk_point();
        let expect = ComplexScalar::from_polar(0.6f64.tanh(), -2.0 * theta);
        assert!((moved - expect).norm() < 1e-14);
    }

    #[test]
    fn bracket_examples() {
        let b = BoundaryPoint::angle(0.9);
        assert_eq!(horocycle_bracket(2, &BallPoint::origin(2), &b).unwrap(), 0.0);
        let t = 2.3;
        let x = BallPoint::radial(2, t);
        let h = horocycle_bracket(2, &x, &BoundaryPoint::angle(0.0)).unwrap();
        assert!((h - t).abs() < 1e-13);
        let rotate = |v: &[f64], a: f64| vec![a.cos() * v[0] - a.sin() * v[1], a.sin() * v[0] + a.cos() * v[1]];
        let x = BallPoint::new(vec![0.3, -0.5]).unwrap();
        let b = BoundaryPoint::angle(2.0);
        let base = horocycle_bracket(2, &x, &b).unwrap();
        let xr = BallPoint::new(rotate(x.coords(), 1.1)).unwrap();
        let br = BoundaryPoint::new(rotate(b.coords(), 1.1)).unwrap();
        assert!((horocycle_bracket(2, &xr, &br).unwrap() - base).abs() < 1e-13);
        assert!(horocycle_bracket(2, &x, &BoundaryPoint::new(vec![1.0, 0.0, 0.0]).unwrap()).is_err());
    }
}
