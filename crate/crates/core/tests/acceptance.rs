//! Acceptance suite. Each test prints one `PASS`/`FAIL` line to stderr
//! (bypassing output capture) and then asserts.

use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spherical_core::cfun::{c_alpha, c_full, c_sigma, is_simple, non_simple_witnesses, SIMPLE_TOLERANCE};
use spherical_core::complexmath::{gamma, gauss_2f1_at_one, recip_gamma, sin_pi, ComplexScalar};
use spherical_core::higherrank::{det_a, det_a_factorwise, hs_norm_check, FactorKTypeTable};
use spherical_core::models::{
    functional_equation_check, functional_equation_check_chi, quad_c_nbar, quad_csigma_sl2, quad_phi_k,
    QuadratureSpec,
};
use spherical_core::rankone::{
    asymptotic_limit, c_lambda_delta, c_sigma_minus, hc_series_eval, hc_series_gammas, limit_large_t, phi_tau,
    small_t_ratio, KTypeCatalog, KTypeRankOne, KTypeSelector, RankOneSpace,
};
use spherical_core::rootdata::{length, longest_element, weyl_apply, weyl_group_elements, RootDatum, SpectralParam};

const GAMMA_TOL: f64 = 1e-12;
const GAUSS_TOL: f64 = 1e-8;
const C_NBAR_TOL: f64 = 1e-6;
const PHI_K_ABS_TOL: f64 = 1e-8;
const FUNCTIONAL_TOL: f64 = 1e-6;
const SERIES_TOL: f64 = 1e-8;
const GROWTH_BOUND: f64 = 0.5;
const ASYMPTOTIC_TOL: f64 = 1e-5;
const CSIGMA_TOL: f64 = 1e-6;
const HS_TOL: f64 = 1e-8;
const COCYCLE_TOL: f64 = 1e-10;
const LONGEST_TOL: f64 = 1e-13;
const RANK_ONE_DET_TOL: f64 = 1e-12;
const TWO_PATH_TOL: f64 = 1e-10;
const SMALL_T_TOL: f64 = 1e-4;
const EIGEN_TOL: f64 = 1e-6;

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

fn rel(a: ComplexScalar, b: ComplexScalar) -> f64 {
    (a - b).norm() / b.norm()
}

fn report(id: u32, name: &str, ok: bool, start: Instant, detail: String) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let secs = start.elapsed().as_secs_f64();
    let _ = writeln!(std::io::stderr(), "criterion {id:>2} {verdict} {name} [{secs:.2}s]: {detail}");
    assert!(ok, "criterion {id} {name}: {detail}");
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

/// Distance from `z` to the poles of `Γ`.
fn pole_distance(z: ComplexScalar) -> f64 {
    if z.re > 0.5 {
        return f64::INFINITY;
    }
    let k = z.re.round().min(0.0);
    (z - k).norm()
}

#[test]
fn c01_gamma_identities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut worst_refl, mut worst_dup, mut count) = (0.0f64, 0.0f64, 0);
    while count < 1000 {
        let z = c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let args = [z, 1.0 - z, 2.0 * z, z + 0.5];
        if args.iter().any(|&w| pole_distance(w) <= 0.1) {
            continue;
        }
        count += 1;
        let g = gamma(z).unwrap();
        let refl = g * gamma(1.0 - z).unwrap();
        worst_refl = worst_refl.max(rel(refl, PI / sin_pi(z)));
        let dup = g * gamma(z + 0.5).unwrap();
        let expect = (ComplexScalar::from(2.0).ln() * (1.0 - 2.0 * z)).exp() * PI.sqrt() * gamma(2.0 * z).unwrap();
        worst_dup = worst_dup.max(rel(dup, expect));
    }
    let ok = worst_refl <= GAMMA_TOL && worst_dup <= GAMMA_TOL;
    report(1, "gamma reflection and duplication", ok, start, format!("max rel reflection {worst_refl:.2e}, duplication {worst_dup:.2e}, tol {GAMMA_TOL:.0e}"));
}

/// Partial sums of the hypergeometric series at `z = 1`, extrapolated in
/// `N → ∞` with the tail exponents `s, s+1, …`, `s = c − a − b`.
fn richardson_at_one(a: ComplexScalar, b: ComplexScalar, cc: ComplexScalar) -> ComplexScalar {
    let s = cc - a - b;
    let levels = 7;
    let base = 256usize;
    let mut sums = Vec::with_capacity(levels);
    let (mut term, mut acc, mut n) = (c(1.0, 0.0), c(0.0, 0.0), 0usize);
    for j in 0..levels {
        let target = base << j;
        while n < target {
            acc += term;
            let nf = n as f64;
            term *= (a + nf) * (b + nf) / ((cc + nf) * (nf + 1.0));
            n += 1;
        }
        sums.push(acc);
    }
    let ln2 = 2f64.ln();
    let mut table = sums;
    for k in 0..levels - 1 {
        let factor = ((s + k as f64) * ln2).exp();
        table = table.windows(2).map(|w| (factor * w[1] - w[0]) / (factor - 1.0)).collect();
    }
    table[0]
}

#[test]
fn c02_gauss_summation() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut worst_gamma, mut worst_series, mut count) = (0.0f64, 0.0f64, 0);
    while count < 100 {
        let a = c(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0));
        let b = c(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0));
        let s = c(rng.gen_range(1.0..3.0), rng.gen_range(-1.0..1.0));
        let cc = a + b + s;
        if [cc, cc - a, cc - b].iter().any(|&w| pole_distance(w) <= 0.1) {
            continue;
        }
        count += 1;
        let value = gauss_2f1_at_one(a, b, cc).unwrap();
        let ratio = gamma(cc).unwrap() * gamma(s).unwrap() / (gamma(cc - a).unwrap() * gamma(cc - b).unwrap());
        worst_gamma = worst_gamma.max(rel(value, ratio));
        worst_series = worst_series.max(rel(value, richardson_at_one(a, b, cc)));
    }
    let ok = worst_gamma <= GAUSS_TOL && worst_series <= GAUSS_TOL;
    report(2, "Gauss summation", ok, start, format!("max rel vs Gamma ratio {worst_gamma:.2e}, vs extrapolated series {worst_series:.2e}, tol {GAUSS_TOL:.0e}"));
}

#[test]
fn c03_c_function_vs_nbar_integral() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for n in 2..=4u32 {
        for _ in 0..20 {
            let z = c(rng.gen_range(0.2..2.0), rng.gen_range(-3.0..3.0));
            let lam = -ComplexScalar::i() * z;
            let closed = c_alpha(lam, n - 1, 0).unwrap().value;
            let quad = quad_c_nbar(n as usize, lam, &spec()).unwrap().value;
            worst = worst.max(rel(quad, closed));
        }
    }
    report(3, "c-function vs N-bar integral", worst <= C_NBAR_TOL, start, format!("H^2..H^4, 60 samples, max rel {worst:.2e}, tol {C_NBAR_TOL:.0e}"));
}

#[test]
fn c04_zonal_spherical_function() {
    let start = Instant::now();
    let h2 = RankOneSpace::hyperbolic(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for k in 0..10 {
        let im = if k < 5 { 0.0 } else { rng.gen_range(-0.4..0.4) };
        let lam = c(rng.gen_range(0.0..4.0), im);
        for t in [0.0, 0.5, 1.0, 2.0, 3.0] {
            let closed = phi_tau(&h2, &KTypeRankOne::trivial(), lam, t).unwrap();
            let quad = quad_phi_k(2, lam, t, &spec()).unwrap().value;
            worst = worst.max((closed - quad).norm());
        }
    }
    report(4, "zonal spherical function vs K-integral", worst <= PHI_K_ABS_TOL, start, format!("H^2, 50 points, max abs {worst:.2e}, tol {PHI_K_ABS_TOL:.0e}"));
}

#[test]
fn c05_functional_equation() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut worst, mut worst_chi) = (0.0f64, 0.0f64);
    for _ in 0..5 {
        let lam = c(rng.gen_range(0.1..2.5), rng.gen_range(-0.3..0.3));
        for (t1, t2) in [(0.0, 1.0), (1.0, 1.0), (0.5, 2.0)] {
            worst = worst.max(functional_equation_check(2, lam, t1, t2, &spec()).unwrap().rel_err);
            worst_chi = worst_chi.max(functional_equation_check_chi(2, lam, t1, t2, &spec()).unwrap().rel_err);
        }
    }
    let ok = worst <= FUNCTIONAL_TOL && worst_chi <= FUNCTIONAL_TOL;
    report(5, "functional equation", ok, start, format!("max rel zonal {worst:.2e}, chi2 entry {worst_chi:.2e}, tol {FUNCTIONAL_TOL:.0e}"));
}

#[test]
fn c06_series_matches_closed_form() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for n in [2, 3] {
        let space = RankOneSpace::hyperbolic(n).unwrap();
        for _ in 0..10 {
            let lam = c(rng.gen_range(0.2..3.0), rng.gen_range(-0.5..0.5));
            for t in [1.0, 1.5, 2.0, 3.0, 5.0] {
                let series = hc_series_eval(&space, lam, t, 40).unwrap();
                let closed = phi_tau(&space, &KTypeRankOne::trivial(), lam, t).unwrap();
                worst = worst.max(rel(series, closed));
            }
        }
    }
    report(6, "series vs closed form", worst <= SERIES_TOL, start, format!("H^2, H^3, N = 40, t in [1, 5], max rel {worst:.2e}, tol {SERIES_TOL:.0e}"));
}

#[test]
fn c07_coefficient_growth() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = f64::NEG_INFINITY;
    for space in [RankOneSpace::hyperbolic(2).unwrap(), RankOneSpace::new(4, 3).unwrap()] {
        for _ in 0..10 {
            let lam = c(rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..1.0));
            let coeffs = hc_series_gammas(&space, lam, 60).unwrap();
            worst = worst.max(coeffs.growth_rate(20, 60));
        }
    }
    report(7, "coefficient growth", worst < GROWTH_BOUND, start, format!("max ln|Γ_n|/n over 20..=60 is {worst:.3}, bound {GROWTH_BOUND}"));
}

fn asymptotic_errors(space: &RankOneSpace, kt: &KTypeRankOne, lam: ComplexScalar) -> (f64, f64) {
    let limit = asymptotic_limit(space, kt, lam).unwrap();
    let err = |t: f64| rel(limit_large_t(space, kt, lam, t).unwrap(), limit);
    (err(10.0), err(18.0))
}

#[test]
fn c08_asymptotic_limit() {
    let start = Instant::now();
    let h2 = RankOneSpace::hyperbolic(2).unwrap();
    let h3 = RankOneSpace::hyperbolic(3).unwrap();
    let catalog = KTypeCatalog::builtin(&[h3]);
    let cat_kt = KTypeSelector::Named("s2r0".into()).resolve(&h3, Some(&catalog)).unwrap();
    let cases = [(h2, KTypeRankOne::from_rs(&h2, 0, 2).unwrap()), (h3, cat_kt)];
    let mut ok = true;
    let mut lines = Vec::new();
    for (name, (space, kt)) in ["H^2 s2r0", "H^3 catalog s2r0"].iter().zip(&cases) {
        for eta in [0.3, 0.8, -0.3, -0.8] {
            let (e10, e18) = asymptotic_errors(space, kt, c(1.1, eta));
            if eta > 0.0 {
                ok &= e18 <= ASYMPTOTIC_TOL && e10 > e18;
            }
            lines.push(format!("{name} Im λ = {eta}: t=10 {e10:.2e}, t=18 {e18:.2e}"));
        }
    }
    report(8, "large-t limit", ok, start, format!("tol {ASYMPTOTIC_TOL:.0e} at t = 18 for Im λ in {{0.3, 0.8}}; {}", lines.join("; ")));
}

#[test]
fn c09_c_sigma_vs_integral() {
    let start = Instant::now();
    let h2 = RankOneSpace::hyperbolic(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for char_n in [0i64, 2, 4] {
        let kt = KTypeSelector::Character(char_n).resolve(&h2, None).unwrap();
        for _ in 0..10 {
            let lam = c(rng.gen_range(-2.0..2.0), -rng.gen_range(0.3..1.5));
            let closed = c_sigma_minus(&h2, &kt, lam).unwrap();
            let quad = quad_csigma_sl2(char_n, lam, &spec()).unwrap().value;
            worst = worst.max(rel(quad, closed));
        }
    }
    report(9, "C_sigma closed form vs integral", worst <= CSIGMA_TOL, start, format!("characters 0, 2, 4, max rel {worst:.2e}, tol {CSIGMA_TOL:.0e}"));
}

#[test]
fn c10_hilbert_schmidt_norm() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    for space in [RankOneSpace::hyperbolic(3).unwrap(), RankOneSpace::new(4, 3).unwrap()] {
        let catalog = KTypeCatalog::builtin(&[space]);
        let kts: Vec<_> = catalog
            .records()
            .iter()
            .map(|r| r.resolve().unwrap().1)
            .filter(|kt| !kt.is_trivial())
            .take(2)
            .collect();
        assert_eq!(kts.len(), 2);
        for kt in &kts {
            for _ in 0..20 {
                let lam = rng.gen_range(0.05..4.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                worst = worst.max(hs_norm_check(&space, kt, lam).unwrap().rel_err);
            }
        }
    }
    report(10, "Hilbert-Schmidt norm", worst <= HS_TOL, start, format!("|C_σ(λ)|² vs |c(λ)|², max rel {worst:.2e}, tol {HS_TOL:.0e}"));
}

fn random_lambda(rng: &mut ChaCha8Rng, rank: usize) -> SpectralParam {
    SpectralParam::new((0..rank).map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0))).collect())
}

#[test]
fn c11_cocycle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut worst, mut worst_w0, mut pairs) = (0.0f64, 0.0f64, 0);
    for datum in [RootDatum::a2(1).unwrap(), RootDatum::b2(1, 2).unwrap()] {
        let elements = weyl_group_elements(&datum).unwrap();
        let w0 = longest_element(&datum).unwrap();
        for _ in 0..100 {
            let lam = random_lambda(&mut rng, 2);
            for u in &elements {
                for v in &elements {
                    let uv = u.compose(v);
                    if length(&datum, &uv).unwrap() != u.word_len() + v.word_len() {
                        continue;
                    }
                    pairs += 1;
                    let left = c_sigma(&datum, &uv, &lam).unwrap().value;
                    let vl = weyl_apply(&datum, v, &lam).unwrap();
                    let right = c_sigma(&datum, u, &vl).unwrap().value * c_sigma(&datum, v, &lam).unwrap().value;
                    worst = worst.max(rel(left, right));
                }
            }
            let full = c_full(&datum, &lam).unwrap().value;
            worst_w0 = worst_w0.max(rel(c_sigma(&datum, &w0, &lam).unwrap().value, full));
        }
    }
    let ok = worst <= COCYCLE_TOL && worst_w0 <= LONGEST_TOL;
    report(11, "cocycle law", ok, start, format!("A2, B2, {pairs} pair evaluations, max rel {worst:.2e} (tol {COCYCLE_TOL:.0e}); c_w0 vs c_full {worst_w0:.2e} (tol {LONGEST_TOL:.0e})"));
}

#[test]
fn c12_determinant_formula() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let h3 = RankOneSpace::hyperbolic(3).unwrap();
    let datum = h3.datum();
    let w1 = spherical_core::rootdata::WeylElement::from_word(vec![1]);
    let mut worst_rank_one = 0.0f64;
    for (r, s) in [(0, 1), (0, 2), (0, 3)] {
        let kt = KTypeRankOne::from_rs(&h3, r, s).unwrap();
        let table = FactorKTypeTable::new(w1.clone(), vec![((1, 1), h3, kt)]).unwrap();
        for _ in 0..10 {
            let l = c(rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..1.0));
            let det = det_a(&datum, &w1, &SpectralParam::rank_one(l), &table).unwrap();
            worst_rank_one = worst_rank_one.max(rel(det, c_sigma_minus(&h3, &kt, l).unwrap()));
        }
    }
    let text = include_str!("data/a2_factor_table.json");
    let table = FactorKTypeTable::from_json_str(text).unwrap();
    let a2 = RootDatum::a2(2).unwrap();
    let w = table.word().clone();
    let mut worst_two_path = 0.0f64;
    for _ in 0..20 {
        let lam = random_lambda(&mut rng, 2);
        let direct = det_a(&a2, &w, &lam, &table).unwrap();
        let factorwise = det_a_factorwise(&a2, &w, &lam, &table).unwrap();
        worst_two_path = worst_two_path.max(rel(factorwise, direct));
    }
    let ok = worst_rank_one <= RANK_ONE_DET_TOL && worst_two_path <= TWO_PATH_TOL;
    report(12, "determinant formula", ok, start, format!(
        "rank one vs C_σ {worst_rank_one:.2e} (tol {RANK_ONE_DET_TOL:.0e}); A2 two paths {worst_two_path:.2e} (tol {TWO_PATH_TOL:.0e})"
    ));
}

/// `1/Γ⁺_X` for a rank-one datum, from the denominator arguments written out.
fn recip_gamma_plus(m_alpha: u32, m_2alpha: u32, lam: ComplexScalar) -> ComplexScalar {
    let z = ComplexScalar::i() * lam;
    let ma = m_alpha as f64;
    let m2a = m_2alpha as f64;
    recip_gamma(0.5 * (0.5 * ma + 1.0 + z)) * recip_gamma(0.5 * (0.5 * ma + m2a + z))
}

#[test]
fn c13_simplicity_predicate() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let h2 = RootDatum::rank_one(1, 0).unwrap();
    let special = c(0.0, 1.5);
    let mut ok = !is_simple(&h2, &SpectralParam::rank_one(special), SIMPLE_TOLERANCE).unwrap();
    let mut generic = Vec::new();
    for _ in 0..50 {
        let lam = c(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        ok &= is_simple(&h2, &SpectralParam::rank_one(lam), SIMPLE_TOLERANCE).unwrap();
        generic.push(lam);
    }
    let mut probes: Vec<ComplexScalar> = (0..12).map(|k| c(0.0, 0.5 * k as f64)).collect();
    probes.extend(generic.iter().take(10));
    let mut mismatches = 0;
    let mut changed = false;
    let base: Vec<bool> = probes.iter().map(|&l| is_simple(&h2, &SpectralParam::rank_one(l), SIMPLE_TOLERANCE).unwrap()).collect();
    for (ma, m2a) in [(1, 0), (2, 0), (3, 0), (1, 1), (2, 1), (4, 3)] {
        let datum = RootDatum::rank_one(ma, m2a).unwrap();
        for (k, &lam) in probes.iter().enumerate() {
            let flagged = !non_simple_witnesses(&datum, &SpectralParam::rank_one(lam), SIMPLE_TOLERANCE).unwrap().is_empty();
            let vanishes = recip_gamma_plus(ma, m2a, lam).norm() < 1e-9;
            if flagged != vanishes {
                mismatches += 1;
            }
            changed |= flagged == base[k];
        }
    }
    ok &= mismatches == 0 && changed;
    report(13, "simplicity predicate", ok, start, format!(
        "λ = 1.5i non-simple on H^2, 50 generic simple; {mismatches} disagreements with recomputed Gamma arguments over 6 multiplicity choices"
    ));
}

#[test]
fn c14_small_t_ratio() {
    let start = Instant::now();
    let h2 = RankOneSpace::hyperbolic(2).unwrap();
    let mut worst = 0.0f64;
    for s in [1, 2] {
        let kt = KTypeRankOne::from_rs(&h2, 0, s).unwrap();
        for lam in [c(0.8, -0.3), c(1.7, 0.2), c(-0.4, 0.6), c(2.5, 0.0)] {
            let ratio = small_t_ratio(&h2, &kt, lam, 1e-3).unwrap();
            let target = c_lambda_delta(&h2, &kt, lam).unwrap() / c_lambda_delta(&h2, &kt, -lam).unwrap();
            worst = worst.max(rel(ratio, target));
        }
    }
    report(14, "small-t ratio", worst <= SMALL_T_TOL, start, format!("H^2, s = 1, 2, t = 1e-3, max rel {worst:.2e}, tol {SMALL_T_TOL:.0e}"));
}

#[test]
fn c15_radial_eigen_equation() {
    let start = Instant::now();
    let h = 4e-3;
    let mut worst = 0.0f64;
    let trivial = KTypeRankOne::trivial();
    for space in [RankOneSpace::hyperbolic(2).unwrap(), RankOneSpace::hyperbolic(3).unwrap(), RankOneSpace::new(4, 3).unwrap()] {
        for lam in [c(0.9, -0.35), c(2.2, 0.1)] {
            let f = |t: f64| phi_tau(&space, &trivial, lam, t).unwrap();
            let mu = space.eigenvalue(lam);
            for k in 0..20 {
                let t = 0.3 + 0.2 * k as f64;
                let (m2, m1, f0, p1, p2) = (f(t - 2.0 * h), f(t - h), f(t), f(t + h), f(t + 2.0 * h));
                let d2 = (-p2 + 16.0 * p1 - 30.0 * f0 + 16.0 * m1 - m2) / (12.0 * h * h);
                let d1 = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
                let estimate = (d2 + space.radial_coefficient(t) * d1) / f0;
                worst = worst.max(rel(estimate, mu));
            }
        }
    }
    report(15, "radial eigen-equation", worst <= EIGEN_TOL, start, format!("H^2, H^3, (4,3), 20 points each, max rel {worst:.2e}, tol {EIGEN_TOL:.0e}"));
}
