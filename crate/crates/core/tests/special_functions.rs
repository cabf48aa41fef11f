use proptest::prelude::*;
use spherical_core::complexmath::{gamma, gauss_2f1, gauss_2f1_at_one, log_gamma, ComplexScalar};
use spherical_core::models::{integrate_half_line, QuadratureSpec};

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

fn rel(a: ComplexScalar, b: ComplexScalar) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn away_from_poles(z: ComplexScalar) -> bool {
    z.re > 0.5 || (z - z.re.round()).norm() > 0.1
}

fn small() -> impl Strategy<Value = ComplexScalar> {
    (-2.0..2.0f64, -1.0..1.0f64).prop_map(|(re, im)| c(re, im))
}

proptest! {
    #[test]
    fn gamma_conjugation(re in -8.0..8.0f64, im in -8.0..8.0f64) {
        let z = c(re, im);
        prop_assume!(away_from_poles(z));
        prop_assert!(rel(gamma(z.conj()).unwrap(), gamma(z).unwrap().conj()) < 1e-13);
    }

    #[test]
    fn gamma_recurrence(re in -8.0..8.0f64, im in -8.0..8.0f64) {
        let z = c(re, im);
        prop_assume!(away_from_poles(z));
        prop_assert!(rel(gamma(z + 1.0).unwrap(), z * gamma(z).unwrap()) < 1e-12);
    }

    #[test]
    fn log_gamma_exponentiates(re in 0.1..30.0f64, im in -30.0..30.0f64) {
        let z = c(re, im);
        prop_assert!(rel(log_gamma(z).unwrap().exp(), gamma(z).unwrap()) < 1e-11);
    }

    #[test]
    fn hypergeometric_symmetric_in_a_b(a in small(), b in small(), cs in small(), x in -0.9..0.9f64) {
        let cc = cs + 2.5;
        let z = c(x, 0.0);
        prop_assert!(rel(gauss_2f1(a, b, cc, z).unwrap(), gauss_2f1(b, a, cc, z).unwrap()) < 1e-12);
    }

    #[test]
    fn euler_transformation(a in small(), b in small(), cs in small(), x in 0.0..0.97f64) {
        let cc = cs + 2.5;
        let z = c(x, 0.0);
        let lhs = gauss_2f1(a, b, cc, z).unwrap();
        let rhs = (1.0 - z).powc(cc - a - b) * gauss_2f1(cc - a, cc - b, cc, z).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-9, "{lhs} vs {rhs}");
    }

    #[test]
    fn pfaff_transformation(a in small(), b in small(), cs in small(), x in -0.9..0.45f64) {
        let cc = cs + 2.5;
        let z = c(x, 0.0);
        let lhs = gauss_2f1(a, b, cc, z).unwrap();
        let rhs = (1.0 - z).powc(-a) * gauss_2f1(a, cc - b, cc, z / (z - 1.0)).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-10);
    }

    #[test]
    fn contiguous_relation_in_a(a in small(), b in small(), cs in small(), x in -0.9..0.9f64) {
        let cc = cs + 3.5;
        let z = c(x, 0.0);
        let f = |aa: ComplexScalar| gauss_2f1(aa, b, cc, z).unwrap();
        let sum = (cc - a) * f(a - 1.0) + (2.0 * a - cc + (b - a) * z) * f(a) + a * (z - 1.0) * f(a + 1.0);
        let scale = ((cc - a) * f(a - 1.0)).norm() + (a * f(a + 1.0)).norm() + f(a).norm();
        prop_assert!(sum.norm() < 1e-11 * scale.max(1.0));
    }

    #[test]
    fn gauss_summation_is_the_series_limit(a in small(), b in small(), s in 1.5..3.0f64) {
        let cc = a + b + s;
        let at_one = gauss_2f1_at_one(a, b, cc).unwrap();
        let near = gauss_2f1(a, b, cc, c(1.0 - 1e-9, 0.0)).unwrap();
        prop_assert!(rel(near, at_one) < 1e-6);
    }
}

#[test]
fn gamma_matches_euler_integral() {
    let spec = QuadratureSpec::default();
    for x in [1.0, 1.5, 2.25, 3.0, 4.7, 6.0] {
        let integral = integrate_half_line(|t| c(((x - 1.0) * t.ln() - t).exp(), 0.0), &spec).unwrap();
        assert!(rel(integral.value, gamma(c(x, 0.0)).unwrap()) < 1e-10, "x = {x}");
    }
}
