//! Checks against values derived independently of the library's own algorithms.

use cartan_core::integral::{compute_lambda, standard_circles};
use cartan_core::monogenic::{cr_residual, gateaux_quotient};
use cartan_core::resolvent::inverse;
use cartan_core::{builtins, Algebra, Complex64, Element, MonogenicFunction, QuadratureOptions};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `ζ⁻¹ = Σ_p (−1)^p N^p / ξ^{p+1}` for `ζ = ξ·1 + N` with `N` nilpotent (one idempotent).
fn neumann_inverse(alg: &Algebra, zeta: &Element) -> Element {
    let xi = zeta.coords()[0];
    let mut nil = zeta.clone();
    nil.coords_mut()[0] = c(0.0, 0.0);
    let mut term = alg.unit().scale(xi.inv());
    let mut sum = term.clone();
    for _ in 0..alg.n() {
        term = alg.mul(&term, &nil).scale(-xi.inv());
        sum += &term;
    }
    sum
}

#[test]
fn inverse_matches_neumann_series() {
    for i in 1..=4 {
        let alg = builtins::example_algebra(i);
        let f = builtins::default_frame(&alg);
        for x in [[0.5, 0.2, -0.7], [-1.0, 0.3, 0.9], [0.1, -0.8, 0.4]] {
            let zeta = f.embed(&x).unwrap();
            let expected = neumann_inverse(&alg, &zeta);
            assert!(inverse(&f, &x, &alg).unwrap().distance(&expected) <= 1e-12 * expected.norm());
        }
    }
}

#[test]
fn cr_residual_of_cube_is_exactly_quadratic() {
    // (ζ + h e)³ − (ζ − h e)³ = 6hζ²e + 2h³e³, so D_j − D_1 e_j = h²(e_j³ − e_j).
    for i in 1..=4 {
        let alg = builtins::example_algebra(i);
        let f = builtins::default_frame(&alg);
        let phi = MonogenicFunction::power(&alg, 3);
        let x = [0.3, -0.4, 0.6];
        for h in [1e-2, 1e-3] {
            let r = cr_residual(&phi, &f, &x, h, &alg).unwrap();
            for (idx, res) in r.iter().enumerate() {
                let e = f.vector(idx + 2);
                let e3 = alg.mul(&alg.mul(&e, &e), &e);
                let expected = h * h * e3.distance(&e);
                assert!(
                    (res - expected).abs() <= 1e-9 * h * h + 1e-12,
                    "{res} vs {expected}"
                );
            }
        }
    }
}

#[test]
fn gateaux_quotient_of_square_halves_its_error() {
    // ((ζ + εh)² − ζ²)/ε = 2ζh + εh²
    let alg = builtins::example_algebra(4);
    let f = builtins::default_frame(&alg);
    let x = [0.2, 0.5, -0.3];
    let zeta = f.embed(&x).unwrap();
    let h = f.vector(2);
    let exact = alg.mul(&zeta, &h).scale_real(2.0);
    let phi = MonogenicFunction::power(&alg, 2);
    let err = |eps: f64| {
        gateaux_quotient(&phi, &f, &x, &h, eps, &alg)
            .unwrap()
            .distance(&exact)
    };
    let ratio = err(1e-3) / err(5e-4);
    assert!((ratio - 2.0).abs() < 1e-3, "{ratio}");
    let h2 = alg.mul(&h, &h);
    assert!((err(1e-3) - 1e-3 * h2.norm()).abs() < 1e-9);
}

#[test]
fn gateaux_quotient_of_resolvent_matches_richardson_limit() {
    // d/dε (t − ζ − εh)⁻¹ at ε = 0 is h (t − ζ)⁻²
    let alg = builtins::example_algebra(1);
    let f = builtins::default_frame(&alg);
    let x = [0.2, 0.5, -0.3];
    let t = c(2.5, 0.5);
    let phi = MonogenicFunction::ResolventKernel { t };
    let h = f.vector(3);
    let q = |eps: f64| gateaux_quotient(&phi, &f, &x, &h, eps, &alg).unwrap();
    let extrapolated = &q(1e-4).scale_real(2.0) - &q(2e-4);
    let r = cartan_core::resolvent::resolvent(t, &f, &x, &alg).unwrap();
    let exact = alg.mul(&h, &alg.mul(&r, &r));
    assert!(extrapolated.distance(&exact) < 1e-7);
}

#[test]
fn lambda_idempotent_part_is_two_pi_i() {
    for alg in [
        builtins::example_algebra(3),
        Algebra::semisimple(4).unwrap(),
    ] {
        for frame in [builtins::default_frame(&alg), builtins::s_frame(&alg)] {
            for circle in standard_circles(&frame) {
                let r =
                    compute_lambda(&frame, &alg, &circle, &QuadratureOptions::default()).unwrap();
                assert!(r.idempotent_residual <= 1e-10);
                assert!(r.residual <= 1e-8);
            }
        }
    }
}
