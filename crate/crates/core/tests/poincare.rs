mod common;

use germkit::coeff::Rationals;
use germkit::invariants::{ft_germ, Dim, QuasiHomogeneous};
use germkit::parse::{parse_poly, parse_ring_declaration};
use germkit::poincare::*;
use germkit::ring::{Polynomial, Ring};
use germkit::stdbasis::StdConfig;
use germkit::Error;

fn ring() -> Ring<Rationals> {
    parse_ring_declaration("0 (x,y,z) ds")
        .unwrap()
        .build(Rationals)
        .unwrap()
}

fn p(r: &Ring<Rationals>, s: &str) -> Polynomial<Rationals> {
    parse_poly(s, r).unwrap()
}

fn form(r: &Ring<Rationals>, k: usize, cs: &[&str]) -> DifferentialForm<Rationals> {
    DifferentialForm::new(k, cs.iter().map(|s| p(r, s)).collect()).unwrap()
}

#[test]
fn wedge_examples() {
    let r = ring();
    let dx = form(&r, 1, &["1", "0", "0"]);
    let dy = form(&r, 1, &["0", "1", "0"]);
    assert_eq!(wedge(&dx, &dy).unwrap(), form(&r, 2, &["0", "0", "1"]));
    assert!(wedge(&dx, &dx).unwrap().is_zero());
    let fdx = form(&r, 1, &["x*y+z", "0", "0"]);
    let dydz = form(&r, 2, &["1", "0", "0"]);
    assert_eq!(wedge(&fdx, &dydz).unwrap(), form(&r, 3, &["x*y+z"]));
    // dz∧dx is the second basis 2-form
    let dz = form(&r, 1, &["0", "0", "1"]);
    assert_eq!(wedge(&dz, &dx).unwrap(), form(&r, 2, &["0", "1", "0"]));
    assert!(matches!(wedge(&dydz, &dydz), Err(Error::DegreeOverflow)));
}

#[test]
fn derivative_examples() {
    let r = ring();
    let xdy = form(&r, 1, &["0", "x", "0"]);
    assert_eq!(exterior_derivative(&xdy).unwrap(), form(&r, 2, &["0", "0", "1"]));
    let f = form(&r, 0, &["x*y+z^3"]);
    assert_eq!(exterior_derivative(&f).unwrap(), form(&r, 1, &["y", "x", "3*z^2"]));
    // divergence on 2-forms
    let w = form(&r, 2, &["x^2", "y*z", "x*z^2"]);
    assert_eq!(exterior_derivative(&w).unwrap(), form(&r, 3, &["2*x+z+2*x*z"]));
    assert!(matches!(
        exterior_derivative(&form(&r, 3, &["x"])),
        Err(Error::DegreeOverflow)
    ));
    let a = form(&r, 1, &["x^2*y", "z^3-x", "x*y*z"]);
    assert!(exterior_derivative(&exterior_derivative(&a).unwrap())
        .unwrap()
        .is_zero());
}

#[test]
fn presentation_sizes() {
    let r = ring();
    let (f, g) = (p(&r, "x*y+z^3"), p(&r, "x*z+y*z^2+y^4"));
    assert_eq!(omega_presentation(&f, &g, 2).unwrap().len(), 12);
    assert_eq!(omega_presentation(&f, &g, 3).unwrap().len(), 8);
    assert!(omega_presentation(&f, &g, 1).is_err());
}

#[test]
fn omega3_smooth_and_ft() {
    let r = ring();
    let cfg = StdConfig::default();
    assert_eq!(
        omega_dimension(&p(&r, "x"), &p(&r, "y"), 3, &cfg).unwrap(),
        Dim::Finite(0)
    );
    let ft = ft_germ(&r, 5, 4).unwrap();
    let d3 = omega_dimension(ft.f(), ft.g(), 3, &cfg).unwrap();
    let oracle = common::local_codim(&omega3_ideal(ft.f(), ft.g()).unwrap(), 3, 12).unwrap();
    assert_eq!(d3, Dim::Finite(oracle));
    let d2 = omega_dimension(ft.f(), ft.g(), 2, &cfg).unwrap();
    assert_eq!(d2, Dim::Finite(oracle + 11));
}

#[test]
fn condition1_examples() {
    let r = ring();
    let cfg = StdConfig::default();
    let (x, y) = (p(&r, "x"), p(&r, "y"));
    assert_eq!(
        reiffen_condition_1(&x, &y, Order::Fixed(2), None, &cfg).unwrap(),
        Condition1::Verified {
            order: 2,
            vacuous: false
        }
    );
    assert_eq!(
        reiffen_condition_1(&x, &y, Order::Fixed(0), None, &cfg).unwrap(),
        Condition1::Verified {
            order: 0,
            vacuous: true
        }
    );
    let ft = ft_germ(&r, 5, 4).unwrap();
    let c = reiffen_condition_1(ft.f(), ft.g(), Order::Auto, None, &cfg).unwrap();
    assert!(c.is_verified(), "{c:?}");
}

#[test]
fn condition1_is_monotone_and_multiplier_stable() {
    let r = ring();
    let cfg = StdConfig::default();
    let ft = ft_germ(&r, 6, 4).unwrap();
    let auto = resolve_order(ft.f(), ft.g(), Order::Auto, &cfg).unwrap();
    for n in 0..=auto {
        assert!(reiffen_condition_1(ft.f(), ft.g(), Order::Fixed(n), None, &cfg)
            .unwrap()
            .is_verified());
    }
    let more = reiffen_condition_1(ft.f(), ft.g(), Order::Fixed(auto), Some(auto + 3), &cfg).unwrap();
    assert!(more.is_verified());
}

#[test]
fn non_quasihomogeneous_plane_curve_is_not_exact() {
    // for plane curves exactness and quasi-homogeneity coincide; here
    // dim Ω² = 11 while μ = 12
    let r = ring();
    let cfg = StdConfig::default();
    let (f, g) = (p(&r, "z"), p(&r, "x^4+y^5+x^2*y^3"));
    let rep = exactness_report(&f, &g, Order::Auto, &cfg).unwrap();
    assert_eq!(rep.verdict, Verdict::NotExact);
    assert!(!rep.condition2.holds);
    assert_eq!(rep.condition2.omega2, Dim::Finite(11));
    assert_eq!(rep.quasi_homogeneous, QuasiHomogeneous::No);
}

#[test]
fn condition2_examples() {
    let r = ring();
    let cfg = StdConfig::default();
    let ft = ft_germ(&r, 5, 4).unwrap();
    let c = reiffen_condition_2(ft.f(), ft.g(), &cfg).unwrap();
    assert!(c.holds);
    assert_eq!(c.mu, Dim::Finite(11));
    let ft = ft_germ(&r, 8, 8).unwrap();
    let c = reiffen_condition_2(ft.f(), ft.g(), &cfg).unwrap();
    assert!(c.holds);
    assert_eq!(c.mu, Dim::Finite(18));
    let c = reiffen_condition_2(&p(&r, "z"), &p(&r, "x^2+y^3"), &cfg).unwrap();
    assert!(c.holds);
    assert_eq!(c.mu, Dim::Finite(2));
}

#[test]
fn exactness_reports() {
    let r = ring();
    let cfg = StdConfig::default();
    let ft = ft_germ(&r, 5, 4).unwrap();
    let rep = exactness_report(ft.f(), ft.g(), Order::Auto, &cfg).unwrap();
    assert_eq!(rep.verdict, Verdict::ExactUpToOrder);
    assert!(rep.condition2.holds);
    assert_eq!(rep.quasi_homogeneous, QuasiHomogeneous::No);
    let ft = ft_germ(&r, 6, 4).unwrap();
    let rep = exactness_report(ft.f(), ft.g(), Order::Auto, &cfg).unwrap();
    assert_eq!((rep.condition2.mu, rep.tau), (Dim::Finite(12), Dim::Finite(11)));
    assert_eq!(rep.verdict, Verdict::ExactUpToOrder);
    let rep = exactness_report(&p(&r, "x"), &p(&r, "y"), Order::Auto, &cfg).unwrap();
    assert_eq!(rep.quasi_homogeneous, QuasiHomogeneous::Yes);
    assert_ne!(rep.verdict, Verdict::NotExact);
}
