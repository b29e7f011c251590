mod common;

use germkit::coeff::{PrimeField, Rational, Rationals};
use germkit::invariants::*;
use germkit::parse::{parse_poly, parse_ring_declaration};
use germkit::ring::{jacobian_minors, Polynomial, Ring};
use germkit::stdbasis::{StdConfig, Strategy};
use germkit::Error;

fn qring(decl: &str) -> Ring<Rationals> {
    parse_ring_declaration(decl).unwrap().build(Rationals).unwrap()
}

fn pring(decl: &str) -> Ring<PrimeField> {
    parse_ring_declaration(decl)
        .unwrap()
        .build(PrimeField::new(32003).unwrap())
        .unwrap()
}

fn hyper(ring: &Ring<Rationals>, src: &str) -> HypersurfaceGerm<Rationals> {
    HypersurfaceGerm::new(parse_poly(src, ring).unwrap()).unwrap()
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into()).unwrap()
}

const CFG: StdConfig = StdConfig {
    strategy: Strategy {
        pair_selection: germkit::stdbasis::PairSelection::Sugar,
        reducer_selection: germkit::stdbasis::ReducerSelection::MinEcart,
        product_criterion: true,
        chain_criterion: true,
    },
    mode: None,
    ceiling: germkit::stdbasis::DEFAULT_CEILING,
    truncate: true,
};

#[test]
fn a1_report() {
    let r = qring("0 (x,y,z) ds");
    let rep = hypersurface_report(&hyper(&r, "x^2+y^2+z^2"), &CFG).unwrap();
    assert_eq!(rep.mu, Dim::Finite(1));
    assert_eq!(rep.tau, Dim::Finite(1));
    assert_eq!(rep.multiplicity, 2);
    assert_eq!(rep.quasi_homogeneous, QuasiHomogeneous::Yes);
    assert!(rep.note.is_none());
}

#[test]
fn cusp_type_curve() {
    let r = qring("0 (x,y) ds");
    let g = hyper(&r, "x^3+y^5");
    assert_eq!(milnor_hypersurface(&g, &CFG).unwrap(), Dim::Finite(8));
    assert_eq!(tjurina_hypersurface(&g, &CFG).unwrap(), Dim::Finite(8));
    assert_eq!(
        is_quasihomogeneous_hypersurface(&g, &CFG).unwrap(),
        QuasiHomogeneous::Yes
    );
}

#[test]
fn non_quasihomogeneous_plane_curve_against_linear_algebra() {
    let r = qring("0 (x,y) ds");
    let g = hyper(&r, "x^4+y^5+x^2*y^3");
    let f = g.f();
    let jac = f.gradient().unwrap();
    let mut tj = jac.clone();
    tj.push(f.clone());
    let mu_oracle = common::local_codim(&jac, 4, 20).unwrap();
    let tau_oracle = common::local_codim(&tj, 4, 20).unwrap();
    assert_eq!(mu_oracle, 12);
    assert!(tau_oracle < 12);
    assert_eq!(milnor_hypersurface(&g, &CFG).unwrap(), Dim::Finite(mu_oracle));
    assert_eq!(tjurina_hypersurface(&g, &CFG).unwrap(), Dim::Finite(tau_oracle));
    assert_eq!(
        is_quasihomogeneous_hypersurface(&g, &CFG).unwrap(),
        QuasiHomogeneous::No
    );
}

#[test]
fn non_isolated_is_infinite() {
    let r = qring("0 (x,y) ds");
    assert_eq!(milnor_hypersurface(&hyper(&r, "x^2*y^2"), &CFG).unwrap(), Dim::Infinite);
    assert!(matches!(
        is_quasihomogeneous_hypersurface(&hyper(&r, "x^2"), &CFG),
        Err(Error::NonIsolated)
    ));
}

#[test]
fn smooth_germ() {
    let r = qring("0 (x,y) ds");
    let g = hyper(&r, "x+y^2");
    assert_eq!(milnor_hypersurface(&g, &CFG).unwrap(), Dim::Finite(0));
    assert_eq!(
        is_quasihomogeneous_hypersurface(&g, &CFG).unwrap(),
        QuasiHomogeneous::Yes
    );
}

#[test]
fn germ_validation() {
    let r = qring("0 (x,y) dp");
    assert!(matches!(
        HypersurfaceGerm::new(parse_poly("x^2", &r).unwrap()),
        Err(Error::InvalidOrdering(_))
    ));
    let r = qring("0 (x,y) ds");
    assert!(HypersurfaceGerm::new(parse_poly("1+x", &r).unwrap()).is_err());
    assert!(matches!(
        HypersurfaceGerm::new(Polynomial::zero(&r)),
        Err(Error::ZeroPolynomial)
    ));
}

#[test]
fn ft_germ_equations() {
    let r = qring("0 (x,y,z) ds");
    let g = ft_germ(&r, 5, 4).unwrap();
    assert_eq!(g.f(), &parse_poly("x*y+z^3", &r).unwrap());
    assert_eq!(g.g(), &parse_poly("x*z+y*z^2+y^4", &r).unwrap());
    let g = ft_germ(&r, 8, 8).unwrap();
    assert_eq!(g.f(), &parse_poly("x*y+z^7", &r).unwrap());
    assert_eq!(g.g(), &parse_poly("x*z+y*z^2+y^7", &r).unwrap());
    for (k, l) in [(4, 4), (6, 3), (5, 6)] {
        assert!(matches!(ft_germ(&r, k, l), Err(Error::ParameterOutOfRange(_))));
    }
}

#[test]
fn ft_numbers() {
    let r = qring("0 (x,y,z) ds");
    let g = ft_germ(&r, 5, 4).unwrap();
    assert_eq!(milnor_space_curve(&g, &CFG).unwrap(), Dim::Finite(11));
    assert_eq!(tjurina_space_curve(&g, &CFG).unwrap(), Dim::Finite(10));
    assert_eq!(is_quasihomogeneous_space_curve(&g, &CFG).unwrap(), QuasiHomogeneous::No);
    let g = ft_germ(&r, 6, 5).unwrap();
    assert_eq!(milnor_space_curve(&g, &CFG).unwrap(), Dim::Finite(13));
    let g = ft_germ(&r, 8, 8).unwrap();
    assert_eq!(tjurina_space_curve(&g, &CFG).unwrap(), Dim::Finite(17));
    let rep = space_curve_report(&ft_germ(&r, 5, 4).unwrap(), &CFG).unwrap();
    assert_eq!(
        (rep.mu, rep.tau, rep.quasi_homogeneous),
        (Dim::Finite(11), Dim::Finite(10), QuasiHomogeneous::No)
    );
    assert!(rep.mu_at_least_tau);
}

#[test]
fn ft_tjurina_against_linear_algebra() {
    let r = qring("0 (x,y,z) ds");
    let g = ft_germ(&r, 5, 4).unwrap();
    let oracle = common::local_codim(&g.tjurina_ideal().unwrap(), 3, 12).unwrap();
    assert_eq!(oracle, 10);
}

#[test]
fn plane_cusp_as_space_curve() {
    let r = qring("0 (x,y,z) ds");
    let g = SpaceCurveGerm::new(parse_poly("z", &r).unwrap(), parse_poly("x^2+y^3", &r).unwrap()).unwrap();
    let m = jacobian_minors(g.f(), g.g()).unwrap();
    let mut gens = vec![g.f().clone()];
    gens.extend(m);
    assert_eq!(common::local_codim(&gens, 2, 10), Some(2));
    assert_eq!(milnor_space_curve(&g, &CFG).unwrap(), Dim::Finite(2));
    assert_eq!(tjurina_space_curve(&g, &CFG).unwrap(), Dim::Finite(2));
    assert_eq!(multiplicity_space_curve(&g, &CFG).unwrap(), 2);
}

#[test]
fn space_curve_multiplicity() {
    let r = qring("0 (x,y,z) ds");
    let g = SpaceCurveGerm::new(parse_poly("x", &r).unwrap(), parse_poly("y", &r).unwrap()).unwrap();
    assert_eq!(multiplicity_space_curve(&g, &CFG).unwrap(), 1);
    let g = SpaceCurveGerm::new(parse_poly("x^2-y^3", &r).unwrap(), parse_poly("z", &r).unwrap()).unwrap();
    assert_eq!(multiplicity_space_curve(&g, &CFG).unwrap(), 2);
}

#[test]
fn invariance_under_local_orderings() {
    for ord in ["ds", "ls", "ws(3,5,2)", "(ds(1),ds(2))"] {
        let r = qring(&format!("0 (x,y,z) {ord}"));
        let g = ft_germ(&r, 6, 4).unwrap();
        assert_eq!(milnor_space_curve(&g, &CFG).unwrap(), Dim::Finite(12), "{ord}");
        assert_eq!(tjurina_space_curve(&g, &CFG).unwrap(), Dim::Finite(11), "{ord}");
    }
}

#[test]
fn find_weights_examples() {
    let r = qring("0 (x,y) ds");
    let f = parse_poly("x^3+y^5", &r).unwrap();
    let w = find_weights(&f).unwrap().unwrap();
    assert_eq!(w, vec![rat(1, 3), rat(1, 5)]);
    assert!(f.is_weighted_homogeneous(&w).unwrap());
    assert_eq!(find_weights(&parse_poly("x^4+y^5+x^2*y^3", &r).unwrap()).unwrap(), None);
    assert!(matches!(
        find_weights(&Polynomial::zero(&r)),
        Err(Error::ZeroPolynomial)
    ));

    let r = qring("0 (x,y,z) ds");
    let f = parse_poly("x*y+z^3", &r).unwrap();
    let w = find_weights(&f).unwrap().unwrap();
    assert_eq!(w, vec![rat(1, 2), rat(1, 2), rat(1, 3)]);
    assert!(f.is_weighted_homogeneous(&w).unwrap());
    // x*y alone leaves z free and unbounded
    let w = find_weights(&parse_poly("x*y", &r).unwrap()).unwrap().unwrap();
    assert_eq!(w, vec![rat(1, 2), rat(1, 2), rat(1, 1)]);
    // a constant term cannot have degree 1
    assert_eq!(find_weights(&parse_poly("1+x", &r).unwrap()).unwrap(), None);
}

#[test]
fn zariski_family_shape() {
    let r = qring("0 (x,y,z) ds");
    let f0 = zariski_family(&r, 40, 30, 8, &rat(0, 1)).unwrap();
    let f1 = zariski_family(&r, 40, 30, 8, &rat(1, 1)).unwrap();
    // brute-force minimum over the expanded terms
    let min_deg = |f: &Polynomial<Rationals>| f.terms().iter().map(|t| t.mono.degree()).min().unwrap();
    assert_eq!(f0.order_of().unwrap(), min_deg(&f0));
    assert_eq!(f0.order_of().unwrap(), 17);
    assert_eq!(f1.order_of().unwrap(), min_deg(&f1));
    assert_eq!(f1.order_of().unwrap(), 16);
    let collapsed = parse_poly("x^40+y^30+z^24+x^10*y^7+x^7*y^7*z^3+x^6*y^12", &r).unwrap();
    assert_eq!(f0, collapsed);
    assert_eq!(f1.len(), 8);
    assert!(matches!(
        zariski_family(&r, 40, 30, 2, &rat(0, 1)),
        Err(Error::ParameterOutOfRange(_))
    ));
}

#[test]
fn small_zariski_member_against_linear_algebra() {
    let r = pring("32003 (x,y,z) ds");
    let f = zariski_family(&r, 8, 7, 3, &rat(1, 1)).unwrap();
    let g = HypersurfaceGerm::new(f.clone()).unwrap();
    let mu = milnor_hypersurface(&g, &CFG).unwrap().finite().unwrap();
    let oracle = common::local_codim(&f.gradient().unwrap(), 21, 28).unwrap();
    assert_eq!(mu, oracle);
    let rep = hypersurface_report(&g, &CFG).unwrap();
    assert_eq!(rep.quasi_homogeneous, QuasiHomogeneous::Undetermined);
    assert!(rep.note.is_some());
}

#[test]
fn parse_rational_forms() {
    assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
    assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
    assert!(parse_rational("x").is_err());
    assert!(parse_rational("1/0").is_err());
}
