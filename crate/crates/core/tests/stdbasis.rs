use germkit::coeff::{Field, PrimeField, Rationals};
use germkit::parse::{parse_poly, parse_ring_declaration};
use germkit::ring::{jacobian_minors, Monomial, Polynomial, Ring};
use germkit::stdbasis::{ecart_poly, normal_form_poly, spoly_poly, std_ideal, NormalFormMode, StdConfig, Strategy};
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

fn polys<F: Field>(ring: &Ring<F>, src: &[&str]) -> Vec<Polynomial<F>> {
    src.iter().map(|s| parse_poly(s, ring).unwrap()).collect()
}

fn vdim<F: Field>(ring: &Ring<F>, src: &[&str]) -> Option<u64> {
    std_ideal(ring, &polys(ring, src), &StdConfig::default())
        .unwrap()
        .vdim()
}

fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e).unwrap()
}

#[test]
fn ecart_examples() {
    let r = qring("0 (x) ds");
    assert_eq!(ecart_poly(&parse_poly("x-x^2", &r).unwrap()).unwrap(), 1);
    let r = qring("0 (x,y) dp");
    assert_eq!(ecart_poly(&parse_poly("x+y", &r).unwrap()).unwrap(), 0);
    assert_eq!(ecart_poly(&parse_poly("x^2+x*y+y^2", &r).unwrap()).unwrap(), 0);
    assert!(matches!(ecart_poly(&Polynomial::zero(&r)), Err(Error::ZeroElement)));
}

#[test]
fn spoly_examples() {
    let r = qring("0 (x,y) dp");
    let [f, g] = <[_; 2]>::try_from(polys(&r, &["x^2+y", "x*y+1"])).unwrap();
    let s = spoly_poly(&f, &g).unwrap();
    // y*f - x*g, expanded by hand
    let oracle = parse_poly("y", &r)
        .unwrap()
        .mul(&f)
        .unwrap()
        .sub(&parse_poly("x", &r).unwrap().mul(&g).unwrap())
        .unwrap();
    assert_eq!(s, oracle);
    assert_eq!(s.to_string(), "y^2-x");
    assert!(spoly_poly(&f, &f).unwrap().is_zero());

    let [a, b] = <[_; 2]>::try_from(polys(&r, &["x^2+x", "y^2+y"])).unwrap();
    let s = spoly_poly(&a, &b).unwrap();
    let l = mono(&[2, 2]);
    assert_eq!(
        r.ordering().cmp_monomials(s.leading_monomial().unwrap(), &l),
        std::cmp::Ordering::Less
    );
}

#[test]
fn normal_form_examples() {
    let s = Strategy::default();
    let r = qring("0 (x) ds");
    let nf = normal_form_poly(
        &parse_poly("x", &r).unwrap(),
        &polys(&r, &["x-x^2"]),
        NormalFormMode::Mora,
        &s,
    )
    .unwrap();
    assert!(nf.is_zero());

    let r = qring("0 (x,y) dp");
    let nf = normal_form_poly(
        &parse_poly("x^2*y", &r).unwrap(),
        &polys(&r, &["x^2-1"]),
        NormalFormMode::Buchberger,
        &s,
    )
    .unwrap();
    assert_eq!(nf.to_string(), "y");

    let r = qring("0 (x,y) ds");
    assert!(matches!(
        normal_form_poly(
            &parse_poly("x", &r).unwrap(),
            &polys(&r, &["x"]),
            NormalFormMode::Buchberger,
            &s
        ),
        Err(Error::ModeOrderingMismatch)
    ));
}

#[test]
fn std_examples() {
    for ord in ["dp", "ds", "lp", "ls", "Dp"] {
        let r = qring(&format!("0 (x,y) {ord}"));
        let b = std_ideal(&r, &polys(&r, &["x^2", "y^3"]), &StdConfig::default()).unwrap();
        assert_eq!(b.generators().len(), 2, "{ord}");
        assert_eq!(b.vdim(), Some(6));
    }
    let r = qring("0 (x) ds");
    let b = std_ideal(&r, &polys(&r, &["x-x^2"]), &StdConfig::default()).unwrap();
    assert_eq!(b.leading_terms(), vec![(mono(&[1]), 1)]);
}

#[test]
fn ft_tjurina_staircase() {
    let r = qring("0 (x,y,z) ds");
    let [f, g] = <[_; 2]>::try_from(polys(&r, &["x*y+z^3", "x*z+y*z^2+y^4"])).unwrap();
    let mut gens = vec![f.clone(), g.clone()];
    gens.extend(jacobian_minors(&f, &g).unwrap());
    let b = std_ideal(&r, &gens, &StdConfig::default()).unwrap();
    assert_eq!(b.vdim(), Some(10));
}

#[test]
fn vdim_kbase_corner() {
    let r = qring("0 (x,y) ds");
    assert_eq!(vdim(&r, &["x^2", "y^3"]), Some(6));
    assert_eq!(vdim(&r, &["x"]), None);
    assert_eq!(vdim(&r, &["3*x^2", "5*y^4"]), Some(8));

    let kb = |src: &[&str]| {
        let b = std_ideal(&r, &polys(&r, src), &StdConfig::default()).unwrap();
        let mut v: Vec<Vec<u16>> = b
            .kbase()
            .unwrap()
            .into_iter()
            .map(|(m, _)| m.exponents().to_vec())
            .collect();
        v.sort();
        v
    };
    assert_eq!(
        kb(&["x^2", "y^2"]),
        vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
    );
    assert_eq!(kb(&["x", "y"]), vec![vec![0, 0]]);
    assert_eq!(
        kb(&["x^2", "x*y", "y^3"]),
        vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0]]
    );

    let b = std_ideal(&r, &polys(&r, &["x^2", "x"]), &StdConfig::default()).unwrap();
    assert!(matches!(b.kbase(), Err(Error::InfiniteDimensional)));

    let hc = |src: &[&str]| {
        std_ideal(&r, &polys(&r, src), &StdConfig::default())
            .unwrap()
            .highest_corner()
            .unwrap()
    };
    assert_eq!(hc(&["x^2", "y^2"]), 3);
    assert_eq!(hc(&["x", "y"]), 1);
    assert_eq!(hc(&["3*x^2", "5*y^4"]), 5);
}

#[test]
fn membership_examples() {
    let cfg = StdConfig::default();
    let r = qring("0 (x) ds");
    let b = std_ideal(&r, &polys(&r, &["x-x^2"]), &cfg).unwrap();
    assert!(b.contains_poly(&parse_poly("x", &r).unwrap()).unwrap());
    let r = qring("0 (x) dp");
    let b = std_ideal(&r, &polys(&r, &["x-x^2"]), &cfg).unwrap();
    assert!(!b.contains_poly(&parse_poly("x", &r).unwrap()).unwrap());
    let r = qring("0 (x,y) ds");
    let b = std_ideal(&r, &polys(&r, &["x^2", "y^4"]), &cfg).unwrap();
    assert!(b.contains_poly(&parse_poly("x^3+y^5", &r).unwrap()).unwrap());
    assert!(!b.contains_poly(&parse_poly("x*y^3", &r).unwrap()).unwrap());
}

#[test]
fn generators_belong_to_their_basis() {
    for ord in ["dp", "ds", "ls", "(dp(1),ds(2))", "wp(2,3,1)", "ws(1,2,3)"] {
        let r = qring(&format!("0 (x,y,z) {ord}"));
        let gens = polys(&r, &["x*y+z^3", "x*z+y*z^2+y^4", "x^2-y*z+z^5"]);
        let b = std_ideal(&r, &gens, &StdConfig::default()).unwrap();
        for g in &gens {
            assert!(b.contains_poly(g).unwrap(), "{ord}: {g}");
        }
    }
}

#[test]
fn unit_ideal_and_corner_truncation_agree() {
    let r = pring("32003 (x,y) ds");
    assert_eq!(vdim(&r, &["1+x", "y"]), Some(0));
    let gens = polys(&r, &["x^5+y^7+x^3*y^3", "x^4*y+y^6"]);
    let with = std_ideal(&r, &gens, &StdConfig::default()).unwrap();
    let without = std_ideal(
        &r,
        &gens,
        &StdConfig {
            truncate: false,
            ..StdConfig::default()
        },
    )
    .unwrap();
    assert_eq!(with.vdim(), without.vdim());
    assert!(with.vdim().is_some());
}

#[test]
fn strategies_agree_on_ft_milnor_ideal() {
    let r = qring("0 (x,y,z) ds");
    let [f, g] = <[_; 2]>::try_from(polys(&r, &["x*y+z^3", "x*z+y*z^2+y^4"])).unwrap();
    let mut gens = vec![f.clone(), g.clone()];
    gens.extend(jacobian_minors(&f, &g).unwrap());
    for s in Strategy::all() {
        let b = std_ideal(&r, &gens, &StdConfig::with_strategy(s)).unwrap();
        assert_eq!(b.vdim(), Some(10), "{s}");
    }
}

#[test]
fn ceiling_is_an_error() {
    let r = qring("0 (x,y,z) ds");
    let gens = polys(&r, &["x*y+z^3", "x*z+y*z^2+y^4", "x^3+y^5"]);
    let cfg = StdConfig {
        ceiling: 3,
        ..StdConfig::default()
    };
    assert!(matches!(std_ideal(&r, &gens, &cfg), Err(Error::ResourceExhausted(3))));
}
