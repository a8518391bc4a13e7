use super::*;
use crate::poly::PolyRing;

fn fig8() -> IdealPresentation {
    let r = PolyRing::lex(&["x", "y"]);
    IdealPresentation::parse(&r, &["y^2 + (-1-x^2)*y + (-1+2*x^2)"]).unwrap()
}

fn polys(i: &IdealPresentation, s: &[&str]) -> Vec<Poly> {
    parse_list(i, s).unwrap()
}

#[test]
fn figure_eight_ranks() {
    let i = fig8();
    let x = Poly::parse(i.ring(), "x").unwrap();
    let c = rank_c(&i, &x, None).unwrap();
    assert_eq!(c.exact(), Some(2));
    assert_eq!(c.basis.as_ref().unwrap().basis, polys(&i, &["1", "y"]));
    assert_eq!(rank_q(&i, &x, None).unwrap().exact(), Some(2));
    let z = rank_z_bounds(&i, &x, None, None, None).unwrap();
    assert_eq!(z.value, RankValue::Exact(2));
    let text = z.basis.unwrap().to_text();
    assert!(text.contains("y * y = (-2*x^2 + 1)*1 + (x^2 + 1)*y"), "{text}");
}

#[test]
fn too_many_basis_elements() {
    let i = fig8();
    let x = Poly::parse(i.ring(), "x").unwrap();
    let err = verify_free_basis(&i, &x, &polys(&i, &["1", "y", "y^2"]), Scalars::Complex).unwrap_err();
    assert!(matches!(err, Error::Verification { ref stage, .. } if stage == "size"), "{err}");
    let g = verify_generating_set(&i, &x, &polys(&i, &["1", "y", "y^2"]), Scalars::Integer, None).unwrap();
    assert_eq!(g.size(), 3);
}

#[test]
fn hyperbola_is_infinite() {
    let r = PolyRing::lex(&["x", "y"]);
    let i = IdealPresentation::parse(&r, &["x*y - 1"]).unwrap();
    let x = Poly::parse(&r, "x").unwrap();
    let res = rank_c(&i, &x, None).unwrap();
    assert!(res.is_infinite());
    assert_eq!(res.value.to_string(), "INFINITE");
}

#[test]
fn polynomial_base_is_adjoined() {
    let i = fig8();
    let b = Poly::parse(i.ring(), "x^2").unwrap();
    let res = rank_c(&i, &b, None).unwrap();
    assert_eq!(res.exact(), Some(4));
}

#[test]
fn m003_rank_four() {
    let r = PolyRing::new(
        vec!["m".into(), "x".into(), "y".into(), "z".into()],
        crate::poly::MonomialOrder::lex(vec![0, 3, 2, 1]).unwrap(),
    )
    .unwrap();
    let i = IdealPresentation::parse(&r, &["z^4-m*z^2-z^2+1", "-z^2+m+y", "-z^3+m*z+z+x"]).unwrap();
    let m = Poly::parse(&r, "m").unwrap();
    let res = rank_z_bounds(&i, &m, None, None, None).unwrap();
    assert_eq!(res.value, RankValue::Exact(4));
    assert_eq!(res.basis.unwrap().basis, polys(&i, &["1", "z", "z^2", "z^3"]));
}

#[test]
fn free_toy_has_no_syzygy() {
    let r = PolyRing::lex(&["x", "y"]);
    let i = IdealPresentation::parse(&r, &["y^2 - x"]).unwrap();
    let x = Poly::parse(&r, "x").unwrap();
    let claim = NonfreeClaim {
        summand: polys(&i, &["1", "y"]),
        syzygy: polys(&i, &["x", "1"]),
        obstruction: (Poly::parse(&r, "2").unwrap(), x.clone()),
        complement: vec![],
    };
    let err = verify_nonfree(&i, &x, &claim).unwrap_err();
    assert!(matches!(err, Error::Verification { ref stage, .. } if stage == "(a)"), "{err}");
}
