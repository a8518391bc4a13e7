use super::*;
use crate::poly::NumberField;

fn k820() -> IdealPresentation {
    let r = PolyRing::lex(&["y", "x", "z"]);
    IdealPresentation::parse(
        &r,
        &[
            "1 + 5*y + 7*y^2 + 2*y^3 - 2*y^4 - y^5 - 2*x^2 - 6*y*x^2 - 3*y^2*x^2 + y^4*x^2 + x^4 + y*x^4",
            "-x - 3*y*x - y^2*x - y^3*x + x^3 + y*x^3 + y^2*z + y^3*z",
            "-1 - 4*y - 3*y^2 + y^3 + y^4 + x^2 + 2*y*x^2 - y^3*x^2 + y^2*x*z",
            "x + 3*y*x + 2*y^2*x - x^3 - y*x^3 - z - 2*y*z - y^2*z + x^2*z",
            "2 + 6*y - 2*y^3 - 3*x^2 - y*x^2 + 2*y^2*x^2 + x*z - 3*y*x*z + z^2",
        ],
    )
    .unwrap()
}

fn torus_c() -> IdealPresentation {
    let r = PolyRing::lex(&["l", "i", "z", "y", "t"])
        .with_number_field(NumberField::gaussian("i"))
        .unwrap();
    IdealPresentation::parse(
        &r,
        &["16 + (-4-2*l)*z^2 + z^4", "(-8-2*l) + z^2 + 2*y^2", "2*t + i*z^2"],
    )
    .unwrap()
}

#[test]
fn single_generator_is_its_own_basis() {
    let r = PolyRing::lex(&["x", "y"]);
    let gb = buchberger(&IdealPresentation::parse(&r, &["y - 1"]).unwrap());
    assert_eq!(gb.elements(), &[Poly::parse(&r, "y - 1").unwrap()]);
}

#[test]
fn hand_buchberger_run() {
    let r = PolyRing::lex(&["y", "x"]);
    let gb = buchberger(&IdealPresentation::parse(&r, &["x*y - 1", "y^2 - 1"]).unwrap());
    let want: Vec<Poly> = ["y^2 - 1", "x - y"].iter().map(|s| Poly::parse(&r, s).unwrap()).collect();
    assert_eq!(gb.elements(), want.as_slice());
    gb.verify().unwrap();
}

#[test]
fn paper_basis_for_8_20_is_reduced() {
    let ideal = k820();
    let gb = buchberger(&ideal);
    gb.verify().unwrap();
    let lms: Vec<String> = gb
        .elements()
        .iter()
        .map(|p| crate::poly::print::monomial_text(gb.ring(), p.leading_monomial().unwrap()))
        .collect();
    assert_eq!(lms, ["y*x^4", "y^3*z", "y^2*x*z", "x^2*z", "z^2"]);
    let monic: Vec<Poly> = ideal.generators().iter().map(|g| g.monic()).collect();
    assert_eq!(gb.elements(), monic.as_slice(), "{gb:?}");
    let dep = Poly::parse(
        ideal.ring(),
        "z^5 - 2*x*z^4 + (-2 + 3*x^2)*z^3 + (12*x - 9*x^3 + x^5)*z^2 + (-18*x^2 + 10*x^4 - x^6)*z + (6*x^3 - 2*x^5)",
    )
    .unwrap();
    assert!(ideal_member(&dep, &gb).unwrap());
    assert!(!ideal_member(&Poly::one(ideal.ring()), &gb).unwrap());
    let nf = normal_form(&Poly::parse(ideal.ring(), "y*z").unwrap(), &gb).unwrap();
    let lm = gb.leading_monomials();
    assert!(nf.terms().iter().all(|(m, _)| !lm.iter().any(|l| l.divides(m))));
    assert!(ideal_member(&(Poly::parse(ideal.ring(), "y*z").unwrap() - nf), &gb).unwrap());
}

#[test]
fn normal_form_trivia() {
    let r = PolyRing::lex(&["x", "y"]);
    let gb = buchberger(&IdealPresentation::parse(&r, &["y - 1"]).unwrap());
    let x2 = Poly::parse(&r, "x^2").unwrap();
    assert_eq!(normal_form(&x2, &gb).unwrap(), x2);
}

#[test]
fn torus_bundle_basis_and_contraction() {
    let ideal = torus_c();
    let gb = buchberger(&ideal);
    gb.verify().unwrap();
    assert_eq!(gb.elements().len(), 4);
    let q = eliminate(&ideal, &["l", "z", "y", "t"]).unwrap();
    let r = q.ring().clone();
    let want = IdealPresentation::parse(
        &r,
        &["16 + (-4-2*l)*z^2 + z^4", "(-8-2*l) + z^2 + 2*y^2", "-8 + (2+l)*z^2 + 2*t^2"],
    )
    .unwrap();
    assert_eq!(buchberger(&q).elements(), buchberger(&want).elements());
    assert_eq!(generic_fiber_dim(&ideal, "l").unwrap(), FiberDim::Finite(8));
    assert_eq!(generic_fiber_dim(&want, "l").unwrap(), FiberDim::Finite(16));
}

#[test]
fn eliminating_theta_from_linear_relation() {
    let r = PolyRing::lex(&["y", "a"])
        .with_number_field(NumberField::gaussian("a"))
        .unwrap();
    let ideal = IdealPresentation::parse(&r, &["y - a"]).unwrap();
    let q = eliminate(&ideal, &["y"]).unwrap();
    assert_eq!(q.generators().len(), 1);
    assert_eq!(q.generators()[0].to_string(), "y^2 + 1");
}

#[test]
fn keep_everything_is_identity() {
    let ideal = k820();
    let q = eliminate(&ideal, &["y", "x", "z"]).unwrap();
    assert_eq!(buchberger(&q).elements(), buchberger(&ideal).elements());
}

#[test]
fn fiber_dims() {
    let r = PolyRing::lex(&["x", "y"]);
    let fig8 = IdealPresentation::parse(&r, &["y^2 + (-1-x^2)*y + (-1+2*x^2)"]).unwrap();
    assert_eq!(generic_fiber_dim(&fig8, "x").unwrap(), FiberDim::Finite(2));
    let hyp = IdealPresentation::parse(&r, &["x*y - 1"]).unwrap();
    assert_eq!(generic_fiber_dim(&hyp, "x").unwrap(), FiberDim::Finite(1));
    let free = IdealPresentation::new(&r, vec![]).unwrap();
    assert_eq!(generic_fiber_dim(&free, "x").unwrap(), FiberDim::Infinite);
}

#[test]
fn fiber_coordinates_reconstruct() {
    let r = PolyRing::lex(&["x", "y"]);
    let fig8 = IdealPresentation::parse(&r, &["y^2 + (-1-x^2)*y + (-1+2*x^2)"]).unwrap();
    let fa = FiberAlgebra::new(&fig8, "x").unwrap();
    let c = fa.coordinates(&Poly::parse(&r, "y^2").unwrap()).unwrap();
    assert_eq!(format!("{:?}", c), "[-2*t^2 + 1, t^2 + 1]");
}

#[test]
fn reduced_basis_independent_of_generator_order() {
    let ideal = k820();
    let base = buchberger(&ideal);
    let mut gens = ideal.generators().to_vec();
    gens.reverse();
    gens.swap(0, 2);
    let shuffled = IdealPresentation::new(ideal.ring(), gens).unwrap();
    assert_eq!(buchberger(&shuffled).elements(), base.elements());
}
