use super::*;
use crate::poly::{MonomialOrder, PolyRing};

fn ideal(vars: &[&str], gens: &[&str]) -> IdealPresentation {
    IdealPresentation::parse(&PolyRing::lex(vars), gens).unwrap().prime()
}

fn poly(i: &IdealPresentation, s: &str) -> Poly {
    Poly::parse(i.ring(), s).unwrap()
}

#[test]
fn slope_enumeration_order() {
    let s = |v: &[(i64, i64)]| v.iter().map(|&(p, q)| SlopeSpec::new(p, q).unwrap()).collect::<Vec<_>>();
    assert_eq!(enumerate_slopes(1).unwrap(), s(&[(1, 0), (0, 1), (1, 1), (-1, 1)]));
    assert_eq!(
        enumerate_slopes(2).unwrap(),
        s(&[(1, 0), (0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)])
    );
    assert!(enumerate_slopes(0).is_err());
}

#[test]
fn slope_enumeration_count_matches_brute_force() {
    for b in 1..=7i64 {
        let mut set = std::collections::BTreeSet::new();
        for p in -b..=b {
            for q in -b..=b {
                if num_integer::gcd(p, q) == 1 {
                    set.insert(SlopeSpec::new(p, q).unwrap());
                }
            }
        }
        let set: Vec<_> = set.into_iter().filter(|s| s.q() <= b && s.p().abs() <= b).collect();
        assert_eq!(enumerate_slopes(b as u32).unwrap().len(), set.len(), "bound {b}");
    }
}

#[test]
fn slope_traces_from_peripheral_traces() {
    let i = ideal(&["a", "b", "c"], &["a*b*c - 1"]);
    let per = PeripheralTraces {
        mu: Some(poly(&i, "a")),
        lambda: Some(poly(&i, "b")),
        mulambda: Some(poly(&i, "c")),
    };
    let t = |p, q| slope_trace(&SlopeSpec::new(p, q).unwrap(), &per).unwrap().to_string();
    assert_eq!(t(1, 0), "a");
    assert_eq!(t(1, 1), "c");
    assert_eq!(t(-1, 1), "-c + a*b");
    let only_mu = PeripheralTraces { mu: Some(poly(&i, "a")), lambda: None, mulambda: None };
    assert!(matches!(
        slope_trace(&SlopeSpec::new(1, 1).unwrap(), &only_mu),
        Err(Error::MissingSection(_))
    ));
}

#[test]
fn toy_hyperbola_detects_a_closed_surface() {
    let i = ideal(&["U", "V"], &["U*V - 1"]);
    let per = PeripheralTraces { mu: Some(poly(&i, "U")), lambda: None, mulambda: None };
    let v = closed_surface_verdict(&i, &[poly(&i, "V")], &per).unwrap();
    match &v {
        ClosedSurface::Detected { coordinate, witness, .. } => {
            assert_eq!(coordinate.to_string(), "V");
            assert_eq!(witness.as_ref().unwrap().to_string(), "U");
        }
        other => panic!("{other:?}"),
    }
    let slopes = vec![(SlopeSpec::meridian(), poly(&i, "U"))];
    let r = detect(&i, Some(&[poly(&i, "V")]), &per, &slopes, DetectOptions::default()).unwrap();
    assert_eq!(r.slopes[0].verdict, SlopeVerdict::StronglyDetected);
    assert!(matches!(r.slopes[0].rank_c, Some(RankValue::Infinite { .. })));
}

#[test]
fn figure_eight_meridian() {
    let i = ideal(&["x", "y"], &["y^2 + (-1 - x^2)*y + (-1 + 2*x^2)"]);
    let per = PeripheralTraces { mu: Some(poly(&i, "x")), lambda: None, mulambda: None };
    let slopes = vec![(SlopeSpec::meridian(), poly(&i, "x"))];
    let r = detect(&i, None, &per, &slopes, DetectOptions { integer_ranks: true, ..Default::default() }).unwrap();
    assert!(!r.closed_surface.is_detected());
    assert_eq!(r.slopes[0].verdict, SlopeVerdict::NotDetected);
    assert_eq!(r.slopes[0].rank_c, Some(RankValue::Exact(2)));
    assert_eq!(r.slopes[0].rank_z, Some(RankValue::Exact(2)));
    assert!(r.norm_curve.flag);
    let json = serde_json::to_string(&r.to_json()).unwrap();
    assert!(json.starts_with("{\"closed_surface\""), "{json}");
}

#[test]
fn constant_trace_slope() {
    let i = ideal(&["x", "y"], &["y - 1"]);
    let slopes = vec![(SlopeSpec::meridian(), poly(&i, "x")), (SlopeSpec::longitude(), poly(&i, "y"))];
    let per = PeripheralTraces { mu: Some(poly(&i, "x")), lambda: Some(poly(&i, "y")), mulambda: None };
    let r = detect(&i, None, &per, &slopes, DetectOptions::default()).unwrap();
    assert_eq!(r.slopes[0].rank_c, Some(RankValue::Exact(1)));
    assert_eq!(r.slopes[1].verdict, SlopeVerdict::ConstantTraceDetected);
    assert!(!r.norm_curve.flag);
}

#[test]
fn square_root_curve_is_not_detected() {
    let ring = PolyRing::new(vec!["x".into(), "y".into()], MonomialOrder::lex(vec![0, 1]).unwrap()).unwrap();
    let i = IdealPresentation::parse(&ring, &["y^2 - x"]).unwrap();
    let per = PeripheralTraces { mu: Some(poly(&i, "x")), lambda: None, mulambda: None };
    let v = closed_surface_verdict(&i, &coordinate_functions(&i), &per).unwrap();
    assert!(!v.is_detected());
}
