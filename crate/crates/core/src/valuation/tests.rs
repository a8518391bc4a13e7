use super::*;

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn half_has_valuation_minus_one() {
    let poly = newton_polygon(&UniPoly::from_ints(&[-1, 2]), &b(2)).unwrap();
    assert_eq!(poly.root_valuations(), vec![(q(-1, 1), 1)]);
}

#[test]
fn figure_eight_fibre_is_integral_everywhere() {
    let h = UniPoly::from_ints(&[7, -5, 1]);
    for p in [2, 3, 5, 7] {
        let poly = newton_polygon(&h, &b(p)).unwrap();
        assert!(poly.segments.iter().all(|s| s.slope <= q(0, 1)), "p = {p}");
    }
    assert!(is_algebraic_integer(&AlgebraicNumber::new(&h).unwrap()).unwrap());
}

#[test]
fn third_at_two_and_three() {
    let h = UniPoly::from_ints(&[-1, 3]);
    assert_eq!(newton_polygon(&h, &b(3)).unwrap().root_valuations(), vec![(q(-1, 1), 1)]);
    assert_eq!(newton_polygon(&h, &b(2)).unwrap().root_valuations(), vec![(q(0, 1), 1)]);
}

#[test]
fn zero_roots_are_excluded() {
    let h = UniPoly::from_ints(&[0, 0, 4, 1]);
    let poly = newton_polygon(&h, &b(2)).unwrap();
    assert_eq!(poly.segments.iter().map(|s| s.length).sum::<usize>(), 1);
}

#[test]
fn composite_and_huge_primes_rejected() {
    let h = UniPoly::from_ints(&[1, 1]);
    assert_eq!(newton_polygon(&h, &b(4)), Err(Error::NotPrime(b(4))));
    assert_eq!(newton_polygon(&h, &b(1_000_000_000_039)), Err(Error::PrimeTooLarge(b(1_000_000_000_039))));
    assert!(is_prime(&b(999_999_999_989)).unwrap());
}

#[test]
fn algebraic_integer_examples() {
    let yes = |c: &[i64]| is_algebraic_integer(&AlgebraicNumber::from_ints(c).unwrap()).unwrap();
    assert!(yes(&[7, -5, 1]));
    assert!(!yes(&[1, 1, 2]));
    assert!(yes(&[-3, 1]));
    assert!(!yes(&[2, 0, -4]));
}

#[test]
fn cl_witness_examples() {
    let w = cl_witness(&UniPoly::from_ints(&[-1, 3]), &b(2)).unwrap();
    assert!(matches!(&w, ClWitness::Found { q, .. } if *q == b(3)));
    assert!(w.verify(&UniPoly::from_ints(&[-1, 3]), &b(2)).unwrap());
    assert!(matches!(cl_witness(&UniPoly::from_ints(&[-5, 1]), &b(2)).unwrap(), ClWitness::None(_)));
    let h = UniPoly::from_ints(&[1, 1, 6]);
    let w = cl_witness(&h, &b(2)).unwrap();
    match &w {
        ClWitness::Found { q, r, transformed, .. } => {
            assert_eq!(*q, b(3));
            assert_eq!(*r, 1);
            assert_eq!(*transformed, UniPoly::from_ints(&[2, 1, 3]));
        }
        other => panic!("{other}"),
    }
    assert!(w.verify(&h, &b(2)).unwrap());
}

#[test]
fn ani_examples() {
    let a = |c: &[i64]| AlgebraicNumber::from_ints(c).unwrap();
    let monic = vec![("x".to_string(), a(&[7, -5, 1]))];
    assert_eq!(ani_check(&monic, &a(&[-2, 1])).unwrap(), AniVerdict::NoEvidence);
    let bad = vec![("g".to_string(), a(&[1, 1, 2]))];
    assert_eq!(
        ani_check(&bad, &a(&[-1, 1])).unwrap(),
        AniVerdict::ClosedSurfaceEvidence { word: "g".into() }
    );
    assert_eq!(ani_check(&[], &a(&[-1, 1])).unwrap(), AniVerdict::NoEvidence);
}
