mod common;

use std::collections::HashMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tracerank::cli::corpus;
use tracerank::groebner::buchberger;
use tracerank::poly::{Poly, PolyRing, Rational};

use common::*;

fn ring() -> PolyRing {
    PolyRing::lex(&["x", "y", "z"])
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-6i64..=6, 0u32..3, 0u32..3, 0u32..3), 0..6).prop_map(|terms| {
        let r = ring();
        terms.into_iter().fold(Poly::zero(&r), |acc, (c, a, b, d)| {
            let t = Poly::parse(&r, &format!("{c}*x^{a}*y^{b}*z^{d}")).unwrap();
            acc + t
        })
    })
}

fn point_strategy() -> impl Strategy<Value = HashMap<String, Rational>> {
    (-5i64..=5, -5i64..=5, 1i64..=4).prop_map(|(a, b, d)| {
        HashMap::from([
            ("x".to_string(), rat(a, d)),
            ("y".to_string(), rat(b, 1)),
            ("z".to_string(), rat(a + b, d + 1)),
        ])
    })
}

proptest! {
    #[test]
    fn ring_axioms(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!((&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!((&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Poly::one(&ring()), p.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly_strategy(), q in poly_strategy(), pt in point_strategy()) {
        let (a, b) = (p.eval(&pt).unwrap(), q.eval(&pt).unwrap());
        prop_assert_eq!((&p + &q).eval(&pt).unwrap(), &a + &b);
        prop_assert_eq!((&p * &q).eval(&pt).unwrap(), &a * &b);
    }

    #[test]
    fn printing_round_trips(p in poly_strategy()) {
        prop_assert_eq!(Poly::parse(&ring(), &p.to_string()).unwrap(), p);
    }
}

#[test]
fn reduced_basis_is_independent_of_generator_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in corpus::NAMES {
        let job = job(name);
        assert_eq!(gb_shuffle_mismatches(&job.ideal, 5, &mut rng), 0, "{name}");
    }
}

#[test]
fn buchberger_criterion_rechecked() {
    for name in corpus::NAMES {
        let gb = buchberger(&job(name).ideal);
        gb.verify().unwrap();
        tracerank::groebner::verify_elements(gb.elements()).unwrap();
    }
}

#[test]
fn trace_polynomials_match_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (bad, total) = trace_oracle_failures(20, 10, &mut rng);
    assert_eq!(total, 200);
    assert_eq!(bad, 0);
}

#[test]
fn newton_slope_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let primes = [2, 3, 5, 7];
    for k in 0..200 {
        let h = random_int_poly(&mut rng, 8, 60);
        let p = primes[k % primes.len()];
        assert!(slope_sum_holds(&h, p), "{} at {p}", h.display("t"));
    }
}

#[test]
fn rank_chain_on_corpus() {
    for name in corpus::NAMES {
        for (what, ok) in rank_chain(&job(name)) {
            assert!(ok, "{what}");
        }
    }
}
