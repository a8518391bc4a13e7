#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tracerank::cli::{corpus, Expect, Job, Session};
use tracerank::groebner::{buchberger, IdealPresentation};
use tracerank::modrank::{RankValue, Scalars};
use tracerank::poly::{Poly, Rational, UniPoly};
use tracerank::tracecalc::{GroupWord, Letter, TraceRing};
use tracerank::valuation::{newton_polygon, valuation};

pub fn job(name: &str) -> Job {
    corpus::load(name).unwrap().unwrap()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Reduced Groebner bases of `shuffles` random reorderings of the generators,
/// compared with the unshuffled one.
pub fn gb_shuffle_mismatches(ideal: &IdealPresentation, shuffles: usize, rng: &mut ChaCha8Rng) -> usize {
    let reference = buchberger(ideal).elements().to_vec();
    let mut bad = 0;
    for _ in 0..shuffles {
        let mut gens = ideal.generators().to_vec();
        gens.shuffle(rng);
        let shuffled = IdealPresentation::new(ideal.ring(), gens).unwrap();
        if buchberger(&shuffled).elements() != reference.as_slice() {
            bad += 1;
        }
    }
    bad
}

pub type Mat = [Rational; 4];

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    [
        &a[0] * &b[0] + &a[1] * &b[2],
        &a[0] * &b[1] + &a[1] * &b[3],
        &a[2] * &b[0] + &a[3] * &b[2],
        &a[2] * &b[1] + &a[3] * &b[3],
    ]
}

pub fn mat_inv(a: &Mat) -> Mat {
    [a[3].clone(), -a[1].clone(), -a[2].clone(), a[0].clone()]
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

/// Random matrix of determinant one with rational entries.
pub fn random_sl2(rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let a = small_rat(rng);
        if a.is_zero() {
            continue;
        }
        let (b, c) = (small_rat(rng), small_rat(rng));
        let d = (Rational::one() + &b * &c) / &a;
        return [a, b, c, d];
    }
}

pub fn word_matrix(w: &GroupWord, mats: &[Mat]) -> Mat {
    let mut m: Mat = [Rational::one(), Rational::zero(), Rational::zero(), Rational::one()];
    for l in w.letters() {
        let g = if l.inv { mat_inv(&mats[l.gen]) } else { mats[l.gen].clone() };
        m = mat_mul(&m, &g);
    }
    m
}

pub fn random_word(rng: &mut ChaCha8Rng, gens: usize, max_len: usize) -> GroupWord {
    let len = rng.gen_range(1..=max_len);
    GroupWord::from_letters((0..len).map(|_| Letter {
        gen: rng.gen_range(0..gens),
        inv: rng.gen_bool(0.5),
    }))
}

/// Words whose trace polynomial disagrees with the matrix trace, out of the
/// `assignments × words` checked.
pub fn trace_oracle_failures(assignments: usize, words: usize, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let names = ["a", "b", "c"];
    let tr = TraceRing::new(&names).unwrap();
    let mut bad = 0;
    let mut total = 0;
    for _ in 0..assignments {
        let mats: Vec<Mat> = (0..names.len()).map(|_| random_sl2(rng)).collect();
        let mut point = HashMap::new();
        for (mask, w) in tr.coordinate_words().iter().enumerate() {
            let var = tr.coordinate(mask + 1).to_string();
            let m = word_matrix(w, &mats);
            point.insert(var, &m[0] + &m[3]);
        }
        for _ in 0..words {
            let w = random_word(rng, names.len(), 12);
            let m = word_matrix(&w, &mats);
            let expected = &m[0] + &m[3];
            total += 1;
            if tr.trace(&w).eval(&point).unwrap() != expected {
                bad += 1;
            }
        }
    }
    (bad, total)
}

pub fn random_int_poly(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> UniPoly {
    let k = rng.gen_range(1..=max_deg);
    let mut c: Vec<i64> = (0..=k).map(|_| rng.gen_range(-bound..=bound)).collect();
    while c[0] == 0 {
        c[0] = rng.gen_range(-bound..=bound);
    }
    while c[k] == 0 {
        c[k] = rng.gen_range(-bound..=bound);
    }
    UniPoly::from_ints(&c)
}

/// Newton polygon identities: lengths add to the degree, rises add to
/// ν(c_k) − ν(c_0), and every point lies on or above the hull.
pub fn slope_sum_holds(h: &UniPoly, p: i64) -> bool {
    let p = BigInt::from(p);
    let poly = newton_polygon(h, &p).unwrap();
    let k = h.degree().unwrap();
    let v = |i: usize| valuation(h.coeff(i).numer(), &p) as i64;
    let lengths: usize = poly.segments.iter().map(|s| s.length).sum();
    let rise = poly
        .segments
        .iter()
        .fold(Rational::zero(), |acc, s| acc + &s.slope * Rational::from_integer(BigInt::from(s.length)));
    let root_sum = poly
        .root_valuations()
        .iter()
        .fold(Rational::zero(), |acc, (r, m)| acc + r * Rational::from_integer(BigInt::from(*m)));
    let above = poly.points.iter().all(|&(i, vi)| {
        poly.segments.iter().all(|s| {
            if i < s.start.0 || i > s.end.0 {
                return true;
            }
            let line = Rational::from_integer(BigInt::from(s.start.1))
                + &s.slope * Rational::from_integer(BigInt::from((i - s.start.0) as i64));
            Rational::from_integer(BigInt::from(vi)) >= line
        })
    });
    let diff = Rational::from_integer(BigInt::from(v(k) - v(0)));
    lengths == k && rise == diff && root_sum == -diff && above
}

fn lower(r: &RankValue) -> Option<usize> {
    match r {
        RankValue::Exact(n) => Some(*n),
        RankValue::Bounds { lower, .. } => Some(*lower),
        RankValue::Infinite { .. } => None,
    }
}

/// `C ≤ Q ≤ Z` (lower bounds, with INFINITE on top) at every slope a corpus
/// entry has a rank expectation for. Returns the checked triples.
pub fn rank_chain(job: &Job) -> Vec<(String, bool)> {
    let mut s = Session::new(job);
    let mut out = Vec::new();
    for e in &job.expects {
        let Expect::Rank { at, .. } = e else { continue };
        let mut vals = Vec::new();
        for sc in [Scalars::Complex, Scalars::Rational, Scalars::Integer] {
            match s.rank(*at, sc) {
                Ok(r) => vals.push(lower(&r.value).map_or(usize::MAX, |n| n)),
                Err(_) => break,
            }
        }
        let ok = vals.windows(2).all(|w| w[0] <= w[1]) && vals.len() >= 2;
        let shown: Vec<String> = vals
            .iter()
            .map(|v| if *v == usize::MAX { "INFINITE".into() } else { v.to_string() })
            .collect();
        out.push((format!("{} at {at}: {}", job.name.as_deref().unwrap_or("?"), shown.join(" <= ")), ok));
    }
    out
}

/// Primitive `c₀ + … + c_k p^r t^k` with `c_k` a product of primes other
/// than `p`, `c₀ = 1`, so the transformed polynomial must have a root of
/// negative valuation at some prime of `c_k`.
pub fn lemma_form_input(rng: &mut ChaCha8Rng) -> (UniPoly, BigInt) {
    let primes = [2i64, 3, 5, 7, 11, 13];
    let p = *primes.choose(rng).unwrap();
    let others: Vec<i64> = primes.iter().copied().filter(|&q| q != p).collect();
    let mut ck = 1i64;
    for _ in 0..rng.gen_range(1..=2) {
        ck *= others.choose(rng).unwrap();
    }
    let r = rng.gen_range(0..=2u32);
    let k = rng.gen_range(1..=4usize);
    let mut c: Vec<i64> = (0..=k).map(|_| rng.gen_range(-20..=20)).collect();
    c[0] = 1;
    c[k] = ck * p.pow(r) * if rng.gen_bool(0.5) { 1 } else { -1 };
    (UniPoly::from_ints(&c), BigInt::from(p))
}

pub fn random_monic(rng: &mut ChaCha8Rng) -> UniPoly {
    let k = rng.gen_range(1..=5usize);
    let mut c: Vec<i64> = (0..=k).map(|_| rng.gen_range(-30..=30)).collect();
    c[k] = 1;
    UniPoly::from_ints(&c)
}

pub fn is_unit(n: &BigInt) -> bool {
    n.abs().is_one()
}

pub fn parse(job: &Job, s: &str) -> Poly {
    Poly::parse(&job.ring, s).unwrap()
}

pub fn parse_all(job: &Job, s: &[&str]) -> Vec<Poly> {
    s.iter().map(|t| parse(job, t)).collect()
}
