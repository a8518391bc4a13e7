mod common;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tracerank::cli::{corpus, Session};
use tracerank::detect::{detect, DetectOptions, SlopeVerdict};
use tracerank::groebner::{buchberger, eliminate, generic_fiber_dim, verify_elements, FiberDim, IdealPresentation};
use tracerank::integrality::{image_curve, rational_contraction, PeripheralTraces};
use tracerank::modrank::{verify_free_basis, verify_generating_set, Scalars};
use tracerank::poly::{Poly, PolyRing};
use tracerank::tracecalc::SlopeSpec;
use tracerank::valuation::{cl_witness, integral_by_polygons, AlgebraicNumber, ClWitness};

use common::*;

type Outcome = Result<String, String>;

/// Collects sub-checks; the criterion passes when all of them do.
#[derive(Default)]
struct Checks {
    failed: Vec<String>,
    passed: Vec<String>,
}

impl Checks {
    fn check(&mut self, what: impl Into<String>, ok: bool) {
        if ok {
            self.passed.push(what.into());
        } else {
            self.failed.push(what.into());
        }
    }

    fn result<T, E: std::fmt::Display>(&mut self, what: &str, r: Result<T, E>) -> Option<T> {
        match r {
            Ok(v) => {
                self.passed.push(what.to_string());
                Some(v)
            }
            Err(e) => {
                self.failed.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn finish(self) -> Outcome {
        if self.failed.is_empty() {
            Ok(self.passed.join("; "))
        } else {
            Err(self.failed.join("; "))
        }
    }
}

fn rank(s: &mut Session, at: SlopeSpec, sc: Scalars) -> String {
    match s.rank(at, sc) {
        Ok(r) => r.value.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn ranks(s: &mut Session, at: SlopeSpec) -> [String; 3] {
    [
        rank(s, at, Scalars::Complex),
        rank(s, at, Scalars::Rational),
        rank(s, at, Scalars::Integer),
    ]
}

fn triple(n: usize) -> [String; 3] {
    [n.to_string(), n.to_string(), n.to_string()]
}

fn criterion_1() -> Outcome {
    let job = job("trefoil");
    let mut s = Session::new(&job);
    let mut c = Checks::default();
    let r = ranks(&mut s, SlopeSpec::meridian());
    c.check(format!("ranks at mu {r:?}"), r == triple(1));
    match s.detect(false) {
        Ok(rep) => c.check("norm-curve flag false", !rep.norm_curve.flag),
        Err(e) => c.check(format!("detect: {e}"), false),
    }
    c.finish()
}

fn criterion_2() -> Outcome {
    let job = job("fig8-X0");
    let mut c = Checks::default();
    let x = parse(&job, "x");
    let y = parse(&job, "y");
    if let Some(p) = c.result("image curve", image_curve(&job.ideal, &y, &x)) {
        let expected = Poly::parse(&PolyRing::lex(&["x", "y"]), "y^2+(-1-x^2)*y+(-1+2*x^2)").unwrap();
        c.check(format!("image curve prints as {p}"), p.to_string() == expected.to_string());
    }
    let mut s = Session::new(&job);
    let r = ranks(&mut s, SlopeSpec::meridian());
    c.check(format!("ranks at mu {r:?}"), r == triple(2));
    c.finish()
}

fn criterion_3() -> Outcome {
    let job = job("fig8-Y0");
    let mut c = Checks::default();
    let p1 = parse(&job, "(-1-4*l)+(-11+4*l)*y+(16-l)*y^2-7*y^3+y^4");
    if let Some(e) = c.result("eliminate to (l, y)", eliminate(&job.ideal, &["l", "y"])) {
        let g = e.generators();
        let ok = g.len() == 1 && g[0].to_string() == p1.to_ring(e.ring()).unwrap().monic().to_string();
        c.check(format!("elimination ideal ({}) = (p1)", g.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")), ok);
    }
    let lambda = SlopeSpec::longitude();
    let mu2l = SlopeSpec::new(2, 1).unwrap();
    let mut s = Session::new(&job);
    let l = parse(&job, "l");
    let basis = parse_all(&job, &["1", "y", "y^2", "y^3"]);
    c.result("{1,y,y^2,y^3} free over C[l]", verify_free_basis(&job.ideal, &l, &basis, Scalars::Complex));
    let r = ranks(&mut s, lambda);
    c.check(format!("ranks at lambda {r:?}"), r == triple(4));
    let strace = s.trace(mu2l).unwrap();
    let gens = parse_all(&job, &["1", "y", "y^2", "y^3", "xi"]);
    c.result(
        "{1,y,y^2,y^3,xi} generates over C[s]",
        verify_generating_set(&job.ideal, &strace, &gens, Scalars::Complex, None),
    );
    let r = ranks(&mut s, mu2l);
    c.check(format!("ranks at mu^2 lambda {r:?} (expected 5)"), r == triple(5));
    c.finish()
}

fn criterion_4() -> Outcome {
    let mut c = Checks::default();
    let x0 = job("m003-X0");
    let m = parse(&x0, "m");
    let basis = parse_all(&x0, &["1", "z", "z^2", "z^3"]);
    for sc in [Scalars::Complex, Scalars::Rational, Scalars::Integer] {
        c.result(&format!("{{1,z,z^2,z^3}} free over {sc}[m]"), verify_free_basis(&x0.ideal, &m, &basis, sc));
    }
    let mut s = Session::new(&x0);
    let r = ranks(&mut s, SlopeSpec::meridian());
    c.check(format!("X0 ranks {r:?}"), r == triple(4));
    let y0 = job("m003-Y0");
    c.check(
        "Y0 ideal is zeta^2+(-m-1)*zeta+1",
        y0.ideal.generators()[0] == parse(&y0, "zeta^2+(-m-1)*zeta+1"),
    );
    let mut s = Session::new(&y0);
    let r = ranks(&mut s, SlopeSpec::meridian());
    c.check(format!("Y0 ranks {r:?}"), r == triple(2));
    match s.detect(false) {
        Ok(rep) => c.check(
            format!("norm-curve check: min rank {:?}, flag {}", rep.norm_curve.min_finite_rank, rep.norm_curve.flag),
            rep.norm_curve.min_finite_rank == Some(2) && rep.norm_curve.flag,
        ),
        Err(e) => c.check(format!("detect: {e}"), false),
    }
    c.finish()
}

fn criterion_5() -> Outcome {
    let job = job("k8_20-X0");
    let mut c = Checks::default();
    let monic: Vec<Poly> = job.ideal.generators().iter().map(|g| g.monic()).collect();
    c.result("G is a reduced Groebner basis", verify_elements(&monic));
    let gb = buchberger(&job.ideal);
    let lms: Vec<String> = gb
        .leading_monomials()
        .into_iter()
        .map(|m| Poly::monomial(gb.ring(), m).to_string())
        .collect();
    let want: Vec<String> = parse_all(&job, &["y*x^4", "y^3*z", "y^2*x*z", "x^2*z", "z^2"])
        .iter()
        .map(|p| p.to_string())
        .collect();
    c.check(format!("leading monomials {lms:?}"), lms == want);
    let dep = parse(
        &job,
        "z^5 - 2*x*z^4 + (-2 + 3*x^2)*z^3 + (12*x - 9*x^3 +x^5)*z^2 + (-18*x^2 + 10*x^4 - x^6)*z + (6*x^3 - 2*x^5)",
    );
    c.check("degree-5 dependence of z is in the ideal", gb.contains(&dep).unwrap_or(false));
    let x = parse(&job, "x");
    let bprime = parse_all(&job, &["1", "y", "y^2", "y^3", "z", "y^2*z"]);
    c.result("B' free over Q[x]", verify_free_basis(&job.ideal, &x, &bprime, Scalars::Rational));
    c.result("B' generates over Z[x]", verify_generating_set(&job.ideal, &x, &bprime, Scalars::Integer, None));
    let mut s = Session::new(&job);
    let r = ranks(&mut s, SlopeSpec::meridian());
    c.check(format!("ranks {r:?} (expected 6)"), r == triple(6));
    c.finish()
}

fn criterion_6() -> Outcome {
    let mut c = Checks::default();
    let cj = job("ptb-Xeps-C");
    let lambda = SlopeSpec::longitude();
    if let Some(q) = c.result("rational contraction", rational_contraction(&cj.ideal)) {
        let r = q.ring().clone();
        let want = IdealPresentation::parse(&r, &["16+(-4-2*l)*z^2+z^4", "(-8-2*l)+z^2+2*y^2", "-8+(2+l)*z^2+2*t^2"]).unwrap();
        c.check(
            "contraction = (g1, g2, h)",
            buchberger(&q).elements() == buchberger(&want).elements(),
        );
        let s = Session::new(&cj);
        c.check(
            "fiber dimension 8 over C(l)",
            s.fiber_dim(lambda, Scalars::Complex).ok() == Some(FiberDim::Finite(8)),
        );
        let ext = tracerank::groebner::adjoin_base(&q, &Poly::parse(&r, "l").unwrap(), "_L").unwrap();
        c.check(
            "fiber dimension 16 over Q(l)",
            generic_fiber_dim(&ext, "_L").ok() == Some(FiberDim::Finite(16)),
        );
    }
    let l = parse(&cj, "l");
    let bc = parse_all(&cj, &["1", "z", "z^2", "z^3", "y", "z*y", "z^2*y", "z^3*y"]);
    c.result("B_C certified", verify_free_basis(&cj.ideal, &l, &bc, Scalars::Complex));
    let mut bq = bc.clone();
    bq.extend(bc.iter().map(|b| b * &parse(&cj, "t")));
    c.result("B_Q certified", verify_free_basis(&cj.ideal, &l, &bq, Scalars::Rational));
    let mut sc = Session::new(&cj);
    let rc = rank(&mut sc, lambda, Scalars::Complex);
    let qj = job("ptb-Xeps-Q");
    let mut s = Session::new(&qj);
    let rq = rank(&mut s, lambda, Scalars::Rational);
    match s.rank(lambda, Scalars::Integer) {
        Ok(r) => {
            let rz = r.value.to_string();
            match &r.generators {
                Some(g) => {
                    c.check(
                        format!(
                            "B_Z generating set: {} generators, {} table lines verified, {}/{} products through the table",
                            g.size(),
                            g.table_lines,
                            g.table_routed(),
                            g.lines.len()
                        ),
                        g.size() == 17 && g.table_lines == 73 && g.lines.len() == 17 * 16 / 2 - 16,
                    );
                }
                None => c.check("B_Z generating set", false),
            }
            match &r.nonfree {
                Some(n) => {
                    let text = n.to_text();
                    c.check("syzygy (l+6, -l, -2) spans the kernel", text.contains("(b) kernel"));
                    c.check("parity obstruction certified", text.contains("(c) obstruction"));
                    c.check("torsion free but not free", text.contains("torsion free but not free"));
                }
                None => c.check("non-freeness certificate", false),
            }
            c.check(format!("ranks C {rc}, Q {rq}, Z {rz}"), rc == "8" && rq == "16" && rz == "17");
        }
        Err(e) => c.check(format!("Z rank: {e}"), false),
    }
    c.finish()
}

fn criterion_7() -> Outcome {
    let mut c = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad = 0;
    for name in corpus::NAMES {
        bad += gb_shuffle_mismatches(&job(name).ideal, 5, &mut rng);
    }
    c.check(format!("reduced GB unchanged under 5 shuffles on {} fixtures ({bad} mismatches)", corpus::NAMES.len()), bad == 0);
    let (bad, total) = trace_oracle_failures(20, 10, &mut rng);
    c.check(format!("trace oracle {}/{total} words agree", total - bad), bad == 0);
    let primes = [2, 3, 5, 7, 11];
    let ok = (0..200)
        .filter(|k| slope_sum_holds(&random_int_poly(&mut rng, 8, 60), primes[k % primes.len()]))
        .count();
    c.check(format!("Newton slope sums {ok}/200"), ok == 200);
    let mut chains = 0;
    for name in corpus::NAMES {
        for (what, ok) in rank_chain(&job(name)) {
            chains += 1;
            c.check(format!("rank chain {what}"), ok);
        }
    }
    c.check(format!("{chains} rank chains checked"), chains > 0);
    c.finish()
}

fn criterion_8() -> Outcome {
    let mut c = Checks::default();
    let r = PolyRing::lex(&["x", "y"]);
    let toy = IdealPresentation::parse(&r, &["x*y - 1"]).unwrap();
    let per = PeripheralTraces {
        mu: Some(Poly::parse(&r, "x").unwrap()),
        lambda: None,
        mulambda: None,
    };
    match detect(&toy, None, &per, &[], DetectOptions::default()) {
        Ok(rep) => {
            let witness = match &rep.closed_surface {
                tracerank::detect::ClosedSurface::Detected { witness: Some(w), .. } => Some(w.to_string()),
                _ => None,
            };
            c.check(format!("hyperbola DETECTED with witness {witness:?}"), witness.is_some());
        }
        Err(e) => c.check(format!("hyperbola: {e}"), false),
    }
    for name in ["trefoil", "fig8-X0", "fig8-Y0", "m003-X0", "m003-Y0", "k8_20-X0", "ptb-Xeps-Q"] {
        let job = job(name);
        let mut s = Session::new(&job);
        match s.detect(false) {
            Ok(rep) => c.check(format!("{name} NOT_DETECTED"), !rep.closed_surface.is_detected()),
            Err(e) => c.check(format!("{name}: {e}"), false),
        }
    }
    let job = job("ptb-Xeps-Q");
    let mut s = Session::new(&job);
    if let Ok(rep) = s.detect(false) {
        for (p, q, label) in [(1, 0, "t"), (1, 1, "lt")] {
            let v = rep.slopes.iter().find(|e| e.slope == SlopeSpec::new(p, q).unwrap());
            c.check(
                format!("torus-bundle slope {label} STRONGLY_DETECTED"),
                v.is_some_and(|e| e.verdict == SlopeVerdict::StronglyDetected),
            );
        }
    }
    c.finish()
}

fn criterion_9() -> Outcome {
    let mut c = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut agree = 0;
    for _ in 0..200 {
        let h = random_int_poly(&mut rng, 6, 40);
        let a = AlgebraicNumber::new(&h).unwrap();
        let by_lc = is_unit(&a.leading_coefficient());
        if integral_by_polygons(&a).ok() == Some(by_lc) && tracerank::valuation::is_algebraic_integer(&a).ok() == Some(by_lc) {
            agree += 1;
        }
    }
    c.check(format!("algebraic-integer routes agree {agree}/200"), agree == 200);
    let mut verified = 0;
    for _ in 0..20 {
        let (h, p) = lemma_form_input(&mut rng);
        if let Ok(w @ ClWitness::Found { .. }) = cl_witness(&h, &p) {
            if w.verify(&h, &p).unwrap_or(false) {
                verified += 1;
            }
        }
    }
    c.check(format!("CL witnesses verified {verified}/20"), verified == 20);
    let mut none = 0;
    for _ in 0..20 {
        let h = random_monic(&mut rng);
        if matches!(cl_witness(&h, &BigInt::from(2)), Ok(ClWitness::None(_))) {
            none += 1;
        }
    }
    c.check(format!("monic inputs give NONE {none}/20"), none == 20);
    c.finish()
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("trefoil ranks and norm-curve flag", criterion_1),
        ("figure-eight X0", criterion_2),
        ("figure-eight Y0", criterion_3),
        ("M003", criterion_4),
        ("8_20", criterion_5),
        ("punctured-torus bundle", criterion_6),
        ("property suite", criterion_7),
        ("detection logic", criterion_8),
        ("valuation", criterion_9),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} PASS: {name} ({detail})", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} FAIL: {name} ({detail})", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
