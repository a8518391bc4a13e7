//! Job files, command dispatch and the bundled corpus.

pub mod corpus;
pub mod job;

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::detect::{detect, enumerate_slopes, slope_trace, DetectOptions, DetectionReport};
use crate::error::{Error, Result};
use crate::groebner::{adjoin_base, buchberger, eliminate, FiberAlgebra, FiberDim, GroebnerBasis, IdealPresentation};
use crate::integrality::{image_curve, is_integral, rational_contraction, BaseKind, Dependence};
use crate::modrank::{
    rank_c, rank_q, rank_z_bounds, verify_free_basis, verify_generating_set, verify_nonfree, NonfreeClaim,
    RankResult, RelationTable, Scalars,
};
use crate::poly::Poly;
use crate::tracecalc::SlopeSpec;

pub use job::{parse_job, Claim, DefinedOver, Expect, Job, SlopeSet, TraceExpr};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// Exit status for an error: certificate and re-check failures are 3,
/// everything else is an input problem.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification { .. } => EXIT_VERIFY,
        _ => EXIT_INPUT,
    }
}

/// Caches shared by the commands that run on one job.
pub struct Session<'a> {
    pub job: &'a Job,
    gb: Option<GroebnerBasis>,
    ranks: HashMap<(SlopeSpec, Scalars), RankResult>,
    report: Option<DetectionReport>,
    rejected: Vec<String>,
}

impl<'a> Session<'a> {
    pub fn new(job: &'a Job) -> Self {
        Session {
            job,
            gb: None,
            ranks: HashMap::new(),
            report: None,
            rejected: Vec::new(),
        }
    }

    pub fn groebner(&mut self) -> &GroebnerBasis {
        let ideal = &self.job.ideal;
        self.gb.get_or_insert_with(|| buchberger(ideal))
    }

    /// Trace of the slope: an explicit `slope-trace:` entry or the peripheral traces.
    pub fn trace(&self, s: SlopeSpec) -> Result<Poly> {
        if let Some((_, p)) = self.job.slope_traces.iter().find(|(t, _)| *t == s) {
            return Ok(p.clone());
        }
        if self.job.peripheral.is_empty() {
            return Err(Error::MissingSection("peripheral".into()));
        }
        slope_trace(&s, &self.job.peripheral_traces())
    }

    pub fn slopes(&self) -> Result<Vec<SlopeSpec>> {
        match &self.job.slopes {
            Some(SlopeSet::Bound(n)) => enumerate_slopes(*n),
            Some(SlopeSet::List(l)) => Ok(l.clone()),
            None => Err(Error::MissingSection("slopes".into())),
        }
    }

    fn rational_ok(&self) -> Result<()> {
        if self.job.ring.number_field().is_some() || self.job.defined_over.is_some() {
            Ok(())
        } else {
            Err(Error::MissingSection(
                "defined-over (Q or Z ranks of a rational ideal need `defined-over: Q;` or `defined-over: conjugate;`)".into(),
            ))
        }
    }

    fn claims_at(&self, s: SlopeSpec) -> impl Iterator<Item = &'a Claim> {
        self.job.claims.iter().filter(move |c| {
            let at = match c {
                Claim::Basis { at, .. }
                | Claim::Generators { at, .. }
                | Claim::Table { at, .. }
                | Claim::Nonfree { at, .. } => at,
            };
            at.is_none_or(|a| a == s)
        })
    }

    fn table(&self, s: SlopeSpec) -> Option<RelationTable> {
        let lines: Vec<(Poly, Poly)> = self
            .claims_at(s)
            .filter_map(|c| match c {
                Claim::Table { lines, .. } => Some(lines.clone()),
                _ => None,
            })
            .flatten()
            .collect();
        (!lines.is_empty()).then(|| RelationTable::new(lines))
    }

    fn nonfree_claim(&self, s: SlopeSpec) -> Option<NonfreeClaim> {
        self.claims_at(s).find_map(|c| match c {
            Claim::Nonfree { summand, syzygy, prime, base, .. } => {
                let gens = self.integer_generators(s).unwrap_or_default();
                Some(NonfreeClaim {
                    summand: summand.clone(),
                    syzygy: syzygy.clone(),
                    obstruction: (prime.clone(), base.clone()),
                    complement: gens.into_iter().filter(|g| !summand.contains(g)).collect(),
                })
            }
            _ => None,
        })
    }

    fn integer_generators(&self, s: SlopeSpec) -> Option<Vec<Poly>> {
        self.claims_at(s).find_map(|c| match c {
            Claim::Generators { scalars: Scalars::Integer, elements, .. } => Some(elements.clone()),
            Claim::Basis { scalars: Scalars::Integer, elements, .. } => Some(elements.clone()),
            _ => None,
        })
    }

    fn candidate(&self, s: SlopeSpec, sc: Scalars) -> Option<Vec<Poly>> {
        self.claims_at(s).find_map(|c| match c {
            Claim::Basis { scalars, elements, .. } if *scalars == sc => Some(elements.clone()),
            _ => None,
        })
    }

    pub fn rank(&mut self, s: SlopeSpec, sc: Scalars) -> Result<&RankResult> {
        if !self.ranks.contains_key(&(s, sc)) {
            if sc != Scalars::Complex {
                self.rational_ok()?;
            }
            let trace = self.trace(s)?;
            let r = match self.rank_with_claims(s, sc, &trace, true) {
                Err(e @ Error::Verification { .. }) => {
                    self.rejected.push(format!("claim over {sc} at {s} rejected: {e}"));
                    self.rank_with_claims(s, sc, &trace, false)?
                }
                r => r?,
            };
            self.ranks.insert((s, sc), r);
        }
        Ok(&self.ranks[&(s, sc)])
    }

    fn rank_with_claims(&self, s: SlopeSpec, sc: Scalars, trace: &Poly, claims: bool) -> Result<RankResult> {
        let ideal = &self.job.ideal;
        let cand = self.candidate(s, sc).filter(|_| claims);
        match sc {
            Scalars::Complex => rank_c(ideal, trace, cand.as_deref()),
            Scalars::Rational => rank_q(ideal, trace, cand.as_deref()),
            Scalars::Integer if claims => {
                let gens = self.integer_generators(s);
                let table = self.table(s);
                let nf = self.nonfree_claim(s);
                rank_z_bounds(ideal, trace, gens.as_deref(), table.as_ref(), nf.as_ref())
            }
            Scalars::Integer => rank_z_bounds(ideal, trace, None, None, None),
        }
    }

    /// Claims that failed verification while computing ranks.
    pub fn rejected_claims(&self) -> &[String] {
        &self.rejected
    }

    pub fn fiber_dim(&self, s: SlopeSpec, sc: Scalars) -> Result<FiberDim> {
        let trace = self.trace(s)?;
        let ideal = match sc {
            Scalars::Complex => self.job.ideal.clone(),
            _ => {
                self.rational_ok()?;
                rational_contraction(&self.job.ideal)?
            }
        };
        let ext = adjoin_base(&ideal, &trace.to_ring(ideal.ring())?, "_B")?;
        match FiberAlgebra::new(&ext, "_B") {
            Ok(f) => Ok(f.dimension()),
            Err(Error::ConstantBase) => Ok(FiberDim::Finite(0)),
            Err(e) => Err(e),
        }
    }

    pub fn detect(&mut self, integer_ranks: bool) -> Result<&DetectionReport> {
        if self.report.is_none() {
            let slopes = self.slopes()?;
            let pairs = slopes
                .iter()
                .map(|s| Ok((*s, self.trace(*s)?)))
                .collect::<Result<Vec<_>>>()?;
            let options = DetectOptions {
                ranks: true,
                rational_ranks: self.rational_ok().is_ok(),
                integer_ranks: integer_ranks && self.rational_ok().is_ok(),
            };
            let report = detect(
                &self.job.ideal,
                self.job.coordinates.as_deref(),
                &self.job.peripheral_traces(),
                &pairs,
                options,
            )?;
            self.report = Some(report);
        }
        Ok(self.report.as_ref().unwrap())
    }

    fn conditional(&self) -> &'static str {
        if self.job.defined_over == Some(DefinedOver::Conjugate) && self.job.ring.number_field().is_none() {
            " (conditional: the ideal is taken to be the Q-closure of a conjugate component)"
        } else {
            ""
        }
    }
}

fn same_up_to_scalar(a: &Poly, b: &Poly) -> bool {
    a.monic().to_string() == b.monic().to_string()
}

fn same_sets(a: &[Poly], b: &[Poly]) -> bool {
    let key = |v: &[Poly]| {
        let mut k: Vec<String> = v.iter().map(|p| p.monic().to_string()).collect();
        k.sort();
        k
    };
    key(a) == key(b)
}

/// Outcome of one expectation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

fn check(label: impl Into<String>, expected: impl ToString, got: impl ToString) -> Check {
    let (e, g) = (expected.to_string(), got.to_string());
    Check {
        label: label.into(),
        ok: e == g,
        detail: if e == g { g } else { format!("expected {e}, got {g}") },
    }
}

fn flag(label: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        label: label.into(),
        ok,
        detail: detail.into(),
    }
}

fn scalars_kind(sc: Scalars) -> BaseKind {
    match sc {
        Scalars::Complex => BaseKind::Field,
        Scalars::Rational => BaseKind::Rational,
        Scalars::Integer => BaseKind::Integer,
    }
}

/// Evaluates every expectation; errors inside one expectation become failures.
pub fn run_expectations(session: &mut Session) -> Vec<Check> {
    let job = session.job;
    let mut out = Vec::new();
    for e in &job.expects {
        out.push(match evaluate(session, e) {
            Ok(c) => c,
            Err(err) => flag(expect_label(e), false, format!("error: {err}")),
        });
    }
    out
}

fn expect_label(e: &Expect) -> String {
    match e {
        Expect::ReducedGb => "reduced groebner basis".into(),
        Expect::Gb(_) => "groebner basis".into(),
        Expect::LeadingMonomials(_) => "leading monomials".into(),
        Expect::Contraction(_) => "rational contraction".into(),
        Expect::Member(p) => format!("member {p}"),
        Expect::NonMember(p) => format!("nonmember {p}"),
        Expect::Image { f, base, .. } => format!("image {f} over {base}"),
        Expect::Dependence { scalars, f, base, .. } => format!("dependence {scalars} {f} over {base}"),
        Expect::FiberDim { at, .. } => format!("fiber dimension at {at}"),
        Expect::Rank { at, .. } => format!("rank at {at}"),
        Expect::Closed(_) => "closed surface".into(),
        Expect::Slope { at, .. } => format!("slope {at}"),
        Expect::NormCurve(_) => "norm curve".into(),
        Expect::MinRank(_) => "minimum finite rank".into(),
        Expect::Nonfree(at) => format!("nonfree at {at}"),
    }
}

fn evaluate(session: &mut Session, e: &Expect) -> Result<Check> {
    let job = session.job;
    let label = expect_label(e);
    Ok(match e {
        Expect::ReducedGb => {
            let gens: Vec<Poly> = job.ideal.generators().iter().map(|g| g.monic()).collect();
            match crate::groebner::verify_elements(&gens) {
                Ok(()) => flag(label, true, format!("{} elements, every S-polynomial reduces to 0", gens.len())),
                Err(err) => flag(label, false, err.to_string()),
            }
        }
        Expect::Gb(want) => {
            let got = session.groebner().elements().to_vec();
            flag(label, same_sets(&got, want), list_text(&got))
        }
        Expect::LeadingMonomials(want) => {
            let gb = session.groebner();
            let got: Vec<String> = gb
                .leading_monomials()
                .into_iter()
                .map(|m| Poly::monomial(gb.ring(), m).to_string())
                .collect();
            let (mut a, mut b) = (want.clone(), got.clone());
            a.sort();
            b.sort();
            flag(label, a == b, got.join(", "))
        }
        Expect::Contraction(want) => {
            let c = rational_contraction(&job.ideal)?;
            let w = want.iter().map(|p| p.to_ring(c.ring())).collect::<Result<Vec<_>>>()?;
            let wi = IdealPresentation::new(c.ring(), w)?;
            let (g1, g2) = (buchberger(&c), buchberger(&wi));
            flag(label, same_sets(g1.elements(), g2.elements()), list_text(c.generators()))
        }
        Expect::Member(p) => flag(label, session.groebner().contains(p)?, ""),
        Expect::NonMember(p) => flag(label, !session.groebner().contains(p)?, ""),
        Expect::Image { f, base, curve } => {
            let got = image_curve(&job.ideal, f, base)?;
            check(label, curve, got)
        }
        Expect::Dependence { scalars, f, base, relation } => {
            let got = is_integral(&job.ideal, f, base, scalars_kind(*scalars))?;
            match (relation, &got) {
                (None, Dependence::NotIntegral { .. }) => flag(label, true, got.to_string()),
                (Some(r), Dependence::Integral { relation, .. }) => {
                    let ok = same_up_to_scalar(r, relation);
                    let ideal_ok = session.groebner().contains(&substitute_relation(relation, f, base)?)?;
                    flag(label, ok && ideal_ok, got.to_string())
                }
                _ => flag(label, false, got.to_string()),
            }
        }
        Expect::FiberDim { at, dims } => {
            let mut ok = true;
            let mut parts = Vec::new();
            for (sc, n) in dims {
                let d = session.fiber_dim(*at, *sc)?;
                ok &= d == FiberDim::Finite(*n);
                parts.push(format!("{sc} {d}"));
            }
            flag(label, ok, parts.join(", "))
        }
        Expect::Rank { at, values } => {
            let mut ok = true;
            let mut parts = Vec::new();
            for (sc, v) in values {
                let got = session.rank(*at, *sc)?.value.to_string();
                ok &= &got == v;
                parts.push(format!("{sc} {got}"));
            }
            let mut detail = parts.join(", ");
            for r in session.rejected_claims() {
                detail.push_str(&format!("; {r}"));
            }
            flag(label, ok, detail)
        }
        Expect::Closed(v) => {
            let r = session.detect(false)?;
            let got = if r.closed_surface.is_detected() { "DETECTED" } else { "NOT_DETECTED" };
            check(label, v, got)
        }
        Expect::Slope { at, verdict } => {
            let r = session.detect(false)?;
            let got = r
                .slopes
                .iter()
                .find(|s| s.slope == *at)
                .ok_or_else(|| Error::Invalid(format!("slope {at} is not in `slopes:`")))?;
            check(label, verdict, got.verdict)
        }
        Expect::NormCurve(b) => check(label, b, session.detect(false)?.norm_curve.flag),
        Expect::MinRank(n) => {
            let got = session.detect(false)?.norm_curve.min_finite_rank;
            check(label, n, got.map_or("none".into(), |m| m.to_string()))
        }
        Expect::Nonfree(at) => {
            let r = session.rank(*at, Scalars::Integer)?;
            flag(label, r.nonfree.is_some(), r.value.to_string())
        }
    })
}

/// Substitutes the base and the function into a relation printed in its own
/// two-variable ring.
fn substitute_relation(relation: &Poly, f: &Poly, base: &Poly) -> Result<Poly> {
    let vars = relation.ring().vars();
    let values = HashMap::from([(vars[0].clone(), base.clone()), (vars[1].clone(), f.clone())]);
    relation.substitute(&values, f.ring())
}

fn list_text(ps: &[Poly]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; ")
}

/// Report for `corpus` and `check`: one line per expectation.
pub fn expectation_report(name: &str, checks: &[Check]) -> (String, i32) {
    let mut o = String::new();
    let _ = writeln!(o, "{name}");
    for c in checks {
        let _ = writeln!(o, "  {} {}: {}", if c.ok { "ok" } else { "MISMATCH" }, c.label, c.detail);
    }
    let bad = checks.iter().filter(|c| !c.ok).count();
    let _ = writeln!(o, "  {} of {} expectations hold", checks.len() - bad, checks.len());
    (o, if bad == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

pub fn cmd_gb(job: &Job) -> Result<String> {
    let gb = buchberger(&job.ideal);
    gb.verify()?;
    Ok(gb.elements().iter().map(|g| format!("{g}\n")).collect())
}

pub fn cmd_nf(job: &Job, poly: &str) -> Result<String> {
    let p = Poly::parse(&job.ring, poly)?;
    Ok(format!("{}\n", buchberger(&job.ideal).normal_form(&p)?))
}

pub fn cmd_member(job: &Job, poly: &str) -> Result<String> {
    let p = Poly::parse(&job.ring, poly)?;
    Ok(if buchberger(&job.ideal).contains(&p)? { "TRUE\n" } else { "FALSE\n" }.into())
}

pub fn cmd_eliminate(job: &Job, keep: &[String]) -> Result<String> {
    let keep: Vec<&str> = keep.iter().map(|s| s.as_str()).collect();
    let out = eliminate(&job.ideal, &keep)?;
    Ok(out.generators().iter().map(|g| format!("{g}\n")).collect())
}

/// Ranks at each slope. `scalars` lists which of C, Q, Z to compute.
pub fn cmd_rank(job: &Job, slopes: &[SlopeSpec], scalars: &[Scalars], certificates: bool) -> Result<String> {
    let mut s = Session::new(job);
    let mut o = String::new();
    for &sl in slopes {
        let trace = s.trace(sl)?;
        let _ = writeln!(o, "slope {sl}: trace {trace}");
        for &sc in scalars {
            let cond = if sc == Scalars::Complex { "" } else { s.conditional() };
            let seen = s.rejected.len();
            s.rank(sl, sc)?;
            for r in &s.rejected[seen..] {
                let _ = writeln!(o, "  {r}");
            }
            let r = &s.ranks[&(sl, sc)];
            let _ = writeln!(o, "  rank {sc}: {}{cond}", r.value);
            if let crate::modrank::RankValue::Infinite { coordinate, leading } = &r.value {
                let _ = writeln!(o, "    {coordinate} is not integral; leading coefficient {leading}");
            }
            if certificates {
                if let Some(b) = &r.basis {
                    push_indented(&mut o, &b.to_text());
                }
                if let Some(g) = &r.generators {
                    push_indented(&mut o, &g.to_text());
                }
                if let Some(n) = &r.nonfree {
                    push_indented(&mut o, &n.to_text());
                }
            }
        }
    }
    Ok(o)
}

fn push_indented(o: &mut String, text: &str) {
    for line in text.lines() {
        let _ = writeln!(o, "    {line}");
    }
}

pub fn cmd_detect(job: &Job, json: bool, integer_ranks: bool) -> Result<String> {
    let mut s = Session::new(job);
    let r = s.detect(integer_ranks)?;
    Ok(if json {
        format!("{}\n", serde_json::to_string_pretty(&r.to_json()).expect("json"))
    } else {
        r.to_string()
    })
}

/// Verifies each basis and generating-set claim and prints the certificates.
pub fn cmd_basis(job: &Job) -> Result<String> {
    let s = Session::new(job);
    let mut o = String::new();
    let mut any = false;
    for c in &job.claims {
        let (at, scalars, elements, generating) = match c {
            Claim::Basis { at, scalars, elements } => (at, *scalars, elements, false),
            Claim::Generators { at, scalars, elements } => (at, *scalars, elements, true),
            _ => continue,
        };
        any = true;
        let sl = at.unwrap_or_else(SlopeSpec::meridian);
        if scalars != Scalars::Complex {
            s.rational_ok()?;
        }
        let trace = s.trace(sl)?;
        if generating {
            let table = s.table(sl);
            let cert = verify_generating_set(&job.ideal, &trace, elements, scalars, table.as_ref())?;
            let _ = writeln!(o, "generating set over {scalars} at {sl}: {} elements verified", cert.size());
            push_indented(&mut o, &cert.to_text());
        } else {
            let cert = verify_free_basis(&job.ideal, &trace, elements, scalars)?;
            let _ = writeln!(o, "free basis over {scalars} at {sl}: {} elements verified", cert.rank());
            push_indented(&mut o, &cert.to_text());
        }
    }
    if !any {
        return Err(Error::MissingSection("claim basis or claim generators".into()));
    }
    Ok(o)
}

pub fn cmd_nonfree(job: &Job) -> Result<String> {
    let s = Session::new(job);
    let mut o = String::new();
    for c in &job.claims {
        if let Claim::Nonfree { at, .. } = c {
            let sl = at.unwrap_or_else(SlopeSpec::meridian);
            s.rational_ok()?;
            let claim = s.nonfree_claim(sl).unwrap();
            let cert = verify_nonfree(&job.ideal, &s.trace(sl)?, &claim)?;
            let _ = writeln!(o, "not free over Z at {sl}");
            push_indented(&mut o, &cert.to_text());
            return Ok(o);
        }
    }
    Err(Error::MissingSection("claim nonfree".into()))
}

pub fn cmd_check(job: &Job) -> (String, i32) {
    let mut s = Session::new(job);
    let checks = run_expectations(&mut s);
    expectation_report(job.name.as_deref().unwrap_or("job"), &checks)
}

#[cfg(test)]
mod tests;
