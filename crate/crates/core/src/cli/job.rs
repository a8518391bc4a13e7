//! The job-file grammar: `;`-terminated statements grouped under `keyword:` headers.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::groebner::IdealPresentation;
use crate::integrality::PeripheralTraces;
use crate::modrank::Scalars;
use crate::poly::parse::parse_poly_at;
use crate::poly::{MonomialOrder, NumberField, OrderKind, Poly, PolyRing};
use crate::tracecalc::{GroupWord, SlopeSpec, TraceRing};

const HEADERS: [&str; 15] = [
    "name",
    "vars",
    "order",
    "adjoin",
    "defined-over",
    "ideal",
    "generators",
    "coordinate",
    "peripheral",
    "coordinates",
    "slopes",
    "slope-trace",
    "claim",
    "expect",
    "note",
];

#[derive(Clone, Debug)]
struct Item {
    text: String,
    pos: (usize, usize),
}

#[derive(Clone, Debug)]
struct Section {
    header: String,
    pos: (usize, usize),
    items: Vec<Item>,
}

fn err(pos: (usize, usize), msg: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.0,
        col: pos.1,
        msg: msg.into(),
    }
}

/// Splits on `;`, drops `#` comments, and groups statements by header.
fn sections(text: &str) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    let mut buf = String::new();
    let mut start: Option<(usize, usize)> = None;
    let (mut line, mut col) = (1usize, 1usize);
    let mut comment = false;
    for ch in text.chars() {
        let here = (line, col);
        if ch == '\n' {
            line += 1;
            col = 1;
            comment = false;
        } else {
            col += 1;
        }
        if comment {
            continue;
        }
        match ch {
            '#' => comment = true,
            ';' => {
                statement(&mut out, &buf, start.unwrap_or(here))?;
                buf.clear();
                start = None;
            }
            _ => {
                if start.is_none() && !ch.is_whitespace() {
                    start = Some(here);
                }
                if start.is_some() {
                    buf.push(if ch == '\n' { ' ' } else { ch });
                }
            }
        }
    }
    if !buf.trim().is_empty() {
        return Err(err(start.unwrap(), "statement is missing its terminating `;`"));
    }
    Ok(out)
}

fn statement(out: &mut Vec<Section>, raw: &str, pos: (usize, usize)) -> Result<()> {
    let s = raw.trim_end();
    if s.is_empty() {
        return Ok(());
    }
    if let Some((head, rest)) = s.split_once(':') {
        let first = head.split_whitespace().next().unwrap_or("");
        if HEADERS.contains(&first) {
            let lead = rest.len() - rest.trim_start().len();
            let offset = head.chars().count() + 1 + rest[..lead].chars().count();
            let mut sec = Section {
                header: head.split_whitespace().collect::<Vec<_>>().join(" "),
                pos,
                items: Vec::new(),
            };
            if !rest.trim().is_empty() {
                sec.items.push(Item {
                    text: rest.trim().to_string(),
                    pos: (pos.0, pos.1 + offset),
                });
            }
            out.push(sec);
            return Ok(());
        }
    }
    let mut words = s.split_whitespace();
    if let (Some(first), false) = (words.next(), s.contains(':')) {
        if first == "expect" || first == "claim" {
            out.push(Section {
                header: s.split_whitespace().collect::<Vec<_>>().join(" "),
                pos,
                items: Vec::new(),
            });
            return Ok(());
        }
    }
    match out.last_mut() {
        Some(sec) => {
            sec.items.push(Item {
                text: s.to_string(),
                pos,
            });
            Ok(())
        }
        None => Err(err(pos, "statement before any section header")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefinedOver {
    /// The ideal is its own ℚ-closure.
    Rationals,
    /// One of several Galois-conjugate components, given without its field.
    Conjugate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlopeSet {
    Bound(u32),
    List(Vec<SlopeSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceExpr {
    Poly(Poly),
    /// A word in the presentation generators and its evaluated trace.
    Word(GroupWord, Poly),
}

impl TraceExpr {
    pub fn poly(&self) -> &Poly {
        match self {
            TraceExpr::Poly(p) | TraceExpr::Word(_, p) => p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    Basis {
        scalars: Scalars,
        at: Option<SlopeSpec>,
        elements: Vec<Poly>,
    },
    Generators {
        scalars: Scalars,
        at: Option<SlopeSpec>,
        elements: Vec<Poly>,
    },
    Table {
        at: Option<SlopeSpec>,
        lines: Vec<(Poly, Poly)>,
    },
    Nonfree {
        at: Option<SlopeSpec>,
        summand: Vec<Poly>,
        syzygy: Vec<Poly>,
        prime: Poly,
        base: Poly,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expect {
    ReducedGb,
    Gb(Vec<Poly>),
    LeadingMonomials(Vec<String>),
    Contraction(Vec<Poly>),
    Member(Poly),
    NonMember(Poly),
    Image {
        f: Poly,
        base: Poly,
        curve: Poly,
    },
    Dependence {
        scalars: Scalars,
        f: Poly,
        base: Poly,
        /// `None` for NOT_INTEGRAL.
        relation: Option<Poly>,
    },
    FiberDim {
        at: SlopeSpec,
        dims: Vec<(Scalars, usize)>,
    },
    Rank {
        at: SlopeSpec,
        values: Vec<(Scalars, String)>,
    },
    Closed(String),
    Slope {
        at: SlopeSpec,
        verdict: String,
    },
    NormCurve(bool),
    MinRank(usize),
    Nonfree(SlopeSpec),
}

#[derive(Clone, Debug)]
pub struct Job {
    pub name: Option<String>,
    pub note: Vec<String>,
    vars: Vec<String>,
    order_kind: OrderKind,
    order_names: Vec<String>,
    adjoin: Option<(String, Poly)>,
    pub ring: PolyRing,
    pub ideal: IdealPresentation,
    pub defined_over: Option<DefinedOver>,
    pub generators: Vec<String>,
    pub coordinate_words: Vec<(Poly, GroupWord)>,
    pub peripheral: Vec<(String, TraceExpr)>,
    pub coordinates: Option<Vec<Poly>>,
    pub slopes: Option<SlopeSet>,
    pub slope_traces: Vec<(SlopeSpec, Poly)>,
    pub claims: Vec<Claim>,
    pub expects: Vec<Expect>,
}

struct Builder {
    ring: Option<PolyRing>,
}

impl Builder {
    fn ring(&self, pos: (usize, usize)) -> Result<&PolyRing> {
        self.ring
            .as_ref()
            .ok_or_else(|| err(pos, "polynomials need `vars:` declared first"))
    }

    fn poly(&self, text: &str, pos: (usize, usize)) -> Result<Poly> {
        parse_poly_at(self.ring(pos)?, text, pos).map_err(|e| match e {
            Error::UnboundVariable(v) | Error::UndeclaredVariable(v) => {
                err(pos, format!("variable `{v}` is not declared in `vars:`"))
            }
            e => e,
        })
    }

    /// Comma-separated polynomials, with positions tracked per element.
    fn list(&self, text: &str, pos: (usize, usize)) -> Result<Vec<Poly>> {
        let mut out = Vec::new();
        let mut col = pos.1;
        for part in split_top(text, ',') {
            let lead = part.len() - part.trim_start().len();
            if !part.trim().is_empty() {
                out.push(self.poly(part.trim(), (pos.0, col + lead))?);
            }
            col += part.chars().count() + 1;
        }
        Ok(out)
    }
}

/// Splits at `sep` outside parentheses.
fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut last = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[last..i]);
                last = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[last..]);
    out
}

pub fn parse_slope(text: &str, pos: (usize, usize)) -> Result<SlopeSpec> {
    let (p, q) = text
        .trim()
        .split_once('/')
        .ok_or_else(|| err(pos, format!("slope `{text}` must look like p/q")))?;
    let p: i64 = p.trim().parse().map_err(|_| err(pos, format!("bad slope numerator `{p}`")))?;
    let q: i64 = q.trim().parse().map_err(|_| err(pos, format!("bad slope denominator `{q}`")))?;
    SlopeSpec::new(p, q).map_err(|_| err(pos, format!("slope {p}/{q} is not coprime")))
}

fn scalars(word: &str, pos: (usize, usize)) -> Result<Scalars> {
    match word {
        "C" => Ok(Scalars::Complex),
        "Q" => Ok(Scalars::Rational),
        "Z" => Ok(Scalars::Integer),
        w => Err(err(pos, format!("expected C, Q or Z, found `{w}`"))),
    }
}

/// `... at p/q` suffix of a claim or expectation header.
fn at_slope(words: &[&str], pos: (usize, usize)) -> Result<Option<SlopeSpec>> {
    match words {
        [] => Ok(None),
        ["at", s] => Ok(Some(parse_slope(s, pos)?)),
        _ => Err(err(pos, format!("unexpected `{}`", words.join(" ")))),
    }
}

fn single<'a>(sec: &'a Section) -> Result<&'a Item> {
    match sec.items.as_slice() {
        [item] => Ok(item),
        [] => Err(err(sec.pos, format!("`{}:` needs a value", sec.header))),
        [_, second, ..] => Err(err(second.pos, format!("`{}:` takes a single statement", sec.header))),
    }
}

pub fn parse_job(text: &str) -> Result<Job> {
    let secs = sections(text)?;
    let mut b = Builder { ring: None };
    let find = |h: &'static str| secs.iter().filter(move |s| s.header == h);
    let mut name = None;
    let mut note = Vec::new();
    for s in find("name") {
        name = Some(single(s)?.text.clone());
    }
    for s in find("note") {
        note.extend(s.items.iter().map(|i| i.text.clone()));
    }
    let vars_sec = find("vars")
        .next()
        .ok_or_else(|| Error::MissingSection("vars".into()))?;
    let vars: Vec<String> = single(vars_sec)?
        .text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.to_string())
        .collect();
    for (k, v) in vars.iter().enumerate() {
        if vars[..k].contains(v) {
            return Err(err(vars_sec.pos, format!("variable `{v}` declared twice")));
        }
    }
    let mut adjoin: Option<(String, String, (usize, usize))> = None;
    for s in find("adjoin") {
        let item = single(s)?;
        let (th, mp) = item
            .text
            .split_once(':')
            .ok_or_else(|| err(item.pos, "expected `adjoin: name : minimal polynomial`"))?;
        let th = th.trim().to_string();
        if vars.contains(&th) {
            return Err(err(item.pos, format!("`{th}` is already a variable")));
        }
        adjoin = Some((th, mp.trim().to_string(), item.pos));
    }
    let mut all_vars = vars.clone();
    if let Some((th, _, _)) = &adjoin {
        all_vars.push(th.clone());
    }
    let (order_kind, order_names) = match find("order").next() {
        None => (OrderKind::Lex, vars.clone()),
        Some(s) => {
            let item = single(s)?;
            let mut words = item.text.split_whitespace();
            let kind = match words.next() {
                Some("lex") => OrderKind::Lex,
                Some("grlex") => OrderKind::GradedLex,
                other => {
                    return Err(err(item.pos, format!("unknown order `{}`", other.unwrap_or(""))))
                }
            };
            let rest: Vec<String> = words
                .collect::<Vec<_>>()
                .join(" ")
                .split('<')
                .map(|w| w.trim().to_string())
                .collect();
            for v in &rest {
                if !all_vars.contains(v) {
                    return Err(err(item.pos, format!("order names undeclared variable `{v}`")));
                }
            }
            (kind, rest)
        }
    };
    let mut prio_names = order_names.clone();
    if let Some((th, _, pos)) = &adjoin {
        if !prio_names.contains(th) {
            if prio_names.is_empty() {
                return Err(err(*pos, "adjoin needs at least one variable"));
            }
            prio_names.insert(1, th.clone());
        }
    }
    let mut sorted = prio_names.clone();
    sorted.sort();
    let mut want = all_vars.clone();
    want.sort();
    if sorted != want {
        let pos = find("order").next().map_or((1, 1), |s| s.pos);
        return Err(err(pos, "order is not a permutation of the declared variables"));
    }
    let prio: Vec<usize> = prio_names
        .iter()
        .map(|n| all_vars.iter().position(|v| v == n).unwrap())
        .collect();
    let mut ring = PolyRing::new(all_vars.clone(), MonomialOrder::new(order_kind, prio)?)?;
    let mut adjoin_poly = None;
    if let Some((th, mp, pos)) = &adjoin {
        let uring = PolyRing::lex(&[th.as_str()]);
        let p = parse_poly_at(&uring, mp, *pos)?;
        let u = p
            .to_univariate(0)
            .ok_or_else(|| err(*pos, "minimal polynomial must be univariate"))?;
        let field = NumberField::new(th, u).map_err(|e| err(*pos, e.to_string()))?;
        ring = ring.with_number_field(field)?;
        adjoin_poly = Some((th.clone(), p));
    }
    b.ring = Some(ring.clone());

    let mut gens = Vec::new();
    for s in find("ideal") {
        for it in &s.items {
            gens.push(b.poly(&it.text, it.pos)?);
        }
    }
    if gens.is_empty() {
        return Err(Error::MissingSection("ideal".into()));
    }
    let ideal = IdealPresentation::new(&ring, gens)?.prime();

    let mut defined_over = None;
    for s in find("defined-over") {
        let item = single(s)?;
        defined_over = Some(match item.text.as_str() {
            "Q" => DefinedOver::Rationals,
            "conjugate" => DefinedOver::Conjugate,
            t => return Err(err(item.pos, format!("`defined-over:` takes Q or conjugate, not `{t}`"))),
        });
    }

    let mut generators = Vec::new();
    for s in find("generators") {
        generators = single(s)?.text.split_whitespace().map(|s| s.to_string()).collect();
    }
    let mut coordinate_words = Vec::new();
    for s in find("coordinate") {
        for it in &s.items {
            let (lhs, rhs) = it
                .text
                .split_once('=')
                .ok_or_else(|| err(it.pos, "expected `poly = word`"))?;
            if generators.is_empty() {
                return Err(err(it.pos, "`coordinate:` needs `generators:`"));
            }
            let w = GroupWord::parse(rhs.trim(), &generators).map_err(|e| shift(e, it.pos))?;
            coordinate_words.push((b.poly(lhs.trim(), it.pos)?, w));
        }
    }
    let word_trace = |w: &GroupWord, pos: (usize, usize)| -> Result<Poly> {
        let names: Vec<&str> = generators.iter().map(|s| s.as_str()).collect();
        let tr = TraceRing::new(&names)?;
        let mut values = HashMap::new();
        for (mask, cw) in tr.coordinate_words().iter().enumerate() {
            let var = tr.ring().vars()[tr.coordinate(mask + 1).support()[0]].clone();
            let hit = coordinate_words.iter().find(|(_, w)| w == cw);
            match hit {
                Some((p, _)) => {
                    values.insert(var, p.clone());
                }
                None => {
                    let t = tr.trace(w);
                    if t.involves(tr.ring().var_index(&var)?) {
                        return Err(err(
                            pos,
                            format!("no `coordinate:` for the word {}", cw.display(&generators)),
                        ));
                    }
                    values.insert(var, Poly::zero(&ring));
                }
            }
        }
        tr.trace(w).substitute(&values, &ring)
    };
    let mut peripheral = Vec::new();
    for s in find("peripheral") {
        for it in &s.items {
            let (key, rhs) = it
                .text
                .split_once('=')
                .ok_or_else(|| err(it.pos, "expected `mu = ...`, `lambda = ...` or `mulambda = ...`"))?;
            let key = key.trim();
            if !["mu", "lambda", "mulambda"].contains(&key) {
                return Err(err(it.pos, format!("unknown peripheral element `{key}`")));
            }
            let rhs = rhs.trim();
            let expr = match rhs.strip_prefix("word(").and_then(|r| r.strip_suffix(')')) {
                Some(w) => {
                    if generators.is_empty() {
                        return Err(err(it.pos, "word traces need `generators:`"));
                    }
                    let w = GroupWord::parse(w, &generators).map_err(|e| shift(e, it.pos))?;
                    let p = word_trace(&w, it.pos)?;
                    TraceExpr::Word(w, p)
                }
                None => TraceExpr::Poly(b.poly(rhs, it.pos)?),
            };
            peripheral.push((key.to_string(), expr));
        }
    }
    let mut coordinates = None;
    for s in find("coordinates") {
        let mut v = Vec::new();
        for it in &s.items {
            v.extend(b.list(&it.text, it.pos)?);
        }
        coordinates = Some(v);
    }
    let mut slopes = None;
    for s in find("slopes") {
        let mut list = Vec::new();
        for it in &s.items {
            if let Some(n) = it.text.strip_prefix("bound") {
                let n: u32 = n
                    .trim()
                    .parse()
                    .map_err(|_| err(it.pos, "expected `bound N`"))?;
                if n == 0 {
                    return Err(err(it.pos, "slope bound must be at least 1"));
                }
                slopes = Some(SlopeSet::Bound(n));
            } else {
                for part in it.text.split(',') {
                    list.push(parse_slope(part, it.pos)?);
                }
            }
        }
        if !list.is_empty() {
            if slopes.is_some() {
                return Err(err(s.pos, "use either `bound N` or a slope list"));
            }
            slopes = Some(SlopeSet::List(list));
        }
    }
    let mut slope_traces = Vec::new();
    for s in find("slope-trace") {
        for it in &s.items {
            let (sl, p) = it
                .text
                .split_once('=')
                .ok_or_else(|| err(it.pos, "expected `p/q = poly`"))?;
            slope_traces.push((parse_slope(sl, it.pos)?, b.poly(p.trim(), it.pos)?));
        }
    }
    let mut claims = Vec::new();
    for s in find_prefix(&secs, "claim") {
        claims.push(parse_claim(&b, s)?);
    }
    let mut expects = Vec::new();
    for s in find_prefix(&secs, "expect") {
        expects.push(parse_expect(&b, s)?);
    }
    Ok(Job {
        name,
        note,
        vars,
        order_kind,
        order_names,
        adjoin: adjoin_poly,
        ring,
        ideal,
        defined_over,
        generators,
        coordinate_words,
        peripheral,
        coordinates,
        slopes,
        slope_traces,
        claims,
        expects,
    })
}

fn find_prefix<'a>(secs: &'a [Section], word: &'a str) -> impl Iterator<Item = &'a Section> {
    secs.iter()
        .filter(move |s| s.header.split_whitespace().next() == Some(word))
}

fn shift(e: Error, pos: (usize, usize)) -> Error {
    match e {
        Error::Parse { col, msg, .. } => err((pos.0, pos.1 + col - 1), msg),
        e => e,
    }
}

fn parse_claim(b: &Builder, s: &Section) -> Result<Claim> {
    let words: Vec<&str> = s.header.split_whitespace().skip(1).collect();
    match words.as_slice() {
        ["basis", sc, rest @ ..] => {
            let item = single(s)?;
            Ok(Claim::Basis {
                scalars: scalars(sc, s.pos)?,
                at: at_slope(rest, s.pos)?,
                elements: b.list(&item.text, item.pos)?,
            })
        }
        ["generators", sc, rest @ ..] => {
            let item = single(s)?;
            Ok(Claim::Generators {
                scalars: scalars(sc, s.pos)?,
                at: at_slope(rest, s.pos)?,
                elements: b.list(&item.text, item.pos)?,
            })
        }
        ["table", rest @ ..] => {
            let mut lines = Vec::new();
            for it in &s.items {
                let (l, r) = it
                    .text
                    .split_once('=')
                    .ok_or_else(|| err(it.pos, "relation needs `=`"))?;
                lines.push((b.poly(l.trim(), it.pos)?, b.poly(r.trim(), it.pos)?));
            }
            Ok(Claim::Table {
                at: at_slope(rest, s.pos)?,
                lines,
            })
        }
        ["nonfree", rest @ ..] => {
            let item = single(s)?;
            let parts: Vec<&str> = item.text.split('|').collect();
            let [summand, syzygy, obstruction] = parts.as_slice() else {
                return Err(err(item.pos, "expected `summand | syzygy | p, base`"));
            };
            let obs = b.list(obstruction, item.pos)?;
            let [prime, base] = obs.as_slice() else {
                return Err(err(item.pos, "obstruction must be `p, base`"));
            };
            Ok(Claim::Nonfree {
                at: at_slope(rest, s.pos)?,
                summand: b.list(summand, item.pos)?,
                syzygy: b.list(syzygy, item.pos)?,
                prime: prime.clone(),
                base: base.clone(),
            })
        }
        _ => Err(err(s.pos, format!("unknown claim `{}`", s.header))),
    }
}

fn over(words: &[&str], b: &Builder, pos: (usize, usize)) -> Result<(Poly, Poly)> {
    let joined = words.join(" ");
    let (f, base) = joined
        .split_once(" over ")
        .ok_or_else(|| err(pos, "expected `f over base`"))?;
    Ok((b.poly(f, pos)?, b.poly(base, pos)?))
}

fn parse_expect(b: &Builder, s: &Section) -> Result<Expect> {
    let words: Vec<&str> = s.header.split_whitespace().skip(1).collect();
    let polys = |s: &Section| -> Result<Vec<Poly>> {
        s.items.iter().map(|it| b.poly(&it.text, it.pos)).collect()
    };
    match words.as_slice() {
        ["reduced-gb"] => Ok(Expect::ReducedGb),
        ["gb"] => Ok(Expect::Gb(polys(s)?)),
        ["contraction"] => Ok(Expect::Contraction(polys(s)?)),
        ["member"] => Ok(Expect::Member(b.poly(&single(s)?.text, single(s)?.pos)?)),
        ["nonmember"] => Ok(Expect::NonMember(b.poly(&single(s)?.text, single(s)?.pos)?)),
        ["leading-monomials"] => {
            let item = single(s)?;
            let lms = b.list(&item.text, item.pos)?;
            let mut out = Vec::new();
            for m in lms {
                if m.len() != 1 || !m.leading_coeff().unwrap().is_integer() {
                    return Err(err(item.pos, format!("`{m}` is not a monomial")));
                }
                out.push(m.to_string());
            }
            Ok(Expect::LeadingMonomials(out))
        }
        ["image", rest @ ..] => {
            let (f, base) = over(rest, b, s.pos)?;
            let (bn, yn) = crate::integrality::default_names(&f, &base);
            let ring = PolyRing::lex(&[bn.as_str(), yn.as_str()]);
            let item = single(s)?;
            let curve = parse_poly_at(&ring, &item.text, item.pos)?;
            Ok(Expect::Image { f, base, curve })
        }
        ["dependence", sc, rest @ ..] => {
            let (f, base) = over(rest, b, s.pos)?;
            let item = single(s)?;
            let relation = if item.text == "NOT_INTEGRAL" {
                None
            } else {
                let (bn, yn) = crate::integrality::default_names(&f, &base);
                let ring = PolyRing::lex(&[bn.as_str(), yn.as_str()]);
                Some(parse_poly_at(&ring, &item.text, item.pos)?)
            };
            Ok(Expect::Dependence {
                scalars: scalars(sc, s.pos)?,
                f,
                base,
                relation,
            })
        }
        ["fiber-dim", sl] | ["rank", sl] => {
            let at = parse_slope(sl, s.pos)?;
            let item = single(s)?;
            let mut pairs = Vec::new();
            for part in item.text.split(',') {
                let mut w = part.split_whitespace();
                let (Some(sc), Some(v), None) = (w.next(), w.next(), w.next()) else {
                    return Err(err(item.pos, format!("expected `C n`, found `{}`", part.trim())));
                };
                pairs.push((scalars(sc, item.pos)?, v.to_string()));
            }
            if words[0] == "rank" {
                for (_, v) in &pairs {
                    let ok = v == "INFINITE" || v.parse::<usize>().is_ok();
                    if !ok {
                        return Err(err(item.pos, format!("rank value `{v}` must be a number or INFINITE")));
                    }
                }
                Ok(Expect::Rank { at, values: pairs })
            } else {
                let dims = pairs
                    .into_iter()
                    .map(|(sc, v)| {
                        v.parse::<usize>()
                            .map(|n| (sc, n))
                            .map_err(|_| err(item.pos, format!("dimension `{v}` must be a number")))
                    })
                    .collect::<Result<_>>()?;
                Ok(Expect::FiberDim { at, dims })
            }
        }
        ["closed"] => {
            let v = single(s)?;
            check_word(v, &["DETECTED", "NOT_DETECTED"])?;
            Ok(Expect::Closed(v.text.clone()))
        }
        ["slope", sl] => {
            let v = single(s)?;
            check_word(v, &["NOT_DETECTED", "STRONGLY_DETECTED", "CONSTANT_TRACE_DETECTED"])?;
            Ok(Expect::Slope {
                at: parse_slope(sl, s.pos)?,
                verdict: v.text.clone(),
            })
        }
        ["norm-curve"] => {
            let v = single(s)?;
            check_word(v, &["true", "false"])?;
            Ok(Expect::NormCurve(v.text == "true"))
        }
        ["min-rank"] => {
            let v = single(s)?;
            Ok(Expect::MinRank(
                v.text.parse().map_err(|_| err(v.pos, "expected a number"))?,
            ))
        }
        ["nonfree", sl] => {
            let v = single(s)?;
            check_word(v, &["certified"])?;
            Ok(Expect::Nonfree(parse_slope(sl, s.pos)?))
        }
        _ => Err(err(s.pos, format!("unknown expectation `{}`", s.header))),
    }
}

fn check_word(item: &Item, allowed: &[&str]) -> Result<()> {
    if allowed.contains(&item.text.as_str()) {
        Ok(())
    } else {
        Err(err(item.pos, format!("expected one of {}", allowed.join(", "))))
    }
}

fn slope_text(s: &SlopeSpec) -> String {
    format!("{}/{}", s.p(), s.q())
}

fn at_text(at: &Option<SlopeSpec>) -> String {
    at.map_or(String::new(), |s| format!(" at {}", slope_text(&s)))
}

fn join(ps: &[Poly]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

impl Job {
    pub fn peripheral_traces(&self) -> PeripheralTraces {
        let get = |k: &str| {
            self.peripheral
                .iter()
                .find(|(n, _)| n == k)
                .map(|(_, e)| e.poly().clone())
        };
        PeripheralTraces {
            mu: get("mu"),
            lambda: get("lambda"),
            mulambda: get("mulambda"),
        }
    }

    /// Canonical text; parsing it gives back the same job.
    pub fn to_text(&self) -> String {
        let mut o = String::new();
        if let Some(n) = &self.name {
            let _ = writeln!(o, "name: {n};");
        }
        for n in &self.note {
            let _ = writeln!(o, "note: {n};");
        }
        let _ = writeln!(o, "vars: {};", self.vars.join(" "));
        let kind = match self.order_kind {
            OrderKind::Lex => "lex",
            OrderKind::GradedLex => "grlex",
        };
        let _ = writeln!(o, "order: {kind} {};", self.order_names.join(" < "));
        if let Some((th, p)) = &self.adjoin {
            let _ = writeln!(o, "adjoin: {th} : {p};");
        }
        if let Some(d) = self.defined_over {
            let _ = writeln!(
                o,
                "defined-over: {};",
                match d {
                    DefinedOver::Rationals => "Q",
                    DefinedOver::Conjugate => "conjugate",
                }
            );
        }
        o.push_str("ideal:\n");
        for g in self.ideal.generators() {
            let _ = writeln!(o, "  {g};");
        }
        if !self.generators.is_empty() {
            let _ = writeln!(o, "generators: {};", self.generators.join(" "));
        }
        if !self.coordinate_words.is_empty() {
            o.push_str("coordinate:\n");
            for (p, w) in &self.coordinate_words {
                let _ = writeln!(o, "  {p} = {};", w.display(&self.generators));
            }
        }
        if !self.peripheral.is_empty() {
            o.push_str("peripheral:\n");
            for (k, e) in &self.peripheral {
                match e {
                    TraceExpr::Poly(p) => {
                        let _ = writeln!(o, "  {k} = {p};");
                    }
                    TraceExpr::Word(w, _) => {
                        let _ = writeln!(o, "  {k} = word({});", w.display(&self.generators));
                    }
                }
            }
        }
        if let Some(c) = &self.coordinates {
            let _ = writeln!(o, "coordinates: {};", join(c));
        }
        match &self.slopes {
            Some(SlopeSet::Bound(n)) => {
                let _ = writeln!(o, "slopes: bound {n};");
            }
            Some(SlopeSet::List(l)) => {
                let _ = writeln!(
                    o,
                    "slopes: {};",
                    l.iter().map(slope_text).collect::<Vec<_>>().join(", ")
                );
            }
            None => {}
        }
        if !self.slope_traces.is_empty() {
            o.push_str("slope-trace:\n");
            for (s, p) in &self.slope_traces {
                let _ = writeln!(o, "  {} = {p};", slope_text(s));
            }
        }
        for c in &self.claims {
            match c {
                Claim::Basis { scalars, at, elements } => {
                    let _ = writeln!(o, "claim basis {scalars}{}: {};", at_text(at), join(elements));
                }
                Claim::Generators { scalars, at, elements } => {
                    let _ = writeln!(o, "claim generators {scalars}{}: {};", at_text(at), join(elements));
                }
                Claim::Table { at, lines } => {
                    let _ = writeln!(o, "claim table{}:", at_text(at));
                    for (l, r) in lines {
                        let _ = writeln!(o, "  {l} = {r};");
                    }
                }
                Claim::Nonfree { at, summand, syzygy, prime, base } => {
                    let _ = writeln!(
                        o,
                        "claim nonfree{}: {} | {} | {prime}, {base};",
                        at_text(at),
                        join(summand),
                        join(syzygy)
                    );
                }
            }
        }
        for e in &self.expects {
            o.push_str(&expect_text(e));
        }
        o
    }
}

fn expect_text(e: &Expect) -> String {
    let pairs = |v: &[(Scalars, String)]| {
        v.iter().map(|(s, n)| format!("{s} {n}")).collect::<Vec<_>>().join(", ")
    };
    let block = |head: &str, ps: &[Poly]| {
        let mut o = format!("expect {head}:\n");
        for p in ps {
            o.push_str(&format!("  {p};\n"));
        }
        o
    };
    match e {
        Expect::ReducedGb => "expect reduced-gb;\n".into(),
        Expect::Gb(ps) => block("gb", ps),
        Expect::Contraction(ps) => block("contraction", ps),
        Expect::Member(p) => format!("expect member: {p};\n"),
        Expect::NonMember(p) => format!("expect nonmember: {p};\n"),
        Expect::LeadingMonomials(ms) => format!("expect leading-monomials: {};\n", ms.join(", ")),
        Expect::Image { f, base, curve } => format!("expect image {f} over {base}: {curve};\n"),
        Expect::Dependence { scalars, f, base, relation } => format!(
            "expect dependence {scalars} {f} over {base}: {};\n",
            relation.as_ref().map_or("NOT_INTEGRAL".to_string(), |r| r.to_string())
        ),
        Expect::FiberDim { at, dims } => {
            let v: Vec<(Scalars, String)> = dims.iter().map(|(s, n)| (*s, n.to_string())).collect();
            format!("expect fiber-dim {}: {};\n", slope_text(at), pairs(&v))
        }
        Expect::Rank { at, values } => format!("expect rank {}: {};\n", slope_text(at), pairs(values)),
        Expect::Closed(v) => format!("expect closed: {v};\n"),
        Expect::Slope { at, verdict } => format!("expect slope {}: {verdict};\n", slope_text(at)),
        Expect::NormCurve(b) => format!("expect norm-curve: {b};\n"),
        Expect::MinRank(n) => format!("expect min-rank: {n};\n"),
        Expect::Nonfree(at) => format!("expect nonfree {}: certified;\n", slope_text(at)),
    }
}
