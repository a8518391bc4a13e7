//! Relation tables and ℤ[B]-lattice membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, PolyRing, RatFunc, Rational, UniPoly};

use super::{Scalars, Setting};

/// Identities `lhs = rhs` holding in the coordinate ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTable {
    lines: Vec<(Poly, Poly)>,
}

impl RelationTable {
    pub fn new(lines: Vec<(Poly, Poly)>) -> Self {
        RelationTable { lines }
    }

    /// Each entry has the form `lhs = rhs`.
    pub fn parse(ring: &PolyRing, lines: &[&str]) -> Result<Self> {
        let mut out = Vec::new();
        for line in lines {
            let (l, r) = line
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("relation `{line}` has no `=`")))?;
            out.push((Poly::parse(ring, l.trim())?, Poly::parse(ring, r.trim())?));
        }
        Ok(RelationTable { lines: out })
    }

    pub fn lines(&self) -> &[(Poly, Poly)] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Checks every line as an ideal member and extracts the rewriting rules.
    pub(crate) fn verify(&self, setting: &Setting) -> Result<CheckedTable> {
        let mut rules = Vec::new();
        for (k, (l, r)) in self.lines.iter().enumerate() {
            let l = setting.lift(l)?;
            let r = setting.lift(r)?;
            let rel = l.clone() - r.clone();
            if !setting.check.contains(&rel)? {
                return Err(Error::verification(
                    "relation table",
                    format!("line {}: {l} = {r} is not in the ideal", k + 1),
                ));
            }
            if let [(m, c)] = l.terms() {
                if m.get(setting.base_idx) == 0 && c.abs().is_one() {
                    rules.push((m.clone(), rel.scale(&c.recip())));
                }
            }
        }
        Ok(CheckedTable {
            rules,
            count: self.lines.len(),
        })
    }
}

pub(crate) struct CheckedTable {
    rules: Vec<(Monomial, Poly)>,
    count: usize,
}

impl CheckedTable {
    pub fn len(&self) -> usize {
        self.count
    }

    /// Rewrites `product` into a combination of the monomial generators.
    pub fn rewrite(
        &self,
        setting: &Setting,
        product: &Poly,
        gens: &[Poly],
        scalars: Scalars,
    ) -> Option<(Vec<UniPoly>, usize)> {
        let b = setting.base_idx;
        let strip = |m: &Monomial| {
            let mut e = m.exponents().to_vec();
            e[b] = 0;
            Monomial::from_exponents(e)
        };
        let mut targets = Vec::new();
        for g in gens {
            match g.terms() {
                [(m, c)] if c.is_one() && m.get(b) == 0 => targets.push(m.clone()),
                _ => return None,
            }
        }
        let mut cur = setting.lift(product).ok()?;
        let mut steps = 0usize;
        loop {
            let pending = cur
                .terms()
                .iter()
                .find(|(m, _)| !targets.contains(&strip(m)))
                .cloned();
            let Some((m, c)) = pending else { break };
            let nb = strip(&m);
            let rule = self
                .rules
                .iter()
                .filter(|(lhs, _)| lhs.divides(&nb))
                .rev()
                .max_by_key(|(lhs, _)| lhs.degree())?;
            let q = rule.0.quotient_of(&m)?;
            cur = cur - rule.1.mul_monomial(&q, &c);
            steps += 1;
            if steps > 20_000 {
                return None;
            }
        }
        let mut coeffs = vec![UniPoly::zero(); gens.len()];
        for (m, c) in cur.terms() {
            let k = targets.iter().position(|t| *t == strip(m))?;
            coeffs[k] = coeffs[k].add(&UniPoly::monomial(c.clone(), m.get(b) as usize));
        }
        if scalars == Scalars::Integer && !coeffs.iter().all(|c| c.is_integral()) {
            return None;
        }
        Some((coeffs, steps))
    }
}

/// `r ∈ ℤ[B]` with `a − r·e ∈ ℤ[B]^d`, when the common denominator is prime.
pub(crate) fn lattice_multiplier(a: &[RatFunc], e: &[RatFunc]) -> Option<UniPoly> {
    if a.iter().chain(e).any(|x| !x.is_polynomial()) {
        return None;
    }
    let mut den = BigInt::one();
    for x in a.iter().chain(e) {
        den = den.lcm(&x.num().denominator_lcm());
    }
    if den.is_one() {
        return Some(UniPoly::zero());
    }
    let p = den.to_i64().filter(|&p| is_small_prime(p))?;
    let scale = Rational::from_integer(den);
    let lift = |x: &RatFunc| Fp::from_uni(&x.num().scale(&scale), p);
    let aa: Vec<Fp> = a.iter().map(lift).collect();
    let ee: Vec<Fp> = e.iter().map(lift).collect();
    let j = ee.iter().position(|x| !x.is_zero());
    let r = match j {
        None => Fp::zero(p),
        Some(j) => {
            let (q, rem) = aa[j].div_rem(&ee[j]);
            if !rem.is_zero() {
                return None;
            }
            q
        }
    };
    if aa.iter().zip(&ee).any(|(x, y)| *x != r.mul(y)) {
        return None;
    }
    Some(UniPoly::new(r.c.iter().map(|&v| Rational::from_integer(v.into())).collect()))
}

fn is_small_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Polynomial over 𝔽_p, low to high.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Fp {
    c: Vec<i64>,
    p: i64,
}

impl Fp {
    fn zero(p: i64) -> Self {
        Fp { c: Vec::new(), p }
    }

    fn trim(mut self) -> Self {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        self
    }

    fn from_uni(u: &UniPoly, p: i64) -> Self {
        let pb = BigInt::from(p);
        let c = u
            .coeffs()
            .iter()
            .map(|x| {
                debug_assert!(x.is_integer());
                x.numer().mod_floor(&pb).to_i64().unwrap()
            })
            .collect();
        Fp { c, p }.trim()
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn mul(&self, o: &Fp) -> Fp {
        if self.is_zero() || o.is_zero() {
            return Fp::zero(self.p);
        }
        let mut c = vec![0i64; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        Fp { c, p: self.p }.trim()
    }

    fn inv(a: i64, p: i64) -> i64 {
        let mut r = 1i64;
        let mut b = a.rem_euclid(p);
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    fn div_rem(&self, d: &Fp) -> (Fp, Fp) {
        let p = self.p;
        let mut rem = self.c.clone();
        let dl = d.c.len();
        if rem.len() < dl {
            return (Fp::zero(p), self.clone());
        }
        let inv = Fp::inv(*d.c.last().unwrap(), p);
        let mut q = vec![0i64; rem.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let coef = rem[k + dl - 1] * inv % p;
            q[k] = coef;
            for (i, dc) in d.c.iter().enumerate() {
                rem[k + i] = (rem[k + i] - coef * dc).rem_euclid(p);
            }
        }
        (Fp { c: q, p }.trim(), Fp { c: rem, p }.trim())
    }
}
