//! Fraction-free Buchberger kernel on order-keyed exponent vectors.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, MonomialOrder, OrderKind, Poly, PolyRing, Rational};

/// Exponents permuted so that plain lexicographic comparison of the vector
/// realizes the monomial order. Graded orders carry the total degree in slot 0.
pub(crate) type Exp = Vec<u32>;

#[derive(Clone, Debug)]
pub(crate) struct Keyer {
    graded: bool,
    /// `slots[k]` is the ring variable stored at key position k (after the degree slot).
    slots: Vec<usize>,
    nvars: usize,
}

impl Keyer {
    pub fn new(order: &MonomialOrder) -> Self {
        let slots: Vec<usize> = order.priority().iter().rev().copied().collect();
        Keyer {
            graded: order.kind() == OrderKind::GradedLex,
            nvars: slots.len(),
            slots,
        }
    }

    fn off(&self) -> usize {
        usize::from(self.graded)
    }

    pub fn key(&self, m: &Monomial) -> Exp {
        let mut e = Vec::with_capacity(self.nvars + self.off());
        if self.graded {
            e.push(m.degree());
        }
        e.extend(self.slots.iter().map(|&v| m.get(v)));
        e
    }

    pub fn monomial(&self, e: &Exp) -> Monomial {
        let mut out = vec![0; self.nvars];
        for (k, &v) in self.slots.iter().enumerate() {
            out[v] = e[k + self.off()];
        }
        Monomial::from_exponents(out)
    }

    pub fn divides(&self, a: &Exp, b: &Exp) -> bool {
        a.iter().zip(b).skip(self.off()).all(|(x, y)| x <= y)
    }

    pub fn lcm(&self, a: &Exp, b: &Exp) -> Exp {
        let mut e: Exp = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
        if self.graded {
            e[0] = e[1..].iter().sum();
        }
        e
    }

    pub fn coprime(&self, a: &Exp, b: &Exp) -> bool {
        a.iter()
            .zip(b)
            .skip(self.off())
            .all(|(x, y)| *x == 0 || *y == 0)
    }

    /// `b / a`, assuming divisibility.
    pub fn quo(&self, b: &Exp, a: &Exp) -> Exp {
        b.iter().zip(a).map(|(x, y)| x - y).collect()
    }

}

fn mul_exp(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Integer polynomial with terms in strictly descending key order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly {
    pub terms: Vec<(Exp, BigInt)>,
}

impl IPoly {
    pub fn lm(&self) -> &Exp {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Primitive integral associate of a rational polynomial, with positive leading coefficient.
    pub fn from_poly(p: &Poly, keyer: &Keyer) -> (IPoly, Rational) {
        if p.is_zero() {
            return (IPoly { terms: Vec::new() }, Rational::one());
        }
        let (content, prim) = p.content_and_primitive().unwrap();
        let mut terms: Vec<(Exp, BigInt)> = prim
            .terms()
            .iter()
            .map(|(m, c)| (keyer.key(m), c.to_integer()))
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        (IPoly { terms }, content)
    }

    pub fn to_poly(&self, ring: &PolyRing, keyer: &Keyer) -> Poly {
        Poly::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(e, c)| (keyer.monomial(e), Rational::from_integer(c.clone())))
                .collect(),
        )
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 / &g;
            }
        }
    }
}

/// `a·f[from..] − b·m·g[1..]`, all in descending order.
fn combine(f: &[(Exp, BigInt)], a: &BigInt, b: &BigInt, m: &Exp, g: &[(Exp, BigInt)]) -> Vec<(Exp, BigInt)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let shifted: Vec<(Exp, BigInt)> = g.iter().map(|(e, c)| (mul_exp(e, m), c * b)).collect();
    let (mut i, mut j) = (0, 0);
    while i < f.len() || j < shifted.len() {
        let ord = if i == f.len() {
            Ordering::Less
        } else if j == shifted.len() {
            Ordering::Greater
        } else {
            f[i].0.cmp(&shifted[j].0)
        };
        match ord {
            Ordering::Greater => {
                out.push((f[i].0.clone(), &f[i].1 * a));
                i += 1;
            }
            Ordering::Less => {
                out.push((shifted[j].0.clone(), -&shifted[j].1));
                j += 1;
            }
            Ordering::Equal => {
                let c = &f[i].1 * a - &shifted[j].1;
                if !c.is_zero() {
                    out.push((f[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn bits(terms: &[(Exp, BigInt)]) -> u64 {
    terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
}

/// Reduces `f` modulo `basis`. Returns `(r, s)` with `s·f ≡ r` modulo the ideal.
/// With `full = false` only the leading term is reduced.
pub(crate) fn reduce(
    f: &IPoly,
    basis: &[&IPoly],
    keyer: &Keyer,
    full: bool,
) -> (IPoly, Rational) {
    let mut cur = f.terms.clone();
    let mut rem: Vec<(Exp, BigInt)> = Vec::new();
    let mut scale = Rational::one();
    let mut steps = 0u32;
    let mut start = 0usize;
    while start < cur.len() {
        let (e, a) = (&cur[start].0, &cur[start].1);
        let div = basis.iter().find(|g| keyer.divides(g.lm(), e));
        match div {
            None => {
                if !full {
                    rem.extend(cur.drain(start..));
                    break;
                }
                rem.push(cur[start].clone());
                start += 1;
            }
            Some(g) => {
                let gl = g.lc();
                let d = a.gcd(gl);
                let (mut c1, mut c2) = (gl / &d, a / &d);
                if c1.is_negative() {
                    c1 = -c1;
                    c2 = -c2;
                }
                let m = keyer.quo(e, g.lm());
                cur = combine(&cur[start + 1..], &c1, &c2, &m, &g.terms[1..]);
                start = 0;
                if !c1.is_one() {
                    for t in &mut rem {
                        t.1 *= &c1;
                    }
                    scale *= Rational::from_integer(c1);
                }
                steps += 1;
                if steps % 16 == 0 || bits(&cur) > 512 {
                    let mut g = BigInt::zero();
                    for (_, c) in rem.iter().chain(cur.iter()) {
                        g = g.gcd(c);
                        if g.is_one() {
                            break;
                        }
                    }
                    if !g.is_zero() && !g.is_one() {
                        for t in rem.iter_mut().chain(cur.iter_mut()) {
                            t.1 = &t.1 / &g;
                        }
                        scale /= Rational::from_integer(g);
                    }
                }
            }
        }
    }
    (IPoly { terms: rem }, scale)
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
}

fn spoly(f: &IPoly, g: &IPoly, lcm: &Exp, keyer: &Keyer) -> IPoly {
    let d = f.lc().gcd(g.lc());
    let a = g.lc() / &d;
    let b = f.lc() / &d;
    let mf = keyer.quo(lcm, f.lm());
    let mg = keyer.quo(lcm, g.lm());
    let fs: Vec<(Exp, BigInt)> = f.terms[1..].iter().map(|(e, c)| (mul_exp(e, &mf), c.clone())).collect();
    IPoly {
        terms: combine(&fs, &a, &b, &mg, &g.terms[1..]),
    }
}

/// Gebauer–Möller update when `h` (index `k`) joins the basis.
fn update(polys: &[IPoly], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, k: usize, keyer: &Keyer) {
    let h = &polys[k];
    let mut c: Vec<Pair> = active
        .iter()
        .map(|&i| Pair {
            i,
            j: k,
            lcm: keyer.lcm(polys[i].lm(), h.lm()),
        })
        .collect();
    let mut d: Vec<Pair> = Vec::new();
    while let Some(p) = c.pop() {
        let coprime = keyer.coprime(polys[p.i].lm(), h.lm());
        let dominated = c
            .iter()
            .chain(d.iter())
            .any(|q| keyer.divides(&q.lcm, &p.lcm));
        if coprime || !dominated {
            d.push(p);
        }
    }
    let e: Vec<Pair> = d
        .into_iter()
        .filter(|p| !keyer.coprime(polys[p.i].lm(), h.lm()))
        .collect();
    pairs.retain(|p| {
        !(keyer.divides(h.lm(), &p.lcm)
            && keyer.lcm(polys[p.i].lm(), h.lm()) != p.lcm
            && keyer.lcm(polys[p.j].lm(), h.lm()) != p.lcm)
    });
    pairs.extend(e);
    active.retain(|&i| !keyer.divides(h.lm(), polys[i].lm()));
    active.push(k);
}

/// Reduced Groebner basis as primitive integer polynomials, sorted by ascending leading monomial.
pub(crate) fn groebner(input: Vec<IPoly>, keyer: &Keyer) -> Vec<IPoly> {
    let mut polys: Vec<IPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut input: Vec<IPoly> = input.into_iter().filter(|p| !p.is_zero()).collect();
    input.sort_by(|a, b| a.lm().cmp(b.lm()).then_with(|| a.terms.len().cmp(&b.terms.len())));
    for f in input {
        let basis: Vec<&IPoly> = active.iter().map(|&i| &polys[i]).collect();
        let (mut r, _) = reduce(&f, &basis, keyer, false);
        if r.is_zero() {
            continue;
        }
        r.make_primitive();
        polys.push(r);
        let k = polys.len() - 1;
        update(&polys, &mut active, &mut pairs, k, keyer);
    }
    while !pairs.is_empty() {
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.lcm.cmp(&b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))))
            .unwrap();
        let p = pairs.swap_remove(best);
        let s = spoly(&polys[p.i], &polys[p.j], &p.lcm, keyer);
        if s.is_zero() {
            continue;
        }
        let basis: Vec<&IPoly> = active.iter().map(|&i| &polys[i]).collect();
        let (mut r, _) = reduce(&s, &basis, keyer, true);
        if r.is_zero() {
            continue;
        }
        r.make_primitive();
        polys.push(r);
        let k = polys.len() - 1;
        update(&polys, &mut active, &mut pairs, k, keyer);
    }
    interreduce(active.iter().map(|&i| polys[i].clone()).collect(), keyer)
}

/// Minimalizes and fully tail-reduces a Groebner basis.
pub(crate) fn interreduce(mut g: Vec<IPoly>, keyer: &Keyer) -> Vec<IPoly> {
    g.sort_by(|a, b| a.lm().cmp(b.lm()));
    let mut minimal: Vec<IPoly> = Vec::new();
    for f in g {
        if !minimal.iter().any(|h| keyer.divides(h.lm(), f.lm())) {
            minimal.retain(|h| !keyer.divides(f.lm(), h.lm()));
            minimal.push(f);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&IPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p)
            .collect();
        let head = IPoly {
            terms: vec![minimal[i].terms[0].clone()],
        };
        let tail = IPoly {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let (r, s) = reduce(&tail, &others, keyer, true);
        // head·s' + r' with a common scale: s·tail ≡ r, so s·f ≡ s·head + r.
        let s_num = s.numer().clone();
        let s_den = s.denom().clone();
        let mut terms = vec![(head.terms[0].0.clone(), &head.terms[0].1 * &s_num)];
        terms.extend(r.terms.into_iter().map(|(e, c)| (e, c * &s_den)));
        let mut p = IPoly { terms };
        p.make_primitive();
        out.push(p);
    }
    out.sort_by(|a, b| a.lm().cmp(b.lm()));
    out
}
