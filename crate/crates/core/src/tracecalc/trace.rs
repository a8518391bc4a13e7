use std::collections::HashMap;

use super::word::{GroupWord, Letter};
use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, Poly, PolyRing};

/// Polynomial ring on the trace coordinates I_V, one per nonempty set V of
/// generators (multiplied in increasing index order).
#[derive(Clone, Debug)]
pub struct TraceRing {
    gens: Vec<String>,
    ring: PolyRing,
    /// Variable index of the coordinate for each nonzero subset mask.
    coord: Vec<usize>,
}

impl TraceRing {
    /// Coordinates named `I_` followed by the generator names of V.
    pub fn new(gens: &[&str]) -> Result<Self> {
        Self::with_names(gens, &[])
    }

    /// `names` assigns variable names to coordinate words (e.g. `("z", "g m")`);
    /// unnamed coordinates get the default `I_...` name.
    pub fn with_names(gens: &[&str], names: &[(&str, &str)]) -> Result<Self> {
        let n = gens.len();
        if n == 0 || n > 8 {
            return Err(Error::Unsupported(format!("{n} generators")));
        }
        let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let mut assigned: Vec<Option<String>> = vec![None; 1 << n];
        let mut vars: Vec<String> = Vec::new();
        for (name, word) in names {
            let w = GroupWord::parse(word, &gens)?;
            let mask = coordinate_mask(w.letters()).ok_or_else(|| {
                Error::Invalid(format!("`{word}` is not a trace coordinate word"))
            })?;
            if assigned[mask].is_some() {
                return Err(Error::Invalid(format!("coordinate `{word}` named twice")));
            }
            assigned[mask] = Some(name.to_string());
            vars.push(name.to_string());
        }
        for (mask, slot) in assigned.iter_mut().enumerate().skip(1) {
            if slot.is_none() {
                let name: String = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| gens[i].as_str())
                    .collect();
                let v = format!("I_{name}");
                vars.push(v.clone());
                *slot = Some(v);
            }
        }
        let ring = PolyRing::new(vars.clone(), MonomialOrder::lex_natural(vars.len()))?;
        let mut coord = vec![usize::MAX; 1 << n];
        for (mask, slot) in assigned.iter().enumerate().skip(1) {
            coord[mask] = ring.var_index(slot.as_ref().unwrap()).unwrap();
        }
        Ok(TraceRing { gens, ring, coord })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    /// The coordinate I_V for the subset mask V.
    pub fn coordinate(&self, mask: usize) -> Poly {
        Poly::var(&self.ring, self.coord[mask])
    }

    /// Coordinate words in mask order: each V as a word.
    pub fn coordinate_words(&self) -> Vec<GroupWord> {
        let n = self.gens.len();
        (1..1usize << n)
            .map(|mask| {
                GroupWord::from_letters(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|gen| Letter { gen, inv: false }),
                )
            })
            .collect()
    }

    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        GroupWord::parse(text, &self.gens)
    }

    /// Trace of `w` as an integer polynomial in the coordinates.
    pub fn trace(&self, w: &GroupWord) -> Poly {
        Tracer {
            tr: self,
            memo: HashMap::new(),
        }
        .trace(w.letters())
    }

    /// Traces of several words sharing one memo table.
    pub fn traces(&self, words: &[GroupWord]) -> Vec<Poly> {
        let mut t = Tracer {
            tr: self,
            memo: HashMap::new(),
        };
        words.iter().map(|w| t.trace(w.letters())).collect()
    }
}

/// Mask of a word that is a cyclic rotation of a strictly increasing product
/// of distinct positive generators.
fn coordinate_mask(w: &[Letter]) -> Option<usize> {
    if w.is_empty() || w.iter().any(|l| l.inv) {
        return None;
    }
    let descents = (0..w.len())
        .filter(|&i| w[i].gen >= w[(i + 1) % w.len()].gen)
        .count();
    if descents != 1 {
        return None;
    }
    Some(w.iter().fold(0, |m, l| m | (1 << l.gen)))
}

fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut w = GroupWord::from_letters(w.iter().copied()).letters().to_vec();
    while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
        w.pop();
        w.remove(0);
    }
    w
}

/// Least rotation of `w` or of its inverse.
fn canonical(w: &[Letter]) -> Vec<Letter> {
    let inv: Vec<Letter> = w.iter().rev().map(|l| l.inverse()).collect();
    let mut best: Option<Vec<Letter>> = None;
    for src in [w, inv.as_slice()] {
        for k in 0..src.len() {
            let r: Vec<Letter> = src[k..].iter().chain(src[..k].iter()).copied().collect();
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

fn rotate(w: &[Letter], k: usize) -> Vec<Letter> {
    w[k..].iter().chain(w[..k].iter()).copied().collect()
}

fn cat(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    a.iter().chain(b.iter()).copied().collect()
}

fn invert(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

struct Tracer<'a> {
    tr: &'a TraceRing,
    memo: HashMap<Vec<Letter>, Poly>,
}

impl Tracer<'_> {
    fn trace(&mut self, w: &[Letter]) -> Poly {
        let w = cyclic_reduce(w);
        if w.is_empty() {
            return Poly::from_int(&self.tr.ring, 2);
        }
        let key = canonical(&w);
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let p = self.compute(&key);
        self.memo.insert(key, p.clone());
        p
    }

    fn var(&self, gen: usize) -> Poly {
        self.tr.coordinate(1 << gen)
    }

    fn compute(&mut self, w: &[Letter]) -> Poly {
        let n = w.len();
        if w.iter().all(|l| l.gen == w[0].gen) {
            return chebyshev(&self.var(w[0].gen), n);
        }
        // Start at a syllable boundary.
        let start = (0..n).find(|&i| w[i].gen != w[(i + n - 1) % n].gen).unwrap();
        let w = rotate(w, start);

        // tr(g⁻¹X) = tr g · tr X − tr(gX)
        if let Some(i) = (0..n).find(|&i| w[i].inv) {
            let r = rotate(&w, i);
            let g = r[0].inverse();
            let x = &r[1..];
            let gx = cat(&[g], x);
            return self.var(g.gen) * self.trace(x) - self.trace(&gx);
        }
        // tr(g²Y) = tr g · tr(gY) − tr Y
        if let Some(i) = (0..n).find(|&i| w[i] == w[(i + 1) % n]) {
            let r = rotate(&w, i);
            let g = r[0];
            let y = &r[2..];
            let gy = cat(&[g], y);
            return self.var(g.gen) * self.trace(&gy) - self.trace(y);
        }
        // tr(gXgY) = tr(gX) tr(gY) − tr(XY⁻¹)
        for i in 0..n {
            if let Some(j) = (i + 1..n).find(|&j| w[j].gen == w[i].gen) {
                let r = rotate(&w, i);
                let j = j - i;
                let x = &r[1..j];
                let y = &r[j + 1..];
                let gx = cat(&r[..1], x);
                let gy = cat(&r[j..j + 1], y);
                let xyi = cat(x, &invert(y));
                return self.trace(&gx) * self.trace(&gy) - self.trace(&xyi);
            }
        }
        if let Some(mask) = coordinate_mask(&w) {
            return self.tr.coordinate(mask);
        }
        // Distinct letters out of cyclic order: swap an adjacent descent in the
        // rotation with fewest inversions.
        let best = (0..n)
            .min_by_key(|&k| inversions(&rotate(&w, k)))
            .unwrap();
        let r = rotate(&w, best);
        let i = (0..n - 1).find(|&i| r[i].gen > r[i + 1].gen).unwrap();
        let abc = rotate(&r, i);
        let (a, b) = (abc[0], abc[1]);
        let c = &abc[2..];
        let bac = cat(&[b, a], c);
        let bc = cat(&[b], c);
        let ac = cat(&[a], c);
        let trc = self.trace(c);
        let tab = self.trace(&[a, b]);
        let (ta, tb) = (self.var(a.gen), self.var(b.gen));
        -self.trace(&bac) + &ta * &self.trace(&bc) + &tb * &self.trace(&ac) + &trc * &tab
            - ta * tb * trc
    }
}

fn inversions(w: &[Letter]) -> usize {
    let mut k = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i].gen > w[j].gen {
                k += 1;
            }
        }
    }
    k
}

/// tr(gᵏ) as a polynomial in tr g.
fn chebyshev(x: &Poly, k: usize) -> Poly {
    let ring = x.ring();
    let (mut a, mut b) = (Poly::from_int(ring, 2), x.clone());
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let c = x * &b - &a;
        a = b;
        b = c;
    }
    b
}
