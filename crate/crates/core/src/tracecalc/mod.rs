//! SL2 trace reduction of group words and character-variety ideals.

mod trace;
mod word;

use std::fmt;

use num_integer::Integer;

pub use trace::TraceRing;
pub use word::{GroupWord, Letter};

use crate::error::{Error, Result};
use crate::groebner::IdealPresentation;
use crate::poly::Poly;

/// Finitely presented group with a chosen peripheral pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    gens: Vec<String>,
    relators: Vec<GroupWord>,
    meridian: GroupWord,
    longitude: GroupWord,
}

impl Presentation {
    pub fn new(
        gens: &[&str],
        relators: Vec<GroupWord>,
        meridian: GroupWord,
        longitude: GroupWord,
    ) -> Result<Self> {
        if meridian.is_empty() || longitude.is_empty() {
            return Err(Error::Invalid("peripheral words must be nontrivial".into()));
        }
        Ok(Presentation {
            gens: gens.iter().map(|s| s.to_string()).collect(),
            relators,
            meridian,
            longitude,
        })
    }

    /// Builds from word text over the named generators.
    pub fn parse(gens: &[&str], relators: &[&str], meridian: &str, longitude: &str) -> Result<Self> {
        let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| GroupWord::parse(r, &names))
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            gens,
            rels,
            GroupWord::parse(meridian, &names)?,
            GroupWord::parse(longitude, &names)?,
        )
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    pub fn meridian(&self) -> &GroupWord {
        &self.meridian
    }

    pub fn longitude(&self) -> &GroupWord {
        &self.longitude
    }
}

/// Unoriented slope p·μ + q·λ, normalized so that q > 0, or q = 0 and p = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlopeSpec {
    p: i64,
    q: i64,
}

impl SlopeSpec {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p.gcd(&q) != 1 {
            return Err(Error::NonPrimitiveSlope(p, q));
        }
        let (p, q) = if q < 0 || (q == 0 && p < 0) { (-p, -q) } else { (p, q) };
        Ok(SlopeSpec { p, q })
    }

    pub fn meridian() -> Self {
        SlopeSpec { p: 1, q: 0 }
    }

    pub fn longitude() -> Self {
        SlopeSpec { p: 0, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// The word μ^p λ^q.
    pub fn word(&self, pres: &Presentation) -> GroupWord {
        pres.meridian.pow(self.p).mul(&pres.longitude.pow(self.q))
    }
}

impl fmt::Display for SlopeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Trace of a word over the coordinates of `ring`.
pub fn trace_of_word(w: &GroupWord, ring: &TraceRing) -> Poly {
    ring.trace(w)
}

/// Ideal generated by tr(rV) − tr(V) over relators r and coordinate words V,
/// including V = 1. Its zero set contains the character variety.
pub fn character_ideal(pres: &Presentation, ring: &TraceRing) -> Result<IdealPresentation> {
    let n = pres.gens.len();
    if n > 3 {
        return Err(Error::Unsupported(format!(
            "relator assembly for {n} generators"
        )));
    }
    if ring.generators() != pres.gens.as_slice() {
        return Err(Error::Invalid("trace ring and presentation disagree on generators".into()));
    }
    let mut vs = vec![GroupWord::identity()];
    vs.extend(ring.coordinate_words());
    let mut words = Vec::new();
    for r in &pres.relators {
        for v in &vs {
            words.push(r.mul(v));
            words.push(v.clone());
        }
    }
    let traces = ring.traces(&words);
    let mut gens: Vec<Poly> = Vec::new();
    for pair in traces.chunks(2) {
        let g = &pair[0] - &pair[1];
        if !g.is_zero() && !gens.contains(&g) {
            gens.push(g);
        }
    }
    IdealPresentation::new(ring.ring(), gens)
}

/// Trace of μ^p λ^q.
pub fn slope_trace(slope: &SlopeSpec, pres: &Presentation, ring: &TraceRing) -> Poly {
    ring.trace(&slope.word(pres))
}
