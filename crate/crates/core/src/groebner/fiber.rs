use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{raw_poly, Monomial, MonomialOrder, Poly, PolyRing, RatFunc, UniPoly};

use super::{buchberger, staircase, GroebnerBasis, IdealPresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberDim {
    Finite(usize),
    Infinite,
}

impl fmt::Display for FiberDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberDim::Finite(n) => write!(f, "{n}"),
            FiberDim::Infinite => f.write_str("INFINITE"),
        }
    }
}

type KTerms = Vec<(Monomial, UniPoly)>;

#[derive(Clone, Debug)]
struct KElem {
    terms: KTerms,
}

/// The quotient algebra tensored with ℚ(base): a lex basis with the base
/// variable lowest, read over the fraction field.
#[derive(Clone, Debug)]
pub struct FiberAlgebra {
    ring: PolyRing,
    base: usize,
    gb: GroebnerBasis,
    rest: Vec<usize>,
    staircase: Option<Vec<Monomial>>,
    theta_degree: usize,
    kgb: Vec<KElem>,
}

/// Adds a fresh lowest variable `name` and the generator `name − base`.
pub fn adjoin_base(ideal: &IdealPresentation, base: &Poly, name: &str) -> Result<IdealPresentation> {
    let ring = ideal.ring();
    if ring.index_of(name).is_some() {
        return Err(Error::Invalid(format!("variable `{name}` already declared")));
    }
    let mut vars = ring.vars().to_vec();
    vars.push(name.to_string());
    let mut prio = vec![vars.len() - 1];
    prio.extend(ring.order().priority().iter().copied());
    let mut ext = PolyRing::new(vars, MonomialOrder::lex(prio)?)?;
    if let Some(f) = ring.number_field() {
        ext = ext.with_number_field(f.clone())?;
    }
    let mut gens: Vec<Poly> = ideal
        .generators()
        .iter()
        .map(|g| g.to_ring(&ext))
        .collect::<Result<_>>()?;
    let b = base.to_ring(&ext)?;
    gens.push(Poly::var_named(&ext, name)? - b);
    let mut out = IdealPresentation::new(&ext, gens)?;
    out.asserted_prime = ideal.asserted_prime;
    Ok(out)
}

impl FiberAlgebra {
    /// `base` must be one of the ideal's variables.
    pub fn new(ideal: &IdealPresentation, base: &str) -> Result<Self> {
        let src = ideal.ring();
        let b = src.var_index(base)?;
        let mut names: Vec<&str> = vec![base];
        for &i in src.order().priority() {
            if i != b {
                names.push(src.vars()[i].as_str());
            }
        }
        let block = src.relex(&names)?;
        let lifted = ideal.to_ring(&block)?;
        let gb = buchberger(&lifted);
        let ring = gb.ring().clone();
        let base = ring.var_index(base)?;
        let rest: Vec<usize> = (0..ring.nvars()).filter(|&v| v != base).collect();
        let lms = gb.leading_monomials();
        if lms.iter().any(|m| m.support().all(|v| v == base)) {
            return Err(Error::ConstantBase);
        }
        let kgb: Vec<KElem> = gb
            .elements()
            .iter()
            .map(|g| KElem {
                terms: to_kterms(g, base),
            })
            .collect();
        let projected: Vec<Monomial> = kgb.iter().map(|k| k.terms[0].0.clone()).collect();
        let staircase = staircase(&projected, &rest, ring.nvars());
        let theta_degree = src.number_field().map_or(1, |f| f.degree());
        Ok(FiberAlgebra {
            ring,
            base,
            gb,
            rest,
            staircase,
            theta_degree,
            kgb,
        })
    }

    /// Over a number field the ℚ(base)-dimension is divided by the field degree.
    pub fn dimension(&self) -> FiberDim {
        match &self.staircase {
            Some(s) => FiberDim::Finite(s.len() / self.theta_degree),
            None => FiberDim::Infinite,
        }
    }

    /// Dimension over ℚ(base), counting θ-multiples separately.
    pub fn rational_dimension(&self) -> FiberDim {
        match &self.staircase {
            Some(s) => FiberDim::Finite(s.len()),
            None => FiberDim::Infinite,
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn rest(&self) -> &[usize] {
        &self.rest
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn standard_monomials(&self) -> Option<&[Monomial]> {
        self.staircase.as_deref()
    }

    /// Coordinates of `p` over ℚ(base) in the standard-monomial basis.
    pub fn coordinates(&self, p: &Poly) -> Result<Vec<RatFunc>> {
        let basis = self.staircase.as_ref().ok_or_else(|| {
            Error::Unsupported("quotient is infinite-dimensional over the base field".into())
        })?;
        let (rem, den) = self.reduce(p)?;
        let mut out = vec![RatFunc::zero(); basis.len()];
        for (m, c) in rem {
            let k = basis
                .iter()
                .position(|b| b == &m)
                .expect("remainder monomials are standard");
            out[k] = RatFunc::new(c, den.clone());
        }
        Ok(out)
    }

    /// Fraction-free reduction over ℚ[base]: returns `(r, d)` with `p ≡ r / d`.
    fn reduce(&self, p: &Poly) -> Result<(KTerms, UniPoly)> {
        let p = if p.ring().theta().is_some() {
            raw_poly(&p.ring().rational(), p.terms().to_vec())
        } else {
            p.clone()
        };
        let p = p.to_ring(&self.ring)?;
        let order = self.ring.order();
        let mut cur = to_kterms(&p, self.base);
        let mut rem: KTerms = Vec::new();
        let mut den = UniPoly::one();
        let mut steps = 0u32;
        while !cur.is_empty() {
            let (m, a) = cur[0].clone();
            let hit = self.kgb.iter().find(|g| g.terms[0].0.divides(&m));
            let Some(g) = hit else {
                rem.push(cur.remove(0));
                continue;
            };
            let lc = &g.terms[0].1;
            let h = a.gcd(lc);
            let c1 = lc.div_exact(&h).unwrap();
            let c2 = a.div_exact(&h).unwrap();
            let q = g.terms[0].0.quotient_of(&m).unwrap();
            let shifted: KTerms = g.terms[1..]
                .iter()
                .map(|(n, c)| (n.mul(&q), c.mul(&c2)))
                .collect();
            cur = merge_sub(&cur[1..], &c1, &shifted, order);
            for t in rem.iter_mut() {
                t.1 = t.1.mul(&c1);
            }
            den = den.mul(&c1);
            steps += 1;
            if steps % 8 == 0 {
                let mut g = den.clone();
                for (_, c) in rem.iter().chain(cur.iter()) {
                    g = g.gcd(c);
                    if g.is_one() {
                        break;
                    }
                }
                if !g.is_one() {
                    for t in rem.iter_mut().chain(cur.iter_mut()) {
                        t.1 = t.1.div_exact(&g).unwrap();
                    }
                    den = den.div_exact(&g).unwrap();
                }
            }
        }
        Ok((rem, den))
    }

    /// Inverse of [`Self::coordinates`] for polynomial coordinates: Σ cᵢ(base)·sᵢ.
    pub fn combination(&self, coords: &[UniPoly], elements: &[Poly]) -> Result<Poly> {
        let mut acc = Poly::zero(&self.ring);
        for (c, e) in coords.iter().zip(elements) {
            if c.is_zero() {
                continue;
            }
            let cp = Poly::from_univariate(&self.ring, self.base, c);
            acc = acc + cp * e.to_ring(&self.ring)?;
        }
        Ok(acc)
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        self.gb.contains(&p.to_ring(&self.ring)?)
    }
}

/// Terms grouped by their monomial in the non-base variables, descending.
fn to_kterms(p: &Poly, base: usize) -> KTerms {
    let mut out: KTerms = Vec::new();
    for (m, c) in p.terms() {
        let e = m.get(base) as usize;
        let mut rest = m.clone();
        rest.exponents_mut()[base] = 0;
        let mono = UniPoly::monomial(c.clone(), e);
        match out.last_mut() {
            Some((last, acc)) if *last == rest => *acc = acc.add(&mono),
            _ => out.push((rest, mono)),
        }
    }
    out
}

/// `a·f − g` for term lists sorted descending under `order`.
fn merge_sub(f: &[(Monomial, UniPoly)], a: &UniPoly, g: &[(Monomial, UniPoly)], order: &MonomialOrder) -> KTerms {
    use std::cmp::Ordering;
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < f.len() || j < g.len() {
        let ord = if i == f.len() {
            Ordering::Less
        } else if j == g.len() {
            Ordering::Greater
        } else {
            order.cmp(&f[i].0, &g[j].0)
        };
        match ord {
            Ordering::Greater => {
                out.push((f[i].0.clone(), f[i].1.mul(a)));
                i += 1;
            }
            Ordering::Less => {
                out.push((g[j].0.clone(), g[j].1.neg()));
                j += 1;
            }
            Ordering::Equal => {
                let c = f[i].1.mul(a).sub(&g[j].1);
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

