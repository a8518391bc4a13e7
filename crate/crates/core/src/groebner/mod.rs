//! Groebner bases, normal forms, elimination and generic fiber dimension.

mod fiber;
mod kernel;

use std::fmt;

pub use fiber::{adjoin_base, FiberAlgebra, FiberDim};
pub(crate) use kernel::{IPoly, Keyer};

use crate::error::{Error, Result};
use crate::poly::{raw_poly, Monomial, Poly, PolyRing, Rational};

/// Generators of an ideal in a polynomial ring with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    ring: PolyRing,
    generators: Vec<Poly>,
    /// Whether primality of the ideal was asserted by the caller (never verified).
    pub asserted_prime: bool,
}

impl IdealPresentation {
    pub fn new(ring: &PolyRing, generators: Vec<Poly>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.ring().same(ring) {
                return Err(Error::RingMismatch(format!(
                    "generator {g} is not in {ring:?}"
                )));
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(IdealPresentation {
            ring: ring.clone(),
            generators: gens,
            asserted_prime: false,
        })
    }

    pub fn parse(ring: &PolyRing, gens: &[&str]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| Poly::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn prime(mut self) -> Self {
        self.asserted_prime = true;
        self
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Generators in the rational ring (θ as a plain variable), plus the
    /// minimal polynomial of θ when a number field is attached.
    pub fn full_generators(&self) -> Vec<Poly> {
        let rational = self.ring.rational();
        let mut gens: Vec<Poly> = self
            .generators
            .iter()
            .map(|g| raw_poly(&rational, g.terms().to_vec()))
            .collect();
        if let (Some(t), Some(field)) = (self.ring.theta(), self.ring.number_field()) {
            gens.push(Poly::from_univariate(&rational, t, field.minpoly()));
        }
        gens
    }

    /// Same ideal in another ring (variables matched by name). A target without
    /// the number field receives the minimal polynomial as an ordinary generator.
    pub fn to_ring(&self, ring: &PolyRing) -> Result<Self> {
        let src = if ring.theta().is_some() {
            self.generators.clone()
        } else {
            self.full_generators()
        };
        let gens = src
            .iter()
            .map(|g| g.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Self::new(ring, gens)?;
        out.asserted_prime = self.asserted_prime;
        Ok(out)
    }

    pub fn with_generators(&self, extra: Vec<Poly>) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        let mut out = Self::new(&self.ring, gens)?;
        out.asserted_prime = self.asserted_prime;
        Ok(out)
    }
}

/// Reduced Groebner basis: monic elements sorted by ascending leading monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    /// Rational ring holding the elements; θ, if any, is an ordinary variable here.
    ring: PolyRing,
    source: PolyRing,
    elements: Vec<Poly>,
    keyer: Keyer,
    integral: Vec<IPoly>,
}

impl PartialEq for Keyer {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Keyer {}

impl GroebnerBasis {
    fn from_integral(source: &PolyRing, keyer: Keyer, integral: Vec<IPoly>) -> Self {
        let ring = source.rational();
        let elements = integral
            .iter()
            .map(|p| p.to_poly(&ring, &keyer).monic())
            .collect();
        GroebnerBasis {
            ring,
            source: source.clone(),
            elements,
            keyer,
            integral,
        }
    }

    /// Ring of the elements (rational, θ as a variable).
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Ring of the ideal the basis was computed from.
    pub fn source_ring(&self) -> &PolyRing {
        &self.source
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|p| p.leading_monomial().unwrap().clone())
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    /// Exact normal form: no term divisible by a leading monomial, `p − nf` in the ideal.
    /// The result lives in the ring the basis was computed from.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        let r = self.normal_form_rational(p)?;
        r.to_ring(&self.source)
    }

    /// Normal form in [`Self::ring`].
    pub fn normal_form_rational(&self, p: &Poly) -> Result<Poly> {
        let p = if p.ring().theta().is_some() {
            raw_poly(&p.ring().rational(), p.terms().to_vec())
        } else {
            p.clone()
        };
        let p = p.to_ring(&self.ring)?;
        if p.is_zero() {
            return Ok(p);
        }
        let (ip, content) = IPoly::from_poly(&p, &self.keyer);
        let basis: Vec<&IPoly> = self.integral.iter().collect();
        let (r, scale) = kernel::reduce(&ip, &basis, &self.keyer, true);
        Ok(r.to_poly(&self.ring, &self.keyer).scale(&(content / scale)))
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Re-checks, with plain rational arithmetic, that every S-polynomial reduces
    /// to zero and that the basis is reduced and monic.
    pub fn verify(&self) -> Result<()> {
        verify_elements(&self.elements)
    }

    /// Standard monomials, if finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        staircase(&lms, &(0..n).collect::<Vec<_>>(), n)
    }
}

/// Monomials in `vars` not divisible by any of `lms` (which involve only `vars`).
pub(crate) fn staircase(lms: &[Monomial], vars: &[usize], nvars: usize) -> Option<Vec<Monomial>> {
    let mut bound = vec![0u32; nvars];
    for &v in vars {
        let pure = lms
            .iter()
            .filter(|m| m.support().all(|w| w == v))
            .map(|m| m.get(v))
            .filter(|&e| e > 0)
            .min();
        bound[v] = pure?;
    }
    if lms.iter().any(|m| m.is_one()) {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    loop {
        let m = Monomial::from_exponents(cur.clone());
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut k = 0;
        loop {
            if k == vars.len() {
                return Some(out);
            }
            let v = vars[k];
            cur[v] += 1;
            if cur[v] < bound[v] {
                break;
            }
            cur[v] = 0;
            k += 1;
        }
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.elements.iter().map(|p| p.to_string())).finish()
    }
}

/// Reduced Groebner basis of the ideal under its ring's order.
pub fn buchberger(ideal: &IdealPresentation) -> GroebnerBasis {
    let ring = ideal.ring();
    let keyer = Keyer::new(ring.order());
    let input: Vec<IPoly> = ideal
        .full_generators()
        .iter()
        .map(|g| IPoly::from_poly(g, &keyer).0)
        .collect();
    let gb = kernel::groebner(input, &keyer);
    GroebnerBasis::from_integral(ring, keyer, gb)
}

pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Result<Poly> {
    gb.normal_form(p)
}

pub fn ideal_member(p: &Poly, gb: &GroebnerBasis) -> Result<bool> {
    gb.contains(p)
}

/// Contraction of the ideal to the `keep` variables, via a lex block order with
/// the eliminated variables highest.
pub fn eliminate(ideal: &IdealPresentation, keep: &[&str]) -> Result<IdealPresentation> {
    let ring = ideal.ring();
    for k in keep {
        ring.var_index(k)?;
    }
    let prio: Vec<usize> = ring.order().priority().to_vec();
    let kept: Vec<String> = prio
        .iter()
        .map(|&i| ring.vars()[i].clone())
        .filter(|v| keep.contains(&v.as_str()))
        .collect();
    let dropped: Vec<String> = prio
        .iter()
        .map(|&i| ring.vars()[i].clone())
        .filter(|v| !keep.contains(&v.as_str()))
        .collect();
    let names: Vec<&str> = kept.iter().chain(dropped.iter()).map(|s| s.as_str()).collect();
    let block = ring.relex(&names)?;
    let lifted = ideal.to_ring(&block)?;
    let gb = buchberger(&lifted);
    let target = ring.restricted_lex(&kept)?;
    let kept_idx: Vec<usize> = kept.iter().map(|v| gb.ring().var_index(v).unwrap()).collect();
    let mut gens = Vec::new();
    for g in gb.elements() {
        if g.support().iter().all(|v| kept_idx.contains(v)) {
            let h = g.to_ring(&target)?;
            if !h.is_zero() {
                gens.push(h);
            }
        }
    }
    let mut out = IdealPresentation::new(&target, gens)?;
    out.asserted_prime = ideal.asserted_prime;
    Ok(out)
}

/// Dimension of the quotient over the rational function field in `base`.
pub fn generic_fiber_dim(ideal: &IdealPresentation, base: &str) -> Result<FiberDim> {
    match FiberAlgebra::new(ideal, base) {
        Ok(f) => Ok(f.dimension()),
        Err(Error::ConstantBase) => Ok(FiberDim::Finite(0)),
        Err(e) => Err(e),
    }
}

/// Independent check of the Buchberger criterion using rational `Poly` arithmetic.
pub fn verify_elements(elements: &[Poly]) -> Result<()> {
    let one = Rational::from_integer(1.into());
    for (i, g) in elements.iter().enumerate() {
        if g.leading_coeff() != Some(&one) {
            return Err(Error::verification("monic", format!("element {i} is not monic")));
        }
        for (j, h) in elements.iter().enumerate() {
            if i == j {
                continue;
            }
            let lm = h.leading_monomial().unwrap();
            if g.terms().iter().any(|(m, _)| lm.divides(m)) {
                return Err(Error::verification(
                    "reduced",
                    format!("a term of element {i} is divisible by the leading monomial of element {j}"),
                ));
            }
        }
    }
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            let (f, g) = (&elements[i], &elements[j]);
            let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
            let l = lf.lcm(lg);
            let s = f.mul_monomial(&lf.quotient_of(&l).unwrap(), &one)
                - g.mul_monomial(&lg.quotient_of(&l).unwrap(), &one);
            let r = naive_reduce(&s, elements);
            if !r.is_zero() {
                return Err(Error::verification(
                    "s-polynomial",
                    format!("S({i},{j}) reduces to {r}"),
                ));
            }
        }
    }
    Ok(())
}

/// Textbook multivariate division over ℚ, used only for independent checks.
pub(crate) fn naive_reduce(p: &Poly, divisors: &[Poly]) -> Poly {
    let ring = p.ring().clone();
    let mut f = p.clone();
    let mut rem = Poly::zero(&ring);
    while let Some((m, c)) = f.terms().first().cloned() {
        let hit = divisors.iter().find(|g| g.leading_monomial().unwrap().divides(&m));
        match hit {
            Some(g) => {
                let q = g.leading_monomial().unwrap().quotient_of(&m).unwrap();
                let k = &c / g.leading_coeff().unwrap();
                f = f - g.mul_monomial(&q, &k);
            }
            None => {
                let t = Poly::term(&ring, m, c);
                rem = rem + &t;
                f = f - t;
            }
        }
    }
    rem
}

#[cfg(test)]
mod tests;
