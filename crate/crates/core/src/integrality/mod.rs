//! Integral dependence over ℂ[I_α], ℚ[I_α], ℤ[I_α] and the peripheral subring.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::groebner::{adjoin_base, buchberger, eliminate, FiberAlgebra, FiberDim, IdealPresentation};
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing, RatFunc, UniPoly};

/// Coefficient ring of the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    /// ℂ[I_α]
    Field,
    /// ℚ[I_α]
    Rational,
    /// ℤ[I_α]
    Integer,
}

/// Traces of μ, λ and μλ generating the peripheral subring. Missing entries
/// restrict the test to the traces that are present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeripheralTraces {
    pub mu: Option<Poly>,
    pub lambda: Option<Poly>,
    pub mulambda: Option<Poly>,
}

impl PeripheralTraces {
    pub fn present(&self) -> Vec<(&'static str, &Poly)> {
        let mut out = Vec::new();
        if let Some(p) = &self.mu {
            out.push(("mu", p));
        }
        if let Some(p) = &self.lambda {
            out.push(("lambda", p));
        }
        if let Some(p) = &self.mulambda {
            out.push(("mulambda", p));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dependence {
    /// `relation` is monic in its highest variable (the dependent one) with
    /// coefficients in the base ring.
    Integral { relation: Poly, degree: u32 },
    /// Leading coefficient of the image curve that fails to be a unit.
    NotIntegral { witness: Poly },
}

impl Dependence {
    pub fn is_integral(&self) -> bool {
        matches!(self, Dependence::Integral { .. })
    }
}

impl fmt::Display for Dependence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dependence::Integral { relation, degree } => {
                write!(f, "INTEGRAL degree {degree}: {relation}")
            }
            Dependence::NotIntegral { witness } => write!(f, "NOT_INTEGRAL witness {witness}"),
        }
    }
}

const TAG_B: &str = "_B";
const TAG_F: &str = "_F";
const TAGS: [&str; 3] = ["_U", "_V", "_W"];

/// The ideal in a ring with extra variables `extra` (name, defining polynomial),
/// under lex with priority `prio` (names, lowest first).
fn extend(ideal: &IdealPresentation, extra: &[(&str, &Poly)], prio: &[&str]) -> Result<IdealPresentation> {
    let ring = ideal.ring();
    let mut vars = ring.vars().to_vec();
    for (name, _) in extra {
        if ring.index_of(name).is_some() {
            return Err(Error::Invalid(format!("variable `{name}` is reserved")));
        }
        vars.push(name.to_string());
    }
    let idx: Vec<usize> = prio
        .iter()
        .map(|n| vars.iter().position(|v| v == n).unwrap())
        .collect();
    let mut ext = PolyRing::new(vars, MonomialOrder::lex(idx)?)?;
    if let Some(f) = ring.number_field() {
        ext = ext.with_number_field(f.clone())?;
    }
    let mut gens: Vec<Poly> = ideal
        .generators()
        .iter()
        .map(|g| g.to_ring(&ext))
        .collect::<Result<_>>()?;
    for (name, p) in extra {
        gens.push(Poly::var_named(&ext, name)? - p.to_ring(&ext)?);
    }
    let mut out = IdealPresentation::new(&ext, gens)?;
    out.asserted_prime = ideal.asserted_prime;
    Ok(out)
}

pub(crate) fn var_name(p: &Poly) -> Option<String> {
    match p.terms() {
        [(m, c)] if c.is_one() && m.degree() == 1 => {
            Some(p.ring().vars()[m.support().next().unwrap()].clone())
        }
        _ => None,
    }
}

/// Names used for the image-curve ring: the variable itself when the function
/// is a coordinate, otherwise `X` for the base and `Y` for the function.
pub fn default_names(f: &Poly, base: &Poly) -> (String, String) {
    let b = var_name(base).unwrap_or_else(|| "X".into());
    let mut y = var_name(f).unwrap_or_else(|| "Y".into());
    if y == b {
        y = format!("{y}_");
    }
    (b, y)
}

/// Primitive generator P(base, f) of the image of the curve under (base, f),
/// in a lex ring (base < f) named by [`default_names`].
pub fn image_curve(ideal: &IdealPresentation, f: &Poly, base: &Poly) -> Result<Poly> {
    let (b, y) = default_names(f, base);
    image_curve_named(ideal, f, base, &b, &y)
}

pub fn image_curve_named(
    ideal: &IdealPresentation,
    f: &Poly,
    base: &Poly,
    base_name: &str,
    f_name: &str,
) -> Result<Poly> {
    let p = image_generator(ideal, f, base)?;
    let target = PolyRing::lex(&[base_name, f_name]);
    let src = p.ring().clone();
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let e = vec![m.get(src.var_index(TAG_B).unwrap()), m.get(src.var_index(TAG_F).unwrap())];
            (Monomial::from_exponents(e), c.clone())
        })
        .collect();
    Ok(Poly::from_terms(&target, terms))
}

/// Primitive P(_B, _F): the minimal polynomial of `f` over ℚ(base) when the
/// generic fiber is finite, by elimination otherwise. Either way P(base, f) is
/// checked to lie in the ideal.
fn image_generator(ideal: &IdealPresentation, f: &Poly, base: &Poly) -> Result<Poly> {
    let ext = adjoin_base(ideal, base, TAG_B)?;
    let fiber = FiberAlgebra::new(&ext, TAG_B)?;
    if fiber.rational_dimension() == FiberDim::Infinite {
        return elimination_generator(ideal, f, base);
    }
    let p = minimal_polynomial(&fiber, &f.to_ring(ext.ring())?)?;
    let fr = fiber.ring();
    let values = std::collections::HashMap::from([
        (TAG_B.to_string(), Poly::var_named(fr, TAG_B)?),
        (TAG_F.to_string(), f.to_ring(fr)?),
    ]);
    if !fiber.contains(&p.substitute(&values, fr)?)? {
        return Err(Error::verification("image curve", "P(base, f) is not in the ideal"));
    }
    Ok(p)
}

/// First linear dependence among the coordinates of 1, f, f², … over ℚ(B).
fn minimal_polynomial(fiber: &FiberAlgebra, f: &Poly) -> Result<Poly> {
    let ring = fiber.ring();
    let f = &f.to_ring(ring)?;
    let basis: Vec<Poly> = fiber
        .standard_monomials()
        .unwrap()
        .iter()
        .map(|m| Poly::monomial(ring, m.clone()))
        .collect();
    // echelon rows: (pivot, vector, combination of powers giving that vector)
    let mut rows: Vec<(usize, Vec<RatFunc>, Vec<RatFunc>)> = Vec::new();
    let mut power = Poly::one(ring);
    let mut scale = UniPoly::one();
    for k in 0..=basis.len() {
        let mut v: Vec<RatFunc> = fiber.coordinates(&power)?;
        let inv = RatFunc::from_poly(scale.clone()).inv();
        for c in v.iter_mut() {
            *c = c.mul(&inv);
        }
        let mut comb = vec![RatFunc::zero(); k + 1];
        comb[k] = RatFunc::one();
        for (piv, row, rc) in &rows {
            if v[*piv].is_zero() {
                continue;
            }
            let a = v[*piv].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = x.sub(&a.mul(y));
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                *x = x.sub(&a.mul(y));
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => return Ok(clear_relation(&comb)),
            Some(piv) => {
                let a = v[piv].inv();
                let v: Vec<RatFunc> = v.iter().map(|x| x.mul(&a)).collect();
                let comb: Vec<RatFunc> = comb.iter().map(|x| x.mul(&a)).collect();
                rows.push((piv, v, comb));
            }
        }
        // f^(k+1) ≡ (Σ numᵢ sᵢ)·f / den
        let coords = fiber.coordinates(&power)?;
        let den = coords
            .iter()
            .filter(|c| !c.is_zero())
            .fold(UniPoly::one(), |acc, c| {
                let g = acc.gcd(c.den());
                acc.mul(&c.den().div_exact(&g).unwrap())
            });
        let nums: Vec<UniPoly> = coords
            .iter()
            .map(|c| c.num().mul(&den.div_exact(c.den()).unwrap()))
            .collect();
        power = fiber.combination(&nums, &basis)? * f;
        scale = scale.mul(&den);
    }
    Err(Error::verification("image curve", "no dependence within the fiber dimension"))
}

/// Σ cₖ(B)·Fᵏ with denominators cleared, primitive over ℤ[B].
fn clear_relation(comb: &[RatFunc]) -> Poly {
    let den = comb
        .iter()
        .filter(|c| !c.is_zero())
        .fold(UniPoly::one(), |acc, c| {
            let g = acc.gcd(c.den());
            acc.mul(&c.den().div_exact(&g).unwrap())
        });
    let nums: Vec<UniPoly> = comb
        .iter()
        .map(|c| c.num().mul(&den.div_exact(c.den()).unwrap()))
        .collect();
    let g = nums
        .iter()
        .filter(|c| !c.is_zero())
        .fold(UniPoly::zero(), |acc, c| acc.gcd(c));
    let ring = PolyRing::lex(&[TAG_B, TAG_F]);
    let mut terms = Vec::new();
    for (k, c) in nums.iter().enumerate() {
        let c = c.div_exact(&g).unwrap();
        for (e, a) in c.coeffs().iter().enumerate() {
            if !a.is_zero() {
                terms.push((Monomial::from_exponents(vec![e as u32, k as u32]), a.clone()));
            }
        }
    }
    Poly::from_terms(&ring, terms).primitive()
}

fn elimination_generator(ideal: &IdealPresentation, f: &Poly, base: &Poly) -> Result<Poly> {
    let mut prio: Vec<&str> = vec![TAG_B, TAG_F];
    let ring = ideal.ring();
    for &i in ring.order().priority() {
        prio.push(ring.vars()[i].as_str());
    }
    let ext = extend(ideal, &[(TAG_B, base), (TAG_F, f)], &prio)?;
    let contracted = eliminate(&ext, &[TAG_B, TAG_F])?;
    let gb = buchberger(&contracted);
    let fi = gb.ring().var_index(TAG_F)?;
    if gb.elements().iter().any(|g| !g.involves(fi)) {
        return Err(Error::ConstantBase);
    }
    match gb.elements() {
        [] => Err(Error::Invalid(
            "the image is not a curve (is the ideal one-dimensional?)".into(),
        )),
        [p] => Ok(p.primitive()),
        _ => Err(Error::Invalid(
            "the image ideal is not principal (is the ideal prime?)".into(),
        )),
    }
}

/// Integral dependence of `f` over the base ring generated by `base`.
pub fn is_integral(ideal: &IdealPresentation, f: &Poly, base: &Poly, kind: BaseKind) -> Result<Dependence> {
    let p = image_generator(ideal, f, base)?;
    let ring = p.ring().clone();
    let fi = ring.var_index(TAG_F)?;
    let degree = p.degree_in(fi).unwrap();
    let lc = p.leading_coeff_in(fi).unwrap();
    let (b, y) = default_names(f, base);
    let rename = |q: &Poly| -> Result<Poly> { rename_tags(q, &b, &y) };
    let unit = match kind {
        BaseKind::Field | BaseKind::Rational => lc.is_constant(),
        BaseKind::Integer => lc
            .constant_value()
            .is_some_and(|c| c.abs().is_one()),
    };
    if !unit {
        return Ok(Dependence::NotIntegral { witness: rename(&lc)? });
    }
    let relation = p.scale(&lc.constant_value().unwrap().recip());
    check_dependence(ideal, f, base, &relation)?;
    Ok(Dependence::Integral {
        relation: rename(&relation)?,
        degree,
    })
}

fn rename_tags(q: &Poly, b: &str, y: &str) -> Result<Poly> {
    let src = q.ring();
    let target = PolyRing::lex(&[b, y]);
    let (bi, fi) = (src.var_index(TAG_B)?, src.var_index(TAG_F)?);
    let terms = q
        .terms()
        .iter()
        .map(|(m, c)| {
            (
                Monomial::from_exponents(vec![m.get(bi), m.get(fi)]),
                c.clone(),
            )
        })
        .collect();
    Ok(Poly::from_terms(&target, terms))
}

/// Independent re-check: the relation is monic in `_F` and vanishes on the curve.
fn check_dependence(ideal: &IdealPresentation, f: &Poly, base: &Poly, relation: &Poly) -> Result<()> {
    let fi = relation.ring().var_index(TAG_F)?;
    if !relation.leading_coeff_in(fi).is_some_and(|c| c.is_one()) {
        return Err(Error::verification("dependence", "relation is not monic"));
    }
    let ext = extend(ideal, &[], &ideal_priority(ideal))?;
    let values = std::collections::HashMap::from([
        (TAG_B.to_string(), base.to_ring(ext.ring())?),
        (TAG_F.to_string(), f.to_ring(ext.ring())?),
    ]);
    let substituted = relation.substitute(&values, ext.ring())?;
    if !buchberger(&ext).contains(&substituted)? {
        return Err(Error::verification("dependence", "relation is not in the ideal"));
    }
    Ok(())
}

fn ideal_priority(ideal: &IdealPresentation) -> Vec<&str> {
    let ring = ideal.ring();
    ring.order()
        .priority()
        .iter()
        .map(|&i| ring.vars()[i].as_str())
        .collect()
}

/// The ideal contracted to rational coefficients (θ eliminated). A rational
/// ideal comes back as its reduced Groebner basis.
pub fn rational_contraction(ideal: &IdealPresentation) -> Result<IdealPresentation> {
    let ring = ideal.ring();
    let keep: Vec<&str> = ring
        .order()
        .priority()
        .iter()
        .filter(|&&i| Some(i) != ring.theta())
        .map(|&i| ring.vars()[i].as_str())
        .collect();
    if ring.theta().is_none() {
        let gb = buchberger(ideal);
        let mut out = IdealPresentation::new(ring, gb.elements().to_vec())?;
        out.asserted_prime = ideal.asserted_prime;
        return Ok(out);
    }
    let out = eliminate(ideal, &keep)?;
    // eliminate() orders kept variables by priority; restore declaration order.
    let names: Vec<&str> = ring
        .vars()
        .iter()
        .filter(|v| keep.contains(&v.as_str()))
        .map(|v| v.as_str())
        .collect();
    let idx: Vec<usize> = keep
        .iter()
        .map(|k| names.iter().position(|n| n == k).unwrap())
        .collect();
    let target = PolyRing::new(
        names.iter().map(|s| s.to_string()).collect(),
        MonomialOrder::new(ring.order().kind(), idx)?,
    )?;
    out.to_ring(&target)
}

/// Integrality of `f` over the subring generated by the peripheral traces.
pub fn is_integral_peripheral(
    ideal: &IdealPresentation,
    f: &Poly,
    peripheral: &PeripheralTraces,
) -> Result<Dependence> {
    let present = peripheral.present();
    if present.is_empty() {
        return Err(Error::MissingSection("peripheral".into()));
    }
    // Integral over one trace implies integral over the subring they generate.
    let mut all_constant = true;
    for (_, t) in &present {
        match is_integral(ideal, f, t, BaseKind::Field) {
            Ok(d @ Dependence::Integral { .. }) => return Ok(d),
            Ok(_) => all_constant = false,
            Err(Error::ConstantBase) => {}
            Err(e) => return Err(e),
        }
    }
    if all_constant {
        return Err(Error::ConstantBase);
    }
    // Block order: original variables > f > tags.
    let mut extra: Vec<(&str, &Poly)> = Vec::new();
    let mut prio: Vec<&str> = Vec::new();
    for (k, (_, t)) in present.iter().enumerate() {
        extra.push((TAGS[k], t));
        prio.push(TAGS[k]);
    }
    extra.push((TAG_F, f));
    prio.push(TAG_F);
    prio.extend(ideal_priority(ideal));
    let ext = extend(ideal, &extra, &prio)?;
    let gb = buchberger(&ext);
    let ring = gb.ring().clone();
    let fi = ring.var_index(TAG_F)?;
    let hit = gb.elements().iter().find(|g| {
        let lm = g.leading_monomial().unwrap();
        lm.get(fi) > 0 && lm.support().all(|v| v == fi)
    });
    match hit {
        Some(g) => {
            let keep: Vec<usize> = prio[..present.len() + 1]
                .iter()
                .map(|n| ring.var_index(n).unwrap())
                .collect();
            if g.support().iter().any(|v| !keep.contains(v)) {
                return Err(Error::verification(
                    "peripheral",
                    "monic element involves eliminated variables",
                ));
            }
            Ok(Dependence::Integral {
                degree: g.degree_in(fi).unwrap(),
                relation: g.clone(),
            })
        }
        None => {
            let (_, t) = present[0];
            let p = image_generator(ideal, f, t)?;
            let lc = p.leading_coeff_in(p.ring().var_index(TAG_F)?).unwrap();
            let (b, y) = default_names(f, t);
            Ok(Dependence::NotIntegral {
                witness: rename_tags(&lc, &b, &y)?,
            })
        }
    }
}

/// Per-coordinate peripheral integrality, in the given coordinate order.
pub fn peripheral_integrality_profile(
    ideal: &IdealPresentation,
    coordinates: &[Poly],
    peripheral: &PeripheralTraces,
) -> Result<Vec<(Poly, Dependence)>> {
    coordinates
        .iter()
        .map(|c| Ok((c.clone(), is_integral_peripheral(ideal, c, peripheral)?)))
        .collect()
}

/// The ring variables other than θ, as polynomials.
pub fn coordinate_functions(ideal: &IdealPresentation) -> Vec<Poly> {
    let ring = ideal.ring();
    (0..ring.nvars())
        .filter(|&i| Some(i) != ring.theta())
        .map(|i| Poly::var(ring, i))
        .collect()
}

#[cfg(test)]
mod tests;
