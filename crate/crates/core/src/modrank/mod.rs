//! Module ranks of the coordinate ring over ℂ[I_α], ℚ[I_α] and ℤ[I_α], with
//! checkable certificates.

mod cert;
mod linalg;
mod nonfree;
mod table;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{adjoin_base, buchberger, FiberAlgebra, FiberDim, GroebnerBasis, IdealPresentation};
use crate::integrality::{self, var_name, BaseKind, Dependence};
use crate::poly::{Monomial, Poly, RatFunc, UniPoly};

pub use cert::{Expansion, FreeBasisCert, GenSetCert, Route};
pub use nonfree::{verify_nonfree, NonFreenessCert, NonfreeClaim};
pub use table::RelationTable;

use linalg::{hermite, independent_subset, Solver};

/// Coefficient ring of a module structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scalars {
    Complex,
    Rational,
    Integer,
}

impl fmt::Display for Scalars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scalars::Complex => "C",
            Scalars::Rational => "Q",
            Scalars::Integer => "Z",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankValue {
    Exact(usize),
    Bounds { lower: usize, upper: Option<usize> },
    /// `coordinate` is not integral over the base; `leading` is the witness.
    Infinite { coordinate: Poly, leading: Poly },
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankValue::Exact(n) => write!(f, "{n}"),
            RankValue::Bounds { lower, upper: Some(u) } => write!(f, "[{lower}, {u}]"),
            RankValue::Bounds { lower, upper: None } => write!(f, "[{lower}, ?]"),
            RankValue::Infinite { .. } => f.write_str("INFINITE"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RankResult {
    pub value: RankValue,
    pub basis: Option<FreeBasisCert>,
    pub generators: Option<GenSetCert>,
    pub nonfree: Option<NonFreenessCert>,
}

impl RankResult {
    fn infinite(coordinate: Poly, leading: Poly) -> Self {
        RankResult {
            value: RankValue::Infinite { coordinate, leading },
            basis: None,
            generators: None,
            nonfree: None,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self.value {
            RankValue::Exact(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.value, RankValue::Infinite { .. })
    }

    /// Lower end of the value; `None` when infinite.
    pub fn lower(&self) -> Option<usize> {
        match self.value {
            RankValue::Exact(n) => Some(n),
            RankValue::Bounds { lower, .. } => Some(lower),
            RankValue::Infinite { .. } => None,
        }
    }
}

/// The quotient ring viewed as a module over the polynomial ring in one base
/// function, together with everything needed to check expansions.
pub(crate) struct Setting {
    pub ideal: IdealPresentation,
    pub label: String,
    pub base_poly: Poly,
    pub base_idx: usize,
    pub fiber: FiberAlgebra,
    pub check: GroebnerBasis,
    pub multipliers: Vec<Poly>,
    pub theta_degree: usize,
}

fn fresh_name(ideal: &IdealPresentation, stem: &str) -> String {
    let ring = ideal.ring();
    if ring.index_of(stem).is_none() {
        return stem.to_string();
    }
    (1..)
        .map(|k| format!("{stem}{k}"))
        .find(|n| ring.index_of(n).is_none())
        .unwrap()
}

impl Setting {
    pub fn new(ideal: &IdealPresentation, base: &Poly, scalars: Scalars) -> Result<Setting> {
        let mut ideal = if scalars != Scalars::Complex && ideal.ring().theta().is_some() {
            integrality::rational_contraction(ideal)?
        } else {
            ideal.clone()
        };
        let base = base.to_ring(ideal.ring())?;
        if base.is_constant() {
            return Err(Error::ConstantBase);
        }
        let label = match var_name(&base) {
            Some(v) => v,
            None => {
                let name = fresh_name(&ideal, "B");
                ideal = adjoin_base(&ideal, &base, &name)?;
                name
            }
        };
        let fiber = FiberAlgebra::new(&ideal, &label)?;
        let ring = ideal.ring().clone();
        let base_idx = ring.var_index(&label)?;
        let theta = ring.theta();
        let mut multipliers: Vec<Poly> = (0..ring.nvars())
            .filter(|&i| i != base_idx && Some(i) != theta)
            .map(|i| Poly::var(&ring, i))
            .collect();
        if let Some(t) = theta {
            multipliers.push(Poly::var(&ring, t));
        }
        let check = buchberger(&ideal);
        let theta_degree = ring.number_field().map_or(1, |f| f.degree());
        Ok(Setting {
            ideal,
            label,
            base_poly: base,
            base_idx,
            fiber,
            check,
            multipliers,
            theta_degree,
        })
    }

    pub fn dimension(&self) -> Option<usize> {
        match self.fiber.rational_dimension() {
            FiberDim::Finite(d) => Some(d),
            FiberDim::Infinite => None,
        }
    }

    pub fn lift(&self, p: &Poly) -> Result<Poly> {
        p.to_ring(self.ideal.ring())
    }

    pub fn coordinates(&self, p: &Poly) -> Result<Vec<RatFunc>> {
        self.fiber.coordinates(&self.lift(p)?)
    }

    pub fn base_poly(&self, c: &UniPoly) -> Poly {
        Poly::from_univariate(self.ideal.ring(), self.base_idx, c)
    }

    /// Σ cᵢ(B)·gᵢ − product ∈ ideal, checked by an independent reduction.
    pub fn check_expansion(&self, product: &Poly, coeffs: &[UniPoly], gens: &[Poly]) -> Result<bool> {
        let mut acc = -self.lift(product)?;
        for (c, g) in coeffs.iter().zip(gens) {
            if !c.is_zero() {
                acc = acc + self.base_poly(c) * self.lift(g)?;
            }
        }
        self.check.contains(&acc)
    }

    /// The products that must lie in the span: 1 and every multiplier times
    /// every generator.
    pub fn products(&self, gens: &[Poly]) -> Result<Vec<(String, Poly)>> {
        let ring = self.ideal.ring();
        let mut out = vec![("1".to_string(), Poly::one(ring))];
        for v in &self.multipliers {
            for g in gens {
                let g = self.lift(g)?;
                let text = if g.terms().len() > 1 { format!("({g})") } else { g.to_string() };
                out.push((format!("{v} * {text}"), v.clone() * g));
            }
        }
        Ok(out)
    }

    /// `gens` together with their θ-multiples.
    pub fn spanning(&self, gens: &[Poly]) -> Result<Vec<Poly>> {
        let mut out: Vec<Poly> = gens.iter().map(|g| self.lift(g)).collect::<Result<_>>()?;
        if let Some(t) = self.ideal.ring().theta() {
            let theta = Poly::var(self.ideal.ring(), t);
            let first = out.clone();
            let mut power = Poly::one(self.ideal.ring());
            for _ in 1..self.theta_degree {
                power = power * theta.clone();
                for g in &first {
                    out.push(power.clone() * g.clone());
                }
            }
        }
        Ok(out)
    }
}

fn check_coeffs(c: &[RatFunc], scalars: Scalars) -> Option<Vec<UniPoly>> {
    let mut out = Vec::with_capacity(c.len());
    for x in c {
        if !x.is_polynomial() {
            return None;
        }
        if scalars == Scalars::Integer && !x.num().is_integral() {
            return None;
        }
        out.push(x.num().clone());
    }
    Some(out)
}

fn certify_free(setting: &Setting, basis: &[Poly], scalars: Scalars) -> Result<FreeBasisCert> {
    if scalars == Scalars::Integer && setting.theta_degree > 1 {
        return Err(Error::Unsupported("integer structure over a number field".into()));
    }
    let d = setting
        .dimension()
        .ok_or_else(|| Error::verification("dimension", "the fiber is infinite-dimensional"))?;
    let spanning = setting.spanning(basis)?;
    if spanning.len() != d {
        return Err(Error::verification(
            "size",
            format!("{} elements but the generic fiber has dimension {d}", spanning.len()),
        ));
    }
    let cols: Vec<Vec<RatFunc>> = spanning
        .iter()
        .map(|g| setting.coordinates(g))
        .collect::<Result<_>>()?;
    let solver = Solver::new(&cols).ok_or_else(|| {
        Error::verification("independence", "the elements are dependent over the base field")
    })?;
    let mut lines = Vec::new();
    for (label, product) in setting.products(&spanning)? {
        let c = solver.solve(&setting.coordinates(&product)?);
        let coeffs = check_coeffs(&c, scalars).ok_or_else(|| {
            Error::verification(
                "generation",
                format!("{label} is not a {scalars}[{}]-combination", setting.label),
            )
        })?;
        if !setting.check_expansion(&product, &coeffs, &spanning)? {
            return Err(Error::verification("generation", format!("{label}: expansion not in the ideal")));
        }
        lines.push(Expansion {
            product: label,
            coefficients: coeffs,
            route: Route::Coordinates,
        });
    }
    Ok(FreeBasisCert {
        scalars,
        base: setting.label.clone(),
        base_poly: setting.base_poly.to_string(),
        basis: basis.iter().map(|b| setting.lift(b)).collect::<Result<_>>()?,
        spanning,
        determinant: solver.det.display(&setting.label),
        lines,
    })
}

/// Checks that `basis` is a free basis of the coordinate ring over the base ring.
pub fn verify_free_basis(ideal: &IdealPresentation, base: &Poly, basis: &[Poly], scalars: Scalars) -> Result<FreeBasisCert> {
    let setting = Setting::new(ideal, base, scalars)?;
    certify_free(&setting, basis, scalars)
}

/// Checks that `gens` generate the coordinate ring over the base ring. With a
/// relation table, products are first rewritten line by line through it.
pub fn verify_generating_set(
    ideal: &IdealPresentation,
    base: &Poly,
    gens: &[Poly],
    scalars: Scalars,
    table: Option<&RelationTable>,
) -> Result<GenSetCert> {
    let setting = Setting::new(ideal, base, scalars)?;
    certify_generators(&setting, gens, scalars, table)
}

fn certify_generators(
    setting: &Setting,
    gens: &[Poly],
    scalars: Scalars,
    table: Option<&RelationTable>,
) -> Result<GenSetCert> {
    let d = setting
        .dimension()
        .ok_or_else(|| Error::verification("dimension", "the fiber is infinite-dimensional"))?;
    let spanning = setting.spanning(gens)?;
    let cols: Vec<Vec<RatFunc>> = spanning
        .iter()
        .map(|g| setting.coordinates(g))
        .collect::<Result<_>>()?;
    let pivots = independent_subset(&cols);
    if pivots.len() != d {
        return Err(Error::verification(
            "span",
            format!("the elements span a {}-dimensional space, not {d}", pivots.len()),
        ));
    }
    let extras: Vec<usize> = (0..spanning.len()).filter(|i| !pivots.contains(i)).collect();
    let sub: Vec<Vec<RatFunc>> = pivots.iter().map(|&i| cols[i].clone()).collect();
    let solver = Solver::new(&sub).expect("independent subset");
    let extra_coords: Vec<Vec<RatFunc>> = extras.iter().map(|&i| solver.solve(&cols[i])).collect();

    let checked_table = match table {
        Some(t) => Some(t.verify(setting)?),
        None => None,
    };
    let mut lines = Vec::new();
    for (label, product) in setting.products(&spanning)? {
        let via_table = checked_table
            .as_ref()
            .and_then(|t| t.rewrite(setting, &product, &spanning, scalars));
        let (coeffs, route) = match via_table {
            Some((c, steps)) => (c, Route::Table(steps)),
            None => {
                let a = solver.solve(&setting.coordinates(&product)?);
                let c = lattice_combination(&a, &extra_coords, scalars).ok_or_else(|| {
                    Error::verification(
                        "generation",
                        format!("{label} is not in the {scalars}[{}]-span", setting.label),
                    )
                })?;
                let mut full = vec![UniPoly::zero(); spanning.len()];
                for (k, &i) in pivots.iter().enumerate() {
                    full[i] = c[k].clone();
                }
                for (k, &i) in extras.iter().enumerate() {
                    full[i] = c[pivots.len() + k].clone();
                }
                (full, Route::Coordinates)
            }
        };
        if !setting.check_expansion(&product, &coeffs, &spanning)? {
            return Err(Error::verification("generation", format!("{label}: expansion not in the ideal")));
        }
        lines.push(Expansion {
            product: label,
            coefficients: coeffs,
            route,
        });
    }
    Ok(GenSetCert {
        scalars,
        base: setting.label.clone(),
        base_poly: setting.base_poly.to_string(),
        generators: spanning,
        table_lines: checked_table.map_or(0, |t| t.len()),
        lines,
    })
}

/// Coefficients (basis part, then extras) expressing a vector with basis
/// coordinates `a` over the base ring, when the extras are needed for at most
/// one index and the denominators are a single prime.
fn lattice_combination(a: &[RatFunc], extras: &[Vec<RatFunc>], scalars: Scalars) -> Option<Vec<UniPoly>> {
    if let Some(c) = check_coeffs(a, scalars) {
        let mut out = c;
        out.extend(extras.iter().map(|_| UniPoly::zero()));
        return Some(out);
    }
    if scalars != Scalars::Integer || extras.len() != 1 {
        return None;
    }
    let r = table::lattice_multiplier(a, &extras[0])?;
    let r_rf = RatFunc::from_poly(r.clone());
    let shifted: Vec<RatFunc> = a
        .iter()
        .zip(&extras[0])
        .map(|(x, e)| x.sub(&e.mul(&r_rf)))
        .collect();
    let mut out = check_coeffs(&shifted, scalars)?;
    out.push(r);
    Some(out)
}

/// Coordinates that are not θ, skipping the base itself.
fn coordinate_checks(ideal: &IdealPresentation, base: &Poly) -> Vec<Poly> {
    integrality::coordinate_functions(ideal)
        .into_iter()
        .filter(|c| c != base)
        .collect()
}

/// INFINITE with the first non-integral coordinate, plus the dependence degrees.
fn integrality_scan(
    ideal: &IdealPresentation,
    base: &Poly,
    kind: BaseKind,
) -> Result<std::result::Result<BTreeMap<String, u32>, RankResult>> {
    let mut degrees = BTreeMap::new();
    for c in coordinate_checks(ideal, base) {
        match integrality::is_integral(ideal, &c, base, kind)? {
            Dependence::Integral { degree, .. } => {
                degrees.insert(c.to_string(), degree);
            }
            Dependence::NotIntegral { witness } => return Ok(Err(RankResult::infinite(c, witness))),
        }
    }
    Ok(Ok(degrees))
}

fn standard_basis(setting: &Setting) -> Option<Vec<Poly>> {
    let ring = setting.fiber.ring();
    let theta = ring.theta().and_then(|_| {
        let name = &setting.ideal.ring().vars()[setting.ideal.ring().theta().unwrap()];
        ring.index_of(name)
    });
    let ms: Vec<Monomial> = setting.fiber.standard_monomials()?.to_vec();
    let target = setting.ideal.ring();
    ms.into_iter()
        .filter(|m| theta.is_none_or(|t| m.get(t) == 0))
        .map(|m| Poly::monomial(ring, m).to_ring(target).ok())
        .collect()
}

/// Products of powers of the multipliers below their dependence degrees.
fn product_generators(setting: &Setting, degrees: &BTreeMap<String, u32>) -> Result<Vec<Poly>> {
    let ring = setting.ideal.ring();
    let mut gens = vec![Poly::one(ring)];
    for v in &setting.multipliers {
        let Some(&deg) = degrees.get(&v.to_string()) else {
            continue;
        };
        let mut next = Vec::new();
        for g in &gens {
            let mut p = g.clone();
            for _ in 0..deg {
                next.push(p.clone());
                p = p * v.clone();
            }
        }
        gens = next;
        if gens.len() > 4096 {
            return Err(Error::Unsupported("generating set too large".into()));
        }
    }
    Ok(gens)
}

/// A free basis found by Hermite reduction of the product generating set.
fn hermite_basis(setting: &Setting, degrees: &BTreeMap<String, u32>) -> Result<Vec<Poly>> {
    if setting.theta_degree > 1 {
        return Err(Error::Unsupported("Hermite reduction over a number field".into()));
    }
    let gens = product_generators(setting, degrees)?;
    let cols: Vec<Vec<RatFunc>> = gens.iter().map(|g| setting.coordinates(g)).collect::<Result<_>>()?;
    let mut den = UniPoly::one();
    for c in cols.iter().flatten() {
        let g = den.gcd(c.den());
        den = den.mul(&c.den().div_exact(&g).unwrap());
    }
    let rows: Vec<Vec<UniPoly>> = cols
        .iter()
        .map(|col| {
            col.iter()
                .map(|c| c.num().mul(&den.div_exact(c.den()).unwrap()))
                .collect()
        })
        .collect();
    let (_, u) = hermite(&rows);
    let mut out = Vec::new();
    for row in u {
        let mut e = Poly::zero(setting.ideal.ring());
        for (c, g) in row.iter().zip(&gens) {
            if !c.is_zero() {
                e = e + setting.base_poly(c) * g.clone();
            }
        }
        let e = setting.check.normal_form(&e)?;
        out.push(if e.is_zero() { e } else { e.primitive() });
    }
    Ok(out)
}

fn rank_over(
    ideal: &IdealPresentation,
    base: &Poly,
    candidate: Option<&[Poly]>,
    scalars: Scalars,
) -> Result<RankResult> {
    let kind = if scalars == Scalars::Complex { BaseKind::Field } else { BaseKind::Rational };
    let degrees = match integrality_scan(ideal, base, kind)? {
        Ok(d) => d,
        Err(inf) => return Ok(inf),
    };
    let setting = Setting::new(ideal, base, scalars)?;
    let mut last = Error::verification("basis", "no candidate basis");
    let mut attempts: Vec<Vec<Poly>> = Vec::new();
    if let Some(s) = standard_basis(&setting) {
        attempts.push(s);
    }
    if let Some(c) = candidate {
        attempts.push(c.to_vec());
    }
    for basis in attempts {
        match certify_free(&setting, &basis, scalars) {
            Ok(cert) => {
                return Ok(RankResult {
                    value: RankValue::Exact(cert.basis.len()),
                    basis: Some(cert),
                    generators: None,
                    nonfree: None,
                })
            }
            Err(e @ Error::Verification { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    match hermite_basis(&setting, &degrees) {
        Ok(basis) => {
            let cert = certify_free(&setting, &basis, scalars)?;
            Ok(RankResult {
                value: RankValue::Exact(cert.basis.len()),
                basis: Some(cert),
                generators: None,
                nonfree: None,
            })
        }
        Err(Error::Unsupported(_)) => Err(last),
        Err(e) => Err(e),
    }
}

/// Rank of ℂ[X] over ℂ[base]. The certified basis is the standard-monomial
/// basis when that works over ℚ[base], then `candidate`, then a Hermite-reduced
/// basis.
pub fn rank_c(ideal: &IdealPresentation, base: &Poly, candidate: Option<&[Poly]>) -> Result<RankResult> {
    rank_over(ideal, base, candidate, Scalars::Complex)
}

/// Rank of T_ℚ(X) over ℚ[base]; an ideal over a number field is contracted first.
pub fn rank_q(ideal: &IdealPresentation, base: &Poly, candidate: Option<&[Poly]>) -> Result<RankResult> {
    rank_over(ideal, base, candidate, Scalars::Rational)
}

/// Bounds on the rank of T(X) over ℤ[base]: the ℚ-rank below, a verified
/// generating set above.
pub fn rank_z_bounds(
    ideal: &IdealPresentation,
    base: &Poly,
    claimed: Option<&[Poly]>,
    table: Option<&RelationTable>,
    nonfree: Option<&NonfreeClaim>,
) -> Result<RankResult> {
    let q = rank_q(ideal, base, None)?;
    let lower = match q.value {
        RankValue::Exact(n) => n,
        _ => return Ok(q),
    };
    let setting = Setting::new(ideal, base, Scalars::Integer)?;
    let gens: Vec<Poly> = match claimed {
        Some(c) => c.to_vec(),
        None => q.basis.as_ref().map(|b| b.basis.clone()).unwrap_or_default(),
    };
    if gens.len() == lower {
        match certify_free(&setting, &gens, Scalars::Integer) {
            Ok(cert) => {
                return Ok(RankResult {
                    value: RankValue::Exact(lower),
                    basis: Some(cert),
                    generators: None,
                    nonfree: None,
                })
            }
            Err(Error::Verification { .. }) if claimed.is_none() => {}
            Err(e @ Error::Verification { .. }) => {
                if table.is_none() {
                    return Err(e);
                }
            }
            Err(e) => return Err(e),
        }
    }
    let genset = match certify_generators(&setting, &gens, Scalars::Integer, table) {
        Ok(g) => g,
        Err(e @ Error::Verification { .. }) if claimed.is_some() => return Err(e),
        Err(Error::Verification { .. }) | Err(Error::Unsupported(_)) => {
            return Ok(RankResult {
                value: RankValue::Bounds { lower, upper: None },
                basis: None,
                generators: None,
                nonfree: None,
            })
        }
        Err(e) => return Err(e),
    };
    let upper = genset.generators.len();
    let nf = match nonfree {
        Some(claim) => Some(nonfree::certify(&setting, claim)?),
        None => None,
    };
    let value = if upper == lower || (nf.is_some() && upper == lower + 1) {
        RankValue::Exact(upper)
    } else {
        RankValue::Bounds { lower, upper: Some(upper) }
    };
    Ok(RankResult {
        value,
        basis: None,
        generators: Some(genset),
        nonfree: nf,
    })
}

/// Parses a list of polynomials in the ideal's ring.
pub fn parse_list(ideal: &IdealPresentation, items: &[&str]) -> Result<Vec<Poly>> {
    items.iter().map(|s| Poly::parse(ideal.ring(), s)).collect()
}

#[cfg(test)]
mod tests;
