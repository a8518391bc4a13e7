//! Sparse exact multivariate polynomials over ℤ, ℚ and ℚ(θ).

mod field;
mod monomial;
mod order;
pub(crate) mod parse;
pub(crate) mod print;
mod ring;
mod univariate;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use field::{Irreducibility, NumberField};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use ring::{Domain, PolyRing};
pub use parse::parse_monomial;
pub use univariate::{RatFunc, UniPoly};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical polynomial from terms without reducing powers of θ.
pub(crate) fn raw_poly(ring: &PolyRing, terms: Vec<(Monomial, Rational)>) -> Poly {
    let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(terms.len());
    for (m, c) in terms {
        *acc.entry(m).or_insert_with(Rational::zero) += c;
    }
    Poly::from_map(ring, acc)
}

/// Sparse polynomial; terms are sorted in descending order under the ring's order.
#[derive(Clone)]
pub struct Poly {
    ring: PolyRing,
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero(ring: &PolyRing) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &PolyRing, c: Rational) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &PolyRing, c: i64) -> Self {
        Self::constant(ring, rat(c))
    }

    pub fn one(ring: &PolyRing) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn term(ring: &PolyRing, m: Monomial, c: Rational) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    pub fn monomial(ring: &PolyRing, m: Monomial) -> Self {
        Self::term(ring, m, Rational::one())
    }

    /// The variable `index`.
    pub fn var(ring: &PolyRing, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index, 1))
    }

    pub fn var_named(ring: &PolyRing, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.var_index(name)?))
    }

    /// Builds a canonical polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(ring: &PolyRing, terms: Vec<(Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.len(), ring.nvars());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let p = Self::from_map(ring, acc);
        if ring.theta().is_some() {
            p.reduce_theta()
        } else {
            p
        }
    }

    fn from_map(ring: &PolyRing, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<(Monomial, Rational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Rewrites powers θ^k with k ≥ deg via the minimal polynomial.
    fn reduce_theta(self) -> Self {
        let (Some(t), Some(field)) = (self.ring.theta(), self.ring.number_field()) else {
            return self;
        };
        let d = field.degree() as u32;
        if self.terms.iter().all(|(m, _)| m.get(t) < d) {
            return self;
        }
        let tail: Vec<Rational> = field.minpoly().coeffs()[..d as usize].to_vec();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        let mut stack = self.terms;
        while let Some((m, c)) = stack.pop() {
            let e = m.get(t);
            if e < d {
                *acc.entry(m).or_insert_with(Rational::zero) += c;
                continue;
            }
            for (k, a) in tail.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut m2 = m.clone();
                m2.exponents_mut()[t] = e - d + k as u32;
                stack.push((m2, -(&c * a)));
            }
        }
        Self::from_map(&self.ring, acc)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        self.is_constant().then(|| self.terms[0].1.clone())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(n, _)| n == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.get(var)).max()
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for v in m.support() {
                used[v] = true;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.get(var) > 0)
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_of_power(&self, var: usize, k: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.get(var) == k)
            .map(|(m, c)| {
                let mut m = m.clone();
                m.exponents_mut()[var] = 0;
                (m, c.clone())
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    /// Leading coefficient with respect to `var`.
    pub fn leading_coeff_in(&self, var: usize) -> Option<Poly> {
        let d = self.degree_in(var)?;
        Some(self.coeff_of_power(var, d))
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring, other.ring
            )))
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let pick = if i == a.len() {
                std::cmp::Ordering::Less
            } else if j == b.len() {
                std::cmp::Ordering::Greater
            } else {
                order.cmp(&a[i].0, &b[j].0)
            };
            match pick {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Poly) -> Poly {
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        let p = Self::from_map(&self.ring, acc);
        if self.ring.theta().is_some() {
            p.reduce_theta()
        } else {
            p
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        let p = Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a * c))
                .collect(),
        };
        if self.ring.theta().is_some() {
            p.reduce_theta()
        } else {
            p
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base);
            }
        }
        acc
    }

    /// Scaled to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// `(c, q)` with `self = c·q`, q integral, primitive, leading coefficient positive.
    pub fn content_and_primitive(&self) -> Result<(Rational, Poly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut content = Rational::new(num, den);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        Ok((content, self.scale(&inv)))
    }

    /// Primitive integral associate; zero stays zero.
    pub fn primitive(&self) -> Poly {
        match self.content_and_primitive() {
            Ok((_, p)) => p,
            Err(_) => self.clone(),
        }
    }

    /// Re-expresses the polynomial in `ring`, matching variables by name.
    pub fn to_ring(&self, ring: &PolyRing) -> Result<Poly> {
        if self.ring.same(ring) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| ring.index_of(v))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; ring.nvars()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = x,
                    None => {
                        return Err(Error::UndeclaredVariable(self.ring.vars()[i].clone()))
                    }
                }
            }
            terms.push((Monomial::from_exponents(e), c.clone()));
        }
        Ok(Poly::from_terms(ring, terms))
    }

    /// Substitutes polynomials (in `target`) for variables; unmapped variables
    /// are carried over by name.
    pub fn substitute(&self, values: &HashMap<String, Poly>, target: &PolyRing) -> Result<Poly> {
        let images: Vec<Poly> = self
            .ring
            .vars()
            .iter()
            .enumerate()
            .map(|(i, name)| match values.get(name) {
                Some(p) => p.to_ring(target),
                None => Poly::var(&self.ring, i).to_ring(target),
            })
            .collect::<Result<_>>()?;
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().product(&images[i]);
                    powers[i].push(next);
                }
                t = t.product(&powers[i][e as usize]);
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    /// Exact value at a rational point; every occurring variable must be bound.
    pub fn eval(&self, point: &HashMap<String, Rational>) -> Result<Rational> {
        let vals: Vec<Option<&Rational>> =
            self.ring.vars().iter().map(|v| point.get(v)).collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = vals[i]
                    .ok_or_else(|| Error::UnboundVariable(self.ring.vars()[i].clone()))?;
                t *= num_traits::pow(v.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluates by variable index; `point` has one entry per ring variable.
    pub fn eval_at(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Univariate view in `var`; `None` if other variables occur.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(var).unwrap_or(0) as usize + 1];
        for (m, c) in &self.terms {
            if m.support().any(|v| v != var) {
                return None;
            }
            coeffs[m.get(var) as usize] += c;
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_univariate(ring: &PolyRing, var: usize, u: &UniPoly) -> Poly {
        let terms = u
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| (Monomial::var(ring.nvars(), var, k as u32), c.clone()))
            .collect();
        Poly::from_terms(ring, terms)
    }

    /// Coefficients with respect to `var`, each a univariate polynomial in `base`.
    /// `None` if any other variable occurs.
    pub fn bivariate_coeffs(&self, var: usize, base: usize) -> Option<Vec<UniPoly>> {
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Vec::<Rational>::new(); d + 1];
        for (m, c) in &self.terms {
            if m.support().any(|v| v != var && v != base) {
                return None;
            }
            let k = m.get(var) as usize;
            let j = m.get(base) as usize;
            if out[k].len() <= j {
                out[k].resize(j + 1, Rational::zero());
            }
            out[k][j] += c;
        }
        Some(out.into_iter().map(UniPoly::new).collect())
    }

    pub fn parse(ring: &PolyRing, text: &str) -> Result<Poly> {
        parse::parse_poly(ring, text)
    }

    /// Partial derivative.
    pub fn derivative(&self, var: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.get(var) > 0)
            .map(|(m, c)| {
                let e = m.get(var);
                let mut m = m.clone();
                m.exponents_mut()[var] = e - 1;
                (m, c * rat(e as i64))
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::poly_to_string(self))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", print::poly_to_string(self))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                if let Err(e) = self.check_ring(rhs) {
                    panic!("{e}");
                }
                $body(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Poly, b: &Poly| a.merge(b, false));
binop!(Sub, sub, |a: &Poly, b: &Poly| a.merge(b, true));
binop!(Mul, mul, |a: &Poly, b: &Poly| a.product(b));

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::lex(&["l", "z", "y", "t"])
    }

    fn p(r: &PolyRing, s: &str) -> Poly {
        Poly::parse(r, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        assert_eq!(p(&r, "y-1") * p(&r, "y+1"), p(&r, "y^2-1"));
    }

    #[test]
    fn self_cancellation() {
        let r = PolyRing::lex(&["m", "z"]);
        let a = p(&r, "z^4-m*z^2-z^2+1");
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn hand_expansion_and_point_check() {
        let r = ring();
        let prod = p(&r, "(2+l)*z^2") * p(&r, "2*t^2");
        assert_eq!(prod, p(&r, "(4+2*l)*z^2*t^2"));
        let pt: HashMap<String, Rational> = [("l", 1), ("z", 2), ("t", 3)]
            .iter()
            .map(|(k, v)| (k.to_string(), rat(*v)))
            .collect();
        // (2+1)·4 · 2·9 = 216
        assert_eq!(prod.eval(&pt).unwrap(), rat(216));
    }

    #[test]
    fn content_examples() {
        let r = ring();
        let f = p(&r, "4*v - 6*t*y + t*y^3".replace('v', "l").as_str());
        let (c, q) = f.content_and_primitive().unwrap();
        assert_eq!(c, rat(1));
        assert_eq!(q, f);
        let (c, q) = p(&r, "3/2*z^2 + 3*z").content_and_primitive().unwrap();
        assert_eq!(c, Rational::new(3.into(), 2.into()));
        assert_eq!(q, p(&r, "z^2+2*z"));
        let g = p(&r, "-2*y+4");
        let (c, q) = g.content_and_primitive().unwrap();
        assert_eq!(q, p(&r, "y-2"));
        assert_eq!(q.scale(&c), g);
        assert!(Poly::zero(&r).content_and_primitive().is_err());
    }

    #[test]
    fn eval_examples() {
        let r = PolyRing::lex(&["x", "y"]);
        let f = p(&r, "y^2+(-1-x^2)*y+(-1+2*x^2)");
        let pt: HashMap<String, Rational> =
            [("x".to_string(), rat(2)), ("y".to_string(), rat(3))].into();
        assert_eq!(f.eval(&pt).unwrap(), rat(1));
        let zero: HashMap<String, Rational> =
            [("x".to_string(), rat(0)), ("y".to_string(), rat(0))].into();
        assert_eq!(f.eval(&zero).unwrap(), rat(-1));
        let only_x: HashMap<String, Rational> = [("x".to_string(), rat(0))].into();
        assert!(matches!(f.eval(&only_x), Err(Error::UnboundVariable(v)) if v == "y"));
    }

    #[test]
    fn theta_reduces() {
        let r = PolyRing::lex(&["th", "z"])
            .with_number_field(NumberField::gaussian("th"))
            .unwrap();
        assert_eq!(p(&r, "th^2"), Poly::from_int(&r, -1));
        assert_eq!(p(&r, "th^3*z"), p(&r, "-th*z"));
    }

    #[test]
    fn mismatched_rings_rejected() {
        let a = Poly::one(&PolyRing::lex(&["x"]));
        let b = Poly::one(&PolyRing::lex(&["y"]));
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch(_))));
    }
}
