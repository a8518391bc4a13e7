//! p-adic Newton polygons and algebraic-integer tests.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Rational, UniPoly};

const TRIAL_LIMIT: u64 = 1_000_000;
const PRIME_LIMIT: u64 = 1_000_000_000_000;

/// Deterministic primality by trial division; rejects `n > 10¹²`.
pub fn is_prime(n: &BigInt) -> Result<bool> {
    if n.is_negative() {
        return Ok(false);
    }
    let v = n
        .to_u64()
        .filter(|&v| v <= PRIME_LIMIT)
        .ok_or_else(|| Error::PrimeTooLarge(n.clone()))?;
    if v < 2 {
        return Ok(false);
    }
    let mut d = 2u64;
    while d * d <= v {
        if v % d == 0 {
            return Ok(false);
        }
        d += 1;
    }
    Ok(true)
}

fn require_prime(p: &BigInt) -> Result<()> {
    if is_prime(p)? {
        Ok(())
    } else {
        Err(Error::NotPrime(p.clone()))
    }
}

/// ν_p(n) for nonzero `n`.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero());
    let mut n = n.abs();
    let mut k = 0;
    while (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

/// Prime divisors of |n| by trial division up to 10⁶; a cofactor left over is
/// accepted only when it is at most 10¹² (and hence prime).
pub fn prime_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n && d <= BigInt::from(TRIAL_LIMIT) {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        if n > BigInt::from(PRIME_LIMIT) && &d * &d <= n {
            return Err(Error::PrimeTooLarge(n));
        }
        out.push(n);
    }
    Ok(out)
}

fn integer_coeffs(h: &UniPoly) -> Result<Vec<BigInt>> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !h.is_integral() {
        return Err(Error::Invalid("coefficients must be integers".into()));
    }
    Ok(h.coeffs().iter().map(|c| c.numer().clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: (usize, i64),
    pub end: (usize, i64),
    pub slope: Rational,
    pub length: usize,
}

impl Segment {
    /// Valuation of the roots this segment accounts for.
    pub fn root_valuation(&self) -> Rational {
        -self.slope.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub prime: BigInt,
    /// `(i, ν_p(cᵢ))` for the nonzero coefficients.
    pub points: Vec<(usize, i64)>,
    pub vertices: Vec<(usize, i64)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Root valuations with multiplicities.
    pub fn root_valuations(&self) -> Vec<(Rational, usize)> {
        self.segments.iter().map(|s| (s.root_valuation(), s.length)).collect()
    }

    pub fn has_negative_root_valuation(&self) -> bool {
        self.segments.iter().any(|s| s.slope.is_positive())
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "newton polygon at p = {}", self.prime)?;
        let v: Vec<String> = self.vertices.iter().map(|(i, v)| format!("({i}, {v})")).collect();
        writeln!(f, "vertices: {}", v.join(" "))?;
        for s in &self.segments {
            writeln!(
                f,
                "segment slope {} length {}: root valuation {}",
                s.slope,
                s.length,
                s.root_valuation()
            )?;
        }
        Ok(())
    }
}

/// Lower convex hull of `(i, ν_p(cᵢ))` for `h = Σ cᵢ tⁱ ∈ ℤ[t]`.
pub fn newton_polygon(h: &UniPoly, p: &BigInt) -> Result<NewtonPolygon> {
    require_prime(p)?;
    let c = integer_coeffs(h)?;
    let points: Vec<(usize, i64)> = c
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, valuation(x, p) as i64))
        .collect();
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly below segment a–pt
            let cross = (b.0 as i64 - a.0 as i64) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 as i64 - a.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let len = b.0 - a.0;
            Segment {
                start: a,
                end: b,
                slope: Rational::new((b.1 - a.1).into(), (len as i64).into()),
                length: len,
            }
        })
        .collect();
    Ok(NewtonPolygon {
        prime: p.clone(),
        points,
        vertices: hull,
        segments,
    })
}

/// Algebraic number given by its minimal polynomial, stored primitive with
/// positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    minpoly: UniPoly,
}

impl AlgebraicNumber {
    pub fn new(minpoly: &UniPoly) -> Result<Self> {
        match minpoly.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::Invalid("minimal polynomial must have degree at least 1".into())),
            _ => {}
        }
        let c = minpoly.primitive_integer();
        let minpoly = UniPoly::new(c.into_iter().map(Rational::from_integer).collect());
        Ok(AlgebraicNumber { minpoly })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(&UniPoly::from_ints(coeffs))
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.minpoly.lc().numer().clone()
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {}", self.minpoly.display("t"))
    }
}

/// Leading coefficient ±1, cross-checked against the Newton polygons at the
/// primes dividing it.
pub fn is_algebraic_integer(a: &AlgebraicNumber) -> Result<bool> {
    let by_lc = a.leading_coefficient().abs().is_one();
    let by_polygon = integral_by_polygons(a)?;
    if by_lc != by_polygon {
        return Err(Error::verification(
            "algebraic integer",
            format!("routes disagree on {a}"),
        ));
    }
    Ok(by_lc)
}

/// No prime gives a root of negative valuation. Only primes dividing the
/// leading coefficient can.
pub fn integral_by_polygons(a: &AlgebraicNumber) -> Result<bool> {
    for q in prime_divisors(&a.leading_coefficient())? {
        if newton_polygon(a.minpoly(), &q)?.has_negative_root_valuation() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClWitness {
    Found {
        q: BigInt,
        r: u32,
        transformed: UniPoly,
        segment: Segment,
    },
    None(String),
}

impl ClWitness {
    /// Re-checks a found witness: negative root valuation at a prime q ≠ p
    /// that divides the leading coefficient.
    pub fn verify(&self, h: &UniPoly, p: &BigInt) -> Result<bool> {
        let ClWitness::Found { q, transformed, segment, .. } = self else {
            return Ok(false);
        };
        if q == p || !is_prime(q)? {
            return Ok(false);
        }
        if !(integer_coeffs(h)?.last().unwrap() % q).is_zero() {
            return Ok(false);
        }
        let poly = newton_polygon(transformed, q)?;
        Ok(segment.root_valuation().is_negative() && poly.segments.contains(segment))
    }
}

impl fmt::Display for ClWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClWitness::Found { q, r, transformed, segment } => write!(
                f,
                "q = {q}, r = {r}, h* = {}, segment {:?}-{:?} with root valuation {}",
                transformed.display("t"),
                segment.start,
                segment.end,
                segment.root_valuation()
            ),
            ClWitness::None(reason) => write!(f, "NONE ({reason})"),
        }
    }
}

/// For `h = c₀ + … + c_k p^r t^k` with `(c_k, p) = 1` and `c_k ≠ ±1`, finds a
/// prime `q ≠ p` and a segment of the polygon of `h*` at `q` giving roots of
/// negative valuation.
pub fn cl_witness(h: &UniPoly, p: &BigInt) -> Result<ClWitness> {
    require_prime(p)?;
    let c = integer_coeffs(h)?;
    let k = c.len() - 1;
    if k == 0 {
        return Ok(ClWitness::None("constant polynomial".into()));
    }
    let lead = &c[k];
    let r = valuation(lead, p);
    let ck = lead / p.pow(r);
    if ck.abs().is_one() {
        return Ok(ClWitness::None("leading coefficient is ± a power of p".into()));
    }
    let mut a: Vec<Rational> = (0..k)
        .map(|i| Rational::from_integer(&c[i] * p.pow(r * (k - 1 - i) as u32)))
        .collect();
    a.push(Rational::from_integer(ck.clone()));
    let transformed = UniPoly::new(a);
    for q in prime_divisors(&ck)? {
        let poly = newton_polygon(&transformed, &q)?;
        if let Some(seg) = poly.segments.iter().find(|s| s.slope.is_positive()) {
            return Ok(ClWitness::Found {
                q,
                r,
                transformed,
                segment: seg.clone(),
            });
        }
    }
    Ok(ClWitness::None("no prime divisor of c_k gives a negative root valuation (is h primitive?)".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AniVerdict {
    /// Some trace value is not an algebraic integer while the slope value is.
    ClosedSurfaceEvidence { word: String },
    NoEvidence,
}

impl fmt::Display for AniVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AniVerdict::ClosedSurfaceEvidence { word } => {
                write!(f, "ANI_CLOSED_SURFACE_EVIDENCE (non-integral trace at {word})")
            }
            AniVerdict::NoEvidence => f.write_str("NO_EVIDENCE"),
        }
    }
}

/// `slope_value` must be the trace of a slope that is not a boundary slope;
/// the caller asserts this.
pub fn ani_check(values: &[(String, AlgebraicNumber)], slope_value: &AlgebraicNumber) -> Result<AniVerdict> {
    if !is_algebraic_integer(slope_value)? {
        return Ok(AniVerdict::NoEvidence);
    }
    for (word, v) in values {
        if !is_algebraic_integer(v)? {
            return Ok(AniVerdict::ClosedSurfaceEvidence { word: word.clone() });
        }
    }
    Ok(AniVerdict::NoEvidence)
}

#[cfg(test)]
mod tests;
