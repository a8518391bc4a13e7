//! Non-freeness certificates: a rank-one syzygy among summand generators and
//! a parity obstruction to projectivity.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::IdealPresentation;
use crate::poly::{Poly, UniPoly};

use super::linalg::{kernel, primitive_vector};
use super::{Scalars, Setting};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonfreeClaim {
    pub summand: Vec<Poly>,
    /// Base-ring polynomials, one per summand generator.
    pub syzygy: Vec<Poly>,
    /// The ideal `(p, base)` used for the parity argument.
    pub obstruction: (Poly, Poly),
    /// Remaining generators; when non-empty the direct-sum stage is checked.
    pub complement: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonFreenessCert {
    pub base: String,
    pub summand: Vec<Poly>,
    pub syzygy: Vec<UniPoly>,
    pub kernel: Vec<UniPoly>,
    pub prime: i64,
    pub gamma: Vec<UniPoly>,
    pub lift_constants: Vec<BigInt>,
    pub parity_sum: BigInt,
    pub complement: usize,
}

impl NonFreenessCert {
    pub fn to_text(&self) -> String {
        let b = &self.base;
        let tuple = |v: &[UniPoly]| {
            format!("({})", v.iter().map(|c| c.display(b)).collect::<Vec<_>>().join(", "))
        };
        let mut out = String::new();
        out.push_str(&format!("non-free over Z[{b}]\n"));
        out.push_str(&format!(
            "summand: {}\n",
            self.summand.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
        ));
        out.push_str(&format!("syzygy: {}\n", tuple(&self.syzygy)));
        out.push_str("(a) syzygy annihilates the summand generators: ok\n");
        out.push_str(&format!(
            "(b) kernel over Q({b}) has dimension 1, primitive generator {}\n",
            tuple(&self.kernel)
        ));
        let consts: Vec<String> = self.lift_constants.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!(
            "(c) obstruction ideal ({}, {b}): gamma = {}, lift constant terms ({}), degree-one coefficient {} = {} mod {}\n",
            self.prime,
            tuple(&self.gamma),
            consts.join(", "),
            self.parity_sum,
            self.parity_sum.mod_floor(&BigInt::from(self.prime)),
            self.prime
        ));
        if self.complement > 0 {
            out.push_str(&format!(
                "(d) direct sum with {} complementary generators: kernel supported on the summand\n",
                self.complement
            ));
        }
        out.push_str("conclusion: torsion free but not free\n");
        out
    }
}

impl fmt::Display for NonFreenessCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Checks a non-freeness claim for T(X) over ℤ[base].
pub fn verify_nonfree(ideal: &IdealPresentation, base: &Poly, claim: &NonfreeClaim) -> Result<NonFreenessCert> {
    let setting = Setting::new(ideal, base, Scalars::Integer)?;
    certify(&setting, claim)
}

fn stage(s: &str, detail: impl Into<String>) -> Error {
    Error::verification(s, detail)
}

fn as_base(setting: &Setting, p: &Poly) -> Result<UniPoly> {
    let p = setting.lift(p)?;
    if p.support().iter().any(|&v| v != setting.base_idx) {
        return Err(Error::Invalid(format!("{p} is not a polynomial in {}", setting.label)));
    }
    Ok(p.to_univariate(setting.base_idx).unwrap_or_else(UniPoly::zero))
}

fn same_up_to_sign(a: &[UniPoly], b: &[UniPoly]) -> bool {
    a == b || a.iter().zip(b).all(|(x, y)| *x == y.neg())
}

pub(crate) fn certify(setting: &Setting, claim: &NonfreeClaim) -> Result<NonFreenessCert> {
    let n = claim.summand.len();
    if claim.syzygy.len() != n {
        return Err(Error::Invalid("syzygy length differs from the summand".into()));
    }
    let syz: Vec<UniPoly> = claim.syzygy.iter().map(|p| as_base(setting, p)).collect::<Result<_>>()?;
    if syz.iter().all(|s| s.is_zero()) {
        return Err(stage("(a)", "zero syzygy"));
    }
    if syz.iter().any(|s| !s.is_integral()) {
        return Err(stage("(a)", "syzygy coefficients are not integral"));
    }

    let zero = Poly::zero(setting.ideal.ring());
    if !setting.check_expansion(&zero, &syz, &claim.summand)? {
        return Err(stage("(a)", "the syzygy does not annihilate the summand generators"));
    }

    let cols = claim
        .summand
        .iter()
        .map(|g| setting.coordinates(g))
        .collect::<Result<Vec<_>>>()?;
    let ker = kernel(&cols);
    if ker.len() != 1 {
        return Err(stage("(b)", format!("kernel has dimension {}, expected 1", ker.len())));
    }
    let gen = primitive_vector(&ker[0]);
    if !same_up_to_sign(&gen, &syz) {
        return Err(stage("(b)", "the syzygy is not a primitive kernel generator"));
    }
    let gen = syz.clone();

    let (prime, gamma, consts, sum) = parity(setting, claim, &syz)?;

    let mut complement = 0;
    if !claim.complement.is_empty() {
        let mut all = claim.complement.clone();
        all.extend(claim.summand.iter().cloned());
        let cols = all.iter().map(|g| setting.coordinates(g)).collect::<Result<Vec<_>>>()?;
        let ker = kernel(&cols);
        if ker.len() != 1 {
            return Err(stage("(d)", format!("relations among all generators have rank {}", ker.len())));
        }
        let v = primitive_vector(&ker[0]);
        let m = claim.complement.len();
        if v[..m].iter().any(|c| !c.is_zero()) || !same_up_to_sign(&v[m..], &syz) {
            return Err(stage("(d)", "a relation involves the complementary generators"));
        }
        complement = m;
    }

    Ok(NonFreenessCert {
        base: setting.label.clone(),
        summand: claim.summand.iter().map(|g| setting.lift(g)).collect::<Result<_>>()?,
        syzygy: syz,
        kernel: gen,
        prime,
        gamma,
        lift_constants: consts,
        parity_sum: sum,
        complement,
    })
}

type Parity = (i64, Vec<UniPoly>, Vec<BigInt>, BigInt);

/// A homomorphism γ to J = (p, B) given by a Koszul vector of the syzygy; a
/// lift through (P, Q) ↦ pP + BQ forces Σ sᵢ[1]·Pᵢ(0) ≡ 0 mod p once every
/// sᵢ(0) is divisible by p.
fn parity(setting: &Setting, claim: &NonfreeClaim, syz: &[UniPoly]) -> Result<Parity> {
    let (a, b) = (&claim.obstruction.0, &claim.obstruction.1);
    let a = as_base(setting, a)?;
    let b = as_base(setting, b)?;
    let is_base = |u: &UniPoly| *u == UniPoly::x();
    let prime_of = |u: &UniPoly| -> Option<i64> {
        if !u.is_constant() || !u.lc().is_integer() {
            return None;
        }
        let p = u.lc().numer().abs().to_i64()?;
        (p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)).then_some(p)
    };
    let p = match (prime_of(&a), prime_of(&b)) {
        (Some(p), None) if is_base(&b) => p,
        (None, Some(p)) if is_base(&a) => p,
        _ => {
            return Err(Error::Unsupported(format!(
                "obstruction ideal must be (p, {}) with p prime",
                setting.label
            )))
        }
    };
    let pb = BigInt::from(p);
    let c0 = |u: &UniPoly| u.coeff(0).numer().clone();
    let c1 = |u: &UniPoly| u.coeff(1).numer().clone();
    if syz.iter().any(|s| !c0(s).mod_floor(&pb).is_zero()) {
        return Err(stage("(c)", format!("syzygy constant terms are not all divisible by {p}")));
    }
    let n = syz.len();
    for i in (0..n).rev() {
        for j in (i + 1..n).rev() {
            let mut gamma = vec![UniPoly::zero(); n];
            gamma[i] = syz[j].clone();
            gamma[j] = syz[i].neg();
            if gamma.iter().any(|g| !c0(g).mod_floor(&pb).is_zero()) {
                continue;
            }
            let consts: Vec<BigInt> = gamma.iter().map(|g| c0(g) / &pb).collect();
            let sum: BigInt = syz.iter().zip(&consts).map(|(s, k)| c1(s) * k).sum();
            if !sum.mod_floor(&pb).is_zero() {
                return Ok((p, gamma, consts, sum));
            }
        }
    }
    Err(stage("(c)", "no parity obstruction found"))
}

