use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::univariate::small_divisors;
use super::{Rational, UniPoly};
use crate::error::{Error, Result};

/// Irreducibility status of a minimal polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Irreducibility {
    Verified,
    /// Degree above 4: taken on the caller's word.
    Asserted,
}

/// A simple extension ℚ(θ) given by the minimal polynomial of θ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    name: String,
    minpoly: UniPoly,
    status: Irreducibility,
}

impl NumberField {
    /// Checks monicity, and irreducibility up to degree 4.
    pub fn new(name: &str, minpoly: UniPoly) -> Result<Self> {
        let deg = minpoly
            .degree()
            .ok_or_else(|| Error::BadNumberField("zero minimal polynomial".into()))?;
        if deg == 0 {
            return Err(Error::BadNumberField("constant minimal polynomial".into()));
        }
        if !minpoly.lc().is_one() {
            return Err(Error::BadNumberField(format!(
                "minimal polynomial {} is not monic",
                minpoly.display(name)
            )));
        }
        let status = if deg <= 4 {
            if !irreducible_low_degree(&minpoly) {
                return Err(Error::BadNumberField(format!(
                    "{} is reducible over Q",
                    minpoly.display(name)
                )));
            }
            Irreducibility::Verified
        } else {
            Irreducibility::Asserted
        };
        Ok(NumberField {
            name: name.to_string(),
            minpoly,
            status,
        })
    }

    /// ℚ(i).
    pub fn gaussian(name: &str) -> Self {
        Self::new(name, UniPoly::from_ints(&[1, 0, 1])).expect("x^2+1 is irreducible")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn status(&self) -> Irreducibility {
        self.status
    }
}

/// Irreducibility over ℚ for degree ≤ 4: no rational root, and for quartics no
/// splitting into two integer quadratics.
fn irreducible_low_degree(f: &UniPoly) -> bool {
    let deg = f.degree().unwrap();
    if deg == 1 {
        return true;
    }
    if !f.rational_roots().is_empty() {
        return false;
    }
    if deg <= 3 {
        return true;
    }
    let ints = integral_monic(f);
    !has_quadratic_factor(&ints)
}

/// Integer monic polynomial D^n f(t/D) with the same splitting behaviour as f.
fn integral_monic(f: &UniPoly) -> Vec<BigInt> {
    let d = f.denominator_lcm();
    let n = f.degree().unwrap();
    (0..=n)
        .map(|k| {
            let scale = Rational::from_integer(num_traits::pow(d.clone(), n - k));
            (f.coeff(k) * scale).to_integer()
        })
        .collect()
}

/// Whether t^4 + a t^3 + b t^2 + c t + e = (t^2 + p t + q)(t^2 + r t + s) over ℤ.
fn has_quadratic_factor(f: &[BigInt]) -> bool {
    let (e, c, b, a) = (&f[0], &f[1], &f[2], &f[3]);
    let Some(divs) = small_divisors(&e.abs()) else {
        return false;
    };
    for d in &divs {
        for q in [d.clone(), -d.clone()] {
            let s = e / &q;
            if q != s {
                // p s + q r = c with r = a − p.
                let num = c - a * &q;
                let den = &s - &q;
                if !(&num % &den).is_zero() {
                    continue;
                }
                let p = num / den;
                let r = a - &p;
                if &(&p * &r + &q + &s) == b {
                    return true;
                }
            } else {
                if &(a * &q) != c {
                    continue;
                }
                let disc = a * a - BigInt::from(4) * (b - BigInt::from(2) * &q);
                if !disc.is_negative() {
                    let root = disc.sqrt();
                    if &root * &root == disc && ((a + &root) % BigInt::from(2)).is_zero() {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_checks() {
        assert!(NumberField::new("a", UniPoly::from_ints(&[1, 0, 0, 0, 1])).is_ok());
        // (t^2+1)(t^2+2)
        assert!(NumberField::new("a", UniPoly::from_ints(&[2, 0, 3, 0, 1])).is_err());
        // (t^2+t+1)(t^2-t+2)
        let p = UniPoly::from_ints(&[1, 1, 1]).mul(&UniPoly::from_ints(&[2, -1, 1]));
        assert!(NumberField::new("a", p).is_err());
        assert!(NumberField::new("a", UniPoly::from_ints(&[-2, 0, 1])).is_ok());
        assert!(NumberField::new("a", UniPoly::from_ints(&[-4, 0, 1])).is_err());
        assert!(NumberField::new("a", UniPoly::from_ints(&[1, 0, 2])).is_err());
    }
}
