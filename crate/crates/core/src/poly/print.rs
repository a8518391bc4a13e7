use num_traits::{One, Signed, Zero};

use super::{Monomial, Poly, PolyRing, Rational};

pub(crate) fn monomial_text(ring: &PolyRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.vars()[i].clone()),
            _ => parts.push(format!("{}^{}", ring.vars()[i], e)),
        }
    }
    parts.join("*")
}

/// Appends `c*mono` with the joining sign; `mono` empty means a constant term.
pub(crate) fn push_term(out: &mut String, c: &Rational, mono: &str) {
    let neg = c.is_negative();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let a = c.abs();
    if mono.is_empty() {
        out.push_str(&a.to_string());
    } else {
        if !a.is_one() {
            out.push_str(&a.to_string());
            out.push('*');
        }
        out.push_str(mono);
    }
}

pub(crate) fn poly_to_string(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (m, c) in p.terms() {
        debug_assert!(!c.is_zero());
        push_term(&mut out, c, &monomial_text(p.ring(), m));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn canonical_text() {
        let r = PolyRing::lex(&["l", "z"]);
        let f = Poly::parse(&r, "z^4 + (-2 - l)*2*z^2 + 16").unwrap();
        assert_eq!(f.to_string(), "z^4 - 2*l*z^2 - 4*z^2 + 16");
        let g = Poly::parse(&r, "3/2 z - 1/3").unwrap();
        assert_eq!(g.to_string(), "3/2*z - 1/3");
        assert_eq!(Poly::zero(&r).to_string(), "0");
        assert_eq!(Poly::parse(&r, "-z").unwrap().to_string(), "-z");
    }
}
