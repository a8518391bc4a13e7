//! Exact computation of trace-ring rank functions on SL2 character varieties
//! of knot manifolds, with certificates and surface-detection verdicts.

pub mod cli;
pub mod detect;
pub mod error;
pub mod groebner;
pub mod integrality;
pub mod modrank;
pub mod poly;
pub mod tracecalc;
pub mod valuation;

pub use error::{Error, Result};
pub use poly::{Monomial, MonomialOrder, NumberField, Poly, PolyRing, Rational};
