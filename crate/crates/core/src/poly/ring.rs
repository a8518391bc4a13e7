use std::fmt;
use std::sync::Arc;

use super::{MonomialOrder, NumberField};
use crate::error::{Error, Result};

/// Coefficient domain of a ring's polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Integer,
    Rational,
    /// ℚ(θ), with θ carried as one of the ring variables.
    Extension,
}

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    vars: Vec<String>,
    order: MonomialOrder,
    domain: Domain,
    field: Option<(NumberField, usize)>,
}

/// Variable context, monomial order and coefficient domain shared by polynomials.
#[derive(Clone)]
pub struct PolyRing(Arc<RingData>);

impl PolyRing {
    pub fn new(vars: Vec<String>, order: MonomialOrder) -> Result<Self> {
        Self::build(vars, order, Domain::Rational, None)
    }

    /// Rational ring with lex order whose priority follows `vars` (first = lowest).
    pub fn lex(vars: &[&str]) -> Self {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let order = MonomialOrder::lex_natural(vars.len());
        Self::build(vars, order, Domain::Rational, None).expect("valid lex ring")
    }

    fn build(
        vars: Vec<String>,
        order: MonomialOrder,
        domain: Domain,
        field: Option<(NumberField, usize)>,
    ) -> Result<Self> {
        if order.priority().len() != vars.len() {
            return Err(Error::BadOrder(format!(
                "order ranks {} variables but {} are declared",
                order.priority().len(),
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::Invalid(format!("`{v}` is not a variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("variable `{v}` declared twice")));
            }
        }
        Ok(PolyRing(Arc::new(RingData {
            vars,
            order,
            domain,
            field,
        })))
    }

    /// Same variables and order, coefficients restricted to ℤ.
    pub fn integer(&self) -> Result<Self> {
        if self.0.field.is_some() {
            return Err(Error::RingMismatch(
                "an extension ring has no integer form".into(),
            ));
        }
        Self::build(self.0.vars.clone(), self.0.order.clone(), Domain::Integer, None)
    }

    pub fn rational(&self) -> Self {
        Self::build(self.0.vars.clone(), self.0.order.clone(), Domain::Rational, None)
            .expect("valid ring")
    }

    /// Adjoin θ. Its name must already be one of the variables.
    pub fn with_number_field(&self, field: NumberField) -> Result<Self> {
        let idx = self
            .index_of(field.name())
            .ok_or_else(|| Error::UndeclaredVariable(field.name().to_string()))?;
        Self::build(
            self.0.vars.clone(),
            self.0.order.clone(),
            Domain::Extension,
            Some((field, idx)),
        )
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        Self::build(
            self.0.vars.clone(),
            order,
            self.0.domain,
            self.0.field.clone(),
        )
    }

    /// Ring over `vars` (kept in the given order, first = lowest lex priority),
    /// preserving domain and number field when θ survives.
    pub fn restricted_lex(&self, vars: &[String]) -> Result<Self> {
        let order = MonomialOrder::lex_natural(vars.len());
        let field = match &self.0.field {
            Some((f, _)) => vars
                .iter()
                .position(|v| v == f.name())
                .map(|i| (f.clone(), i)),
            None => None,
        };
        let domain = match (&field, self.0.domain) {
            (None, Domain::Extension) => Domain::Rational,
            (_, d) => d,
        };
        Self::build(vars.to_vec(), order, domain, field)
    }

    /// Lex ring on the same variables in which `priority` lists names lowest first.
    pub fn relex(&self, priority: &[&str]) -> Result<Self> {
        let mut idx = Vec::with_capacity(priority.len());
        for name in priority {
            idx.push(
                self.index_of(name)
                    .ok_or_else(|| Error::UndeclaredVariable(name.to_string()))?,
            );
        }
        self.with_order(MonomialOrder::lex(idx)?)
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn domain(&self) -> Domain {
        self.0.domain
    }

    pub fn number_field(&self) -> Option<&NumberField> {
        self.0.field.as_ref().map(|(f, _)| f)
    }

    /// Index of θ among the variables.
    pub fn theta(&self) -> Option<usize> {
        self.0.field.as_ref().map(|(_, i)| *i)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UndeclaredVariable(name.to_string()))
    }

    pub fn same(&self, other: &PolyRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for PolyRing {}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyRing({:?}, {:?}, {:?})", self.0.vars, self.0.order, self.0.domain)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}
