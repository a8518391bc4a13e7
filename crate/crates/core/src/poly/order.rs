use std::cmp::Ordering;

use super::Monomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GradedLex,
}

/// A monomial order given by a variable priority, listed from lowest to highest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            if v >= priority.len() || seen[v] {
                return Err(Error::BadOrder(format!(
                    "priority {priority:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        Ok(MonomialOrder { kind, priority })
    }

    pub fn lex(priority: Vec<usize>) -> Result<Self> {
        Self::new(OrderKind::Lex, priority)
    }

    /// Lex order in which the variable with the largest index is the highest.
    pub fn lex_natural(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            priority: (0..nvars).collect(),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// Variable indices from lowest to highest.
    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn lowest(&self) -> usize {
        self.priority[0]
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.kind == OrderKind::GradedLex {
            let c = a.degree().cmp(&b.degree());
            if c != Ordering::Equal {
                return c;
            }
        }
        for &v in self.priority.iter().rev() {
            let c = a.get(v).cmp(&b.get(v));
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }
}
