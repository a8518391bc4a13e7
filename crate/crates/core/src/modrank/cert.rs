use std::fmt;

use crate::poly::{Poly, UniPoly};

use super::Scalars;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Route {
    /// Solved from coordinates over the base field.
    Coordinates,
    /// Rewritten through a relation table in the given number of steps.
    Table(usize),
}

/// `product = Σ coefficients[j](base) · generators[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub product: String,
    pub coefficients: Vec<UniPoly>,
    pub route: Route,
}

impl Expansion {
    pub fn render(&self, gens: &[Poly], base: &str) -> String {
        let mut parts = Vec::new();
        for (c, g) in self.coefficients.iter().zip(gens) {
            if c.is_zero() {
                continue;
            }
            let g = g.to_string();
            let g = if g.contains(' ') { format!("({g})") } else { g };
            parts.push(format!("({})*{g}", c.display(base)));
        }
        let rhs = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        format!("{} = {rhs}", self.product)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeBasisCert {
    pub scalars: Scalars,
    pub base: String,
    pub base_poly: String,
    pub basis: Vec<Poly>,
    /// The ℚ[base]-basis actually checked: `basis` and its θ-multiples.
    pub spanning: Vec<Poly>,
    pub determinant: String,
    pub lines: Vec<Expansion>,
}

impl FreeBasisCert {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Canonical text with sorted transcripts.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("free-basis over {}[{}] rank {}\n", self.scalars, self.base, self.rank()));
        if self.base_poly != self.base {
            out.push_str(&format!("base: {} = {}\n", self.base, self.base_poly));
        }
        out.push_str(&format!("basis: {}\n", join(&self.basis)));
        if self.spanning.len() != self.basis.len() {
            out.push_str(&format!("checked over Q[{}]: {}\n", self.base, join(&self.spanning)));
        }
        out.push_str(&format!("independence: det = {}\n", self.determinant));
        let mut lines: Vec<String> = self.lines.iter().map(|l| l.render(&self.spanning, &self.base)).collect();
        lines.sort();
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSetCert {
    pub scalars: Scalars,
    pub base: String,
    pub base_poly: String,
    pub generators: Vec<Poly>,
    /// Number of relation-table lines checked as ideal members.
    pub table_lines: usize,
    pub lines: Vec<Expansion>,
}

impl GenSetCert {
    pub fn size(&self) -> usize {
        self.generators.len()
    }

    pub fn table_routed(&self) -> usize {
        self.lines.iter().filter(|l| matches!(l.route, Route::Table(_))).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "generating-set over {}[{}] size {}\n",
            self.scalars,
            self.base,
            self.size()
        ));
        if self.base_poly != self.base {
            out.push_str(&format!("base: {} = {}\n", self.base, self.base_poly));
        }
        out.push_str(&format!("generators: {}\n", join(&self.generators)));
        if self.table_lines > 0 {
            out.push_str(&format!(
                "relation table: {} lines verified, {} of {} products rewritten through it\n",
                self.table_lines,
                self.table_routed(),
                self.lines.len()
            ));
        }
        let mut lines: Vec<String> = self.lines.iter().map(|l| l.render(&self.generators, &self.base)).collect();
        lines.sort();
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }
}

fn join(ps: &[Poly]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for FreeBasisCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for GenSetCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
