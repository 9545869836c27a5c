use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Result};
use crate::rational::{dot, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
}

/// `coeffs · x (≤ | =) rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub relation: Relation,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Constraint {
        Constraint { coeffs, rhs, relation: Relation::Le }
    }

    /// `coeffs · x ≥ rhs`, stored as `−coeffs · x ≤ −rhs`.
    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Constraint {
        Constraint::le(coeffs.iter().map(|c| -c).collect(), -rhs)
    }

    pub fn eq(coeffs: Vec<Rational>, rhs: Rational) -> Constraint {
        Constraint { coeffs, rhs, relation: Relation::Eq }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn holds_at(&self, p: &[Rational]) -> bool {
        let v = dot(&self.coeffs, p);
        match self.relation {
            Relation::Le => v <= self.rhs,
            Relation::Eq => v == self.rhs,
        }
    }

    /// The `≤` rows this constraint stands for (one, or two for equalities).
    pub fn as_le_rows(&self) -> Vec<(Vec<Rational>, Rational)> {
        match self.relation {
            Relation::Le => vec![(self.coeffs.clone(), self.rhs.clone())],
            Relation::Eq => vec![
                (self.coeffs.clone(), self.rhs.clone()),
                (self.coeffs.iter().map(|c| -c).collect(), -&self.rhs),
            ],
        }
    }
}

/// Generator form `conv(vertices) + cone(rays)`. Empty `vertices` means the
/// polyhedron is empty.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GeneratorRep {
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
}

impl GeneratorRep {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }
}

/// `{x ∈ Q^dim : A x ≤ c}` with equalities kept as such.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Polyhedron {
    dim: usize,
    constraints: Vec<Constraint>,
    #[serde(skip)]
    generators: OnceLock<GeneratorRep>,
}

impl PartialEq for Polyhedron {
    /// Syntactic equality of the constraint lists; use
    /// [`crate::polyhedra::equivalent`] for set equality.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.constraints == other.constraints
    }
}

impl Eq for Polyhedron {}

impl Polyhedron {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Result<Polyhedron> {
        for c in &constraints {
            check_dim(dim, c.dim())?;
        }
        Ok(Polyhedron { dim, constraints, generators: OnceLock::new() })
    }

    pub fn universe(dim: usize) -> Polyhedron {
        Polyhedron { dim, constraints: Vec::new(), generators: OnceLock::new() }
    }

    /// Attaches an already known generator form. The caller guarantees that
    /// both forms describe the same set.
    pub fn with_generators(self, g: GeneratorRep) -> Polyhedron {
        let cell = OnceLock::new();
        let _ = cell.set(g);
        Polyhedron { generators: cell, ..self }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// All constraints as `≤` rows.
    pub fn le_rows(&self) -> Vec<(Vec<Rational>, Rational)> {
        self.constraints.iter().flat_map(|c| c.as_le_rows()).collect()
    }

    pub fn contains_point(&self, p: &[Rational]) -> Result<bool> {
        check_dim(self.dim, p.len())?;
        Ok(self.constraints.iter().all(|c| c.holds_at(p)))
    }

    /// A new polyhedron with `extra` appended to the constraint list.
    pub fn intersect(&self, extra: &[Constraint]) -> Result<Polyhedron> {
        let mut cs = self.constraints.clone();
        cs.extend_from_slice(extra);
        Polyhedron::new(self.dim, cs)
    }

    /// Cached generator representation, computed on first use.
    pub fn generators(&self) -> &GeneratorRep {
        self.generators
            .get_or_init(|| crate::polyhedra::compute_generators(self))
    }

    pub fn cached_generators(&self) -> Option<&GeneratorRep> {
        self.generators.get()
    }

    pub fn is_empty(&self) -> bool {
        crate::polyhedra::is_empty(self)
    }
}
