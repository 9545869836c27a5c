//! Geometry kernel: generator conversion, emptiness, containment, recession
//! cones and integer hulls.

pub mod dd;
mod hull;

pub use hull::{integer_hull, integer_hull_calls, integer_hull_with, integral_generators, IntegerHullConfig};

use crate::error::{check_dim, Result};
use crate::lp::{self, Direction, LpOutcome, LpProblem, RowRel};
use crate::polyhedron::{Constraint, GeneratorRep, Polyhedron, Relation};
use crate::rational::{primitive, Rational};

/// Result of minimising a linear form over a polyhedron.
#[derive(Debug, Clone, PartialEq)]
pub enum Extremum {
    Empty,
    Unbounded,
    Attained(Rational, Vec<Rational>),
}

fn feasibility_problem(q: &Polyhedron) -> LpProblem {
    let mut p = LpProblem::new(q.dim());
    for c in q.constraints() {
        let rel = match c.relation {
            Relation::Le => RowRel::Le,
            Relation::Eq => RowRel::Eq,
        };
        p.add_row(c.coeffs.clone(), rel, c.rhs.clone());
    }
    p
}

/// Minimum of `coeffs · x` over `q`.
pub fn minimize(q: &Polyhedron, coeffs: &[Rational]) -> Result<Extremum> {
    check_dim(q.dim(), coeffs.len())?;
    let mut p = feasibility_problem(q);
    p.set_objective(Direction::Min, coeffs.to_vec());
    Ok(match lp::solve(&p)? {
        LpOutcome::Infeasible => Extremum::Empty,
        LpOutcome::Unbounded => Extremum::Unbounded,
        LpOutcome::Optimal(x, v) => Extremum::Attained(v, x),
        LpOutcome::Feasible(x) => Extremum::Attained(crate::rational::dot(coeffs, &x), x),
    })
}

/// Maximum of `coeffs · x` over `q`, reported as an [`Extremum`] of the
/// maximisation.
pub fn maximize(q: &Polyhedron, coeffs: &[Rational]) -> Result<Extremum> {
    let neg: Vec<Rational> = coeffs.iter().map(|c| -c).collect();
    Ok(match minimize(q, &neg)? {
        Extremum::Attained(v, x) => Extremum::Attained(-v, x),
        e => e,
    })
}

/// A point of `q`, if any.
pub fn some_point(q: &Polyhedron) -> Option<Vec<Rational>> {
    let p = feasibility_problem(q);
    lp::solve(&p).ok()?.point().map(|x| x.to_vec())
}

pub fn is_empty(q: &Polyhedron) -> bool {
    if let Some(g) = q.cached_generators() {
        return g.is_empty();
    }
    some_point(q).is_none()
}

pub fn contains_point(q: &Polyhedron, p: &[Rational]) -> Result<bool> {
    q.contains_point(p)
}

pub fn intersect(q: &Polyhedron, extra: &[Constraint]) -> Result<Polyhedron> {
    q.intersect(extra)
}

/// `{y : A y ≤ 0}` for `q = {x : A x ≤ c}`.
pub fn recession_cone(q: &Polyhedron) -> Polyhedron {
    let cs = q
        .constraints()
        .iter()
        .map(|c| Constraint { coeffs: c.coeffs.clone(), rhs: Rational::ZERO, relation: c.relation })
        .collect();
    Polyhedron::new(q.dim(), cs).expect("same dimension")
}

/// Whether every point of `inner` lies in `outer`.
pub fn includes(outer: &Polyhedron, inner: &Polyhedron) -> Result<bool> {
    check_dim(outer.dim(), inner.dim())?;
    if is_empty(inner) {
        return Ok(true);
    }
    for (a, b) in outer.le_rows() {
        match maximize(inner, &a)? {
            Extremum::Empty => return Ok(true),
            Extremum::Unbounded => return Ok(false),
            Extremum::Attained(v, _) => {
                if v > b {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Set equality by mutual containment.
pub fn equivalent(a: &Polyhedron, b: &Polyhedron) -> Result<bool> {
    Ok(includes(a, b)? && includes(b, a)?)
}

/// Double-description conversion of `q` to generator form. Vertices are
/// exact rationals, rays primitive integer vectors, lines appear as two
/// opposite rays; both lists are sorted.
pub fn compute_generators(q: &Polyhedron) -> GeneratorRep {
    let d = q.dim();
    let mut ineqs = Vec::new();
    let mut eqs = Vec::new();
    let mut t_nonneg = vec![Rational::ZERO; d + 1];
    t_nonneg[d] = -Rational::ONE;
    ineqs.push(t_nonneg);
    for c in q.constraints() {
        let mut row = c.coeffs.clone();
        row.push(-&c.rhs);
        match c.relation {
            Relation::Le => ineqs.push(row),
            Relation::Eq => eqs.push(row),
        }
    }
    let cone = dd::cone_generators(d + 1, &ineqs, &eqs);
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in cone.rays {
        let t = r[d].clone();
        if t.is_positive() {
            vertices.push(r[..d].iter().map(|x| x / &t).collect::<Vec<_>>());
        } else {
            rays.push(primitive(&r[..d]));
        }
    }
    if vertices.is_empty() {
        return GeneratorRep::default();
    }
    for l in cone.lines {
        let l = primitive(&l[..d]);
        rays.push(l.iter().map(|x| -x).collect());
        rays.push(l);
    }
    vertices.sort();
    vertices.dedup();
    rays.sort();
    rays.dedup();
    GeneratorRep { vertices, rays }
}

/// Cached generators of `q` (cloned).
pub fn generators(q: &Polyhedron) -> GeneratorRep {
    q.generators().clone()
}

/// The empty polyhedron `{0 ≤ −1}` in the given dimension.
pub fn empty_polyhedron(dim: usize) -> Polyhedron {
    Polyhedron::new(dim, vec![Constraint::le(vec![Rational::ZERO; dim], -Rational::ONE)])
        .expect("dimension matches")
        .with_generators(GeneratorRep::default())
}

/// Constraint form of `conv(vertices) + cone(rays)` (facets and implicit
/// equalities only).
pub fn from_generators(dim: usize, gens: &GeneratorRep) -> Result<Polyhedron> {
    for v in gens.vertices.iter().chain(&gens.rays) {
        check_dim(dim, v.len())?;
    }
    if gens.vertices.is_empty() {
        return Ok(empty_polyhedron(dim));
    }
    let mut ineqs = Vec::new();
    for v in &gens.vertices {
        let mut row = v.clone();
        row.push(-Rational::ONE);
        ineqs.push(row);
    }
    for r in &gens.rays {
        let mut row = r.clone();
        row.push(Rational::ZERO);
        ineqs.push(row);
    }
    let cone = dd::cone_generators(dim + 1, &ineqs, &[]);
    let mut cs = Vec::new();
    for l in cone.lines {
        cs.push(Constraint::eq(l[..dim].to_vec(), l[dim].clone()));
    }
    for r in cone.rays {
        if r[..dim].iter().all(|c| c.is_zero()) {
            continue;
        }
        cs.push(Constraint::le(r[..dim].to_vec(), r[dim].clone()));
    }
    Polyhedron::new(dim, cs)
}

/// Whether all vertices of `q` are integral (rays always are).
pub fn is_integral(q: &Polyhedron) -> bool {
    q.generators()
        .vertices
        .iter()
        .all(|v| v.iter().all(|x| x.is_integer()))
}

/// Scales every constraint to coprime integer coefficients (rhs included).
pub fn normalize_constraint(c: &Constraint) -> Constraint {
    let mut all = c.coeffs.clone();
    all.push(c.rhs.clone());
    let p = primitive(&all);
    let rhs = p[p.len() - 1].clone();
    Constraint { coeffs: p[..p.len() - 1].to_vec(), rhs, relation: c.relation }
}
