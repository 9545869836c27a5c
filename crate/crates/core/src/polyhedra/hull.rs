//! Integer hulls by fractional-vertex branching.
//!
//! Bounded polyhedra are branched on directly. For unbounded ones the integer
//! points decompose as `I(q ∩ B) + intcone(rays)` where `B` is the box
//! spanned by the vertices plus one copy of every ray, so only the bounded
//! part `q ∩ B` is branched on and the rays of `q` are added back.
//!
//! Before branching, two exact reductions shrink the problem: a variable
//! fixed by an integer equality with a unit coefficient is integral whenever
//! the others are, so it is substituted away and restored afterwards;
//! variables that never share a constraint are hulled separately, since the
//! hull of a product is the product of the hulls; and a lineality space is
//! moved onto coordinate axes by a unimodular change of variables, where it
//! no longer takes part in any constraint.

use std::cell::Cell;

use super::{compute_generators, empty_polyhedron, from_generators};
use crate::error::{Error, Result};
use crate::polyhedron::{Constraint, GeneratorRep, Polyhedron, Relation};
use crate::rational::{dot, primitive, Rational};

thread_local! {
    static HULL_CALLS: Cell<usize> = const { Cell::new(0) };
}

/// Number of `integer_hull` invocations made on the current thread.
pub fn integer_hull_calls() -> usize {
    HULL_CALLS.with(|c| c.get())
}

#[derive(Debug, Clone, Copy)]
pub struct IntegerHullConfig {
    pub max_nodes: usize,
}

impl Default for IntegerHullConfig {
    fn default() -> Self {
        IntegerHullConfig { max_nodes: 10_000 }
    }
}

pub fn integer_hull(q: &Polyhedron) -> Result<Polyhedron> {
    integer_hull_with(q, IntegerHullConfig::default())
}

fn unit_row(dim: usize, j: usize, sign: i64) -> Vec<Rational> {
    let mut v = vec![Rational::ZERO; dim];
    v[j] = Rational::from_integer(sign);
    v
}

fn first_fractional(g: &GeneratorRep) -> Option<(usize, Rational)> {
    g.vertices
        .iter()
        .find_map(|v| v.iter().position(|x| !x.is_integer()).map(|j| (j, v[j].clone())))
}

pub fn integer_hull_with(q: &Polyhedron, cfg: IntegerHullConfig) -> Result<Polyhedron> {
    HULL_CALLS.with(|c| c.set(c.get() + 1));
    let dim = q.dim();
    match reduce(q.constraints(), dim, cfg)? {
        None => Ok(empty_polyhedron(dim)),
        Some(cs) => Polyhedron::new(dim, cs),
    }
}

/// Constraints of the integer hull of `{x ∈ Q^dim : cs}`, `None` if it has
/// no integer point.
fn reduce(cs: &[Constraint], dim: usize, cfg: IntegerHullConfig) -> Result<Option<Vec<Constraint>>> {
    if dim == 0 {
        return Ok(cs.iter().all(|c| c.holds_at(&[])).then(Vec::new));
    }
    for (idx, c) in cs.iter().enumerate() {
        if c.relation != Relation::Eq {
            continue;
        }
        let Some(k0) = c.coeffs.iter().position(|a| !a.is_zero()) else {
            continue;
        };
        let a = primitive(&c.coeffs);
        let rhs = &c.rhs * &(&a[k0] / &c.coeffs[k0]);
        if !rhs.is_integer() {
            return Ok(None);
        }
        // prefer the variable touching the fewest other constraints
        let k = (0..dim)
            .filter(|&k| a[k].abs().is_one())
            .min_by_key(|&k| cs.iter().filter(|d| !d.coeffs[k].is_zero()).count());
        if let Some(k) = k {
            return eliminate(cs, idx, &a, &rhs, k, dim, cfg);
        }
    }
    if let Some(r) = split(cs, dim, cfg)? {
        return Ok(r);
    }
    if let Some(r) = drop_lines(cs, dim, cfg)? {
        return Ok(r);
    }
    branch(cs, dim, cfg)
}

/// Column operations bringing the integer constraint matrix to echelon form
/// `A·U = [H | 0]` with `U` unimodular; returns `U`, `U⁻¹` and the rank.
fn column_echelon(rows: &[Vec<Rational>], dim: usize) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>, usize) {
    let ident = |d: usize| -> Vec<Vec<Rational>> {
        (0..d).map(|i| (0..d).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }).collect()).collect()
    };
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let (mut u, mut uinv) = (ident(dim), ident(dim));
    // col_j -= f·col_k on A and U; row_k += f·row_j on U⁻¹
    let axpy = |a: &mut Vec<Vec<Rational>>, u: &mut Vec<Vec<Rational>>, uinv: &mut Vec<Vec<Rational>>, j: usize, k: usize, f: &Rational| {
        for row in a.iter_mut().chain(u.iter_mut()) {
            row[j] = row[j].sub_mul(f, &row[k]);
        }
        let (rj, rk) = (uinv[j].clone(), &mut uinv[k]);
        for (x, y) in rk.iter_mut().zip(&rj) {
            *x += &(f * y);
        }
    };
    let swap = |a: &mut Vec<Vec<Rational>>, u: &mut Vec<Vec<Rational>>, uinv: &mut Vec<Vec<Rational>>, j: usize, k: usize| {
        for row in a.iter_mut().chain(u.iter_mut()) {
            row.swap(j, k);
        }
        uinv.swap(j, k);
    };
    let mut rank = 0;
    for i in 0..a.len() {
        if rank == dim {
            break;
        }
        // Euclid on row i over columns rank.. until one nonzero entry is left
        loop {
            let nz: Vec<usize> = (rank..dim).filter(|&j| !a[i][j].is_zero()).collect();
            let Some(&piv) = nz.iter().min_by(|&&x, &&y| a[i][x].abs().cmp(&a[i][y].abs())) else {
                break;
            };
            if nz.len() == 1 {
                swap(&mut a, &mut u, &mut uinv, rank, piv);
                rank += 1;
                break;
            }
            for &j in nz.iter().filter(|&&j| j != piv) {
                let f = (&a[i][j] / &a[i][piv]).floor();
                axpy(&mut a, &mut u, &mut uinv, j, piv, &f);
            }
        }
    }
    (u, uinv, rank)
}

/// Generators of an integral polyhedron with integer points only. A
/// polyhedron containing a line has no vertices, and its base points may be
/// fractional; each is moved along the lineality space to an integer point
/// of the same minimal face.
pub fn integral_generators(q: &Polyhedron) -> GeneratorRep {
    let g = q.generators();
    let rays: Vec<Vec<Rational>> = g.rays.iter().map(|r| primitive(r)).collect();
    if g.vertices.iter().flatten().all(Rational::is_integer) {
        return GeneratorRep { vertices: g.vertices.clone(), rays };
    }
    let dim = q.dim();
    let rows: Vec<Vec<Rational>> = q.constraints().iter().map(|c| primitive(&c.coeffs)).collect();
    let (u, uinv, rank) = column_echelon(&rows, dim);
    let mut vertices: Vec<Vec<Rational>> = g
        .vertices
        .iter()
        .map(|v| {
            let y: Vec<Rational> = (0..rank).map(|j| dot(&uinv[j], v)).collect();
            (0..dim).map(|i| (0..rank).map(|j| &u[i][j] * &y[j]).sum()).collect()
        })
        .collect();
    vertices.sort();
    vertices.dedup();
    GeneratorRep { vertices, rays }
}

/// Removes the lineality space: after a unimodular change of variables
/// `x = U·y` the constraints only involve `y₁..y_r`, and the remaining
/// coordinates are free integers. `None` when the matrix has full rank.
fn drop_lines(cs: &[Constraint], dim: usize, cfg: IntegerHullConfig) -> Result<Option<Option<Vec<Constraint>>>> {
    let scaled: Vec<(Vec<Rational>, Rational)> = cs
        .iter()
        .map(|c| {
            let a = primitive(&c.coeffs);
            match c.coeffs.iter().position(|v| !v.is_zero()) {
                Some(k) => {
                    let f = &a[k] / &c.coeffs[k];
                    (a, &c.rhs * &f)
                }
                None => (a, c.rhs.clone()),
            }
        })
        .collect();
    let rows: Vec<Vec<Rational>> = scaled.iter().map(|(a, _)| a.clone()).collect();
    let (u, uinv, rank) = column_echelon(&rows, dim);
    if rank == dim || rank == 0 {
        return Ok(None);
    }
    // constraint a·x ≤ b becomes (a·U)·y ≤ b, zero beyond column `rank`
    let inner: Vec<Constraint> = cs
        .iter()
        .zip(&scaled)
        .map(|(c, (a, b))| {
            let coeffs = (0..rank).map(|j| (0..dim).map(|i| &a[i] * &u[i][j]).sum()).collect();
            Constraint { coeffs, rhs: b.clone(), relation: c.relation }
        })
        .collect();
    let lift_point = |p: &[Rational]| -> Vec<Rational> {
        (0..dim).map(|i| (0..rank).map(|j| &u[i][j] * &p[j]).sum()).collect()
    };
    let hull = reduce(&inner, rank, cfg).map_err(|e| match e {
        Error::Resource { message, explored, partial } => Error::Resource {
            message,
            explored,
            partial: partial.iter().map(|p| lift_point(p)).collect(),
        },
        e => e,
    })?;
    // h·y ≤ c with y = U⁻¹·x
    Ok(Some(hull.map(|hs| {
        hs.into_iter()
            .map(|h| {
                let coeffs = (0..dim).map(|k| (0..rank).map(|j| &h.coeffs[j] * &uinv[j][k]).sum()).collect();
                Constraint { coeffs, rhs: h.rhs, relation: h.relation }
            })
            .collect()
    })))
}

/// Substitutes `x_k` using equality `idx` (scaled to `a · x = rhs`, `|a_k| = 1`).
fn eliminate(
    cs: &[Constraint],
    idx: usize,
    a: &[Rational],
    rhs: &Rational,
    k: usize,
    dim: usize,
    cfg: IntegerHullConfig,
) -> Result<Option<Vec<Constraint>>> {
    // x_k = (rhs − Σ_{j≠k} a_j x_j) / a_k
    let ak = &a[k];
    let mut reduced = Vec::with_capacity(cs.len() - 1);
    for (i, c) in cs.iter().enumerate() {
        if i == idx {
            continue;
        }
        let ck = &c.coeffs[k];
        let f = ck / ak;
        let coeffs = (0..dim).filter(|&j| j != k).map(|j| c.coeffs[j].sub_mul(&f, &a[j])).collect();
        reduced.push(Constraint { coeffs, rhs: c.rhs.sub_mul(&f, rhs), relation: c.relation });
    }
    let lift_point = |p: &[Rational]| -> Vec<Rational> {
        let mut full = p.to_vec();
        full.insert(k, Rational::ZERO);
        let rest: Rational = (0..dim).map(|j| &a[j] * &full[j]).sum();
        full[k] = &(rhs - &rest) / ak;
        full
    };
    let inner = reduce(&reduced, dim - 1, cfg).map_err(|e| match e {
        Error::Resource { message, explored, partial } => Error::Resource {
            message,
            explored,
            partial: partial.iter().map(|p| lift_point(p)).collect(),
        },
        e => e,
    })?;
    Ok(inner.map(|hs| {
        let mut out: Vec<Constraint> = hs
            .into_iter()
            .map(|h| {
                let mut coeffs = h.coeffs;
                coeffs.insert(k, Rational::ZERO);
                Constraint { coeffs, rhs: h.rhs, relation: h.relation }
            })
            .collect();
        out.push(Constraint::eq(a.to_vec(), rhs.clone()));
        out
    }))
}

/// Hulls groups of variables that share no constraint separately. `None`
/// when there is a single group spanning every variable.
fn split(cs: &[Constraint], dim: usize, cfg: IntegerHullConfig) -> Result<Option<Option<Vec<Constraint>>>> {
    // union-find over variables
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut used = vec![false; dim];
    for c in cs {
        let mut first = None;
        for (j, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            used[j] = true;
            match first {
                None => first = Some(j),
                Some(f) => {
                    let (rf, rj) = (find(&mut parent, f), find(&mut parent, j));
                    parent[rj] = rf;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of = vec![usize::MAX; dim];
    for j in (0..dim).filter(|&j| used[j]) {
        let r = find(&mut parent, j);
        if group_of[r] == usize::MAX {
            group_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of[r]].push(j);
    }
    if groups.len() == 1 && groups[0].len() == dim {
        return Ok(None);
    }
    let mut out = Vec::new();
    for c in cs.iter().filter(|c| c.coeffs.iter().all(|a| a.is_zero())) {
        if !c.holds_at(&vec![Rational::ZERO; dim]) {
            return Ok(Some(None));
        }
    }
    for g in &groups {
        let sub: Vec<Constraint> = cs
            .iter()
            .filter(|c| g.iter().any(|&j| !c.coeffs[j].is_zero()))
            .map(|c| Constraint {
                coeffs: g.iter().map(|&j| c.coeffs[j].clone()).collect(),
                rhs: c.rhs.clone(),
                relation: c.relation,
            })
            .collect();
        // partial points of one group do not extend to the others
        let hull = reduce(&sub, g.len(), cfg).map_err(|e| match e {
            Error::Resource { message, explored, .. } => Error::Resource { message, explored, partial: Vec::new() },
            e => e,
        })?;
        let Some(hs) = hull else {
            return Ok(Some(None));
        };
        for h in hs {
            let mut coeffs = vec![Rational::ZERO; dim];
            for (&j, a) in g.iter().zip(h.coeffs) {
                coeffs[j] = a;
            }
            out.push(Constraint { coeffs, rhs: h.rhs, relation: h.relation });
        }
    }
    Ok(Some(Some(out)))
}

fn branch(cs: &[Constraint], dim: usize, cfg: IntegerHullConfig) -> Result<Option<Vec<Constraint>>> {
    let q = Polyhedron::new(dim, cs.to_vec())?;
    let g = q.generators();
    if g.is_empty() {
        return Ok(None);
    }
    if first_fractional(g).is_none() {
        return Ok(Some(cs.to_vec()));
    }

    let region = if g.rays.is_empty() {
        q.clone()
    } else {
        let mut extra = Vec::with_capacity(2 * dim);
        for j in 0..dim {
            let mut lo = g.vertices.iter().map(|v| v[j].clone()).min().unwrap();
            let mut hi = g.vertices.iter().map(|v| v[j].clone()).max().unwrap();
            for r in &g.rays {
                if r[j].is_negative() {
                    lo += &r[j];
                } else {
                    hi += &r[j];
                }
            }
            extra.push(Constraint::ge(unit_row(dim, j, 1), lo.floor()));
            extra.push(Constraint::le(unit_row(dim, j, 1), hi.ceil()));
        }
        // the same bound along each constraint normal; for a simplicial cone
        // this cuts the box down to the fundamental parallelepiped
        for c in cs.iter().filter(|c| c.relation == Relation::Le) {
            let a = primitive(&c.coeffs);
            if a.iter().all(Rational::is_zero) {
                continue;
            }
            let mut lo = g.vertices.iter().map(|v| dot(&a, v)).min().unwrap();
            for r in &g.rays {
                let d = dot(&a, r);
                if d.is_negative() {
                    lo += &d;
                }
            }
            extra.push(Constraint::ge(a, lo.ceil()));
        }
        q.intersect(&extra)?
    };

    let mut points: Vec<Vec<Rational>> = Vec::new();
    let mut stack = vec![region];
    let mut explored = 0usize;
    while let Some(node) = stack.pop() {
        explored += 1;
        if explored > cfg.max_nodes {
            points.sort();
            points.dedup();
            return Err(Error::Resource {
                message: format!("integer hull exceeded {} branch nodes", cfg.max_nodes),
                explored: explored - 1,
                partial: points,
            });
        }
        let gn = compute_generators(&node);
        if gn.is_empty() {
            continue;
        }
        match first_fractional(&gn) {
            None => points.extend(gn.vertices),
            Some((j, v)) => {
                let up = node.intersect(&[Constraint::ge(unit_row(dim, j, 1), v.ceil())])?;
                let down = node.intersect(&[Constraint::le(unit_row(dim, j, 1), v.floor())])?;
                stack.push(up);
                stack.push(down);
            }
        }
    }
    points.sort();
    points.dedup();
    if points.is_empty() {
        return Ok(None);
    }
    let gens = GeneratorRep { vertices: points, rays: g.rays.clone() };
    Ok(Some(from_generators(dim, &gens)?.constraints().to_vec()))
}
