//! Exact validity check of candidate (lexicographic) ranking functions.
//!
//! Path-level classes (LRF, BMS, ADFG) reduce to one LP minimisation per
//! condition and path. BG is decided point-wise: the set of transitions not
//! covered by any component is split into polyhedral pieces and each piece is
//! tested for emptiness.

use serde::{Deserialize, Serialize};

use crate::affine::AffineFunction;
use crate::error::{Error, Result};
use crate::farkas::ConditionKind;
use crate::llrf::{LexRankingFunction, RankingClass};
use crate::lp::{self, Direction, LpOutcome, LpProblem, RowRel};
use crate::mlc::{Domain, MlcLoop};
use crate::polyhedra::{self, integer_hull, Extremum};
use crate::polyhedron::{Constraint, Polyhedron};
use crate::rational::{primitive, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Valid,
    /// `path` and `component` are 0-based.
    Invalid {
        path: usize,
        component: usize,
        condition: ConditionKind,
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Whether `kind` holds for `f` on every point of `q` (vacuous when empty).
pub fn holds(q: &Polyhedron, f: &AffineFunction, kind: ConditionKind) -> Result<bool> {
    let (coeffs, threshold) = condition_form(f, kind);
    Ok(match polyhedra::minimize(q, &coeffs)? {
        Extremum::Empty => true,
        Extremum::Unbounded => false,
        Extremum::Attained(v, _) => v >= threshold,
    })
}

/// `coeffs · x'' ≥ threshold` expressing the condition.
fn condition_form(f: &AffineFunction, kind: ConditionKind) -> (Vec<Rational>, Rational) {
    match kind {
        ConditionKind::NonNegative => (f.source_coeffs(), -&f.constant),
        ConditionKind::Decreasing => (f.delta_coeffs(), Rational::ONE),
        ConditionKind::NonIncreasing => (f.delta_coeffs(), Rational::ZERO),
    }
}

/// Paths as seen by the given domain: integer hulls for integer loops.
pub fn effective_paths(l: &MlcLoop) -> Result<Vec<Polyhedron>> {
    match l.domain {
        Domain::Rational => Ok(l.paths.clone()),
        Domain::Integer => l.paths.iter().map(integer_hull).collect(),
    }
}

pub fn check_llrf(l: &MlcLoop, cand: &LexRankingFunction) -> Result<Verdict> {
    let paths = effective_paths(l)?;
    check_llrf_on(&paths, l.domain, cand)
}

/// As [`check_llrf`], with the domain's paths (hulls for integer loops)
/// already computed.
pub fn check_llrf_on(paths: &[Polyhedron], domain: Domain, cand: &LexRankingFunction) -> Result<Verdict> {
    let d = cand.components.len();
    if d == 0 {
        return Err(Error::Invalid("ranking function with no components".into()));
    }
    if let Some(first) = paths.first() {
        for f in &cand.components {
            crate::error::check_dim(first.dim(), 2 * f.n())?;
        }
    }
    if cand.class == RankingClass::Lrf && d != 1 {
        return Err(Error::Invalid("an LRF has exactly one component".into()));
    }
    if let Some(a) = &cand.assignment {
        if a.len() != paths.len() {
            return Err(Error::Invalid(format!(
                "assignment covers {} paths, loop has {}",
                a.len(),
                paths.len()
            )));
        }
        if a.iter().flatten().any(|&i| i >= d) {
            return Err(Error::Invalid("assignment names a missing component".into()));
        }
    }
    let nonempty: Vec<bool> = paths.iter().map(|q| !q.is_empty()).collect();
    match cand.class {
        RankingClass::Lrf | RankingClass::Bms => path_level(paths, &nonempty, cand, false),
        RankingClass::Adfg => path_level(paths, &nonempty, cand, true),
        RankingClass::Bg => {
            for (p, q) in paths.iter().enumerate() {
                if !nonempty[p] {
                    continue;
                }
                if let Some((component, condition)) = bg_uncovered(q, &cand.components, domain)? {
                    return Ok(Verdict::Invalid { path: p, component, condition });
                }
            }
            Ok(Verdict::Valid)
        }
    }
}

/// First failing condition when path `q` is ranked by component `i`.
fn rank_failure(q: &Polyhedron, comps: &[AffineFunction], i: usize, all_nonneg_done: bool) -> Result<Option<(usize, ConditionKind)>> {
    for (j, f) in comps.iter().enumerate().take(i) {
        if !holds(q, f, ConditionKind::NonIncreasing)? {
            return Ok(Some((j, ConditionKind::NonIncreasing)));
        }
    }
    if !all_nonneg_done && !holds(q, &comps[i], ConditionKind::NonNegative)? {
        return Ok(Some((i, ConditionKind::NonNegative)));
    }
    if !holds(q, &comps[i], ConditionKind::Decreasing)? {
        return Ok(Some((i, ConditionKind::Decreasing)));
    }
    Ok(None)
}

fn path_level(paths: &[Polyhedron], nonempty: &[bool], cand: &LexRankingFunction, adfg: bool) -> Result<Verdict> {
    let comps = &cand.components;
    if adfg {
        for (p, q) in paths.iter().enumerate() {
            if !nonempty[p] {
                continue;
            }
            for (j, f) in comps.iter().enumerate() {
                if !holds(q, f, ConditionKind::NonNegative)? {
                    return Ok(Verdict::Invalid { path: p, component: j, condition: ConditionKind::NonNegative });
                }
            }
        }
    }
    for (p, q) in paths.iter().enumerate() {
        if !nonempty[p] {
            continue;
        }
        let assigned = cand.assignment.as_ref().and_then(|a| a[p]);
        let failure = match assigned {
            Some(i) => rank_failure(q, comps, i, adfg)?,
            None => {
                let mut last = None;
                let mut found = false;
                for i in 0..comps.len() {
                    match rank_failure(q, comps, i, adfg)? {
                        None => {
                            found = true;
                            break;
                        }
                        Some(f) => {
                            let blocked = f.1 == ConditionKind::NonIncreasing;
                            last = Some(f);
                            if blocked {
                                break;
                            }
                        }
                    }
                }
                if found {
                    None
                } else {
                    last
                }
            }
        };
        if let Some((component, condition)) = failure {
            return Ok(Verdict::Invalid { path: p, component, condition });
        }
    }
    Ok(Verdict::Valid)
}

/// A region of transitions: `base` plus strict rows `g·x < h` (rational
/// domain only; integer regions are kept non-strict).
struct Region {
    base: Polyhedron,
    strict: Vec<(Vec<Rational>, Rational)>,
}

/// A point of the region, or `None` if it has no point of the domain.
fn region_point(r: &Region, domain: Domain) -> Result<Option<Vec<Rational>>> {
    match domain {
        Domain::Integer => {
            let h = integer_hull(&r.base)?;
            Ok(h.generators().vertices.first().cloned())
        }
        Domain::Rational => {
            if r.strict.is_empty() {
                return Ok(polyhedra::some_point(&r.base));
            }
            let dim = r.base.dim();
            let mut p = LpProblem::new(dim + 1);
            for (a, b) in r.base.le_rows() {
                let mut row = a;
                row.push(Rational::ZERO);
                p.add_row(row, RowRel::Le, b);
            }
            for (g, h) in &r.strict {
                let mut row = g.clone();
                row.push(Rational::ONE);
                p.add_row(row, RowRel::Le, h.clone());
            }
            p.bounds[dim] = (Some(Rational::ZERO), Some(Rational::ONE));
            let mut obj = vec![Rational::ZERO; dim + 1];
            obj[dim] = Rational::ONE;
            p.set_objective(Direction::Max, obj);
            match lp::solve(&p)? {
                LpOutcome::Optimal(x, v) if v.is_positive() => Ok(Some(x[..dim].to_vec())),
                _ => Ok(None),
            }
        }
    }
}

/// Conditions making component `i` rank a transition under BG, as
/// `(coeffs, threshold, component, kind)` meaning `coeffs·x'' ≥ threshold`.
fn bg_conditions(comps: &[AffineFunction], i: usize) -> Vec<(Vec<Rational>, Rational, usize, ConditionKind)> {
    let mut out = Vec::new();
    for (j, f) in comps.iter().enumerate().take(i + 1) {
        let (c, t) = condition_form(f, ConditionKind::NonNegative);
        out.push((c, t, j, ConditionKind::NonNegative));
        if j < i {
            let (c, t) = condition_form(f, ConditionKind::NonIncreasing);
            out.push((c, t, j, ConditionKind::NonIncreasing));
        }
    }
    let (c, t) = condition_form(&comps[i], ConditionKind::Decreasing);
    out.push((c, t, i, ConditionKind::Decreasing));
    out
}

fn with_row(r: &Region, coeffs: &[Rational], threshold: &Rational, satisfied: bool, domain: Domain) -> Result<Region> {
    let mut strict = r.strict.clone();
    let extra = if satisfied {
        Constraint::ge(coeffs.to_vec(), threshold.clone())
    } else if domain == Domain::Integer {
        // g·x < t over integers: scale to integers and tighten.
        let mut all = coeffs.to_vec();
        all.push(threshold.clone());
        let den = crate::rational::denominator_lcm(&all);
        let s = Rational::from(den);
        let g: Vec<Rational> = coeffs.iter().map(|c| c * &s).collect();
        let gp = primitive(&g);
        let factor = if let Some(j) = g.iter().position(|c| !c.is_zero()) {
            &g[j] / &gp[j]
        } else {
            Rational::ONE
        };
        let t = threshold * &s / factor;
        Constraint::le(gp, t.ceil() - Rational::ONE)
    } else {
        strict.push((coeffs.to_vec(), threshold.clone()));
        return Ok(Region { base: r.base.clone(), strict });
    };
    Ok(Region { base: r.base.intersect(&[extra])?, strict })
}

fn bg_uncovered(q: &Polyhedron, comps: &[AffineFunction], domain: Domain) -> Result<Option<(usize, ConditionKind)>> {
    let root = Region { base: q.clone(), strict: Vec::new() };
    match uncovered_point(&root, comps, 0, domain)? {
        None => Ok(None),
        Some(x) => {
            let last = comps.len() - 1;
            for (c, t, j, kind) in bg_conditions(comps, last) {
                if crate::rational::dot(&c, &x) < t {
                    return Ok(Some((j, kind)));
                }
            }
            Ok(Some((last, ConditionKind::Decreasing)))
        }
    }
}

fn uncovered_point(r: &Region, comps: &[AffineFunction], i: usize, domain: Domain) -> Result<Option<Vec<Rational>>> {
    let Some(pt) = region_point(r, domain)? else {
        return Ok(None);
    };
    if i == comps.len() {
        return Ok(Some(pt));
    }
    let conds = bg_conditions(comps, i);
    let mut acc = Region { base: r.base.clone(), strict: r.strict.clone() };
    for (c, t, _, _) in &conds {
        let piece = with_row(&acc, c, t, false, domain)?;
        if let Some(x) = uncovered_point(&piece, comps, i + 1, domain)? {
            return Ok(Some(x));
        }
        acc = with_row(&acc, c, t, true, domain)?;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn f(c: &[i64], k: i64) -> AffineFunction {
        AffineFunction::new(c.iter().map(|&x| int(x)).collect(), int(k))
    }

    #[test]
    fn single_path_lrf() {
        // {x >= 0, x' <= x - 1}
        let q = Polyhedron::new(
            2,
            vec![
                Constraint::ge(vec![int(1), int(0)], int(0)),
                Constraint::le(vec![int(-1), int(1)], int(-1)),
            ],
        )
        .unwrap();
        let l = MlcLoop::new(vec!["x".into()], vec![q], Domain::Rational).unwrap();
        let good = LexRankingFunction::new(vec![f(&[1], 0)], RankingClass::Lrf, None);
        assert!(check_llrf(&l, &good).unwrap().is_valid());
        let bad = LexRankingFunction::new(vec![f(&[1], -1)], RankingClass::Lrf, None);
        assert_eq!(
            check_llrf(&l, &bad).unwrap(),
            Verdict::Invalid { path: 0, component: 0, condition: ConditionKind::NonNegative }
        );
        for class in [RankingClass::Bg, RankingClass::Adfg, RankingClass::Bms] {
            let c = LexRankingFunction::new(vec![f(&[1], 0)], class, None);
            assert!(check_llrf(&l, &c).unwrap().is_valid(), "{class:?}");
        }
    }
}
