//! Certificates that an integer loop has no ranking function of some kind.
//!
//! A witness is a finite collection of integer points per path: transition
//! points `X_i ⊆ I(Q_i)` and recession directions `Y_i ⊆ I(rec(Q_i))`. Checking
//! one substitutes the points into the path constraints and then solves a
//! single LP over `(λ, λ₀)` per system; integer hulls are never computed.

use serde::{Deserialize, Serialize};

use crate::affine::AffineFunction;
use crate::check::effective_paths;
use crate::error::{Error, Result};
use crate::llrf::RankingClass;
use crate::lp::{self, LpProblem, RowRel};
use crate::mlc::{Domain, MlcLoop};
use crate::polyhedra::integral_generators;
use crate::polyhedron::{Polyhedron, Relation};
use crate::rational::{dot, Rational};
use crate::synth::{adfg_chain, bg_chain, bms_run, BmsRun};

pub type Point = Vec<Rational>;

/// Per-path point lists: `x[i]` transition points, `y[i]` ray points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSets {
    pub x: Vec<Vec<Point>>,
    pub y: Vec<Vec<Point>>,
}

impl PointSets {
    pub fn empty(k: usize) -> PointSets {
        PointSets { x: vec![Vec::new(); k], y: vec![Vec::new(); k] }
    }

    pub fn point_count(&self) -> usize {
        self.x.iter().chain(&self.y).map(Vec::len).sum()
    }

    /// Paths with at least one point.
    pub fn support(&self) -> Vec<usize> {
        (0..self.x.len()).filter(|&i| !self.x[i].is_empty() || !self.y[i].is_empty()).collect()
    }

    fn all_x(&self) -> impl Iterator<Item = &Point> {
        self.x.iter().flatten()
    }

    fn all_y(&self) -> impl Iterator<Item = &Point> {
        self.y.iter().flatten()
    }
}

/// Witness against a BMS quasi-LRF that ranks path `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QlrfWitness {
    pub target: usize,
    pub sets: PointSets,
}

/// Witness against a BG (or ADFG) LLRF with at most `chain.len()`
/// components. ADFG witnesses carry the `global` sets on which every
/// component must be nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BgDimWitness {
    pub class: RankingClass,
    pub chain: Vec<PointSets>,
    pub global: Option<PointSets>,
}

/// Which linear system of a witness was found solvable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSystem {
    /// The QLRF system of a [`QlrfWitness`].
    Qlrf,
    /// "No LRF for the last component".
    Psi,
    /// "No quasi-LRF of component `j` decreasing on component `j + 1`"
    /// (0-based `j`).
    Gamma(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    Structural(String),
    /// A point outside its set: `component` is the chain position (`None`
    /// for QLRF witnesses and the ADFG global sets).
    Membership { component: Option<usize>, path: usize, ray: bool, index: usize },
    /// The system has a solution, which is a function the witness fails to
    /// exclude.
    Feasible { system: WitnessSystem, solution: AffineFunction },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessVerdict {
    Accepted,
    Rejected(Rejection),
}

impl WitnessVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, WitnessVerdict::Accepted)
    }
}

fn structural(msg: impl Into<String>) -> WitnessVerdict {
    WitnessVerdict::Rejected(Rejection::Structural(msg.into()))
}

/// Linear rows over `(λ₁..λ_n, λ₀)`, each remembering the point it came from.
struct System<T> {
    n: usize,
    lp: LpProblem,
    origin: Vec<T>,
}

impl<T: Clone> System<T> {
    fn new(n: usize) -> System<T> {
        System { n, lp: LpProblem::new(n + 1), origin: Vec::new() }
    }

    /// `λ·x + λ₀ ≥ 0` (with `constant`) or `λ·y ≥ 0` (without).
    fn nonneg(&mut self, p: &[Rational], constant: bool, tag: T) {
        let mut row = p[..self.n].to_vec();
        row.push(if constant { Rational::ONE } else { Rational::ZERO });
        self.lp.add_row(row, RowRel::Ge, Rational::ZERO);
        self.origin.push(tag);
    }

    /// `λ·(x − x') ≥ rhs`.
    fn delta(&mut self, p: &[Rational], rhs: Rational, tag: T) {
        let row = self.delta_row(p);
        self.lp.add_row(row, RowRel::Ge, rhs);
        self.origin.push(tag);
    }

    fn delta_row(&self, p: &[Rational]) -> Vec<Rational> {
        let n = self.n;
        let mut row: Vec<Rational> = (0..n).map(|j| &p[j] - &p[n + j]).collect();
        row.push(Rational::ZERO);
        row
    }

    fn solution(&self) -> Result<Option<AffineFunction>> {
        let n = self.n;
        Ok(lp::solve(&self.lp)?
            .point()
            .map(|v| AffineFunction::new(v[..n].to_vec(), v[n].clone())))
    }
}

fn is_integral(p: &[Rational]) -> bool {
    p.iter().all(Rational::is_integer)
}

/// `A x ≤ c` for transition points, `A y ≤ 0` (and `= 0` rows) for rays,
/// using the loop's own constraints.
fn member(q: &Polyhedron, p: &[Rational], ray: bool) -> bool {
    if p.len() != q.dim() || !is_integral(p) {
        return false;
    }
    q.constraints().iter().all(|c| {
        let v = dot(&c.coeffs, p);
        let rhs = if ray { Rational::ZERO } else { c.rhs.clone() };
        match c.relation {
            Relation::Le => v <= rhs,
            Relation::Eq => v == rhs,
        }
    })
}

/// Shape, membership and `Y_i ≠ ∅ ⇒ X_i ≠ ∅` for one set of points.
fn check_sets(l: &MlcLoop, s: &PointSets, component: Option<usize>) -> Option<WitnessVerdict> {
    let k = l.k();
    if s.x.len() != k || s.y.len() != k {
        return Some(structural(format!("expected point lists for {k} paths")));
    }
    for i in 0..k {
        if !s.y[i].is_empty() && s.x[i].is_empty() {
            return Some(structural(format!("path {} has rays but no transition points", i + 1)));
        }
        for (ray, list) in [(false, &s.x[i]), (true, &s.y[i])] {
            for (index, p) in list.iter().enumerate() {
                if !member(&l.paths[i], p, ray) {
                    return Some(WitnessVerdict::Rejected(Rejection::Membership { component, path: i, ray, index }));
                }
            }
        }
    }
    None
}

fn require_integer(l: &MlcLoop) -> Result<()> {
    match l.domain {
        Domain::Integer => Ok(()),
        Domain::Rational => Err(Error::Invalid("witnesses are defined for integer loops only".into())),
    }
}

/// Point origin inside a [`QlrfWitness`]: `(path, ray, index)`.
type Origin = (usize, bool, usize);

fn qlrf_system(n: usize, s: &PointSets, target: usize) -> System<Origin> {
    let mut sys = System::new(n);
    for (i, (xs, ys)) in s.x.iter().zip(&s.y).enumerate() {
        for (j, x) in xs.iter().enumerate() {
            if i == target {
                sys.nonneg(x, true, (i, false, j));
                sys.delta(x, Rational::ONE, (i, false, j));
            } else {
                sys.delta(x, Rational::ZERO, (i, false, j));
            }
        }
        for (j, y) in ys.iter().enumerate() {
            if i == target {
                sys.nonneg(y, false, (i, true, j));
            }
            sys.delta(y, Rational::ZERO, (i, true, j));
        }
    }
    sys
}

pub fn check_qlrf_witness(l: &MlcLoop, w: &QlrfWitness) -> Result<WitnessVerdict> {
    if w.target >= l.k() {
        return Ok(structural(format!("target path {} does not exist", w.target + 1)));
    }
    if let Some(v) = check_sets(l, &w.sets, None) {
        return Ok(v);
    }
    if w.sets.x[w.target].is_empty() {
        return Ok(structural("the target path has no transition point"));
    }
    let sys = qlrf_system(l.n(), &w.sets, w.target);
    Ok(match sys.solution()? {
        None => WitnessVerdict::Accepted,
        Some(f) => WitnessVerdict::Rejected(Rejection::Feasible { system: WitnessSystem::Qlrf, solution: f }),
    })
}

/// Generator points of the (integral) paths restricted to `subset`.
fn generator_sets(paths: &[Polyhedron], subset: &[usize]) -> PointSets {
    let mut s = PointSets::empty(paths.len());
    for &i in subset {
        let g = integral_generators(&paths[i]);
        if g.is_empty() {
            continue;
        }
        s.x[i] = g.vertices;
        s.y[i] = g.rays;
    }
    s
}

/// Witness against a quasi-LRF of the paths in `subset` ranking `target`,
/// built from the generators of the already integral `paths`: an
/// irreducible infeasible subset of the full system plus, per path left with
/// rays only, its lexicographically least vertex, pruned back to a set from
/// which no single point can be removed.
pub fn build_qlrf_witness_on(paths: &[Polyhedron], subset: &[usize], target: usize) -> Result<Option<QlrfWitness>> {
    let n = paths.first().map_or(0, |q| q.dim() / 2);
    let full = generator_sets(paths, subset);
    if full.x[target].is_empty() {
        // nothing to rank: any constant function qualifies
        return Ok(None);
    }
    let sys = qlrf_system(n, &full, target);
    if lp::is_feasible(&sys.lp)? {
        return Ok(None);
    }
    let core = lp::minimal_infeasible_subset(&sys.lp)?;
    let mut keep = PointSets::empty(paths.len());
    for &r in &core {
        let (i, ray, j) = sys.origin[r];
        let (src, dst) = if ray { (&full.y[i], &mut keep.y[i]) } else { (&full.x[i], &mut keep.x[i]) };
        if !dst.contains(&src[j]) {
            dst.push(src[j].clone());
        }
    }
    for i in 0..paths.len() {
        if keep.x[i].is_empty() && (!keep.y[i].is_empty() || i == target) {
            // vertices come sorted, so the first is the least
            keep.x[i].push(full.x[i][0].clone());
        }
        keep.x[i].sort();
        keep.y[i].sort();
    }
    // the repair points can make an IIS row redundant; drop points until
    // every single deletion leaves a feasible system
    'prune: loop {
        for m in qlrf_deletions(&QlrfWitness { target, sets: keep.clone() }) {
            if !m.sets.x[target].is_empty() && !lp::is_feasible(&qlrf_system(n, &m.sets, target).lp)? {
                keep = m.sets;
                continue 'prune;
            }
        }
        break;
    }
    Ok(Some(QlrfWitness { target, sets: keep }))
}

/// Witness that no BMS quasi-LRF of the integer loop ranks path `p`, or
/// `None` if one does.
pub fn build_qlrf_witness(l: &MlcLoop, p: usize) -> Result<Option<QlrfWitness>> {
    require_integer(l)?;
    if p >= l.k() {
        return Err(Error::Invalid(format!("path {} does not exist", p + 1)));
    }
    let paths = effective_paths(l)?;
    let all: Vec<usize> = (0..paths.len()).collect();
    build_qlrf_witness_on(&paths, &all, p)
}

/// One QLRF witness per path of the residual set at which the elimination
/// algorithm gets stuck, or `None` when a BMS-LLRF exists.
pub fn build_no_bms_llrf_witness(l: &MlcLoop) -> Result<Option<Vec<QlrfWitness>>> {
    require_integer(l)?;
    let paths = effective_paths(l)?;
    let residual = match bms_run(&paths)? {
        BmsRun::Found(_) => return Ok(None),
        BmsRun::Stuck { residual } => residual,
    };
    let mut out = Vec::with_capacity(residual.len());
    for &p in &residual {
        let w = build_qlrf_witness_on(&paths, &residual, p)?
            .ok_or_else(|| Error::Contract(format!("path {} of a stuck residual set has a quasi-LRF", p + 1)))?;
        out.push(w);
    }
    Ok(Some(out))
}

/// Accepts a list of QLRF witnesses whose targets are exactly the paths
/// they mention: together they show that this path subset has no BMS
/// quasi-LRF, hence the loop has no BMS-LLRF.
pub fn check_no_bms_llrf_witness(l: &MlcLoop, ws: &[QlrfWitness]) -> Result<WitnessVerdict> {
    if ws.is_empty() {
        return Ok(structural("no QLRF witnesses given"));
    }
    let mut targets: Vec<usize> = ws.iter().map(|w| w.target).collect();
    targets.sort_unstable();
    if targets.windows(2).any(|t| t[0] == t[1]) {
        return Ok(structural("two witnesses share a target path"));
    }
    for w in ws {
        if w.sets.x.len() != l.k() || w.sets.y.len() != l.k() {
            return Ok(structural(format!("expected point lists for {} paths", l.k())));
        }
        if let Some(i) = w.sets.support().into_iter().find(|i| !targets.contains(i)) {
            return Ok(structural(format!("path {} has points but no witness targets it", i + 1)));
        }
    }
    for w in ws {
        let v = check_qlrf_witness(l, w)?;
        if !v.is_accepted() {
            return Ok(v);
        }
    }
    Ok(WitnessVerdict::Accepted)
}

fn subset_of(a: &[Point], b: &[Point]) -> bool {
    a.iter().all(|p| b.contains(p))
}

/// The `Ψ` system on the last component, or `Γ(j)` on components `j`, `j+1`,
/// extended with the ADFG rows when `global` is given.
fn chain_system(n: usize, w: &BgDimWitness, which: WitnessSystem) -> System<()> {
    let mut sys = System::new(n);
    let base = match which {
        WitnessSystem::Gamma(j) => &w.chain[j],
        _ => w.chain.last().expect("chain is nonempty"),
    };
    for x in base.all_x() {
        sys.nonneg(x, true, ());
    }
    for y in base.all_y() {
        sys.nonneg(y, false, ());
    }
    let x_rhs = if which == WitnessSystem::Psi { Rational::ONE } else { Rational::ZERO };
    for x in base.all_x() {
        sys.delta(x, x_rhs.clone(), ());
    }
    for y in base.all_y() {
        sys.delta(y, Rational::ZERO, ());
    }
    if let WitnessSystem::Gamma(j) = which {
        let next = &w.chain[j + 1];
        let mut sum = vec![Rational::ZERO; n + 1];
        for p in next.all_x().chain(next.all_y()) {
            for (s, r) in sum.iter_mut().zip(sys.delta_row(p)) {
                *s += r;
            }
        }
        sys.lp.add_row(sum, RowRel::Ge, Rational::ONE);
        sys.origin.push(());
    }
    if let Some(g) = &w.global {
        for x in g.all_x() {
            sys.nonneg(x, true, ());
        }
        for y in g.all_y() {
            sys.nonneg(y, false, ());
        }
    }
    sys
}

/// Checks a witness against a `w.class` LLRF with at most `d` components.
pub fn check_bg_dim_witness(l: &MlcLoop, w: &BgDimWitness, d: usize) -> Result<WitnessVerdict> {
    match w.class {
        RankingClass::Bg if w.global.is_some() => return Ok(structural("only ADFG witnesses carry global sets")),
        RankingClass::Adfg if w.global.is_none() => return Ok(structural("ADFG witnesses need the global sets")),
        RankingClass::Bg | RankingClass::Adfg => {}
        c => return Ok(structural(format!("no dimension witnesses for class {}", c.tag()))),
    }
    if d == 0 || w.chain.len() != d {
        return Ok(structural(format!("expected a chain of {d} components, found {}", w.chain.len())));
    }
    for (j, s) in w.chain.iter().enumerate() {
        if let Some(v) = check_sets(l, s, Some(j)) {
            return Ok(v);
        }
    }
    if let Some(g) = &w.global {
        if let Some(v) = check_sets(l, g, None) {
            return Ok(v);
        }
    }
    for j in 1..d {
        for i in 0..l.k() {
            let (a, b) = (&w.chain[j], &w.chain[j - 1]);
            if !subset_of(&a.x[i], &b.x[i]) || !subset_of(&a.y[i], &b.y[i]) {
                return Ok(structural(format!(
                    "component {} is not contained in component {j} on path {}",
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    let n = l.n();
    let mut systems = vec![WitnessSystem::Psi];
    systems.extend((0..d - 1).map(WitnessSystem::Gamma));
    for which in systems {
        if let Some(f) = chain_system(n, w, which).solution()? {
            return Ok(WitnessVerdict::Rejected(Rejection::Feasible { system: which, solution: f }));
        }
    }
    Ok(WitnessVerdict::Accepted)
}

/// Witness against a BG-LLRF (or ADFG-LLRF) of dimension at most `d` for
/// the integer loop, from the face chain of the greedy synthesis; `None` if
/// such a function exists.
pub fn build_dim_witness(l: &MlcLoop, class: RankingClass, d: usize) -> Result<Option<BgDimWitness>> {
    require_integer(l)?;
    if d == 0 {
        return Err(Error::Invalid("dimension bound must be at least 1".into()));
    }
    let paths = effective_paths(l)?;
    let chain = match class {
        RankingClass::Bg => bg_chain(&paths, Some(d))?,
        RankingClass::Adfg => adfg_chain(&paths, Some(d))?,
        c => return Err(Error::Invalid(format!("no dimension witnesses for class {}", c.tag()))),
    };
    if chain.complete {
        return Ok(None);
    }
    let all: Vec<usize> = (0..paths.len()).collect();
    let first = generator_sets(&paths, &all);
    let mut comps = vec![first.clone()];
    for j in 1..d {
        let mut next = comps[j - 1].clone();
        if let Some(sigma) = chain.sigmas.get(j - 1) {
            // the next face is {Δσ = 0}; Δσ ≥ 0 on the current one, so its
            // generators are the current ones where Δσ vanishes
            let dc = sigma.delta_coeffs();
            for i in 0..paths.len() {
                next.x[i].retain(|p| dot(&dc, p).is_zero());
                next.y[i].retain(|p| dot(&dc, p).is_zero());
                if next.x[i].is_empty() {
                    next.y[i].clear();
                }
            }
        }
        comps.push(next);
    }
    let global = (class == RankingClass::Adfg).then_some(first);
    let w = BgDimWitness { class, chain: comps, global };
    let w = minimize_dim_witness(l, w, d)?;
    Ok(Some(w))
}

/// Drops points while the witness stays accepted, until every single
/// removal is rejected. Removing a point from component `j` also removes it
/// from the later components, and an emptied `X_i` takes its rays along.
pub fn minimize_dim_witness(l: &MlcLoop, w: BgDimWitness, d: usize) -> Result<BgDimWitness> {
    let v = check_bg_dim_witness(l, &w, d)?;
    if !v.is_accepted() {
        return Err(Error::Contract(format!("constructed dimension witness is rejected: {v:?}")));
    }
    let mut w = w;
    loop {
        let mut changed = false;
        for m in dim_deletions(&w) {
            let cand = apply_deletion(&w, m);
            if check_bg_dim_witness(l, &cand, d)?.is_accepted() {
                w = cand;
                changed = true;
                break;
            }
        }
        if !changed {
            return Ok(w);
        }
    }
}

/// A single-point deletion: `component` is the chain position (`None` for
/// the ADFG global sets).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deletion {
    pub component: Option<usize>,
    pub path: usize,
    pub ray: bool,
    pub index: usize,
}

/// All single-point deletions of a dimension witness.
pub fn dim_deletions(w: &BgDimWitness) -> Vec<Deletion> {
    let mut out = Vec::new();
    let mut push = |component, s: &PointSets| {
        for path in 0..s.x.len() {
            for (ray, list) in [(false, &s.x[path]), (true, &s.y[path])] {
                for index in 0..list.len() {
                    out.push(Deletion { component, path, ray, index });
                }
            }
        }
    };
    for (j, s) in w.chain.iter().enumerate() {
        push(Some(j), s);
    }
    if let Some(g) = &w.global {
        push(None, g);
    }
    out
}

fn remove_point(s: &mut PointSets, path: usize, ray: bool, p: &Point) {
    let list = if ray { &mut s.y[path] } else { &mut s.x[path] };
    list.retain(|q| q != p);
    if s.x[path].is_empty() {
        s.y[path].clear();
    }
}

/// Applies a deletion, cascading along the chain to keep it nested.
pub fn apply_deletion(w: &BgDimWitness, m: Deletion) -> BgDimWitness {
    let mut out = w.clone();
    match m.component {
        None => {
            let g = out.global.as_mut().expect("deletion from absent global sets");
            let list = if m.ray { &g.y[m.path] } else { &g.x[m.path] };
            let p = list[m.index].clone();
            remove_point(g, m.path, m.ray, &p);
        }
        Some(j) => {
            let s = &w.chain[j];
            let p = if m.ray { s.y[m.path][m.index].clone() } else { s.x[m.path][m.index].clone() };
            for later in &mut out.chain[j..] {
                remove_point(later, m.path, m.ray, &p);
            }
        }
    }
    out
}

/// A QLRF witness with one point removed (an emptied `X_i` takes its rays
/// along).
pub fn qlrf_deletions(w: &QlrfWitness) -> Vec<QlrfWitness> {
    let mut out = Vec::new();
    for path in 0..w.sets.x.len() {
        for ray in [false, true] {
            let len = if ray { w.sets.y[path].len() } else { w.sets.x[path].len() };
            for index in 0..len {
                let mut c = w.clone();
                let p = if ray { w.sets.y[path][index].clone() } else { w.sets.x[path][index].clone() };
                remove_point(&mut c.sets, path, ray, &p);
                out.push(c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_loop;
    use crate::rational::int;

    fn ints(v: &[i64]) -> Point {
        v.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn counter_that_never_decreases() {
        let l = parse_loop("vars x\ndomain int\npath { x >= 0; x' = x + 1; }\n").unwrap();
        let w = build_qlrf_witness(&l, 0).unwrap().expect("no QLRF");
        assert!(check_qlrf_witness(&l, &w).unwrap().is_accepted());
        assert!(w.sets.point_count() <= 2 * l.n() + 3);
    }

    #[test]
    fn intro_loop_ranks_first_path() {
        let l = crate::reductions::intro_loop().with_domain(Domain::Integer);
        assert!(build_qlrf_witness(&l, 0).unwrap().is_none());
        let paths = effective_paths(&l).unwrap();
        let w = QlrfWitness { target: 0, sets: generator_sets(&paths, &[0, 1]) };
        match check_qlrf_witness(&l, &w).unwrap() {
            WitnessVerdict::Rejected(Rejection::Feasible { system: WitnessSystem::Qlrf, .. }) => {}
            v => panic!("unexpected verdict {v:?}"),
        }
    }

    #[test]
    fn membership_is_checked() {
        let l = parse_loop("vars x\ndomain int\npath { x >= 0; x' = x + 1; }\n").unwrap();
        let mut w = build_qlrf_witness(&l, 0).unwrap().unwrap();
        w.sets.x[0][0] = ints(&[-1, 0]);
        assert!(matches!(
            check_qlrf_witness(&l, &w).unwrap(),
            WitnessVerdict::Rejected(Rejection::Membership { .. })
        ));
    }
}
