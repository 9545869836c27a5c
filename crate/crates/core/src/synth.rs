//! Synthesis of linear and lexicographic linear ranking functions.

use crate::affine::AffineFunction;
use crate::check::{effective_paths, holds};
use crate::error::{Error, Result};
use crate::farkas::{entail_affine, entail_condition, entail_decrease_by, lrf_system, ConditionKind, LinExpr, LpBuilder, LrfSystem, Template};
use crate::llrf::{LexRankingFunction, RankingClass};
use crate::lp::{self, Direction, LpOutcome, RowRel};
use crate::mlc::{Domain, MlcLoop};
use crate::polyhedra::{self, Extremum};
use crate::polyhedron::{Constraint, Polyhedron};
use crate::rational::{denominator_lcm, Rational};

fn nonempty_indices(paths: &[Polyhedron]) -> Vec<usize> {
    (0..paths.len()).filter(|&i| !paths[i].is_empty()).collect()
}

fn loop_n(paths: &[Polyhedron]) -> usize {
    paths.first().map_or(0, |q| q.dim() / 2)
}

pub fn find_lrf(l: &MlcLoop) -> Result<Option<AffineFunction>> {
    let paths = effective_paths(l)?;
    find_lrf_on(&paths, l.n())
}

/// LRF for the union of `paths` (already hulled for integer loops).
pub fn find_lrf_on(paths: &[Polyhedron], n: usize) -> Result<Option<AffineFunction>> {
    match lrf_system(paths)? {
        LrfSystem::Trivial => Ok(Some(AffineFunction::zero(n))),
        sys @ LrfSystem::Problem(..) => {
            let LrfSystem::Problem(p, _) = &sys else { unreachable!() };
            Ok(lp::solve(p)?.point().and_then(|x| sys.decode(x)))
        }
    }
}

/// Solves "ρ is an LRF for every path in `ranked` and non-increasing on every
/// path in `others`".
fn qlrf_for(paths: &[Polyhedron], ranked: &[usize], others: &[usize]) -> Result<Option<AffineFunction>> {
    let mut b = LpBuilder::new();
    let t = Template::new(&mut b, loop_n(paths));
    for &i in ranked {
        entail_condition(&mut b, &paths[i], &t, ConditionKind::NonNegative)?;
        entail_condition(&mut b, &paths[i], &t, ConditionKind::Decreasing)?;
    }
    for &j in others {
        entail_condition(&mut b, &paths[j], &t, ConditionKind::NonIncreasing)?;
    }
    Ok(lp::solve(&b.build())?.point().map(|x| t.decode(x)))
}

/// Whether `f` is an LRF for path `q`.
pub fn ranks(q: &Polyhedron, f: &AffineFunction) -> Result<bool> {
    Ok(holds(q, f, ConditionKind::NonNegative)? && holds(q, f, ConditionKind::Decreasing)?)
}

/// A quasi-LRF: non-increasing on every nonempty path and an LRF for at least
/// one. Seeds are tried in index order; the ranked set is then grown greedily
/// in index order and finally recomputed for the returned function.
pub fn find_bms_qlrf(paths: &[Polyhedron]) -> Result<Option<(AffineFunction, Vec<usize>)>> {
    let live = nonempty_indices(paths);
    if live.is_empty() {
        return Err(Error::Contract("find_bms_qlrf needs a nonempty path".into()));
    }
    for &i in &live {
        let others: Vec<usize> = live.iter().copied().filter(|&j| j != i).collect();
        let Some(mut f) = qlrf_for(paths, &[i], &others)? else {
            continue;
        };
        let mut ranked = vec![i];
        for &j in &live {
            if j == i || ranks(&paths[j], &f)? {
                if j != i {
                    ranked.push(j);
                }
                continue;
            }
            let mut trial = ranked.clone();
            trial.push(j);
            let rest: Vec<usize> = live.iter().copied().filter(|x| !trial.contains(x)).collect();
            if let Some(g) = qlrf_for(paths, &trial, &rest)? {
                f = g;
                ranked = trial;
            }
        }
        let mut final_ranked = Vec::new();
        for &j in &live {
            if ranks(&paths[j], &f)? {
                final_ranked.push(j);
            }
        }
        return Ok(Some((f, final_ranked)));
    }
    Ok(None)
}

/// Outcome of running the elimination algorithm to completion.
#[derive(Debug, Clone)]
pub enum BmsRun {
    Found(LexRankingFunction),
    /// No quasi-LRF exists for the residual set of (nonempty) path indices.
    Stuck { residual: Vec<usize> },
}

/// Elimination algorithm on prepared paths (integer hulls already taken).
pub fn bms_run(paths: &[Polyhedron]) -> Result<BmsRun> {
    let n = loop_n(paths);
    let mut residual = nonempty_indices(paths);
    let mut assignment: Vec<Option<usize>> = vec![None; paths.len()];
    let mut comps: Vec<AffineFunction> = Vec::new();
    while !residual.is_empty() {
        let sub: Vec<Polyhedron> = residual.iter().map(|&i| paths[i].clone()).collect();
        match find_bms_qlrf(&sub)? {
            None => return Ok(BmsRun::Stuck { residual }),
            Some((f, ranked)) => {
                let c = comps.len();
                for &r in &ranked {
                    assignment[residual[r]] = Some(c);
                }
                comps.push(f);
                residual = residual
                    .iter()
                    .enumerate()
                    .filter(|(loc, _)| !ranked.contains(loc))
                    .map(|(_, &g)| g)
                    .collect();
            }
        }
    }
    if comps.is_empty() {
        comps.push(AffineFunction::zero(n));
    }
    Ok(BmsRun::Found(LexRankingFunction::new(comps, RankingClass::Bms, Some(assignment))))
}

pub fn bms_llrf(l: &MlcLoop) -> Result<Option<LexRankingFunction>> {
    let paths = effective_paths(l)?;
    Ok(match bms_run(&paths)? {
        BmsRun::Found(f) => Some(f),
        BmsRun::Stuck { .. } => None,
    })
}

pub fn adfg_llrf(l: &MlcLoop) -> Result<Option<LexRankingFunction>> {
    let paths = effective_paths(l)?;
    adfg_on(&paths)
}

/// Greedy whole-path ADFG synthesis: every component is nonnegative on all
/// nonempty paths and non-increasing on the paths not yet ranked; each round
/// ranks a maximal set of remaining paths.
pub fn adfg_on(paths: &[Polyhedron]) -> Result<Option<LexRankingFunction>> {
    let n = loop_n(paths);
    let live = nonempty_indices(paths);
    let mut remaining = live.clone();
    let mut assignment: Vec<Option<usize>> = vec![None; paths.len()];
    let mut comps = Vec::new();
    while !remaining.is_empty() {
        let mut b = LpBuilder::new();
        let t = Template::new(&mut b, n);
        for &p in &live {
            entail_condition(&mut b, &paths[p], &t, ConditionKind::NonNegative)?;
        }
        let mut obj = Vec::new();
        for &p in &remaining {
            entail_condition(&mut b, &paths[p], &t, ConditionKind::NonIncreasing)?;
            let eps = b.add_var(Some(Rational::ZERO), Some(Rational::ONE));
            entail_decrease_by(&mut b, &paths[p], &t, eps)?;
            obj.push((eps, Rational::ONE));
        }
        b.set_objective(Direction::Max, obj);
        let LpOutcome::Optimal(x, value) = lp::solve(&b.build())? else {
            return Err(Error::Contract("bounded ADFG round LP has no optimum".into()));
        };
        if value.is_zero() {
            return Ok(None);
        }
        let f = t.decode(&x);
        let mut ranked = Vec::new();
        for &p in &remaining {
            if holds(&paths[p], &f, ConditionKind::Decreasing)? {
                ranked.push(p);
            }
        }
        if ranked.is_empty() {
            return Ok(None);
        }
        for &p in &ranked {
            assignment[p] = Some(comps.len());
        }
        comps.push(f);
        remaining.retain(|p| !ranked.contains(p));
    }
    if comps.is_empty() {
        comps.push(AffineFunction::zero(n));
    }
    Ok(Some(LexRankingFunction::new(comps, RankingClass::Adfg, Some(assignment))))
}

/// Face chain produced by the greedy BG rounds.
#[derive(Debug, Clone)]
pub struct BgChain {
    /// Quasi-ranking functions `σ_1..σ_s`; `σ_i` is nonnegative on the faces
    /// it was computed for and non-increasing on every original path whose
    /// face was still nonempty.
    pub sigmas: Vec<AffineFunction>,
    /// `faces[j][p]`: path `p` restricted to `Δσ_1 = … = Δσ_j = 0`.
    pub faces: Vec<Vec<Polyhedron>>,
    /// Whether every face became empty.
    pub complete: bool,
}

fn eq_delta(f: &AffineFunction) -> Constraint {
    Constraint::eq(f.delta_coeffs(), Rational::ZERO)
}

/// Runs the greedy BG rounds on prepared paths. Each round maximises the
/// support of the Farkas multipliers certifying `Δσ ≥ 0` on the current faces,
/// which yields the smallest faces `{Δσ = 0}` attainable by a single function.
pub fn bg_chain(paths: &[Polyhedron], max_rounds: Option<usize>) -> Result<BgChain> {
    face_chain(paths, max_rounds, false)
}

/// As [`bg_chain`], but every `σ_i` must be nonnegative on all nonempty
/// original paths (the ADFG restriction).
pub fn adfg_chain(paths: &[Polyhedron], max_rounds: Option<usize>) -> Result<BgChain> {
    face_chain(paths, max_rounds, true)
}

fn face_chain(paths: &[Polyhedron], max_rounds: Option<usize>, global_nonneg: bool) -> Result<BgChain> {
    let n = loop_n(paths);
    let live = nonempty_indices(paths);
    let mut faces: Vec<Polyhedron> = paths.to_vec();
    let mut alive: Vec<bool> = (0..paths.len()).map(|p| live.contains(&p)).collect();
    let mut chain = BgChain { sigmas: Vec::new(), faces: vec![faces.clone()], complete: false };
    loop {
        if !alive.iter().any(|&a| a) {
            chain.complete = true;
            return Ok(chain);
        }
        if max_rounds.is_some_and(|m| chain.sigmas.len() >= m) {
            return Ok(chain);
        }
        let mut b = LpBuilder::new();
        let t = Template::new(&mut b, n);
        let first = chain.sigmas.is_empty();
        if global_nonneg {
            for &p in &live {
                entail_condition(&mut b, &paths[p], &t, ConditionKind::NonNegative)?;
            }
        }
        let mut obj = Vec::new();
        for &p in &live {
            if !alive[p] {
                continue;
            }
            if !first {
                entail_condition(&mut b, &paths[p], &t, ConditionKind::NonIncreasing)?;
            }
            if !global_nonneg {
                entail_condition(&mut b, &faces[p], &t, ConditionKind::NonNegative)?;
            }
            let e = entail_affine(&mut b, &faces[p], &t.delta_form(), &LinExpr::zero(), true)?;
            for v in e.multipliers.iter().copied().chain(e.slack) {
                let tv = b.add_var(Some(Rational::ZERO), Some(Rational::ONE));
                b.add_row(vec![(tv, Rational::ONE), (v, -Rational::ONE)], RowRel::Le, Rational::ZERO);
                obj.push((tv, Rational::ONE));
            }
        }
        b.set_objective(Direction::Max, obj);
        let LpOutcome::Optimal(x, _) = lp::solve(&b.build())? else {
            return Err(Error::Contract("bounded BG round LP has no optimum".into()));
        };
        let sigma = t.decode(&x);
        let mut progressed = false;
        let mut next = faces.clone();
        for &p in &live {
            if !alive[p] {
                continue;
            }
            match polyhedra::maximize(&faces[p], &sigma.delta_coeffs())? {
                Extremum::Attained(v, _) if v.is_zero() => {}
                Extremum::Empty => {}
                _ => {
                    progressed = true;
                    next[p] = faces[p].intersect(&[eq_delta(&sigma)])?;
                }
            }
        }
        if !progressed {
            return Ok(chain);
        }
        for &p in &live {
            if alive[p] && next[p].is_empty() {
                alive[p] = false;
            }
        }
        faces = next;
        chain.sigmas.push(sigma);
        chain.faces.push(faces.clone());
    }
}

pub fn bg_llrf(l: &MlcLoop) -> Result<Option<LexRankingFunction>> {
    let paths = effective_paths(l)?;
    bg_on(&paths, l.domain)
}

pub fn bg_on(paths: &[Polyhedron], domain: Domain) -> Result<Option<LexRankingFunction>> {
    let n = loop_n(paths);
    let chain = bg_chain(paths, None)?;
    if !chain.complete {
        return Ok(None);
    }
    if chain.sigmas.is_empty() {
        return Ok(Some(LexRankingFunction::new(vec![AffineFunction::zero(n)], RankingClass::Bg, None)));
    }
    let comps = match domain {
        // On integer points Δσ > 0 implies Δσ ≥ 1/D for D the denominator lcm.
        Domain::Integer => chain
            .sigmas
            .iter()
            .map(|s| s.scale(&Rational::from(denominator_lcm(&s.coeffs))))
            .collect(),
        Domain::Rational => rational_bg_components(paths, &chain.sigmas)?,
    };
    Ok(Some(LexRankingFunction::new(comps, RankingClass::Bg, None)))
}

/// Minimum of `coeffs·x''` over `q ∩ {Δτ ≤ 1 for τ in prefix}`.
fn min_over_unranked(q: &Polyhedron, prefix: &[AffineFunction], coeffs: &[Rational]) -> Result<Extremum> {
    let extra: Vec<Constraint> = prefix
        .iter()
        .map(|t| Constraint::le(t.delta_coeffs(), Rational::ONE))
        .collect();
    polyhedra::minimize(&q.intersect(&extra)?, coeffs)
}

/// Turns the rational face chain into a BG-LLRF with decrease at least 1.
///
/// With `τ_j = M σ_j + C_j`, a transition not ranked by `τ_1..τ_{j-1}` has
/// `Δσ_l < 1/M` for `l < j`; on that set `σ_j` is bounded below, and for large
/// `M` the last function decreases by a positive amount there. `M` is doubled
/// until both hold and the result passes the exact checker.
fn rational_bg_components(paths: &[Polyhedron], sigmas: &[AffineFunction]) -> Result<Vec<AffineFunction>> {
    let live = nonempty_indices(paths);
    let raw = LexRankingFunction::new(sigmas.to_vec(), RankingClass::Bg, None);
    if crate::check::check_llrf_on(paths, Domain::Rational, &raw)?.is_valid() {
        return Ok(sigmas.to_vec());
    }
    let d = sigmas.len();
    let mut m = Rational::ONE;
    'scale: for _ in 0..64 {
        let mut taus: Vec<AffineFunction> = Vec::with_capacity(d);
        for (j, s) in sigmas.iter().enumerate() {
            let scaled = if j + 1 < d {
                s.scale(&m)
            } else {
                let mut least: Option<Rational> = None;
                for &p in &live {
                    match min_over_unranked(&paths[p], &taus, &s.delta_coeffs())? {
                        Extremum::Empty => {}
                        Extremum::Unbounded => {
                            m = &m * Rational::from(2);
                            continue 'scale;
                        }
                        Extremum::Attained(v, _) => {
                            least = Some(match least {
                                None => v,
                                Some(l) => l.min(v),
                            })
                        }
                    }
                }
                match least {
                    Some(v) if v.is_positive() => s.scale(&v.recip()),
                    Some(_) => {
                        m = &m * Rational::from(2);
                        continue 'scale;
                    }
                    None => s.clone(),
                }
            };
            let mut shift = Rational::ZERO;
            for &p in &live {
                match min_over_unranked(&paths[p], &taus, &scaled.source_coeffs())? {
                    Extremum::Empty => {}
                    Extremum::Unbounded => {
                        m = &m * Rational::from(2);
                        continue 'scale;
                    }
                    Extremum::Attained(v, _) => {
                        let need = -(v + &scaled.constant);
                        if need > shift {
                            shift = need;
                        }
                    }
                }
            }
            taus.push(scaled.shift(&shift));
        }
        let cand = LexRankingFunction::new(taus.clone(), RankingClass::Bg, None);
        if crate::check::check_llrf_on(paths, Domain::Rational, &cand)?.is_valid() {
            return Ok(taus);
        }
        m = &m * Rational::from(2);
    }
    Err(Error::Contract("could not scale the BG face chain into a ranking function".into()))
}
