//! Bounded and minimal dimension of lexicographic ranking functions.
//!
//! For BMS the search follows the partition view: component `r` must be an
//! LRF for every path of block `J_r` and non-increasing on the paths of later
//! blocks. Feasible blocks are downward closed and a residual set that can be
//! finished with `l` levels stays finishable when paths are removed, so only
//! maximal blocks are tried (include-first lexicographic order), and failures
//! are memoized per residual set.

use std::collections::{HashMap, HashSet};

use crate::affine::AffineFunction;
use crate::check::effective_paths;
use crate::error::{Error, Result};
use crate::farkas::ConditionKind;
use crate::llrf::{LexRankingFunction, RankingClass};
use crate::lp::{self, LpProblem, RowRel};
use crate::mlc::MlcLoop;
use crate::polyhedron::{GeneratorRep, Polyhedron};
use crate::rational::Rational;
use crate::synth::{adfg_on, bg_on, bms_run, find_lrf_on, BmsRun};

type Mask = u64;

fn members(m: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m >> i & 1 == 1)
}

/// Linear conditions on `(λ, λ₀)` stating that conditions hold at every
/// generator of the given polyhedra: at vertices with their own threshold,
/// along rays with threshold 0 and without the constant.
struct ConditionRows {
    n: usize,
    rows: HashSet<(Vec<Rational>, Rational)>,
}

impl ConditionRows {
    fn new(n: usize) -> ConditionRows {
        ConditionRows { n, rows: HashSet::new() }
    }

    fn add(&mut self, g: &GeneratorRep, kind: ConditionKind) {
        let n = self.n;
        let row = |v: &[Rational], with_const: bool| -> Vec<Rational> {
            let mut r: Vec<Rational> = match kind {
                ConditionKind::NonNegative => v[..n].to_vec(),
                _ => (0..n).map(|j| &v[j] - &v[n + j]).collect(),
            };
            let uses_const = kind == ConditionKind::NonNegative && with_const;
            r.push(if uses_const { Rational::ONE } else { Rational::ZERO });
            r
        };
        let vertex_rhs = match kind {
            ConditionKind::Decreasing => Rational::ONE,
            _ => Rational::ZERO,
        };
        for v in &g.vertices {
            self.rows.insert((row(v, true), vertex_rhs.clone()));
        }
        for r in &g.rays {
            let coeffs = row(r, false);
            if coeffs.iter().any(|c| !c.is_zero()) {
                self.rows.insert((coeffs, Rational::ZERO));
            }
        }
    }

    fn solve(self) -> Result<Option<AffineFunction>> {
        let mut p = LpProblem::new(self.n + 1);
        let mut rows: Vec<_> = self.rows.into_iter().collect();
        rows.sort();
        for (coeffs, rhs) in rows {
            p.add_row(coeffs, RowRel::Ge, rhs);
        }
        Ok(lp::solve(&p)?.point().map(|x| AffineFunction::new(x[..self.n].to_vec(), x[self.n].clone())))
    }
}

/// Memoizing BMS dimension search over a fixed list of prepared paths
/// (integer hulls already taken for integer loops).
#[derive(Debug)]
pub struct DimensionSolver {
    paths: Vec<Polyhedron>,
    n: usize,
    live: Mask,
    blocks: HashMap<(Mask, Mask), Option<AffineFunction>>,
    /// Largest level count known to be insufficient for a residual set.
    failed: HashMap<Mask, usize>,
    lp_solves: usize,
}

impl DimensionSolver {
    pub fn new(paths: Vec<Polyhedron>) -> Result<DimensionSolver> {
        if paths.len() > 64 {
            return Err(Error::Invalid("dimension search supports at most 64 paths".into()));
        }
        let n = paths.first().map_or(0, |q| q.dim() / 2);
        let mut live = 0;
        for (i, q) in paths.iter().enumerate() {
            if !q.is_empty() {
                live |= 1 << i;
            }
        }
        Ok(DimensionSolver { paths, n, live, blocks: HashMap::new(), failed: HashMap::new(), lp_solves: 0 })
    }

    pub fn for_loop(l: &MlcLoop) -> Result<DimensionSolver> {
        DimensionSolver::new(effective_paths(l)?)
    }

    /// Number of block LPs solved so far.
    pub fn lp_solves(&self) -> usize {
        self.lp_solves
    }

    /// A function ranking every path of `block` and non-increasing on the
    /// rest of `residual`.
    fn block(&mut self, block: Mask, residual: Mask) -> Result<Option<AffineFunction>> {
        if let Some(r) = self.blocks.get(&(block, residual)) {
            return Ok(r.clone());
        }
        let mut rows = ConditionRows::new(self.n);
        for i in members(block) {
            rows.add(self.paths[i].generators(), ConditionKind::NonNegative);
            rows.add(self.paths[i].generators(), ConditionKind::Decreasing);
        }
        for i in members(residual & !block) {
            rows.add(self.paths[i].generators(), ConditionKind::NonIncreasing);
        }
        self.lp_solves += 1;
        let r = rows.solve()?;
        self.blocks.insert((block, residual), r.clone());
        Ok(r)
    }

    /// Next maximal feasible block of `residual` in include-first
    /// lexicographic order, resuming the enumeration held in `stack`.
    fn next_maximal(&mut self, residual: Mask, stack: &mut Vec<(Mask, usize, Mask)>) -> Result<Option<Mask>> {
        let items: Vec<usize> = members(residual).collect();
        while let Some((set, i, dropped)) = stack.pop() {
            if i == items.len() {
                if set == 0 {
                    continue;
                }
                let mut maximal = true;
                for j in members(dropped) {
                    if self.block(set | 1 << j, residual)?.is_some() {
                        maximal = false;
                        break;
                    }
                }
                if maximal {
                    return Ok(Some(set));
                }
                continue;
            }
            let bit = 1 << items[i];
            if self.block(set | bit, residual)?.is_some() {
                stack.push((set, i + 1, dropped | bit));
                stack.push((set | bit, i + 1, dropped));
            } else {
                stack.push((set, i + 1, dropped));
            }
        }
        Ok(None)
    }

    /// Blocks `J_1, J_2, …` (at most `levels`) finishing `residual`.
    fn search(&mut self, residual: Mask, levels: usize) -> Result<Option<Vec<Mask>>> {
        if residual == 0 {
            return Ok(Some(Vec::new()));
        }
        if levels == 0 || self.failed.get(&residual).is_some_and(|&f| f >= levels) {
            return Ok(None);
        }
        if levels == 1 {
            let ok = self.block(residual, residual)?.is_some();
            if !ok {
                self.failed.insert(residual, 1);
            }
            return Ok(ok.then(|| vec![residual]));
        }
        let mut stack = if self.block(residual, residual)?.is_some() {
            // the whole residual is the only maximal block
            vec![(residual, residual.count_ones() as usize, 0)]
        } else {
            vec![(0, 0, 0)]
        };
        while let Some(j) = self.next_maximal(residual, &mut stack)? {
            if let Some(mut rest) = self.search(residual & !j, levels - 1)? {
                rest.insert(0, j);
                return Ok(Some(rest));
            }
        }
        let e = self.failed.entry(residual).or_insert(0);
        *e = (*e).max(levels);
        Ok(None)
    }

    /// A BMS-LLRF with at most `d` components, if one exists.
    pub fn at_most(&mut self, d: usize) -> Result<Option<LexRankingFunction>> {
        if d == 0 {
            return Err(Error::Invalid("dimension bound must be at least 1".into()));
        }
        let Some(blocks) = self.search(self.live, d)? else {
            return Ok(None);
        };
        let mut assignment = vec![None; self.paths.len()];
        let mut comps = Vec::with_capacity(blocks.len().max(1));
        let mut residual = self.live;
        for (r, &j) in blocks.iter().enumerate() {
            let f = self.block(j, residual)?.expect("block was feasible during search");
            for p in members(j) {
                assignment[p] = Some(r);
            }
            comps.push(f);
            residual &= !j;
        }
        if comps.is_empty() {
            comps.push(AffineFunction::zero(self.n));
        }
        Ok(Some(LexRankingFunction::new(comps, RankingClass::Bms, Some(assignment))))
    }

    /// Smallest BMS dimension, or `None` when no BMS-LLRF exists.
    pub fn minimize(&mut self) -> Result<Option<(usize, LexRankingFunction)>> {
        let upper = match bms_run(&self.paths)? {
            BmsRun::Stuck { .. } => return Ok(None),
            BmsRun::Found(f) => f,
        };
        for d in 1..upper.dimension() {
            if let Some(f) = self.at_most(d)? {
                return Ok(Some((f.dimension(), f)));
            }
        }
        Ok(Some((upper.dimension(), upper)))
    }
}

pub fn bms_dim_at_most(l: &MlcLoop, d: usize) -> Result<Option<LexRankingFunction>> {
    DimensionSolver::for_loop(l)?.at_most(d)
}

/// A ranking function of `class` with at most `d` components. BG and ADFG
/// use the greedy synthesizers, which are dimension-minimal.
pub fn dim_at_most(l: &MlcLoop, class: RankingClass, d: usize) -> Result<Option<LexRankingFunction>> {
    if d == 0 {
        return Err(Error::Invalid("dimension bound must be at least 1".into()));
    }
    let best = match class {
        RankingClass::Bms => return bms_dim_at_most(l, d),
        _ => min_dimension_with(l, class)?,
    };
    Ok(best.filter(|f| f.dimension() <= d))
}

/// Minimal dimension of a `class` ranking function, `None` if none exists.
pub fn min_dimension(l: &MlcLoop, class: RankingClass) -> Result<Option<usize>> {
    Ok(min_dimension_with(l, class)?.map(|f| f.dimension()))
}

/// As [`min_dimension`], also returning a witnessing function.
pub fn min_dimension_with(l: &MlcLoop, class: RankingClass) -> Result<Option<LexRankingFunction>> {
    let paths = effective_paths(l)?;
    match class {
        RankingClass::Lrf => Ok(find_lrf_on(&paths, l.n())?
            .map(|f| LexRankingFunction::new(vec![f], RankingClass::Lrf, None))),
        RankingClass::Bms => Ok(DimensionSolver::new(paths)?.minimize()?.map(|(_, f)| f)),
        RankingClass::Bg => bg_on(&paths, l.domain),
        RankingClass::Adfg => adfg_on(&paths),
    }
}

/// Number of ways to split `k` labelled paths into `d` ordered blocks where
/// only a trailing run of blocks may be empty: `Σ_{j ≤ d} j!·S(k, j)`.
pub fn ordered_partition_count(k: usize, d: usize) -> u128 {
    // s[j] = Stirling numbers of the second kind S(i, j) for the current i
    let mut s = vec![0u128; d + 1];
    s[0] = 1;
    for _ in 0..k {
        for j in (1..=d).rev() {
            s[j] = j as u128 * s[j] + s[j - 1];
        }
        s[0] = 0;
    }
    let mut fact = 1u128;
    let mut total = s[0];
    for (j, sj) in s.iter().enumerate().skip(1) {
        fact *= j as u128;
        total += fact * sj;
    }
    total
}
