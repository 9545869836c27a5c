//! Exact linear programming over [`Rational`].

mod simplex;

use crate::error::{Error, Result};
use crate::rational::{dot, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowRel {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub rel: RowRel,
    pub rhs: Rational,
}

impl Row {
    pub fn new(coeffs: Vec<Rational>, rel: RowRel, rhs: Rational) -> Row {
        Row { coeffs, rel, rhs }
    }

    pub fn holds_at(&self, point: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, point);
        match self.rel {
            RowRel::Le => lhs <= self.rhs,
            RowRel::Eq => lhs == self.rhs,
            RowRel::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Max,
    Min,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Objective {
    pub direction: Direction,
    pub coeffs: Vec<Rational>,
}

/// Lower and upper bound of one variable; `None` means unbounded on that side.
pub type Bounds = (Option<Rational>, Option<Rational>);

#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub num_vars: usize,
    pub rows: Vec<Row>,
    pub objective: Option<Objective>,
    pub bounds: Vec<Bounds>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Feasible(Vec<Rational>),
    Optimal(Vec<Rational>, Rational),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible)
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Feasible(p) | LpOutcome::Optimal(p, _) => Some(p),
            _ => None,
        }
    }
}

impl LpProblem {
    /// A problem over `num_vars` free variables with no rows.
    pub fn new(num_vars: usize) -> LpProblem {
        LpProblem {
            num_vars,
            rows: Vec::new(),
            objective: None,
            bounds: vec![(None, None); num_vars],
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<Rational>, rel: RowRel, rhs: Rational) -> usize {
        self.rows.push(Row::new(coeffs, rel, rhs));
        self.rows.len() - 1
    }

    pub fn set_objective(&mut self, direction: Direction, coeffs: Vec<Rational>) {
        self.objective = Some(Objective { direction, coeffs });
    }

    pub fn validate(&self) -> Result<()> {
        if self.bounds.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: self.bounds.len(),
            });
        }
        for r in &self.rows {
            crate::error::check_dim(self.num_vars, r.coeffs.len())?;
        }
        if let Some(o) = &self.objective {
            crate::error::check_dim(self.num_vars, o.coeffs.len())?;
        }
        Ok(())
    }

    /// Whether `point` satisfies every row and bound exactly.
    pub fn satisfied_by(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars
            && self.rows.iter().all(|r| r.holds_at(point))
            && self.bounds.iter().zip(point).all(|((lo, hi), v)| {
                lo.as_ref().map_or(true, |l| v >= l) && hi.as_ref().map_or(true, |h| v <= h)
            })
    }

    fn restricted(&self, keep: &[usize]) -> LpProblem {
        LpProblem {
            num_vars: self.num_vars,
            rows: keep.iter().map(|&i| self.rows[i].clone()).collect(),
            objective: None,
            bounds: self.bounds.clone(),
        }
    }
}

/// Solves `p` exactly with a two-phase tableau simplex under Bland's rule.
pub fn solve(p: &LpProblem) -> Result<LpOutcome> {
    p.validate()?;
    let out = simplex::run(p);
    if let Some(pt) = out.point() {
        if cfg!(debug_assertions) && !p.satisfied_by(pt) {
            return Err(Error::Contract("simplex produced an infeasible point".into()));
        }
    }
    Ok(out)
}

/// Convenience: is the row system (with bounds) feasible?
pub fn is_feasible(p: &LpProblem) -> Result<bool> {
    let mut q = p.clone();
    q.objective = None;
    Ok(!solve(&q)?.is_infeasible())
}

/// Deletion filter: returns an irreducible infeasible subset of row indices
/// (bounds are always kept).
pub fn minimal_infeasible_subset(p: &LpProblem) -> Result<Vec<usize>> {
    if is_feasible(p)? {
        return Err(Error::Contract(
            "minimal_infeasible_subset called on a feasible problem".into(),
        ));
    }
    let mut keep: Vec<usize> = (0..p.rows.len()).collect();
    let mut i = 0;
    while i < keep.len() {
        let mut trial = keep.clone();
        trial.remove(i);
        if is_feasible(&p.restricted(&trial))? {
            i += 1;
        } else {
            keep = trial;
        }
    }
    Ok(keep)
}
