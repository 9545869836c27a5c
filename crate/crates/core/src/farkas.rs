//! Affine Farkas encoding of "condition holds on every point of a polyhedron"
//! as linear constraints on the unknown coefficients of a function.
//!
//! For nonempty `Q = {x'' : A x'' ≤ c}`, `L·x'' + M ≥ 0` holds on all of `Q`
//! iff some `μ ≥ 0` has `μᵀA = −L` and `μᵀc ≤ M`.

use crate::affine::AffineFunction;
use crate::error::{Error, Result};
use crate::lp::{Bounds, Direction, LpProblem, RowRel};
use crate::polyhedron::Polyhedron;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionKind {
    /// `ρ(x) ≥ 0`
    NonNegative,
    /// `Δρ(x'') ≥ 1`
    Decreasing,
    /// `Δρ(x'') ≥ 0`
    NonIncreasing,
}

impl ConditionKind {
    pub fn tag(self) -> &'static str {
        match self {
            ConditionKind::NonNegative => "non_negative",
            ConditionKind::Decreasing => "decreasing",
            ConditionKind::NonIncreasing => "non_increasing",
        }
    }
}

/// `Σ coef·var + constant` over LP variables.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinExpr {
    pub terms: Vec<(usize, Rational)>,
    pub constant: Rational,
}

impl LinExpr {
    pub fn var(v: usize) -> LinExpr {
        LinExpr { terms: vec![(v, Rational::ONE)], constant: Rational::ZERO }
    }

    pub fn neg_var(v: usize) -> LinExpr {
        LinExpr { terms: vec![(v, -Rational::ONE)], constant: Rational::ZERO }
    }

    pub fn constant(c: Rational) -> LinExpr {
        LinExpr { terms: Vec::new(), constant: c }
    }

    pub fn zero() -> LinExpr {
        LinExpr::default()
    }
}

/// Sparse incremental builder for [`LpProblem`]s.
#[derive(Debug, Clone, Default)]
pub struct LpBuilder {
    bounds: Vec<Bounds>,
    rows: Vec<(Vec<(usize, Rational)>, RowRel, Rational)>,
    objective: Option<(Direction, Vec<(usize, Rational)>)>,
}

impl LpBuilder {
    pub fn new() -> LpBuilder {
        LpBuilder::default()
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    pub fn add_var(&mut self, lo: Option<Rational>, hi: Option<Rational>) -> usize {
        self.bounds.push((lo, hi));
        self.bounds.len() - 1
    }

    pub fn add_free(&mut self) -> usize {
        self.add_var(None, None)
    }

    pub fn add_nonneg(&mut self) -> usize {
        self.add_var(Some(Rational::ZERO), None)
    }

    pub fn add_row(&mut self, terms: Vec<(usize, Rational)>, rel: RowRel, rhs: Rational) -> usize {
        self.rows.push((terms, rel, rhs));
        self.rows.len() - 1
    }

    /// `expr rel rhs`.
    pub fn add_expr_row(&mut self, expr: &LinExpr, rel: RowRel, rhs: Rational) -> usize {
        let rhs = rhs - &expr.constant;
        self.add_row(expr.terms.clone(), rel, rhs)
    }

    pub fn set_objective(&mut self, dir: Direction, terms: Vec<(usize, Rational)>) {
        self.objective = Some((dir, terms));
    }

    pub fn build(&self) -> LpProblem {
        let n = self.num_vars();
        let dense = |terms: &[(usize, Rational)]| {
            let mut v = vec![Rational::ZERO; n];
            for (j, c) in terms {
                v[*j] += c;
            }
            v
        };
        let mut p = LpProblem::new(n);
        p.bounds = self.bounds.clone();
        for (t, rel, rhs) in &self.rows {
            p.add_row(dense(t), *rel, rhs.clone());
        }
        if let Some((d, t)) = &self.objective {
            p.set_objective(*d, dense(t));
        }
        p
    }
}

/// Unknown affine function `λ·x + λ₀` living in an [`LpBuilder`].
#[derive(Debug, Clone)]
pub struct Template {
    pub lambda: Vec<usize>,
    pub lambda0: usize,
}

impl Template {
    /// Allocates `n + 1` free variables.
    pub fn new(b: &mut LpBuilder, n: usize) -> Template {
        let lambda = (0..n).map(|_| b.add_free()).collect();
        let lambda0 = b.add_free();
        Template { lambda, lambda0 }
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn decode(&self, point: &[Rational]) -> AffineFunction {
        AffineFunction::new(
            self.lambda.iter().map(|&v| point[v].clone()).collect(),
            point[self.lambda0].clone(),
        )
    }

    /// Coefficients over `(x, x')` and constant of `ρ(x)`.
    pub fn source_form(&self) -> (Vec<LinExpr>, LinExpr) {
        let mut l: Vec<LinExpr> = self.lambda.iter().map(|&v| LinExpr::var(v)).collect();
        l.extend((0..self.n()).map(|_| LinExpr::zero()));
        (l, LinExpr::var(self.lambda0))
    }

    /// Coefficients over `(x, x')` of `Δρ`.
    pub fn delta_form(&self) -> Vec<LinExpr> {
        let mut l: Vec<LinExpr> = self.lambda.iter().map(|&v| LinExpr::var(v)).collect();
        l.extend(self.lambda.iter().map(|&v| LinExpr::neg_var(v)));
        l
    }
}

/// Multiplier variables introduced by one entailment, plus the slack
/// `M − μᵀc ≥ 0` when requested.
#[derive(Debug, Clone)]
pub struct Entailment {
    pub multipliers: Vec<usize>,
    pub slack: Option<usize>,
}

/// Adds rows asserting `L·x'' + M ≥ 0` on all of `q`. `q` must be nonempty.
pub fn entail_affine(
    b: &mut LpBuilder,
    q: &Polyhedron,
    l: &[LinExpr],
    m: &LinExpr,
    with_slack: bool,
) -> Result<Entailment> {
    if l.len() != q.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), found: l.len() });
    }
    let rows = q.le_rows();
    let mu: Vec<usize> = rows.iter().map(|_| b.add_nonneg()).collect();
    for j in 0..q.dim() {
        let mut terms: Vec<(usize, Rational)> = Vec::new();
        for (r, (a, _)) in rows.iter().enumerate() {
            if !a[j].is_zero() {
                terms.push((mu[r], a[j].clone()));
            }
        }
        terms.extend(l[j].terms.iter().cloned());
        if terms.is_empty() && l[j].constant.is_zero() {
            continue;
        }
        b.add_row(terms, RowRel::Eq, -&l[j].constant);
    }
    // μᵀc − M (+ s) ≤ 0 (= 0)
    let mut terms: Vec<(usize, Rational)> = Vec::new();
    for (r, (_, c)) in rows.iter().enumerate() {
        if !c.is_zero() {
            terms.push((mu[r], c.clone()));
        }
    }
    terms.extend(m.terms.iter().map(|(v, c)| (*v, -c)));
    let slack = if with_slack {
        let s = b.add_nonneg();
        terms.push((s, Rational::ONE));
        b.add_row(terms, RowRel::Eq, m.constant.clone());
        Some(s)
    } else {
        b.add_row(terms, RowRel::Le, m.constant.clone());
        None
    };
    Ok(Entailment { multipliers: mu, slack })
}

/// Adds the rows for `kind` on `q` for the template `t`.
pub fn entail_condition(
    b: &mut LpBuilder,
    q: &Polyhedron,
    t: &Template,
    kind: ConditionKind,
) -> Result<Entailment> {
    match kind {
        ConditionKind::NonNegative => {
            let (l, m) = t.source_form();
            entail_affine(b, q, &l, &m, false)
        }
        ConditionKind::Decreasing => {
            entail_affine(b, q, &t.delta_form(), &LinExpr::constant(-Rational::ONE), false)
        }
        ConditionKind::NonIncreasing => {
            entail_affine(b, q, &t.delta_form(), &LinExpr::zero(), false)
        }
    }
}

/// `Δρ ≥ ε` on `q` for an LP variable `eps`.
pub fn entail_decrease_by(
    b: &mut LpBuilder,
    q: &Polyhedron,
    t: &Template,
    eps: usize,
) -> Result<Entailment> {
    entail_affine(b, q, &t.delta_form(), &LinExpr::neg_var(eps), false)
}

fn require_nonempty(q: &Polyhedron) -> Result<()> {
    if q.is_empty() {
        Err(Error::Contract("entailment over an empty polyhedron".into()))
    } else {
        Ok(())
    }
}

/// Standalone system for one condition: variables `0..n` are `λ`, `n` is
/// `λ₀`, the rest are multipliers.
pub fn entail(q: &Polyhedron, kind: ConditionKind) -> Result<LpProblem> {
    require_nonempty(q)?;
    let mut b = LpBuilder::new();
    let t = Template::new(&mut b, q.dim() / 2);
    entail_condition(&mut b, q, &t, kind)?;
    Ok(b.build())
}

/// LRF system over a union of paths.
#[derive(Debug, Clone)]
pub enum LrfSystem {
    /// Every path is empty, so any function qualifies.
    Trivial,
    /// Feasible iff an LRF exists; decode points with [`LrfSystem::decode`].
    Problem(LpProblem, Template),
}

impl LrfSystem {
    pub fn decode(&self, point: &[Rational]) -> Option<AffineFunction> {
        match self {
            LrfSystem::Trivial => None,
            LrfSystem::Problem(_, t) => Some(t.decode(point)),
        }
    }
}

pub fn lrf_system(paths: &[Polyhedron]) -> Result<LrfSystem> {
    let Some(first) = paths.first() else {
        return Ok(LrfSystem::Trivial);
    };
    let n = first.dim() / 2;
    let mut b = LpBuilder::new();
    let t = Template::new(&mut b, n);
    let mut any = false;
    for q in paths {
        if q.dim() != 2 * n {
            return Err(Error::DimensionMismatch { expected: 2 * n, found: q.dim() });
        }
        if q.is_empty() {
            continue;
        }
        any = true;
        entail_condition(&mut b, q, &t, ConditionKind::NonNegative)?;
        entail_condition(&mut b, q, &t, ConditionKind::Decreasing)?;
    }
    if !any {
        return Ok(LrfSystem::Trivial);
    }
    Ok(LrfSystem::Problem(b.build(), t))
}
