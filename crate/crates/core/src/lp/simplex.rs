//! Dense two-phase tableau simplex with Bland's anti-cycling rule.

use super::{Direction, LpOutcome, LpProblem, RowRel};
use crate::rational::Rational;

/// How an original variable is expressed through nonnegative columns:
/// `x = offset + sum(sign * y_col)`.
struct VarMap {
    offset: Rational,
    cols: Vec<(usize, bool)>, // (column, negated)
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    // reduced costs z_j - c_j of the current objective (maximisation)
    z: Vec<Rational>,
    zval: Rational,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        if !piv.is_one() {
            let inv = piv.recip();
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            self.rhs[r] = &self.rhs[r] * &inv;
        }
        let nz: Vec<usize> = (0..self.ncols)
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        let prow: Vec<(usize, Rational)> =
            nz.iter().map(|&j| (j, self.rows[r][j].clone())).collect();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            let row = &mut self.rows[i];
            for (j, v) in &prow {
                row[*j] = row[*j].sub_mul(&f, v);
            }
            self.rhs[i] = self.rhs[i].sub_mul(&f, &prhs);
        }
        if !self.z[c].is_zero() {
            let f = self.z[c].clone();
            for (j, v) in &prow {
                self.z[*j] = self.z[*j].sub_mul(&f, v);
            }
            self.zval = self.zval.sub_mul(&f, &prhs);
        }
        self.basis[r] = c;
    }

    /// Installs the objective `max c·y` and prices out the basis.
    fn set_objective(&mut self, c: &[Rational]) {
        let mut z: Vec<Rational> = c.iter().map(|v| -v).collect();
        let mut zval = Rational::ZERO;
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !self.rows[i][j].is_zero() {
                    z[j] += cb * &self.rows[i][j];
                }
            }
            zval += cb * &self.rhs[i];
        }
        self.z = z;
        self.zval = zval;
    }

    /// Runs primal simplex on the installed objective, considering only
    /// columns `< allowed`. Returns false when unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.z[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

pub(super) fn run(p: &LpProblem) -> LpOutcome {
    // Substitute bounded/free variables by nonnegative columns.
    let mut maps = Vec::with_capacity(p.num_vars);
    let mut ncols = 0usize;
    let mut bound_rows: Vec<(usize, Rational)> = Vec::new();
    for (lo, hi) in &p.bounds {
        match (lo, hi) {
            (Some(l), hi) => {
                if let Some(h) = hi {
                    if h < l {
                        return LpOutcome::Infeasible;
                    }
                    bound_rows.push((ncols, h - l));
                }
                maps.push(VarMap { offset: l.clone(), cols: vec![(ncols, false)] });
                ncols += 1;
            }
            (None, Some(h)) => {
                maps.push(VarMap { offset: h.clone(), cols: vec![(ncols, true)] });
                ncols += 1;
            }
            (None, None) => {
                maps.push(VarMap {
                    offset: Rational::ZERO,
                    cols: vec![(ncols, false), (ncols + 1, true)],
                });
                ncols += 2;
            }
        }
    }
    let nstruct = ncols;

    // Rows over the structural columns with rhs made nonnegative.
    let mut srows: Vec<(Vec<Rational>, RowRel, Rational)> = Vec::new();
    for r in &p.rows {
        let mut coeffs = vec![Rational::ZERO; nstruct];
        let mut rhs = r.rhs.clone();
        for (j, a) in r.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let m = &maps[j];
            rhs -= a * &m.offset;
            for &(c, neg) in &m.cols {
                if neg {
                    coeffs[c] -= a;
                } else {
                    coeffs[c] += a;
                }
            }
        }
        srows.push((coeffs, r.rel, rhs));
    }
    for (c, ub) in bound_rows {
        let mut coeffs = vec![Rational::ZERO; nstruct];
        coeffs[c] = Rational::ONE;
        srows.push((coeffs, RowRel::Le, ub));
    }
    for (coeffs, rel, rhs) in srows.iter_mut() {
        if rhs.is_negative() {
            for v in coeffs.iter_mut() {
                *v = -&*v;
            }
            *rhs = -&*rhs;
            *rel = match rel {
                RowRel::Le => RowRel::Ge,
                RowRel::Ge => RowRel::Le,
                RowRel::Eq => RowRel::Eq,
            };
        }
    }

    let nslack = srows.iter().filter(|r| r.1 != RowRel::Eq).count();
    let nart = srows.iter().filter(|r| r.1 != RowRel::Le).count();
    let total = nstruct + nslack + nart;
    let m = srows.len();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut si, mut ai) = (nstruct, nstruct + nslack);
    for (coeffs, rel, b) in srows {
        let mut row = coeffs;
        row.resize(total, Rational::ZERO);
        match rel {
            RowRel::Le => {
                row[si] = Rational::ONE;
                basis.push(si);
                si += 1;
            }
            RowRel::Ge => {
                row[si] = -Rational::ONE;
                si += 1;
                row[ai] = Rational::ONE;
                basis.push(ai);
                ai += 1;
            }
            RowRel::Eq => {
                row[ai] = Rational::ONE;
                basis.push(ai);
                ai += 1;
            }
        }
        rows.push(row);
        rhs.push(b);
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis,
        z: Vec::new(),
        zval: Rational::ZERO,
        ncols: total,
    };

    // Phase 1: maximise minus the sum of artificials.
    let first_art = nstruct + nslack;
    if nart > 0 {
        let mut c = vec![Rational::ZERO; total];
        for v in c.iter_mut().skip(first_art) {
            *v = -Rational::ONE;
        }
        t.set_objective(&c);
        t.optimize(total);
        if t.zval.is_negative() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining (zero-level) artificials out of the basis.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= first_art {
                if let Some(j) = (0..first_art).find(|&j| !t.rows[i][j].is_zero()) {
                    t.pivot(i, j);
                    i += 1;
                } else {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                }
            } else {
                i += 1;
            }
        }
        for row in t.rows.iter_mut() {
            row.truncate(first_art);
        }
        t.ncols = first_art;
    }

    let extract = |t: &Tableau| -> Vec<Rational> {
        let mut y = vec![Rational::ZERO; t.ncols];
        for (i, &b) in t.basis.iter().enumerate() {
            y[b] = t.rhs[i].clone();
        }
        maps.iter()
            .map(|m| {
                let mut v = m.offset.clone();
                for &(c, neg) in &m.cols {
                    if neg {
                        v -= &y[c];
                    } else {
                        v += &y[c];
                    }
                }
                v
            })
            .collect()
    };

    let Some(obj) = &p.objective else {
        return LpOutcome::Feasible(extract(&t));
    };
    let sign = match obj.direction {
        Direction::Max => Rational::ONE,
        Direction::Min => -Rational::ONE,
    };
    let mut c = vec![Rational::ZERO; t.ncols];
    for (j, a) in obj.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let sa = &sign * a;
        for &(col, neg) in &maps[j].cols {
            if neg {
                c[col] -= &sa;
            } else {
                c[col] += &sa;
            }
        }
    }
    t.set_objective(&c);
    if !t.optimize(t.ncols) {
        return LpOutcome::Unbounded;
    }
    let x = extract(&t);
    let value = crate::rational::dot(&obj.coeffs, &x);
    LpOutcome::Optimal(x, value)
}
