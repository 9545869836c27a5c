use serde::{Deserialize, Serialize};

use super::fixtures::maxdim_path;
use crate::error::{Error, Result};
use crate::mlc::{Domain, MlcLoop};
use crate::polyhedron::{Constraint, Polyhedron};
use crate::rational::Rational;

/// `∃X₁…X_n ∀X_{n+1}…X_{2n} ¬φ` with `φ` a 3-CNF. Literals are DIMACS-style
/// nonzero integers: `v` is `X_v`, `-v` is `¬X_v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Qbf2Cnf {
    pub n: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl Qbf2Cnf {
    pub fn new(n: usize, clauses: Vec<[i32; 3]>) -> Result<Qbf2Cnf> {
        if n == 0 {
            return Err(Error::Invalid("the quantifier blocks need n >= 1".into()));
        }
        for (i, c) in clauses.iter().enumerate() {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > 2 * n {
                    return Err(Error::Invalid(format!(
                        "clause {} has literal {l} outside ±1..{}",
                        i + 1,
                        2 * n
                    )));
                }
            }
        }
        Ok(Qbf2Cnf { n, clauses })
    }

    /// DIMACS-like: `p cnf <2n> <m>`, then clauses of three literals each
    /// terminated by `0`; lines starting with `c` are comments.
    pub fn parse(text: &str) -> Result<Qbf2Cnf> {
        let mut header: Option<(usize, usize)> = None;
        let mut lits: Vec<i32> = Vec::new();
        let mut clauses = Vec::new();
        for (li, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let perr = |msg: String| Error::Parse { line: li + 1, col: 1, message: msg };
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(perr("expected `p cnf <vars> <clauses>`".into()));
                }
                let vars: usize = parts[2].parse().map_err(|_| perr("bad variable count".into()))?;
                let m: usize = parts[3].parse().map_err(|_| perr("bad clause count".into()))?;
                if vars == 0 || vars % 2 != 0 {
                    return Err(perr("the variable count must be a positive even number 2n".into()));
                }
                header = Some((vars / 2, m));
                continue;
            }
            if header.is_none() {
                return Err(perr("clause before the `p cnf` header".into()));
            }
            for tok in line.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| perr(format!("bad literal `{tok}`")))?;
                if l == 0 {
                    if lits.len() != 3 {
                        return Err(perr(format!("clause {} has {} literals, expected 3", clauses.len() + 1, lits.len())));
                    }
                    clauses.push([lits[0], lits[1], lits[2]]);
                    lits.clear();
                } else {
                    lits.push(l);
                }
            }
        }
        let (n, m) = header.ok_or_else(|| Error::Parse { line: 1, col: 1, message: "missing `p cnf` header".into() })?;
        if !lits.is_empty() {
            return Err(Error::Parse { line: text.lines().count(), col: 1, message: "unterminated clause".into() });
        }
        if clauses.len() != m {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                message: format!("header announces {m} clauses, found {}", clauses.len()),
            });
        }
        Qbf2Cnf::new(n, clauses)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("p cnf {} {}\n", 2 * self.n, self.clauses.len());
        for c in &self.clauses {
            s.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        s
    }

    /// Index pairs `((i, j), (r, s))` (0-based clause, 0-based literal
    /// position) that may not both be 1: complementary literals, and literals
    /// of the same clause.
    pub fn conflicts(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::new();
        let m = self.clauses.len();
        for i in 0..m {
            for j in 0..3 {
                for r in i..m {
                    for s in 0..3 {
                        if (r, s) <= (i, j) {
                            continue;
                        }
                        if r == i || self.clauses[i][j] == -self.clauses[r][s] {
                            out.push(((i, j), (r, s)));
                        }
                    }
                }
            }
        }
        out
    }
}

struct Layout {
    m: usize,
    n: usize,
}

impl Layout {
    fn x(&self, i: usize, j: usize) -> usize {
        4 * i + j
    }
    fn z(&self, v: usize, a: usize) -> usize {
        4 * self.m + 2 * v + a
    }
    fn w(&self) -> usize {
        4 * self.m + 2 * self.n
    }
    fn nv(&self) -> usize {
        4 * self.m + 2 * self.n + 1
    }
}

struct Rows {
    nv: usize,
    cs: Vec<Constraint>,
}

impl Rows {
    fn vec(&self, entries: &[(usize, bool, i64)]) -> Vec<Rational> {
        let mut c = vec![Rational::ZERO; 2 * self.nv];
        for &(j, primed, a) in entries {
            c[if primed { self.nv + j } else { j }] += Rational::from(a);
        }
        c
    }
    fn ge(&mut self, entries: &[(usize, bool, i64)], rhs: i64) {
        let c = self.vec(entries);
        self.cs.push(Constraint::ge(c, Rational::from(rhs)));
    }
    fn le(&mut self, entries: &[(usize, bool, i64)], rhs: i64) {
        let c = self.vec(entries);
        self.cs.push(Constraint::le(c, Rational::from(rhs)));
    }
    fn eq(&mut self, entries: &[(usize, bool, i64)], rhs: i64) {
        let c = self.vec(entries);
        self.cs.push(Constraint::eq(c, Rational::from(rhs)));
    }
    /// `v' = v + delta`, i.e. `v' − v = delta`.
    fn step(&mut self, v: usize, delta: i64) {
        self.eq(&[(v, true, 1), (v, false, -1)], delta);
    }
}

/// Integer loop with variables `x{i}_{0..3}` per clause, `z{v}_{0,1}` per
/// existential variable and `w`; paths are the satisfiability transition,
/// the choice transitions `(1,0), (1,1), …, (n,1)` and the anchor. It has a
/// BMS-LLRF of dimension 2 iff the sentence is true.
pub fn qbf_to_loop(q: &Qbf2Cnf) -> MlcLoop {
    let lay = Layout { m: q.clauses.len(), n: q.n };
    let nv = lay.nv();
    let mut names = Vec::with_capacity(nv);
    for i in 0..lay.m {
        for j in 0..4 {
            names.push(format!("x{}_{}", i + 1, j));
        }
    }
    for v in 0..lay.n {
        for a in 0..2 {
            names.push(format!("z{}_{}", v + 1, a));
        }
    }
    names.push("w".into());
    let mut paths = Vec::with_capacity(2 * lay.n + 2);

    let mut sat = Rows { nv, cs: Vec::new() };
    for i in 0..lay.m {
        for j in 1..4 {
            let x = lay.x(i, j);
            sat.ge(&[(x, false, 1)], 0);
            sat.le(&[(x, false, 1)], 1);
            sat.step(x, 0);
        }
    }
    for ((i, j), (r, s)) in q.conflicts() {
        sat.le(&[(lay.x(i, j + 1), false, 1), (lay.x(r, s + 1), false, 1)], 1);
    }
    for i in 0..lay.m {
        let x0 = lay.x(i, 0);
        sat.ge(&[(x0, false, 1)], 0);
        sat.eq(
            &[
                (x0, true, 1),
                (x0, false, -1),
                (lay.x(i, 1), false, -1),
                (lay.x(i, 2), false, -1),
                (lay.x(i, 3), false, -1),
            ],
            -1,
        );
    }
    for v in 0..lay.n {
        for a in 0..2 {
            // literal X_v for a = 0, ¬X_v for a = 1
            let lit = if a == 0 { v as i32 + 1 } else { -(v as i32 + 1) };
            let z = lay.z(v, a);
            sat.ge(&[(z, false, 1)], 0);
            let mut e = vec![(z, true, 1), (z, false, -1)];
            for (i, c) in q.clauses.iter().enumerate() {
                for (j, &l) in c.iter().enumerate() {
                    if l == lit {
                        e.push((lay.x(i, j + 1), false, 1));
                    }
                }
            }
            sat.eq(&e, 0);
        }
    }
    sat.step(lay.w(), 0);
    paths.push(sat.cs);

    for v in 0..lay.n {
        for a in 0..2 {
            let mut ch = Rows { nv, cs: Vec::new() };
            let z = lay.z(v, a);
            ch.ge(&[(z, false, 1)], 0);
            ch.step(z, -1);
            for u in (0..lay.n).filter(|&u| u != v) {
                for b in 0..2 {
                    ch.ge(&[(lay.z(u, b), false, 1)], 0);
                }
            }
            for u in 0..lay.n {
                for b in 0..2 {
                    if (u, b) != (v, a) {
                        ch.step(lay.z(u, b), 0);
                    }
                }
            }
            for i in 0..lay.m {
                let x0 = lay.x(i, 0);
                ch.ge(&[(x0, true, 1)], 0);
                ch.step(x0, 0);
            }
            ch.ge(&[(lay.w(), false, 1)], 0);
            ch.step(lay.w(), 0);
            paths.push(ch.cs);
        }
    }

    let mut anchor = Rows { nv, cs: Vec::new() };
    anchor.ge(&[(lay.w(), false, 1)], 0);
    anchor.step(lay.w(), -1);
    for u in 0..lay.n {
        for b in 0..2 {
            let z = lay.z(u, b);
            anchor.ge(&[(z, false, 1)], 0);
            anchor.step(z, 0);
        }
    }
    paths.push(anchor.cs);

    let paths = paths
        .into_iter()
        .map(|cs| Polyhedron::new(2 * nv, cs).expect("rows sized to the loop"))
        .collect();
    MlcLoop::new(names, paths, Domain::Integer).expect("generated names are distinct")
}

/// Adds variables `x`, `y` (kept fixed by the original paths) and the first
/// `d − 2` paths of the max-dimension family, so that dimension `d` is
/// achievable iff the sentence is true.
pub fn qbf_to_loop_padded(q: &Qbf2Cnf, d: usize) -> Result<MlcLoop> {
    if d <= 2 {
        return Err(Error::Invalid(format!("padding needs d > 2, got {d}")));
    }
    let base = qbf_to_loop(q);
    let n0 = base.n();
    let nv = n0 + 2;
    let (x, y) = (n0, n0 + 1);
    let lift = |c: &Constraint| {
        let mut coeffs = vec![Rational::ZERO; 2 * nv];
        for j in 0..n0 {
            coeffs[j] = c.coeffs[j].clone();
            coeffs[nv + j] = c.coeffs[n0 + j].clone();
        }
        Constraint { coeffs, rhs: c.rhs.clone(), relation: c.relation }
    };
    let mut names = base.var_names.clone();
    names.push("x".into());
    names.push("y".into());
    let mut paths = Vec::new();
    for p in &base.paths {
        let mut rows = Rows { nv, cs: p.constraints().iter().map(lift).collect() };
        rows.step(x, 0);
        rows.step(y, 0);
        paths.push(Polyhedron::new(2 * nv, rows.cs)?);
    }
    for i in 1..=d - 2 {
        paths.push(maxdim_path(nv, x, y, i));
    }
    MlcLoop::new(names, paths, Domain::Integer)
}
