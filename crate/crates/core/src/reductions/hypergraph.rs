use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mlc::{Domain, MlcLoop};
use crate::polyhedron::{Constraint, Polyhedron};
use crate::rational::Rational;

/// A 3-uniform hypergraph on vertices `1..=n_vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph3 {
    pub n_vertices: usize,
    pub faces: Vec<[usize; 3]>,
}

impl Hypergraph3 {
    pub fn new(n_vertices: usize, faces: Vec<[usize; 3]>) -> Result<Hypergraph3> {
        if n_vertices == 0 {
            return Err(Error::Invalid("a hypergraph needs at least one vertex".into()));
        }
        for (k, f) in faces.iter().enumerate() {
            if f.iter().any(|&v| v == 0 || v > n_vertices) {
                return Err(Error::Invalid(format!("face {} names a vertex outside 1..{n_vertices}", k + 1)));
            }
            if f[0] == f[1] || f[0] == f[2] || f[1] == f[2] {
                return Err(Error::Invalid(format!("face {} repeats a vertex", k + 1)));
            }
        }
        Ok(Hypergraph3 { n_vertices, faces })
    }

    /// Reads `n` on the first line, then three vertices per line; `#` starts
    /// a comment.
    pub fn parse(text: &str) -> Result<Hypergraph3> {
        let mut n = None;
        let mut faces = Vec::new();
        for (li, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse { line: li + 1, col: 1, message: e.to_string() })?;
            match (n, nums.len()) {
                (None, 1) => n = Some(nums[0]),
                (None, _) => {
                    return Err(Error::Parse { line: li + 1, col: 1, message: "expected the vertex count".into() })
                }
                (Some(_), 3) => faces.push([nums[0], nums[1], nums[2]]),
                (Some(_), _) => {
                    return Err(Error::Parse { line: li + 1, col: 1, message: "a face has exactly three vertices".into() })
                }
            }
        }
        let n = n.ok_or_else(|| Error::Parse { line: 1, col: 1, message: "empty hypergraph file".into() })?;
        Hypergraph3::new(n, faces)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n_vertices);
        for f in &self.faces {
            s.push_str(&format!("{} {} {}\n", f[0], f[1], f[2]));
        }
        s
    }
}

/// Rational loop with one variable per (vertex, face) incidence and one path
/// per vertex; it has a BMS-LLRF of dimension `d` iff the hypergraph has a
/// `d`-coloring without monochromatic faces.
pub fn hypergraph_to_loop(h: &Hypergraph3) -> MlcLoop {
    // variable for vertex i in face k
    let mut names = Vec::new();
    let mut incid: Vec<(usize, usize)> = Vec::new();
    for (k, f) in h.faces.iter().enumerate() {
        let mut vs = *f;
        vs.sort_unstable();
        for i in vs {
            names.push(format!("x{}_{}", i, k + 1));
            incid.push((i, k));
        }
    }
    let nv = names.len();
    let var = |i: usize, k: usize| incid.iter().position(|&p| p == (i, k)).unwrap();
    let row = |entries: &[(usize, i64)]| {
        let mut c = vec![Rational::ZERO; 2 * nv];
        for &(j, a) in entries {
            c[j] += Rational::from(a);
        }
        c
    };
    // Σ_{k ∋ v} x_{v,k} − x'_{v,k}
    let delta_sum = |v: usize| {
        let entries: Vec<(usize, i64)> = incid
            .iter()
            .enumerate()
            .filter(|(_, &(i, _))| i == v)
            .flat_map(|(j, _)| [(j, 1), (nv + j, -1)])
            .collect();
        row(&entries)
    };

    let mut paths = Vec::with_capacity(h.n_vertices);
    for i in 1..=h.n_vertices {
        let mut cs = vec![Constraint::ge(delta_sum(i), Rational::ONE)];
        for j in (1..=h.n_vertices).filter(|&j| j != i) {
            cs.push(Constraint::ge(delta_sum(j), Rational::ZERO));
        }
        for (k, f) in h.faces.iter().enumerate() {
            if f.contains(&i) {
                cs.push(Constraint::ge(row(&[(var(i, k), 1)]), Rational::ZERO));
            }
        }
        for (k, f) in h.faces.iter().enumerate() {
            if !f.contains(&i) {
                let mut vs = *f;
                vs.sort_unstable();
                for j in vs {
                    cs.push(Constraint::ge(row(&[(var(j, k), 1)]), Rational::ZERO));
                }
            }
        }
        for (k, f) in h.faces.iter().enumerate() {
            if f.contains(&i) {
                let mut vs = *f;
                vs.sort_unstable();
                for j in vs.into_iter().filter(|&j| j != i) {
                    cs.push(Constraint::ge(row(&[(var(i, k), 1), (var(j, k), 1)]), Rational::ZERO));
                }
            }
        }
        paths.push(Polyhedron::new(2 * nv, cs).expect("rows sized to the loop"));
    }
    MlcLoop::new(names, paths, Domain::Rational).expect("generated names are distinct")
}
