//! Acceptance criteria AC1-AC8. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use lexrank::check::{check_llrf, effective_paths};
use lexrank::dimension::{bms_dim_at_most, min_dimension, DimensionSolver};
use lexrank::polyhedra::{integer_hull, integer_hull_calls, minimize, Extremum};
use lexrank::reductions::{
    dimension_gap_loop, dimension_gap_loop_verbatim, hypergraph_to_loop, intro_loop, maxdim_family, qbf_to_loop,
    Hypergraph3, Qbf2Cnf,
};
use lexrank::synth::{adfg_llrf, bg_llrf, bms_llrf, find_bms_qlrf, find_lrf};
use lexrank::witness::{
    apply_deletion, build_dim_witness, build_no_bms_llrf_witness, build_qlrf_witness, check_bg_dim_witness,
    check_no_bms_llrf_witness, check_qlrf_witness, dim_deletions, qlrf_deletions, BgDimWitness, QlrfWitness,
};
use lexrank::{
    AffineFunction, Constraint, Domain, LexRankingFunction, MlcLoop, Polyhedron, Rational, RankingClass, Relation,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: lexrank::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn r(n: i64) -> Rational {
    Rational::from(n)
}

// ---------------------------------------------------------------- AC1

fn run_cli(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["lexrank".to_string()];
    full.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = lexrank::cli::run(full, &mut out, &mut err);
    let v = serde_json::from_slice(&out).unwrap_or(serde_json::Value::Null);
    (code, v)
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let dir = std::env::temp_dir().join(format!("lexrank-ac1-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let file = dir.join("intro.mlc");
    std::fs::write(&file, lexrank::format::print_loop(&intro_loop())).map_err(|e| e.to_string())?;
    let file = file.display().to_string();

    let (code, v) = run_cli(&["synth", &file, "--class", "lrf"]);
    ensure(code == 1 && v["status"] == "none", || format!("synth lrf: exit {code}, {v}"))?;

    for dom in ["rat", "int"] {
        let (code, v) = run_cli(&["synth", &file, "--class", "bms", "--domain", dom]);
        ensure(code == 0 && v["dimension"] == 2, || format!("synth bms {dom}: exit {code}, {v}"))?;
        ensure(v["assignment"] == serde_json::json!([1, 1, 2, 2]), || format!("{dom}: assignment {}", v["assignment"]))?;
        let l = intro_loop().with_domain(if dom == "rat" { Domain::Rational } else { Domain::Integer });
        let f = e2s(bms_llrf(&l))?.ok_or("bms_llrf returned None")?;
        ensure(f.dimension() == 2 && f.ranked_by(0) == [0, 1] && f.ranked_by(1) == [2, 3], || format!("{dom}: {f:?}"))?;
        ensure(e2s(check_llrf(&l, &f))?.is_valid(), || format!("{dom}: synthesized function rejected"))?;
    }

    let cand = dir.join("xy.json");
    std::fs::write(&cand, r#"{"components":[["1","0","0","0"],["0","1","0","0"]]}"#).map_err(|e| e.to_string())?;
    let cand = cand.display().to_string();
    for (class, want) in [("bms", "valid"), ("bg", "invalid"), ("adfg", "invalid")] {
        let (_, v) = run_cli(&["check", &file, "--candidate", &cand, "--class", class]);
        ensure(v["verdict"] == want, || format!("<x,y> as {class}: {v}"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("dimension 2 in both domains, <x,y> valid only as BMS, {t:.2?}"))
}

// ---------------------------------------------------------------- AC2

fn ac2() -> Outcome {
    let mut t5 = Duration::ZERO;
    for k in 1..=5 {
        let start = Instant::now();
        let l = maxdim_family(k);
        let d = e2s(min_dimension(&l, RankingClass::Bms))?;
        ensure(d == Some(k), || format!("k={k}: min dimension {d:?}"))?;
        if k >= 2 {
            ensure(e2s(bg_llrf(&l))?.is_none(), || format!("k={k}: bg_llrf found a function"))?;
            ensure(e2s(adfg_llrf(&l))?.is_none(), || format!("k={k}: adfg_llrf found a function"))?;
        }
        let comps = (1..=k).map(|i| AffineFunction::new(vec![r(1), r(i as i64)], r(0))).collect();
        let lit = LexRankingFunction::new(comps, RankingClass::Bms, Some((0..k).map(Some).collect()));
        ensure(e2s(check_llrf(&l, &lit))?.is_valid(), || format!("k={k}: literal tuple rejected"))?;
        if k == 5 {
            t5 = start.elapsed();
        }
    }
    ensure(t5 < Duration::from_secs(10), || format!("k=5 took {t5:?}"))?;
    Ok(format!("min dimension k for k=1..5, no BG/ADFG for k>=2, k=5 in {t5:.2?}"))
}

// ---------------------------------------------------------------- AC3

fn ac3() -> Outcome {
    let start = Instant::now();
    for dom in [Domain::Rational, Domain::Integer] {
        let l = dimension_gap_loop().with_domain(dom);
        for (class, want) in [(RankingClass::Bms, 3), (RankingClass::Bg, 4), (RankingClass::Adfg, 5)] {
            let got = e2s(min_dimension(&l, class))?;
            ensure(got == Some(want), || format!("{dom:?} {class:?}: {got:?}, expected {want}"))?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    // the table as printed (no s >= 0 on path 1) has no ADFG-LLRF
    let v = dimension_gap_loop_verbatim();
    let adfg = e2s(min_dimension(&v, RankingClass::Adfg))?;
    Ok(format!(
        "BMS 3, BG 4, ADFG 5 in both domains ({t:.2?}); fixture includes s >= 0 on path 1, printed variant gives ADFG {adfg:?}"
    ))
}

// ---------------------------------------------------------------- AC4

fn colorable(h: &Hypergraph3, d: usize) -> bool {
    let n = h.n_vertices;
    let mut color = vec![0usize; n + 1];
    loop {
        if h.faces.iter().all(|f| !(color[f[0]] == color[f[1]] && color[f[1]] == color[f[2]])) {
            return true;
        }
        let mut i = 1;
        while i <= n && color[i] == d - 1 {
            color[i] = 0;
            i += 1;
        }
        if i > n {
            return false;
        }
        color[i] += 1;
    }
}

fn subsets_up_to(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        f(cur);
        if cur.len() == k {
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

fn ac4() -> Outcome {
    let start = Instant::now();
    let (mut graphs, mut mismatches, mut errors) = (0usize, Vec::new(), Vec::new());
    for n in 1..=6 {
        let mut all = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    all.push([a, b, c]);
                }
            }
        }
        subsets_up_to(all.len(), 4, &mut |sel| {
            let h = Hypergraph3::new(n, sel.iter().map(|&i| all[i]).collect()).expect("valid faces");
            graphs += 1;
            let run = || -> lexrank::Result<Vec<(usize, bool, bool)>> {
                let l = hypergraph_to_loop(&h);
                let mut solver = DimensionSolver::for_loop(&l)?;
                let mut out = Vec::new();
                for d in [2, 3] {
                    let f = solver.at_most(d)?;
                    let valid = match &f {
                        Some(f) => check_llrf(&l, f)?.is_valid(),
                        None => true,
                    };
                    out.push((d, f.is_some() && valid, colorable(&h, d)));
                }
                Ok(out)
            };
            match run() {
                Ok(res) => {
                    for (d, got, want) in res {
                        if got != want {
                            mismatches.push(format!("{:?} d={d}: got {got}, oracle {want}", h.faces));
                        }
                    }
                }
                Err(e) => errors.push(format!("{:?}: {e}", h.faces)),
            }
        });
    }
    let t = start.elapsed();
    ensure(errors.is_empty(), || format!("{} errors, first: {}", errors.len(), errors[0]))?;
    ensure(mismatches.is_empty(), || format!("{} mismatches, first: {}", mismatches.len(), mismatches[0]))?;
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!("{graphs} hypergraphs x d in {{2,3}}, 0 mismatches, {t:.1?}"))
}

// ---------------------------------------------------------------- AC5

/// `∃X₁…X_n ∀X_{n+1}…X_{2n} ¬φ` by truth table.
fn qbf_truth(q: &Qbf2Cnf) -> bool {
    let n = q.n;
    (0..1u32 << n).any(|e| {
        (0..1u32 << n).all(|u| {
            let val = |l: i32| {
                let v = l.unsigned_abs() as usize - 1;
                let b = if v < n { e >> v & 1 == 1 } else { u >> (v - n) & 1 == 1 };
                b == (l > 0)
            };
            !q.clauses.iter().all(|c| c.iter().any(|&l| val(l)))
        })
    })
}

/// Path layout of the QBF loop: satisfiability path, then choice paths
/// `(v, 0), (v, 1)` per existential variable, then the anchor.
fn qbf_structure(q: &Qbf2Cnf, f: &LexRankingFunction) -> Result<(), String> {
    let a = f.assignment.as_ref().ok_or("no assignment")?;
    let anchor = 2 * q.n + 1;
    ensure(a[anchor] == Some(0), || format!("anchor ranked by {:?}", a[anchor]))?;
    ensure(a[0] == Some(1), || format!("satisfiability path ranked by {:?}", a[0]))?;
    for v in 0..q.n {
        let pair = (a[1 + 2 * v], a[2 + 2 * v]);
        ensure(pair == (Some(0), Some(1)) || pair == (Some(1), Some(0)), || {
            format!("choice pair {} not split: {pair:?}", v + 1)
        })?;
    }
    Ok(())
}

fn ac5() -> Outcome {
    let start = Instant::now();
    let corpus = include_str!("data/qbf_corpus.jsonl");
    let mut counts = (0, 0);
    for (i, line) in corpus.lines().enumerate() {
        let q: Qbf2Cnf = serde_json::from_str(line).map_err(|e| e.to_string())?;
        ensure(q.n <= 2 && q.clauses.len() <= 3, || format!("instance {} out of range", i + 1))?;
        let l = qbf_to_loop(&q);
        ensure(l.domain == Domain::Integer, || "QBF loop is not integer".into())?;
        let got = e2s(bms_dim_at_most(&l, 2))?;
        let want = qbf_truth(&q);
        ensure(got.is_some() == want, || format!("instance {} {line}: got {}, oracle {want}", i + 1, got.is_some()))?;
        if let Some(f) = got {
            ensure(e2s(check_llrf(&l, &f))?.is_valid(), || format!("instance {}: function rejected", i + 1))?;
            qbf_structure(&q, &f).map_err(|e| format!("instance {} {line}: {e}", i + 1))?;
            counts.0 += 1;
        } else {
            counts.1 += 1;
        }
    }
    let t = start.elapsed();
    ensure(counts.0 + counts.1 == 50, || format!("corpus has {} instances", counts.0 + counts.1))?;
    ensure(t < Duration::from_secs(600), || format!("took {t:?}"))?;
    Ok(format!("50 instances ({} true, {} false), 0 mismatches, structure holds, {t:.1?}", counts.0, counts.1))
}

// ---------------------------------------------------------------- AC6

type P3 = [i64; 3];

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
fn dot(a: P3, b: P3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
fn cross(a: P3, b: P3) -> P3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Whether `p` lies in the convex hull of the other points, by
/// Carathéodory: some segment, triangle or tetrahedron contains it.
fn in_hull_of_others(p: P3, pts: &[P3]) -> bool {
    let o: Vec<P3> = pts.iter().copied().filter(|&q| q != p).collect();
    let m = o.len();
    for i in 0..m {
        for j in i + 1..m {
            let (u, v) = (sub(o[j], o[i]), sub(p, o[i]));
            if cross(u, v) == [0; 3] && dot(u, v) >= 0 && dot(u, v) <= dot(u, u) {
                return true;
            }
            for k in j + 1..m {
                let w = sub(o[k], o[i]);
                let nrm = cross(u, w);
                if nrm != [0; 3] && dot(v, nrm) == 0 {
                    let nn = dot(nrm, nrm);
                    let s = dot(cross(v, w), nrm);
                    let t = dot(cross(u, v), nrm);
                    if s >= 0 && t >= 0 && s + t <= nn {
                        return true;
                    }
                }
                for l in k + 1..m {
                    let z = sub(o[l], o[i]);
                    let det = dot(u, cross(w, z));
                    if det == 0 {
                        continue;
                    }
                    let bu = dot(v, cross(w, z));
                    let bw = dot(u, cross(v, z));
                    let bz = dot(u, cross(w, v));
                    let sg = det.signum();
                    let (bu, bw, bz, det) = (bu * sg, bw * sg, bz * sg, det * sg);
                    if bu >= 0 && bw >= 0 && bz >= 0 && bu + bw + bz <= det {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Drops points that are the midpoint of two other points of the set along
/// a direction in `{-1, 0, 1}^3`; such points are never extreme, and every
/// extreme point survives.
fn hull_candidates(pts: &[P3]) -> Vec<P3> {
    let set: HashSet<P3> = pts.iter().copied().collect();
    let mut dirs = Vec::new();
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                if [a, b, c] > [0, 0, 0] {
                    dirs.push([a, b, c]);
                }
            }
        }
    }
    pts.iter()
        .copied()
        .filter(|&p| !dirs.iter().any(|&d| set.contains(&sub(p, d)) && set.contains(&sub(p, [-d[0], -d[1], -d[2]]))))
        .collect()
}

fn random_bounded(rng: &mut StdRng, dim: usize) -> Polyhedron {
    loop {
        let m = rng.gen_range(dim + 1..=dim + 4);
        let cs = (0..m)
            .map(|_| {
                let a = (0..dim).map(|_| r(rng.gen_range(-5..=5))).collect();
                Constraint::le(a, r(rng.gen_range(-5..=10)))
            })
            .collect();
        let q = Polyhedron::new(dim, cs).expect("sized rows");
        let g = q.generators();
        if !g.is_empty() && g.is_bounded() {
            return q;
        }
    }
}

fn lattice_points(q: &Polyhedron) -> Vec<P3> {
    let dim = q.dim();
    let g = q.generators();
    let mut lo = [0i64; 3];
    let mut hi = [0i64; 3];
    for j in 0..dim {
        let vals = g.vertices.iter().map(|v| v[j].clone());
        let min = vals.clone().min().unwrap().ceil();
        let max = vals.max().unwrap().floor();
        lo[j] = min.as_small().unwrap().0;
        hi[j] = max.as_small().unwrap().0;
    }
    let mut out = Vec::new();
    let mut p = lo;
    if (0..dim).any(|j| lo[j] > hi[j]) {
        return out;
    }
    loop {
        let x: Vec<Rational> = p[..dim].iter().map(|&a| r(a)).collect();
        if q.constraints().iter().all(|c| c.holds_at(&x)) {
            out.push(p);
        }
        let mut j = 0;
        while j < dim && p[j] == hi[j] {
            p[j] = lo[j];
            j += 1;
        }
        if j == dim {
            return out;
        }
        p[j] += 1;
    }
}

fn ac6() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(6);
    let (mut points, mut empty) = (0, 0);
    for case in 0..100 {
        let dim = if case % 2 == 0 { 2 } else { 3 };
        let q = random_bounded(&mut rng, dim);
        let pts = lattice_points(&q);
        let cands = hull_candidates(&pts);
        let oracle: BTreeSet<Vec<Rational>> = cands
            .iter()
            .filter(|&&p| !in_hull_of_others(p, &cands))
            .map(|p| p[..dim].iter().map(|&a| r(a)).collect())
            .collect();
        let hull = e2s(integer_hull(&q))?;
        let g = hull.generators();
        ensure(g.rays.is_empty(), || format!("case {case}: hull of a bounded polyhedron has rays"))?;
        let got: BTreeSet<Vec<Rational>> = g.vertices.iter().cloned().collect();
        ensure(got.len() == g.vertices.len(), || format!("case {case}: repeated vertices"))?;
        ensure(got == oracle, || format!("case {case}: {:?}\nhull {got:?}\noracle {oracle:?}", q.constraints()))?;
        points += pts.len();
        empty += usize::from(pts.is_empty());
    }
    let t = start.elapsed();
    Ok(format!("100 polyhedra ({empty} without lattice points, {points} lattice points), 0 mismatches, {t:.2?}"))
}

// ---------------------------------------------------------------- AC7

enum Case {
    Qlrf(usize),
    Bms,
    Dim(RankingClass, usize),
}

fn parse(src: &str) -> MlcLoop {
    lexrank::format::parse_loop(src).expect("corpus loop parses").with_domain(Domain::Integer)
}

fn witness_corpus() -> Vec<(String, MlcLoop, Case)> {
    let counter = parse("vars x\npath { x >= 0; x' = x + 1; }\n");
    let swap = parse("vars x y\npath { x >= 0; x' <= x - 1; y' >= y; }\npath { y >= 0; y' <= y - 1; x' >= x; }\n");
    let half = parse("vars x\npath { x >= 0; 2*x' <= 2*x - 1; }\npath { x >= 0; x' >= x + 1; }\n");
    let drift = parse("vars x y\npath { x >= 0; x' = x + y; y' = y; }\n");
    let cross = parse("vars x y\npath { x >= 0; y >= 0; x' = y; y' = x; }\n");
    let guardless = parse("vars x y\npath { x' <= x - 1; y' = y; }\npath { y >= 0; y' <= y - 1; x' = x + 1; }\n");
    let mut out: Vec<(String, MlcLoop, Case)> = vec![
        ("counter qlrf".into(), counter.clone(), Case::Qlrf(0)),
        ("counter bms".into(), counter, Case::Bms),
        ("swap bms".into(), swap.clone(), Case::Bms),
        ("swap qlrf 1".into(), swap, Case::Qlrf(0)),
        ("half bms".into(), half.clone(), Case::Bms),
        ("half qlrf 2".into(), half, Case::Qlrf(1)),
        ("drift bms".into(), drift, Case::Bms),
        ("cross bms".into(), cross, Case::Bms),
        ("guardless bms".into(), guardless, Case::Bms),
    ];
    for k in 2..=4 {
        out.push((format!("maxdim {k} qlrf {k}"), maxdim_family(k).with_domain(Domain::Integer), Case::Qlrf(k - 1)));
        out.push((format!("maxdim {k} bg d=1"), maxdim_family(k).with_domain(Domain::Integer), Case::Dim(RankingClass::Bg, 1)));
    }
    let gap = dimension_gap_loop().with_domain(Domain::Integer);
    out.push(("dimgap bg d=3".into(), gap.clone(), Case::Dim(RankingClass::Bg, 3)));
    out.push(("dimgap adfg d=4".into(), gap.clone(), Case::Dim(RankingClass::Adfg, 4)));
    out.push(("dimgap adfg d=2".into(), gap, Case::Dim(RankingClass::Adfg, 2)));
    let intro = intro_loop().with_domain(Domain::Integer);
    out.push(("intro bg d=2".into(), intro.clone(), Case::Dim(RankingClass::Bg, 2)));
    out.push(("intro adfg d=3".into(), intro, Case::Dim(RankingClass::Adfg, 3)));
    out
}

/// A direction outside the recession cone of path `i`: a unit vector along
/// which some constraint row grows.
fn bad_ray(l: &MlcLoop, i: usize) -> Option<Vec<Rational>> {
    let dim = 2 * l.n();
    for c in l.paths[i].constraints() {
        for (j, a) in c.coeffs.iter().enumerate() {
            if !a.is_zero() {
                let mut y = vec![r(0); dim];
                y[j] = if a.is_positive() || c.relation == Relation::Eq { a.clone() / a.abs() } else { r(-1) };
                if a.is_negative() && c.relation == Relation::Eq {
                    y[j] = r(-1);
                }
                return Some(y);
            }
        }
    }
    None
}

fn qlrf_mutants(l: &MlcLoop, w: &QlrfWitness) -> Vec<QlrfWitness> {
    let mut out = qlrf_deletions(w);
    for i in 0..l.k() {
        if let Some(y) = bad_ray(l, i) {
            let mut m = w.clone();
            m.sets.y[i].push(y);
            if m.sets.x[i].is_empty() {
                m.sets.x[i] = w.sets.x[w.target].clone();
            }
            out.push(m);
        }
    }
    out
}

fn dim_mutants(l: &MlcLoop, w: &BgDimWitness) -> Vec<BgDimWitness> {
    let mut out: Vec<BgDimWitness> = dim_deletions(w).into_iter().map(|m| apply_deletion(w, m)).collect();
    for i in 0..l.k() {
        if let Some(y) = bad_ray(l, i) {
            let mut m = w.clone();
            m.chain[0].y[i].push(y);
            out.push(m);
        }
    }
    out
}

fn ac7() -> Outcome {
    let start = Instant::now();
    let corpus = witness_corpus();
    ensure(corpus.len() == 20, || format!("corpus has {} loops", corpus.len()))?;
    let (mut mutants, mut max_points) = (0, 0);
    for (name, l, case) in &corpus {
        let bound = 2 * l.n() + 3;
        match case {
            Case::Qlrf(p) => {
                let w = e2s(build_qlrf_witness(l, *p))?.ok_or_else(|| format!("{name}: no witness built"))?;
                let calls = integer_hull_calls();
                ensure(e2s(check_qlrf_witness(l, &w))?.is_accepted(), || format!("{name}: rejected"))?;
                ensure(w.sets.point_count() <= bound, || format!("{name}: {} points", w.sets.point_count()))?;
                max_points = max_points.max(w.sets.point_count());
                for m in qlrf_mutants(l, &w) {
                    ensure(!e2s(check_qlrf_witness(l, &m))?.is_accepted(), || format!("{name}: mutant accepted {m:?}"))?;
                    mutants += 1;
                }
                ensure(integer_hull_calls() == calls, || format!("{name}: check used integer_hull"))?;
            }
            Case::Bms => {
                ensure(e2s(bms_llrf(l))?.is_none(), || format!("{name}: has a BMS-LLRF"))?;
                let ws = e2s(build_no_bms_llrf_witness(l))?.ok_or_else(|| format!("{name}: no witness built"))?;
                let calls = integer_hull_calls();
                ensure(e2s(check_no_bms_llrf_witness(l, &ws))?.is_accepted(), || format!("{name}: rejected"))?;
                for (i, w) in ws.iter().enumerate() {
                    ensure(w.sets.point_count() <= bound, || format!("{name}: {} points", w.sets.point_count()))?;
                    max_points = max_points.max(w.sets.point_count());
                    for m in qlrf_mutants(l, w) {
                        let mut list = ws.clone();
                        list[i] = m;
                        ensure(!e2s(check_no_bms_llrf_witness(l, &list))?.is_accepted(), || {
                            format!("{name}: mutant of witness {} accepted: {:?}", i + 1, list[i])
                        })?;
                        mutants += 1;
                    }
                }
                ensure(integer_hull_calls() == calls, || format!("{name}: check used integer_hull"))?;
            }
            Case::Dim(class, d) => {
                let synth = e2s(lexrank::dimension::dim_at_most(l, *class, *d))?;
                ensure(synth.is_none(), || format!("{name}: synthesis succeeded"))?;
                let w = e2s(build_dim_witness(l, *class, *d))?.ok_or_else(|| format!("{name}: no witness built"))?;
                let calls = integer_hull_calls();
                ensure(e2s(check_bg_dim_witness(l, &w, *d))?.is_accepted(), || format!("{name}: rejected"))?;
                for m in dim_mutants(l, &w) {
                    ensure(!e2s(check_bg_dim_witness(l, &m, *d))?.is_accepted(), || format!("{name}: mutant accepted"))?;
                    mutants += 1;
                }
                ensure(integer_hull_calls() == calls, || format!("{name}: check used integer_hull"))?;
            }
        }
    }
    let t = start.elapsed();
    Ok(format!("20 loops accepted, {mutants} mutants rejected, largest QLRF witness {max_points} points, {t:.2?}"))
}

// ---------------------------------------------------------------- AC8

fn random_loop(rng: &mut StdRng) -> MlcLoop {
    let n = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=4);
    let names = (0..n).map(|i| format!("v{i}")).collect();
    let paths = (0..k)
        .map(|_| {
            let mut cs = Vec::new();
            let zero = || vec![r(0); 2 * n];
            // updates: `c·x'_j - c·x_j (+ e·x_o) <= rhs` or `x'_j = x_j + rhs`
            for j in 0..n {
                if rng.gen_bool(0.15) {
                    continue;
                }
                let mut a = zero();
                let c = rng.gen_range(1..=3);
                a[n + j] = r(c);
                a[j] = r(-c);
                if rng.gen_bool(0.3) {
                    a[rng.gen_range(0..n)] += r(rng.gen_range(-3..=3));
                }
                let rhs = r(rng.gen_range(-3..=1));
                cs.push(if rng.gen_bool(0.3) { Constraint::eq(a, rhs) } else { Constraint::le(a, rhs) });
            }
            // guards on the source state, mostly lower bounds
            for _ in 0..rng.gen_range(1..=2) {
                let mut a = zero();
                if rng.gen_bool(0.6) {
                    a[rng.gen_range(0..n)] = r(-1);
                } else {
                    a[..n].iter_mut().for_each(|c| *c = r(rng.gen_range(-3..=3)));
                }
                cs.push(Constraint::le(a, r(rng.gen_range(-3..=3))));
            }
            if rng.gen_bool(0.3) {
                let a = (0..2 * n).map(|_| r(rng.gen_range(-3..=3))).collect();
                cs.push(Constraint::le(a, r(rng.gen_range(-3..=3))));
            }
            Polyhedron::new(2 * n, cs).expect("sized rows")
        })
        .collect();
    MlcLoop::new(names, paths, Domain::Rational).expect("distinct names")
}

fn bounded_below(q: &Polyhedron, coeffs: &[Rational]) -> Result<Option<Rational>, String> {
    Ok(match e2s(minimize(q, coeffs))? {
        Extremum::Attained(v, _) => Some(v),
        Extremum::Empty | Extremum::Unbounded => None,
    })
}

/// Per path and small direction `λ ∈ [-2, 2]^n`: does `λ` (with a suitable
/// constant and scaling) rank the path, and is it non-increasing there?
fn small_direction_search(l: &MlcLoop) -> Result<(bool, bool), String> {
    let n = l.n();
    let live: Vec<&Polyhedron> = l.paths.iter().filter(|q| !q.is_empty()).collect();
    if live.is_empty() {
        return Ok((true, false));
    }
    let (mut lrf, mut qlrf) = (false, false);
    let mut lam = vec![-2i64; n];
    loop {
        let src: Vec<Rational> = lam.iter().map(|&a| r(a)).chain((0..n).map(|_| r(0))).collect();
        let delta: Vec<Rational> = lam.iter().map(|&a| r(a)).chain(lam.iter().map(|&a| r(-a))).collect();
        let mut ranks = Vec::new();
        let mut nonincr = true;
        for q in &live {
            let d = bounded_below(q, &delta)?;
            nonincr &= d.as_ref().is_some_and(|v| !v.is_negative());
            let bounded = bounded_below(q, &src)?.is_some();
            ranks.push(d.is_some_and(|v| v.is_positive()) && bounded);
        }
        lrf |= ranks.iter().all(|&b| b);
        qlrf |= nonincr && ranks.iter().any(|&b| b);
        let mut j = 0;
        while j < n && lam[j] == 2 {
            lam[j] = -2;
            j += 1;
        }
        if j == n || (lrf && qlrf) {
            return Ok((lrf, qlrf));
        }
        lam[j] += 1;
    }
}

fn ac8() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(8);
    let mut found = [0usize; 5];
    let mut multi = 0;
    for case in 0..500 {
        let l = random_loop(&mut rng);
        let ctx = || lexrank::format::print_loop(&l);
        let lrf = e2s(find_lrf(&l))?;
        if let Some(f) = &lrf {
            let as_llrf = LexRankingFunction::new(vec![f.clone()], RankingClass::Lrf, None);
            ensure(e2s(check_llrf(&l, &as_llrf))?.is_valid(), || format!("case {case}: LRF rejected\n{}", ctx()))?;
            found[0] += 1;
        }
        for (slot, class) in [(1, RankingClass::Bms), (2, RankingClass::Bg), (3, RankingClass::Adfg)] {
            let f = match class {
                RankingClass::Bms => e2s(bms_llrf(&l))?,
                RankingClass::Bg => e2s(bg_llrf(&l))?,
                _ => e2s(adfg_llrf(&l))?,
            };
            if let Some(f) = f {
                ensure(f.class == class, || format!("case {case}: wrong class tag"))?;
                if class == RankingClass::Bms && f.dimension() > 1 {
                    multi += 1;
                }
                ensure(e2s(check_llrf(&l, &f))?.is_valid(), || format!("case {case}: {class:?} rejected\n{}", ctx()))?;
                found[slot] += 1;
            }
        }
        let paths = e2s(effective_paths(&l))?;
        if paths.iter().all(|q| q.is_empty()) {
            // every function is an LRF of a loop without transitions
            ensure(lrf.is_some(), || format!("case {case}: no LRF for an empty loop"))?;
            continue;
        }
        let qlrf = e2s(find_bms_qlrf(&paths))?;
        if qlrf.is_some() {
            found[4] += 1;
        }
        let (small_lrf, small_qlrf) = small_direction_search(&l)?;
        ensure(!small_lrf || lrf.is_some(), || format!("case {case}: small LRF exists, find_lrf None\n{}", ctx()))?;
        ensure(!small_qlrf || qlrf.is_some(), || {
            format!("case {case}: small QLRF exists, find_bms_qlrf None\n{}", ctx())
        })?;
    }
    let t = start.elapsed();
    Ok(format!(
        "500 loops: LRF {}, BMS {} ({multi} with >1 component), BG {}, ADFG {}, QLRF {} found and all valid, 0 violations, {t:.1?}",
        found[0], found[1], found[2], found[3], found[4]
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] =
        [("AC1", ac1), ("AC2", ac2), ("AC3", ac3), ("AC4", ac4), ("AC5", ac5), ("AC6", ac6), ("AC7", ac7), ("AC8", ac8)];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| a.starts_with("AC")).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !only.is_empty() && !only.iter().any(|o| o == name) {
            continue;
        }
        match std::panic::catch_unwind(f) {
            Ok(Ok(detail)) => println!("{name} PASS {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("{name} FAIL {why}");
            }
            Err(_) => {
                failed += 1;
                println!("{name} FAIL panicked");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
