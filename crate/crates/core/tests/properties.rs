use num_rational::BigRational;
use proptest::prelude::*;

use lexrank::format::json::{parse_witness, witness_json, Witness};
use lexrank::format::{parse_loop, print_loop};
use lexrank::lp::{self, Direction, LpOutcome, LpProblem, RowRel};
use lexrank::polyhedra::{equivalent, from_generators, includes, integer_hull};
use lexrank::witness::{build_qlrf_witness, check_qlrf_witness, qlrf_deletions};
use lexrank::{Constraint, Domain, MlcLoop, Polyhedron, Rational};

fn rat() -> impl Strategy<Value = Rational> {
    (-1_000_000i64..1_000_000, 1i64..1000).prop_map(|(n, d)| Rational::new(n, d))
}

fn big(x: &Rational) -> BigRational {
    x.to_big()
}

proptest! {
    #[test]
    fn rational_ops_match_bigrational(a in rat(), b in rat()) {
        prop_assert_eq!(big(&(&a + &b)), big(&a) + big(&b));
        prop_assert_eq!(big(&(&a - &b)), big(&a) - big(&b));
        prop_assert_eq!(big(&(&a * &b)), big(&a) * big(&b));
        if !b.is_zero() {
            prop_assert_eq!(big(&(&a / &b)), big(&a) / big(&b));
        }
        prop_assert_eq!(a.cmp(&b), big(&a).cmp(&big(&b)));
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a.clone());
        prop_assert!(a.floor() <= a && a <= a.ceil() && &a.ceil() - &a.floor() <= Rational::ONE);
    }

    #[test]
    fn rational_overflow_falls_back(a in i64::MAX / 2..i64::MAX, b in 2i64..1000) {
        let x = Rational::from(a);
        let y = &(&x * &Rational::from(b)) / &Rational::from(b);
        prop_assert_eq!(y, x);
    }
}

// -------------------------------------------------------------- LP

fn small_rows(dim: usize) -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
    prop::collection::vec((prop::collection::vec(-4i64..=4, dim), -6i64..=6), 1..7)
}

/// Maximum of `c·x` over `{A x <= b}` in 2D by enumerating every
/// intersection of two constraint lines; `None` if infeasible. Boxes keep it
/// bounded.
fn brute_max_2d(rows: &[(Vec<i64>, i64)], c: &[i64]) -> Option<Rational> {
    let r = |v: i64| Rational::from(v);
    let mut best: Option<Rational> = None;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (a, b) = (&rows[i].0, &rows[j].0);
            let det = a[0] * b[1] - a[1] * b[0];
            if det == 0 {
                continue;
            }
            let x = Rational::new(rows[i].1 * b[1] - rows[j].1 * a[1], det);
            let y = Rational::new(a[0] * rows[j].1 - b[0] * rows[i].1, det);
            if rows.iter().all(|(a, b)| &(&r(a[0]) * &x) + &(&r(a[1]) * &y) <= r(*b)) {
                let v = &(&r(c[0]) * &x) + &(&r(c[1]) * &y);
                if best.as_ref().is_none_or(|b| &v > b) {
                    best = Some(v);
                }
            }
        }
    }
    best
}

fn boxed(mut rows: Vec<(Vec<i64>, i64)>) -> Vec<(Vec<i64>, i64)> {
    for j in 0..2 {
        let mut e = vec![0; 2];
        e[j] = 1;
        rows.push((e.clone(), 10));
        e[j] = -1;
        rows.push((e, 10));
    }
    rows
}

fn lp_of(rows: &[(Vec<i64>, i64)], dim: usize) -> LpProblem {
    let mut p = LpProblem::new(dim);
    for (a, b) in rows {
        p.add_row(a.iter().map(|&v| Rational::from(v)).collect(), RowRel::Le, Rational::from(*b));
    }
    p
}

proptest! {
    #[test]
    fn simplex_optimum_matches_vertex_enumeration(rows in small_rows(2), c in prop::collection::vec(-4i64..=4, 2)) {
        let rows = boxed(rows);
        let mut p = lp_of(&rows, 2);
        p.set_objective(Direction::Max, c.iter().map(|&v| Rational::from(v)).collect());
        let want = brute_max_2d(&rows, &c);
        match lp::solve(&p).unwrap() {
            LpOutcome::Infeasible => prop_assert!(want.is_none()),
            LpOutcome::Optimal(x, v) => {
                prop_assert!(p.satisfied_by(&x));
                prop_assert_eq!(Some(v), want);
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn infeasible_subsets_are_irreducible(rows in small_rows(3)) {
        let p = lp_of(&rows, 3);
        if lp::is_feasible(&p).unwrap() {
            return Ok(());
        }
        let core = lp::minimal_infeasible_subset(&p).unwrap();
        let sub = |skip: Option<usize>| {
            let kept: Vec<_> = core.iter().filter(|&&i| Some(i) != skip).map(|&i| rows[i].clone()).collect();
            lp::is_feasible(&lp_of(&kept, 3)).unwrap()
        };
        prop_assert!(!sub(None));
        for &i in &core {
            prop_assert!(sub(Some(i)), "row {} is redundant in {:?}", i, core);
        }
    }
}

// -------------------------------------------------------------- polyhedra

fn poly(rows: &[(Vec<i64>, i64)], dim: usize) -> Polyhedron {
    let cs = rows
        .iter()
        .map(|(a, b)| Constraint::le(a.iter().map(|&v| Rational::from(v)).collect(), Rational::from(*b)))
        .collect();
    Polyhedron::new(dim, cs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_describe_the_polyhedron(rows in small_rows(3)) {
        let q = poly(&rows, 3);
        let back = from_generators(3, q.generators()).unwrap();
        prop_assert!(equivalent(&q, &back).unwrap());
    }

    /// Possibly unbounded: the hull lies inside `q` and keeps every lattice
    /// point of `q` in a window around the origin.
    #[test]
    fn integer_hull_keeps_lattice_points(rows in (2usize..=3).prop_flat_map(small_rows)) {
        let dim = rows[0].0.len();
        let q = poly(&rows, dim);
        let h = match integer_hull(&q) {
            Err(lexrank::Error::Resource { .. }) => return Ok(()),
            r => r.unwrap(),
        };
        prop_assert!(includes(&q, &h).unwrap());
        // polyhedra with a line have no vertices; their base point may be
        // fractional
        if h.generators().is_bounded() {
            prop_assert!(h.generators().vertices.iter().flatten().all(Rational::is_integer));
        }
        let w = if dim == 2 { 8 } else { 4 };
        let mut p = vec![-w; dim];
        loop {
            let x: Vec<Rational> = p.iter().map(|&v| Rational::from(v)).collect();
            prop_assert_eq!(q.contains_point(&x).unwrap(), h.contains_point(&x).unwrap(), "point {:?}", p);
            let mut j = 0;
            while j < dim && p[j] == w {
                p[j] = -w;
                j += 1;
            }
            if j == dim {
                break;
            }
            p[j] += 1;
        }
    }
}

// -------------------------------------------------------------- formats

/// Random loops; `sparse` rows touch at most two of the `2n` variables.
fn loop_strategy(sparse: bool) -> impl Strategy<Value = MlcLoop> {
    (1usize..=3, 1usize..=3, any::<bool>()).prop_flat_map(move |(n, k, int)| {
        let row = (prop::collection::vec(-3i64..=3, 2 * n), -3i64..=3, 0u8..3, 0..2 * n, 0..2 * n).prop_map(
            move |(mut a, b, rel, i, j)| {
                if sparse {
                    for (t, v) in a.iter_mut().enumerate() {
                        if t != i && t != j {
                            *v = 0;
                        }
                    }
                }
                (a, b, rel)
            },
        );
        prop::collection::vec(prop::collection::vec(row, 1..5), k).prop_map(move |paths| {
            let names = (0..n).map(|i| format!("v{i}")).collect();
            let paths = paths
                .into_iter()
                .map(|rows| {
                    let cs = rows
                        .into_iter()
                        .map(|(a, b, rel)| {
                            let a = a.into_iter().map(Rational::from).collect();
                            let b = Rational::from(b);
                            match rel {
                                0 => Constraint::le(a, b),
                                1 => Constraint::ge(a, b),
                                _ => Constraint::eq(a, b),
                            }
                        })
                        .collect();
                    Polyhedron::new(2 * n, cs).unwrap()
                })
                .collect();
            let dom = if int { Domain::Integer } else { Domain::Rational };
            MlcLoop::new(names, paths, dom).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn printed_loops_parse_back(l in loop_strategy(false)) {
        let text = print_loop(&l);
        let back = parse_loop(&text).unwrap();
        prop_assert_eq!(back.domain, l.domain);
        prop_assert_eq!(&back.var_names, &l.var_names);
        for (a, b) in l.paths.iter().zip(&back.paths) {
            prop_assert!(equivalent(a, b).unwrap(), "{}", text);
        }
        prop_assert_eq!(print_loop(&back), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witnesses_are_small_minimal_and_round_trip(l in loop_strategy(true)) {
        let l = l.with_domain(Domain::Integer);
        for p in 0..l.k() {
            let w = match build_qlrf_witness(&l, p) {
                Err(lexrank::Error::Resource { .. }) => return Ok(()),
                r => r.unwrap(),
            };
            if let Some(w) = w {
                prop_assert!(check_qlrf_witness(&l, &w).unwrap().is_accepted());
                prop_assert!(w.sets.point_count() <= 2 * l.n() + 3);
                for m in qlrf_deletions(&w) {
                    prop_assert!(!check_qlrf_witness(&l, &m).unwrap().is_accepted());
                }
                let doc = witness_json(&Witness::Qlrf(w.clone())).to_string();
                match parse_witness(&doc).unwrap() {
                    Witness::Qlrf(back) => prop_assert_eq!(back, w),
                    _ => prop_assert!(false, "kind changed"),
                }
            }
        }
    }
}
