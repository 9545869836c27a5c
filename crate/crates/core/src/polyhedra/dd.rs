//! Double description conversion for polyhedral cones.
//!
//! Constraints are inserted one at a time. While the cone still contains
//! lines, a constraint that cuts a line turns it into a ray; otherwise rays on
//! opposite sides are combined pairwise, using the combinatorial adjacency
//! test on the sets of tight constraints.

use fixedbitset::FixedBitSet;

use crate::rational::{dot, primitive, Rational};

/// Generators of `{z : A z ≤ 0, E z = 0}`.
#[derive(Debug, Clone, Default)]
pub struct ConeGenerators {
    pub lines: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
}

struct Ray {
    v: Vec<Rational>,
    tight: FixedBitSet,
}

fn axpy(v: &[Rational], a: &Rational, w: &[Rational]) -> Vec<Rational> {
    // v - a*w
    v.iter().zip(w).map(|(x, y)| x.sub_mul(a, y)).collect()
}

/// Computes lines and extreme rays of the cone given by `ineqs` (`a·z ≤ 0`)
/// and `eqs` (`a·z = 0`) in `Q^dim`. Returned vectors are primitive integer.
pub fn cone_generators(dim: usize, ineqs: &[Vec<Rational>], eqs: &[Vec<Rational>]) -> ConeGenerators {
    let total = eqs.len() + ineqs.len();
    let order: Vec<(&Vec<Rational>, bool)> = eqs
        .iter()
        .map(|a| (a, true))
        .chain(ineqs.iter().map(|a| (a, false)))
        .collect();

    let mut lines: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut e = vec![Rational::ZERO; dim];
            e[i] = Rational::ONE;
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, (a, is_eq)) in order.into_iter().enumerate() {
        if a.iter().all(|c| c.is_zero()) {
            for r in rays.iter_mut() {
                r.tight.insert(idx);
            }
            continue;
        }
        if let Some(li) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            let l0 = lines.remove(li);
            let al0 = dot(a, &l0);
            for l in lines.iter_mut() {
                let al = dot(a, l);
                if !al.is_zero() {
                    *l = primitive(&axpy(l, &(&al / &al0), &l0));
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    r.v = primitive(&axpy(&r.v, &(&ar / &al0), &l0));
                }
                r.tight.insert(idx);
            }
            if !is_eq {
                let v = if al0.is_negative() {
                    l0
                } else {
                    l0.iter().map(|c| -c).collect()
                };
                let mut tight = FixedBitSet::with_capacity(total);
                tight.insert_range(..idx);
                rays.push(Ray { v, tight });
            }
            continue;
        }

        let vals: Vec<Rational> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() && (!is_eq || vals.iter().all(|v| !v.is_negative())) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.insert(idx);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let need = dim.saturating_sub(lines.len() + 2);
        let mut created: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].tight.clone();
                common.intersect_with(&rays[n].tight);
                if common.count_ones(..) < need {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|r| r == p || r == n || !common.is_subset(&rays[r].tight));
                if !adjacent {
                    continue;
                }
                // (a·p) n − (a·n) p lies on the hyperplane.
                let v: Vec<Rational> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| &vals[p] * x - &vals[n] * y)
                    .collect();
                let mut tight = common;
                tight.insert(idx);
                created.push(Ray { v: primitive(&v), tight });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_zero() {
                r.tight.insert(idx);
                next.push(r);
            } else if vals[i].is_negative() && !is_eq {
                next.push(r);
            }
        }
        next.extend(created);
        rays = next;
    }

    ConeGenerators {
        lines: lines.into_iter().map(|l| primitive(&l)).collect(),
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn orthant() {
        let g = cone_generators(2, &[v(&[-1, 0]), v(&[0, -1])], &[]);
        assert!(g.lines.is_empty());
        let mut rays = g.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn square_cone() {
        // cone over the square [0,1]^2 at height t
        let ineqs = vec![v(&[-1, 0, 0]), v(&[0, -1, 0]), v(&[1, 0, -1]), v(&[0, 1, -1])];
        let g = cone_generators(3, &ineqs, &[]);
        assert_eq!(g.rays.len(), 4);
        assert!(g.lines.is_empty());
    }

    #[test]
    fn half_space_keeps_lines() {
        let g = cone_generators(3, &[v(&[1, 0, 0])], &[v(&[0, 0, 1])]);
        assert_eq!(g.lines, vec![v(&[0, 1, 0])]);
        assert_eq!(g.rays, vec![v(&[-1, 0, 0])]);
    }
}
