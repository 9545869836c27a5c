//! Integer hulls: a triangle whose vertices are not integral, and an
//! unbounded strip that has no integer points on its rational edge.

use lexrank::polyhedra::integer_hull;
use lexrank::{Constraint, Polyhedron, Rational};

fn show(name: &str, q: &Polyhedron) -> lexrank::Result<()> {
    let h = integer_hull(q)?;
    let g = h.generators();
    let fmt = |v: &Vec<Rational>| format!("({})", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
    println!("{name}");
    println!("  rational vertices: {}", q.generators().vertices.iter().map(fmt).collect::<Vec<_>>().join(" "));
    println!("  integer hull vertices: {}", g.vertices.iter().map(fmt).collect::<Vec<_>>().join(" "));
    println!("  rays: {}", g.rays.iter().map(fmt).collect::<Vec<_>>().join(" "));
    Ok(())
}

fn main() -> lexrank::Result<()> {
    let r = Rational::from;
    // 2x + 2y <= 7, x >= 0, y >= 0
    let tri = Polyhedron::new(
        2,
        vec![
            Constraint::le(vec![r(2), r(2)], r(7)),
            Constraint::ge(vec![r(1), r(0)], r(0)),
            Constraint::ge(vec![r(0), r(1)], r(0)),
        ],
    )?;
    show("triangle 2x + 2y <= 7", &tri)?;
    // x >= 0, 2y <= 2x - 1
    let strip = Polyhedron::new(
        2,
        vec![Constraint::ge(vec![r(1), r(0)], r(0)), Constraint::le(vec![r(-2), r(2)], r(-1))],
    )?;
    show("wedge 2y <= 2x - 1, x >= 0", &strip)?;
    Ok(())
}
