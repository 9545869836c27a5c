//! Hypergraph coloring as a dimension question: the loop has a BMS-LLRF
//! with `d` components iff the hypergraph is `d`-colorable.

use lexrank::dimension::DimensionSolver;
use lexrank::reductions::{hypergraph_to_loop, Hypergraph3};

fn main() -> lexrank::Result<()> {
    let fano = Hypergraph3::new(7, vec![[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]])?;
    let square = Hypergraph3::new(6, vec![[1, 2, 3], [3, 4, 5], [1, 5, 6], [2, 4, 6]])?;
    for (name, h) in [("Fano plane", fano), ("four faces on six vertices", square)] {
        let l = hypergraph_to_loop(&h);
        let mut solver = DimensionSolver::for_loop(&l)?;
        for d in 2..=3 {
            match solver.at_most(d)? {
                Some(f) => {
                    // component ranking vertex i's path is its color
                    let colors: Vec<usize> = f.assignment.unwrap().iter().map(|c| c.unwrap() + 1).collect();
                    println!("{name}: {d}-colorable, colors {colors:?}");
                }
                None => println!("{name}: not {d}-colorable"),
            }
        }
    }
    Ok(())
}
