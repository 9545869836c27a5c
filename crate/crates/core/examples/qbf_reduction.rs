//! Σ₂ sentences `∃X ∀Y ¬φ` compiled to integer loops: a BMS-LLRF with two
//! components exists iff the sentence is true.

use lexrank::dimension::bms_dim_at_most;
use lexrank::reductions::{qbf_to_loop, Qbf2Cnf};

fn main() -> lexrank::Result<()> {
    let cases = [
        // X1 = 0 falsifies every clause whatever Y is: true
        ("clause (X1 ∨ X1 ∨ X1)", Qbf2Cnf::new(1, vec![[1, 1, 1]])?),
        // Y = 1 satisfies the clause for either X: false
        ("clause (X1 ∨ ¬X1 ∨ Y1)", Qbf2Cnf::new(1, vec![[1, -1, 2]])?),
        ("clauses (X1 ∨ Y1), (¬X1 ∨ X2)", Qbf2Cnf::new(2, vec![[1, 3, 3], [-1, 2, 2]])?),
    ];
    for (name, q) in cases {
        let l = qbf_to_loop(&q);
        let f = bms_dim_at_most(&l, 2)?;
        println!("{name}: {} variables, {} paths, sentence {}", l.n(), l.k(), if f.is_some() { "true" } else { "false" });
        if let Some(f) = f {
            let a: Vec<usize> = f.assignment.unwrap().iter().map(|c| c.unwrap() + 1).collect();
            println!("  components per path (sat, choices.., anchor): {a:?}");
        }
    }
    Ok(())
}
