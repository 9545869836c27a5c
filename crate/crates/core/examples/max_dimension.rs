//! Path `i` of the family is ranked only by `x + i·y`, so `k` paths need `k`
//! components. The dimension solver answers bounded questions directly.

use lexrank::dimension::DimensionSolver;
use lexrank::reductions::maxdim_family;
use lexrank::synth::bg_llrf;

fn main() -> lexrank::Result<()> {
    for k in 1..=5 {
        let l = maxdim_family(k);
        let mut solver = DimensionSolver::for_loop(&l)?;
        let below = if k > 1 { solver.at_most(k - 1)?.is_some() } else { false };
        let f = solver.at_most(k)?.expect("k components suffice");
        let comps: Vec<String> = f.components.iter().map(|c| c.render(&l.var_names)).collect();
        println!(
            "k={k}: at most {} -> {below}, at most {k} -> <{}>, BG {:?}, {} LPs",
            k.saturating_sub(1),
            comps.join(", "),
            bg_llrf(&l)?.map(|f| f.dimension()),
            solver.lp_solves()
        );
    }
    Ok(())
}
