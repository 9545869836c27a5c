//! The four-path loop over `x, y, z`: no LRF, but `⟨x, y⟩` ranks it
//! lexicographically in the BMS sense.

use lexrank::reductions::intro_loop;
use lexrank::synth::{adfg_llrf, bg_llrf, bms_llrf, find_lrf};
use lexrank::Domain;

fn main() -> lexrank::Result<()> {
    let l = intro_loop();
    print!("{}", lexrank::format::print_loop(&l));
    println!("LRF: {:?}", find_lrf(&l)?.map(|f| f.render(&l.var_names)));
    for dom in [Domain::Rational, Domain::Integer] {
        let l = l.with_domain(dom);
        let f = bms_llrf(&l)?.expect("the loop has a BMS-LLRF");
        let comps: Vec<String> = f.components.iter().map(|c| c.render(&l.var_names)).collect();
        println!("BMS ({}): <{}>", dom.tag(), comps.join(", "));
        for i in 0..f.dimension() {
            let ranked: Vec<usize> = f.ranked_by(i).iter().map(|p| p + 1).collect();
            println!("  component {} ranks paths {ranked:?}", i + 1);
        }
    }
    println!("BG: {:?}", bg_llrf(&l)?.map(|f| f.dimension()));
    println!("ADFG: {:?}", adfg_llrf(&l)?.map(|f| f.dimension()));
    Ok(())
}
