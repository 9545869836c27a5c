//! Non-existence certificates over the integers: finite point sets whose
//! induced linear systems are infeasible. They are checked with LP only.

use lexrank::format::json::{witness_json, Witness};
use lexrank::format::parse_loop;
use lexrank::reductions::dimension_gap_loop;
use lexrank::witness::{build_dim_witness, build_no_bms_llrf_witness, check_bg_dim_witness, check_no_bms_llrf_witness};
use lexrank::{Domain, RankingClass};

fn main() -> lexrank::Result<()> {
    // each path decreases one variable while the other may grow without bound
    let l = parse_loop(
        "vars x y\ndomain int\npath { x >= 0; x' <= x - 1; y' >= y; }\npath { y >= 0; y' <= y - 1; x' >= x; }\n",
    )?;
    let ws = build_no_bms_llrf_witness(&l)?.expect("no BMS-LLRF exists");
    println!("no BMS-LLRF: {:?}", check_no_bms_llrf_witness(&l, &ws)?);
    println!("{}", witness_json(&Witness::BmsLlrf(ws)));

    // the dimension-gap loop needs four BG components
    let gap = dimension_gap_loop().with_domain(Domain::Integer);
    for d in 1..=4 {
        match build_dim_witness(&gap, RankingClass::Bg, d)? {
            Some(w) => {
                let points: usize = w.chain.iter().map(|c| c.point_count()).sum();
                println!("BG d={d}: witness with {points} points, {:?}", check_bg_dim_witness(&gap, &w, d)?);
            }
            None => println!("BG d={d}: a BG-LLRF exists, no witness"),
        }
    }
    Ok(())
}
