//! Parse a loop in `.mlc` syntax and look for a linear ranking function.

use lexrank::check::check_llrf;
use lexrank::format::parse_loop;
use lexrank::synth::find_lrf;
use lexrank::{LexRankingFunction, RankingClass};

const SRC: &str = "
# a nested countdown that terminates with the ranking function 2x + y
vars x y
path { x >= 0; y >= 0; x' = x; y' <= y - 1; }
path { x >= 1; y >= 0; x' = x - 1; y' <= y + 1; }
";

fn main() -> lexrank::Result<()> {
    let l = parse_loop(SRC)?;
    let f = find_lrf(&l)?.expect("the loop has an LRF");
    println!("LRF: {}", f.render(&l.var_names));
    let verdict = check_llrf(&l, &LexRankingFunction::new(vec![f], RankingClass::Lrf, None))?;
    println!("checker: {verdict:?}");

    // dropping the guard on y leaves the second path unbounded below
    let open = parse_loop("vars x y\npath { x >= 0; x' = x; y' <= y - 1; }\n")?;
    println!("without y >= 0: {:?}", find_lrf(&open)?.map(|f| f.render(&open.var_names)));
    Ok(())
}
