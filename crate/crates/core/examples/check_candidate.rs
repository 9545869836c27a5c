//! Checking a hand-written candidate against each ranking class. The
//! verdict names the first path, component and condition that fail.

use lexrank::check::check_llrf;
use lexrank::reductions::intro_loop;
use lexrank::{AffineFunction, LexRankingFunction, RankingClass, Rational};

fn main() -> lexrank::Result<()> {
    let l = intro_loop();
    let var = |i| AffineFunction::variable(l.n(), i);
    for (name, comps) in [("<x, y>", vec![var(0), var(1)]), ("<x + y + z>", vec![var(0).add(&var(1)).add(&var(2))])] {
        for class in [RankingClass::Bms, RankingClass::Bg, RankingClass::Adfg] {
            let cand = LexRankingFunction::new(comps.clone(), class, None);
            println!("{name} as {}: {:?}", class.tag(), check_llrf(&l, &cand)?);
        }
    }
    // a BMS component only has to be nonnegative on the paths it ranks
    for c in [-5, 5] {
        let shifted = LexRankingFunction::new(vec![var(0).shift(&Rational::from(c)), var(1)], RankingClass::Bms, None);
        println!("<x {} 5, y> as bms: {:?}", if c < 0 { '-' } else { '+' }, check_llrf(&l, &shifted)?);
    }
    Ok(())
}
