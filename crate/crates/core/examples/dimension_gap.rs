//! One loop, three notions of lexicographic ranking, three different
//! minimal dimensions.

use std::time::Instant;

use lexrank::dimension::min_dimension_with;
use lexrank::reductions::dimension_gap_loop;
use lexrank::{Domain, RankingClass};

fn main() -> lexrank::Result<()> {
    for dom in [Domain::Rational, Domain::Integer] {
        let l = dimension_gap_loop().with_domain(dom);
        for class in [RankingClass::Bms, RankingClass::Bg, RankingClass::Adfg] {
            let t = Instant::now();
            let f = min_dimension_with(&l, class)?.expect("every class ranks this loop");
            let comps: Vec<String> = f.components.iter().map(|c| c.render(&l.var_names)).collect();
            println!("{:>4} {:>4}: {} <{}> ({:.1?})", dom.tag(), class.tag(), f.dimension(), comps.join(", "), t.elapsed());
        }
    }
    Ok(())
}
