use crate::format::mlc::parse_loop;
use crate::mlc::{Domain, MlcLoop};
use crate::polyhedron::{Constraint, Polyhedron};
use crate::rational::Rational;

pub const INTRO_MLC: &str = include_str!("../../fixtures/intro.mlc");
pub const DIMGAP_MLC: &str = include_str!("../../fixtures/dimgap.mlc");
pub const DIMGAP_VERBATIM_MLC: &str = include_str!("../../fixtures/dimgap_verbatim.mlc");

/// The four-path loop `x, y, z` with BMS-LLRF `⟨x, y⟩` and no LRF.
pub fn intro_loop() -> MlcLoop {
    parse_loop(INTRO_MLC).expect("bundled fixture parses")
}

/// Five paths over `r, s, t, x, y, z, w` whose minimal dimensions are 3
/// (BMS), 4 (BG) and 5 (ADFG).
pub fn dimension_gap_loop() -> MlcLoop {
    parse_loop(DIMGAP_MLC).expect("bundled fixture parses")
}

/// The dimension-gap loop without `s ≥ 0` on its first path; it has no
/// ADFG-LLRF.
pub fn dimension_gap_loop_verbatim() -> MlcLoop {
    parse_loop(DIMGAP_VERBATIM_MLC).expect("bundled fixture parses")
}

/// `{x' ≤ x, x' + i·y' ≤ x + i·y − 1, x + i·y ≥ 0}` over `nv` variables with
/// `x`, `y` at the given indices; all other variables are unconstrained.
pub(crate) fn maxdim_path(nv: usize, x: usize, y: usize, i: usize) -> Polyhedron {
    let i = Rational::from(i);
    let mut a = vec![Rational::ZERO; 2 * nv];
    a[nv + x] = Rational::ONE;
    a[x] = -Rational::ONE;
    let mut b = a.clone();
    b[nv + y] = i.clone();
    b[y] = -&i;
    let mut c = vec![Rational::ZERO; 2 * nv];
    c[x] = Rational::ONE;
    c[y] = i;
    let cs = vec![
        Constraint::le(a, Rational::ZERO),
        Constraint::le(b, -Rational::ONE),
        Constraint::ge(c, Rational::ZERO),
    ];
    Polyhedron::new(2 * nv, cs).expect("rows sized to the loop")
}

/// `k` paths over `x, y`; path `i` is ranked by `x + i·y`, every BMS-LLRF
/// needs `k` components and (for `k ≥ 2`) there is no BG-LLRF.
pub fn maxdim_family(k: usize) -> MlcLoop {
    let paths = (1..=k).map(|i| maxdim_path(2, 0, 1, i)).collect();
    MlcLoop::new(vec!["x".into(), "y".into()], paths, Domain::Rational).expect("two distinct names")
}
