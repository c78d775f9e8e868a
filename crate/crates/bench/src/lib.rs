//! Inputs shared by the kernel benchmarks.

use isotropy_core::canonical::AdaptedChart;
use isotropy_core::structures::{BigIsotropicStructure, Grid};
use isotropy_core::{BigSection, Chart, OneForm, VectorField};

fn bs(x: VectorField, a: OneForm) -> BigSection {
    BigSection::new(x, a).expect("matching dimensions")
}

/// The rank-3 structure on `x1 x2 y1 y2 z` with its adapted chart.
pub fn coupled_r5() -> (BigIsotropicStructure, AdaptedChart) {
    let c = Chart::new(["x1", "x2", "y1", "y2", "z"]).expect("distinct names");
    let v = |i| VectorField::coord(5, i);
    let f = |i| OneForm::coord(5, i);
    let e = vec![bs(v(0), f(1).add(&f(2))), bs(v(1), f(3).sub(&f(0))), BigSection::form(f(4))];
    let mut ep = e.clone();
    ep.extend([bs(v(2), f(0).neg()), bs(v(3), f(1).neg()), BigSection::form(f(2)), BigSection::form(f(3))]);
    let s = BigIsotropicStructure::with_grid(c.clone(), e, ep, Grid::cube(5, -1, 1, 32, 0)).expect("valid structure");
    let ac = AdaptedChart::from_names(c, &["x1", "x2"], &["y1", "y2"], &["z"]).expect("adapted chart");
    (s, ac)
}
