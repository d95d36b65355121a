//! Canonical retractions onto the cone spanned by a few generators.

use ambitropical::fixtures;
use ambitropical::retract::{sunny_probe, AmbiCone};
use ambitropical::scalar::{format_rat, int, ratio};
use ambitropical::Rat;

fn show(v: &[Rat]) -> String {
    format!("({})", v.iter().map(format_rat).collect::<Vec<_>>().join(", "))
}

fn main() -> ambitropical::Result<()> {
    let g = fixtures::unit_butterfly_generators();
    let z = vec![int(2), ratio(-1, 2), int(0)];
    println!("z      = {}", show(&z));
    println!("P^max  = {}", show(&g.p_max(&z)?));
    println!("P^min  = {}", show(&g.p_min(&z)?));
    println!("Q^-    = {}", show(&g.q_minus(&z)?));
    println!("Q^+    = {}", show(&g.q_plus(&z)?));

    let segment = AmbiCone::new(fixtures::segment_generators(&fixtures::uniform_grid(16)));
    let probe = sunny_probe(&segment, &[int(2), ratio(1, 2), int(0)], &ratio(1, 2))?;
    println!("segment image {} probe image {} sunny {}", show(&probe.image), show(&probe.probe_image), probe.sunny);
    Ok(())
}
