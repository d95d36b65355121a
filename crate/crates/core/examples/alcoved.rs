//! Alcoved polyhedra: membership, projections and extreme generators.

use ambitropical::alcoved::AlcovedPoly;
use ambitropical::scalar::{format_rat, int};

fn show(v: &[ambitropical::Rat]) -> String {
    format!("({})", v.iter().map(format_rat).collect::<Vec<_>>().join(", "))
}

fn main() -> ambitropical::Result<()> {
    // x2 ≥ x1 ≥ x3
    let wing = AlcovedPoly::order(3, &[(1, 0), (0, 2)])?;
    let x = vec![int(3), int(1), int(2)];
    println!("contains {}: {}", show(&x), wing.contains(&x)?);
    println!("smallest point above: {}", show(&wing.project_up(&x)?));
    println!("largest point below:  {}", show(&wing.project_down(&x)?));
    println!("dimension {}", wing.dimension());
    for g in wing.generators() {
        println!("generator {g}");
    }
    for g in wing.dual_generators() {
        println!("dual generator {g}");
    }
    Ok(())
}
