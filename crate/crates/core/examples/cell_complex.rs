//! Cells of the fixed-point set of a min-max operator.

use ambitropical::fixtures;
use ambitropical::games::{CellOptions, MeanPayoffGame};

fn main() -> ambitropical::Result<()> {
    let game = MeanPayoffGame::from_operator(&fixtures::butterfly())?;
    let cx = game.enumerate_cells(&CellOptions::default())?;
    println!("{} cells, maximal {:?}", cx.cells.len(), cx.maximal().iter().map(|c| c + 1).collect::<Vec<_>>());
    for (k, cell) in cx.cells.iter().enumerate() {
        let faces: Vec<usize> = cx.faces[k].iter().map(|f| f + 1).collect();
        println!("cell {} dim {} faces {faces:?}", k + 1, cell.dimension);
        for g in cell.poly.generators() {
            println!("    generator {g}");
        }
    }
    Ok(())
}
