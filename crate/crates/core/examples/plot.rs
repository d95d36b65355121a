//! SVG picture of the butterfly cell complex, written to stdout.

use ambitropical::fixtures;
use ambitropical::games::{CellOptions, MeanPayoffGame};
use ambitropical::io::{complex_doc, Document};
use ambitropical::plot::{plot_document, PlotOptions};

fn main() -> ambitropical::Result<()> {
    let game = MeanPayoffGame::from_operator(&fixtures::butterfly())?;
    let cx = game.enumerate_cells(&CellOptions::default())?;
    let svg = plot_document(&Document::Complex(complex_doc(&cx)), &PlotOptions::default())?;
    print!("{svg}");
    Ok(())
}
