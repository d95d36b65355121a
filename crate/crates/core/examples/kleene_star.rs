//! Kleene star of a weighted digraph, and the circuit that blocks it.

use ambitropical::tropical::TropMat;
use ambitropical::{Error, Ext};

fn main() -> ambitropical::Result<()> {
    let n = Ext::NegInf;
    let m = TropMat::from_rows(vec![
        vec![n.clone(), Ext::int(-1), n.clone()],
        vec![n.clone(), n.clone(), Ext::int(2)],
        vec![Ext::int(-2), n.clone(), n],
    ])?;
    let star = m.kleene_star()?;
    for row in star.to_rows() {
        println!("{}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join("\t"));
    }

    let hot = TropMat::from_rows(vec![vec![Ext::NegInf, Ext::int(1)], vec![Ext::int(0), Ext::NegInf]])?;
    match hot.kleene_star() {
        Err(Error::PositiveCircuit { circuit, weight }) => {
            let nodes: Vec<usize> = circuit.iter().map(|i| i + 1).collect();
            println!("positive circuit {nodes:?} of weight {weight}");
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
