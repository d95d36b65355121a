//! Homogeneous cones as lattices of the Boolean cube.

use std::collections::BTreeSet;

use ambitropical::fixtures;
use ambitropical::homog::{is_lattice, parse_bitstring, skeleton, to_bitstring, HypercubeLattice, DEFAULT_CUBE_CAP};

fn main() -> ambitropical::Result<()> {
    let sk = skeleton(&fixtures::butterfly(), DEFAULT_CUBE_CAP)?;
    println!("skeleton {:?}", sk.iter().map(|v| to_bitstring(*v, 3)).collect::<Vec<_>>());

    let lattice = HypercubeLattice::new(3, sk.into_iter().collect())?;
    println!("operator from lattice:\n{}", lattice.to_operator()?);
    for cell in lattice.chains_to_fan() {
        let chain: Vec<String> = cell.chain.iter().map(|v| to_bitstring(*v, 3)).collect();
        let blocks: Vec<Vec<usize>> = cell.partition.blocks.iter().map(|b| b.iter().map(|i| i + 1).collect()).collect();
        println!("chain {chain:?} -> blocks {blocks:?} (dim {})", cell.dimension);
    }

    let projected: BTreeSet<u64> =
        fixtures::lattice_l_projection().iter().map(|s| parse_bitstring(s, 4)).collect::<Result<_, _>>()?;
    let verdict = is_lattice(4, &projected);
    println!(
        "projection is a lattice: {} ({:?}, bounds {:?})",
        verdict.is_lattice,
        verdict.pair.map(|(a, b)| (to_bitstring(a, 4), to_bitstring(b, 4))),
        verdict.bounds.iter().map(|v| to_bitstring(*v, 4)).collect::<Vec<_>>()
    );
    Ok(())
}
