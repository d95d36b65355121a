//! A four-state mean payoff game: eigenvector, policies and value iteration.

use ambitropical::fixtures;
use ambitropical::scalar::format_rat;

fn main() -> ambitropical::Result<()> {
    let game = fixtures::fathi_game();
    if let Some((u, lambda)) = game.find_eigen(1000)? {
        println!("lambda = {lambda}");
        println!("u = {:?}", u.iter().map(format_rat).collect::<Vec<_>>());
        let policies = game.calibrated_policies(&u, &lambda)?;
        for (j, ks) in policies.pi.iter().enumerate() {
            let arcs: Vec<usize> = ks.iter().map(|k| k + 1).collect();
            println!("Max at {} plays {arcs:?}", j + 1);
        }
        let check = game.verify_calibrated(&u, &lambda, &policies, 6, 12)?;
        println!("calibration violations up to 6 turns: {check:?}");
    }
    let vi = game.value_iteration(50)?;
    println!("v^50 / 50 = {:?}", vi.mean.unwrap_or_default().iter().map(format_rat).collect::<Vec<_>>());
    Ok(())
}
