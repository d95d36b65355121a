//! Min-max operators: evaluation, normal forms and the game matrices.

use ambitropical::fixtures;
use ambitropical::minmax::DEFAULT_NORMAL_FORM_CAP;
use ambitropical::scalar::int;

fn main() -> ambitropical::Result<()> {
    let t = fixtures::butterfly();
    println!("{t}");
    let x = vec![int(2), int(0), int(1)];
    println!("T(2,0,1) = {:?}", t.eval(&x)?.iter().map(ToString::to_string).collect::<Vec<_>>());

    for (k, f) in t.dnf(DEFAULT_NORMAL_FORM_CAP)?.iter().enumerate() {
        println!("dnf T{} = {}", k + 1, f.to_term());
    }
    let pair = t.to_proper_pair()?;
    println!("proper pair: {} Max states", pair.m());
    println!("A = {}", serde_json::to_string(pair.a()).unwrap_or_default());
    println!("B = {}", serde_json::to_string(pair.b()).unwrap_or_default());

    let u = vec![int(0), int(1), int(-1)];
    println!("semiderivative at (0,1,-1): {}", t.semiderivative(&u)?);
    println!("flip: {}", t.flip());
    Ok(())
}
