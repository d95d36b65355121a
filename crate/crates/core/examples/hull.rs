//! Ambitropical hull of a point set, its geodesics and ball intersections.

use ambitropical::fixtures;
use ambitropical::retract::{ambitropical_hull, geodesic, hyperconvexity_witness, Retraction};
use ambitropical::scalar::{format_rat, int, ratio};
use ambitropical::tropical::sup_dist;
use ambitropical::Rat;

fn show(v: &[Rat]) -> String {
    format!("({})", v.iter().map(format_rat).collect::<Vec<_>>().join(", "))
}

fn main() -> ambitropical::Result<()> {
    let hull = ambitropical_hull(&fixtures::two_points())?;
    for p in [vec![int(1), int(1), int(0)], vec![ratio(1, 2), ratio(1, 2), int(0)]] {
        println!("{} in hull: {}, retracts to {}", show(&p), hull.is_fixed(&p)?, show(&hull.retract(&p)?));
    }

    let a = vec![int(1), int(0), int(0)];
    let b = vec![int(0), int(1), int(0)];
    let path = geodesic(&hull, &a, &b, 5)?;
    for p in &path {
        println!("geodesic {}", show(p));
    }

    let radii = vec![ratio(1, 2), ratio(1, 2)];
    let w = hyperconvexity_witness(&hull, &[a.clone(), b.clone()], &radii)?;
    println!("common point {} at distances {} and {}", show(&w), sup_dist(&w, &a), sup_dist(&w, &b));
    Ok(())
}
