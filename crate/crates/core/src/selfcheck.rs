//! Reference instances recomputed end to end.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::alcoved::AlcovedPoly;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::games::{CellOptions, MeanPayoffGame};
use crate::homog::{self, is_lattice, parse_bitstring, HypercubeLattice};
use crate::minmax::{ShapleyOp, Term};
use crate::retract::{ambitropical_hull, sunny_probe, AmbiCone};
use crate::scalar::{int, ratio, Rat};
use crate::tropical::{normalize_bottom, TropMat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

fn check(name: &'static str, outcome: Result<bool>) -> Check {
    match outcome {
        Ok(passed) => Check { name, passed, detail: String::new() },
        Err(e) => Check { name, passed: false, detail: e.to_string() },
    }
}

fn cube(r: i64) -> impl Iterator<Item = Vec<Rat>> {
    (-r..=r).flat_map(move |a| (-r..=r).flat_map(move |b| (-r..=r).map(move |c| vec![int(a), int(b), int(c)])))
}

fn star_rejects_positive_circuit() -> Result<bool> {
    let m = TropMat::from_rows(vec![vec![crate::Ext::int(1)]])?;
    Ok(matches!(m.kleene_star(), Err(Error::PositiveCircuit { ref circuit, .. }) if circuit == &vec![0]))
}

fn fathi() -> Result<bool> {
    let g = fixtures::fathi_game();
    let u = fixtures::fathi_eigenvector();
    let Some((w, l)) = g.find_eigen(1000)? else { return Ok(false) };
    let pol = g.calibrated_policies(&u, &int(1))?;
    let arcs: Vec<BTreeSet<usize>> = [2, 3, 3, 3].into_iter().map(|k| [k].into_iter().collect()).collect();
    let vi = g.value_iteration(50)?;
    let mean_ok = vi.mean.is_some_and(|m| m.iter().all(|v| (v - int(1)) * int(50) <= int(4) && (int(1) - v) * int(50) <= int(4)));
    Ok(g.check_eigen(&u, &int(1))? && l == int(1) && normalize_bottom(&w) == normalize_bottom(&u) && pol.pi == arcs && mean_ok)
}

fn butterfly_projections() -> Result<bool> {
    let g = fixtures::butterfly_generators();
    let x = |i| Term::Var(i);
    let p_max = ShapleyOp::new(3, vec![Term::Min(vec![x(0), Term::Max(vec![x(1), x(2)])]), x(1), x(2)])?;
    let p_min = ShapleyOp::new(3, vec![Term::Max(vec![x(0), Term::Min(vec![x(1), x(2)])]), x(1), x(2)])?;
    for p in cube(2) {
        if g.p_max(&p)? != p_max.eval(&p)? || g.p_min(&p)? != p_min.eval(&p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn unit_butterfly() -> Result<bool> {
    let g = fixtures::unit_butterfly_generators();
    let q = fixtures::unit_butterfly_retraction();
    for p in cube(3) {
        let p: Vec<Rat> = p.into_iter().map(|v| v / int(2)).collect();
        if g.q_minus(&p)? != q.eval(&p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn segment() -> Result<bool> {
    let mod3 = |v: &[Rat]| -> Vec<Rat> { v.iter().map(|a| a - &v[2]).collect() };
    let g = fixtures::segment_generators(&fixtures::uniform_grid(100));
    let x = vec![int(2), ratio(1, 2), int(0)];
    let u = g.p_max(&x)?;
    let first = u == vec![int(1), ratio(1, 2), int(0)] && mod3(&g.p_min(&u)?) == vec![ratio(3, 4), ratio(1, 4), int(0)];
    let mut grid = fixtures::uniform_grid(100);
    grid.extend([ratio(5, 8), ratio(13, 16)]);
    let probe = sunny_probe(&AmbiCone::new(fixtures::segment_generators(&grid)), &x, &ratio(1, 2))?;
    Ok(first && mod3(&probe.probe_image) == vec![ratio(13, 16), ratio(3, 16), int(0)] && !probe.sunny)
}

fn butterfly_cells() -> Result<bool> {
    let t = fixtures::butterfly();
    let cx = MeanPayoffGame::from_operator(&t)?.enumerate_cells(&CellOptions::default())?;
    let maximal: BTreeSet<TropMat> = cx.maximal().iter().map(|&c| cx.cells[c].poly.star().clone()).collect();
    let wings: BTreeSet<TropMat> = fixtures::butterfly_wings().iter().map(|p| p.star().clone()).collect();
    for p in cube(2) {
        if (t.eval(&p)? == p) != cx.covers(&p)? {
            return Ok(false);
        }
    }
    Ok(maximal == wings)
}

fn butterfly_skeleton() -> Result<bool> {
    let sk: BTreeSet<u64> = homog::skeleton(&fixtures::butterfly(), homog::DEFAULT_CUBE_CAP)?.into_iter().collect();
    let expected = fixtures::BUTTERFLY_SKELETON.iter().map(|s| parse_bitstring(s, 3)).collect::<Result<_>>()?;
    Ok(sk == expected)
}

fn lattice_l() -> Result<bool> {
    let l: BTreeSet<u64> = fixtures::LATTICE_L.iter().map(|s| parse_bitstring(s, 5)).collect::<Result<_>>()?;
    let proj: BTreeSet<u64> = fixtures::lattice_l_projection().iter().map(|s| parse_bitstring(s, 4)).collect::<Result<_>>()?;
    let v = is_lattice(4, &proj);
    let pair = v.pair.map(|(a, b)| [a.min(b), a.max(b)]);
    let bounds: BTreeSet<u64> = v.bounds.iter().copied().collect();
    Ok(is_lattice(5, &l).is_lattice
        && !v.is_lattice
        && pair == Some([0b0010, 0b0100])
        && bounds == [0b0111, 0b1110].into_iter().collect())
}

fn butterfly_chains() -> Result<bool> {
    let l = HypercubeLattice::from_bitstrings(3, &fixtures::BUTTERFLY_SKELETON)?;
    let chains = l.maximal_chains();
    let cells: BTreeSet<TropMat> =
        l.chains_to_fan().iter().filter(|c| c.dimension == 3).map(|c| c.partition.weyl_cell(3).star().clone()).collect();
    let wings: BTreeSet<TropMat> = fixtures::butterfly_wings().iter().map(|p| p.star().clone()).collect();
    Ok(chains.len() == 2 && chains.iter().all(|c| c.len() == 4) && cells == wings)
}

fn two_point_hull() -> Result<bool> {
    let hull = ambitropical_hull(&fixtures::two_points())?;
    let fixed = |p: Vec<Rat>| hull.contains(&p);
    Ok(fixed(vec![int(1), int(0), int(0)])?
        && fixed(vec![int(0), int(1), int(0)])?
        && fixed(vec![int(1), int(1), int(0)])?
        && !fixed(vec![ratio(1, 2), ratio(1, 2), int(0)])?)
}

fn nine_point_hull() -> Result<bool> {
    let pts = fixtures::nine_points();
    let hull = ambitropical_hull(&pts)?;
    for p in &pts {
        if !hull.contains(p)? {
            return Ok(false);
        }
    }
    let env = crate::alcoved::alcoved_envelope(&pts)?;
    Ok(hull.gens.hilbert_bound().is_some() && AlcovedPoly::is_hilbert_bounded(&env))
}

/// Runs every reference check.
pub fn run() -> Vec<Check> {
    vec![
        check("star-positive-circuit", star_rejects_positive_circuit()),
        check("fathi", fathi()),
        check("butterfly-projections", butterfly_projections()),
        check("unit-butterfly-retraction", unit_butterfly()),
        check("segment-counterexample", segment()),
        check("butterfly-cells", butterfly_cells()),
        check("butterfly-skeleton", butterfly_skeleton()),
        check("lattice-l", lattice_l()),
        check("butterfly-chains", butterfly_chains()),
        check("two-point-hull", two_point_hull()),
        check("nine-point-hull", nine_point_hull()),
    ]
}
