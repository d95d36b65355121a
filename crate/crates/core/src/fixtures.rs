//! Reference instances used by tests, examples and `selfcheck`.

use crate::alcoved::AlcovedPoly;
use crate::games::MeanPayoffGame;
use crate::minmax::{ShapleyOp, Term};
use crate::retract::GeneratorSet;
use crate::scalar::{int, ratio, Ext, Rat};
use crate::tropical::{TropMat, TropVec};

fn x(i: usize) -> Term {
    Term::Var(i - 1)
}

fn plus(c: i64, t: Term) -> Term {
    Term::shift(int(c), t)
}

/// `((x1∧x2) ∨ (x1∧x3) ∨ (x2∧x3), x2, x3)`.
pub fn butterfly() -> ShapleyOp {
    let majority = Term::Max(vec![
        Term::Min(vec![x(1), x(2)]),
        Term::Min(vec![x(1), x(3)]),
        Term::Min(vec![x(2), x(3)]),
    ]);
    ShapleyOp::new(3, vec![majority, x(2), x(3)]).expect("valid arity")
}

/// The two wings `{x2 ≥ x1 ≥ x3}` and `{x3 ≥ x1 ≥ x2}` (0-based order pairs).
pub fn butterfly_wings() -> [AlcovedPoly; 2] {
    [
        AlcovedPoly::order(3, &[(1, 0), (0, 2)]).expect("nonempty"),
        AlcovedPoly::order(3, &[(2, 0), (0, 1)]).expect("nonempty"),
    ]
}

pub fn butterfly_generators() -> GeneratorSet {
    GeneratorSet::from_alcoved_union(&butterfly_wings()).expect("valid generators")
}

/// Skeleton of the butterfly as bit strings, index 1 leftmost.
pub const BUTTERFLY_SKELETON: [&str; 6] = ["000", "001", "010", "101", "110", "111"];

/// The butterfly wings cut by `|x2 - x3| ≤ 1`.
pub fn unit_butterfly_wings() -> [AlcovedPoly; 2] {
    let n = Ext::NegInf;
    let z = Ext::zero();
    let m1 = TropMat::from_rows(vec![
        vec![n.clone(), n.clone(), z.clone()],
        vec![z.clone(), n.clone(), n.clone()],
        vec![n.clone(), Ext::int(-1), n.clone()],
    ])
    .expect("square");
    let m2 = TropMat::from_rows(vec![
        vec![n.clone(), z.clone(), n.clone()],
        vec![n.clone(), n.clone(), Ext::int(-1)],
        vec![z, n.clone(), n],
    ])
    .expect("square");
    [AlcovedPoly::new(m1).expect("nonempty"), AlcovedPoly::new(m2).expect("nonempty")]
}

pub fn unit_butterfly_generators() -> GeneratorSet {
    GeneratorSet::from_alcoved_union(&unit_butterfly_wings()).expect("valid generators")
}

/// Bottom canonical retraction onto the unit butterfly, in closed form.
pub fn unit_butterfly_retraction() -> ShapleyOp {
    let c1 = Term::Max(vec![
        Term::Min(vec![x(1), x(2), plus(1, x(3))]),
        Term::Min(vec![x(1), plus(1, x(2)), x(3)]),
        Term::Min(vec![x(2), x(3), plus(1, x(1))]),
    ]);
    let c2 = Term::Min(vec![x(2), plus(1, x(1)), plus(1, x(3))]);
    let c3 = Term::Min(vec![x(3), plus(1, x(2)), plus(1, x(1))]);
    ShapleyOp::new(3, vec![c1, c2, c3]).expect("valid arity")
}

/// `(max(x1,x3), max(x2,x3), -1/2 + (x1 + x2)/2)`.
pub fn segment_operator() -> ShapleyOp {
    let third = Term::affine(ratio(-1, 2), vec![ratio(1, 2), ratio(1, 2), int(0)]).expect("probabilities");
    ShapleyOp::new(3, vec![Term::Max(vec![x(1), x(3)]), Term::Max(vec![x(2), x(3)]), third]).expect("valid arity")
}

/// Uniform grid `{k/steps : 0 ≤ k ≤ steps}`.
pub fn uniform_grid(steps: i64) -> Vec<Rat> {
    (0..=steps).map(|k| ratio(k, steps)).collect()
}

/// Points `(t, 1 - t, 0)` of the segment, used as both kinds of generators.
pub fn segment_generators(grid: &[Rat]) -> GeneratorSet {
    let points: Vec<Vec<Rat>> = grid.iter().map(|t| vec![t.clone(), int(1) - t, int(0)]).collect();
    GeneratorSet::from_points(&points).expect("nonempty grid")
}

pub fn fathi_game() -> MeanPayoffGame {
    let n = Ext::NegInf;
    let b = TropMat::from_rows(vec![
        vec![n.clone(), Ext::int(-1), Ext::int(0), n.clone()],
        vec![n.clone(), Ext::int(-1), n.clone(), Ext::int(-1)],
        vec![n.clone(), n.clone(), Ext::int(0), Ext::int(0)],
        vec![n.clone(), n.clone(), n, Ext::int(1)],
    ])
    .expect("rectangular");
    MeanPayoffGame::new(TropMat::identity(4), b).expect("proper")
}

pub fn fathi_eigenvector() -> Vec<Rat> {
    [-2, -2, -1, 0].into_iter().map(int).collect()
}

/// Columns `a_1 … a_9` of the nine-point example.
pub fn nine_points() -> Vec<Vec<Rat>> {
    let rows = [[4, 5, 3, 1, 0, 0, 0, 0, 4], [0, 2, 4, 3, 4, 2, 2, -1, 0], [0, 0, 0, 0, 2, 4, 2, 0, 3]];
    (0..9).map(|c| rows.iter().map(|r| int(r[c])).collect()).collect()
}

/// The lattice `L ⊂ {0,1}^5`.
pub const LATTICE_L: [&str; 6] = ["00000", "11111", "01001", "00101", "01110", "11101"];

/// `L` with its last coordinate dropped; not a lattice.
pub fn lattice_l_projection() -> Vec<String> {
    let mut v: Vec<String> = LATTICE_L.iter().map(|s| s[..4].to_string()).collect();
    v.sort();
    v.dedup();
    v
}

/// Two points `a = (1,0,0)`, `b = (0,1,0)`.
pub fn two_points() -> Vec<Vec<Rat>> {
    vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]
}

pub fn finite(v: &TropVec) -> Vec<Rat> {
    v.to_point().expect("finite vector")
}
