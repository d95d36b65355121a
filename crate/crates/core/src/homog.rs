//! Homogeneous ambitropical polyhedra through their 0/1 skeletons.
//!
//! A point of `{0,1}^n` is a `u64` whose most significant of the `n` low
//! bits is coordinate 1, so that `"0110"` reads left to right as
//! `(x1, x2, x3, x4)`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alcoved::AlcovedPoly;
use crate::error::{Error, Result};
use crate::minmax::{ShapleyOp, Term};
use crate::sample;
use crate::scalar::{Ext, Rat};
use crate::tropical::TropMat;

/// Largest dimension accepted by hypercube scans.
pub const DEFAULT_CUBE_CAP: usize = 20;

pub fn bit(v: u64, n: usize, i: usize) -> bool {
    v >> (n - 1 - i) & 1 == 1
}

pub fn top_element(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn to_bitstring(v: u64, n: usize) -> String {
    (0..n).map(|i| if bit(v, n, i) { '1' } else { '0' }).collect()
}

pub fn parse_bitstring(s: &str, n: usize) -> Result<u64> {
    if s.len() != n || !s.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::Parse(format!("expected a bit string of length {n}, found {s:?}")));
    }
    Ok(s.chars().fold(0u64, |acc, c| acc << 1 | u64::from(c == '1')))
}

pub fn to_point(v: u64, n: usize) -> Vec<Rat> {
    (0..n).map(|i| if bit(v, n, i) { Rat::one() } else { Rat::zero() }).collect()
}

/// Indices `i` with `x_i = 1`.
pub fn support(v: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| bit(v, n, i)).collect()
}

fn is_below(a: u64, b: u64) -> bool {
    a & !b == 0
}

fn check_cube(n: usize, cap: usize) -> Result<()> {
    if n > cap.min(63) {
        Err(Error::SizeCap { size: n, cap: cap.min(63) })
    } else {
        Ok(())
    }
}

/// Exact homogeneity: structurally free of constants, or equal to its
/// recession function on random samples.
fn require_homogeneous(op: &ShapleyOp) -> Result<()> {
    if op.is_constant_free() {
        return Ok(());
    }
    let rec = op.recession();
    let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(0x5eed);
    for _ in 0..256 {
        let x = sample::point(&mut rng, op.n_in(), 8, 3);
        if op.eval(&x)? != rec.eval(&x)? {
            return Err(Error::NotHomogeneous);
        }
    }
    Ok(())
}

/// Fixed points of `op` in `{0,1}^n`, in increasing numeric order.
pub fn skeleton(op: &ShapleyOp, cap: usize) -> Result<Vec<u64>> {
    if !op.is_square() {
        return Err(Error::DimensionMismatch { expected: op.n_in(), found: op.n_out() });
    }
    let n = op.n_in();
    check_cube(n, cap)?;
    require_homogeneous(op)?;
    let fixed: Vec<Option<u64>> = (0..=top_element(n))
        .into_par_iter()
        .map(|v| {
            let x = to_point(v, n);
            (op.eval(&x).expect("square operator") == x).then_some(v)
        })
        .collect();
    Ok(fixed.into_iter().flatten().collect())
}

/// Outcome of a lattice check. On failure `pair` holds two elements and
/// `bounds` their minimal upper (or maximal lower) bounds within the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeVerdict {
    pub is_lattice: bool,
    pub reason: Option<String>,
    pub pair: Option<(u64, u64)>,
    pub bounds: Vec<u64>,
}

impl LatticeVerdict {
    fn ok() -> Self {
        LatticeVerdict { is_lattice: true, reason: None, pair: None, bounds: Vec::new() }
    }

    fn fail(reason: &str, pair: Option<(u64, u64)>, bounds: Vec<u64>) -> Self {
        LatticeVerdict { is_lattice: false, reason: Some(reason.to_string()), pair, bounds }
    }

    pub fn into_error(self) -> Option<Error> {
        (!self.is_lattice).then(|| Error::NotALattice {
            reason: self.reason.unwrap_or_default(),
            pair: self.pair,
            bounds: self.bounds,
        })
    }
}

fn minimal_upper_bounds(set: &[u64], a: u64, b: u64) -> Vec<u64> {
    let ub: Vec<u64> = set.iter().copied().filter(|&u| is_below(a | b, u)).collect();
    ub.iter().copied().filter(|&u| !ub.iter().any(|&w| w != u && is_below(w, u))).collect()
}

fn maximal_lower_bounds(set: &[u64], a: u64, b: u64) -> Vec<u64> {
    let lb: Vec<u64> = set.iter().copied().filter(|&l| is_below(l, a & b)).collect();
    lb.iter().copied().filter(|&l| !lb.iter().any(|&w| w != l && is_below(l, w))).collect()
}

/// Checks that `set ⊆ {0,1}^n` contains bottom and top and that every pair
/// has a unique minimal upper bound and a unique maximal lower bound.
pub fn is_lattice(n: usize, set: &BTreeSet<u64>) -> LatticeVerdict {
    if !set.contains(&0) {
        return LatticeVerdict::fail("bottom element missing", None, Vec::new());
    }
    if !set.contains(&top_element(n)) {
        return LatticeVerdict::fail("top element missing", None, Vec::new());
    }
    let elems: Vec<u64> = set.iter().copied().collect();
    for (k, &a) in elems.iter().enumerate() {
        for &b in &elems[k + 1..] {
            let ub = minimal_upper_bounds(&elems, a, b);
            if ub.len() != 1 {
                return LatticeVerdict::fail("no least upper bound", Some((a, b)), ub);
            }
        }
    }
    for (k, &a) in elems.iter().enumerate() {
        for &b in &elems[k + 1..] {
            let lb = maximal_lower_bounds(&elems, a, b);
            if lb.len() != 1 {
                return LatticeVerdict::fail("no greatest lower bound", Some((a, b)), lb);
            }
        }
    }
    LatticeVerdict::ok()
}

/// A verified lattice in `{0,1}^n` containing bottom and top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HypercubeLattice {
    n: usize,
    elements: BTreeSet<u64>,
}

impl HypercubeLattice {
    pub fn new(n: usize, elements: BTreeSet<u64>) -> Result<Self> {
        check_cube(n, 63)?;
        if let Some(&bad) = elements.iter().find(|&&v| v > top_element(n)) {
            return Err(Error::InvalidEntry(format!("element {bad} outside the {n}-cube")));
        }
        if let Some(e) = is_lattice(n, &elements).into_error() {
            return Err(e);
        }
        Ok(HypercubeLattice { n, elements })
    }

    pub fn from_bitstrings<S: AsRef<str>>(n: usize, elements: &[S]) -> Result<Self> {
        let set = elements.iter().map(|s| parse_bitstring(s.as_ref(), n)).collect::<Result<_>>()?;
        HypercubeLattice::new(n, set)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &BTreeSet<u64> {
        &self.elements
    }

    pub fn bitstrings(&self) -> Vec<String> {
        self.elements.iter().map(|&v| to_bitstring(v, self.n)).collect()
    }

    /// Least upper bound within the lattice.
    pub fn join(&self, a: u64, b: u64) -> u64 {
        let elems: Vec<u64> = self.elements.iter().copied().collect();
        minimal_upper_bounds(&elems, a, b)[0]
    }

    /// `P(x) = ⋁ {u ∈ S : u ≤ x}` on the cube.
    fn retraction_table(&self) -> Vec<u64> {
        let elems: Vec<u64> = self.elements.iter().copied().collect();
        let k = elems.len();
        // joins[a][b] as indices into elems
        let index = |v: u64| elems.binary_search(&v).expect("lattice element");
        let joins: Vec<Vec<usize>> = (0..k)
            .map(|a| (0..k).map(|b| index(minimal_upper_bounds(&elems, elems[a], elems[b])[0])).collect())
            .collect();
        (0..=top_element(self.n))
            .into_par_iter()
            .map(|x| {
                let mut acc = 0usize; // bottom is the smallest element
                for (b, &u) in elems.iter().enumerate() {
                    if is_below(u, x) {
                        acc = joins[acc][b];
                    }
                }
                elems[acc]
            })
            .collect()
    }

    /// Homogeneous min-max operator whose skeleton is this lattice; each
    /// coordinate is the monotone DNF over the minimal true points.
    pub fn to_operator(&self) -> Result<ShapleyOp> {
        check_cube(self.n, DEFAULT_CUBE_CAP)?;
        let n = self.n;
        let table = self.retraction_table();
        let coords = (0..n)
            .map(|i| {
                let truth = |x: u64| bit(table[x as usize], n, i);
                let minimal: Vec<u64> = (0..=top_element(n))
                    .filter(|&x| truth(x) && support(x, n).iter().all(|&k| !truth(x & !(1 << (n - 1 - k)))))
                    .collect();
                let clauses: Vec<Term> = minimal
                    .into_iter()
                    .map(|y| Term::min(support(y, n).into_iter().map(Term::Var).collect()))
                    .collect();
                Term::max(clauses)
            })
            .collect();
        ShapleyOp::new(n, coords)
    }

    /// Pairs `a ⋖ b` of the covering relation within the lattice.
    fn covers(&self) -> Vec<(u64, Vec<u64>)> {
        let elems: Vec<u64> = self.elements.iter().copied().collect();
        elems
            .iter()
            .map(|&a| {
                let above: Vec<u64> = elems.iter().copied().filter(|&b| b != a && is_below(a, b)).collect();
                let covers =
                    above.iter().copied().filter(|&b| !above.iter().any(|&c| c != b && is_below(c, b))).collect();
                (a, covers)
            })
            .collect()
    }

    /// Maximal chains from bottom to top, by depth-first search on covers.
    pub fn maximal_chains(&self) -> Vec<Vec<u64>> {
        let covers = self.covers();
        let next = |a: u64| &covers.iter().find(|(v, _)| *v == a).expect("element").1;
        let top = top_element(self.n);
        let mut out = Vec::new();
        let mut stack = vec![vec![0u64]];
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            if last == top {
                out.push(chain);
                continue;
            }
            for &b in next(last).iter().rev() {
                let mut c = chain.clone();
                c.push(b);
                stack.push(c);
            }
        }
        out.sort();
        out
    }

    /// Every chain through bottom and top, each with its Weyl cell.
    pub fn chains_to_fan(&self) -> Vec<FanCell> {
        let mut chains: BTreeSet<Vec<u64>> = BTreeSet::new();
        for chain in self.maximal_chains() {
            let inner = &chain[1..chain.len() - 1];
            for mask in 0u64..1 << inner.len() {
                let mut c = vec![chain[0]];
                c.extend(inner.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v));
                c.push(*chain.last().unwrap());
                chains.insert(c);
            }
        }
        if self.n == 0 {
            return Vec::new();
        }
        let mut cells: Vec<FanCell> = chains
            .into_iter()
            .map(|chain| {
                let partition = OrderedPartition::from_chain(&chain, self.n);
                FanCell { dimension: partition.blocks.len(), chain, partition }
            })
            .collect();
        cells.sort_by(|a, b| b.dimension.cmp(&a.dimension).then_with(|| a.chain.cmp(&b.chain)));
        cells
    }
}

/// Ordered blocks `I_1, …, I_S` of `[n]` (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderedPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    /// For `0 = c_0 < … < c_S = 1`, `I_s = supp(c_{S-s+1}) \ supp(c_{S-s})`.
    pub fn from_chain(chain: &[u64], n: usize) -> Self {
        let s = chain.len() - 1;
        let blocks = (1..=s).map(|k| support(chain[s - k + 1] & !chain[s - k], n)).collect();
        OrderedPartition { blocks }
    }

    /// `{x : x_i ≤ x_j whenever i ∈ I_s, j ∈ I_t, s ≤ t}`.
    pub fn weyl_cell(&self, n: usize) -> AlcovedPoly {
        let mut m = TropMat::filled(n, n, Ext::NegInf).to_rows();
        for (s, bs) in self.blocks.iter().enumerate() {
            for bt in &self.blocks[s..] {
                for &i in bs {
                    for &j in bt {
                        if i != j {
                            m[j][i] = Ext::zero();
                        }
                    }
                }
            }
        }
        AlcovedPoly::new(TropMat::from_rows(m).expect("square")).expect("Weyl cells are nonempty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanCell {
    pub chain: Vec<u64>,
    pub partition: OrderedPartition,
    pub dimension: usize,
}

/// Chain of level sets `{i : x_i ≥ θ}` of a point, completed by bottom.
pub fn chain_of_point(x: &[Rat]) -> Vec<u64> {
    let n = x.len();
    let levels: BTreeSet<&Rat> = x.iter().collect();
    let mut chain = vec![0u64];
    for theta in levels.into_iter().rev() {
        let v = (0..n).filter(|&i| x[i] >= *theta).fold(0u64, |acc, i| acc | 1 << (n - 1 - i));
        chain.push(v);
    }
    chain
}

/// Tangent cone at a fixed point: the semiderivative there.
pub fn tangent_cone(op: &ShapleyOp, u: &[Rat]) -> Result<ShapleyOp> {
    if op.eval(u)? != u {
        return Err(Error::NotAFixedPoint);
    }
    op.semiderivative(u)
}

/// Recession cone: the operator with every constant dropped.
pub fn recession_cone(op: &ShapleyOp) -> Result<ShapleyOp> {
    if !op.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    Ok(op.recession())
}

/// A random lattice in `{0,1}^n`: either the intersection closure of a few
/// random sets (plus bottom), or a rejection-sampled family.
pub fn random_lattice<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HypercubeLattice {
    let top = top_element(n);
    loop {
        let k = rng.gen_range(0..=n.min(6) + 2);
        let mut set: BTreeSet<u64> = [0, top].into_iter().collect();
        let picks: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=top)).collect();
        if rng.gen_bool(0.5) {
            set.extend(picks);
        } else {
            let mut closed: BTreeSet<u64> = [top].into_iter().chain(picks).collect();
            loop {
                let items: Vec<u64> = closed.iter().copied().collect();
                let before = closed.len();
                for &a in &items {
                    for &b in &items {
                        closed.insert(a & b);
                    }
                }
                if closed.len() == before {
                    break;
                }
            }
            set.extend(closed);
        }
        if let Ok(l) = HypercubeLattice::new(n, set) {
            return l;
        }
        // try a single random chain as a cheap fallback
        if rng.gen_bool(0.1) {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            let mut v = 0u64;
            let mut set: BTreeSet<u64> = [0].into_iter().collect();
            for i in order {
                v |= 1 << (n - 1 - i);
                set.insert(v);
            }
            return HypercubeLattice::new(n, set).expect("chains are lattices");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn bits(v: &[&str], n: usize) -> BTreeSet<u64> {
        v.iter().map(|s| parse_bitstring(s, n).unwrap()).collect()
    }

    #[test]
    fn bitstrings_round_trip() {
        assert_eq!(parse_bitstring("011", 3).unwrap(), 3);
        assert_eq!(to_bitstring(4, 3), "100");
        assert!(bit(4, 3, 0));
        assert!(parse_bitstring("0a1", 3).is_err());
    }

    #[test]
    fn butterfly_skeleton() {
        let sk = skeleton(&fixtures::butterfly(), DEFAULT_CUBE_CAP).unwrap();
        let set: BTreeSet<u64> = sk.into_iter().collect();
        assert_eq!(set, bits(&fixtures::BUTTERFLY_SKELETON, 3));
    }

    #[test]
    fn identity_skeleton_is_the_cube() {
        assert_eq!(skeleton(&ShapleyOp::identity(4), 20).unwrap().len(), 16);
        assert!(matches!(skeleton(&ShapleyOp::identity(4), 3), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn shifted_operator_is_not_homogeneous() {
        let op = ShapleyOp::new(1, vec![Term::shift(Rat::one(), Term::Var(0))]).unwrap();
        assert_eq!(skeleton(&op, 20), Err(Error::NotHomogeneous));
    }

    #[test]
    fn lattice_l_and_its_projection() {
        assert!(is_lattice(5, &bits(&fixtures::LATTICE_L, 5)).is_lattice);
        let proj = fixtures::lattice_l_projection();
        let refs: Vec<&str> = proj.iter().map(String::as_str).collect();
        let v = is_lattice(4, &bits(&refs, 4));
        assert!(!v.is_lattice);
        let pair: BTreeSet<u64> = [v.pair.unwrap().0, v.pair.unwrap().1].into_iter().collect();
        assert_eq!(pair, bits(&["0100", "0010"], 4));
        assert_eq!(v.bounds.into_iter().collect::<BTreeSet<_>>(), bits(&["0111", "1110"], 4));
    }

    #[test]
    fn butterfly_chains() {
        let l = HypercubeLattice::from_bitstrings(3, &fixtures::BUTTERFLY_SKELETON).unwrap();
        let maximal = l.maximal_chains();
        assert_eq!(maximal, vec![bits(&["000", "001", "101", "111"], 3).into_iter().collect::<Vec<_>>(), vec![0, 2, 6, 7]]);
        let fan = l.chains_to_fan();
        let top: Vec<&FanCell> = fan.iter().filter(|c| c.dimension == 3).collect();
        assert_eq!(top.len(), 2);
        let [e1, e2] = fixtures::butterfly_wings();
        let cells: Vec<AlcovedPoly> = top.iter().map(|c| c.partition.weyl_cell(3)).collect();
        assert!(cells.iter().any(|c| c.star() == e1.star()));
        assert!(cells.iter().any(|c| c.star() == e2.star()));
    }

    #[test]
    fn single_coordinate_fan() {
        let l = HypercubeLattice::from_bitstrings(1, &["0", "1"]).unwrap();
        let fan = l.chains_to_fan();
        assert_eq!(fan.len(), 1);
        assert_eq!(fan[0].dimension, 1);
        assert_eq!(fan[0].partition.weyl_cell(1).star(), &TropMat::identity(1));
    }

    #[test]
    fn full_cube_gives_identity() {
        let all: BTreeSet<u64> = (0..8).collect();
        let l = HypercubeLattice::new(3, all).unwrap();
        let op = l.to_operator().unwrap();
        for v in 0..8 {
            assert_eq!(op.eval(&to_point(v, 3)).unwrap(), to_point(v, 3));
        }
    }
}
