//! Closed ambitropical cones described by max and min generators, their
//! projections, canonical retractions and the constructions built on them.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alcoved::AlcovedPoly;
use crate::error::{check_dim, Error, Result};
use crate::minmax::ShapleyOp;
use crate::scalar::{rat_str, rat_vec_str, Ext, Rat};
use crate::tropical::{bottom, hilbert_seminorm, join, meet, normalize_bottom, sub, sup_dist, TropVec};

/// Pair of generator families. `max_gens` lie in `(Q ∪ {-inf})^n`,
/// `min_gens` in `(Q ∪ {+inf})^n`; within each family every coordinate is
/// finite for at least one generator, so all projections stay finite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GenRepr", into = "GenRepr")]
pub struct GeneratorSet {
    n: usize,
    max_gens: Vec<TropVec>,
    min_gens: Vec<TropVec>,
}

#[derive(Serialize, Deserialize)]
struct GenRepr {
    n: usize,
    max_gens: Vec<TropVec>,
    min_gens: Vec<TropVec>,
}

impl TryFrom<GenRepr> for GeneratorSet {
    type Error = Error;

    fn try_from(r: GenRepr) -> Result<Self> {
        GeneratorSet::new(r.n, r.max_gens, r.min_gens)
    }
}

impl From<GeneratorSet> for GenRepr {
    fn from(g: GeneratorSet) -> Self {
        GenRepr { n: g.n, max_gens: g.max_gens, min_gens: g.min_gens }
    }
}

fn check_family(n: usize, gens: &[TropVec], forbidden: &Ext, what: &str) -> Result<()> {
    if gens.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut covered = vec![false; n];
    for (k, g) in gens.iter().enumerate() {
        check_dim(n, g.len())?;
        if g.entries().contains(forbidden) {
            return Err(Error::InvalidEntry(format!("{what} generator {} has a {forbidden} entry", k + 1)));
        }
        let support = g.support();
        if support.is_empty() {
            return Err(Error::InvalidEntry(format!("{what} generator {} has empty support", k + 1)));
        }
        for i in support {
            covered[i] = true;
        }
    }
    if let Some(i) = covered.iter().position(|c| !c) {
        return Err(Error::InvalidEntry(format!("coordinate {} is not supported by any {what} generator", i + 1)));
    }
    Ok(())
}

impl GeneratorSet {
    pub fn new(n: usize, max_gens: Vec<TropVec>, min_gens: Vec<TropVec>) -> Result<Self> {
        check_family(n, &max_gens, &Ext::PosInf, "max")?;
        check_family(n, &min_gens, &Ext::NegInf, "min")?;
        Ok(GeneratorSet { n, max_gens, min_gens })
    }

    /// The same finite points used as max and as min generators.
    pub fn from_points(points: &[Vec<Rat>]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        let gens: Vec<TropVec> = points.iter().map(|p| TropVec::from_point(p)).collect();
        GeneratorSet::new(first.len(), gens.clone(), gens)
    }

    /// Generators of a finite union of alcoved polyhedra: the extreme
    /// generators of each piece as max generators, the dual ones as min
    /// generators, without repetitions.
    pub fn from_alcoved_union(pieces: &[AlcovedPoly]) -> Result<Self> {
        let first = pieces.first().ok_or(Error::EmptyInput)?;
        let mut max_gens: Vec<TropVec> = Vec::new();
        let mut min_gens: Vec<TropVec> = Vec::new();
        for p in pieces {
            check_dim(first.dim(), p.dim())?;
            for g in p.generators() {
                if !max_gens.contains(&g) {
                    max_gens.push(g);
                }
            }
            for g in p.dual_generators() {
                if !min_gens.contains(&g) {
                    min_gens.push(g);
                }
            }
        }
        GeneratorSet::new(first.dim(), max_gens, min_gens)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn max_gens(&self) -> &[TropVec] {
        &self.max_gens
    }

    pub fn min_gens(&self) -> &[TropVec] {
        &self.min_gens
    }

    /// Largest point of the tropical cone spanned by `max_gens` below `x`.
    pub fn p_max(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        check_dim(self.n, x.len())?;
        let mut out: Vec<Option<Rat>> = vec![None; self.n];
        for g in &self.max_gens {
            let lambda = g
                .entries()
                .iter()
                .zip(x)
                .filter_map(|(gi, xi)| gi.finite().map(|gi| xi - gi))
                .min()
                .expect("nonempty support");
            for (o, gi) in out.iter_mut().zip(g.entries()) {
                if let Some(gi) = gi.finite() {
                    let v = gi + &lambda;
                    if o.as_ref().map_or(true, |cur| v > *cur) {
                        *o = Some(v);
                    }
                }
            }
        }
        Ok(out.into_iter().map(|o| o.expect("covered coordinate")).collect())
    }

    /// Least point of the dual tropical cone spanned by `min_gens` above `x`.
    pub fn p_min(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        check_dim(self.n, x.len())?;
        let mut out: Vec<Option<Rat>> = vec![None; self.n];
        for h in &self.min_gens {
            let mu = h
                .entries()
                .iter()
                .zip(x)
                .filter_map(|(hi, xi)| hi.finite().map(|hi| xi - hi))
                .max()
                .expect("nonempty support");
            for (o, hi) in out.iter_mut().zip(h.entries()) {
                if let Some(hi) = hi.finite() {
                    let v = hi + &mu;
                    if o.as_ref().map_or(true, |cur| v < *cur) {
                        *o = Some(v);
                    }
                }
            }
        }
        Ok(out.into_iter().map(|o| o.expect("covered coordinate")).collect())
    }

    /// `P^min ∘ P^max`, the bottom canonical retraction.
    pub fn q_minus(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.p_min(&self.p_max(x)?)
    }

    /// `P^max ∘ P^min`, the top canonical retraction.
    pub fn q_plus(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.p_max(&self.p_min(x)?)
    }

    /// Interval `[P^max(z), P^min(z)]` of best co-approximations of `z`.
    pub fn co_approximation_interval(&self, z: &[Rat]) -> Result<(Vec<Rat>, Vec<Rat>)> {
        Ok((self.p_max(z)?, self.p_min(z)?))
    }

    /// Largest Hilbert seminorm among finite generators, if all are finite.
    pub fn hilbert_bound(&self) -> Option<Rat> {
        self.max_gens
            .iter()
            .chain(&self.min_gens)
            .map(|g| g.to_point().map(|p| hilbert_seminorm(&p)))
            .collect::<Option<Vec<Rat>>>()
            .map(|v| v.into_iter().max().unwrap_or_else(Rat::zero))
    }
}

/// An idempotent Shapley operator used as a retraction onto its range.
pub trait Retraction {
    fn dim(&self) -> usize;

    fn retract(&self, x: &[Rat]) -> Result<Vec<Rat>>;

    fn is_fixed(&self, x: &[Rat]) -> Result<bool> {
        Ok(self.retract(x)? == x)
    }
}

impl Retraction for AlcovedPoly {
    fn dim(&self) -> usize {
        AlcovedPoly::dim(self)
    }

    /// Greatest point of the polyhedron below `x`.
    fn retract(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.project_down(x)
    }
}

/// Which canonical retraction represents the cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `P^min ∘ P^max`
    Minus,
    /// `P^max ∘ P^min`
    Plus,
}

/// A closed ambitropical cone: the fixed-point set of one canonical
/// retraction built from a generator description.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AmbiCone {
    pub gens: GeneratorSet,
    pub side: Side,
}

impl AmbiCone {
    pub fn new(gens: GeneratorSet) -> Self {
        AmbiCone { gens, side: Side::Minus }
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        self.is_fixed(x)
    }

    /// Retraction of a batch of points, evaluated in parallel.
    pub fn retract_all(&self, points: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
        points.par_iter().map(|p| self.retract(p)).collect()
    }
}

impl Retraction for AmbiCone {
    fn dim(&self) -> usize {
        self.gens.dim()
    }

    fn retract(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        match self.side {
            Side::Minus => self.gens.q_minus(x),
            Side::Plus => self.gens.q_plus(x),
        }
    }
}

/// Ambitropical hull of finitely many points: the range of `P^max ∘ P^min`
/// with the points as both max and min generators.
pub fn ambitropical_hull(points: &[Vec<Rat>]) -> Result<AmbiCone> {
    Ok(AmbiCone { gens: GeneratorSet::from_points(points)?, side: Side::Plus })
}

/// Outcome of iterating a Shapley operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Iteration {
    /// `T(x) = x` after `iterations` applications.
    Fixed {
        #[serde(with = "rat_vec_str")]
        point: Vec<Rat>,
        iterations: usize,
    },
    /// `x_{start + period} = x_start + shift`.
    Cycle {
        #[serde(with = "rat_vec_str")]
        point: Vec<Rat>,
        start: usize,
        period: usize,
        #[serde(with = "rat_str")]
        shift: Rat,
    },
    /// Hilbert seminorm of `T(x) - x` fell below the tolerance.
    Tolerance {
        #[serde(with = "rat_vec_str")]
        point: Vec<Rat>,
        iterations: usize,
        #[serde(with = "rat_str")]
        residual: Rat,
    },
    Budget {
        #[serde(with = "rat_vec_str")]
        point: Vec<Rat>,
        iterations: usize,
        #[serde(with = "rat_str")]
        residual: Rat,
    },
}

impl Iteration {
    pub fn point(&self) -> &[Rat] {
        match self {
            Iteration::Fixed { point, .. }
            | Iteration::Cycle { point, .. }
            | Iteration::Tolerance { point, .. }
            | Iteration::Budget { point, .. } => point,
        }
    }
}

/// Iterates `x ← T(x)` from `x0`, detecting exact cycles modulo constants.
pub fn iterate_to_fixed_point(
    op: &ShapleyOp,
    x0: &[Rat],
    max_iters: usize,
    tol_hilbert: Option<&Rat>,
) -> Result<Iteration> {
    check_dim(op.n_in(), op.n_out())?;
    let mut seen: HashMap<Vec<Rat>, (usize, Rat)> = HashMap::new();
    let mut x = x0.to_vec();
    for k in 0..=max_iters {
        let tx = op.eval(&x)?;
        if tx == x {
            return Ok(Iteration::Fixed { point: x, iterations: k });
        }
        let residual = hilbert_seminorm(&sub(&tx, &x));
        if k == max_iters {
            return Ok(Iteration::Budget { point: x, iterations: k, residual });
        }
        if tol_hilbert.is_some_and(|t| residual <= *t) {
            return Ok(Iteration::Tolerance { point: x, iterations: k, residual });
        }
        let low = bottom(&x);
        if let Some((start, low0)) = seen.insert(normalize_bottom(&x), (k, low.clone())) {
            return Ok(Iteration::Cycle { point: x, start, period: k - start, shift: low - low0 });
        }
        x = tx;
    }
    unreachable!("loop returns at k == max_iters")
}

fn require_fixed(op: &ShapleyOp, x: &[Rat]) -> Result<()> {
    if op.eval(x)? == x {
        Ok(())
    } else {
        Err(Error::NotAFixedPoint)
    }
}

/// Least upper bound of two fixed points within the fixed-point set of `op`.
pub fn lattice_sup(op: &ShapleyOp, x: &[Rat], y: &[Rat], max_iters: usize) -> Result<Vec<Rat>> {
    require_fixed(op, x)?;
    require_fixed(op, y)?;
    match iterate_to_fixed_point(op, &join(x, y), max_iters, None)? {
        Iteration::Fixed { point, .. } => Ok(point),
        _ => Err(Error::NonConvergence { iterations: max_iters }),
    }
}

/// Greatest lower bound of two fixed points within the fixed-point set of `op`.
pub fn lattice_inf(op: &ShapleyOp, x: &[Rat], y: &[Rat], max_iters: usize) -> Result<Vec<Rat>> {
    require_fixed(op, x)?;
    require_fixed(op, y)?;
    match iterate_to_fixed_point(op, &meet(x, y), max_iters, None)? {
        Iteration::Fixed { point, .. } => Ok(point),
        _ => Err(Error::NonConvergence { iterations: max_iters }),
    }
}

/// Image under `q` of `samples` equally spaced points of the segment `[x, y]`
/// (endpoints included, at least two points).
pub fn geodesic<Q: Retraction + ?Sized>(q: &Q, x: &[Rat], y: &[Rat], samples: usize) -> Result<Vec<Vec<Rat>>> {
    check_dim(q.dim(), x.len())?;
    check_dim(q.dim(), y.len())?;
    if !q.is_fixed(x)? || !q.is_fixed(y)? {
        return Err(Error::NotAFixedPoint);
    }
    let steps = samples.max(2) - 1;
    let dir = sub(y, x);
    (0..=steps)
        .map(|k| {
            let s = Rat::new((k as i64).into(), (steps as i64).into());
            let p: Vec<Rat> = x.iter().zip(&dir).map(|(xi, di)| xi + &s * di).collect();
            q.retract(&p)
        })
        .collect()
}

/// A common point of the sup-norm balls `B(c_α, r_α)` inside the range of `q`.
pub fn hyperconvexity_witness<Q: Retraction + ?Sized>(q: &Q, centers: &[Vec<Rat>], radii: &[Rat]) -> Result<Vec<Rat>> {
    if centers.is_empty() {
        return Err(Error::EmptyInput);
    }
    check_dim(centers.len(), radii.len())?;
    let n = q.dim();
    for (c, r) in centers.iter().zip(radii) {
        check_dim(n, c.len())?;
        if r < &Rat::zero() {
            return Err(Error::InvalidEntry("negative radius".into()));
        }
        if !q.is_fixed(c)? {
            return Err(Error::NotAFixedPoint);
        }
    }
    for a in 0..centers.len() {
        for b in a + 1..centers.len() {
            if sup_dist(&centers[a], &centers[b]) > &radii[a] + &radii[b] {
                return Err(Error::PairwiseConditionViolated { first: a, second: b });
            }
        }
    }
    let z: Vec<Rat> = (0..n)
        .map(|i| centers.iter().zip(radii).map(|(c, r)| &c[i] - r).max().expect("nonempty"))
        .collect();
    q.retract(&z)
}

/// Test of the sunny property at `x`: with `y = q(x)` and the probe
/// `x' = y + s (x - y)`, a sunny retraction satisfies `q(x') = y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SunnyProbe {
    #[serde(with = "rat_vec_str")]
    pub image: Vec<Rat>,
    #[serde(with = "rat_vec_str")]
    pub probe: Vec<Rat>,
    #[serde(with = "rat_vec_str")]
    pub probe_image: Vec<Rat>,
    pub sunny: bool,
}

pub fn sunny_probe<Q: Retraction + ?Sized>(q: &Q, x: &[Rat], s: &Rat) -> Result<SunnyProbe> {
    let image = q.retract(x)?;
    let probe: Vec<Rat> = image.iter().zip(x).map(|(yi, xi)| yi + s * (xi - yi)).collect();
    let probe_image = q.retract(&probe)?;
    let sunny = normalize_bottom(&probe_image) == normalize_bottom(&image);
    Ok(SunnyProbe { image, probe, probe_image, sunny })
}
