//! Deterministic mean-payoff games given by proper pairs `(A, B)`.
//!
//! In state `i` player Min picks a row `j` with `A_ji` finite and pays
//! `-A_ji`; player Max then picks `k` with `B_jk` finite, receives `B_jk`
//! and the play moves to `k`. The dynamic programming operator is
//! `T = A♯ ∘ B`.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alcoved::AlcovedPoly;
use crate::error::{check_dim, Error, Result};
use crate::minmax::{ProperPair, ShapleyOp};
use crate::scalar::{rat_str, Ext, Rat};
use crate::tropical::{hilbert_seminorm, normalize_bottom, sub, top, TropMat};

/// Default cap on `n + m` for cell enumeration.
pub const DEFAULT_CELL_CAP: usize = 14;
/// Default cap on the horizon of exhaustive path enumeration.
pub const DEFAULT_HORIZON_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MeanPayoffGame {
    pair: ProperPair,
}

impl MeanPayoffGame {
    pub fn new(a: TropMat, b: TropMat) -> Result<Self> {
        Ok(MeanPayoffGame { pair: ProperPair::new(a, b)? })
    }

    pub fn from_pair(pair: ProperPair) -> Self {
        MeanPayoffGame { pair }
    }

    /// Game of a deterministic min-max operator, through its conjunctive normal form.
    pub fn from_operator(op: &ShapleyOp) -> Result<Self> {
        Ok(MeanPayoffGame { pair: op.to_proper_pair()? })
    }

    pub fn pair(&self) -> &ProperPair {
        &self.pair
    }

    pub fn a(&self) -> &TropMat {
        self.pair.a()
    }

    pub fn b(&self) -> &TropMat {
        self.pair.b()
    }

    /// Number of Min states.
    pub fn n(&self) -> usize {
        self.pair.n_in()
    }

    /// Number of Max states.
    pub fn m(&self) -> usize {
        self.pair.m()
    }

    fn require_square(&self) -> Result<()> {
        check_dim(self.pair.n_in(), self.pair.n_out())
    }

    pub fn eval(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.pair.eval(x)
    }

    /// The same game with `lambda` subtracted from every payment of Max.
    pub fn recentered(&self, lambda: &Rat) -> MeanPayoffGame {
        let b = self.b();
        let shifted = TropMat::from_fn(b.rows(), b.cols(), |j, k| b.get(j, k).add_rat(&-lambda));
        MeanPayoffGame { pair: ProperPair::new(self.a().clone(), shifted).expect("shift keeps the pair proper") }
    }

    /// `v^k = T^k(0)` and the mean estimate `v^k / k`.
    pub fn value_iteration(&self, horizon: usize) -> Result<ValueIteration> {
        self.require_square()?;
        let mut v = vec![Rat::from_integer(0.into()); self.n()];
        for _ in 0..horizon {
            v = self.eval(&v)?;
        }
        let mean = (horizon > 0).then(|| {
            let k = Rat::from_integer((horizon as i64).into());
            v.iter().map(|x| x / &k).collect()
        });
        Ok(ValueIteration { horizon, values: v, mean })
    }

    /// `T(u) = λ + u`, exactly.
    pub fn check_eigen(&self, u: &[Rat], lambda: &Rat) -> Result<bool> {
        self.require_square()?;
        Ok(self.eval(u)?.iter().zip(u).all(|(t, x)| *t == x + lambda))
    }

    /// Searches an eigenpair by normalized iteration from 0. The returned
    /// vector has top entry 0.
    pub fn find_eigen(&self, max_iters: usize) -> Result<Option<(Vec<Rat>, Rat)>> {
        self.require_square()?;
        let mut w = vec![Rat::from_integer(0.into()); self.n()];
        let mut seen: HashMap<Vec<Rat>, usize> = HashMap::new();
        let mut history: Vec<Vec<Rat>> = Vec::new();
        for k in 0..max_iters {
            let tw = self.eval(&w)?;
            let r = sub(&tw, &w);
            if hilbert_seminorm(&r) == Rat::from_integer(0.into()) {
                let lambda = r[0].clone();
                let shift = top(&w);
                let u = w.iter().map(|x| x - &shift).collect();
                return Ok(Some((u, lambda)));
            }
            let key = normalize_bottom(&w);
            if let Some(start) = seen.insert(key, k) {
                // Periodic orbit modulo constants: try its pointwise extremes.
                let cycle = &history[start..];
                for cand in [extreme(cycle, true), extreme(cycle, false)] {
                    let r = sub(&self.eval(&cand)?, &cand);
                    if hilbert_seminorm(&r) == Rat::from_integer(0.into()) {
                        let shift = top(&cand);
                        return Ok(Some((cand.iter().map(|x| x - &shift).collect(), r[0].clone())));
                    }
                }
                return Ok(None);
            }
            history.push(w.clone());
            let t = top(&r);
            w = tw.iter().map(|x| x - &t).collect();
        }
        Ok(None)
    }

    /// Full argmin / argmax sets at an eigenvector.
    pub fn calibrated_policies(&self, u: &[Rat], lambda: &Rat) -> Result<PolicyPair> {
        if !self.check_eigen(u, lambda)? {
            return Err(Error::NotAnEigenvector);
        }
        let bu = self.pair.apply_b(u)?;
        let (a, b) = (self.a(), self.b());
        let sigma = (0..self.n())
            .map(|i| {
                let vals: Vec<(usize, Rat)> = (0..self.m())
                    .filter_map(|j| a.get(j, i).finite().map(|aji| (j, &bu[j] - aji)))
                    .collect();
                arg_best(&vals, false)
            })
            .collect();
        let pi = (0..self.m())
            .map(|j| {
                let vals: Vec<(usize, Rat)> =
                    (0..self.n()).filter_map(|k| b.get(j, k).finite().map(|bjk| (k, bjk + &u[k]))).collect();
                arg_best(&vals, true)
            })
            .collect();
        Ok(PolicyPair { sigma, pi })
    }

    /// Exhaustive check of the path inequalities of a calibrated pair up to
    /// `horizon` turns: when Min follows `sigma`, every play from `i_0` pays
    /// at most `u_{i_0} - u_{i_k} + kλ`; when Max follows `pi`, at least that.
    pub fn verify_calibrated(
        &self,
        u: &[Rat],
        lambda: &Rat,
        policies: &PolicyPair,
        horizon: usize,
        cap: usize,
    ) -> Result<Option<PathViolation>> {
        self.require_square()?;
        check_dim(self.n(), u.len())?;
        policies.check_shape(self.n(), self.m())?;
        if horizon > cap {
            return Err(Error::HorizonTooLarge { horizon, cap });
        }
        for side in [Side::Primal, Side::Dual] {
            for i0 in 0..self.n() {
                let mut path = vec![i0];
                let zero = Rat::from_integer(0.into());
                if let Some(v) = self.walk(u, lambda, policies, side, horizon, &mut path, &zero) {
                    return Ok(Some(v));
                }
            }
        }
        Ok(None)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        u: &[Rat],
        lambda: &Rat,
        pol: &PolicyPair,
        side: Side,
        left: usize,
        path: &mut Vec<usize>,
        paid: &Rat,
    ) -> Option<PathViolation> {
        let turns = (path.len() - 1) / 2;
        let (i0, last) = (path[0], *path.last().unwrap());
        let bound = &u[i0] - &u[last] + lambda * Rat::from_integer((turns as i64).into());
        let bad = match side {
            Side::Primal => *paid > bound,
            Side::Dual => *paid < bound,
        };
        if bad {
            return Some(PathViolation { side, path: path.iter().map(|s| s + 1).collect(), payment: paid.clone() });
        }
        if left == 0 {
            return None;
        }
        let (a, b) = (self.a(), self.b());
        let rows: Vec<usize> = match side {
            Side::Primal => pol.sigma[last].iter().copied().collect(),
            Side::Dual => (0..self.m()).filter(|&j| a.get(j, last).is_finite()).collect(),
        };
        for j in rows {
            let aji = a.get(j, last).finite()?.clone();
            let targets: Vec<usize> = match side {
                Side::Primal => (0..self.n()).filter(|&k| b.get(j, k).is_finite()).collect(),
                Side::Dual => pol.pi[j].iter().copied().collect(),
            };
            for k in targets {
                let bjk = b.get(j, k).finite()?;
                let step = paid - &aji + bjk;
                path.push(j);
                path.push(k);
                let found = self.walk(u, lambda, pol, side, left - 1, path, &step);
                path.truncate(path.len() - 2);
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    /// Maximal type of `x`: the arcs attaining `[(A ∨ B) x]_j`.
    pub fn type_of(&self, x: &[Rat]) -> Result<PolicyPair> {
        check_dim(self.n(), x.len())?;
        let c = combined(self.a(), self.b());
        let (a, b) = (self.a(), self.b());
        let cx = c.apply_finite(x)?;
        let mut sigma = vec![BTreeSet::new(); self.n()];
        let pi = (0..self.m())
            .map(|j| {
                for i in 0..self.n() {
                    if a.get(j, i).finite().is_some_and(|aji| aji + &x[i] == cx[j]) {
                        sigma[i].insert(j);
                    }
                }
                (0..self.n()).filter(|&k| b.get(j, k).finite().is_some_and(|bjk| bjk + &x[k] == cx[j])).collect()
            })
            .collect();
        Ok(PolicyPair { sigma, pi })
    }

    /// The polyhedron `X_τ` of points whose type contains `tau`, or `None`.
    pub fn cell_of_type(&self, tau: &PolicyPair) -> Result<Option<AlcovedPoly>> {
        tau.check_shape(self.n(), self.m())?;
        tau.check_arcs(self.a(), self.b())?;
        let rows: Vec<RowChoice> = (0..self.m())
            .map(|j| RowChoice {
                pi: tau.pi[j].iter().copied().collect(),
                sigma_inv: (0..self.n()).filter(|i| tau.sigma[*i].contains(&j)).collect(),
            })
            .collect();
        let c = combined(self.a(), self.b());
        let mut m = vec![Ext::NegInf; self.n() * self.n()];
        for (j, ch) in rows.iter().enumerate() {
            add_row_constraints(&mut m, self.n(), &c, self.a(), self.b(), j, ch);
        }
        match AlcovedPoly::new(TropMat::new(self.n(), self.n(), m)?) {
            Ok(p) => Ok(Some(p)),
            Err(Error::EmptyPolyhedron { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Polyhedral complex of the fixed-point set (after re-centering by the
    /// eigenvalue found by [`find_eigen`](Self::find_eigen), if any).
    pub fn enumerate_cells(&self, opts: &CellOptions) -> Result<CellComplex> {
        self.require_square()?;
        let size = self.n() + self.m();
        if size > opts.cap {
            return Err(Error::SizeCap { size, cap: opts.cap });
        }
        let lambda = self.find_eigen(opts.eigen_iters)?.map(|(_, l)| l);
        let game = match &lambda {
            Some(l) => self.recentered(l),
            None => self.clone(),
        };
        let (stars, complete) = game.closed_proper_types(opts.max_cells);
        let mut cells: Vec<Cell> = stars
            .into_iter()
            .map(|(tau, poly)| Cell { dimension: poly.dimension(), poly: poly.canonical(), tau })
            .collect();
        cells.sort_by(|x, y| {
            y.dimension.cmp(&x.dimension).then_with(|| x.poly.star().to_rows().cmp(&y.poly.star().to_rows()))
        });
        let faces: Vec<Vec<usize>> = (0..cells.len())
            .map(|c| {
                (0..cells.len()).filter(|&d| d != c && cells[d].poly.is_subset_of(&cells[c].poly)).collect()
            })
            .collect();
        Ok(CellComplex { lambda, n: self.n(), cells, faces, complete })
    }

    fn closed_proper_types(&self, max_cells: Option<usize>) -> (Vec<(PolicyPair, AlcovedPoly)>, bool) {
        let n = self.n();
        let (a, b) = (self.a(), self.b());
        let c = combined(a, b);
        let choices: Vec<Vec<RowChoice>> = (0..self.m()).map(|j| row_choices(a, b, j)).collect();
        let ctx = Dfs { game: self, c: &c, choices: &choices, n };
        let init = vec![Ext::NegInf; n * n];
        let mut found: Vec<Vec<RowChoice>> = if choices.is_empty() {
            Vec::new()
        } else {
            choices[0]
                .par_iter()
                .map(|first| {
                    let mut out = Vec::new();
                    let mut picked = Vec::new();
                    ctx.descend(&init, first, &mut picked, &mut out, max_cells);
                    out
                })
                .flatten()
                .collect()
        };
        found.sort();
        found.dedup();
        let complete = max_cells.map_or(true, |cap| found.len() <= cap);
        if let Some(cap) = max_cells {
            found.truncate(cap);
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for picked in found {
            let tau = PolicyPair::from_rows(n, &picked);
            let poly = self.cell_of_type(&tau).expect("valid arcs").expect("feasible leaf");
            if seen.insert(poly.star().clone()) {
                out.push((tau, poly));
            }
        }
        (out, complete)
    }
}

/// `A ∨ B`.
fn combined(a: &TropMat, b: &TropMat) -> TropMat {
    a.join(b).expect("same shape")
}

fn extreme(points: &[Vec<Rat>], upper: bool) -> Vec<Rat> {
    let n = points[0].len();
    (0..n)
        .map(|i| {
            let it = points.iter().map(|p| normalize_bottom(p)[i].clone());
            if upper {
                it.max().unwrap()
            } else {
                it.min().unwrap()
            }
        })
        .collect()
}

fn arg_best(vals: &[(usize, Rat)], max: bool) -> BTreeSet<usize> {
    let best = if max { vals.iter().map(|(_, v)| v).max() } else { vals.iter().map(|(_, v)| v).min() };
    match best {
        Some(best) => vals.iter().filter(|(_, v)| v == best).map(|(k, _)| *k).collect(),
        None => BTreeSet::new(),
    }
}

/// Arcs chosen at one Max state `j`: Max moves `pi` and the Min states
/// `sigma_inv` whose move to `j` is tight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct RowChoice {
    pi: Vec<usize>,
    sigma_inv: Vec<usize>,
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u64..1 << items.len())
        .map(|mask| items.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect())
        .collect()
}

/// All choices for row `j`, largest attainment sets first.
fn row_choices(a: &TropMat, b: &TropMat, j: usize) -> Vec<RowChoice> {
    let supp_b: Vec<usize> = (0..b.cols()).filter(|&k| b.get(j, k).is_finite()).collect();
    let supp_a: Vec<usize> = (0..a.cols()).filter(|&i| a.get(j, i).is_finite()).collect();
    let mut out = Vec::new();
    for pi in subsets(&supp_b).into_iter().filter(|s| !s.is_empty()) {
        for sigma_inv in subsets(&supp_a) {
            out.push(RowChoice { pi: pi.clone(), sigma_inv });
        }
    }
    out.sort_by(|x, y| (y.pi.len() + y.sigma_inv.len()).cmp(&(x.pi.len() + x.sigma_inv.len())).then(x.cmp(y)));
    out
}

/// Adds `x_k ≥ C_jl - B_jk + x_l` for `k ∈ π(j)` and `x_i ≥ C_jl - A_ji + x_l`
/// for `i ∈ σ⁻¹(j)`.
fn add_row_constraints(m: &mut [Ext], n: usize, c: &TropMat, a: &TropMat, b: &TropMat, j: usize, ch: &RowChoice) {
    let mut tighten = |k: usize, w: &Rat| {
        for l in 0..n {
            if let Some(cjl) = c.get(j, l).finite() {
                let v = Ext::Fin(cjl - w);
                if v > m[k * n + l] {
                    m[k * n + l] = v;
                }
            }
        }
    };
    for &k in &ch.pi {
        tighten(k, b.get(j, k).finite().expect("finite arc"));
    }
    for &i in &ch.sigma_inv {
        tighten(i, a.get(j, i).finite().expect("finite arc"));
    }
}

/// `x_k - x_l ≥ C_jl - w` for every `l` holds on the polyhedron with star `s`.
fn implied(s: &TropMat, c: &TropMat, j: usize, k: usize, w: &Rat) -> bool {
    (0..c.cols()).all(|l| match c.get(j, l).finite() {
        Some(cjl) => *s.get(k, l) >= Ext::Fin(cjl - w),
        None => true,
    })
}

struct Dfs<'a> {
    game: &'a MeanPayoffGame,
    c: &'a TropMat,
    choices: &'a [Vec<RowChoice>],
    n: usize,
}

impl Dfs<'_> {
    /// Some processed row leaves out an arc whose constraint already holds.
    fn not_closed(&self, star: &TropMat, picked: &[RowChoice]) -> bool {
        let (a, b) = (self.game.a(), self.game.b());
        picked.iter().enumerate().any(|(j, ch)| {
            (0..self.n).any(|k| {
                b.get(j, k).finite().is_some_and(|w| !ch.pi.contains(&k) && implied(star, self.c, j, k, w))
            }) || (0..self.n).any(|i| {
                a.get(j, i).finite().is_some_and(|w| !ch.sigma_inv.contains(&i) && implied(star, self.c, j, i, w))
            })
        })
    }

    fn descend(
        &self,
        m: &[Ext],
        choice: &RowChoice,
        picked: &mut Vec<RowChoice>,
        out: &mut Vec<Vec<RowChoice>>,
        max_cells: Option<usize>,
    ) {
        if max_cells.is_some_and(|cap| out.len() > cap) {
            return;
        }
        let j = picked.len();
        let mut m = m.to_vec();
        add_row_constraints(&mut m, self.n, self.c, self.game.a(), self.game.b(), j, choice);
        let Ok(star) = TropMat::new(self.n, self.n, m.clone()).and_then(|t| t.kleene_star()) else {
            return;
        };
        picked.push(choice.clone());
        if !self.not_closed(&star, picked) {
            if picked.len() == self.choices.len() {
                let covered = (0..self.n).all(|i| picked.iter().any(|ch| ch.sigma_inv.contains(&i)));
                if covered {
                    out.push(picked.clone());
                }
            } else {
                for next in &self.choices[j + 1] {
                    self.descend(&m, next, picked, out, max_cells);
                }
            }
        }
        picked.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueIteration {
    pub horizon: usize,
    #[serde(with = "crate::scalar::rat_vec_str")]
    pub values: Vec<Rat>,
    #[serde(serialize_with = "ser_opt_vec")]
    pub mean: Option<Vec<Rat>>,
}

fn ser_opt_vec<S: serde::Serializer>(v: &Option<Vec<Rat>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(|v| v.iter().map(|q| Ext::Fin(q.clone())).collect::<Vec<_>>()).serialize(s)
}

/// Which inequality a path violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Min follows `sigma`; payments bounded above.
    Primal,
    /// Max follows `pi`; payments bounded below.
    Dual,
}

/// A play `i_0, j_1, i_1, …` (1-based states) breaking a calibration bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathViolation {
    pub side: Side,
    pub path: Vec<usize>,
    #[serde(with = "rat_str")]
    pub payment: Rat,
}

/// Nondeterministic policies: `sigma[i]` ⊆ Max states reachable from Min
/// state `i`, `pi[j]` ⊆ Min states reachable from Max state `j` (0-based;
/// 1-based in JSON).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolicyRepr", into = "PolicyRepr")]
pub struct PolicyPair {
    pub sigma: Vec<BTreeSet<usize>>,
    pub pi: Vec<BTreeSet<usize>>,
}

#[derive(Serialize, Deserialize)]
struct PolicyRepr {
    sigma: Vec<Vec<usize>>,
    pi: Vec<Vec<usize>>,
}

impl TryFrom<PolicyRepr> for PolicyPair {
    type Error = Error;

    fn try_from(r: PolicyRepr) -> Result<Self> {
        let conv = |sets: Vec<Vec<usize>>| -> Result<Vec<BTreeSet<usize>>> {
            sets.into_iter()
                .map(|s| {
                    s.into_iter()
                        .map(|v| v.checked_sub(1).ok_or_else(|| Error::Parse("policy indices are 1-based".into())))
                        .collect()
                })
                .collect()
        };
        Ok(PolicyPair { sigma: conv(r.sigma)?, pi: conv(r.pi)? })
    }
}

impl From<PolicyPair> for PolicyRepr {
    fn from(p: PolicyPair) -> Self {
        let conv = |sets: Vec<BTreeSet<usize>>| sets.into_iter().map(|s| s.into_iter().map(|v| v + 1).collect()).collect();
        PolicyRepr { sigma: conv(p.sigma), pi: conv(p.pi) }
    }
}

impl PolicyPair {
    fn from_rows(n: usize, rows: &[RowChoice]) -> PolicyPair {
        let mut sigma = vec![BTreeSet::new(); n];
        for (j, ch) in rows.iter().enumerate() {
            for &i in &ch.sigma_inv {
                sigma[i].insert(j);
            }
        }
        PolicyPair { sigma, pi: rows.iter().map(|ch| ch.pi.iter().copied().collect()).collect() }
    }

    /// Every state has at least one selected move.
    pub fn is_proper(&self) -> bool {
        self.sigma.iter().chain(&self.pi).all(|s| !s.is_empty())
    }

    /// Every set of `self` is contained in the matching set of `other`.
    pub fn refines(&self, other: &PolicyPair) -> bool {
        self.sigma.iter().zip(&other.sigma).all(|(s, t)| s.is_subset(t))
            && self.pi.iter().zip(&other.pi).all(|(s, t)| s.is_subset(t))
    }

    /// Union of the selected arcs.
    pub fn merge(&self, other: &PolicyPair) -> PolicyPair {
        PolicyPair {
            sigma: self.sigma.iter().zip(&other.sigma).map(|(s, t)| s | t).collect(),
            pi: self.pi.iter().zip(&other.pi).map(|(s, t)| s | t).collect(),
        }
    }

    fn check_shape(&self, n: usize, m: usize) -> Result<()> {
        check_dim(n, self.sigma.len())?;
        check_dim(m, self.pi.len())?;
        let bad = self.sigma.iter().flatten().any(|&j| j >= m) || self.pi.iter().flatten().any(|&k| k >= n);
        if bad {
            return Err(Error::InvalidEntry("policy index out of range".into()));
        }
        Ok(())
    }

    fn check_arcs(&self, a: &TropMat, b: &TropMat) -> Result<()> {
        for (i, s) in self.sigma.iter().enumerate() {
            if let Some(j) = s.iter().find(|&&j| !a.get(j, i).is_finite()) {
                return Err(Error::InvalidEntry(format!("sigma selects {} -> {} with A infinite", i + 1, j + 1)));
            }
        }
        for (j, s) in self.pi.iter().enumerate() {
            if let Some(k) = s.iter().find(|&&k| !b.get(j, k).is_finite()) {
                return Err(Error::InvalidEntry(format!("pi selects {} -> {} with B infinite", j + 1, k + 1)));
            }
        }
        Ok(())
    }
}

/// Options for [`MeanPayoffGame::enumerate_cells`].
#[derive(Clone, Debug)]
pub struct CellOptions {
    pub cap: usize,
    pub max_cells: Option<usize>,
    pub eigen_iters: usize,
}

impl Default for CellOptions {
    fn default() -> Self {
        CellOptions { cap: DEFAULT_CELL_CAP, max_cells: None, eigen_iters: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub tau: PolicyPair,
    pub poly: AlcovedPoly,
    pub dimension: usize,
}

/// Cells of the fixed-point set of the (re-centered) game. `faces[c]` lists
/// the cells contained in cell `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    pub lambda: Option<Rat>,
    pub n: usize,
    pub cells: Vec<Cell>,
    pub faces: Vec<Vec<usize>>,
    pub complete: bool,
}

impl CellComplex {
    /// Cells not contained in any other cell.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&c| !self.faces.iter().any(|f| f.contains(&c))).collect()
    }

    /// `true` iff some cell contains `x`.
    pub fn covers(&self, x: &[Rat]) -> Result<bool> {
        for c in &self.cells {
            if c.poly.contains(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    const N: Ext = Ext::NegInf;

    fn e(v: i64) -> Ext {
        Ext::int(v)
    }

    fn fathi() -> MeanPayoffGame {
        let b = TropMat::from_rows(vec![
            vec![N, e(-1), e(0), N],
            vec![N, e(-1), N, e(-1)],
            vec![N, N, e(0), e(0)],
            vec![N, N, N, e(1)],
        ])
        .unwrap();
        MeanPayoffGame::new(TropMat::identity(4), b).unwrap()
    }

    fn pt(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn fathi_eigenpair() {
        let g = fathi();
        let u = pt(&[-2, -2, -1, 0]);
        assert!(g.check_eigen(&u, &int(1)).unwrap());
        assert!(!g.check_eigen(&pt(&[0, 0, 0, 0]), &int(1)).unwrap());
        assert_eq!(g.find_eigen(100).unwrap(), Some((u, int(1))));
    }

    #[test]
    fn fathi_policies() {
        let g = fathi();
        let u = pt(&[-2, -2, -1, 0]);
        let p = g.calibrated_policies(&u, &int(1)).unwrap();
        let sets = |v: &[&[usize]]| v.iter().map(|s| s.iter().copied().collect()).collect::<Vec<BTreeSet<usize>>>();
        assert_eq!(p.pi, sets(&[&[2], &[3], &[3], &[3]]));
        assert_eq!(p.sigma, sets(&[&[0], &[1], &[2], &[3]]));
        assert_eq!(g.verify_calibrated(&u, &int(1), &p, 3, 12).unwrap(), None);
        let mut wrong = p.clone();
        wrong.pi[0] = [1].into_iter().collect();
        let v = g.verify_calibrated(&u, &int(1), &wrong, 3, 12).unwrap().unwrap();
        assert_eq!(v.side, Side::Dual);
        assert_eq!(v.path, vec![1, 1, 2]);
        assert!(matches!(g.verify_calibrated(&u, &int(1), &p, 13, 12), Err(Error::HorizonTooLarge { .. })));
        assert_eq!(g.calibrated_policies(&pt(&[0, 0, 0, 0]), &int(1)), Err(Error::NotAnEigenvector));
    }

    #[test]
    fn disjoint_loops_have_no_eigenvector() {
        let b = TropMat::from_rows(vec![vec![e(0), N], vec![N, e(1)]]).unwrap();
        let g = MeanPayoffGame::new(TropMat::identity(2), b).unwrap();
        assert_eq!(g.find_eigen(50).unwrap(), None);
    }

    #[test]
    fn identity_game_has_one_cell() {
        let g = MeanPayoffGame::new(TropMat::identity(2), TropMat::identity(2)).unwrap();
        let cx = g.enumerate_cells(&CellOptions::default()).unwrap();
        assert_eq!(cx.cells.len(), 1);
        assert_eq!(cx.cells[0].dimension, 2);
        assert_eq!(cx.cells[0].poly.star(), &TropMat::identity(2));
    }

    #[test]
    fn policy_json_is_one_based() {
        let p = PolicyPair { sigma: vec![[0].into_iter().collect()], pi: vec![[0, 1].into_iter().collect()] };
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"sigma":[[1]],"pi":[[1,2]]}"#);
        assert_eq!(serde_json::from_str::<PolicyPair>(&js).unwrap(), p);
    }
}
