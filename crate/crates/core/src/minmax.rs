//! Finitely generated Shapley operators written as min-max expression trees.
//!
//! A coordinate is a [`Term`] built from variables, constant shifts, `max`
//! and `min`. `Affine` leaves (`r + Σ p_j x_j` with a probability row `p`)
//! extend the grammar to stochastic rows; they are accepted by evaluation,
//! composition, semiderivatives and recession functions, and rejected by
//! normal forms and proper pairs.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::sample;
use crate::scalar::{format_rat, Ext, Rat};
use crate::tropical::{leq, sub, top, TropMat};

/// Default cap on the number of rows of a normal form.
pub const DEFAULT_NORMAL_FORM_CAP: usize = 1_000_000;

/// One coordinate of a finitely generated Shapley operator. Variable
/// indices are 0-based in memory and 1-based in JSON and `Display`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TermRepr", into = "TermRepr")]
pub enum Term {
    Var(usize),
    Shift(Rat, Box<Term>),
    Max(Vec<Term>),
    Min(Vec<Term>),
    Affine { r: Rat, p: Vec<Rat> },
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn shift(c: Rat, t: Term) -> Term {
        if c.is_zero() {
            t
        } else {
            Term::Shift(c, Box::new(t))
        }
    }

    /// `max` of the arguments; a single argument is returned unchanged.
    pub fn max(mut args: Vec<Term>) -> Term {
        assert!(!args.is_empty(), "max of no terms");
        if args.len() == 1 {
            args.pop().unwrap()
        } else {
            Term::Max(args)
        }
    }

    pub fn min(mut args: Vec<Term>) -> Term {
        assert!(!args.is_empty(), "min of no terms");
        if args.len() == 1 {
            args.pop().unwrap()
        } else {
            Term::Min(args)
        }
    }

    /// `r + Σ p_j x_j`; `p` must be a probability vector.
    pub fn affine(r: Rat, p: Vec<Rat>) -> Result<Term> {
        if p.iter().any(Signed::is_negative) {
            return Err(Error::InvalidEntry("negative transition probability".into()));
        }
        if !p.iter().sum::<Rat>().is_one() {
            return Err(Error::InvalidEntry("transition probabilities do not sum to 1".into()));
        }
        Ok(Term::Affine { r, p })
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        match self {
            Term::Var(i) => x[*i].clone(),
            Term::Shift(c, t) => t.eval(x) + c,
            Term::Max(ts) => ts.iter().map(|t| t.eval(x)).max().expect("nonempty max"),
            Term::Min(ts) => ts.iter().map(|t| t.eval(x)).min().expect("nonempty min"),
            Term::Affine { r, p } => p.iter().zip(x).fold(r.clone(), |acc, (pj, xj)| acc + pj * xj),
        }
    }

    pub fn is_deterministic(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Shift(_, t) => t.is_deterministic(),
            Term::Max(ts) | Term::Min(ts) => ts.iter().all(Term::is_deterministic),
            Term::Affine { .. } => false,
        }
    }

    /// Free of additive constants (and of affine offsets).
    pub fn is_constant_free(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Shift(..) => false,
            Term::Max(ts) | Term::Min(ts) => ts.iter().all(Term::is_constant_free),
            Term::Affine { r, .. } => r.is_zero(),
        }
    }

    fn check_arity(&self, n: usize) -> Result<()> {
        match self {
            Term::Var(i) if *i < n => Ok(()),
            Term::Var(i) => Err(Error::DimensionMismatch { expected: n, found: i + 1 }),
            Term::Shift(_, t) => t.check_arity(n),
            Term::Max(ts) | Term::Min(ts) => {
                if ts.is_empty() {
                    return Err(Error::InvalidEntry("empty max/min node".into()));
                }
                ts.iter().try_for_each(|t| t.check_arity(n))
            }
            Term::Affine { p, .. } => check_dim(n, p.len()),
        }
    }

    /// Replaces every `Var(i)` by `subst[i]`, a term over `n` variables.
    /// An affine leaf can only absorb coordinates that are affine themselves.
    pub fn substitute(&self, subst: &[Term], n: usize) -> Result<Term> {
        Ok(match self {
            Term::Var(i) => subst[*i].clone(),
            Term::Shift(c, t) => Term::Shift(c.clone(), Box::new(t.substitute(subst, n)?)),
            Term::Max(ts) => Term::Max(ts.iter().map(|t| t.substitute(subst, n)).collect::<Result<_>>()?),
            Term::Min(ts) => Term::Min(ts.iter().map(|t| t.substitute(subst, n)).collect::<Result<_>>()?),
            Term::Affine { r, p } => {
                let mut r = r.clone();
                let mut q = vec![Rat::zero(); n];
                for (pj, tj) in p.iter().zip(subst) {
                    if pj.is_zero() {
                        continue;
                    }
                    let (rj, qj) = affine_parts(tj, n).ok_or_else(|| {
                        Error::InvalidEntry("affine leaf composed with a non-affine coordinate".into())
                    })?;
                    r += pj * rj;
                    for (qk, v) in q.iter_mut().zip(qj) {
                        *qk += pj * v;
                    }
                }
                Term::Affine { r, p: q }
            }
        })
    }

    /// Value at `u` together with the semiderivative at `u`.
    fn value_and_derivative(&self, u: &[Rat]) -> (Rat, Term) {
        match self {
            Term::Var(i) => (u[*i].clone(), Term::Var(*i)),
            Term::Shift(c, t) => {
                let (v, d) = t.value_and_derivative(u);
                (v + c, d)
            }
            Term::Max(ts) | Term::Min(ts) => {
                let is_max = matches!(self, Term::Max(_));
                let parts: Vec<(Rat, Term)> = ts.iter().map(|t| t.value_and_derivative(u)).collect();
                let best = if is_max {
                    parts.iter().map(|(v, _)| v).max()
                } else {
                    parts.iter().map(|(v, _)| v).min()
                }
                .cloned()
                .expect("nonempty node");
                let active: Vec<Term> =
                    parts.into_iter().filter(|(v, _)| *v == best).map(|(_, d)| d).collect();
                let d = if is_max { Term::max(active) } else { Term::min(active) };
                (best, d)
            }
            Term::Affine { r, p } => (
                p.iter().zip(u).fold(r.clone(), |acc, (pj, uj)| acc + pj * uj),
                Term::Affine { r: Rat::zero(), p: p.clone() },
            ),
        }
    }

    /// Drops every additive constant.
    pub fn recession(&self) -> Term {
        match self {
            Term::Var(i) => Term::Var(*i),
            Term::Shift(_, t) => t.recession(),
            Term::Max(ts) => Term::Max(ts.iter().map(Term::recession).collect()),
            Term::Min(ts) => Term::Min(ts.iter().map(Term::recession).collect()),
            Term::Affine { p, .. } => Term::Affine { r: Rat::zero(), p: p.clone() },
        }
    }

    /// `x ↦ -f(-x)`.
    pub fn flip(&self) -> Term {
        match self {
            Term::Var(i) => Term::Var(*i),
            Term::Shift(c, t) => Term::Shift(-c, Box::new(t.flip())),
            Term::Max(ts) => Term::Min(ts.iter().map(Term::flip).collect()),
            Term::Min(ts) => Term::Max(ts.iter().map(Term::flip).collect()),
            Term::Affine { r, p } => Term::Affine { r: -r, p: p.clone() },
        }
    }

    /// Conjunctive normal form rows `c_k` with `f(x) = min_k max_i (c_ki + x_i)`.
    fn cnf_rows(&self, n: usize, cap: usize) -> Result<Vec<Vec<Ext>>> {
        Ok(match self {
            Term::Var(i) => vec![unit_row(n, *i, Ext::NegInf)],
            Term::Shift(c, t) => shift_rows(t.cnf_rows(n, cap)?, c),
            Term::Min(ts) => {
                let mut rows = Vec::new();
                for t in ts {
                    rows.extend(t.cnf_rows(n, cap)?);
                    check_cap(rows.len(), cap)?;
                }
                prune_rows(rows, Polarity::Cnf)
            }
            Term::Max(ts) => {
                let mut acc: Option<Vec<Vec<Ext>>> = None;
                for t in ts {
                    let rows = t.cnf_rows(n, cap)?;
                    acc = Some(match acc {
                        None => rows,
                        Some(prev) => distribute(&prev, &rows, Polarity::Cnf, cap)?,
                    });
                }
                acc.expect("nonempty max")
            }
            Term::Affine { .. } => return Err(Error::NotDeterministic),
        })
    }

    /// Disjunctive normal form rows `c'_k` with `f(x) = max_k min_i (c'_ki + x_i)`.
    fn dnf_rows(&self, n: usize, cap: usize) -> Result<Vec<Vec<Ext>>> {
        Ok(match self {
            Term::Var(i) => vec![unit_row(n, *i, Ext::PosInf)],
            Term::Shift(c, t) => shift_rows(t.dnf_rows(n, cap)?, c),
            Term::Max(ts) => {
                let mut rows = Vec::new();
                for t in ts {
                    rows.extend(t.dnf_rows(n, cap)?);
                    check_cap(rows.len(), cap)?;
                }
                prune_rows(rows, Polarity::Dnf)
            }
            Term::Min(ts) => {
                let mut acc: Option<Vec<Vec<Ext>>> = None;
                for t in ts {
                    let rows = t.dnf_rows(n, cap)?;
                    acc = Some(match acc {
                        None => rows,
                        Some(prev) => distribute(&prev, &rows, Polarity::Dnf, cap)?,
                    });
                }
                acc.expect("nonempty min")
            }
            Term::Affine { .. } => return Err(Error::NotDeterministic),
        })
    }
}

fn affine_parts(t: &Term, n: usize) -> Option<(Rat, Vec<Rat>)> {
    match t {
        Term::Var(i) => {
            let mut p = vec![Rat::zero(); n];
            p[*i] = Rat::one();
            Some((Rat::zero(), p))
        }
        Term::Shift(c, inner) => affine_parts(inner, n).map(|(r, p)| (r + c, p)),
        Term::Affine { r, p } => Some((r.clone(), p.clone())),
        Term::Max(ts) | Term::Min(ts) if ts.len() == 1 => affine_parts(&ts[0], n),
        _ => None,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Polarity {
    Cnf,
    Dnf,
}

fn unit_row(n: usize, i: usize, absent: Ext) -> Vec<Ext> {
    let mut row = vec![absent; n];
    row[i] = Ext::zero();
    row
}

fn shift_rows(rows: Vec<Vec<Ext>>, c: &Rat) -> Vec<Vec<Ext>> {
    rows.into_iter().map(|r| r.iter().map(|e| e.add_rat(c)).collect()).collect()
}

fn check_cap(len: usize, cap: usize) -> Result<()> {
    if len > cap {
        Err(Error::SizeBlowup { cap })
    } else {
        Ok(())
    }
}

fn distribute(a: &[Vec<Ext>], b: &[Vec<Ext>], pol: Polarity, cap: usize) -> Result<Vec<Vec<Ext>>> {
    check_cap(a.len().saturating_mul(b.len()), cap)?;
    let mut rows = Vec::with_capacity(a.len() * b.len());
    for ra in a {
        for rb in b {
            rows.push(
                ra.iter()
                    .zip(rb)
                    .map(|(x, y)| match pol {
                        Polarity::Cnf => x.max(y).clone(),
                        Polarity::Dnf => x.min(y).clone(),
                    })
                    .collect(),
            );
        }
    }
    Ok(prune_rows(rows, pol))
}

/// Removes duplicate and absorbed rows. In a CNF a row that dominates
/// another entrywise never attains the minimum; dually for a DNF.
fn prune_rows(mut rows: Vec<Vec<Ext>>, pol: Polarity) -> Vec<Vec<Ext>> {
    rows.sort();
    rows.dedup();
    let dominated = |r: &Vec<Ext>, s: &Vec<Ext>| match pol {
        Polarity::Cnf => r.iter().zip(s).all(|(x, y)| x >= y),
        Polarity::Dnf => r.iter().zip(s).all(|(x, y)| x <= y),
    };
    let keep: Vec<bool> = rows
        .iter()
        .enumerate()
        .map(|(k, r)| !rows.iter().enumerate().any(|(l, s)| l != k && dominated(r, s)))
        .collect();
    rows.into_iter().zip(keep).filter(|(_, k)| *k).map(|(r, _)| r).collect()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, ts: &[Term]| {
            write!(f, "{name}(")?;
            for (k, t) in ts.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str(")")
        };
        match self {
            Term::Var(i) => write!(f, "x{}", i + 1),
            Term::Shift(c, t) => {
                if c.is_negative() {
                    write!(f, "({t} - {})", format_rat(&-c))
                } else {
                    write!(f, "({t} + {})", format_rat(c))
                }
            }
            Term::Max(ts) => list(f, "max", ts),
            Term::Min(ts) => list(f, "min", ts),
            Term::Affine { r, p } => {
                write!(f, "({}", format_rat(r))?;
                for (j, pj) in p.iter().enumerate() {
                    if !pj.is_zero() {
                        write!(f, " + {}*x{}", format_rat(pj), j + 1)?;
                    }
                }
                f.write_str(")")
            }
        }
    }
}

/// JSON shape of a term: `{"op":"var","i":1}`, `{"op":"shift","c":"-1/2","arg":…}`,
/// `{"op":"max","args":[…]}`, `{"op":"min","args":[…]}`,
/// `{"op":"affine","r":"-1/2","p":["1/2","1/2","0"]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
enum TermRepr {
    Var { i: usize },
    Shift { c: Ext, arg: Box<TermRepr> },
    Max { args: Vec<TermRepr> },
    Min { args: Vec<TermRepr> },
    Affine { r: Ext, p: Vec<Ext> },
}

fn finite(e: Ext) -> Result<Rat> {
    match e {
        Ext::Fin(q) => Ok(q),
        other => Err(Error::Parse(format!("expected a finite scalar, found {other}"))),
    }
}

impl TryFrom<TermRepr> for Term {
    type Error = Error;

    fn try_from(r: TermRepr) -> Result<Term> {
        Ok(match r {
            TermRepr::Var { i } if i >= 1 => Term::Var(i - 1),
            TermRepr::Var { .. } => return Err(Error::Parse("variable indices are 1-based".into())),
            TermRepr::Shift { c, arg } => Term::Shift(finite(c)?, Box::new(Term::try_from(*arg)?)),
            TermRepr::Max { args } => {
                Term::Max(args.into_iter().map(Term::try_from).collect::<Result<_>>()?)
            }
            TermRepr::Min { args } => {
                Term::Min(args.into_iter().map(Term::try_from).collect::<Result<_>>()?)
            }
            TermRepr::Affine { r, p } => {
                Term::affine(finite(r)?, p.into_iter().map(finite).collect::<Result<_>>()?)?
            }
        })
    }
}

impl From<Term> for TermRepr {
    fn from(t: Term) -> TermRepr {
        match t {
            Term::Var(i) => TermRepr::Var { i: i + 1 },
            Term::Shift(c, t) => TermRepr::Shift { c: Ext::Fin(c), arg: Box::new((*t).into()) },
            Term::Max(ts) => TermRepr::Max { args: ts.into_iter().map(Into::into).collect() },
            Term::Min(ts) => TermRepr::Min { args: ts.into_iter().map(Into::into).collect() },
            Term::Affine { r, p } => {
                TermRepr::Affine { r: Ext::Fin(r), p: p.into_iter().map(Ext::Fin).collect() }
            }
        }
    }
}

/// A Shapley operator `R^n_in → R^n_out` given coordinatewise by terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "OpRepr", into = "OpRepr")]
pub struct ShapleyOp {
    n_in: usize,
    coords: Vec<Term>,
}

#[derive(Serialize, Deserialize)]
struct OpRepr {
    n_in: usize,
    coords: Vec<Term>,
}

impl TryFrom<OpRepr> for ShapleyOp {
    type Error = Error;

    fn try_from(r: OpRepr) -> Result<Self> {
        ShapleyOp::new(r.n_in, r.coords)
    }
}

impl From<ShapleyOp> for OpRepr {
    fn from(op: ShapleyOp) -> Self {
        OpRepr { n_in: op.n_in, coords: op.coords }
    }
}

impl ShapleyOp {
    pub fn new(n_in: usize, coords: Vec<Term>) -> Result<Self> {
        for t in &coords {
            t.check_arity(n_in)?;
        }
        Ok(ShapleyOp { n_in, coords })
    }

    pub fn identity(n: usize) -> Self {
        ShapleyOp { n_in: n, coords: (0..n).map(Term::Var).collect() }
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.coords.len()
    }

    pub fn is_square(&self) -> bool {
        self.n_in == self.coords.len()
    }

    pub fn coords(&self) -> &[Term] {
        &self.coords
    }

    pub fn is_deterministic(&self) -> bool {
        self.coords.iter().all(Term::is_deterministic)
    }

    pub fn eval(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        check_dim(self.n_in, x.len())?;
        Ok(self.coords.iter().map(|t| t.eval(x)).collect())
    }

    /// `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &ShapleyOp) -> Result<ShapleyOp> {
        check_dim(self.n_in, inner.n_out())?;
        Ok(ShapleyOp {
            n_in: inner.n_in,
            coords: self
                .coords
                .iter()
                .map(|t| t.substitute(&inner.coords, inner.n_in))
                .collect::<Result<_>>()?,
        })
    }

    /// Pointwise maximum.
    pub fn join(&self, other: &ShapleyOp) -> Result<ShapleyOp> {
        self.pointwise(other, |a, b| Term::Max(vec![a, b]))
    }

    /// Pointwise minimum.
    pub fn meet(&self, other: &ShapleyOp) -> Result<ShapleyOp> {
        self.pointwise(other, |a, b| Term::Min(vec![a, b]))
    }

    fn pointwise(&self, other: &ShapleyOp, f: impl Fn(Term, Term) -> Term) -> Result<ShapleyOp> {
        check_dim(self.n_in, other.n_in)?;
        check_dim(self.n_out(), other.n_out())?;
        Ok(ShapleyOp {
            n_in: self.n_in,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a.clone(), b.clone())).collect(),
        })
    }

    /// Semiderivative at `u`: a positively homogeneous operator `T'_u` with
    /// `T(u + h) = T(u) + T'_u(h)` for all small enough `h`.
    pub fn semiderivative(&self, u: &[Rat]) -> Result<ShapleyOp> {
        check_dim(self.n_in, u.len())?;
        Ok(ShapleyOp {
            n_in: self.n_in,
            coords: self.coords.iter().map(|t| t.value_and_derivative(u).1).collect(),
        })
    }

    /// Recession function `lim s^{-1} T(s x)`: every additive constant dropped.
    pub fn recession(&self) -> ShapleyOp {
        ShapleyOp { n_in: self.n_in, coords: self.coords.iter().map(Term::recession).collect() }
    }

    /// `x ↦ -T(-x)`.
    pub fn flip(&self) -> ShapleyOp {
        ShapleyOp { n_in: self.n_in, coords: self.coords.iter().map(Term::flip).collect() }
    }

    pub fn is_constant_free(&self) -> bool {
        self.coords.iter().all(Term::is_constant_free)
    }

    /// Conjunctive normal form of every coordinate.
    pub fn cnf(&self, cap: usize) -> Result<Vec<NormalForm>> {
        self.coords
            .iter()
            .map(|t| Ok(NormalForm { kind: NormalKind::Cnf, n: self.n_in, rows: t.cnf_rows(self.n_in, cap)? }))
            .collect()
    }

    /// Disjunctive normal form of every coordinate.
    pub fn dnf(&self, cap: usize) -> Result<Vec<NormalForm>> {
        self.coords
            .iter()
            .map(|t| Ok(NormalForm { kind: NormalKind::Dnf, n: self.n_in, rows: t.dnf_rows(self.n_in, cap)? }))
            .collect()
    }

    /// Representation `T = A♯ ∘ B` with `A` entries in `{0, -inf}`; the rows
    /// of `B` are the clauses of the conjunctive normal forms.
    pub fn to_proper_pair(&self) -> Result<ProperPair> {
        self.to_proper_pair_capped(DEFAULT_NORMAL_FORM_CAP)
    }

    pub fn to_proper_pair_capped(&self, cap: usize) -> Result<ProperPair> {
        if !self.is_deterministic() {
            return Err(Error::NotDeterministic);
        }
        let forms = self.cnf(cap)?;
        let mut a_rows = Vec::new();
        let mut b_rows = Vec::new();
        for (i, nf) in forms.into_iter().enumerate() {
            for row in nf.rows {
                a_rows.push(unit_row(self.n_out(), i, Ext::NegInf));
                b_rows.push(row);
            }
        }
        ProperPair::new(TropMat::from_rows(a_rows)?, TropMat::from_rows(b_rows)?)
    }
}

impl fmt::Display for ShapleyOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "T{}(x) = {t}", i + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalKind {
    Cnf,
    Dnf,
}

/// Two-level normal form of one coordinate. For `Cnf` the value is
/// `min_k max_i (rows[k][i] + x_i)` with absent entries `-inf`; for `Dnf` it
/// is `max_k min_i (rows[k][i] + x_i)` with absent entries `+inf`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub kind: NormalKind,
    pub n: usize,
    pub rows: Vec<Vec<Ext>>,
}

impl NormalForm {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        let clause = |row: &Vec<Ext>| {
            let vals = row.iter().zip(x).filter_map(|(c, xi)| c.finite().map(|c| c + xi));
            match self.kind {
                NormalKind::Cnf => vals.max(),
                NormalKind::Dnf => vals.min(),
            }
            .expect("every clause has a finite coefficient")
        };
        let vals = self.rows.iter().map(clause);
        match self.kind {
            NormalKind::Cnf => vals.min(),
            NormalKind::Dnf => vals.max(),
        }
        .expect("nonempty normal form")
    }

    pub fn to_term(&self) -> Term {
        let clause = |row: &Vec<Ext>| {
            let lits: Vec<Term> = row
                .iter()
                .enumerate()
                .filter_map(|(i, c)| c.finite().map(|c| Term::shift(c.clone(), Term::Var(i))))
                .collect();
            match self.kind {
                NormalKind::Cnf => Term::max(lits),
                NormalKind::Dnf => Term::min(lits),
            }
        };
        let clauses: Vec<Term> = self.rows.iter().map(clause).collect();
        match self.kind {
            NormalKind::Cnf => Term::min(clauses),
            NormalKind::Dnf => Term::max(clauses),
        }
    }
}

/// Matrices `A` (m×p) and `B` (m×n) with `A` free of identically `-inf`
/// columns and `B` free of identically `-inf` rows; they encode
/// `T_i(x) = min_j (-A_ji + max_k (B_jk + x_k))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProperPair {
    a: TropMat,
    b: TropMat,
}

impl ProperPair {
    pub fn new(a: TropMat, b: TropMat) -> Result<Self> {
        check_dim(a.rows(), b.rows())?;
        if a.has_pos_inf() || b.has_pos_inf() {
            return Err(Error::ImproperMatrix("+inf entry".into()));
        }
        for i in 0..a.cols() {
            if (0..a.rows()).all(|j| !a.get(j, i).is_finite()) {
                return Err(Error::ImproperMatrix(format!("column {} of A is identically -inf", i + 1)));
            }
        }
        for j in 0..b.rows() {
            if b.row(j).iter().all(|e| !e.is_finite()) {
                return Err(Error::ImproperMatrix(format!("row {} of B is identically -inf", j + 1)));
            }
        }
        Ok(ProperPair { a, b })
    }

    pub fn a(&self) -> &TropMat {
        &self.a
    }

    pub fn b(&self) -> &TropMat {
        &self.b
    }

    /// Number of Max states (rows).
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n_in(&self) -> usize {
        self.b.cols()
    }

    pub fn n_out(&self) -> usize {
        self.a.cols()
    }

    /// `(Bx)_j`, finite because `B` has no `-inf` row.
    pub fn apply_b(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.b.apply_finite(x)
    }

    pub fn eval(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.a.adjoint_apply(&self.apply_b(x)?)
    }

    pub fn to_operator(&self) -> ShapleyOp {
        let coords = (0..self.n_out())
            .map(|i| {
                let rows: Vec<Term> = (0..self.m())
                    .filter_map(|j| {
                        let a = self.a.get(j, i).finite()?;
                        let lits: Vec<Term> = self
                            .b
                            .row(j)
                            .iter()
                            .enumerate()
                            .filter_map(|(k, c)| c.finite().map(|c| Term::shift(c.clone(), Term::Var(k))))
                            .collect();
                        Some(Term::shift(-a, Term::max(lits)))
                    })
                    .collect();
                Term::min(rows)
            })
            .collect();
        ShapleyOp { n_in: self.n_in(), coords }
    }
}

/// Which Shapley axiom a sample violated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Monotone,
    AdditiveHomogeneity,
    TopNonexpansive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    #[serde(with = "crate::scalar::rat_vec_str")]
    pub x: Vec<Rat>,
    #[serde(with = "crate::scalar::rat_vec_str")]
    pub y: Vec<Rat>,
    #[serde(with = "crate::scalar::rat_str")]
    pub lambda: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub trials: usize,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Randomized check of monotonicity, additive homogeneity and
/// `t(T(x) - T(y)) ≤ t(x - y)` for an arbitrary map `R^n → R^p`.
pub fn check_shapley_axioms<F, R>(n: usize, map: F, trials: usize, rng: &mut R) -> AxiomReport
where
    F: Fn(&[Rat]) -> Vec<Rat>,
    R: Rng + ?Sized,
{
    for _ in 0..trials {
        let x = sample::point(rng, n, 5, 4);
        let bump = sample::nonneg_point(rng, n, 3, 4);
        let y: Vec<Rat> = x.iter().zip(&bump).map(|(a, b)| a + b).collect();
        let lambda = sample::rat(rng, 5, 4);
        let fail = |axiom| AxiomReport {
            trials,
            violation: Some(AxiomViolation { axiom, x: x.clone(), y: y.clone(), lambda: lambda.clone() }),
        };
        let tx = map(&x);
        let ty = map(&y);
        if !leq(&tx, &ty) {
            return fail(Axiom::Monotone);
        }
        let shifted: Vec<Rat> = x.iter().map(|a| a + &lambda).collect();
        let ts = map(&shifted);
        if ts.iter().zip(&tx).any(|(a, b)| a != &(b + &lambda)) {
            return fail(Axiom::AdditiveHomogeneity);
        }
        // An unordered pair for the top-nonexpansiveness test.
        let z = sample::point(rng, n, 5, 4);
        let tz = map(&z);
        if top(&sub(&tx, &tz)) > top(&sub(&x, &z)) {
            return AxiomReport {
                trials,
                violation: Some(AxiomViolation { axiom: Axiom::TopNonexpansive, x, y: z, lambda }),
            };
        }
    }
    AxiomReport { trials, violation: None }
}
