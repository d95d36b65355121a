//! Max-plus and min-plus vectors and matrices.
//!
//! Finite points of `R^n` are plain `Vec<Rat>` / `&[Rat]`; vectors that may
//! carry infinite entries (generators, matrix columns) are [`TropVec`].

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::scalar::{Ext, Rat};

/// Vector over `Q ∪ {-inf, +inf}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TropVec(pub Vec<Ext>);

impl std::fmt::Display for TropVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl TropVec {
    pub fn new(entries: Vec<Ext>) -> Self {
        TropVec(entries)
    }

    pub fn from_point(x: &[Rat]) -> Self {
        TropVec(x.iter().cloned().map(Ext::Fin).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Ext] {
        &self.0
    }

    /// The finite point, if every entry is finite.
    pub fn to_point(&self) -> Option<Vec<Rat>> {
        self.0.iter().map(|e| e.finite().cloned()).collect()
    }

    /// Indices of the finite entries.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, e)| e.is_finite()).map(|(i, _)| i).collect()
    }

    pub fn top(&self) -> Ext {
        self.0.iter().max().cloned().unwrap_or(Ext::NegInf)
    }

    pub fn bottom(&self) -> Ext {
        self.0.iter().min().cloned().unwrap_or(Ext::PosInf)
    }
}

/// Row-major `rows × cols` matrix over `Q ∪ {-inf, +inf}`. JSON shape:
/// `{"rows": m, "cols": n, "data": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MatRepr", into = "MatRepr")]
pub struct TropMat {
    rows: usize,
    cols: usize,
    data: Vec<Ext>,
}

#[derive(Serialize, Deserialize)]
struct MatRepr {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Ext>>,
}

impl TryFrom<MatRepr> for TropMat {
    type Error = Error;

    fn try_from(r: MatRepr) -> Result<Self> {
        check_dim(r.rows, r.data.len())?;
        for row in &r.data {
            check_dim(r.cols, row.len())?;
        }
        TropMat::new(r.rows, r.cols, r.data.into_iter().flatten().collect())
    }
}

impl From<TropMat> for MatRepr {
    fn from(m: TropMat) -> Self {
        MatRepr { rows: m.rows, cols: m.cols, data: m.to_rows() }
    }
}

impl TropMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Ext>) -> Result<Self> {
        check_dim(rows * cols, data.len())?;
        Ok(TropMat { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Ext) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        TropMat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Ext>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            check_dim(cols, r.len())?;
        }
        let nrows = rows.len();
        Ok(TropMat { rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Tropical identity: zeros on the diagonal, `-inf` elsewhere.
    pub fn identity(n: usize) -> Self {
        TropMat::from_fn(n, n, |i, j| if i == j { Ext::zero() } else { Ext::NegInf })
    }

    pub fn filled(rows: usize, cols: usize, value: Ext) -> Self {
        TropMat { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Ext {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Ext] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> TropVec {
        TropVec((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<Ext>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> TropMat {
        TropMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise maximum (tropical sum).
    pub fn join(&self, other: &TropMat) -> Result<TropMat> {
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)?;
        Ok(TropMat::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).max(other.get(i, j)).clone()
        }))
    }

    pub fn has_pos_inf(&self) -> bool {
        self.data.iter().any(|e| *e == Ext::PosInf)
    }

    /// Max-plus product: entry `(i, j)` is `max_k A_ik + B_kj`.
    pub fn matmul(&self, other: &TropMat) -> Result<TropMat> {
        check_dim(self.cols, other.rows)?;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Ext::NegInf;
                for k in 0..self.cols {
                    let s = self.get(i, k).try_add(other.get(k, j))?;
                    if s > acc {
                        acc = s;
                    }
                }
                data.push(acc);
            }
        }
        Ok(TropMat { rows: self.rows, cols: other.cols, data })
    }

    /// `Mx` for a finite `x`; entries may be `-inf` (empty row) or `+inf`.
    pub fn apply(&self, x: &[Rat]) -> Result<Vec<Ext>> {
        check_dim(self.cols, x.len())?;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(m, xj)| m.add_rat(xj))
                    .max()
                    .unwrap_or(Ext::NegInf)
            })
            .collect())
    }

    /// `Mx` when the result is known to be finite (e.g. `M ≥ I`).
    pub fn apply_finite(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.apply(x)?
            .into_iter()
            .map(|e| match e {
                Ext::Fin(q) => Ok(q),
                other => Err(Error::InvalidEntry(format!("non-finite product entry {other}"))),
            })
            .collect()
    }

    /// Kleene star `I ∨ M ∨ … ∨ M^{n-1}`.
    ///
    /// Squares `I ∨ M` until the exponent reaches `n`, checking the diagonal
    /// after each squaring; a positive diagonal entry yields a positive
    /// circuit, reported with an explicit witness.
    pub fn kleene_star(&self) -> Result<TropMat> {
        check_dim(self.rows, self.cols)?;
        if self.has_pos_inf() {
            return Err(Error::InvalidEntry("+inf entry in a max-plus matrix".into()));
        }
        let n = self.rows;
        let mut p = self.join(&TropMat::identity(n))?;
        let mut power = 1usize;
        loop {
            if (0..n).any(|i| *p.get(i, i) > Ext::zero()) {
                return Err(self.positive_circuit_error());
            }
            if power >= n {
                break;
            }
            p = p.matmul(&p)?;
            power *= 2;
        }
        Ok(p)
    }

    fn positive_circuit_error(&self) -> Error {
        match find_positive_circuit(self) {
            Some((circuit, weight)) => Error::PositiveCircuit { circuit, weight },
            None => unreachable!("diagonal test and circuit search disagree"),
        }
    }

    /// Residuation `(A♯y)_k = min_i (-A_ik + y_i)`.
    pub fn adjoint_apply(&self, y: &[Rat]) -> Result<Vec<Rat>> {
        check_dim(self.rows, y.len())?;
        if self.has_pos_inf() {
            return Err(Error::ImproperMatrix("+inf entry".into()));
        }
        (0..self.cols)
            .map(|k| {
                (0..self.rows)
                    .filter_map(|i| self.get(i, k).finite().map(|a| &y[i] - a))
                    .min()
                    .ok_or_else(|| Error::ImproperMatrix(format!("column {} is identically -inf", k + 1)))
            })
            .collect()
    }
}

/// Bellman–Ford style search for a circuit of positive weight in the digraph
/// of `m` (arc `i → j` of weight `m_ij` when finite). Returns the node
/// sequence of the circuit and its weight.
pub fn find_positive_circuit(m: &TropMat) -> Option<(Vec<usize>, Rat)> {
    let n = m.rows();
    let mut dist: Vec<Rat> = vec![Rat::zero(); n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last = None;
    for _ in 0..=n {
        last = None;
        for i in 0..n {
            for j in 0..n {
                if let Some(w) = m.get(i, j).finite() {
                    let cand = &dist[i] + w;
                    if cand > dist[j] {
                        dist[j] = cand;
                        pred[j] = Some(i);
                        last = Some(j);
                    }
                }
            }
        }
        if last.is_none() {
            return None;
        }
    }
    let mut v = last?;
    for _ in 0..n {
        v = pred[v]?;
    }
    // v lies on a cycle of the predecessor graph; walk it backwards.
    let mut cycle = vec![v];
    let mut u = pred[v]?;
    while u != v {
        cycle.push(u);
        u = pred[u]?;
    }
    cycle.reverse();
    let weight = circuit_weight(m, &cycle)?;
    if weight > Rat::zero() {
        Some((cycle, weight))
    } else {
        None
    }
}

/// Weight of the closed walk `c[0] → c[1] → … → c[0]`, if all arcs exist.
pub fn circuit_weight(m: &TropMat, circuit: &[usize]) -> Option<Rat> {
    let mut total = Rat::zero();
    for (k, &i) in circuit.iter().enumerate() {
        let j = circuit[(k + 1) % circuit.len()];
        total += m.get(i, j).finite()?;
    }
    Some(total)
}

/// Largest entry of a finite vector.
pub fn top(x: &[Rat]) -> Rat {
    x.iter().max().cloned().expect("top of an empty vector")
}

/// Smallest entry of a finite vector.
pub fn bottom(x: &[Rat]) -> Rat {
    x.iter().min().cloned().expect("bottom of an empty vector")
}

/// Hilbert seminorm `top(x) - bottom(x)`.
pub fn hilbert_seminorm(x: &[Rat]) -> Rat {
    top(x) - bottom(x)
}

/// Hilbert projective distance between two finite points.
pub fn hilbert_dist(x: &[Rat], y: &[Rat]) -> Rat {
    hilbert_seminorm(&sub(x, y))
}

/// Sup-norm distance.
pub fn sup_dist(x: &[Rat], y: &[Rat]) -> Rat {
    x.iter().zip(y).map(|(a, b)| num_traits::Signed::abs(&(a - b))).max().unwrap_or_else(Rat::zero)
}

pub fn sub(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn shift(x: &[Rat], c: &Rat) -> Vec<Rat> {
    x.iter().map(|a| a + c).collect()
}

pub fn join(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    x.iter().zip(y).map(|(a, b)| a.max(b).clone()).collect()
}

pub fn meet(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    x.iter().zip(y).map(|(a, b)| a.min(b).clone()).collect()
}

/// Coordinatewise `x ≤ y`.
pub fn leq(x: &[Rat], y: &[Rat]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b)
}

/// `x - bottom(x)`: the representative of `x` modulo constants with minimum 0.
pub fn normalize_bottom(x: &[Rat]) -> Vec<Rat> {
    let b = bottom(x);
    x.iter().map(|a| a - &b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn m(rows: &[&[Ext]]) -> TropMat {
        TropMat::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    const N: Ext = Ext::NegInf;

    #[test]
    fn identity_is_neutral() {
        let b = m(&[&[Ext::int(3), N], &[Ext::Fin(ratio(1, 2)), Ext::int(-2)]]);
        assert_eq!(TropMat::identity(2).matmul(&b).unwrap(), b);
        assert_eq!(b.matmul(&TropMat::identity(2)).unwrap(), b);
    }

    #[test]
    fn small_product() {
        let a = m(&[&[Ext::int(-1), Ext::int(0)]]);
        let b = m(&[&[Ext::int(0)], &[Ext::int(-1)]]);
        assert_eq!(a.matmul(&b).unwrap(), m(&[&[Ext::int(-1)]]));
    }

    #[test]
    fn product_rejects_mixed_infinities() {
        let a = m(&[&[N]]);
        let b = m(&[&[Ext::PosInf]]);
        assert_eq!(a.matmul(&b), Err(Error::UndefinedSum));
        assert!(matches!(a.matmul(&TropMat::identity(2)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn star_of_two_cycle() {
        let s = m(&[&[N, Ext::int(-1)], &[Ext::int(-1), N]]).kleene_star().unwrap();
        assert_eq!(s, m(&[&[Ext::int(0), Ext::int(-1)], &[Ext::int(-1), Ext::int(0)]]));
    }

    #[test]
    fn star_reports_positive_loop() {
        match m(&[&[Ext::int(1)]]).kleene_star() {
            Err(Error::PositiveCircuit { circuit, weight }) => {
                assert_eq!(circuit, vec![0]);
                assert_eq!(weight, int(1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn star_witness_for_longer_circuit() {
        let a = m(&[
            &[N, Ext::int(2), N],
            &[N, N, Ext::int(-1)],
            &[Ext::int(0), N, N],
        ]);
        match a.kleene_star() {
            Err(Error::PositiveCircuit { circuit, weight }) => {
                assert_eq!(circuit.len(), 3);
                assert_eq!(weight, int(1));
                assert_eq!(circuit_weight(&a, &circuit), Some(weight));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn adjoint_examples() {
        let y = vec![int(3), ratio(-1, 2)];
        assert_eq!(TropMat::identity(2).adjoint_apply(&y).unwrap(), y);
        let a = m(&[&[Ext::int(0), Ext::int(0)]]);
        assert_eq!(a.adjoint_apply(&[int(3)]).unwrap(), vec![int(3), int(3)]);
        let bad = m(&[&[Ext::int(0), N]]);
        assert!(matches!(bad.adjoint_apply(&[int(0)]), Err(Error::ImproperMatrix(_))));
    }

    #[test]
    fn norms() {
        let x = vec![int(-2), int(-2), int(-1), int(0)];
        assert_eq!(top(&x), int(0));
        assert_eq!(bottom(&x), int(-2));
        assert_eq!(hilbert_seminorm(&x), int(2));
        assert_eq!(hilbert_seminorm(&[int(1), int(0), int(0)]), int(1));
        assert_eq!(hilbert_seminorm(&[int(0), int(0), int(0)]), int(0));
    }
}
