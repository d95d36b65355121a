//! Alcoved polyhedra `{x : x_i ≥ M_ij + x_j}` carried with their Kleene star.

use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::scalar::{Ext, Rat};
use crate::tropical::{TropMat, TropVec};

/// A nonempty alcoved polyhedron. `star` is the Kleene star of the defining
/// matrix, so `x` belongs to the polyhedron iff `star · x = x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlcovedPoly {
    matrix: TropMat,
    star: TropMat,
}

impl AlcovedPoly {
    /// Fails with `EmptyPolyhedron` when the digraph of `m` has a positive circuit.
    pub fn new(m: TropMat) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
        }
        let star = m.kleene_star().map_err(|e| match e {
            Error::PositiveCircuit { circuit, weight } => Error::EmptyPolyhedron { circuit, weight },
            other => other,
        })?;
        Ok(AlcovedPoly { matrix: m, star })
    }

    /// The whole space `R^n`.
    pub fn full(n: usize) -> Self {
        AlcovedPoly { matrix: TropMat::filled(n, n, Ext::NegInf), star: TropMat::identity(n) }
    }

    /// Order polyhedron `{x : x_i ≥ x_j for (i, j) in relation}` (0-based pairs).
    pub fn order(n: usize, relation: &[(usize, usize)]) -> Result<Self> {
        let m = TropMat::from_fn(n, n, |i, j| {
            if relation.contains(&(i, j)) {
                Ext::zero()
            } else {
                Ext::NegInf
            }
        });
        AlcovedPoly::new(m)
    }

    pub fn dim(&self) -> usize {
        self.star.rows()
    }

    pub fn matrix(&self) -> &TropMat {
        &self.matrix
    }

    pub fn star(&self) -> &TropMat {
        &self.star
    }

    /// `true` iff `M* x ≤ x`.
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        check_dim(self.dim(), x.len())?;
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if let Some(m) = self.star.get(i, j).finite() {
                    if m + &x[j] > x[i] {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Least point of the polyhedron above `x`, namely `M* x`.
    pub fn project_up(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.star.apply_finite(x)
    }

    /// Greatest point of the polyhedron below `x`: `-(N* (-x))` with `N = Mᵀ`.
    pub fn project_down(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        check_dim(self.dim(), x.len())?;
        let n = self.dim();
        Ok((0..n)
            .map(|i| {
                (0..n)
                    .filter_map(|j| self.star.get(j, i).finite().map(|m| &x[j] - m))
                    .min()
                    .expect("star has a zero diagonal")
            })
            .collect())
    }

    /// Classes of indices `i ~ j` with `M*_ij + M*_ji = 0`; these are the
    /// strongly connected components of the critical digraph of `M*`.
    /// Each class is sorted and the classes are ordered by smallest element.
    pub fn critical_classes(&self) -> Vec<Vec<usize>> {
        let n = self.dim();
        let mut class_of: Vec<Option<usize>> = vec![None; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i].is_some() {
                continue;
            }
            let id = classes.len();
            let mut members = vec![i];
            class_of[i] = Some(id);
            for j in i + 1..n {
                if class_of[j].is_none() && self.tight(i, j) {
                    class_of[j] = Some(id);
                    members.push(j);
                }
            }
            classes.push(members);
        }
        classes
    }

    fn tight(&self, i: usize, j: usize) -> bool {
        match (self.star.get(i, j), self.star.get(j, i)) {
            (Ext::Fin(a), Ext::Fin(b)) => (a + b).is_zero(),
            _ => false,
        }
    }

    /// Dimension of the polyhedron (the lineality direction `(1,…,1)` included).
    pub fn dimension(&self) -> usize {
        self.critical_classes().len()
    }

    /// Tropical generators of the lower closure: one column of `M*` per
    /// critical class, represented by the class's smallest index.
    pub fn generators(&self) -> Vec<TropVec> {
        self.critical_classes().iter().map(|c| self.star.column(c[0])).collect()
    }

    /// Dual tropical generators of the upper closure (entries in `Q ∪ {+inf}`).
    pub fn dual_generators(&self) -> Vec<TropVec> {
        let n = self.dim();
        self.critical_classes()
            .iter()
            .map(|c| TropVec((0..n).map(|i| self.star.get(c[0], i).neg()).collect()))
            .collect()
    }

    /// `self ⊆ other`, decided exactly on the starred matrices.
    pub fn is_subset_of(&self, other: &AlcovedPoly) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.star.get(i, j) >= other.star.get(i, j)))
    }

    /// Intersection, or `None` when empty.
    pub fn intersect(&self, other: &AlcovedPoly) -> Result<Option<AlcovedPoly>> {
        match AlcovedPoly::new(self.star.join(&other.star)?) {
            Ok(p) => Ok(Some(p)),
            Err(Error::EmptyPolyhedron { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// The same polyhedron with its defining matrix replaced by the star.
    pub fn canonical(&self) -> AlcovedPoly {
        AlcovedPoly { matrix: self.star.clone(), star: self.star.clone() }
    }

    /// Bounded modulo constants, i.e. bounded in Hilbert's seminorm.
    pub fn is_hilbert_bounded(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.star.get(i, j).is_finite()))
    }
}

/// Smallest alcoved polyhedron containing `points`: `M_ij = min_v (v_i - v_j)`.
pub fn alcoved_envelope(points: &[Vec<Rat>]) -> Result<AlcovedPoly> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let n = first.len();
    for p in points {
        check_dim(n, p.len())?;
    }
    let m = TropMat::from_fn(n, n, |i, j| {
        Ext::Fin(points.iter().map(|v| &v[i] - &v[j]).min().expect("nonempty"))
    });
    AlcovedPoly::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn order_x1_ge_x2() -> AlcovedPoly {
        AlcovedPoly::order(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn unconstrained_star_is_identity() {
        let p = AlcovedPoly::new(TropMat::filled(3, 3, Ext::NegInf)).unwrap();
        assert_eq!(p.star(), &TropMat::identity(3));
        let gens = p.generators();
        assert_eq!(gens.len(), 3);
        for (k, g) in gens.iter().enumerate() {
            assert_eq!(g, &TropMat::identity(3).column(k));
        }
    }

    #[test]
    fn positive_loop_is_empty() {
        let m = TropMat::from_rows(vec![vec![Ext::int(1)]]).unwrap();
        assert!(matches!(AlcovedPoly::new(m), Err(Error::EmptyPolyhedron { .. })));
    }

    #[test]
    fn order_polyhedron_membership_and_projections() {
        let p = order_x1_ge_x2();
        assert!(p.contains(&[int(1), int(0)]).unwrap());
        assert!(!p.contains(&[int(0), int(1)]).unwrap());
        assert_eq!(p.project_up(&[int(0), int(1)]).unwrap(), vec![int(1), int(1)]);
        assert_eq!(p.project_down(&[int(0), int(1)]).unwrap(), vec![int(0), int(0)]);
        assert_eq!(p.project_up(&[int(3), int(1)]).unwrap(), vec![int(3), int(1)]);
        assert!(matches!(p.contains(&[int(0)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn order_polyhedron_generators() {
        let gens = order_x1_ge_x2().generators();
        assert_eq!(
            gens,
            vec![TropVec(vec![Ext::int(0), Ext::NegInf]), TropVec(vec![Ext::int(0), Ext::int(0)])]
        );
    }

    #[test]
    fn envelope_of_one_point() {
        let v = vec![int(2), int(-1), int(5)];
        let p = alcoved_envelope(&[v.clone()]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.star().get(i, j), &Ext::Fin(&v[i] - &v[j]));
            }
        }
        assert_eq!(p.dimension(), 1);
        assert!(matches!(alcoved_envelope(&[]), Err(Error::EmptyInput)));
    }
}
