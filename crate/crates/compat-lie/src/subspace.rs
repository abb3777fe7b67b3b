//! Linear subspaces in canonical form and the subspace lattice.
//!
//! A subspace is stored as its reduced row-echelon basis, which is the unique
//! canonical representative: two subspaces are equal iff their basis matrices
//! are entrywise equal. That makes equality, hashing, and orbit deduplication
//! cheap.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix, // RREF, full row rank
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient) }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(field, ambient) }
    }

    /// Span of the given vectors, canonicalized.
    pub fn span(field: Field, ambient: usize, rows: &[Vec<Scalar>]) -> Result<Subspace> {
        let m = Matrix::from_rows(field, ambient, rows)?;
        Ok(Subspace::from_matrix_rows(&m))
    }

    /// Span of the rows of a matrix, canonicalized.
    pub fn from_matrix_rows(m: &Matrix) -> Subspace {
        let r = m.rref();
        let mut rows = Vec::with_capacity(r.rank);
        for i in 0..r.rank {
            rows.push(r.matrix.row(i));
        }
        let basis = Matrix::from_rows(m.field(), m.cols(), &rows).expect("rows well formed");
        Subspace { ambient: m.cols(), basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.basis.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Reduces v by the RREF basis; returns the residual.
    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        let rref = self.basis.rref(); // basis is already RREF; reuse pivots
        for (i, &pc) in rref.pivots.iter().enumerate() {
            if !v[pc].is_zero() {
                let factor = v[pc].clone();
                for c in 0..self.ambient {
                    v[c] = v[c].sub(&factor.mul(self.basis.at(i, c)));
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.basis_rows().iter().all(|r| self.contains_vector(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::from_matrix_rows(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection via the kernel of the stacked system
    /// `u^T A - v^T B = 0`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let a = self.dim();
        if a == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field(), self.ambient));
        }
        let stacked = self
            .basis
            .transpose()
            .hstack(&other.basis.transpose().scale(&self.field().one().neg()))?;
        let mut rows = Vec::new();
        for k in stacked.kernel_basis() {
            let u = &k[..a];
            let mut x = vec![self.field().zero(); self.ambient];
            for (i, ui) in u.iter().enumerate() {
                if ui.is_zero() {
                    continue;
                }
                for c in 0..self.ambient {
                    x[c] = x[c].add(&ui.mul(self.basis.at(i, c)));
                }
            }
            rows.push(x);
        }
        Subspace::span(self.field(), self.ambient, &rows)
    }

    /// Deterministic key for orbit hashing and lexicographic tie-breaks.
    pub fn canon_key(&self) -> String {
        self.basis.canon_key()
    }
}

/// A choice of complement of `part` inside `whole`, with the linear map
/// expressing any vector of `whole` in complement coordinates.
///
/// The complement is picked greedily: standard basis vectors of the ambient
/// space are tried in index order (those lying in `whole` and independent of
/// `part` plus the vectors already chosen), then rows of `whole`'s canonical
/// basis fill any remainder. The rule is deterministic, which is what makes
/// downstream orbit representatives reproducible.
#[derive(Clone, Debug)]
pub struct QuotientCoords {
    part: Subspace,
    complement: Matrix,  // one row per complement basis vector
    solve: Matrix,       // (dim whole) x ambient; coords = solve . v
}

impl QuotientCoords {
    pub fn new(whole: &Subspace, part: &Subspace) -> Result<QuotientCoords> {
        if !whole.contains(part)? {
            return Err(Error::NotContained);
        }
        let field = whole.field();
        let ambient = whole.ambient_dim();
        let target = whole.dim() - part.dim();

        let mut chosen: Vec<Vec<Scalar>> = Vec::new();
        let mut acc = part.clone();
        let push_if_new = |v: Vec<Scalar>, acc: &mut Subspace, chosen: &mut Vec<Vec<Scalar>>| {
            if !acc.contains_vector(&v) {
                let mut rows = acc.basis_rows();
                rows.push(v.clone());
                *acc = Subspace::span(field, ambient, &rows).expect("span");
                chosen.push(v);
            }
        };
        for i in 0..ambient {
            if chosen.len() == target {
                break;
            }
            let mut e = vec![field.zero(); ambient];
            e[i] = field.one();
            if whole.contains_vector(&e) {
                push_if_new(e, &mut acc, &mut chosen);
            }
        }
        for row in whole.basis_rows() {
            if chosen.len() == target {
                break;
            }
            push_if_new(row, &mut acc, &mut chosen);
        }
        debug_assert_eq!(chosen.len(), target);
        let complement = Matrix::from_rows(field, ambient, &chosen)?;

        // L with L . M^T = I, where M stacks part then complement rows.
        let m = part.basis.vstack(&complement)?;
        let d = m.rows();
        let mt = m.transpose();
        let aug = mt.hstack(&Matrix::identity(field, ambient))?;
        let r = aug.rref();
        debug_assert!(r.rank >= d);
        let mut solve_rows = Vec::with_capacity(d);
        for i in 0..d {
            debug_assert_eq!(r.pivots[i], i, "stacked basis must have full column rank");
            let row = r.matrix.row(i)[d..].to_vec();
            solve_rows.push(row);
        }
        let full_solve = Matrix::from_rows(field, ambient, &solve_rows)?;
        let solve_complement_rows: Vec<Vec<Scalar>> =
            (part.dim()..d).map(|i| full_solve.row(i)).collect();
        let solve = Matrix::from_rows(field, ambient, &solve_complement_rows)?;
        Ok(QuotientCoords { part: part.clone(), complement, solve })
    }

    pub fn part(&self) -> &Subspace {
        &self.part
    }

    /// Basis of the chosen complement, one row per vector.
    pub fn complement(&self) -> &Matrix {
        &self.complement
    }

    pub fn coords_dim(&self) -> usize {
        self.complement.rows()
    }

    /// Complement coordinates of a vector of `whole`; kills `part` exactly.
    pub fn project(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.solve.mul_vec(v)
    }

    /// Reassembles a coordinate vector into a representative in the complement.
    pub fn lift(&self, coords: &[Scalar]) -> Result<Vec<Scalar>> {
        if coords.len() != self.coords_dim() {
            return Err(Error::DimensionMismatch { expected: self.coords_dim(), got: coords.len() });
        }
        self.complement.transpose().mul_vec(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn vecs(field: Field, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&n| field.from_i64(n)).collect()).collect()
    }

    #[test]
    fn lattice_basics() {
        let v = Subspace::span(f3(), 3, &vecs(f3(), &[&[1, 1, 0], &[0, 1, 1]])).unwrap();
        assert_eq!(v.intersect(&v).unwrap(), v);
        assert_eq!(v.sum(&Subspace::zero(f3(), 3)).unwrap(), v);

        let e1 = Subspace::span(f3(), 2, &vecs(f3(), &[&[1, 0]])).unwrap();
        let e2 = Subspace::span(f3(), 2, &vecs(f3(), &[&[0, 1]])).unwrap();
        assert!(e1.intersect(&e2).unwrap().is_zero());
    }

    #[test]
    fn intersection_in_f3_cubed() {
        // span{(1,1,0),(0,1,1)} meets span{(1,0,0),(0,0,1)} in span{(1,0,-1)}
        let a = Subspace::span(f3(), 3, &vecs(f3(), &[&[1, 1, 0], &[0, 1, 1]])).unwrap();
        let b = Subspace::span(f3(), 3, &vecs(f3(), &[&[1, 0, 0], &[0, 0, 1]])).unwrap();
        let cap = a.intersect(&b).unwrap();
        let expected = Subspace::span(f3(), 3, &vecs(f3(), &[&[1, 0, -1]])).unwrap();
        assert_eq!(cap, expected);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::full(f3(), 2);
        let b = Subspace::full(f3(), 3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn quotient_coords_trivial_cases() {
        let f = Field::Rationals;
        let whole = Subspace::full(f, 3);
        let zero = Subspace::zero(f, 3);
        let q = QuotientCoords::new(&whole, &zero).unwrap();
        assert_eq!(q.coords_dim(), 3);
        let v = vecs(f, &[&[2, -1, 5]]).remove(0);
        assert_eq!(q.project(&v).unwrap(), v);

        let q = QuotientCoords::new(&whole, &whole).unwrap();
        assert_eq!(q.coords_dim(), 0);
    }

    #[test]
    fn quotient_coords_mod_line() {
        // whole = F_3^2, part = span{(1,1)}: complement span{(1,0)}, projector (a,b) -> a-b
        let whole = Subspace::full(f3(), 2);
        let part = Subspace::span(f3(), 2, &vecs(f3(), &[&[1, 1]])).unwrap();
        let q = QuotientCoords::new(&whole, &part).unwrap();
        assert_eq!(q.complement(), &Matrix::from_i64(f3(), &[&[1, 0]]));
        for (a, b) in [(0i64, 1i64), (1, 2), (2, 2), (1, 0)] {
            let v = [f3().from_i64(a), f3().from_i64(b)];
            let got = q.project(&v).unwrap();
            assert_eq!(got, vec![f3().from_i64(a - b)]);
        }
        // kills part exactly
        assert!(q.project(&vecs(f3(), &[&[2, 2]])[0]).unwrap()[0].is_zero());
    }

    #[test]
    fn projector_vanishes_exactly_on_part() {
        let f = f3();
        let whole = Subspace::span(f, 4, &vecs(f, &[&[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]]))
            .unwrap();
        let part = Subspace::span(f, 4, &vecs(f, &[&[1, 1, 1, 1]])).unwrap();
        let q = QuotientCoords::new(&whole, &part).unwrap();
        assert_eq!(q.coords_dim(), 2);
        for row in part.basis_rows() {
            assert!(q.project(&row).unwrap().iter().all(Scalar::is_zero));
        }
        // surjective onto coordinates: the complement rows map to unit vectors
        for (i, row) in (0..q.coords_dim()).map(|i| (i, q.complement().row(i))) {
            let coords = q.project(&row).unwrap();
            for (j, c) in coords.iter().enumerate() {
                assert_eq!(c.is_one(), i == j);
                assert_eq!(c.is_zero(), i != j);
            }
        }
    }
}
