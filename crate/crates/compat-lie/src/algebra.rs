//! Compatible Lie algebras given by structure constants.
//!
//! A compatible Lie algebra carries two brackets `[x,y]` and `{x,y}`, each a
//! Lie bracket, tied together by the mixed Jacobi identity
//!
//! ```text
//! {[x,y],z} + {[y,z],x} + {[z,x],y} + [{x,y},z] + [{y,z},x] + [{z,x},y] = 0.
//! ```
//!
//! Structure constants are stored densely for pairs i < j only; antisymmetry
//! is derived by the accessors, so inconsistent storage cannot occur.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// Which of the two products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bracket {
    One,
    Two,
}

impl Bracket {
    pub const BOTH: [Bracket; 2] = [Bracket::One, Bracket::Two];

    pub fn other(self) -> Bracket {
        match self {
            Bracket::One => Bracket::Two,
            Bracket::Two => Bracket::One,
        }
    }
}

/// Index of the pair (i, j), i < j, in ascending lexicographic order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // pairs (0,1), (0,2), ..., (0,n-1), (1,2), ...
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// All pairs (i, j), i < j, ascending.
pub fn pairs_asc(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((i, j));
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct BracketTable {
    dim: usize,
    // coefficient vector of [e_i, e_j] for each pair i < j
    coeffs: Vec<Vec<Scalar>>,
}

impl BracketTable {
    fn zero(field: Field, dim: usize) -> BracketTable {
        let m = dim * dim.saturating_sub(1) / 2;
        BracketTable { dim, coeffs: vec![vec![field.zero(); dim]; m] }
    }

    fn get(&self, i: usize, j: usize) -> &[Scalar] {
        &self.coeffs[pair_index(self.dim, i, j)]
    }
}

/// One of the three identity families checked by [`CompatibleLieAlgebra::verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    Jacobi1,
    Jacobi2,
    MixedJacobi,
}

/// A failed identity: which one, on which basis triple, with what residual.
#[derive(Clone, Debug)]
pub struct IdentityFailure {
    pub identity: IdentityKind,
    /// 0-based basis indices i < j < k.
    pub triple: (usize, usize, usize),
    pub residual: Vec<Scalar>,
}

/// Result of checking both Jacobi identities and the mixed one.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub jacobi1_ok: bool,
    pub jacobi2_ok: bool,
    pub mixed_ok: bool,
    pub first_failure: Option<IdentityFailure>,
}

impl VerificationReport {
    pub fn is_compatible_lie_algebra(&self) -> bool {
        self.jacobi1_ok && self.jacobi2_ok && self.mixed_ok
    }
}

#[derive(Clone, Debug)]
pub struct CompatibleLieAlgebra {
    dim: usize,
    field: Field,
    bracket1: BracketTable,
    bracket2: BracketTable,
    label: Option<String>,
}

/// Structural equality: same dimension, field, and structure constants.
/// Labels are metadata and do not participate.
impl PartialEq for CompatibleLieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.field == other.field
            && self.bracket1 == other.bracket1
            && self.bracket2 == other.bracket2
    }
}

impl Eq for CompatibleLieAlgebra {}

/// Projection data returned by [`CompatibleLieAlgebra::quotient`].
///
/// The quotient basis is the set of standard basis vectors at the non-pivot
/// indices of the ideal's canonical basis; `section` records those indices, so
/// lifting a quotient basis vector is just picking the standard vector again.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub projection: Matrix, // (dim - d) x dim
    pub section: Vec<usize>,
}

impl CompatibleLieAlgebra {
    pub fn abelian(field: Field, dim: usize) -> CompatibleLieAlgebra {
        CompatibleLieAlgebra {
            dim,
            field,
            bracket1: BracketTable::zero(field, dim),
            bracket2: BracketTable::zero(field, dim),
            label: None,
        }
    }

    /// Builds an algebra from relations `(bracket, i, j, k, coeff)` meaning
    /// `⟨e_i, e_j⟩ += coeff · e_k` with 0-based i < j.
    pub fn from_relations(
        field: Field,
        dim: usize,
        relations: &[(Bracket, usize, usize, usize, Scalar)],
    ) -> Result<CompatibleLieAlgebra> {
        let mut alg = CompatibleLieAlgebra::abelian(field, dim);
        for (w, i, j, k, c) in relations {
            if *i >= *j || *j >= dim || *k >= dim {
                return Err(Error::DimensionMismatch { expected: dim, got: (*j).max(*k) + 1 });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            let table = match w {
                Bracket::One => &mut alg.bracket1,
                Bracket::Two => &mut alg.bracket2,
            };
            let idx = pair_index(dim, *i, *j);
            table.coeffs[idx][*k] = table.coeffs[idx][*k].add(c);
        }
        Ok(alg)
    }

    /// Shorthand with integer coefficients.
    pub fn from_relations_i64(
        field: Field,
        dim: usize,
        relations: &[(Bracket, usize, usize, usize, i64)],
    ) -> CompatibleLieAlgebra {
        let rels: Vec<_> = relations
            .iter()
            .map(|&(w, i, j, k, c)| (w, i, j, k, field.from_i64(c)))
            .collect();
        CompatibleLieAlgebra::from_relations(field, dim, &rels).expect("valid relations")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = Some(label.into());
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.set_label(label);
        self
    }

    /// Structure constants of `⟨e_i, e_j⟩`, any i ≠ j (sign derived).
    pub fn bracket_basis(&self, which: Bracket, i: usize, j: usize) -> Vec<Scalar> {
        debug_assert!(i != j && i < self.dim && j < self.dim);
        let table = match which {
            Bracket::One => &self.bracket1,
            Bracket::Two => &self.bracket2,
        };
        if i < j {
            table.get(i, j).to_vec()
        } else {
            table.get(j, i).iter().map(Scalar::neg).collect()
        }
    }

    /// Bilinear, antisymmetric evaluation of a bracket on coefficient vectors.
    pub fn bracket(&self, which: Bracket, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: y.len() });
        }
        let mut out = vec![self.field.zero(); self.dim];
        let table = match which {
            Bracket::One => &self.bracket1,
            Bracket::Two => &self.bracket2,
        };
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                // coefficient of e_i ∧ e_j in x ∧ y
                let c = x[i].mul(&y[j]).sub(&x[j].mul(&y[i]));
                if c.is_zero() {
                    continue;
                }
                for (k, coeff) in table.get(i, j).iter().enumerate() {
                    if !coeff.is_zero() {
                        out[k] = out[k].add(&c.mul(coeff));
                    }
                }
            }
        }
        Ok(out)
    }

    fn jacobi_residual(&self, w1: Bracket, w2: Bracket, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        // ⟨⟨e_i,e_j⟩_{w1}, e_k⟩_{w2} + ⟨⟨e_j,e_k⟩_{w1}, e_i⟩_{w2} + ⟨⟨e_k,e_i⟩_{w1}, e_j⟩_{w2}
        let mut acc = vec![self.field.zero(); self.dim];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = self.bracket_basis(w1, a, b);
            let mut e_c = vec![self.field.zero(); self.dim];
            e_c[c] = self.field.one();
            let term = self.bracket(w2, &inner, &e_c).expect("dims fixed");
            for t in 0..self.dim {
                acc[t] = acc[t].add(&term[t]);
            }
        }
        acc
    }

    /// Checks the two Jacobi identities and the mixed Jacobi identity on all
    /// basis triples i < j < k. Multilinearity makes basis triples sufficient.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport {
            jacobi1_ok: true,
            jacobi2_ok: true,
            mixed_ok: true,
            first_failure: None,
        };
        type ResidualFn<'a> = &'a dyn Fn(usize, usize, usize) -> Vec<Scalar>;
        let checks: [(IdentityKind, ResidualFn); 3] = [
            (IdentityKind::Jacobi1, &|i, j, k| self.jacobi_residual(Bracket::One, Bracket::One, i, j, k)),
            (IdentityKind::Jacobi2, &|i, j, k| self.jacobi_residual(Bracket::Two, Bracket::Two, i, j, k)),
            (IdentityKind::MixedJacobi, &|i, j, k| {
                let mut acc = self.jacobi_residual(Bracket::One, Bracket::Two, i, j, k);
                let other = self.jacobi_residual(Bracket::Two, Bracket::One, i, j, k);
                for t in 0..self.dim {
                    acc[t] = acc[t].add(&other[t]);
                }
                acc
            }),
        ];
        for (kind, residual_fn) in checks {
            for i in 0..self.dim {
                for j in (i + 1)..self.dim {
                    for k in (j + 1)..self.dim {
                        let residual = residual_fn(i, j, k);
                        if residual.iter().any(|s| !s.is_zero()) {
                            match kind {
                                IdentityKind::Jacobi1 => report.jacobi1_ok = false,
                                IdentityKind::Jacobi2 => report.jacobi2_ok = false,
                                IdentityKind::MixedJacobi => report.mixed_ok = false,
                            }
                            if report.first_failure.is_none() {
                                report.first_failure = Some(IdentityFailure {
                                    identity: kind,
                                    triple: (i, j, k),
                                    residual,
                                });
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// Adjoint-style constraint matrix: rows indexed by (j, k, bracket),
    /// columns by i; entry = coefficient of e_k in ⟨e_i, e_j⟩.
    fn centre_constraints(&self, which: &[Bracket]) -> Matrix {
        let mut rows = Vec::new();
        for w in which {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let mut row = Vec::with_capacity(self.dim);
                    for i in 0..self.dim {
                        if i == j {
                            row.push(self.field.zero());
                        } else {
                            row.push(self.bracket_basis(*w, i, j)[k].clone());
                        }
                    }
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return Matrix::zeros(self.field, 0, self.dim);
        }
        Matrix::from_rows(self.field, self.dim, &rows).expect("constraint rows")
    }

    /// Centre Z(g): vectors killed by both brackets.
    pub fn center(&self) -> Subspace {
        let m = self.centre_constraints(&Bracket::BOTH);
        Subspace::span(self.field, self.dim, &m.kernel_basis()).expect("kernel basis")
    }

    /// Centre of a single-bracket Lie algebra (g with only one product).
    pub fn center_single(&self, which: Bracket) -> Subspace {
        let m = self.centre_constraints(&[which]);
        Subspace::span(self.field, self.dim, &m.kernel_basis()).expect("kernel basis")
    }

    /// Span of all products ⟨s, t⟩ for s in `left`, t in `right`.
    pub fn commutator_span(&self, left: &Subspace, right: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for l in left.basis_rows() {
            for r in right.basis_rows() {
                for w in Bracket::BOTH {
                    rows.push(self.bracket(w, &l, &r).expect("dims"));
                }
            }
        }
        Subspace::span(self.field, self.dim, &rows).expect("span")
    }

    /// Derived subalgebra ⟦g, g⟧ (both brackets).
    pub fn derived(&self) -> Subspace {
        let full = Subspace::full(self.field, self.dim);
        self.commutator_span(&full, &full)
    }

    /// Image of a single bracket.
    pub fn derived_single(&self, which: Bracket) -> Subspace {
        let mut rows = Vec::new();
        for (i, j) in pairs_asc(self.dim) {
            rows.push(self.bracket_basis(which, i, j));
        }
        Subspace::span(self.field, self.dim, &rows).expect("span")
    }

    /// Lower central series g = Z_0 ⊋ Z_1 ⊋ …, strictly descending until it
    /// stabilizes; the stabilized value is the last element.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.field, self.dim);
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.commutator_span(&full, last);
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().expect("nonempty").is_zero()
    }

    fn is_ideal(&self, sub: &Subspace) -> bool {
        for z in sub.basis_rows() {
            for i in 0..self.dim {
                let mut e = vec![self.field.zero(); self.dim];
                e[i] = self.field.one();
                for w in Bracket::BOTH {
                    let v = self.bracket(w, &e, &z).expect("dims");
                    if !sub.contains_vector(&v) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Quotient by an ideal; the projection is a homomorphism for both brackets.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(CompatibleLieAlgebra, QuotientMap)> {
        if ideal.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: ideal.ambient_dim() });
        }
        if ideal.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let pivots = ideal.basis().rref().pivots;
        let section: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let qdim = section.len();

        // projection: reduce modulo the ideal, then read off non-pivot coords
        let mut proj_rows = Vec::with_capacity(qdim);
        for &sc in &section {
            let mut row = Vec::with_capacity(self.dim);
            for c in 0..self.dim {
                let mut e = vec![self.field.zero(); self.dim];
                e[c] = self.field.one();
                // residual of e_c after reduction by the ideal basis
                let red = reduce_by_rref(ideal, &e);
                row.push(red[sc].clone());
            }
            proj_rows.push(row);
        }
        let projection = Matrix::from_rows(self.field, self.dim, &proj_rows)?;

        let mut quotient = CompatibleLieAlgebra::abelian(self.field, qdim);
        for (a, b) in pairs_asc(qdim) {
            let (ia, ib) = (section[a], section[b]);
            for w in Bracket::BOTH {
                let prod = self.bracket_basis(w, ia, ib);
                let coeffs = projection.mul_vec(&prod)?;
                let table = match w {
                    Bracket::One => &mut quotient.bracket1,
                    Bracket::Two => &mut quotient.bracket2,
                };
                table.coeffs[pair_index(qdim, a, b)] = coeffs;
            }
        }
        Ok((quotient, QuotientMap { projection, section }))
    }

    /// g ⊕ K^k: the brackets are unchanged and the new vectors are central.
    pub fn direct_sum_with_abelian(&self, k: usize) -> CompatibleLieAlgebra {
        let n = self.dim + k;
        let mut out = CompatibleLieAlgebra::abelian(self.field, n);
        for (i, j) in pairs_asc(self.dim) {
            for w in Bracket::BOTH {
                let mut coeffs = self.bracket_basis(w, i, j);
                coeffs.resize(n, self.field.zero());
                let table = match w {
                    Bracket::One => &mut out.bracket1,
                    Bracket::Two => &mut out.bracket2,
                };
                table.coeffs[pair_index(n, i, j)] = coeffs;
            }
        }
        out
    }

    /// True when both products vanish identically.
    pub fn is_abelian(&self) -> bool {
        let zero = |t: &BracketTable| t.coeffs.iter().all(|c| c.iter().all(Scalar::is_zero));
        zero(&self.bracket1) && zero(&self.bracket2)
    }

    /// The switch copy g^s: the same space with the two brackets exchanged.
    pub fn switch(&self) -> CompatibleLieAlgebra {
        CompatibleLieAlgebra {
            dim: self.dim,
            field: self.field,
            bracket1: self.bracket2.clone(),
            bracket2: self.bracket1.clone(),
            label: None,
        }
    }

    /// Looks for a central vector x outside ⟦g,g⟧ together with a complement
    /// ideal containing ⟦g,g⟧; such a pair is a central component g = i ⊕ Kx.
    pub fn has_central_component_structural(&self) -> Option<(Vec<Scalar>, Subspace)> {
        let centre = self.center();
        let derived = self.derived();
        let x = centre.basis_rows().into_iter().find(|v| !derived.contains_vector(v))?;
        // functional f with f(derived) = 0 and f(x) = 1; complement = ker f
        let mut rows = derived.basis_rows();
        rows.push(x.clone());
        let m = Matrix::from_rows(self.field, self.dim, &rows).expect("rows");
        let mut rhs = vec![self.field.zero(); m.rows()];
        let last = rhs.len() - 1;
        rhs[last] = self.field.one();
        let f = m.solve(&rhs).expect("dims").expect("x independent of derived");
        let f_matrix = Matrix::from_rows(self.field, self.dim, &[f]).expect("row");
        let complement = Subspace::span(self.field, self.dim, &f_matrix.kernel_basis()).expect("span");
        Some((x, complement))
    }

    /// Right-nested product ⟨x_0, ⟨x_1, ⋯ ⟨x_{m-1}, x_m⟩⟩⟩ with one bracket
    /// choice per nesting level.
    pub fn right_nested_product(
        &self,
        patterns: &[Bracket],
        elements: &[Vec<Scalar>],
    ) -> Result<Vec<Scalar>> {
        if elements.len() != patterns.len() + 1 {
            return Err(Error::DimensionMismatch {
                expected: patterns.len() + 1,
                got: elements.len(),
            });
        }
        let mut acc = elements.last().expect("nonempty").clone();
        for i in (0..patterns.len()).rev() {
            acc = self.bracket(patterns[i], &elements[i], &acc)?;
        }
        Ok(acc)
    }

    /// Deterministic structural key (dimension, field, structure constants).
    pub fn canon_key(&self) -> String {
        let mut s = alloc::format!("d{};{};", self.dim, self.field);
        for table in [&self.bracket1, &self.bracket2] {
            for coeffs in &table.coeffs {
                for c in coeffs {
                    s.push_str(&c.to_serial());
                    s.push(',');
                }
            }
            s.push(';');
        }
        s
    }
}

/// Residual of v after eliminating the pivot coordinates of a canonical basis.
fn reduce_by_rref(sub: &Subspace, v: &[Scalar]) -> Vec<Scalar> {
    let mut v = v.to_vec();
    let pivots = sub.basis().rref().pivots;
    for (i, &pc) in pivots.iter().enumerate() {
        if !v[pc].is_zero() {
            let factor = v[pc].clone();
            for c in 0..v.len() {
                v[c] = v[c].sub(&factor.mul(sub.basis().at(i, c)));
            }
        }
    }
    v
}
