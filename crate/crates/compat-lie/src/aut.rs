//! Automorphism groups over prime fields and their actions.
//!
//! Automorphisms are enumerated by column-by-column backtracking: candidate
//! images are rejected as soon as they make the partial matrix singular or
//! break any bracket relation whose inputs are already determined. The
//! enumeration is lazy so orbit computations can stream it and short-circuit.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{pairs_asc, Bracket, CompatibleLieAlgebra};
use crate::cohomology::{CohomologyData, ScalarCocycle};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// An invertible matrix preserving both brackets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Automorphism {
    pub matrix: Matrix,
}

impl Automorphism {
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.mul_vec(v)
    }

    pub fn compose(&self, then: &Automorphism) -> Result<Automorphism> {
        // (self; then) as matrices: then ∘ self
        Ok(Automorphism { matrix: then.matrix.mul(&self.matrix)? })
    }

    /// Post-hoc check that the matrix really is an automorphism of g.
    pub fn preserves(&self, g: &CompatibleLieAlgebra) -> bool {
        if !self.matrix.is_invertible() {
            return false;
        }
        for (i, j) in pairs_asc(g.dim()) {
            for w in Bracket::BOTH {
                let lhs = match self.matrix.mul_vec(&g.bracket_basis(w, i, j)) {
                    Ok(v) => v,
                    Err(_) => return false,
                };
                let rhs = g
                    .bracket(w, &self.matrix.col(i), &self.matrix.col(j))
                    .expect("dims");
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Bounds guarding the exhaustive enumeration.
#[derive(Clone, Copy, Debug)]
pub struct AutOptions {
    pub dim_bound: usize,
    pub modulus_bound: u64,
}

impl Default for AutOptions {
    fn default() -> Self {
        AutOptions { dim_bound: 4, modulus_bound: 7 }
    }
}

/// One bracket relation to check, with the largest column index it needs.
struct Relation {
    which: Bracket,
    i: usize,
    j: usize,
    support: Vec<usize>,
    ready_at: usize,
}

/// Lazy enumeration of Aut(g) over F_p.
pub struct AutIter<'g> {
    g: &'g CompatibleLieAlgebra,
    p: u64,
    n: usize,
    /// relations grouped by the column index at which they become checkable
    relations: Vec<Relation>,
    /// current partial assignment: columns[0..depth] are set
    columns: Vec<Vec<Scalar>>,
    /// per-level candidate counters (next candidate to try at each level)
    counters: Vec<u64>,
    /// incremental row-reduction state per level: (pivot, reduced vector)
    reduced: Vec<Vec<(usize, Vec<Scalar>)>>,
    done: bool,
}

/// Enumerates exactly the invertible matrices preserving both brackets.
pub fn automorphisms<'g>(
    g: &'g CompatibleLieAlgebra,
    opts: &AutOptions,
) -> Result<AutIter<'g>> {
    let Field::Prime(p) = g.field() else {
        return Err(Error::UnsupportedField("automorphism enumeration"));
    };
    if g.dim() > opts.dim_bound {
        return Err(Error::ResourceBound(alloc::format!(
            "dim {} exceeds automorphism bound {}",
            g.dim(),
            opts.dim_bound
        )));
    }
    if p > opts.modulus_bound {
        return Err(Error::ResourceBound(alloc::format!(
            "modulus {p} exceeds automorphism bound {}",
            opts.modulus_bound
        )));
    }
    let n = g.dim();
    let mut relations = Vec::new();
    for (i, j) in pairs_asc(n) {
        for w in Bracket::BOTH {
            let coeffs = g.bracket_basis(w, i, j);
            let support: Vec<usize> =
                (0..n).filter(|&k| !coeffs[k].is_zero()).collect();
            let ready_at = support.iter().copied().chain([i, j]).max().unwrap_or(0);
            relations.push(Relation { which: w, i, j, support, ready_at });
        }
    }
    Ok(AutIter {
        g,
        p,
        n,
        relations,
        columns: Vec::new(),
        counters: vec![0],
        reduced: vec![Vec::new()],
        done: n == 0,
    })
}

impl AutIter<'_> {
    fn decode(&self, mut counter: u64) -> Vec<Scalar> {
        let field = self.g.field();
        let mut v = vec![field.zero(); self.n];
        for t in (0..self.n).rev() {
            v[t] = field.from_i64((counter % self.p) as i64);
            counter /= self.p;
        }
        v
    }

    /// Reduces v against the current elimination rows; None if dependent.
    fn independent_residual(&self, v: &[Scalar]) -> Option<(usize, Vec<Scalar>)> {
        let mut v = v.to_vec();
        for (pivot, row) in self.reduced.last().expect("level state") {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for c in 0..self.n {
                    v[c] = v[c].sub(&factor.mul(&row[c]));
                }
            }
        }
        let pivot = (0..self.n).find(|&c| !v[c].is_zero())?;
        let inv = v[pivot].inv().expect("nonzero");
        for c in 0..self.n {
            v[c] = v[c].mul(&inv);
        }
        Some((pivot, v))
    }

    /// If some bracket relation pins down column `depth` from the columns
    /// already assigned, returns the unique admissible value.
    fn forced_value(&self, depth: usize) -> Option<Vec<Scalar>> {
        for rel in &self.relations {
            if rel.ready_at != depth || rel.i >= depth || rel.j >= depth {
                continue;
            }
            if !rel.support.contains(&depth) {
                continue;
            }
            let coeffs = self.g.bracket_basis(rel.which, rel.i, rel.j);
            let rhs = self
                .g
                .bracket(rel.which, &self.columns[rel.i], &self.columns[rel.j])
                .expect("dims");
            let mut rest = rhs;
            for &k in &rel.support {
                if k == depth {
                    continue;
                }
                for t in 0..self.n {
                    rest[t] = rest[t].sub(&coeffs[k].mul(&self.columns[k][t]));
                }
            }
            let inv = coeffs[depth].inv().expect("support coefficient");
            return Some(rest.iter().map(|s| s.mul(&inv)).collect());
        }
        None
    }

    /// Checks every relation that became fully determined at this depth.
    fn relations_hold(&self, depth: usize) -> bool {
        for rel in &self.relations {
            if rel.ready_at != depth {
                continue;
            }
            let coeffs = self.g.bracket_basis(rel.which, rel.i, rel.j);
            let field = self.g.field();
            let mut lhs = vec![field.zero(); self.n];
            for &k in &rel.support {
                for t in 0..self.n {
                    lhs[t] = lhs[t].add(&coeffs[k].mul(&self.columns[k][t]));
                }
            }
            let rhs = self
                .g
                .bracket(rel.which, &self.columns[rel.i], &self.columns[rel.j])
                .expect("dims");
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

impl Iterator for AutIter<'_> {
    type Item = Automorphism;

    fn next(&mut self) -> Option<Automorphism> {
        if self.done {
            if self.n == 0 && !self.columns.is_empty() {
                return None;
            }
            // dimension 0: the unique (empty) automorphism
            if self.n == 0 {
                self.columns.push(Vec::new());
                return Some(Automorphism { matrix: Matrix::identity(self.g.field(), 0) });
            }
            return None;
        }
        let total = self.p.pow(self.n as u32);
        loop {
            let depth = self.columns.len();
            let counter = *self.counters.last().expect("counter per level");
            if counter >= total {
                // exhausted this level; backtrack
                self.counters.pop();
                self.reduced.pop();
                if self.columns.pop().is_none() || self.counters.is_empty() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            let candidate = match self.forced_value(depth) {
                Some(forced) => {
                    *self.counters.last_mut().expect("counter per level") = total;
                    if counter > 0 {
                        continue;
                    }
                    forced
                }
                None => {
                    *self.counters.last_mut().expect("counter per level") += 1;
                    self.decode(counter)
                }
            };
            let Some((pivot, residual)) = self.independent_residual(&candidate) else {
                continue;
            };
            self.columns.push(candidate);
            if !self.relations_hold(depth) {
                self.columns.pop();
                continue;
            }
            let mut level = self.reduced.last().expect("level state").clone();
            level.push((pivot, residual));
            self.reduced.push(level);
            self.counters.push(0);
            if self.columns.len() == self.n {
                let mut m = Matrix::zeros(self.g.field(), self.n, self.n);
                for (j, col) in self.columns.iter().enumerate() {
                    for (i, v) in col.iter().enumerate() {
                        m.set(i, j, v.clone());
                    }
                }
                // step back so the next call resumes the search
                self.columns.pop();
                self.counters.pop();
                self.reduced.pop();
                return Some(Automorphism { matrix: m });
            }
        }
    }
}

/// A generating set of GL(n, p): an elementary transvection, the basis
/// n-cycle, and a diagonal carrying a primitive root. Used for orbit
/// computations over abelian algebras, where Aut(g) is all of GL(n, p).
pub fn gl_generators(field: Field, n: usize) -> Vec<Automorphism> {
    let Field::Prime(p) = field else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let primitive = (2..p)
        .find(|&g| {
            let mut x = g % p;
            let mut order = 1;
            while x != 1 {
                x = x * g % p;
                order += 1;
            }
            order == p - 1
        })
        .unwrap_or(1);
    let mut gens = Vec::new();
    let mut scale = Matrix::identity(field, n);
    scale.set(0, 0, field.from_i64(primitive as i64));
    gens.push(Automorphism { matrix: scale });
    if n >= 2 {
        let mut transvection = Matrix::identity(field, n);
        transvection.set(0, 1, field.one());
        gens.push(Automorphism { matrix: transvection });
        let mut cycle = Matrix::zeros(field, n, n);
        for j in 0..n {
            cycle.set((j + 1) % n, j, field.one());
        }
        gens.push(Automorphism { matrix: cycle });
    }
    gens
}

/// Group-order cache keyed by (structure constants, p).
#[derive(Default)]
pub struct AutOrderCache {
    orders: BTreeMap<(String, u64), u64>,
}

impl AutOrderCache {
    pub fn new() -> AutOrderCache {
        AutOrderCache { orders: BTreeMap::new() }
    }

    pub fn order(
        &mut self,
        g: &CompatibleLieAlgebra,
        opts: &AutOptions,
    ) -> Result<u64> {
        let Field::Prime(p) = g.field() else {
            return Err(Error::UnsupportedField("automorphism enumeration"));
        };
        let key = (g.canon_key(), p);
        if let Some(&o) = self.orders.get(&key) {
            return Ok(o);
        }
        let o = automorphisms(g, opts)?.count() as u64;
        self.orders.insert(key, o);
        Ok(o)
    }
}

/// Right action (ωφ)(x,y) = ω(φx, φy); as matrices φᵗ M φ per component.
pub fn act_on_cocycle(c: &ScalarCocycle, phi: &Automorphism) -> ScalarCocycle {
    let pt = phi.matrix.transpose();
    let under = pt.mul(c.component(Bracket::One)).and_then(|m| m.mul(&phi.matrix)).expect("dims");
    let tilde = pt.mul(c.component(Bracket::Two)).and_then(|m| m.mul(&phi.matrix)).expect("dims");
    ScalarCocycle::from_matrices(under, tilde).expect("congruence keeps antisymmetry")
}

/// The induced action on an s-dimensional subspace of H² coordinates:
/// lift representatives, act, project back, re-canonicalize.
pub fn act_on_h2_subspace(
    data: &CohomologyData,
    w: &Subspace,
    phi: &Automorphism,
) -> Result<Subspace> {
    let mut rows = Vec::with_capacity(w.dim());
    for row in w.basis_rows() {
        let rep = data.lift(&row)?;
        let moved = act_on_cocycle(&rep, phi);
        rows.push(data.project(&moved)?);
    }
    Subspace::span(w.field(), data.dim_h2(), &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn n32(field: Field) -> CompatibleLieAlgebra {
        CompatibleLieAlgebra::from_relations_i64(field, 3, &[(Bracket::One, 0, 1, 2, 1)])
    }

    fn n34(field: Field, alpha: i64) -> CompatibleLieAlgebra {
        CompatibleLieAlgebra::from_relations_i64(
            field,
            3,
            &[(Bracket::One, 0, 1, 2, 1), (Bracket::Two, 0, 1, 2, alpha)],
        )
    }

    fn gamma(field: Field, index: usize) -> ScalarCocycle {
        let mut coords = vec![field.zero(); 6];
        coords[index - 1] = field.one();
        ScalarCocycle::from_coords(field, 3, &coords).unwrap()
    }

    #[test]
    fn abelian_automorphisms_are_all_of_gl() {
        // |GL(2,3)| = (9-1)(9-3) = 48
        let g = CompatibleLieAlgebra::abelian(f3(), 2);
        let auts: Vec<_> = automorphisms(&g, &AutOptions::default()).unwrap().collect();
        assert_eq!(auts.len(), 48);
        for a in &auts {
            assert!(a.preserves(&g));
        }
    }

    #[test]
    fn n32_automorphism_count_and_shape() {
        // the matrix shape forces x13 = x23 = 0 and x33 = det of the top block,
        // so the order is |GL(2,3)| * 3^2 = 432
        let g = n32(f3());
        let mut count = 0usize;
        for a in automorphisms(&g, &AutOptions::default()).unwrap() {
            count += 1;
            let m = &a.matrix;
            assert!(m.at(0, 2).is_zero());
            assert!(m.at(1, 2).is_zero());
            let d33 = m.at(0, 0).mul(m.at(1, 1)).sub(&m.at(0, 1).mul(m.at(1, 0)));
            assert_eq!(*m.at(2, 2), d33);
            assert!(!d33.is_zero());
        }
        assert_eq!(count, 432);
    }

    #[test]
    fn n34_has_the_same_automorphism_shape() {
        let g = n34(f3(), 2);
        for a in automorphisms(&g, &AutOptions::default()).unwrap() {
            let m = &a.matrix;
            assert!(m.at(0, 2).is_zero());
            assert!(m.at(1, 2).is_zero());
            let d33 = m.at(0, 0).mul(m.at(1, 1)).sub(&m.at(0, 1).mul(m.at(1, 0)));
            assert_eq!(*m.at(2, 2), d33);
        }
    }

    #[test]
    fn unsupported_and_bounded_inputs() {
        let g = CompatibleLieAlgebra::abelian(Field::Rationals, 2);
        assert!(matches!(
            automorphisms(&g, &AutOptions::default()),
            Err(Error::UnsupportedField(_))
        ));
        let g = CompatibleLieAlgebra::abelian(f3(), 5);
        assert!(matches!(
            automorphisms(&g, &AutOptions::default()),
            Err(Error::ResourceBound(_))
        ));
    }

    #[test]
    fn identity_acts_trivially() {
        let g = n32(f3());
        let id = Automorphism { matrix: Matrix::identity(f3(), 3) };
        for i in 1..=6 {
            assert_eq!(act_on_cocycle(&gamma(f3(), i), &id), gamma(f3(), i));
        }
        let data = cohomology(&g).unwrap();
        let w = Subspace::span(f3(), 5, &[vec![
            f3().one(),
            f3().zero(),
            f3().one(),
            f3().zero(),
            f3().zero(),
        ]])
        .unwrap();
        assert_eq!(act_on_h2_subspace(&data, &w, &id).unwrap(), w);
    }

    #[test]
    fn rescaling_automorphism_normalizes_gamma5_coefficient() {
        // over the abelian algebra, diag(1/β', 1, 1) sends γ1 + β'γ5 to γ1 + γ5
        let f = f5();
        let beta = f.from_i64(2);
        let inv = beta.inv().unwrap();
        let mut m = Matrix::identity(f, 3);
        m.set(0, 0, inv);
        let phi = Automorphism { matrix: m };
        let omega = gamma(f, 1).add(&gamma(f, 5).scale(&beta)).unwrap();
        let expected = gamma(f, 1).add(&gamma(f, 5)).unwrap();
        assert_eq!(act_on_cocycle(&omega, &phi), expected);
    }

    #[test]
    fn action_matches_the_minor_formulas_on_n32() {
        // γ1 φ = x22 D33 γ1 + x21 D33 γ2 + D13 γ3, and γ6 φ = D33 γ6
        let g = n32(f3());
        let f = f3();
        for a in automorphisms(&g, &AutOptions::default()).unwrap().take(200) {
            let m = &a.matrix;
            let (x11, x12) = (m.at(0, 0).clone(), m.at(0, 1).clone());
            let (x21, x22) = (m.at(1, 0).clone(), m.at(1, 1).clone());
            let (x31, x32) = (m.at(2, 0).clone(), m.at(2, 1).clone());
            let d33 = x11.mul(&x22).sub(&x12.mul(&x21));
            let d13 = x21.mul(&x32).sub(&x22.mul(&x31));
            let got = act_on_cocycle(&gamma(f, 1), &a);
            let expected = gamma(f, 1)
                .scale(&x22.mul(&d33))
                .add(&gamma(f, 2).scale(&x21.mul(&d33)))
                .unwrap()
                .add(&gamma(f, 3).scale(&d13))
                .unwrap();
            assert_eq!(got, expected);
            let got6 = act_on_cocycle(&gamma(f, 6), &a);
            assert_eq!(got6, gamma(f, 6).scale(&d33));
        }
    }

    #[test]
    fn action_is_a_right_action() {
        let g = n32(f3());
        let auts: Vec<_> =
            automorphisms(&g, &AutOptions::default()).unwrap().take(20).collect();
        let omega = gamma(f3(), 1).add(&gamma(f3(), 5).scale(&f3().from_i64(2))).unwrap();
        for a in &auts {
            for b in &auts {
                let lhs = act_on_cocycle(&act_on_cocycle(&omega, a), b);
                let ab = Automorphism { matrix: a.matrix.mul(&b.matrix).unwrap() };
                let rhs = act_on_cocycle(&omega, &ab);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn action_commutes_with_projection_to_h2() {
        let g = n34(f3(), 1);
        let data = cohomology(&g).unwrap();
        let omega = gamma(f3(), 1).add(&gamma(f3(), 4)).unwrap();
        // perturb by a coboundary: same class, same projected action
        let cob = gamma(f3(), 3).add(&gamma(f3(), 6)).unwrap(); // γ3 + 1·γ6 ∈ B²
        let omega2 = omega.add(&cob).unwrap();
        for a in automorphisms(&g, &AutOptions::default()).unwrap().take(100) {
            let p1 = data.project(&act_on_cocycle(&omega, &a)).unwrap();
            let p2 = data.project(&act_on_cocycle(&omega2, &a)).unwrap();
            assert_eq!(p1, p2);
        }
    }

    #[test]
    fn automorphisms_preserve_the_centre() {
        let g = n32(f3());
        let z = g.center();
        for a in automorphisms(&g, &AutOptions::default()).unwrap().take(100) {
            let mapped = Subspace::span(
                f3(),
                3,
                &z.basis_rows().iter().map(|r| a.apply(r).unwrap()).collect::<Vec<_>>(),
            )
            .unwrap();
            assert_eq!(mapped, z);
        }
    }

    #[test]
    fn switch_copy_has_the_same_automorphisms() {
        let g = n32(f3());
        let gs = g.switch();
        let mut keys_g: Vec<String> = automorphisms(&g, &AutOptions::default())
            .unwrap()
            .map(|a| a.matrix.canon_key())
            .collect();
        let mut keys_gs: Vec<String> = automorphisms(&gs, &AutOptions::default())
            .unwrap()
            .map(|a| a.matrix.canon_key())
            .collect();
        keys_g.sort();
        keys_gs.sort();
        assert_eq!(keys_g, keys_gs);
    }

    #[test]
    fn order_cache() {
        let mut cache = AutOrderCache::new();
        let g = n32(f3());
        assert_eq!(cache.order(&g, &AutOptions::default()).unwrap(), 432);
        assert_eq!(cache.order(&g, &AutOptions::default()).unwrap(), 432);
        let ab = CompatibleLieAlgebra::abelian(f3(), 2);
        assert_eq!(cache.order(&ab, &AutOptions::default()).unwrap(), 48);
    }

    #[test]
    fn gl_generators_generate_the_whole_group() {
        // breadth-first closure of the generators recovers all of GL(n, p)
        for (n, p, expected) in [(1usize, 5u64, 4usize), (2, 3, 48), (3, 3, 11232)] {
            let field = Field::prime(p).unwrap();
            let gens = gl_generators(field, n);
            let mut seen = alloc::collections::BTreeSet::new();
            let mut frontier = alloc::vec![Matrix::identity(field, n)];
            seen.insert(frontier[0].canon_key());
            while let Some(m) = frontier.pop() {
                for g in &gens {
                    let next = g.matrix.mul(&m).unwrap();
                    if seen.insert(next.canon_key()) {
                        frontier.push(next);
                    }
                }
            }
            assert_eq!(seen.len(), expected, "GL({n}, {p})");
        }
    }

    #[test]
    fn zero_dimensional_algebra_has_one_automorphism() {
        let g = CompatibleLieAlgebra::abelian(f3(), 0);
        let auts: Vec<_> = automorphisms(&g, &AutOptions::default()).unwrap().collect();
        assert_eq!(auts.len(), 1);
    }
}
