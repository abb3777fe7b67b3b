//! Central extensions defined by cocycles.
//!
//! Given ω ∈ Z²(g, V) with dim V = s, the extension g_ω lives on g ⊕ V with
//! products ⟨(x,u),(y,v)⟩ = (⟨x,y⟩, ω(x,y)); V sits inside the centre. The
//! extension is *full* when the centre is exactly V, which happens iff
//! Z(g) ∩ ann(ω) = 0 ("ω is admissible").

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{pairs_asc, Bracket, CompatibleLieAlgebra};
use crate::cohomology::{cohomology, CohomologyData, ScalarCocycle, VectorCocycle};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// A base algebra plus an s-component cocycle; the recipe for g_ω.
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub base: CompatibleLieAlgebra,
    pub cocycle: VectorCocycle,
}

impl ExtensionSpec {
    pub fn new(base: CompatibleLieAlgebra, cocycle: VectorCocycle) -> Result<ExtensionSpec> {
        if cocycle.s() > 0 && cocycle.dim() != base.dim() {
            return Err(Error::DimensionMismatch { expected: base.dim(), got: cocycle.dim() });
        }
        Ok(ExtensionSpec { base, cocycle })
    }

    pub fn s(&self) -> usize {
        self.cocycle.s()
    }
}

/// Builds g_ω. Every component must satisfy the cocycle identities; the
/// output then passes verification by construction.
pub fn central_extension(spec: &ExtensionSpec) -> Result<CompatibleLieAlgebra> {
    let g = &spec.base;
    if !spec.cocycle.is_cocycle(g) {
        return Err(Error::NotACocycle);
    }
    let n = g.dim();
    let s = spec.s();
    let field = g.field();
    let mut relations = Vec::new();
    for (i, j) in pairs_asc(n) {
        for w in Bracket::BOTH {
            for (k, c) in g.bracket_basis(w, i, j).into_iter().enumerate() {
                if !c.is_zero() {
                    relations.push((w, i, j, k, c));
                }
            }
            for (t, comp) in spec.cocycle.decompose().iter().enumerate() {
                let c = comp.component(w).at(i, j).clone();
                if !c.is_zero() {
                    relations.push((w, i, j, n + t, c));
                }
            }
        }
    }
    let mut out = CompatibleLieAlgebra::from_relations(field, n + s, &relations)?;
    if let Some(label) = g.label() {
        out.set_label(alloc::format!("ext({label}; s={s})"));
    }
    Ok(out)
}

/// ann(ω) = {x : ω̲_i(x,·) = 0 and ω̃_i(x,·) = 0 for all i}, computed as the
/// kernel of the stacked component matrices.
pub fn annihilator(g: &CompatibleLieAlgebra, omega: &VectorCocycle) -> Subspace {
    let n = g.dim();
    let field = g.field();
    let mut stacked = Matrix::zeros(field, 0, n);
    for comp in omega.decompose() {
        for w in Bracket::BOTH {
            stacked = stacked.vstack(comp.component(w)).expect("same ambient");
        }
    }
    Subspace::span(field, n, &stacked.kernel_basis()).expect("kernel")
}

/// True iff Z(g) ∩ ann(ω) = 0, i.e. the extension by ω is full.
pub fn is_admissible(g: &CompatibleLieAlgebra, omega: &VectorCocycle) -> bool {
    g.center().intersect(&annihilator(g, omega)).expect("same ambient").is_zero()
}

/// Full extensions have a central component iff the classes of the components
/// are linearly dependent in H²(g, K).
pub fn has_central_component_cohomological(
    g: &CompatibleLieAlgebra,
    omega: &VectorCocycle,
) -> Result<bool> {
    if !is_admissible(g, omega) {
        return Err(Error::NotAdmissible);
    }
    let data = cohomology(g)?;
    has_central_component_with_data(&data, omega)
}

/// Same check, reusing a precomputed cohomology package.
pub fn has_central_component_with_data(
    data: &CohomologyData,
    omega: &VectorCocycle,
) -> Result<bool> {
    let s = omega.s();
    let classes: Vec<Vec<Scalar>> = omega
        .decompose()
        .iter()
        .map(|c| data.project(c))
        .collect::<Result<_>>()?;
    if s == 0 {
        return Ok(false);
    }
    let m = Matrix::from_rows(
        omega.decompose()[0].field(),
        data.dim_h2(),
        &classes,
    )?;
    Ok(m.rank() < s)
}

/// Writes a nonzero nilpotent g as a full central extension of h = g/Z(g).
///
/// The section maps the quotient basis back to the standard basis vectors at
/// the non-pivot indices of Z(g)'s canonical basis; the cocycle measures how
/// far that section is from a homomorphism, with values in Z(g).
pub fn decompose(g: &CompatibleLieAlgebra) -> Result<ExtensionSpec> {
    if g.dim() == 0 {
        return Err(Error::ZeroDimensional);
    }
    if !g.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let centre = g.center();
    let s = centre.dim();
    let (base, map) = g.quotient(&centre)?;
    let field = g.field();
    let h_dim = base.dim();

    // coordinates of a central vector in the rows of Z(g)'s canonical basis
    let centre_coords = |v: &[Scalar]| -> Vec<Scalar> {
        let pivots = centre.basis().rref().pivots;
        pivots.iter().map(|&pc| v[pc].clone()).collect()
    };

    let mut under = vec![Matrix::zeros(field, h_dim, h_dim); s];
    let mut tilde = vec![Matrix::zeros(field, h_dim, h_dim); s];
    for (a, b) in pairs_asc(h_dim) {
        let (ia, ib) = (map.section[a], map.section[b]);
        for w in Bracket::BOTH {
            // ω(x, y) = ⟨j(x), j(y)⟩_g − j(⟨x, y⟩_h)
            let in_g = g.bracket_basis(w, ia, ib);
            let in_h = base.bracket_basis(w, a, b);
            let mut lifted = vec![field.zero(); g.dim()];
            for (q, c) in in_h.iter().enumerate() {
                lifted[map.section[q]] = c.clone();
            }
            let mut diff = Vec::with_capacity(g.dim());
            for t in 0..g.dim() {
                diff.push(in_g[t].sub(&lifted[t]));
            }
            debug_assert!(centre.contains_vector(&diff));
            let coords = centre_coords(&diff);
            let mats = match w {
                Bracket::One => &mut under,
                Bracket::Two => &mut tilde,
            };
            for (t, c) in coords.into_iter().enumerate() {
                mats[t].set(a, b, c.clone());
                mats[t].set(b, a, c.neg());
            }
        }
    }
    let components = under
        .into_iter()
        .zip(tilde)
        .map(|(u, t)| ScalarCocycle::from_matrices(u, t))
        .collect::<Result<Vec<_>>>()?;
    let cocycle = VectorCocycle::assemble(components)?;
    debug_assert!(cocycle.is_cocycle(&base));
    ExtensionSpec::new(base, cocycle)
}

/// The switch of an extension spec: (g^s, ω^s).
pub fn switch_spec(spec: &ExtensionSpec) -> ExtensionSpec {
    ExtensionSpec { base: spec.base.switch(), cocycle: spec.cocycle.switch() }
}
