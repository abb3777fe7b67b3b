//! Regression tests for the orbit families over the one-parameter bases.
//!
//! Over N_{3,4}^α the class of γ1 + βγ4 + δγ6 merges with γ1 + βγ4 exactly
//! when β ≠ α: at β = α the γ6 contributions of the action cancel, so the
//! twisted classes form one additional orbit per α. The resulting algebra
//! [e1,e2]=e3, [e2,e3]=e4, {e1,e2}=αe3+e4, {e2,e3}=αe4 can be told apart from
//! N_{4,18}^{α,β} by the degeneration profile of the bracket pencil
//! λ[-,-] + μ{-,-}.

use compat_lie::algebra::{Bracket, CompatibleLieAlgebra};
use compat_lie::aut::AutOptions;
use compat_lie::classify::{canonical_orbit_rep, orbits};
use compat_lie::cohomology::{cohomology, CohomologyData, ScalarCocycle};
use compat_lie::extension::{central_extension, ExtensionSpec};
use compat_lie::field::Field;
use compat_lie::iso::{is_isomorphic, verify_iso_witness};
use compat_lie::subspace::Subspace;

fn gamma(field: Field, index: usize) -> ScalarCocycle {
    let mut coords = vec![field.zero(); 6];
    coords[index - 1] = field.one();
    ScalarCocycle::from_coords(field, 3, &coords).unwrap()
}

fn n34(field: Field, alpha: i64) -> CompatibleLieAlgebra {
    CompatibleLieAlgebra::from_relations_i64(
        field,
        3,
        &[(Bracket::One, 0, 1, 2, 1), (Bracket::Two, 0, 1, 2, alpha)],
    )
}

fn class_span(data: &CohomologyData, c: &ScalarCocycle) -> Subspace {
    let coords = data.project(c).unwrap();
    Subspace::span(c.field(), data.dim_h2(), &[coords]).unwrap()
}

#[test]
fn gamma6_twist_merges_exactly_when_beta_differs_from_alpha() {
    let f3 = Field::prime(3).unwrap();
    let alpha = 1i64;
    let g = n34(f3, alpha);
    let data = cohomology(&g).unwrap();
    let opts = AutOptions::default();
    let rep = |c: &ScalarCocycle| {
        canonical_orbit_rep(&g, &data, &class_span(&data, c), &opts).unwrap()
    };
    let fam = |beta: i64, delta: i64| {
        gamma(f3, 1)
            .add(&gamma(f3, 4).scale(&f3.from_i64(beta)))
            .unwrap()
            .add(&gamma(f3, 6).scale(&f3.from_i64(delta)))
            .unwrap()
    };
    // β = α: the twisted classes split off as one orbit
    assert_ne!(rep(&fam(alpha, 0)), rep(&fam(alpha, 1)));
    assert_eq!(rep(&fam(alpha, 1)), rep(&fam(alpha, 2)));
    // β ≠ α: the twist is absorbed
    assert_eq!(rep(&fam(2, 0)), rep(&fam(2, 1)));
    // and δ alone (β = 0) is absorbed through the twisted coboundary
    assert_eq!(rep(&fam(0, 0)), rep(&fam(0, 1)));
}

#[test]
fn orbit_counts_per_alpha() {
    let opts = AutOptions::default();
    // F_3: 1 (γ1) + 1 (γ4) + 2 (γ1+βγ4) + 1 (γ1+βγ5) + 1 (twisted) = 6
    let f3 = Field::prime(3).unwrap();
    for a in 1..3i64 {
        let g = n34(f3, a);
        let data = cohomology(&g).unwrap();
        assert_eq!(orbits(&g, &data, 1, &opts).unwrap().len(), 6);
    }
    // F_5: 1 + 1 + 4 + 1 + 1 = 8
    let f5 = Field::prime(5).unwrap();
    let g = n34(f5, 2);
    let data = cohomology(&g).unwrap();
    let reps = orbits(&g, &data, 1, &opts).unwrap();
    assert_eq!(reps.len(), 8);
    let total: u64 = reps.iter().map(|r| r.orbit_size).sum();
    assert_eq!(total, 780);
}

#[test]
fn twisted_extension_differs_from_the_two_parameter_family() {
    let f3 = Field::prime(3).unwrap();
    let alpha = 1i64;
    // extension of N_{3,4}^α by γ1 + αγ4 + γ6
    let omega = gamma(f3, 1)
        .add(&gamma(f3, 4).scale(&f3.from_i64(alpha)))
        .unwrap()
        .add(&gamma(f3, 6))
        .unwrap();
    let spec = ExtensionSpec::new(
        n34(f3, alpha),
        compat_lie::cohomology::VectorCocycle::assemble(vec![omega]).unwrap(),
    )
    .unwrap();
    let twisted = central_extension(&spec).unwrap();
    assert!(twisted.verify().is_compatible_lie_algebra());

    // normal form: [e1,e2]=e3, [e2,e3]=e4, {e1,e2}=αe3+e4, {e2,e3}=αe4
    let normal = CompatibleLieAlgebra::from_relations_i64(
        f3,
        4,
        &[
            (Bracket::One, 0, 1, 2, 1),
            (Bracket::One, 1, 2, 3, 1),
            (Bracket::Two, 0, 1, 2, alpha),
            (Bracket::Two, 0, 1, 3, 1),
            (Bracket::Two, 1, 2, 3, alpha),
        ],
    );
    let v = is_isomorphic(&twisted, &normal).unwrap();
    let w = v.witness().expect("normal form is in the twisted orbit");
    assert!(verify_iso_witness(&twisted, &normal, w));

    // not isomorphic to any N_{4,18}^{α,β}
    for b in 1..3i64 {
        let n418 = CompatibleLieAlgebra::from_relations_i64(
            f3,
            4,
            &[
                (Bracket::One, 0, 1, 2, 1),
                (Bracket::One, 1, 2, 3, 1),
                (Bracket::Two, 0, 1, 2, alpha),
                (Bracket::Two, 1, 2, 3, b),
            ],
        );
        assert!(!is_isomorphic(&twisted, &n418).unwrap().is_isomorphic(), "beta {b}");
    }

    // pencil invariant: at (λ, μ) = (-α, 1) the twisted algebra still has a
    // one-dimensional derived subalgebra, while N_{4,18}^{α,α} goes abelian
    let pencil_derived = |g: &CompatibleLieAlgebra, lam: i64, mu: i64| {
        let f = g.field();
        let mut rows = Vec::new();
        for i in 0..g.dim() {
            for j in (i + 1)..g.dim() {
                let mut e_i = vec![f.zero(); g.dim()];
                e_i[i] = f.one();
                let mut e_j = vec![f.zero(); g.dim()];
                e_j[j] = f.one();
                let b1 = g.bracket(Bracket::One, &e_i, &e_j).unwrap();
                let b2 = g.bracket(Bracket::Two, &e_i, &e_j).unwrap();
                let combo: Vec<_> = b1
                    .iter()
                    .zip(&b2)
                    .map(|(a, b)| a.mul(&f.from_i64(lam)).add(&b.mul(&f.from_i64(mu))))
                    .collect();
                rows.push(combo);
            }
        }
        Subspace::span(f, g.dim(), &rows).unwrap().dim()
    };
    let n418_aa = CompatibleLieAlgebra::from_relations_i64(
        f3,
        4,
        &[
            (Bracket::One, 0, 1, 2, 1),
            (Bracket::One, 1, 2, 3, 1),
            (Bracket::Two, 0, 1, 2, alpha),
            (Bracket::Two, 1, 2, 3, alpha),
        ],
    );
    assert_eq!(pencil_derived(&normal, -alpha, 1), 1);
    assert_eq!(pencil_derived(&n418_aa, -alpha, 1), 0);
}
