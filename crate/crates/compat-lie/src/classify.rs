//! The central-extension classification driver.
//!
//! Inductively on the dimension: every nilpotent compatible Lie algebra
//! either has a central component (and is parent ⊕ K for a smaller parent) or
//! is a full central extension of a smaller algebra g, classified by the
//! Aut(g)-orbits of T_s(g) ⊆ G_s(H²(g,K)), the s-dimensional subspaces whose
//! lifted components have trivial common annihilator inside Z(g).

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::CompatibleLieAlgebra;
use crate::aut::{act_on_h2_subspace, automorphisms, gl_generators, AutOptions, Automorphism};
use crate::cohomology::{cohomology, CohomologyData, VectorCocycle};
use crate::error::{Error, Result};
use crate::extension::{annihilator, central_extension, ExtensionSpec};
use crate::field::Field;
use crate::iso::{fingerprint, is_isomorphic, is_skew_isomorphic, IsoVerdict};
use crate::matrix::Matrix;
use crate::random::XorShift64;
use crate::subspace::Subspace;
use crate::table::reference_table;

/// How the final pairwise non-isomorphism cross-check runs.
#[derive(Clone, Copy, Debug)]
pub enum OracleMode {
    /// Every fingerprint-compatible pair is searched.
    Exhaustive,
    /// Only a seeded sample of the fingerprint-colliding pairs is searched.
    Sampled { seed: u64, max_pairs: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub dim_bound: usize,
    pub aut: AutOptions,
    /// None picks Exhaustive for p ≤ 5 and Sampled for larger fields.
    pub oracle: Option<OracleMode>,
    pub pairwise_check: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            dim_bound: 4,
            aut: AutOptions::default(),
            oracle: None,
            pairwise_check: true,
        }
    }
}

/// Where a classification entry came from.
#[derive(Clone, Debug)]
pub enum Provenance {
    CentralComponent {
        parent: String,
    },
    OrbitExtension {
        base: String,
        s: usize,
        subspace: Subspace,
        orbit_size: u64,
        cocycle: VectorCocycle,
    },
}

/// An Aut(g)-orbit of T_s(g): canonical representative subspace, its lifted
/// cocycle, and the orbit size.
#[derive(Clone, Debug)]
pub struct OrbitRepresentative {
    pub subspace: Subspace,
    pub cocycle: VectorCocycle,
    pub orbit_size: u64,
}

#[derive(Clone, Debug)]
pub struct ClassificationEntry {
    pub label: String,
    pub algebra: CompatibleLieAlgebra,
    pub provenance: Provenance,
    pub skew_partner: Option<String>,
    pub centre_dim: usize,
    /// the table instantiation this entry matched, when there is one
    pub normal_form: Option<CompatibleLieAlgebra>,
    /// isomorphism from the table instantiation onto this entry's algebra
    pub label_witness: Option<Matrix>,
    sort_key: (usize, u64, u64, u64),
}

impl ClassificationEntry {
    /// The preferred rendering of this class: its table normal form when the
    /// label matched, the constructed representative otherwise.
    pub fn display_algebra(&self) -> &CompatibleLieAlgebra {
        self.normal_form.as_ref().unwrap_or(&self.algebra)
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub target_dim: usize,
    pub field: Field,
    pub entries: Vec<ClassificationEntry>,
    /// diagnostics that did not abort the run (only possible with p = 2)
    pub notes: Vec<String>,
}

/// All s-dimensional subspaces of F_p^r as canonical matrices, enumerated by
/// pivot-column pattern and free entries.
pub fn subspaces_of_dim(field: Field, r: usize, s: usize) -> Result<Vec<Subspace>> {
    let Field::Prime(p) = field else {
        return Err(Error::UnsupportedField("subspace enumeration"));
    };
    if s > r {
        return Ok(Vec::new());
    }
    if s == 0 {
        return Ok(vec![Subspace::zero(field, r)]);
    }
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..s).collect();
    loop {
        // free coordinates: (row i, col j) with j > pivots[i] and j not a pivot
        let mut free = Vec::new();
        for i in 0..s {
            for j in (pivots[i] + 1)..r {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let total = p.pow(free.len() as u32);
        for mut counter in 0..total {
            let mut m = Matrix::zeros(field, s, r);
            for i in 0..s {
                m.set(i, pivots[i], field.one());
            }
            for &(i, j) in &free {
                m.set(i, j, field.from_i64((counter % p) as i64));
                counter /= p;
            }
            out.push(Subspace::from_matrix_rows(&m));
        }
        // next pivot combination in lексicographic order
        let mut idx = s;
        loop {
            if idx == 0 {
                return Ok(out);
            }
            idx -= 1;
            if pivots[idx] < r - (s - idx) {
                pivots[idx] += 1;
                for t in (idx + 1)..s {
                    pivots[t] = pivots[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Lifts a subspace of H² coordinates to the vector cocycle of its rows.
pub fn lift_subspace(data: &CohomologyData, w: &Subspace) -> Result<VectorCocycle> {
    let components = w
        .basis_rows()
        .iter()
        .map(|row| data.lift(row))
        .collect::<Result<Vec<_>>>()?;
    VectorCocycle::assemble(components)
}

/// T_s(g): the s-dimensional subspaces of H²(g,K) whose lifted components
/// have trivial common annihilator inside Z(g).
pub fn t_s_elements(
    g: &CompatibleLieAlgebra,
    data: &CohomologyData,
    s: usize,
) -> Result<Vec<Subspace>> {
    let centre = g.center();
    let mut out = Vec::new();
    for w in subspaces_of_dim(g.field(), data.dim_h2(), s)? {
        let omega = lift_subspace(data, &w)?;
        if annihilator(g, &omega).intersect(&centre)?.is_zero() {
            out.push(w);
        }
    }
    Ok(out)
}

/// How the acting group is presented to the orbit walker.
///
/// Abelian algebras have Aut(g) = GL(n, p), for which the three standard
/// generators suffice and a breadth-first closure replaces enumerating the
/// whole group. Structured algebras have small automorphism groups, which are
/// enumerated once and applied as a complete list (one sweep per orbit seed).
enum AutGens {
    Complete(Vec<Automorphism>),
    Generators(Vec<Automorphism>),
}

/// Greedily extracts a small generating set from a fully enumerated group:
/// walk the list, keep any element not yet in the closure of the kept ones.
fn greedy_generators(list: &[Automorphism], field: Field, n: usize) -> Vec<Automorphism> {
    use alloc::collections::BTreeSet;
    let identity = Matrix::identity(field, n);
    let mut gens: Vec<Automorphism> = Vec::new();
    let mut closure: BTreeSet<String> = BTreeSet::new();
    closure.insert(identity.canon_key());
    for phi in list {
        if closure.contains(&phi.matrix.canon_key()) {
            continue;
        }
        gens.push(phi.clone());
        // re-close under the kept generators
        closure.clear();
        closure.insert(identity.canon_key());
        let mut frontier = alloc::vec![identity.clone()];
        while let Some(m) = frontier.pop() {
            for g in &gens {
                let next = g.matrix.mul(&m).expect("square");
                if closure.insert(next.canon_key()) {
                    frontier.push(next);
                }
            }
        }
        if closure.len() == list.len() {
            break;
        }
    }
    gens
}

fn aut_gens(g: &CompatibleLieAlgebra, aut_opts: &AutOptions) -> Result<AutGens> {
    if g.is_abelian() {
        return Ok(AutGens::Generators(gl_generators(g.field(), g.dim())));
    }
    let list: Vec<Automorphism> = automorphisms(g, aut_opts)?.collect();
    if list.len() > 2000 {
        let gens = greedy_generators(&list, g.field(), g.dim());
        Ok(AutGens::Generators(gens))
    } else {
        Ok(AutGens::Complete(list))
    }
}

fn orbit_closure(
    data: &CohomologyData,
    seed: &Subspace,
    gens: &AutGens,
) -> Result<alloc::collections::BTreeMap<String, Subspace>> {
    use alloc::collections::BTreeMap;
    let mut orbit: BTreeMap<String, Subspace> = BTreeMap::new();
    orbit.insert(seed.canon_key(), seed.clone());
    match gens {
        AutGens::Complete(list) => {
            for phi in list {
                let moved = act_on_h2_subspace(data, seed, phi)?;
                orbit.entry(moved.canon_key()).or_insert(moved);
            }
        }
        AutGens::Generators(list) => {
            let mut frontier: Vec<Subspace> = alloc::vec![seed.clone()];
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for w in &frontier {
                    for phi in list {
                        let moved = act_on_h2_subspace(data, w, phi)?;
                        let key = moved.canon_key();
                        if let alloc::collections::btree_map::Entry::Vacant(e) = orbit.entry(key) {
                            e.insert(moved.clone());
                            next.push(moved);
                        }
                    }
                }
                frontier = next;
            }
        }
    }
    Ok(orbit)
}

/// Partitions T_s(g) into Aut(g)-orbits. The representative is the
/// lexicographically minimal canonical matrix in each orbit.
pub fn orbits(
    g: &CompatibleLieAlgebra,
    data: &CohomologyData,
    s: usize,
    aut_opts: &AutOptions,
) -> Result<Vec<OrbitRepresentative>> {
    use alloc::collections::BTreeMap;

    let elements = t_s_elements(g, data, s)?;
    if elements.is_empty() {
        return Ok(Vec::new());
    }
    let gens = aut_gens(g, aut_opts)?;
    let mut pending: BTreeMap<String, Subspace> =
        elements.into_iter().map(|w| (w.canon_key(), w)).collect();
    let total = pending.len() as u64;
    let mut reps = Vec::new();
    let mut covered = 0u64;
    while let Some((_, seed)) = pending.pop_first() {
        let orbit = orbit_closure(data, &seed, &gens)?;
        for key in orbit.keys() {
            pending.remove(key);
        }
        let (_, rep) = orbit.iter().next().expect("orbit contains its seed");
        let orbit_size = orbit.len() as u64;
        covered += orbit_size;
        let cocycle = lift_subspace(data, rep)?;
        reps.push(OrbitRepresentative { subspace: rep.clone(), cocycle, orbit_size });
    }
    debug_assert_eq!(covered, total, "orbits must partition T_s");
    Ok(reps)
}

/// The canonical representative (lexicographically minimal canonical matrix)
/// of the Aut(g)-orbit of a given subspace of H² coordinates.
pub fn canonical_orbit_rep(
    g: &CompatibleLieAlgebra,
    data: &CohomologyData,
    w: &Subspace,
    aut_opts: &AutOptions,
) -> Result<Subspace> {
    let gens = aut_gens(g, aut_opts)?;
    let orbit = orbit_closure(data, w, &gens)?;
    Ok(orbit.into_values().next().expect("orbit contains its seed"))
}

/// A unit of classification work: all orbit extensions of one base in one
/// extension dimension.
#[derive(Clone, Debug)]
pub struct OrbitJob {
    pub index: usize,
    pub base: CompatibleLieAlgebra,
    pub base_label: String,
    pub s: usize,
    pub aut: AutOptions,
}

#[derive(Clone, Debug)]
pub struct OrbitJobResult {
    pub index: usize,
    pub reps: Vec<OrbitRepresentative>,
}

/// Computes one job; pure, so runners may execute jobs in any order or in
/// parallel, as long as all results come back.
pub fn run_orbit_job(job: &OrbitJob) -> Result<OrbitJobResult> {
    let data = cohomology(&job.base)?;
    let reps = if data.dim_h2() < job.s {
        Vec::new()
    } else {
        orbits(&job.base, &data, job.s, &job.aut)?
    };
    Ok(OrbitJobResult { index: job.index, reps })
}

/// Strategy for executing a batch of orbit jobs.
pub trait JobRunner {
    fn run(&mut self, jobs: Vec<OrbitJob>) -> Result<Vec<OrbitJobResult>>;
}

/// Runs jobs one after another on the current thread.
pub struct SequentialRunner;

impl JobRunner for SequentialRunner {
    fn run(&mut self, jobs: Vec<OrbitJob>) -> Result<Vec<OrbitJobResult>> {
        jobs.iter().map(run_orbit_job).collect()
    }
}

pub fn classify(n: usize, field: Field, opts: &ClassifyOptions) -> Result<Classification> {
    classify_with_runner(n, field, opts, &mut SequentialRunner)
}

/// The inductive driver. Per dimension d ≤ n: one extension per Aut-orbit of
/// T_s over every (d−s)-dimensional entry, then the central-component
/// algebras parent ⊕ K; labels come from matching against the table.
pub fn classify_with_runner(
    n: usize,
    field: Field,
    opts: &ClassifyOptions,
    runner: &mut dyn JobRunner,
) -> Result<Classification> {
    let Field::Prime(p) = field else {
        return Err(Error::UnsupportedField("classification"));
    };
    if n > opts.dim_bound {
        return Err(Error::ResourceBound(alloc::format!(
            "target dimension {n} exceeds bound {}",
            opts.dim_bound
        )));
    }
    let table = reference_table(field)?;
    let table_fps: Vec<crate::iso::Fingerprint> =
        table.iter().map(|e| fingerprint(&e.algebra)).collect();
    let mut notes = Vec::new();

    // dimension 0: the zero algebra seeds the induction
    let zero = ClassificationEntry {
        label: "0".to_string(),
        algebra: CompatibleLieAlgebra::abelian(field, 0),
        provenance: Provenance::CentralComponent { parent: "0".to_string() },
        skew_partner: None,
        centre_dim: 0,
        normal_form: None,
        label_witness: None,
        sort_key: (0, 0, 0, 0),
    };
    let mut by_dim: Vec<Vec<ClassificationEntry>> = vec![vec![zero]];

    for d in 1..=n {
        let mut raw: Vec<(CompatibleLieAlgebra, Provenance)> = Vec::new();
        // full central extensions without central components, by orbits
        let mut jobs = Vec::new();
        for s in 1..d {
            for base in &by_dim[d - s] {
                jobs.push(OrbitJob {
                    index: jobs.len(),
                    base: base.algebra.clone(),
                    base_label: base.label.clone(),
                    s,
                    aut: opts.aut,
                });
            }
        }
        let mut results = runner.run(jobs.clone())?;
        results.sort_by_key(|r| r.index);
        if results.len() != jobs.len() {
            return Err(Error::Diagnostic("job runner lost results".to_string()));
        }
        for (job, result) in jobs.iter().zip(&results) {
            for rep in &result.reps {
                let spec = ExtensionSpec::new(job.base.clone(), rep.cocycle.clone())?;
                let algebra = central_extension(&spec)?;
                raw.push((
                    algebra,
                    Provenance::OrbitExtension {
                        base: job.base_label.clone(),
                        s: job.s,
                        subspace: rep.subspace.clone(),
                        orbit_size: rep.orbit_size,
                        cocycle: rep.cocycle.clone(),
                    },
                ));
            }
        }
        // algebras with central components: parent ⊕ K
        for parent in &by_dim[d - 1] {
            raw.push((
                parent.algebra.direct_sum_with_abelian(1),
                Provenance::CentralComponent { parent: parent.label.clone() },
            ));
        }

        // label by table match; unmatched entries get fresh indices
        let max_q = table.iter().filter(|e| e.dim == d).map(|e| e.q).max().unwrap_or(0);
        let mut entries = Vec::new();
        let mut unmatched: Vec<(CompatibleLieAlgebra, Provenance)> = Vec::new();
        for (algebra, provenance) in raw {
            match crate::table::match_against_with_fps(&algebra, &table, &table_fps) {
                Ok(m) => {
                    let te = table.iter().find(|e| e.label == m.label).expect("label exists");
                    entries.push(ClassificationEntry {
                        label: m.label.clone(),
                        algebra,
                        provenance,
                        skew_partner: None,
                        centre_dim: 0,
                        normal_form: Some(te.algebra.clone()),
                        label_witness: Some(m.witness),
                        sort_key: (
                            te.q,
                            te.alpha.unwrap_or(0),
                            te.beta.unwrap_or(0),
                            0,
                        ),
                    });
                }
                Err(Error::Diagnostic(_)) => unmatched.push((algebra, provenance)),
                Err(e) => return Err(e),
            }
        }
        unmatched.sort_by_key(|(a, _)| a.canon_key());
        for (k, (algebra, provenance)) in unmatched.into_iter().enumerate() {
            let label = crate::table::format_label(d, max_q + k + 1, None, None);
            entries.push(ClassificationEntry {
                label,
                algebra,
                provenance,
                skew_partner: None,
                centre_dim: 0,
                normal_form: None,
                label_witness: None,
                sort_key: (max_q + k + 1, 0, 0, 1),
            });
        }
        entries.sort_by_key(|a| a.sort_key);
        for e in &mut entries {
            e.centre_dim = e.algebra.center().dim();
        }
        by_dim.push(entries);
    }

    let mut entries = by_dim.pop().expect("target dimension built");
    if opts.pairwise_check {
        let mode = opts.oracle.unwrap_or(if p <= 5 {
            OracleMode::Exhaustive
        } else {
            OracleMode::Sampled { seed: 1, max_pairs: 200 }
        });
        let violations = pairwise_non_isomorphism_violations(&entries, mode)?;
        for v in violations {
            if p == 2 {
                notes.push(v);
            } else {
                return Err(Error::Diagnostic(v));
            }
        }
    }
    fill_skew_partners(&mut entries)?;
    Ok(Classification { target_dim: n, field, entries, notes })
}

/// Checks pairwise non-isomorphism, fingerprint-filtered. Returns one message
/// per violating pair.
fn pairwise_non_isomorphism_violations(
    entries: &[ClassificationEntry],
    mode: OracleMode,
) -> Result<Vec<String>> {
    let fps: Vec<_> = entries.iter().map(|e| fingerprint(&e.algebra)).collect();
    let mut colliding: Vec<(usize, usize)> = Vec::new();
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            if fps[i].matches_iso(&fps[j]) {
                colliding.push((i, j));
            }
        }
    }
    if let OracleMode::Sampled { seed, max_pairs } = mode {
        if colliding.len() > max_pairs {
            let mut rng = XorShift64::new(seed);
            let mut sampled = Vec::with_capacity(max_pairs);
            for _ in 0..max_pairs {
                sampled.push(colliding[rng.below(colliding.len() as u64) as usize]);
            }
            colliding = sampled;
        }
    }
    let mut violations = Vec::new();
    for (i, j) in colliding {
        if let IsoVerdict::Isomorphic(_) =
            is_isomorphic(&entries[i].algebra, &entries[j].algebra)?
        {
            violations.push(alloc::format!(
                "entries {} and {} are isomorphic",
                entries[i].label,
                entries[j].label
            ));
        }
    }
    Ok(violations)
}

/// Computes the skew-isomorphism pairing within a labeled family of algebras.
/// Every item is paired with exactly one item (possibly itself), and the
/// pairing is an involution.
pub fn skew_pairs(items: &[(String, CompatibleLieAlgebra)]) -> Result<Vec<(String, String)>> {
    let fps: Vec<_> = items.iter().map(|(_, a)| fingerprint(a)).collect();
    let mut partner: Vec<Option<usize>> = vec![None; items.len()];
    for i in 0..items.len() {
        if partner[i].is_some() {
            continue;
        }
        let mut found = None;
        for j in 0..items.len() {
            if partner[j].is_some() && partner[j] != Some(i) {
                continue;
            }
            if !fps[i].matches_skew(&fps[j]) {
                continue;
            }
            if is_skew_isomorphic(&items[i].1, &items[j].1)?.is_isomorphic() {
                found = Some(j);
                break;
            }
        }
        let j = found.ok_or_else(|| {
            Error::Diagnostic(alloc::format!(
                "no skew partner found for {} in the given family",
                items[i].0
            ))
        })?;
        partner[i] = Some(j);
        partner[j] = Some(i);
    }
    Ok(items
        .iter()
        .enumerate()
        .map(|(i, (label, _))| (label.clone(), items[partner[i].expect("total")].0.clone()))
        .collect())
}

/// Fills `skew_partner` on classification entries via the oracle.
fn fill_skew_partners(entries: &mut [ClassificationEntry]) -> Result<()> {
    let items: Vec<(String, CompatibleLieAlgebra)> =
        entries.iter().map(|e| (e.label.clone(), e.algebra.clone())).collect();
    let pairs = skew_pairs(&items)?;
    for (e, (_, partner)) in entries.iter_mut().zip(pairs) {
        e.skew_partner = Some(partner);
    }
    Ok(())
}
