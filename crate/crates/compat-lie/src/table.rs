//! The classification table of nilpotent compatible Lie algebras of
//! dimension at most 4, instantiated over a prime field.
//!
//! Rows carry up to two nonzero parameters. Families whose stated isomorphism
//! condition is "the parameter ratio has a cube root" are deduplicated to one
//! representative per cube class of F_p^×; the other families keep one entry
//! per parameter value.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Bracket, CompatibleLieAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::iso::{fingerprint, is_isomorphic, Fingerprint, IsoVerdict};
use crate::matrix::Matrix;

/// Which nonzero parameters a row takes, and how they deduplicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowParams {
    None,
    /// α over all of F_p^×.
    Alpha,
    /// β over all of F_p^×.
    Beta,
    /// β up to the cube-root condition: one value per class of F_p^× mod cubes.
    BetaModCubes,
    /// (α, β) with α exact and β over all of F_p^×.
    AlphaBeta,
    /// (α, β) with α exact and β up to the cube-root condition.
    AlphaBetaModCubes,
}

type BuildFn = fn(Field, i64, i64) -> CompatibleLieAlgebra;

pub struct RowSpec {
    pub dim: usize,
    pub q: usize,
    pub params: RowParams,
    build: BuildFn,
}

/// One instantiated isomorphism class from the table.
#[derive(Clone, Debug)]
pub struct TableEntry {
    pub label: String,
    pub dim: usize,
    pub q: usize,
    pub alpha: Option<u64>,
    pub beta: Option<u64>,
    pub algebra: CompatibleLieAlgebra,
}

impl TableEntry {
    /// Deterministic ordering key: dimension, row, then parameter values.
    pub fn sort_key(&self) -> (usize, usize, u64, u64) {
        (self.dim, self.q, self.alpha.unwrap_or(0), self.beta.unwrap_or(0))
    }
}

macro_rules! row {
    ($dim:expr, $q:expr, $params:expr, |$f:ident, $a:ident, $b:ident| $body:expr) => {
        RowSpec {
            dim: $dim,
            q: $q,
            params: $params,
            build: {
                fn build($f: Field, $a: i64, $b: i64) -> CompatibleLieAlgebra {
                    $body
                }
                build
            },
        }
    };
}

/// All rows of the dimension ≤ 4 table. q = 0 encodes the unindexed labels of
/// dimensions 1 and 2.
pub fn rows() -> Vec<RowSpec> {
    use Bracket::{One, Two};
    vec![
        row!(1, 0, RowParams::None, |f, _a, _b| CompatibleLieAlgebra::abelian(f, 1)),
        row!(2, 0, RowParams::None, |f, _a, _b| CompatibleLieAlgebra::abelian(f, 2)),
        row!(3, 1, RowParams::None, |f, _a, _b| CompatibleLieAlgebra::abelian(f, 3)),
        row!(3, 2, RowParams::None, |f, _a, _b| {
            CompatibleLieAlgebra::from_relations_i64(f, 3, &[(One, 0, 1, 2, 1)])
        }),
        row!(3, 3, RowParams::None, |f, _a, _b| {
            CompatibleLieAlgebra::from_relations_i64(f, 3, &[(Two, 0, 1, 2, 1)])
        }),
        row!(3, 4, RowParams::Alpha, |f, a, _b| {
            CompatibleLieAlgebra::from_relations_i64(f, 3, &[(One, 0, 1, 2, 1), (Two, 0, 1, 2, a)])
        }),
        row!(4, 1, RowParams::None, |f, _a, _b| CompatibleLieAlgebra::abelian(f, 4)),
        row!(4, 2, RowParams::None, |f, _a, _b| {
            CompatibleLieAlgebra::from_relations_i64(f, 4, &[(One, 0, 1, 2, 1)])
        }),
        row!(4, 3, RowParams::None, |f, _a, _b| {
            CompatibleLieAlgebra::from_relations_i64(f, 4, &[(Two, 0, 1, 2, 1)])
        }),
        row!(4, 4, RowParams::Alpha, |f, a, _b| {
            CompatibleLieAlgebra::from_relations_i64(f, 4, &[(One, 0, 1, 2, 1), (Two, 0, 1, 2, a)])
        }),
        row!(4, 5, RowParams::None, |f, _a, _b| {
            CompatibleLieAlgebra::from_relations_i64(f, 4, &[(One, 1, 2, 3, 1), (Two, 0, 2, 3, 1)])
        }),
        row!(4, 6, RowParams::None, |f, _a, _b| {
            CompatibleLieAlgebra::from_relations_i64(f, 4, &[(One, 0, 1, 2, 1), (One, 1, 2, 3, 1)])
        }),
        row!(4, 7, RowParams::None, |f, _a, _b| {
            CompatibleLieAlgebra::from_relations_i64(f, 4, &[(One, 0, 1, 2, 1), (Two, 1, 2, 3, 1)])
        }),
        row!(4, 8, RowParams::Beta, |f, _a, b| {
            CompatibleLieAlgebra::from_relations_i64(
                f,
                4,
                &[(One, 0, 1, 2, 1), (One, 1, 2, 3, 1), (Two, 1, 2, 3, b)],
            )
        }),
        row!(4, 9, RowParams::BetaModCubes, |f, _a, b| {
            CompatibleLieAlgebra::from_relations_i64(
                f,
                4,
                &[(One, 0, 1, 2, 1), (One, 1, 2, 3, 1), (Two, 0, 2, 3, b)],
            )
        }),
        row!(4, 10, RowParams::None, |f, _a, _b| {
            CompatibleLieAlgebra::from_relations_i64(
                f,
                4,
                &[(One, 0, 1, 2, 1), (One, 1, 2, 3, 1), (Two, 0, 1, 3, 1)],
            )
        }),
        row!(4, 11, RowParams::None, |f, _a, _b| {
            CompatibleLieAlgebra::from_relations_i64(f, 4, &[(Two, 0, 1, 2, 1), (Two, 1, 2, 3, 1)])
        }),
        row!(4, 12, RowParams::None, |f, _a, _b| {
            CompatibleLieAlgebra::from_relations_i64(f, 4, &[(Two, 0, 1, 2, 1), (One, 1, 2, 3, 1)])
        }),
        row!(4, 13, RowParams::Beta, |f, _a, b| {
            CompatibleLieAlgebra::from_relations_i64(
                f,
                4,
                &[(Two, 0, 1, 2, 1), (Two, 1, 2, 3, 1), (One, 1, 2, 3, b)],
            )
        }),
        row!(4, 14, RowParams::BetaModCubes, |f, _a, b| {
            CompatibleLieAlgebra::from_relations_i64(
                f,
                4,
                &[(Two, 0, 1, 2, 1), (Two, 1, 2, 3, 1), (One, 0, 2, 3, b)],
            )
        }),
        row!(4, 15, RowParams::None, |f, _a, _b| {
            CompatibleLieAlgebra::from_relations_i64(
                f,
                4,
                &[(Two, 0, 1, 2, 1), (Two, 1, 2, 3, 1), (One, 0, 1, 3, 1)],
            )
        }),
        row!(4, 16, RowParams::Alpha, |f, a, _b| {
            CompatibleLieAlgebra::from_relations_i64(
                f,
                4,
                &[(One, 0, 1, 2, 1), (One, 1, 2, 3, 1), (Two, 0, 1, 2, a)],
            )
        }),
        row!(4, 17, RowParams::Alpha, |f, a, _b| {
            CompatibleLieAlgebra::from_relations_i64(
                f,
                4,
                &[(One, 0, 1, 2, 1), (Two, 0, 1, 2, a), (Two, 1, 2, 3, 1)],
            )
        }),
        row!(4, 18, RowParams::AlphaBeta, |f, a, b| {
            CompatibleLieAlgebra::from_relations_i64(
                f,
                4,
                &[(One, 0, 1, 2, 1), (One, 1, 2, 3, 1), (Two, 0, 1, 2, a), (Two, 1, 2, 3, b)],
            )
        }),
        row!(4, 19, RowParams::AlphaBetaModCubes, |f, a, b| {
            CompatibleLieAlgebra::from_relations_i64(
                f,
                4,
                &[(One, 0, 1, 2, 1), (One, 1, 2, 3, 1), (Two, 0, 1, 2, a), (Two, 0, 2, 3, b)],
            )
        }),
    ]
}

/// The set {x³ : x ∈ F_p^×}, by brute-force cubing.
pub fn cubes(p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..p).map(|x| (x * x % p) * x % p).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Whether a/b has a cube root in F_p.
pub fn cube_ratio(p: u64, a: u64, b: u64) -> bool {
    // a/b = a * b^(p-2)
    let mut inv = 1u64;
    let mut base = b % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    cubes(p).contains(&(a % p * inv % p))
}

/// Minimal representatives of F_p^× modulo cubes.
pub fn cube_class_reps(p: u64) -> Vec<u64> {
    let mut reps: Vec<u64> = Vec::new();
    for v in 1..p {
        if !reps.iter().any(|&r| cube_ratio(p, v, r)) {
            reps.push(v);
        }
    }
    reps
}

pub fn format_label(dim: usize, q: usize, alpha: Option<u64>, beta: Option<u64>) -> String {
    let base = if q == 0 {
        alloc::format!("N_{dim}")
    } else {
        alloc::format!("N_{{{dim},{q}}}")
    };
    match (alpha, beta) {
        (None, None) => base,
        (Some(a), None) => alloc::format!("{base}^{{α={a}}}"),
        (None, Some(b)) => alloc::format!("{base}^{{β={b}}}"),
        (Some(a), Some(b)) => alloc::format!("{base}^{{α={a},β={b}}}"),
    }
}

/// Instantiates every row over F_p, deduplicating parameter values by the
/// row's stated isomorphism condition.
pub fn reference_table(field: Field) -> Result<Vec<TableEntry>> {
    let Field::Prime(p) = field else {
        return Err(Error::UnsupportedField("table instantiation"));
    };
    let units: Vec<u64> = (1..p).collect();
    let cube_reps = cube_class_reps(p);
    let mut out = Vec::new();
    for row in rows() {
        let param_grid: Vec<(Option<u64>, Option<u64>)> = match row.params {
            RowParams::None => vec![(None, None)],
            RowParams::Alpha => units.iter().map(|&a| (Some(a), None)).collect(),
            RowParams::Beta => units.iter().map(|&b| (None, Some(b))).collect(),
            RowParams::BetaModCubes => cube_reps.iter().map(|&b| (None, Some(b))).collect(),
            RowParams::AlphaBeta => units
                .iter()
                .flat_map(|&a| units.iter().map(move |&b| (Some(a), Some(b))))
                .collect(),
            RowParams::AlphaBetaModCubes => units
                .iter()
                .flat_map(|&a| cube_reps.iter().map(move |&b| (Some(a), Some(b))))
                .collect(),
        };
        for (alpha, beta) in param_grid {
            let label = format_label(row.dim, row.q, alpha, beta);
            let algebra = (row.build)(
                field,
                alpha.unwrap_or(0) as i64,
                beta.unwrap_or(0) as i64,
            )
            .with_label(label.clone());
            debug_assert!(algebra.verify().is_compatible_lie_algebra());
            out.push(TableEntry { label, dim: row.dim, q: row.q, alpha, beta, algebra });
        }
    }
    out.sort_by_key(TableEntry::sort_key);
    Ok(out)
}

/// The result of matching an algebra against the table.
pub struct TableMatch {
    pub label: String,
    pub witness: Matrix,
}

/// Finds a table entry isomorphic to g; reports a diagnostic error when the
/// algebra falls outside the built-in table.
pub fn match_against(g: &CompatibleLieAlgebra, table: &[TableEntry]) -> Result<TableMatch> {
    let fps: Vec<Fingerprint> = table.iter().map(|e| fingerprint(&e.algebra)).collect();
    match_against_with_fps(g, table, &fps)
}

/// Like [`match_against`], reusing precomputed fingerprints of the table.
pub fn match_against_with_fps(
    g: &CompatibleLieAlgebra,
    table: &[TableEntry],
    table_fps: &[Fingerprint],
) -> Result<TableMatch> {
    let fp = fingerprint(g);
    for (entry, entry_fp) in table.iter().zip(table_fps) {
        if entry.dim != g.dim() || !fp.matches_iso(entry_fp) {
            continue;
        }
        if let IsoVerdict::Isomorphic(w) = is_isomorphic(&entry.algebra, g)? {
            return Ok(TableMatch { label: entry.label.clone(), witness: w });
        }
    }
    Err(Error::Diagnostic(alloc::format!(
        "no table label matches this {}-dimensional algebra; it lies outside the built-in classification table",
        g.dim()
    )))
}

/// Convenience wrapper building the table for g's field.
pub fn match_label(g: &CompatibleLieAlgebra) -> Result<TableMatch> {
    if !g.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let table = reference_table(g.field())?;
    match_against(g, &table)
}
