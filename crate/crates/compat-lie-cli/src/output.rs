//! Human- and machine-readable renderings of classification results: the
//! aligned text table, CSV, the full JSON with provenance and witnesses, and
//! the run manifest. Outputs contain no timestamps, so identical runs produce
//! byte-identical files.

use compat_lie::algebra::{pairs_asc, Bracket, CompatibleLieAlgebra};
use compat_lie::classify::{Classification, ClassificationEntry, Provenance};
use compat_lie::field::Field;
use compat_lie::table::TableEntry;
use serde_json::{json, Value};

use crate::json::{algebra_to_json, field_to_json, matrix_to_json, vector_cocycle_to_json};

fn term(coeff: &str, k: usize) -> String {
    if coeff == "1" {
        format!("e{}", k + 1)
    } else if coeff.contains('/') || coeff.starts_with('-') {
        format!("({coeff})e{}", k + 1)
    } else {
        format!("{coeff}e{}", k + 1)
    }
}

/// The nonzero products of an algebra, rendered like `[e1,e2]=e3`.
pub fn relations(g: &CompatibleLieAlgebra) -> Vec<String> {
    let mut out = Vec::new();
    for (i, j) in pairs_asc(g.dim()) {
        for w in Bracket::BOTH {
            let coeffs = g.bracket_basis(w, i, j);
            let terms: Vec<String> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| term(&c.to_serial(), k))
                .collect();
            if terms.is_empty() {
                continue;
            }
            let (open, close) = match w {
                Bracket::One => ('[', ']'),
                Bracket::Two => ('{', '}'),
            };
            out.push(format!("{open}e{},e{}{close}={}", i + 1, j + 1, terms.join("+")));
        }
    }
    out
}

fn relations_cell(g: &CompatibleLieAlgebra) -> String {
    let rels = relations(g);
    if rels.is_empty() {
        format!("abelian of dimension {}", g.dim())
    } else {
        rels.join("  ")
    }
}

/// Aligned three-column table: label, relations, centre dimension.
pub fn text_table(rows: &[(String, &CompatibleLieAlgebra, usize)]) -> String {
    let header = ("Algebra".to_string(), "Relations".to_string(), "Z dim".to_string());
    let body: Vec<(String, String, String)> = rows
        .iter()
        .map(|(label, g, zdim)| (label.clone(), relations_cell(g), zdim.to_string()))
        .collect();
    let w1 = body.iter().map(|r| r.0.chars().count()).chain([header.0.len()]).max().unwrap_or(0);
    let w2 = body.iter().map(|r| r.1.chars().count()).chain([header.1.len()]).max().unwrap_or(0);
    let mut out = String::new();
    let pad = |s: &str, w: usize| {
        let len = s.chars().count();
        format!("{s}{}", " ".repeat(w.saturating_sub(len)))
    };
    out.push_str(&format!("{}  {}  {}\n", pad(&header.0, w1), pad(&header.1, w2), header.2));
    out.push_str(&format!("{}\n", "-".repeat(w1 + w2 + 9)));
    for (a, b, c) in &body {
        out.push_str(&format!("{}  {}  {}\n", pad(a, w1), pad(b, w2), c));
    }
    out
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV: label, dim, centre dim, relations.
pub fn csv_table(rows: &[(String, &CompatibleLieAlgebra, usize)]) -> String {
    let mut out = String::from("label,dim,centre_dim,relations\n");
    for (label, g, zdim) in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            csv_escape(label),
            g.dim(),
            zdim,
            csv_escape(&relations(g).join("; "))
        ));
    }
    out
}

fn provenance_to_json(p: &Provenance) -> Value {
    match p {
        Provenance::CentralComponent { parent } => {
            json!({ "kind": "central_component", "parent": parent })
        }
        Provenance::OrbitExtension { base, s, subspace, orbit_size, cocycle } => json!({
            "kind": "orbit_extension",
            "base": base,
            "s": s,
            "subspace": matrix_to_json(subspace.basis()),
            "orbit_size": orbit_size,
            "cocycle": vector_cocycle_to_json(cocycle),
        }),
    }
}

pub fn entry_to_json(e: &ClassificationEntry) -> Value {
    let mut v = json!({
        "label": e.label,
        "dim": e.algebra.dim(),
        "centre_dim": e.centre_dim,
        "relations": relations(&e.algebra),
        "algebra": algebra_to_json(&e.algebra),
        "provenance": provenance_to_json(&e.provenance),
    });
    if let Some(p) = &e.skew_partner {
        v["skew_partner"] = json!(p);
    }
    if let Some(nf) = &e.normal_form {
        v["normal_form"] = json!({
            "relations": relations(nf),
            "algebra": algebra_to_json(nf),
        });
    }
    if let Some(w) = &e.label_witness {
        v["label_witness"] = matrix_to_json(w);
    }
    v
}

pub struct RunMeta {
    pub command: String,
    pub field: Field,
    pub dim: Option<usize>,
    pub seed: Option<u64>,
    pub dim_bound: usize,
    pub oracle: String,
}

pub fn classification_to_json(c: &Classification, meta: &RunMeta) -> Value {
    json!({
        "manifest": manifest_json(meta, &c.notes),
        "entries": c.entries.iter().map(entry_to_json).collect::<Vec<_>>(),
    })
}

pub fn manifest_json(meta: &RunMeta, notes: &[String]) -> Value {
    json!({
        "command": meta.command,
        "field": field_to_json(meta.field),
        "target_dim": meta.dim,
        "seed": meta.seed,
        "bounds": { "dim_bound": meta.dim_bound },
        "oracle": meta.oracle,
        "notes": notes,
    })
}

/// Manifest for a classification run, including the oracle witnesses that
/// certify each entry's table label.
pub fn classification_manifest(meta: &RunMeta, c: &Classification) -> Value {
    let mut manifest = manifest_json(meta, &c.notes);
    manifest["label_witnesses"] = Value::Array(
        c.entries
            .iter()
            .filter_map(|e| {
                e.label_witness.as_ref().map(|w| {
                    json!({ "label": e.label, "witness": matrix_to_json(w) })
                })
            })
            .collect(),
    );
    manifest
}

pub fn classification_rows(c: &Classification) -> Vec<(String, &CompatibleLieAlgebra, usize)> {
    c.entries.iter().map(|e| (e.label.clone(), e.display_algebra(), e.centre_dim)).collect()
}

pub fn table_rows(entries: &[TableEntry]) -> Vec<(String, &CompatibleLieAlgebra, usize)> {
    entries
        .iter()
        .map(|e| (e.label.clone(), &e.algebra, e.algebra.center().dim()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_render_like_the_table() {
        let f3 = Field::prime(3).unwrap();
        let g = CompatibleLieAlgebra::from_relations_i64(
            f3,
            4,
            &[
                (Bracket::One, 0, 1, 2, 1),
                (Bracket::One, 1, 2, 3, 1),
                (Bracket::Two, 0, 1, 2, 2),
            ],
        );
        assert_eq!(relations(&g), vec!["[e1,e2]=e3", "{e1,e2}=2e3", "[e2,e3]=e4"]);
        let ab = CompatibleLieAlgebra::abelian(f3, 2);
        assert!(relations(&ab).is_empty());
        assert_eq!(relations_cell(&ab), "abelian of dimension 2");
    }

    #[test]
    fn csv_and_text_are_stable() {
        let f3 = Field::prime(3).unwrap();
        let g = CompatibleLieAlgebra::from_relations_i64(f3, 3, &[(Bracket::One, 0, 1, 2, 1)]);
        let rows = vec![("N_{3,2}".to_string(), &g, 1usize)];
        let text1 = text_table(&rows);
        let text2 = text_table(&rows);
        assert_eq!(text1, text2);
        assert!(text1.contains("N_{3,2}"));
        let csv = csv_table(&rows);
        assert!(csv.starts_with("label,dim,centre_dim,relations\n"));
        assert!(!csv.contains("N_{3,2},3,1,[e1\""));
    }
}
