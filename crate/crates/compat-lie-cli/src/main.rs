//! Command-line interface for the compatible Lie algebra toolkit.
//!
//! Exit codes: 0 success (or "true" for predicates), 1 negative predicate
//! result (not compatible / not isomorphic), 2 input error, 3 resource bound
//! (including verdicts the exact engine cannot decide over Q).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use compat_lie::algebra::CompatibleLieAlgebra;
use compat_lie::classify::{classify_with_runner, ClassifyOptions, OracleMode};
use compat_lie::error::Error as CoreError;
use compat_lie::extension::central_extension;

use compat_lie::iso::{is_isomorphic, is_skew_isomorphic, IsoVerdict};
use compat_lie::random::random_nilpotent;
use compat_lie::table::{match_label, reference_table};

use compat_lie_cli::json::{
    algebra_from_str, algebra_to_json, extension_spec_from_json, matrix_to_json, parse_field_str,
};
use compat_lie_cli::output::{
    classification_manifest, classification_rows, classification_to_json, csv_table,
    manifest_json, relations, table_rows, text_table, RunMeta,
};
use compat_lie_cli::runner::ThreadedRunner;

#[derive(Parser)]
#[command(name = "compat-lie", version, about = "Nilpotent compatible Lie algebras: verification, cohomology, central extensions, and classification over exact fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the two Jacobi identities and the mixed Jacobi identity
    Verify {
        /// algebra JSON file
        file: PathBuf,
        #[arg(long)]
        allow_char_2: bool,
    },
    /// Classify nilpotent compatible Lie algebras of the given dimension
    Classify {
        /// target dimension
        dim: usize,
        /// prime field modulus
        field: String,
        /// directory for table.txt, entries.json, entries.csv, manifest.json
        #[arg(long)]
        out: Option<PathBuf>,
        /// worker threads for orbit jobs
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// seed for the sampled oracle mode
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// sample the pairwise oracle cross-check instead of exhausting it
        #[arg(long)]
        sampled_oracle: bool,
        #[arg(long)]
        allow_char_2: bool,
        /// classification dimension bound
        #[arg(long, default_value_t = 4)]
        dim_bound: usize,
    },
    /// Instantiate the built-in dimension ≤ 4 classification table
    Table {
        /// prime field modulus
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        allow_char_2: bool,
    },
    /// Build the central extension described by a spec file
    Extend {
        /// extension spec JSON file ({"base": …, "cocycle": […]})
        file: PathBuf,
        /// output file for the resulting algebra (stdout otherwise)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        allow_char_2: bool,
    },
    /// Decide isomorphism of two algebras
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        allow_char_2: bool,
    },
    /// Decide skew-isomorphism of two algebras
    SkewIso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        allow_char_2: bool,
    },
    /// Find the classification-table label of an algebra
    Match {
        file: PathBuf,
        #[arg(long)]
        allow_char_2: bool,
    },
    /// Generate a seeded random nilpotent compatible Lie algebra
    Random {
        dim: usize,
        /// "Q" or a prime modulus
        field: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        allow_char_2: bool,
    },
}

/// Process outcomes carrying the exit-code contract.
enum Outcome {
    Ok,
    False(String),
    InputError(String),
    ResourceBound(String),
}

impl Outcome {
    fn exit(self) -> ExitCode {
        match self {
            Outcome::Ok => ExitCode::from(0),
            Outcome::False(msg) => {
                println!("{msg}");
                ExitCode::from(1)
            }
            Outcome::InputError(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Outcome::ResourceBound(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(3)
            }
        }
    }
}

fn core_error_outcome(e: CoreError) -> Outcome {
    match e {
        CoreError::ResourceBound(_) => Outcome::ResourceBound(e.to_string()),
        _ => Outcome::InputError(e.to_string()),
    }
}

fn read_algebra(path: &Path, allow_char_2: bool) -> Result<CompatibleLieAlgebra, Outcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| Outcome::InputError(format!("{}: {e}", path.display())))?;
    algebra_from_str(&text, allow_char_2)
        .map_err(|e| Outcome::InputError(format!("{}: {e}", path.display())))
}

fn write_outputs(
    dir: &Path,
    text: &str,
    entries_json: &Value,
    csv: &str,
    manifest: &Value,
) -> Result<(), Outcome> {
    fs::create_dir_all(dir).map_err(|e| Outcome::InputError(format!("{}: {e}", dir.display())))?;
    let write = |name: &str, contents: String| -> Result<(), Outcome> {
        fs::write(dir.join(name), contents)
            .map_err(|e| Outcome::InputError(format!("{}: {e}", dir.display())))
    };
    write("table.txt", text.to_string())?;
    write("entries.json", format!("{:#}\n", entries_json))?;
    write("entries.csv", csv.to_string())?;
    write("manifest.json", format!("{:#}\n", manifest))?;
    Ok(())
}

fn cmd_verify(file: &Path, allow_char_2: bool) -> Outcome {
    let g = match read_algebra(file, allow_char_2) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let report = g.verify();
    println!(
        "jacobi1: {}  jacobi2: {}  mixed: {}",
        if report.jacobi1_ok { "ok" } else { "FAIL" },
        if report.jacobi2_ok { "ok" } else { "FAIL" },
        if report.mixed_ok { "ok" } else { "FAIL" },
    );
    match report.first_failure {
        None => {
            println!("compatible Lie algebra");
            Outcome::Ok
        }
        Some(f) => {
            let residual: Vec<String> = f
                .residual
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{}e{}", c.to_serial(), k + 1))
                .collect();
            Outcome::False(format!(
                "{:?} fails on basis triple (e{}, e{}, e{}) with residual {}",
                f.identity,
                f.triple.0 + 1,
                f.triple.1 + 1,
                f.triple.2 + 1,
                residual.join("+"),
            ))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_classify(
    dim: usize,
    field: &str,
    out: Option<&Path>,
    jobs: usize,
    seed: u64,
    sampled: bool,
    allow_char_2: bool,
    dim_bound: usize,
) -> Outcome {
    let field = match parse_field_str(field, allow_char_2) {
        Ok(f) => f,
        Err(e) => return Outcome::InputError(e.to_string()),
    };
    let mut opts = ClassifyOptions { dim_bound, ..ClassifyOptions::default() };
    if sampled {
        opts.oracle = Some(OracleMode::Sampled { seed, max_pairs: 200 });
    }
    let mut runner = ThreadedRunner::new(jobs);
    let classification = match classify_with_runner(dim, field, &opts, &mut runner) {
        Ok(c) => c,
        Err(e) => return core_error_outcome(e),
    };
    let rows = classification_rows(&classification);
    let text = text_table(&rows);
    let meta = RunMeta {
        command: "classify".into(),
        field,
        dim: Some(dim),
        seed: Some(seed),
        dim_bound,
        oracle: if sampled { "sampled".into() } else { "exhaustive".into() },
    };
    let entries_json = classification_to_json(&classification, &meta);
    let manifest = classification_manifest(&meta, &classification);
    for note in &classification.notes {
        eprintln!("note: {note}");
    }
    match out {
        Some(dir) => {
            if let Err(o) = write_outputs(dir, &text, &entries_json, &csv_table(&rows), &manifest) {
                return o;
            }
            println!("{} entries written to {}", classification.entries.len(), dir.display());
        }
        None => print!("{text}"),
    }
    Outcome::Ok
}

fn cmd_table(field: &str, out: Option<&Path>, allow_char_2: bool) -> Outcome {
    let field = match parse_field_str(field, allow_char_2) {
        Ok(f) => f,
        Err(e) => return Outcome::InputError(e.to_string()),
    };
    let entries = match reference_table(field) {
        Ok(t) => t,
        Err(e) => return core_error_outcome(e),
    };
    let rows = table_rows(&entries);
    let text = text_table(&rows);
    let meta = RunMeta {
        command: "table".into(),
        field,
        dim: None,
        seed: None,
        dim_bound: 4,
        oracle: "none".into(),
    };
    let entries_json: Value = serde_json::json!({
        "manifest": manifest_json(&meta, &[]),
        "entries": entries
            .iter()
            .map(|e| {
                serde_json::json!({
                    "label": e.label,
                    "dim": e.dim,
                    "relations": relations(&e.algebra),
                    "algebra": algebra_to_json(&e.algebra),
                })
            })
            .collect::<Vec<_>>(),
    });
    match out {
        Some(dir) => {
            let manifest = manifest_json(&meta, &[]);
            if let Err(o) = write_outputs(dir, &text, &entries_json, &csv_table(&rows), &manifest) {
                return o;
            }
            println!("{} entries written to {}", entries.len(), dir.display());
        }
        None => print!("{text}"),
    }
    Outcome::Ok
}

fn cmd_extend(file: &Path, out: Option<&Path>, allow_char_2: bool) -> Outcome {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return Outcome::InputError(format!("{}: {e}", file.display())),
    };
    let value: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return Outcome::InputError(format!("{}: invalid JSON: {e}", file.display())),
    };
    let spec = match extension_spec_from_json(&value, allow_char_2) {
        Ok(s) => s,
        Err(e) => return Outcome::InputError(e.to_string()),
    };
    let ext = match central_extension(&spec) {
        Ok(g) => g,
        Err(e) => return core_error_outcome(e),
    };
    let rendered = format!("{:#}\n", algebra_to_json(&ext));
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                return Outcome::InputError(format!("{}: {e}", path.display()));
            }
        }
        None => print!("{rendered}"),
    }
    Outcome::Ok
}

fn cmd_iso(a: &Path, b: &Path, skew: bool, allow_char_2: bool) -> Outcome {
    let (ga, gb) = match (read_algebra(a, allow_char_2), read_algebra(b, allow_char_2)) {
        (Ok(ga), Ok(gb)) => (ga, gb),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    let verdict = if skew { is_skew_isomorphic(&ga, &gb) } else { is_isomorphic(&ga, &gb) };
    match verdict {
        Ok(IsoVerdict::Isomorphic(w)) => {
            println!(
                "{} (witness)\n{}",
                if skew { "skew-isomorphic" } else { "isomorphic" },
                matrix_to_json(&w)
            );
            Outcome::Ok
        }
        Ok(IsoVerdict::NonIsomorphic) => {
            Outcome::False(if skew { "not skew-isomorphic".into() } else { "non-isomorphic".into() })
        }
        Ok(IsoVerdict::Unknown) => Outcome::ResourceBound(
            "unknown: fingerprints agree but no exact search exists over Q".into(),
        ),
        Err(e) => core_error_outcome(e),
    }
}

fn cmd_match(file: &Path, allow_char_2: bool) -> Outcome {
    let g = match read_algebra(file, allow_char_2) {
        Ok(g) => g,
        Err(o) => return o,
    };
    match match_label(&g) {
        Ok(m) => {
            println!("{}", m.label);
            Outcome::Ok
        }
        Err(e) => core_error_outcome(e),
    }
}

fn cmd_random(dim: usize, field: &str, seed: u64, out: Option<&Path>, allow_char_2: bool) -> Outcome {
    let field = match parse_field_str(field, allow_char_2) {
        Ok(f) => f,
        Err(e) => return Outcome::InputError(e.to_string()),
    };
    let g = match random_nilpotent(dim, field, seed) {
        Ok(g) => g,
        Err(e) => return core_error_outcome(e),
    };
    let rendered = format!("{:#}\n", algebra_to_json(&g));
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                return Outcome::InputError(format!("{}: {e}", path.display()));
            }
        }
        None => print!("{rendered}"),
    }
    Outcome::Ok
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify { file, allow_char_2 } => cmd_verify(file, *allow_char_2),
        Command::Classify { dim, field, out, jobs, seed, sampled_oracle, allow_char_2, dim_bound } => {
            cmd_classify(*dim, field, out.as_deref(), *jobs, *seed, *sampled_oracle, *allow_char_2, *dim_bound)
        }
        Command::Table { field, out, allow_char_2 } => cmd_table(field, out.as_deref(), *allow_char_2),
        Command::Extend { file, out, allow_char_2 } => cmd_extend(file, out.as_deref(), *allow_char_2),
        Command::Iso { a, b, allow_char_2 } => cmd_iso(a, b, false, *allow_char_2),
        Command::SkewIso { a, b, allow_char_2 } => cmd_iso(a, b, true, *allow_char_2),
        Command::Match { file, allow_char_2 } => cmd_match(file, *allow_char_2),
        Command::Random { dim, field, seed, out, allow_char_2 } => {
            cmd_random(*dim, field, *seed, out.as_deref(), *allow_char_2)
        }
    };
    outcome.exit()
}
