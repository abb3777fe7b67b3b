//! JSON formats for algebras, cocycles, extension specs, and matrices.
//!
//! Algebras: `{"dim": n, "field": "Q" | {"p": 5}, "bracket1": [[i, j, [k,
//! "coeff"]…]…], "bracket2": […], "label": "…"}` with 1-based basis indices
//! i < j. Scalars travel as decimal strings ("3/4" over Q, least nonnegative
//! residues over F_p); plain JSON numbers are accepted on input.

use compat_lie::algebra::{pairs_asc, Bracket, CompatibleLieAlgebra};
use compat_lie::cohomology::{block_len, ScalarCocycle, VectorCocycle};
use compat_lie::extension::ExtensionSpec;
use compat_lie::field::{Field, Scalar};
use compat_lie::matrix::Matrix;
use serde_json::{json, Map, Value};

#[derive(Debug)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for FormatError {}

impl From<compat_lie::error::Error> for FormatError {
    fn from(e: compat_lie::error::Error) -> Self {
        FormatError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, FormatError>;

fn bad(msg: impl Into<String>) -> FormatError {
    FormatError(msg.into())
}

pub fn field_to_json(field: Field) -> Value {
    match field {
        Field::Rationals => json!("Q"),
        Field::Prime(p) => json!({ "p": p }),
    }
}

pub fn parse_field(v: &Value, allow_char2: bool) -> Result<Field> {
    match v {
        Value::String(s) if s == "Q" => Ok(Field::Rationals),
        Value::Object(map) => {
            let p = map
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("field object needs a prime \"p\""))?;
            let f = if allow_char2 { Field::prime_allow_char2(p) } else { Field::prime(p) };
            Ok(f?)
        }
        other => Err(bad(format!("unrecognized field descriptor: {other}"))),
    }
}

/// Also used by the CLI's --field flag: "Q" or a prime written in decimal.
pub fn parse_field_str(s: &str, allow_char2: bool) -> Result<Field> {
    if s == "Q" {
        return Ok(Field::Rationals);
    }
    let p: u64 = s.parse().map_err(|_| bad(format!("field must be \"Q\" or a prime, got {s:?}")))?;
    Ok(if allow_char2 { Field::prime_allow_char2(p)? } else { Field::prime(p)? })
}

fn scalar_from_value(field: Field, v: &Value) -> Result<Scalar> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(bad(format!("scalar must be a string or number, got {other}"))),
    };
    Ok(field.parse_scalar(&text)?)
}

fn bracket_to_json(g: &CompatibleLieAlgebra, which: Bracket) -> Value {
    let mut entries = Vec::new();
    for (i, j) in pairs_asc(g.dim()) {
        let coeffs = g.bracket_basis(which, i, j);
        let nonzero: Vec<Value> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| json!([k + 1, c.to_serial()]))
            .collect();
        if !nonzero.is_empty() {
            let mut entry = vec![json!(i + 1), json!(j + 1)];
            entry.extend(nonzero);
            entries.push(Value::Array(entry));
        }
    }
    Value::Array(entries)
}

pub fn algebra_to_json(g: &CompatibleLieAlgebra) -> Value {
    let mut map = Map::new();
    map.insert("dim".into(), json!(g.dim()));
    map.insert("field".into(), field_to_json(g.field()));
    map.insert("bracket1".into(), bracket_to_json(g, Bracket::One));
    map.insert("bracket2".into(), bracket_to_json(g, Bracket::Two));
    if let Some(label) = g.label() {
        map.insert("label".into(), json!(label));
    }
    Value::Object(map)
}

fn parse_bracket_entries(
    field: Field,
    dim: usize,
    v: &Value,
    which: Bracket,
    out: &mut Vec<(Bracket, usize, usize, usize, Scalar)>,
) -> Result<()> {
    let entries = v.as_array().ok_or_else(|| bad("bracket must be an array of entries"))?;
    for entry in entries {
        let parts = entry.as_array().ok_or_else(|| bad("bracket entry must be an array"))?;
        if parts.len() < 3 {
            return Err(bad("bracket entry needs [i, j, [k, coeff], …]"));
        }
        let read_index = |v: &Value, what: &str| -> Result<usize> {
            let n = v.as_u64().ok_or_else(|| bad(format!("{what} must be a positive integer")))?;
            if n == 0 || n as usize > dim {
                return Err(bad(format!("{what} {n} out of range 1..={dim}")));
            }
            Ok(n as usize - 1)
        };
        let i = read_index(&parts[0], "basis index i")?;
        let j = read_index(&parts[1], "basis index j")?;
        if i >= j {
            return Err(bad(format!(
                "bracket entries are stored for i < j only; got ({}, {})",
                i + 1,
                j + 1
            )));
        }
        for term in &parts[2..] {
            let kv = term.as_array().ok_or_else(|| bad("bracket term must be [k, coeff]"))?;
            if kv.len() != 2 {
                return Err(bad("bracket term must be [k, coeff]"));
            }
            let k = read_index(&kv[0], "basis index k")?;
            let c = scalar_from_value(field, &kv[1])?;
            out.push((which, i, j, k, c));
        }
    }
    Ok(())
}

pub fn algebra_from_json(v: &Value, allow_char2: bool) -> Result<CompatibleLieAlgebra> {
    let map = v.as_object().ok_or_else(|| bad("algebra must be a JSON object"))?;
    let dim = map
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("algebra needs a nonnegative \"dim\""))? as usize;
    let field = parse_field(map.get("field").ok_or_else(|| bad("algebra needs a \"field\""))?, allow_char2)?;
    let mut relations = Vec::new();
    if let Some(b1) = map.get("bracket1") {
        parse_bracket_entries(field, dim, b1, Bracket::One, &mut relations)?;
    }
    if let Some(b2) = map.get("bracket2") {
        parse_bracket_entries(field, dim, b2, Bracket::Two, &mut relations)?;
    }
    let mut g = CompatibleLieAlgebra::from_relations(field, dim, &relations)?;
    if let Some(label) = map.get("label").and_then(Value::as_str) {
        g.set_label(label);
    }
    Ok(g)
}

pub fn algebra_from_str(s: &str, allow_char2: bool) -> Result<CompatibleLieAlgebra> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    algebra_from_json(&v, allow_char2)
}

/// Cocycles serialize as the two strictly-upper-triangular coefficient lists
/// in the Δ coordinate order (Δ_{n-1,n} … Δ_{1,2}).
pub fn cocycle_to_json(c: &ScalarCocycle) -> Value {
    let coords = c.to_coords();
    let m = coords.len() / 2;
    let serial = |s: &Scalar| json!(s.to_serial());
    json!({
        "omega_under": coords[..m].iter().map(serial).collect::<Vec<_>>(),
        "omega_tilde": coords[m..].iter().map(serial).collect::<Vec<_>>(),
    })
}

pub fn cocycle_from_json(v: &Value, field: Field, dim: usize) -> Result<ScalarCocycle> {
    let map = v.as_object().ok_or_else(|| bad("cocycle must be a JSON object"))?;
    let m = block_len(dim);
    let mut coords = Vec::with_capacity(2 * m);
    for key in ["omega_under", "omega_tilde"] {
        let list = map
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(format!("cocycle needs \"{key}\" coefficients")))?;
        if list.len() != m {
            return Err(bad(format!("\"{key}\" must have {m} entries for dimension {dim}")));
        }
        for v in list {
            coords.push(scalar_from_value(field, v)?);
        }
    }
    Ok(ScalarCocycle::from_coords(field, dim, &coords)?)
}

pub fn vector_cocycle_to_json(omega: &VectorCocycle) -> Value {
    Value::Array(omega.decompose().iter().map(cocycle_to_json).collect())
}

pub fn extension_spec_to_json(spec: &ExtensionSpec) -> Value {
    json!({
        "base": algebra_to_json(&spec.base),
        "cocycle": vector_cocycle_to_json(&spec.cocycle),
    })
}

pub fn extension_spec_from_json(v: &Value, allow_char2: bool) -> Result<ExtensionSpec> {
    let map = v.as_object().ok_or_else(|| bad("extension spec must be a JSON object"))?;
    let base = algebra_from_json(
        map.get("base").ok_or_else(|| bad("extension spec needs a \"base\" algebra"))?,
        allow_char2,
    )?;
    let comps = map
        .get("cocycle")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("extension spec needs a \"cocycle\" array"))?;
    let components = comps
        .iter()
        .map(|c| cocycle_from_json(c, base.field(), base.dim()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtensionSpec::new(base, VectorCocycle::assemble(components)?)?)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|r| {
            Value::Array((0..m.cols()).map(|c| json!(m.at(r, c).to_serial())).collect())
        })
        .collect();
    Value::Array(rows)
}
