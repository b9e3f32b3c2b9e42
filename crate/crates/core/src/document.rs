//! JSON scenario documents and the bundled presets.
//!
//! Sparse tensors are lists of rows whose leading entries are 1-based
//! indices and whose last entry is the value, either a JSON integer or a
//! string `"p/q"`. Antisymmetric data (`c`, `a` in its last two indices,
//! `chi`) may be given by one representative per orbit.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;
use serde::Deserialize;
use serde_json::Value;

use crate::graded::{parse, AlgebraError, GPoly, GeneratorTable, Rational};
use crate::lie::{BialgebraData, DglaData, LieAlgebraData, ModuleActionData, Tensor3};
use crate::scenario::{
    matrix_exp, Assumptions, GroupData, LieBundle, PolyMatrix, Scenario, ScenarioError, ScenarioKind, WeakCheck,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("schema error at `{key}`: {msg}")]
    Schema { key: String, msg: String },
    #[error("parse error in `{key}`: {source}")]
    Parse { key: String, source: AlgebraError },
    #[error(transparent)]
    Shape(#[from] ScenarioError),
}

/// Unknown and missing keys become schema errors; anything else is a
/// syntax error.
fn json_error(e: serde_json::Error) -> DocumentError {
    let msg = e.to_string();
    for prefix in ["unknown field `", "missing field `"] {
        if let Some(rest) = msg.strip_prefix(prefix) {
            let key = rest.split('`').next().unwrap_or_default();
            return schema(key, msg.split(" at line").next().unwrap_or(&msg));
        }
    }
    DocumentError::Json(msg)
}

fn schema(key: &str, msg: impl Into<String>) -> DocumentError {
    DocumentError::Schema { key: key.into(), msg: msg.into() }
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    kind: String,
    n: usize,
    #[serde(default)]
    generators: Option<Vec<String>>,
    #[serde(default)]
    pi: Option<String>,
    #[serde(default)]
    psi: Option<Vec<String>>,
    #[serde(default, rename = "J0")]
    j0: Vec<String>,
    lie: RawLie,
    #[serde(default)]
    truncation_order: Option<u32>,
    #[serde(default)]
    degree_bound: Option<u32>,
    #[serde(default)]
    weak_check: Option<String>,
    #[serde(default)]
    group: Option<RawGroup>,
    #[serde(default)]
    assumptions: Option<RawAssumptions>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawLie {
    dim_g: usize,
    #[serde(default)]
    dim_h: Option<usize>,
    #[serde(default)]
    c: Vec<Vec<Value>>,
    #[serde(default)]
    d: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    a: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    chi: Option<Vec<Vec<Value>>>,
    #[serde(default, rename = "A")]
    big_a: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    metric: Option<Vec<Vec<Value>>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    /// Each basis matrix as a dense list of rows.
    basis: Vec<Vec<Vec<Value>>>,
    #[serde(default)]
    phi: Option<Vec<Vec<String>>>,
    /// Alternative to `phi`: a matrix `X` with `phi = sum_{n <= exp_terms} X^n / n!`.
    #[serde(default)]
    exp_of: Option<Vec<Vec<String>>>,
    #[serde(default)]
    exp_terms: Option<u32>,
    sample_point: Vec<Value>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct RawAssumptions {
    #[serde(default)]
    free_and_proper: bool,
    #[serde(default)]
    regular_value: bool,
}

fn rational(v: &Value, key: &str) -> Result<Rational, DocumentError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| schema(key, "numbers must be integers; write fractions as \"p/q\"")),
        Value::String(s) => {
            let s = s.trim();
            let (num, den) = s.split_once('/').unwrap_or((s, "1"));
            let p: num::BigInt = num.trim().parse().map_err(|_| schema(key, format!("bad rational `{s}`")))?;
            let q: num::BigInt = den.trim().parse().map_err(|_| schema(key, format!("bad rational `{s}`")))?;
            if q.is_zero() {
                return Err(schema(key, "zero denominator"));
            }
            Ok(Rational::new(p, q))
        }
        _ => Err(schema(key, "expected an integer or a \"p/q\" string")),
    }
}

/// Parses sparse rows `[i1, .., ir, value]` into 0-based index tuples.
fn sparse(rows: &[Vec<Value>], arity: usize, dims: &[usize], key: &str) -> Result<Vec<(Vec<usize>, Rational)>, DocumentError> {
    let mut out = Vec::new();
    for row in rows {
        if row.len() != arity + 1 {
            return Err(schema(key, format!("rows need {} indices and a value", arity)));
        }
        let mut ix = Vec::with_capacity(arity);
        for (pos, v) in row[..arity].iter().enumerate() {
            let i = v.as_u64().ok_or_else(|| schema(key, "indices must be positive integers"))? as usize;
            if i == 0 || i > dims[pos] {
                return Err(schema(key, format!("index {i} out of range 1..={}", dims[pos])));
            }
            ix.push(i - 1);
        }
        out.push((ix, rational(&row[arity], key)?));
    }
    Ok(out)
}

/// Fills a 3-tensor, applying the given index permutations with signs and
/// rejecting conflicting entries.
fn fill(
    t: &mut Tensor3,
    entries: &[(Vec<usize>, Rational)],
    orbit: &[(fn(&[usize]) -> [usize; 3], i64)],
    key: &str,
) -> Result<(), DocumentError> {
    let mut seen: BTreeMap<[usize; 3], Rational> = BTreeMap::new();
    for (ix, q) in entries {
        for (perm, sign) in orbit {
            let p = perm(ix);
            let val = q * Rational::from_integer((*sign).into());
            if let Some(old) = seen.get(&p) {
                if *old != val {
                    return Err(schema(key, format!("conflicting entries at ({}, {}, {})", p[0] + 1, p[1] + 1, p[2] + 1)));
                }
            }
            seen.insert(p, val.clone());
            t.set(p[0], p[1], p[2], val);
        }
    }
    Ok(())
}

const IDENT: (fn(&[usize]) -> [usize; 3], i64) = (|x| [x[0], x[1], x[2]], 1);
const SWAP01: (fn(&[usize]) -> [usize; 3], i64) = (|x| [x[1], x[0], x[2]], -1);
const SWAP12: (fn(&[usize]) -> [usize; 3], i64) = (|x| [x[0], x[2], x[1]], -1);
const SWAP02: (fn(&[usize]) -> [usize; 3], i64) = (|x| [x[2], x[1], x[0]], -1);
const CYC1: (fn(&[usize]) -> [usize; 3], i64) = (|x| [x[1], x[2], x[0]], 1);
const CYC2: (fn(&[usize]) -> [usize; 3], i64) = (|x| [x[2], x[0], x[1]], 1);

fn poly(src: &str, t: &Arc<GeneratorTable>, key: &str) -> Result<GPoly, DocumentError> {
    parse(src, t).map_err(|e| DocumentError::Parse { key: key.into(), source: e })
}

fn poly_matrix(rows: &[Vec<String>], t: &Arc<GeneratorTable>, key: &str) -> Result<PolyMatrix, DocumentError> {
    let m = rows.len();
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            if r.len() != m {
                return Err(schema(key, "matrix must be square"));
            }
            r.iter()
                .enumerate()
                .map(|(j, s)| poly(s, t, &format!("{key}[{}][{}]", i + 1, j + 1)))
                .collect()
        })
        .collect()
}

/// Parses a JSON scenario document.
pub fn parse_scenario(src: &str) -> Result<Scenario, DocumentError> {
    let raw: RawDoc = serde_json::from_str(src).map_err(json_error)?;
    let kind = ScenarioKind::from_name(&raw.kind).ok_or_else(|| schema("kind", format!("unknown kind `{}`", raw.kind)))?;
    let dim_g = raw.lie.dim_g;
    let default_h = match kind {
        ScenarioKind::ClassicalHamiltonian => dim_g,
        ScenarioKind::GroupValued if raw.j0.is_empty() => dim_g,
        _ => raw.j0.len(),
    };
    let dim_h = raw.lie.dim_h.unwrap_or(default_h);
    let table = Arc::new(
        GeneratorTable::bfv1_named(raw.n, dim_g, dim_h, raw.generators.as_deref())
            .map_err(|e| schema("generators", e.to_string()))?,
    );

    let mut c = Tensor3::zeros(dim_g, dim_g, dim_g);
    let ce = sparse(&raw.lie.c, 3, &[dim_g, dim_g, dim_g], "lie.c")?;
    fill(&mut c, &ce, &[IDENT, SWAP01], "lie.c")?;
    let lie = LieAlgebraData { dim: dim_g, c };

    let module = match &raw.lie.d {
        Some(rows) => {
            let mut d = Tensor3::zeros(dim_g, dim_h, dim_h);
            let de = sparse(rows, 3, &[dim_g, dim_h, dim_h], "lie.d")?;
            fill(&mut d, &de, &[IDENT], "lie.d")?;
            ModuleActionData { dim_h, d }
        }
        None if matches!(kind, ScenarioKind::ClassicalHamiltonian | ScenarioKind::GroupValued) && dim_h == dim_g => {
            lie.adjoint()
        }
        None => ModuleActionData { dim_h, d: Tensor3::zeros(dim_g, dim_h, dim_h) },
    };

    let dgla = match &raw.lie.big_a {
        Some(rows) => {
            let mut a = vec![vec![Rational::zero(); dim_h]; dim_g];
            for (ix, q) in sparse(rows, 2, &[dim_g, dim_h], "lie.A")? {
                a[ix[0]][ix[1]] = q;
            }
            Some(DglaData { a })
        }
        None => None,
    };
    if kind == ScenarioKind::Dgla && dgla.is_none() {
        return Err(schema("lie.A", "dgla scenarios need the matrix A"));
    }

    let cobracket = match &raw.lie.a {
        Some(rows) => {
            let mut a = Tensor3::zeros(dim_g, dim_g, dim_g);
            let ae = sparse(rows, 3, &[dim_g, dim_g, dim_g], "lie.a")?;
            fill(&mut a, &ae, &[IDENT, SWAP12], "lie.a")?;
            Some(BialgebraData { a })
        }
        None => None,
    };
    let chi = match &raw.lie.chi {
        Some(rows) => {
            let mut x = Tensor3::zeros(dim_g, dim_g, dim_g);
            let xe = sparse(rows, 3, &[dim_g, dim_g, dim_g], "lie.chi")?;
            fill(&mut x, &xe, &[IDENT, SWAP01, SWAP12, SWAP02, CYC1, CYC2], "lie.chi")?;
            Some(x)
        }
        None => None,
    };
    let metric = match &raw.lie.metric {
        Some(rows) => {
            let mut g = vec![vec![Rational::zero(); dim_g]; dim_g];
            for (ix, q) in sparse(rows, 2, &[dim_g, dim_g], "lie.metric")? {
                g[ix[1]][ix[0]] = q.clone();
                g[ix[0]][ix[1]] = q;
            }
            g
        }
        None => crate::lie::identity(dim_g),
    };

    let pi = match &raw.pi {
        Some(s) => poly(s, &table, "pi")?,
        None => GPoly::zero(&table),
    };
    let psi = match &raw.psi {
        Some(list) => Some(
            list.iter()
                .enumerate()
                .map(|(i, s)| poly(s, &table, &format!("psi[{}]", i + 1)))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    let j0 = raw
        .j0
        .iter()
        .enumerate()
        .map(|(i, s)| poly(s, &table, &format!("J0[{}]", i + 1)))
        .collect::<Result<Vec<_>, _>>()?;

    let weak_check = match raw.weak_check.as_deref() {
        None | Some("chi") => WeakCheck::Chi,
        Some("ideal") => WeakCheck::Ideal,
        Some(other) => return Err(schema("weak_check", format!("expected `chi` or `ideal`, got `{other}`"))),
    };

    let group = match &raw.group {
        Some(g) => {
            let mut basis = Vec::new();
            for (k, m) in g.basis.iter().enumerate() {
                let key = format!("group.basis[{}]", k + 1);
                let size = m.len();
                let mat = m
                    .iter()
                    .map(|r| {
                        if r.len() != size {
                            return Err(schema(&key, "matrix must be square"));
                        }
                        r.iter().map(|v| rational(v, &key)).collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                basis.push(mat);
            }
            if basis.len() != dim_g {
                return Err(schema("group.basis", format!("need {dim_g} basis matrices")));
            }
            let phi = match (&g.phi, &g.exp_of) {
                (Some(p), None) => poly_matrix(p, &table, "group.phi")?,
                (None, Some(x)) => {
                    let x = poly_matrix(x, &table, "group.exp_of")?;
                    matrix_exp(&x, g.exp_terms.unwrap_or(raw.truncation_order.unwrap_or(4)))
                }
                _ => return Err(schema("group", "give exactly one of `phi` and `exp_of`")),
            };
            let sample_point = g
                .sample_point
                .iter()
                .map(|v| rational(v, "group.sample_point"))
                .collect::<Result<Vec<_>, _>>()?;
            if sample_point.len() != raw.n {
                return Err(schema("group.sample_point", format!("need {} coordinates", raw.n)));
            }
            Some(GroupData { basis, phi, sample_point })
        }
        None => None,
    };
    if kind == ScenarioKind::GroupValued && group.is_none() && j0.is_empty() {
        return Err(schema("group", "group_valued scenarios need group data"));
    }

    let assumptions = raw
        .assumptions
        .map(|a| Assumptions { free_and_proper: a.free_and_proper, regular_value: a.regular_value })
        .unwrap_or_default();

    let s = Scenario {
        kind,
        n: raw.n,
        table,
        pi,
        psi,
        j0,
        lie: LieBundle { lie, module, dgla, cobracket, chi, metric },
        truncation_order: raw.truncation_order.unwrap_or(4),
        degree_bound: raw.degree_bound.unwrap_or(3),
        weak_check,
        group,
        assumptions,
    };
    s.check_shape()?;
    Ok(s)
}

/// Bundled scenario documents, by name.
pub const PRESETS: &[(&str, &str)] = &[
    ("so3-classical", include_str!("../presets/so3-classical.json")),
    ("dgla-identity", include_str!("../presets/dgla-identity.json")),
    ("aff1-bialgebra", include_str!("../presets/aff1-bialgebra.json")),
    ("quasi-chi", include_str!("../presets/quasi-chi.json")),
    ("group-valued-so3", include_str!("../presets/group-valued-so3.json")),
    ("abelian-translation", include_str!("../presets/abelian-translation.json")),
];

pub fn preset_source(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses a bundled preset; panics if the bundled document is invalid.
pub fn preset(name: &str) -> Option<Scenario> {
    preset_source(name).map(|s| parse_scenario(s).unwrap_or_else(|e| panic!("preset {name}: {e}")))
}
