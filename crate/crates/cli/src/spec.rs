//! The JSON specification format (`"schema": "exactcat/1"`).

use std::path::Path;

use exactcat::{ExactCategory, Field, FpMatrix, Quiver, RepCategory, RepMor, RepObj, SES};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA: &str = "exactcat/1";

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("{} validation error(s):\n  {}", .0.len(), .0.join("\n  "))]
    Invalid(Vec<String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawSpec {
    schema: String,
    field: RawField,
    quiver: RawQuiver,
    #[serde(default)]
    objects: Map<String, Value>,
    #[serde(default)]
    subcategories: Map<String, Value>,
    #[serde(default)]
    conflations: Map<String, Value>,
    #[serde(default)]
    tasks: Vec<Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawField {
    char: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawQuiver {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<RawArrow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawArrow {
    name: String,
    from: String,
    to: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    CheckPct,
    Quotient,
    Classes,
    Confl,
}

/// A task: which command it belongs to, what it is about, and the facts
/// the report is expected to contain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Task {
    pub kind: TaskKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcategory: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conflation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    /// Per-vertex bound of the object sample for the quotient sweep of `confl`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub expect: Map<String, Value>,
}

/// A validated specification.
#[derive(Debug, Clone)]
pub struct SpecDocument {
    pub name: String,
    pub cat: RepCategory,
    pub objects: Vec<(String, RepObj)>,
    pub subcategories: Vec<(String, Vec<String>)>,
    pub conflations: Vec<(String, SES)>,
    pub tasks: Vec<Task>,
}

impl SpecDocument {
    pub fn object(&self, name: &str) -> Option<&RepObj> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    pub fn conflation(&self, name: &str) -> Option<&SES> {
        self.conflations.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn subcategory(&self, name: &str) -> Option<Vec<(String, RepObj)>> {
        let (_, names) = self.subcategories.iter().find(|(n, _)| n == name)?;
        Some(names.iter().map(|n| (n.clone(), self.object(n).unwrap().clone())).collect())
    }

    pub fn tasks_of(&self, kind: TaskKind) -> impl Iterator<Item = &Task> {
        self.tasks.iter().filter(move |t| t.kind == kind)
    }

    /// Canonical JSON form: every vertex listed in `dims`, every arrow in
    /// `maps`, every vertex in morphism `comps`.
    pub fn to_json(&self) -> Value {
        let q = self.cat.quiver();
        let mut objects = Map::new();
        for (name, x) in &self.objects {
            objects.insert(name.clone(), obj_json(q, x));
        }
        let mut subcats = Map::new();
        for (name, gens) in &self.subcategories {
            subcats.insert(name.clone(), serde_json::json!(gens));
        }
        let mut confls = Map::new();
        for (name, s) in &self.conflations {
            let find = |x: &RepObj| {
                self.objects
                    .iter()
                    .find(|(_, o)| o == x)
                    .map(|(n, _)| n.clone())
                    .unwrap()
            };
            let mor = |f: &RepMor| {
                let comps: Map<String, Value> = q
                    .vertices()
                    .iter()
                    .enumerate()
                    .map(|(v, name)| (name.clone(), matrix_json(f.comp(v))))
                    .collect();
                serde_json::json!({"from": find(f.src()), "to": find(f.dst()), "comps": comps})
            };
            confls.insert(name.clone(), serde_json::json!({"incl": mor(&s.incl), "proj": mor(&s.proj)}));
        }
        let arrows: Vec<Value> = q
            .arrows()
            .iter()
            .map(|a| {
                serde_json::json!({
                    "name": a.name,
                    "from": q.vertices()[a.source],
                    "to": q.vertices()[a.target],
                })
            })
            .collect();
        serde_json::json!({
            "schema": SCHEMA,
            "field": {"char": self.cat.field().characteristic()},
            "quiver": {"vertices": q.vertices(), "arrows": arrows},
            "objects": objects,
            "subcategories": subcats,
            "conflations": confls,
            "tasks": self.tasks,
        })
    }
}

fn obj_json(q: &Quiver, x: &RepObj) -> Value {
    let dims: Map<String, Value> = q
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, n)| (n.clone(), Value::from(x.dim(v))))
        .collect();
    let maps: Map<String, Value> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| (arr.name.clone(), matrix_json(x.map(a))))
        .collect();
    serde_json::json!({"dims": dims, "maps": maps})
}

fn matrix_json(m: &FpMatrix) -> Value {
    serde_json::json!(m.to_rows())
}

pub fn parse_spec_file(path: &Path) -> Result<SpecDocument, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_spec(&name, &text)
}

/// Parses and validates a spec, reporting every problem found.
pub fn parse_spec(name: &str, text: &str) -> Result<SpecDocument, SpecError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| SpecError::Syntax(e.to_string()))?;
    let mut errs = Vec::new();
    if raw.schema != SCHEMA {
        errs.push(format!("schema is {:?}, expected {SCHEMA:?}", raw.schema));
    }
    let field = match Field::new(raw.field.char) {
        Ok(f) => Some(f),
        Err(e) => {
            errs.push(e.to_string());
            None
        }
    };
    let arrows: Vec<(String, String, String)> = raw
        .quiver
        .arrows
        .iter()
        .map(|a| (a.name.clone(), a.from.clone(), a.to.clone()))
        .collect();
    let quiver = match Quiver::new(&raw.quiver.vertices, &arrows) {
        Ok(q) => Some(q),
        Err(e) => {
            errs.push(e.to_string());
            None
        }
    };
    let (Some(field), Some(quiver)) = (field, quiver) else {
        return Err(SpecError::Invalid(errs));
    };
    let cat = RepCategory::new(quiver, field);
    let q = cat.quiver().clone();

    let mut objects = Vec::new();
    for (name, v) in &raw.objects {
        if let Some(x) = parse_object(&cat, &q, name, v, &mut errs) {
            objects.push((name.clone(), x));
        }
    }
    let lookup = |n: &str| objects.iter().find(|(m, _)| m == n).map(|(_, o)| o.clone());

    let mut subcategories = Vec::new();
    for (name, v) in &raw.subcategories {
        let Some(list) = v.as_array() else {
            errs.push(format!("subcategory {name}: expected a list of object names"));
            continue;
        };
        let mut gens = Vec::new();
        for g in list {
            match g.as_str() {
                Some(g) if raw.objects.contains_key(g) => gens.push(g.to_string()),
                Some(g) => errs.push(format!("subcategory {name}: unknown object {g:?}")),
                None => errs.push(format!("subcategory {name}: expected object names")),
            }
        }
        subcategories.push((name.clone(), gens));
    }

    let mut conflations = Vec::new();
    for (name, v) in &raw.conflations {
        let incl = parse_morphism(&cat, &q, &format!("conflation {name}, incl"), v.get("incl"), &lookup, &mut errs);
        let proj = parse_morphism(&cat, &q, &format!("conflation {name}, proj"), v.get("proj"), &lookup, &mut errs);
        if let (Some(i), Some(p)) = (incl, proj) {
            match cat.ses(i, p) {
                Ok(s) => conflations.push((name.clone(), s)),
                Err(e) => errs.push(format!("conflation {name}: {e}")),
            }
        }
    }

    let mut tasks = Vec::new();
    for (i, t) in raw.tasks.iter().enumerate() {
        match serde_json::from_value::<Task>(t.clone()) {
            Ok(task) => {
                if let Some(s) = &task.subcategory {
                    if !raw.subcategories.contains_key(s) {
                        errs.push(format!("task {i}: unknown subcategory {s:?}"));
                    }
                }
                if let Some(c) = &task.conflation {
                    if !raw.conflations.contains_key(c) {
                        errs.push(format!("task {i}: unknown conflation {c:?}"));
                    }
                }
                tasks.push(task);
            }
            Err(e) => errs.push(format!("task {i}: {e}")),
        }
    }

    if !errs.is_empty() {
        return Err(SpecError::Invalid(errs));
    }
    Ok(SpecDocument {
        name: name.to_string(),
        cat,
        objects,
        subcategories,
        conflations,
        tasks,
    })
}

/// A matrix of shape `rows x cols`; `[]` stands for any matrix with no entries.
fn parse_matrix(
    field: Field,
    v: Option<&Value>,
    rows: usize,
    cols: usize,
    what: &str,
    errs: &mut Vec<String>,
) -> Option<FpMatrix> {
    let Some(v) = v else {
        return Some(FpMatrix::zeros(field, rows, cols));
    };
    let parsed: Option<Vec<Vec<i64>>> = serde_json::from_value(v.clone()).ok();
    let Some(m) = parsed else {
        errs.push(format!("{what}: expected a list of integer rows"));
        return None;
    };
    if m.is_empty() && rows * cols == 0 {
        return Some(FpMatrix::zeros(field, rows, cols));
    }
    let actual_cols = m.first().map_or(0, |r| r.len());
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        errs.push(format!(
            "{what}: expected shape {rows}x{cols}, got {}x{actual_cols}",
            m.len()
        ));
        return None;
    }
    let data = m.iter().flatten().map(|&x| field.reduce(x)).collect();
    Some(FpMatrix::from_vec(field, rows, cols, data))
}

fn parse_object(cat: &RepCategory, q: &Quiver, name: &str, v: &Value, errs: &mut Vec<String>) -> Option<RepObj> {
    let before = errs.len();
    let dims_v = v.get("dims").and_then(Value::as_object).cloned().unwrap_or_default();
    for k in dims_v.keys() {
        if q.vertex_index(k).is_none() {
            errs.push(format!("object {name}: unknown vertex {k:?}"));
        }
    }
    let dims: Vec<usize> = q
        .vertices()
        .iter()
        .map(|vn| match dims_v.get(vn) {
            None => 0,
            Some(d) => d.as_u64().map(|d| d as usize).unwrap_or_else(|| {
                errs.push(format!("object {name}: dimension at {vn} is not a natural number"));
                0
            }),
        })
        .collect();
    let maps_v = v.get("maps").and_then(Value::as_object).cloned().unwrap_or_default();
    for k in maps_v.keys() {
        if q.arrow_index(k).is_none() {
            errs.push(format!("object {name}: unknown arrow {k:?}"));
        }
    }
    let maps: Vec<Option<FpMatrix>> = q
        .arrows()
        .iter()
        .map(|a| {
            parse_matrix(
                cat.field(),
                maps_v.get(&a.name),
                dims[a.target],
                dims[a.source],
                &format!("object {name}, arrow {}", a.name),
                errs,
            )
        })
        .collect();
    if errs.len() > before {
        return None;
    }
    match cat.object(dims, maps.into_iter().map(Option::unwrap).collect()) {
        Ok(x) => Some(x),
        Err(e) => {
            errs.push(format!("object {name}: {e}"));
            None
        }
    }
}

fn parse_morphism(
    cat: &RepCategory,
    q: &Quiver,
    what: &str,
    v: Option<&Value>,
    lookup: &dyn Fn(&str) -> Option<RepObj>,
    errs: &mut Vec<String>,
) -> Option<RepMor> {
    let Some(v) = v else {
        errs.push(format!("{what}: missing"));
        return None;
    };
    let end = |key: &str, errs: &mut Vec<String>| {
        let n = v.get(key).and_then(Value::as_str);
        match n.and_then(lookup) {
            Some(o) => Some(o),
            None => {
                errs.push(format!("{what}: unknown or missing object in {key:?}"));
                None
            }
        }
    };
    let src = end("from", errs);
    let dst = end("to", errs);
    let (src, dst) = (src?, dst?);
    let comps_v = v.get("comps").and_then(Value::as_object).cloned().unwrap_or_default();
    for k in comps_v.keys() {
        if q.vertex_index(k).is_none() {
            errs.push(format!("{what}: unknown vertex {k:?}"));
        }
    }
    let before = errs.len();
    let comps: Vec<Option<FpMatrix>> = q
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, vn)| {
            parse_matrix(
                cat.field(),
                comps_v.get(vn),
                dst.dim(i),
                src.dim(i),
                &format!("{what}, vertex {vn}"),
                errs,
            )
        })
        .collect();
    if errs.len() > before {
        return None;
    }
    match cat.morphism(&src, &dst, comps.into_iter().map(Option::unwrap).collect()) {
        Ok(f) => Some(f),
        Err(e) => {
            errs.push(format!("{what}: {e}"));
            None
        }
    }
}

pub fn zero_object_count(doc: &SpecDocument) -> usize {
    doc.objects.iter().filter(|(_, o)| doc.cat.is_zero_object(o)).count()
}
