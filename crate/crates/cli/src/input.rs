//! Manifold files: a JSON object holding exactly one of `graph` or `surface`.
//!
//! ```json
//! {"graph": {"regions": [{"label": "B+", "chi": 1}, {"label": "B-", "chi": 1}],
//!            "edges": [{"label": "equator", "a": "B+", "b": "B-"}],
//!            "ambient_dim": 2, "orientable": true}}
//! {"surface": {"vertices": 6, "triangles": [[0, 1, 2], ...], "z_edges": [[1, 2], ...]}}
//! ```
//!
//! Schema problems are reported with the JSON pointer of the offending value.

use std::fs;
use std::path::{Path, PathBuf};

use btangent::model::{build_graph_from_surface, validate_graph, SurfaceError, Violation};
use btangent::{BGraph, HypersurfaceComponent, Region, TriangulatedSurface};
use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} is not valid JSON: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("schema violation at `{pointer}`: {message}")]
    Schema { pointer: String, message: String },
    #[error("invalid surface: {0}")]
    Surface(#[from] SurfaceError),
}

impl InputError {
    fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        InputError::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }

    pub fn pointer(&self) -> Option<&str> {
        match self {
            InputError::Schema { pointer, .. } => Some(pointer),
            _ => None,
        }
    }
}

/// Where a loaded graph came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Graph,
    Surface,
}

#[derive(Debug, Clone)]
pub struct Manifold {
    pub graph: BGraph,
    pub source: Source,
}

pub fn load(path: &Path) -> Result<Manifold, InputError> {
    let text = fs::read_to_string(path).map_err(|source| InputError::Read {
        path: path.to_owned(),
        source,
    })?;
    let value: Value = serde_json::from_str(&text).map_err(|source| InputError::Json {
        path: path.to_owned(),
        source,
    })?;
    parse(&value)
}

pub fn parse(value: &Value) -> Result<Manifold, InputError> {
    let root = object(value, "")?;
    check_keys(root, "", &["graph", "surface"])?;
    match (root.get("graph"), root.get("surface")) {
        (Some(g), None) => Ok(Manifold {
            graph: parse_graph(g)?,
            source: Source::Graph,
        }),
        (None, Some(s)) => Ok(Manifold {
            graph: build_graph_from_surface(&parse_surface(s)?)?,
            source: Source::Surface,
        }),
        (Some(_), Some(_)) => Err(InputError::schema("", "exactly one of `graph` and `surface` is allowed, found both")),
        (None, None) => Err(InputError::schema("", "expected a `graph` or a `surface` key")),
    }
}

/// Escapes a key for use as a JSON pointer token.
fn token(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

fn object<'v>(v: &'v Value, at: &str) -> Result<&'v Map<String, Value>, InputError> {
    v.as_object()
        .ok_or_else(|| InputError::schema(at, format!("expected an object, found {}", kind(v))))
}

fn array<'v>(v: &'v Value, at: &str) -> Result<&'v Vec<Value>, InputError> {
    v.as_array()
        .ok_or_else(|| InputError::schema(at, format!("expected an array, found {}", kind(v))))
}

fn string<'v>(v: &'v Value, at: &str) -> Result<&'v str, InputError> {
    v.as_str()
        .ok_or_else(|| InputError::schema(at, format!("expected a string, found {}", kind(v))))
}

fn integer(v: &Value, at: &str) -> Result<i64, InputError> {
    v.as_i64()
        .ok_or_else(|| InputError::schema(at, format!("expected an integer, found {}", kind(v))))
}

fn index(v: &Value, at: &str) -> Result<usize, InputError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| InputError::schema(at, format!("expected a non-negative integer, found {}", kind(v))))
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(n) if n.is_i64() || n.is_u64() => "an integer",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn check_keys(obj: &Map<String, Value>, at: &str, allowed: &[&str]) -> Result<(), InputError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(InputError::schema(
            format!("{at}/{}", token(k)),
            format!("unknown key, expected one of {}", allowed.join(", ")),
        )),
        None => Ok(()),
    }
}

fn required<'v>(obj: &'v Map<String, Value>, at: &str, key: &str) -> Result<&'v Value, InputError> {
    obj.get(key)
        .ok_or_else(|| InputError::schema(at, format!("missing required key `{key}`")))
}

fn parse_graph(v: &Value) -> Result<BGraph, InputError> {
    let at = "/graph";
    let obj = object(v, at)?;
    check_keys(obj, at, &["regions", "edges", "ambient_dim", "orientable"])?;

    let mut regions = Vec::new();
    for (i, r) in array(required(obj, at, "regions")?, "/graph/regions")?.iter().enumerate() {
        let rp = format!("/graph/regions/{i}");
        let ro = object(r, &rp)?;
        check_keys(ro, &rp, &["label", "chi"])?;
        let label = string(required(ro, &rp, "label")?, &format!("{rp}/label"))?;
        let chi = integer(required(ro, &rp, "chi")?, &format!("{rp}/chi"))?;
        regions.push(Region::new(label, chi));
    }

    let mut edges = Vec::new();
    if let Some(list) = obj.get("edges") {
        for (i, e) in array(list, "/graph/edges")?.iter().enumerate() {
            let ep = format!("/graph/edges/{i}");
            let eo = object(e, &ep)?;
            check_keys(eo, &ep, &["label", "a", "b", "chi"])?;
            let label = string(required(eo, &ep, "label")?, &format!("{ep}/label"))?;
            let a = string(required(eo, &ep, "a")?, &format!("{ep}/a"))?;
            let b = string(required(eo, &ep, "b")?, &format!("{ep}/b"))?;
            let mut comp = HypersurfaceComponent::new(label, a, b);
            if let Some(chi) = eo.get("chi") {
                comp.euler_char = integer(chi, &format!("{ep}/chi"))?;
            }
            edges.push(comp);
        }
    }

    let ambient_dim = match obj.get("ambient_dim") {
        Some(d) => {
            let d = index(d, "/graph/ambient_dim")?;
            u32::try_from(d)
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| InputError::schema("/graph/ambient_dim", "expected a positive dimension"))?
        }
        None => 2,
    };
    let mut graph = BGraph::new(regions, edges, ambient_dim);
    if let Some(o) = obj.get("orientable") {
        graph.orientable = o
            .as_bool()
            .ok_or_else(|| InputError::schema("/graph/orientable", format!("expected a boolean, found {}", kind(o))))?;
    }

    if let Some(first) = validate_graph(&graph).violations.first() {
        return Err(InputError::schema(violation_pointer(&graph, first), first.to_string()));
    }
    Ok(graph)
}

fn violation_pointer(g: &BGraph, v: &Violation) -> String {
    match v {
        Violation::NoRegions => "/graph/regions".to_owned(),
        Violation::ZeroAmbientDimension => "/graph/ambient_dim".to_owned(),
        Violation::DuplicateRegionLabel { label } => {
            let i = g.regions.iter().rposition(|r| &r.label == label).unwrap_or(0);
            format!("/graph/regions/{i}/label")
        }
        Violation::DuplicateEdgeLabel { label } => {
            let i = g.edges.iter().rposition(|e| &e.label == label).unwrap_or(0);
            format!("/graph/edges/{i}/label")
        }
        Violation::DanglingEndpoint { edge, region } => {
            let i = g.edges.iter().position(|e| &e.label == edge).unwrap_or(0);
            let side = if &g.edges[i].side_a == region { "a" } else { "b" };
            format!("/graph/edges/{i}/{side}")
        }
    }
}

fn parse_surface(v: &Value) -> Result<TriangulatedSurface, InputError> {
    let at = "/surface";
    let obj = object(v, at)?;
    check_keys(obj, at, &["vertices", "triangles", "z_edges"])?;
    let n = index(required(obj, at, "vertices")?, "/surface/vertices")?;

    let vertex = |x: &Value, p: String| -> Result<usize, InputError> {
        let i = index(x, &p)?;
        if i >= n {
            return Err(InputError::schema(p, format!("vertex {i} out of range for {n} vertices")));
        }
        Ok(i)
    };
    let tuple = |x: &Value, p: &str, len: usize| -> Result<Vec<usize>, InputError> {
        let items = array(x, p)?;
        if items.len() != len {
            return Err(InputError::schema(p, format!("expected {len} vertex indices, found {}", items.len())));
        }
        items
            .iter()
            .enumerate()
            .map(|(k, x)| vertex(x, format!("{p}/{k}")))
            .collect()
    };

    let mut triangles = Vec::new();
    for (i, t) in array(required(obj, at, "triangles")?, "/surface/triangles")?.iter().enumerate() {
        let t = tuple(t, &format!("/surface/triangles/{i}"), 3)?;
        triangles.push([t[0], t[1], t[2]]);
    }
    let mut z = Vec::new();
    if let Some(list) = obj.get("z_edges") {
        for (i, e) in array(list, "/surface/z_edges")?.iter().enumerate() {
            let e = tuple(e, &format!("/surface/z_edges/{i}"), 2)?;
            z.push((e[0], e[1]));
        }
    }
    Ok(TriangulatedSurface::new(n, triangles, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn pointer_of(v: Value) -> String {
        parse(&v).unwrap_err().pointer().unwrap().to_owned()
    }

    #[test]
    fn minimal_graph() {
        let m = parse(&json!({"graph": {"regions": [{"label": "M", "chi": 2}]}})).unwrap();
        assert_eq!(m.graph.regions.len(), 1);
        assert_eq!(m.graph.ambient_dim, 2);
        assert!(m.graph.orientable);
        assert_eq!(m.source, Source::Graph);
    }

    #[test]
    fn schema_pointers() {
        assert_eq!(pointer_of(json!([])), "");
        assert_eq!(pointer_of(json!({})), "");
        assert_eq!(pointer_of(json!({"graph": {}, "surface": {}})), "");
        assert_eq!(pointer_of(json!({"graph": {"regions": [{"label": "A", "chi": "one"}]}})), "/graph/regions/0/chi");
        assert_eq!(
            pointer_of(json!({"graph": {"regions": [{"label": "A", "chi": 1}], "edges": [{"label": "e", "a": "A"}]}})),
            "/graph/edges/0"
        );
        assert_eq!(
            pointer_of(json!({"graph": {"regions": [{"label": "A", "chi": 1}], "edges": [{"label": "e", "a": "A", "b": "Q"}]}})),
            "/graph/edges/0/b"
        );
        assert_eq!(
            pointer_of(json!({"graph": {"regions": [{"label": "A", "chi": 1}, {"label": "A", "chi": 0}]}})),
            "/graph/regions/1/label"
        );
        assert_eq!(pointer_of(json!({"graph": {"regions": [], "colour": 1}})), "/graph/colour");
        assert_eq!(pointer_of(json!({"graph": {"regions": [{"label": "A", "chi": 1}], "ambient_dim": 0}})), "/graph/ambient_dim");
        assert_eq!(
            pointer_of(json!({"surface": {"vertices": 3, "triangles": [[0, 1, 3]]}})),
            "/surface/triangles/0/2"
        );
        assert_eq!(
            pointer_of(json!({"surface": {"vertices": 3, "triangles": [[0, 1]]}})),
            "/surface/triangles/0"
        );
        assert_eq!(pointer_of(json!({"graph": {"regions": [], "a/b": 1}})), "/graph/a~1b");
    }

    #[test]
    fn open_surface_is_not_a_schema_error() {
        let err = parse(&json!({"surface": {"vertices": 3, "triangles": [[0, 1, 2]]}})).unwrap_err();
        assert!(matches!(err, InputError::Surface(_)));
    }
}
