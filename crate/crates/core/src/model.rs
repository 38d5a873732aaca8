//! Combinatorial model of a b-manifold `(M, Z)`.
//!
//! A [`BGraph`] has one node per connected component of `M \ Z` (carrying its
//! Euler characteristic) and one edge per connected component of `Z`. Edges
//! whose two sides lie in the same region are loops. The graph can be given
//! directly or derived from a [`TriangulatedSurface`] with a marked cycle
//! system, in which case the Euler characteristics are counted rather than
//! trusted.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A connected component of `M \ Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub label: String,
    /// Euler characteristic of the region.
    pub euler_char: i64,
}

impl Region {
    pub fn new(label: impl Into<String>, euler_char: i64) -> Self {
        Self {
            label: label.into(),
            euler_char,
        }
    }
}

/// A connected component of the critical hypersurface `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceComponent {
    pub label: String,
    pub side_a: String,
    pub side_b: String,
    /// Unused by the two-dimensional formulas, where every component is a circle.
    #[serde(default)]
    pub euler_char: i64,
}

impl HypersurfaceComponent {
    pub fn new(label: impl Into<String>, side_a: impl Into<String>, side_b: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            side_a: side_a.into(),
            side_b: side_b.into(),
            euler_char: 0,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.side_a == self.side_b
    }
}

/// The associated graph of a b-manifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BGraph {
    pub regions: Vec<Region>,
    pub edges: Vec<HypersurfaceComponent>,
    pub ambient_dim: u32,
    /// Whether `M` is orientable with `Z` co-oriented. Not checkable from the
    /// graph alone, so it is taken on trust.
    pub orientable: bool,
}

impl BGraph {
    pub fn new(regions: Vec<Region>, edges: Vec<HypersurfaceComponent>, ambient_dim: u32) -> Self {
        Self {
            regions,
            edges,
            ambient_dim,
            orientable: true,
        }
    }

    pub fn region(&self, label: &str) -> Option<&Region> {
        self.regions.iter().find(|r| r.label == label)
    }

    pub fn region_labels(&self) -> impl Iterator<Item = &str> {
        self.regions.iter().map(|r| r.label.as_str())
    }

    /// Neighbor lists keyed by region label. Loop edges appear as self-neighbors.
    pub fn adjacency(&self) -> BTreeMap<&str, Vec<&str>> {
        let mut adj: BTreeMap<&str, Vec<&str>> =
            self.regions.iter().map(|r| (r.label.as_str(), Vec::new())).collect();
        for e in &self.edges {
            if let Some(n) = adj.get_mut(e.side_a.as_str()) {
                n.push(e.side_b.as_str());
            }
            if !e.is_loop() {
                if let Some(n) = adj.get_mut(e.side_b.as_str()) {
                    n.push(e.side_a.as_str());
                }
            }
        }
        adj
    }

    /// Connected components of the graph, each sorted by label, ordered by
    /// their smallest label.
    pub fn components(&self) -> Vec<Vec<&str>> {
        let adj = self.adjacency();
        let mut seen: HashSet<&str> = HashSet::new();
        let mut out = Vec::new();
        for &start in adj.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Sum of region Euler characteristics.
    pub fn total_region_euler(&self) -> i64 {
        self.regions.iter().map(|r| r.euler_char).sum()
    }
}

/// One broken invariant of a [`BGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NoRegions,
    ZeroAmbientDimension,
    DuplicateRegionLabel { label: String },
    DuplicateEdgeLabel { label: String },
    DanglingEndpoint { edge: String, region: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoRegions => write!(f, "graph has no regions"),
            Violation::ZeroAmbientDimension => write!(f, "ambient dimension must be positive"),
            Violation::DuplicateRegionLabel { label } => write!(f, "duplicate region label `{label}`"),
            Violation::DuplicateEdgeLabel { label } => write!(f, "duplicate edge label `{label}`"),
            Violation::DanglingEndpoint { edge, region } => {
                write!(f, "edge `{edge}` references missing region `{region}`")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every invariant violation of `g`. An empty report means the graph is valid.
pub fn validate_graph(g: &BGraph) -> ValidationReport {
    let mut violations = Vec::new();
    if g.regions.is_empty() {
        violations.push(Violation::NoRegions);
    }
    if g.ambient_dim == 0 {
        violations.push(Violation::ZeroAmbientDimension);
    }
    let mut labels = HashSet::new();
    let mut reported = HashSet::new();
    for r in &g.regions {
        if !labels.insert(r.label.as_str()) && reported.insert(r.label.as_str()) {
            violations.push(Violation::DuplicateRegionLabel {
                label: r.label.clone(),
            });
        }
    }
    let mut edge_labels = HashSet::new();
    let mut edge_reported = HashSet::new();
    for e in &g.edges {
        if !edge_labels.insert(e.label.as_str()) && edge_reported.insert(e.label.as_str()) {
            violations.push(Violation::DuplicateEdgeLabel {
                label: e.label.clone(),
            });
        }
        let mut ends = vec![&e.side_a];
        if !e.is_loop() {
            ends.push(&e.side_b);
        }
        for end in ends {
            if !labels.contains(end.as_str()) {
                violations.push(Violation::DanglingEndpoint {
                    edge: e.label.clone(),
                    region: end.clone(),
                });
            }
        }
    }
    ValidationReport { violations }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("triangle {index} references vertex {vertex} but the surface has {vertex_count} vertices")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("triangle {index} is degenerate")]
    DegenerateTriangle { index: usize },
    #[error("surface is not closed: edge ({0}, {1}) lies in {2} triangles")]
    NonClosedSurface(usize, usize, usize),
    #[error("invalid critical set: {0}")]
    InvalidZ(String),
}

/// An unordered vertex pair stored with the smaller index first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeKey(pub usize, pub usize);

impl EdgeKey {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Self(a, b)
        } else {
            Self(b, a)
        }
    }
}

/// A closed triangulated surface together with a marked system of edge cycles `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulatedSurface {
    pub vertex_count: usize,
    pub triangles: Vec<[usize; 3]>,
    pub z_edges: BTreeSet<EdgeKey>,
}

fn triangle_edges(t: &[usize; 3]) -> [EdgeKey; 3] {
    [
        EdgeKey::new(t[0], t[1]),
        EdgeKey::new(t[1], t[2]),
        EdgeKey::new(t[0], t[2]),
    ]
}

/// `V - E + F` of the subcomplex spanned by the given triangles and all their faces.
fn closure_euler<'a>(tris: impl IntoIterator<Item = &'a [usize; 3]>) -> i64 {
    let mut verts = HashSet::new();
    let mut edges = HashSet::new();
    let mut faces = 0i64;
    for t in tris {
        faces += 1;
        verts.extend(t.iter().copied());
        edges.extend(triangle_edges(t));
    }
    verts.len() as i64 - edges.len() as i64 + faces
}

impl TriangulatedSurface {
    pub fn new(
        vertex_count: usize,
        triangles: Vec<[usize; 3]>,
        z_edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        Self {
            vertex_count,
            triangles,
            z_edges: z_edges.into_iter().map(|(a, b)| EdgeKey::new(a, b)).collect(),
        }
    }

    /// Map from each edge to the triangles containing it.
    pub fn edge_incidence(&self) -> HashMap<EdgeKey, Vec<usize>> {
        let mut inc: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
        for (i, t) in self.triangles.iter().enumerate() {
            for e in triangle_edges(t) {
                inc.entry(e).or_default().push(i);
            }
        }
        inc
    }

    /// Checks closedness and that `z_edges` is a disjoint union of cycles.
    pub fn check(&self) -> Result<HashMap<EdgeKey, Vec<usize>>, SurfaceError> {
        for (index, t) in self.triangles.iter().enumerate() {
            if let Some(&vertex) = t.iter().find(|&&v| v >= self.vertex_count) {
                return Err(SurfaceError::VertexOutOfRange {
                    index,
                    vertex,
                    vertex_count: self.vertex_count,
                });
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(SurfaceError::DegenerateTriangle { index });
            }
        }
        let inc = self.edge_incidence();
        let mut bad: Vec<_> = inc.iter().filter(|(_, ts)| ts.len() != 2).collect();
        bad.sort_by_key(|(e, _)| **e);
        if let Some((e, ts)) = bad.first() {
            return Err(SurfaceError::NonClosedSurface(e.0, e.1, ts.len()));
        }
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &self.z_edges {
            if e.0 == e.1 {
                return Err(SurfaceError::InvalidZ(format!("self-edge at vertex {}", e.0)));
            }
            if !inc.contains_key(e) {
                return Err(SurfaceError::InvalidZ(format!(
                    "({}, {}) is not an edge of the triangulation",
                    e.0, e.1
                )));
            }
            *degree.entry(e.0).or_default() += 1;
            *degree.entry(e.1).or_default() += 1;
        }
        if let Some((v, d)) = degree.iter().find(|(_, &d)| d != 2) {
            return Err(SurfaceError::InvalidZ(format!(
                "vertex {v} has degree {d} in the marked edges, expected 2"
            )));
        }
        Ok(inc)
    }
}

/// `V - E + F` of the whole complex. Vertices not used by any triangle are ignored.
pub fn surface_euler(surf: &TriangulatedSurface) -> i64 {
    closure_euler(&surf.triangles)
}

/// Derives the associated graph from a triangulated surface.
///
/// Regions are the classes of triangles connected across unmarked edges,
/// labelled `R0, R1, ...` in order of their lowest triangle index. Each cycle
/// of `z_edges` becomes one edge `Z0, Z1, ...` (ordered by lowest vertex)
/// joining the regions on its two sides.
pub fn build_graph_from_surface(surf: &TriangulatedSurface) -> Result<BGraph, SurfaceError> {
    let inc = surf.check()?;

    let mut region_of = vec![usize::MAX; surf.triangles.len()];
    let mut region_tris: Vec<Vec<usize>> = Vec::new();
    for seed in 0..surf.triangles.len() {
        if region_of[seed] != usize::MAX {
            continue;
        }
        let id = region_tris.len();
        region_of[seed] = id;
        let mut members = vec![seed];
        let mut queue = VecDeque::from([seed]);
        while let Some(t) = queue.pop_front() {
            for e in triangle_edges(&surf.triangles[t]) {
                if surf.z_edges.contains(&e) {
                    continue;
                }
                for &nb in &inc[&e] {
                    if region_of[nb] == usize::MAX {
                        region_of[nb] = id;
                        members.push(nb);
                        queue.push_back(nb);
                    }
                }
            }
        }
        region_tris.push(members);
    }

    let regions: Vec<Region> = region_tris
        .iter()
        .enumerate()
        .map(|(i, tris)| Region::new(format!("R{i}"), closure_euler(tris.iter().map(|&t| &surf.triangles[t]))))
        .collect();

    // Cycles of Z: walk vertex adjacency restricted to marked edges.
    let mut z_adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in &surf.z_edges {
        z_adj.entry(e.0).or_default().push(e.1);
        z_adj.entry(e.1).or_default().push(e.0);
    }
    let mut visited = HashSet::new();
    let mut edges = Vec::new();
    for &start in z_adj.keys() {
        if !visited.insert(start) {
            continue;
        }
        let mut sides = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &z_adj[&v] {
                for &t in &inc[&EdgeKey::new(v, w)] {
                    sides.insert(region_of[t]);
                }
                if visited.insert(w) {
                    stack.push(w);
                }
            }
        }
        let sides: Vec<usize> = sides.into_iter().collect();
        let (a, b) = match sides.as_slice() {
            [a] => (*a, *a),
            [a, b] => (*a, *b),
            _ => {
                return Err(SurfaceError::InvalidZ(format!(
                    "cycle through vertex {start} borders {} regions",
                    sides.len()
                )))
            }
        };
        let label = format!("Z{}", edges.len());
        edges.push(HypersurfaceComponent::new(
            label,
            regions[a].label.clone(),
            regions[b].label.clone(),
        ));
    }

    Ok(BGraph::new(regions, edges, 2))
}

/// Graph of the circle with `k` marked points: `k` arcs joined cyclically.
/// With `k = 0` it is a single arc-free region; with `k = 1` the one arc has a loop.
pub fn circle_graph(k: usize) -> BGraph {
    if k == 0 {
        return BGraph::new(vec![Region::new("S1", 0)], Vec::new(), 1);
    }
    let regions = (0..k).map(|i| Region::new(format!("A{i}"), 1)).collect();
    let edges = (0..k)
        .map(|i| HypersurfaceComponent::new(format!("p{i}"), format!("A{i}"), format!("A{}", (i + 1) % k)))
        .collect();
    BGraph::new(regions, edges, 1)
}

/// The sphere `S^n` split along its equator: two hemispheres of Euler characteristic 1.
pub fn sphere_equator_graph(n: u32) -> BGraph {
    BGraph::new(
        vec![Region::new("B+", 1), Region::new("B-", 1)],
        vec![HypersurfaceComponent::new("equator", "B+", "B-")],
        n,
    )
}
