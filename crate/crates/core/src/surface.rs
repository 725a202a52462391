//! Compact triangulated surfaces-with-boundary and their classification
//! invariants.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = u32;

/// Unordered edge key, smaller vertex first.
pub type Edge = (VertexId, VertexId);

fn edge(a: VertexId, b: VertexId) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("triangle {0:?} repeats a vertex")]
    DegenerateTriangle([VertexId; 3]),
    #[error("triangle {0:?} appears twice")]
    DuplicateTriangle([VertexId; 3]),
    #[error("triangle {triangle:?} uses vertex {vertex} outside the vertex set")]
    UnknownVertex {
        triangle: [VertexId; 3],
        vertex: VertexId,
    },
}

/// A finite 2-dimensional simplicial complex given by its triangles.
///
/// Triangles keep the vertex order they were given in but the list itself
/// is kept sorted, so equal complexes compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    vertices: BTreeSet<VertexId>,
    triangles: Vec<[VertexId; 3]>,
}

impl Triangulation {
    /// Complex whose vertex set is exactly the vertices used by `triangles`.
    pub fn new(triangles: Vec<[VertexId; 3]>) -> Result<Self, TriangulationError> {
        let vertices = triangles.iter().flatten().copied().collect();
        Self::with_vertices(vertices, triangles)
    }

    pub fn with_vertices(
        vertices: BTreeSet<VertexId>,
        mut triangles: Vec<[VertexId; 3]>,
    ) -> Result<Self, TriangulationError> {
        let mut seen = BTreeSet::new();
        for &t in &triangles {
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(TriangulationError::DegenerateTriangle(t));
            }
            if let Some(&v) = t.iter().find(|v| !vertices.contains(v)) {
                return Err(TriangulationError::UnknownVertex {
                    triangle: t,
                    vertex: v,
                });
            }
            let mut key = t;
            key.sort_unstable();
            if !seen.insert(key) {
                return Err(TriangulationError::DuplicateTriangle(t));
            }
        }
        triangles.sort_unstable();
        Ok(Self { vertices, triangles })
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[VertexId; 3]] {
        &self.triangles
    }

    /// Applies an injective renaming of vertex identifiers.
    pub fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> Result<Self, TriangulationError> {
        Self::with_vertices(
            self.vertices.iter().map(|&v| f(v)).collect(),
            self.triangles.iter().map(|t| t.map(&f)).collect(),
        )
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TriangleListError {
    #[error("expected a triangle `a,b,c`, found `{0}`")]
    Syntax(String),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
}

/// Whitespace-separated `a,b,c` triangles, the notation of `.tap` files.
impl FromStr for Triangulation {
    type Err = TriangleListError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tris = Vec::new();
        for tok in s.split_whitespace() {
            let parts: Vec<_> = tok.split(',').map(str::parse::<VertexId>).collect();
            match parts.as_slice() {
                [Ok(a), Ok(b), Ok(c)] => tris.push([*a, *b, *c]),
                _ => return Err(TriangleListError::Syntax(tok.to_string())),
            }
        }
        Ok(Triangulation::new(tris)?)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("complex has no triangles")]
    Empty,
    #[error("edge {0:?} lies in three or more triangles")]
    EdgeOveruse(Edge),
    #[error("vertex {0} is not a manifold point (its link is not a single fan)")]
    PinchedVertex(VertexId),
    #[error("complex is not connected (vertex {0} is unreachable)")]
    Disconnected(VertexId),
}

/// A boundary circle: boundary vertices in cyclic order, starting at the
/// smallest and continuing towards its smaller boundary neighbour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub index: usize,
    pub cycle: Vec<VertexId>,
}

/// Evidence that a triangulation is a connected compact 2-manifold with
/// (possibly empty) boundary.
#[derive(Clone, Debug)]
pub struct ValidatedSurface {
    triangulation: Triangulation,
    edges: BTreeMap<Edge, Vec<usize>>,
    boundary: Vec<BoundaryComponent>,
}

impl ValidatedSurface {
    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn vertex_count(&self) -> usize {
        self.triangulation.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangulation.triangles.len()
    }

    pub fn interior_edge_count(&self) -> usize {
        self.edges.values().filter(|ts| ts.len() == 2).count()
    }

    pub fn boundary_edge_count(&self) -> usize {
        self.edges.values().filter(|ts| ts.len() == 1).count()
    }

    /// Boundary circles, indexed by ascending smallest vertex.
    pub fn boundary_components(&self) -> &[BoundaryComponent] {
        &self.boundary
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.triangle_count() as i64
    }

    /// Tries to orient all triangles coherently: across each interior edge
    /// the two triangles must induce opposite directions.
    pub fn is_orientable(&self) -> bool {
        let tris = self.triangulation.triangles();
        // true = keep the stored vertex order, false = reverse it
        let mut orient: Vec<Option<bool>> = vec![None; tris.len()];
        let mut queue = VecDeque::from([0usize]);
        orient[0] = Some(true);
        while let Some(t) = queue.pop_front() {
            let o = orient[t].expect("queued triangles are oriented");
            for (a, b) in directed_edges(tris[t], o) {
                for &u in &self.edges[&edge(a, b)] {
                    if u == t {
                        continue;
                    }
                    // u must traverse the shared edge as b -> a.
                    let forward = directed_edges(tris[u], true).contains(&(b, a));
                    match orient[u] {
                        None => {
                            orient[u] = Some(forward);
                            queue.push_back(u);
                        }
                        Some(ou) if ou != forward => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}

fn directed_edges(t: [VertexId; 3], forward: bool) -> [(VertexId, VertexId); 3] {
    let [x, y, z] = t;
    if forward {
        [(x, y), (y, z), (z, x)]
    } else {
        [(y, x), (z, y), (x, z)]
    }
}

/// Checks the manifold conditions: every edge in one or two triangles,
/// a single fan around every vertex, connectedness, at least one triangle.
pub fn validate_triangulation(tri: &Triangulation) -> Result<ValidatedSurface, SurfaceError> {
    let tris = tri.triangles();
    if tris.is_empty() {
        return Err(SurfaceError::Empty);
    }

    let mut edges: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (i, t) in tris.iter().enumerate() {
        for (a, b) in directed_edges(*t, true) {
            edges.entry(edge(a, b)).or_default().push(i);
        }
    }
    if let Some((&e, _)) = edges.iter().find(|(_, ts)| ts.len() > 2) {
        return Err(SurfaceError::EdgeOveruse(e));
    }

    // Link of each vertex: the edges opposite to it.
    let mut links: BTreeMap<VertexId, Vec<Edge>> = BTreeMap::new();
    for &[x, y, z] in tris {
        links.entry(x).or_default().push(edge(y, z));
        links.entry(y).or_default().push(edge(x, z));
        links.entry(z).or_default().push(edge(x, y));
    }
    for &v in tri.vertices() {
        let Some(link) = links.get(&v) else {
            return Err(SurfaceError::Disconnected(v));
        };
        if !is_single_fan(link) {
            return Err(SurfaceError::PinchedVertex(v));
        }
    }

    // Triangle adjacency through shared edges.
    let mut reached = vec![false; tris.len()];
    let mut queue = VecDeque::from([0usize]);
    reached[0] = true;
    while let Some(t) = queue.pop_front() {
        for (a, b) in directed_edges(tris[t], true) {
            for &u in &edges[&edge(a, b)] {
                if !reached[u] {
                    reached[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    if let Some(t) = reached.iter().position(|r| !r) {
        let v = *tris[t].iter().min().expect("triangle has vertices");
        return Err(SurfaceError::Disconnected(v));
    }

    let boundary = boundary_cycles(&edges);
    Ok(ValidatedSurface {
        triangulation: tri.clone(),
        edges,
        boundary,
    })
}

/// A link is a single fan when, as a graph, it is connected with every
/// degree at most two (so it is one path or one cycle).
fn is_single_fan(link: &[Edge]) -> bool {
    let mut adj: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
    for &(a, b) in link {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|n| n.len() > 2) {
        return false;
    }
    let start = link[0].0;
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in &adj[&u] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == adj.len()
}

fn boundary_cycles(edges: &BTreeMap<Edge, Vec<usize>>) -> Vec<BoundaryComponent> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for (&(a, b), ts) in edges {
        if ts.len() == 1 {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    }
    for n in adj.values_mut() {
        n.sort_unstable();
    }
    let mut visited = BTreeSet::new();
    let mut out = Vec::new();
    // BTreeMap iteration visits each cycle first at its smallest vertex.
    for &start in adj.keys() {
        if visited.contains(&start) {
            continue;
        }
        let mut cycle = vec![start];
        visited.insert(start);
        let mut prev = start;
        let mut cur = adj[&start][0];
        while cur != start {
            cycle.push(cur);
            visited.insert(cur);
            let next = adj[&cur]
                .iter()
                .copied()
                .find(|&w| w != prev)
                .expect("boundary vertex has two boundary neighbours");
            prev = cur;
            cur = next;
        }
        out.push(BoundaryComponent {
            index: out.len(),
            cycle,
        });
    }
    out
}

/// Topological type of a compact connected surface-with-boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceClass {
    Orientable { genus: u64 },
    /// `crosscaps >= 1`.
    Nonorientable { crosscaps: u64 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("a nonorientable surface needs at least one cross-cap")]
    ZeroCrosscaps,
}

/// Classification invariants of a compact surface-with-boundary. The
/// Euler characteristic is derived, so the classification formulas hold by
/// construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSignature {
    class: SurfaceClass,
    boundary_count: u32,
}

impl SurfaceSignature {
    pub fn orientable(genus: u64, boundary_count: u32) -> Self {
        Self {
            class: SurfaceClass::Orientable { genus },
            boundary_count,
        }
    }

    pub fn nonorientable(crosscaps: u64, boundary_count: u32) -> Result<Self, SignatureError> {
        if crosscaps == 0 {
            return Err(SignatureError::ZeroCrosscaps);
        }
        Ok(Self {
            class: SurfaceClass::Nonorientable { crosscaps },
            boundary_count,
        })
    }

    pub fn class(&self) -> SurfaceClass {
        self.class
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self.class, SurfaceClass::Orientable { .. })
    }

    pub fn genus(&self) -> Option<u64> {
        match self.class {
            SurfaceClass::Orientable { genus } => Some(genus),
            SurfaceClass::Nonorientable { .. } => None,
        }
    }

    pub fn crosscaps(&self) -> Option<u64> {
        match self.class {
            SurfaceClass::Nonorientable { crosscaps } => Some(crosscaps),
            SurfaceClass::Orientable { .. } => None,
        }
    }

    pub fn boundary_count(&self) -> u32 {
        self.boundary_count
    }

    pub fn euler_characteristic(&self) -> i128 {
        let b = i128::from(self.boundary_count);
        match self.class {
            SurfaceClass::Orientable { genus } => 2 - 2 * i128::from(genus) - b,
            SurfaceClass::Nonorientable { crosscaps } => 2 - i128::from(crosscaps) - b,
        }
    }

    pub fn is_planar(&self) -> bool {
        is_planar(self)
    }
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.class {
            SurfaceClass::Orientable { genus } => write!(f, "orientable genus={genus}")?,
            SurfaceClass::Nonorientable { crosscaps } => {
                write!(f, "nonorientable crosscaps={crosscaps}")?
            }
        }
        write!(f, " boundaries={}", self.boundary_count)
    }
}

/// Reads the classification off a validated surface.
pub fn signature(surf: &ValidatedSurface) -> SurfaceSignature {
    let chi = surf.euler_characteristic();
    let b = surf.boundary_components().len() as i64;
    let boundary_count = u32::try_from(b).expect("boundary count fits in u32");
    if surf.is_orientable() {
        let twice_genus = 2 - chi - b;
        debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
        SurfaceSignature::orientable((twice_genus / 2) as u64, boundary_count)
    } else {
        let crosscaps = 2 - chi - b;
        SurfaceSignature::nonorientable(crosscaps as u64, boundary_count)
            .expect("nonorientable surfaces have chi + b <= 1")
    }
}

/// Every embedded circle separates: orientable of genus zero.
pub fn is_planar(sig: &SurfaceSignature) -> bool {
    sig.class == SurfaceClass::Orientable { genus: 0 }
}

/// Builds a triangulation realizing `sig`.
///
/// Starts from a sphere made of a capped square cylinder, removes one
/// triangle per hole, and glues in a 7-vertex torus (per handle) or a
/// 6-vertex projective plane (per cross-cap) through a triangular tube. The
/// removed triangles are pairwise vertex-disjoint, so the result stays a
/// manifold.
pub fn realize(sig: &SurfaceSignature) -> Triangulation {
    let (handles, crosscaps) = match sig.class {
        SurfaceClass::Orientable { genus } => (genus, 0),
        SurfaceClass::Nonorientable { crosscaps } => (0, crosscaps),
    };
    let slots = (handles + crosscaps + u64::from(sig.boundary_count)) as usize;
    let ring_pairs = slots.div_ceil(2).max(1);
    let rings = 2 * ring_pairs;
    let ring_vertex = |r: usize, i: usize| (r * 4 + i % 4) as VertexId;
    let top = (rings * 4) as VertexId;
    let bottom = top + 1;
    let mut next_vertex = bottom + 1;

    let mut tris: Vec<[VertexId; 3]> = Vec::new();
    let mut disjoint: Vec<usize> = Vec::new();
    for i in 0..4 {
        tris.push([top, ring_vertex(0, i + 1), ring_vertex(0, i)]);
        tris.push([bottom, ring_vertex(rings - 1, i), ring_vertex(rings - 1, i + 1)]);
    }
    for r in 0..rings - 1 {
        for i in 0..4 {
            let (a, b) = (ring_vertex(r, i), ring_vertex(r, i + 1));
            let (c, d) = (ring_vertex(r + 1, i), ring_vertex(r + 1, i + 1));
            if r % 2 == 0 && i % 2 == 0 {
                disjoint.push(tris.len());
            }
            tris.push([a, b, c]);
            tris.push([b, d, c]);
        }
    }

    let mut removed = vec![false; tris.len()];
    let mut slot = disjoint.into_iter();
    let mut summands: Vec<(usize, &[[VertexId; 3]])> = Vec::new();
    for _ in 0..handles {
        summands.push((slot.next().expect("enough slots"), &TORUS_7));
    }
    for _ in 0..crosscaps {
        summands.push((slot.next().expect("enough slots"), &PROJECTIVE_PLANE_6));
    }
    for _ in 0..sig.boundary_count {
        removed[slot.next().expect("enough slots")] = true;
    }

    let mut extra = Vec::new();
    for (base, summand) in summands {
        removed[base] = true;
        let [a0, a1, a2] = tris[base];
        let shift = next_vertex;
        let local_max = summand.iter().flatten().copied().max().expect("nonempty");
        next_vertex += local_max + 1;
        let [b0, b1, b2] = summand[0].map(|v| v + shift);
        extra.extend(summand[1..].iter().map(|t| t.map(|v| v + shift)));
        let (a, b) = ([a0, a1, a2], [b0, b1, b2]);
        for i in 0..3 {
            let j = (i + 1) % 3;
            extra.push([a[i], a[j], b[i]]);
            extra.push([a[j], b[j], b[i]]);
        }
    }

    let kept = tris
        .into_iter()
        .zip(removed)
        .filter(|(_, r)| !r)
        .map(|(t, _)| t)
        .chain(extra)
        .collect();
    Triangulation::new(kept).expect("construction yields a simplicial complex")
}

/// Minimal 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
const TORUS_7: [[VertexId; 3]; 14] = [
    [0, 1, 3],
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 6],
    [4, 5, 0],
    [5, 6, 1],
    [6, 0, 2],
    [0, 2, 3],
    [1, 3, 4],
    [2, 4, 5],
    [3, 5, 6],
    [4, 6, 0],
    [5, 0, 1],
    [6, 1, 2],
];

/// Minimal 6-vertex projective plane (half icosahedron).
const PROJECTIVE_PLANE_6: [[VertexId; 3]; 10] = [
    [0, 1, 2],
    [0, 2, 3],
    [0, 3, 4],
    [0, 4, 5],
    [0, 5, 1],
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 1],
    [4, 5, 2],
    [5, 1, 3],
];
