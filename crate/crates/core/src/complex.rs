//! Simplicial surfaces: validated face incidence with link and star queries.
//!
//! A [`SimplicialSurface`] is a pure 2-dimensional simplicial complex in which
//! every edge lies in one or two triangles and the link of every vertex is a
//! single cycle (interior vertex) or a single path (boundary vertex). All
//! other modules build on these primitives.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Dense, zero-based vertex id.
pub type Vertex = usize;

/// Sorted vertex triple.
pub type Face = [Vertex; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("face list is empty")]
    Empty,
    #[error("face {0:?} repeats a vertex")]
    DegenerateFace(Face),
    #[error("face {0:?} appears more than once")]
    DuplicateFace(Face),
    #[error("edge {0}-{1} lies in {2} faces")]
    NonManifoldEdge(Vertex, Vertex, usize),
    #[error("link of vertex {vertex} is {reason}")]
    BadLink { vertex: Vertex, reason: &'static str },
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("vertex {0} given twice where two distinct vertices are required")]
    SameVertex(Vertex),
    #[error("face {face:?} references vertex {vertex} but only {vertex_count} vertices are declared")]
    VertexOutOfRange {
        face: Face,
        vertex: Vertex,
        vertex_count: usize,
    },
    #[error("surface is closed")]
    ClosedSurface,
    #[error("not a disc: {0}")]
    NotADisc(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkKind {
    Cycle,
    Path,
}

/// Ordered link of a vertex.
///
/// Cycles start at the smallest neighbor and continue towards the smaller of
/// its two link neighbors. Paths start at their smaller endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Link {
    pub kind: LinkKind,
    pub vertices: Vec<Vertex>,
}

impl Link {
    pub fn is_cycle(&self) -> bool {
        self.kind == LinkKind::Cycle
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    /// Link neighbors of the entry at `idx`; `None` past a path end.
    pub fn adjacent(&self, idx: usize) -> (Option<Vertex>, Option<Vertex>) {
        let n = self.vertices.len();
        match self.kind {
            LinkKind::Cycle => (
                Some(self.vertices[(idx + n - 1) % n]),
                Some(self.vertices[(idx + 1) % n]),
            ),
            LinkKind::Path => (
                idx.checked_sub(1).map(|i| self.vertices[i]),
                self.vertices.get(idx + 1).copied(),
            ),
        }
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            LinkKind::Cycle => "C",
            LinkKind::Path => "P",
        };
        write!(f, "{}{}(", name, self.vertices.len())?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FVector {
    pub f0: usize,
    pub f1: usize,
    pub f2: usize,
    pub chi: i64,
}

impl FVector {
    pub fn new(f0: usize, f1: usize, f2: usize) -> Self {
        Self {
            f0,
            f1,
            f2,
            chi: f0 as i64 - f1 as i64 + f2 as i64,
        }
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}) chi={}", self.f0, self.f1, self.f2, self.chi)
    }
}

/// A validated triangulated surface, possibly with boundary.
///
/// Immutable once built. Faces are stored as sorted triples in sorted order,
/// so two surfaces built from permutations of the same face list are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialSurface {
    vertex_count: usize,
    faces: Vec<Face>,
    links: Vec<Link>,
    neighbors: Vec<Vec<Vertex>>,
    edge_count: usize,
    boundary_edge_count: usize,
}

impl SimplicialSurface {
    /// Validates a face list; the vertex count is one past the largest id.
    pub fn build_from_faces(faces: &[[Vertex; 3]]) -> Result<Self, ComplexError> {
        let n = faces
            .iter()
            .flat_map(|f| f.iter().copied())
            .max()
            .map_or(0, |m| m + 1);
        Self::with_vertex_count(n, faces)
    }

    /// Validates a face list against a declared vertex count. Every id in
    /// `0..vertex_count` must appear in some face.
    pub fn with_vertex_count(
        vertex_count: usize,
        faces: &[[Vertex; 3]],
    ) -> Result<Self, ComplexError> {
        if faces.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut sorted = Vec::with_capacity(faces.len());
        for raw in faces {
            let mut f = *raw;
            f.sort_unstable();
            if f[0] == f[1] || f[1] == f[2] {
                return Err(ComplexError::DegenerateFace(*raw));
            }
            if f[2] >= vertex_count {
                return Err(ComplexError::VertexOutOfRange {
                    face: *raw,
                    vertex: f[2],
                    vertex_count,
                });
            }
            sorted.push(f);
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateFace(w[0]));
        }

        let mut edge_faces: HashMap<(Vertex, Vertex), usize> = HashMap::new();
        for f in &sorted {
            for (a, b) in [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])] {
                *edge_faces.entry((a, b)).or_insert(0) += 1;
            }
        }
        let mut edges: Vec<_> = edge_faces.into_iter().collect();
        edges.sort_unstable();
        if let Some(&((a, b), c)) = edges.iter().find(|(_, c)| *c > 2) {
            return Err(ComplexError::NonManifoldEdge(a, b, c));
        }
        let boundary_edge_count = edges.iter().filter(|(_, c)| *c == 1).count();

        // opposite edges of each vertex
        let mut opposite: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); vertex_count];
        for f in &sorted {
            opposite[f[0]].push((f[1], f[2]));
            opposite[f[1]].push((f[0], f[2]));
            opposite[f[2]].push((f[0], f[1]));
        }
        let mut links = Vec::with_capacity(vertex_count);
        for (v, opp) in opposite.iter().enumerate() {
            links.push(assemble_link(v, opp)?);
        }
        let neighbors = links
            .iter()
            .map(|l| {
                let mut ns = l.vertices.clone();
                ns.sort_unstable();
                ns
            })
            .collect();

        Ok(Self {
            vertex_count,
            faces: sorted,
            links,
            neighbors,
            edge_count: edges.len(),
            boundary_edge_count,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_edge_count == 0
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count
    }

    fn check(&self, v: Vertex) -> Result<(), ComplexError> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(ComplexError::UnknownVertex(v))
        }
    }

    pub fn link(&self, v: Vertex) -> Result<&Link, ComplexError> {
        self.check(v)?;
        Ok(&self.links[v])
    }

    /// Sorted neighbor list. Panics on an unknown vertex.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors[v].len()
    }

    pub fn is_boundary_vertex(&self, v: Vertex) -> bool {
        self.links[v].kind == LinkKind::Path
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count && self.neighbors[u].binary_search(&v).is_ok()
    }

    /// Third vertices of the faces on edge `uv` (empty if `uv` is not an edge).
    pub fn edge_apexes(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let link = &self.links[u];
        match link.position(v) {
            None => Vec::new(),
            Some(i) => {
                let (a, b) = link.adjacent(i);
                a.into_iter().chain(b).collect()
            }
        }
    }

    /// Number of faces containing edge `uv` (0, 1 or 2).
    pub fn faces_on_edge(&self, u: Vertex, v: Vertex) -> usize {
        self.edge_apexes(u, v).len()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn f_vector(&self) -> FVector {
        FVector::new(self.vertex_count, self.edge_count, self.faces.len())
    }

    pub fn boundary_edge_count(&self) -> usize {
        self.boundary_edge_count
    }

    pub fn interior_edge_count(&self) -> usize {
        self.edge_count - self.boundary_edge_count
    }

    pub fn boundary_vertices(&self) -> Vec<Vertex> {
        self.vertices()
            .filter(|&v| self.is_boundary_vertex(v))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0).len() == self.vertex_count
    }

    fn component_of(&self, start: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// The cone `v * lk(v)`, relabelled with `v` as 0 and its link vertices
    /// as `1..` in link order.
    pub fn star(&self, v: Vertex) -> Result<SimplicialSurface, ComplexError> {
        self.check(v)?;
        let link = &self.links[v];
        let local: HashMap<Vertex, Vertex> = link
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &w)| (w, i + 1))
            .collect();
        let faces: Vec<Face> = self
            .faces
            .iter()
            .filter(|f| f.contains(&v))
            .map(|f| {
                let mut g = [0; 3];
                for (slot, &x) in g.iter_mut().zip(f.iter()) {
                    *slot = if x == v { 0 } else { local[&x] };
                }
                g
            })
            .collect();
        SimplicialSurface::build_from_faces(&faces)
    }

    /// Sub-complex made of the faces whose three vertices satisfy `keep`,
    /// relabelled densely in increasing original-id order. Returns the
    /// sub-surface and the original id of each new vertex.
    pub fn induced(
        &self,
        keep: impl Fn(Vertex) -> bool,
    ) -> Result<(SimplicialSurface, Vec<Vertex>), ComplexError> {
        let kept: Vec<Face> = self
            .faces
            .iter()
            .copied()
            .filter(|f| f.iter().all(|&x| keep(x)))
            .collect();
        let mut originals: Vec<Vertex> = kept.iter().flatten().copied().collect();
        originals.sort_unstable();
        originals.dedup();
        let index: HashMap<Vertex, Vertex> = originals
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let faces: Vec<Face> = kept
            .iter()
            .map(|f| [index[&f[0]], index[&f[1]], index[&f[2]]])
            .collect();
        let sub = SimplicialSurface::build_from_faces(&faces)
            .map_err(|e| remap_error(e, &originals))?;
        Ok((sub, originals))
    }

    /// Applies `perm` (`perm[old] = new`), which must be a permutation of the
    /// vertex ids.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<SimplicialSurface, ComplexError> {
        let faces: Vec<Face> = self
            .faces
            .iter()
            .map(|f| [perm[f[0]], perm[f[1]], perm[f[2]]])
            .collect();
        SimplicialSurface::with_vertex_count(self.vertex_count, &faces)
    }

    /// Boundary vertices in cyclic order for a triangulated disc.
    ///
    /// Starts at the smallest boundary vertex and continues to the smaller of
    /// its two boundary neighbors.
    pub fn boundary_cycle(&self) -> Result<Vec<Vertex>, ComplexError> {
        if self.is_closed() {
            return Err(ComplexError::ClosedSurface);
        }
        if !self.is_connected() {
            return Err(ComplexError::NotADisc("surface is disconnected".into()));
        }
        let chi = self.f_vector().chi;
        if chi != 1 {
            return Err(ComplexError::NotADisc(format!("euler characteristic {chi}")));
        }
        let boundary = self.boundary_vertices();
        let start = boundary[0];
        let ends = self.boundary_neighbors(start);
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = ends.0.min(ends.1);
        while cur != start {
            cycle.push(cur);
            let (a, b) = self.boundary_neighbors(cur);
            let next = if a == prev { b } else { a };
            prev = cur;
            cur = next;
            if cycle.len() > boundary.len() {
                break;
            }
        }
        if cycle.len() != boundary.len() {
            return Err(ComplexError::NotADisc(format!(
                "boundary has several components ({} of {} vertices on the cycle through {start})",
                cycle.len(),
                boundary.len()
            )));
        }
        Ok(cycle)
    }

    fn boundary_neighbors(&self, v: Vertex) -> (Vertex, Vertex) {
        let l = &self.links[v].vertices;
        (l[0], l[l.len() - 1])
    }

    pub fn common_neighbor_count(&self, u: Vertex, v: Vertex) -> Result<usize, ComplexError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(ComplexError::SameVertex(u));
        }
        let (a, b) = (&self.neighbors[u], &self.neighbors[v]);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(count)
    }

    /// Degree test on interior vertices (all vertices when closed).
    pub fn is_d_regular(&self, d: usize) -> bool {
        self.vertices()
            .filter(|&v| !self.is_boundary_vertex(v))
            .all(|v| self.degree(v) == d)
    }

    /// The common degree of all vertices, if there is one.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        self.vertices().all(|v| self.degree(v) == d).then_some(d)
    }

    /// Whether the faces admit a coherent orientation.
    pub fn is_orientable(&self) -> bool {
        let face_index: HashMap<Face, usize> =
            self.faces.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        // orientation[i]: the cyclic order of face i is (f0,f1,f2) or reversed
        let mut orientation: Vec<Option<bool>> = vec![None; self.faces.len()];
        for seed in 0..self.faces.len() {
            if orientation[seed].is_some() {
                continue;
            }
            orientation[seed] = Some(true);
            let mut queue = VecDeque::from([seed]);
            while let Some(i) = queue.pop_front() {
                let f = self.faces[i];
                let o = orientation[i].unwrap();
                for (a, b) in directed_edges(f, o) {
                    for c in self.edge_apexes(a, b) {
                        let mut g = [a, b, c];
                        g.sort_unstable();
                        if g == f {
                            continue;
                        }
                        let j = face_index[&g];
                        // the neighbor must traverse the shared edge as b -> a
                        let want = directed_edges(g, true).contains(&(b, a));
                        match orientation[j] {
                            None => {
                                orientation[j] = Some(want);
                                queue.push_back(j);
                            }
                            Some(have) if have != want => return false,
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        true
    }
}

fn directed_edges(f: Face, forward: bool) -> [(Vertex, Vertex); 3] {
    if forward {
        [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])]
    } else {
        [(f[1], f[0]), (f[2], f[1]), (f[0], f[2])]
    }
}

fn remap_error(e: ComplexError, originals: &[Vertex]) -> ComplexError {
    let m = |v: Vertex| originals.get(v).copied().unwrap_or(v);
    match e {
        ComplexError::NonManifoldEdge(a, b, c) => ComplexError::NonManifoldEdge(m(a), m(b), c),
        ComplexError::BadLink { vertex, reason } => ComplexError::BadLink {
            vertex: m(vertex),
            reason,
        },
        other => other,
    }
}

fn assemble_link(v: Vertex, opposite: &[(Vertex, Vertex)]) -> Result<Link, ComplexError> {
    if opposite.is_empty() {
        return Err(ComplexError::BadLink {
            vertex: v,
            reason: "empty (isolated vertex)",
        });
    }
    let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for &(a, b) in opposite {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    // link degrees above 2 are excluded by the edge check
    let mut ends: Vec<Vertex> = adj
        .iter()
        .filter(|(_, ns)| ns.len() == 1)
        .map(|(&w, _)| w)
        .collect();
    ends.sort_unstable();
    let (kind, first, second) = match ends.len() {
        0 => {
            let first = *adj.keys().min().unwrap();
            let ns = &adj[&first];
            (LinkKind::Cycle, first, ns[0].min(ns[1]))
        }
        2 => (LinkKind::Path, ends[0], adj[&ends[0]][0]),
        _ => {
            return Err(ComplexError::BadLink {
                vertex: v,
                reason: "disconnected (several paths)",
            })
        }
    };
    let mut vertices = vec![first, second];
    loop {
        let cur = vertices[vertices.len() - 1];
        let prev = vertices[vertices.len() - 2];
        let next = adj[&cur].iter().copied().find(|&x| x != prev);
        match next {
            Some(x) if x == first => break,
            Some(x) => {
                vertices.push(x);
                if vertices.len() > adj.len() {
                    break;
                }
            }
            None => break,
        }
    }
    if vertices.len() != adj.len() {
        return Err(ComplexError::BadLink {
            vertex: v,
            reason: "disconnected (several components)",
        });
    }
    Ok(Link { kind, vertices })
}
