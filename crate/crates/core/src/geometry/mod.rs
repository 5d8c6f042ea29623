//! Constant-curvature realizations of degree-regular triangulations.
//!
//! Hyperbolic discs (`d >= 7`) live on the hyperboloid. The star of the
//! center comes from the triangle group; every further vertex is the mirror
//! image of a known vertex across the shared edge of two adjacent faces.
//! Flat discs (`d = 6`) use exact integer lattice coordinates, and the three
//! spherical references use Platonic solid coordinates.

mod model;
mod render;
mod triangle_group;

pub use model::{to_poincare, Model, ModelPoint, Motion};
pub use render::{render_svg, write_off, SvgOptions};
pub use triangle_group::TriangleGroup;

use std::cell::RefCell;
use std::collections::{HashSet, VecDeque};
use std::f64::consts::PI;
use std::fmt;

use nalgebra::Vector3;
use thiserror::Error;

use crate::classify::{ReferenceKind, ReferenceSurface};
use crate::complex::{ComplexError, Face, SimplicialSurface, Vertex};
use crate::equivalence::find_isomorphism;
use crate::generator::LayeredDisk;

/// Path-independence residual above which a realization is rejected as drift.
pub const DEFAULT_DRIFT_LIMIT: f64 = 1e-6;

/// Residuals this large mean the surface does not develop into the model.
const DEVELOPMENT_LIMIT: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("degree {degree} is below the supported minimum {minimum}")]
    DegreeTooSmall { degree: usize, minimum: usize },
    #[error("the {model} model does not fit a {degree}-regular triangulation")]
    ModelMismatch { model: Model, degree: usize },
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error("interior vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular {
        vertex: Vertex,
        degree: usize,
        expected: usize,
    },
    #[error("vertex {vertex} was never reached from the seed star")]
    Unreached { vertex: Vertex },
    #[error("vertex {vertex} placed inconsistently (residual {residual:e}); surface does not develop")]
    NotDevelopable { vertex: Vertex, residual: f64 },
    #[error("numerical drift {residual:e} at vertex {vertex} exceeds the limit")]
    NumericalDrift { vertex: Vertex, residual: f64 },
    #[error(transparent)]
    Surface(#[from] ComplexError),
}

/// `arccosh(cos(2π/d) / (1 - cos(2π/d)))`, the side of the equilateral
/// hyperbolic triangle with angles `2π/d`.
pub fn edge_length(d: usize) -> Result<f64, GeometryError> {
    if d <= 6 {
        return Err(GeometryError::DegreeTooSmall {
            degree: d,
            minimum: 7,
        });
    }
    let c = (2.0 * PI / d as f64).cos();
    Ok((c / (1.0 - c)).acosh())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizedSurface {
    pub surface: SimplicialSurface,
    pub model: Model,
    pub positions: Vec<Vector3<f64>>,
    /// Target edge length in model units.
    pub edge_length: f64,
    /// Largest disagreement seen when a vertex was reached along a second path.
    pub path_residual: f64,
}

impl RealizedSurface {
    pub fn point(&self, v: Vertex) -> ModelPoint {
        ModelPoint {
            model: self.model,
            coords: self.positions[v],
        }
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> f64 {
        self.model.distance(&self.positions[u], &self.positions[v])
    }

    /// Sum of the face angles at `v`.
    pub fn angle_sum(&self, v: Vertex) -> f64 {
        let p = &self.positions[v];
        self.surface
            .faces()
            .iter()
            .filter(|f| f.contains(&v))
            .map(|f| {
                let others: Vec<Vertex> = f.iter().copied().filter(|&x| x != v).collect();
                self.model
                    .angle(p, &self.positions[others[0]], &self.positions[others[1]])
            })
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizeOptions {
    pub drift_limit: f64,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        Self {
            drift_limit: DEFAULT_DRIFT_LIMIT,
        }
    }
}

/// Hyperbolic realization for `d >= 7`, flat lattice for `d = 6`.
pub fn realize_disk(disk: &LayeredDisk) -> Result<RealizedSurface, GeometryError> {
    let model = if disk.degree() == 6 {
        Model::Euclidean
    } else {
        Model::Hyperboloid
    };
    realize_surface(disk.surface(), model, RealizeOptions::default())
}

pub fn realize_reference(r: &ReferenceSurface) -> Result<RealizedSurface, GeometryError> {
    realize_surface(&r.surface, Model::Spherical, RealizeOptions::default())
}

/// Realizes `surface` in `model`.
///
/// Planar models need a triangulated disc whose interior vertices share one
/// degree; the seed is the smallest interior vertex. The spherical model
/// needs a surface combinatorially equivalent to a tetrahedron, octahedron
/// or icosahedron.
pub fn realize_surface(
    surface: &SimplicialSurface,
    model: Model,
    options: RealizeOptions,
) -> Result<RealizedSurface, GeometryError> {
    match model {
        Model::Spherical => realize_spherical(surface),
        Model::Euclidean | Model::Hyperboloid => realize_planar(surface, model, options),
    }
}

fn seed_and_degree(surface: &SimplicialSurface) -> Result<(Vertex, usize), GeometryError> {
    if surface.is_closed() {
        return Err(GeometryError::UnsupportedInput(
            "closed surfaces cannot be developed into the plane".into(),
        ));
    }
    let seed = surface
        .vertices()
        .find(|&v| !surface.is_boundary_vertex(v))
        .ok_or_else(|| GeometryError::UnsupportedInput("no interior vertex".into()))?;
    let d = surface.degree(seed);
    for v in surface.vertices() {
        if !surface.is_boundary_vertex(v) && surface.degree(v) != d {
            return Err(GeometryError::NotRegular {
                vertex: v,
                degree: surface.degree(v),
                expected: d,
            });
        }
    }
    Ok((seed, d))
}

fn sorted(mut f: Face) -> Face {
    f.sort_unstable();
    f
}

/// Face-by-face development from the star of `seed`.
///
/// Each reached face carries a frame `S` describing where its three corners
/// sit. `initial(i)` is the frame of the `i`-th face around the seed, whose
/// corners are `seed, link[i], link[i+1]`. `step(frame, i)` is the frame of
/// the face across the edge opposite corner `i`, with that corner replaced,
/// and `corner(frame, i)` is the position of corner `i`. `gap(a, b)`
/// measures how far two placements of one vertex disagree.
fn develop<S, P>(
    surface: &SimplicialSurface,
    seed: Vertex,
    initial: impl Fn(usize) -> S,
    step: impl Fn(&S, usize) -> S,
    corner: impl Fn(&S, usize) -> P,
    gap: impl Fn(&P, &P) -> f64,
) -> Result<(Vec<P>, f64, Vertex), GeometryError> {
    let n = surface.vertex_count();
    let mut pos: Vec<Option<P>> = (0..n).map(|_| None).collect();
    let link = surface.link(seed)?.vertices.clone();

    let mut seen: HashSet<Face> = HashSet::new();
    let mut queue: VecDeque<(S, [Vertex; 3])> = VecDeque::new();
    for i in 0..link.len() {
        let corners = [seed, link[i], link[(i + 1) % link.len()]];
        let frame = initial(i);
        for (c, &v) in corners.iter().enumerate() {
            if pos[v].is_none() {
                pos[v] = Some(corner(&frame, c));
            }
        }
        seen.insert(sorted(corners));
        queue.push_back((frame, corners));
    }
    let mut residual = 0.0f64;
    let mut worst = seed;
    while let Some((frame, corners)) = queue.pop_front() {
        for i in 0..3 {
            let (u, v) = (corners[(i + 1) % 3], corners[(i + 2) % 3]);
            for w in surface.edge_apexes(u, v) {
                if w == corners[i] {
                    continue;
                }
                let next = step(&frame, i);
                let image = corner(&next, i);
                match &pos[w] {
                    Some(existing) => {
                        let r = gap(existing, &image);
                        if r > residual {
                            residual = r;
                            worst = w;
                        }
                    }
                    None => pos[w] = Some(image),
                }
                let mut next_corners = corners;
                next_corners[i] = w;
                if seen.insert(sorted(next_corners)) {
                    queue.push_back((next, next_corners));
                }
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for (v, p) in pos.into_iter().enumerate() {
        out.push(p.ok_or(GeometryError::Unreached { vertex: v })?);
    }
    Ok((out, residual, worst))
}

/// Position of a developed face in its parent chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Frame {
    /// The `j`-th face around the seed.
    Seed(usize),
    /// Index into the chain of reflected faces.
    Reflected(usize),
}

impl Frame {
    // Seeds use the high half of the index space.
    const SEED_BIT: usize = 1 << (usize::BITS - 1);

    fn index(self) -> usize {
        match self {
            Frame::Seed(j) => j | Self::SEED_BIT,
            Frame::Reflected(k) => k,
        }
    }

    fn from_index(i: usize) -> Self {
        if i & Self::SEED_BIT != 0 {
            Frame::Seed(i & !Self::SEED_BIT)
        } else {
            Frame::Reflected(i)
        }
    }
}

fn check_residual(residual: f64, vertex: Vertex, limit: f64) -> Result<(), GeometryError> {
    if residual > DEVELOPMENT_LIMIT {
        Err(GeometryError::NotDevelopable { vertex, residual })
    } else if residual > limit {
        Err(GeometryError::NumericalDrift { vertex, residual })
    } else {
        Ok(())
    }
}

fn realize_planar(
    surface: &SimplicialSurface,
    model: Model,
    options: RealizeOptions,
) -> Result<RealizedSurface, GeometryError> {
    let (seed, d) = seed_and_degree(surface)?;
    match (model, d) {
        (Model::Euclidean, 6) => {
            // Eisenstein coordinates: (a, b) sits at a + b·e^{iπ/3}
            const RING: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];
            let (lattice, residual, worst) = develop(
                surface,
                seed,
                |i| [(0, 0), RING[i % 6], RING[(i + 1) % 6]],
                |c: &[(i64, i64); 3], i| {
                    let (u, v, x) = (c[(i + 1) % 3], c[(i + 2) % 3], c[i]);
                    let mut next = *c;
                    next[i] = (u.0 + v.0 - x.0, u.1 + v.1 - x.1);
                    next
                },
                |c, i| c[i],
                |a, b| if a == b { 0.0 } else { f64::INFINITY },
            )?;
            check_residual(residual, worst, options.drift_limit)?;
            let h = 3f64.sqrt() / 2.0;
            let positions = lattice
                .iter()
                .map(|&(a, b)| Vector3::new(a as f64 + b as f64 / 2.0, b as f64 * h, 0.0))
                .collect();
            Ok(RealizedSurface {
                surface: surface.clone(),
                model,
                positions,
                edge_length: 1.0,
                path_residual: residual,
            })
        }
        (Model::Hyperboloid, d) if d >= 7 => {
            let group = TriangleGroup::new(d)?;
            let base = group.base_face();
            let mirrors = group.base_face_reflections();
            let h = Model::Hyperboloid;
            // A face is the image of the base face under `rot^j M_1 .. M_n`,
            // stored as a parent chain. Positions are evaluated by applying
            // the word to a vector from the right, which keeps every
            // intermediate step an isometry of a point rather than a product
            // of large matrices.
            let chain: RefCell<Vec<(usize, usize)>> = RefCell::new(Vec::new());
            let (positions, residual, worst) = develop(
                surface,
                seed,
                Frame::Seed,
                |f: &Frame, i| {
                    let mut c = chain.borrow_mut();
                    c.push((f.index(), i));
                    Frame::Reflected(c.len() - 1)
                },
                |f, i| {
                    let c = chain.borrow();
                    let mut p = base[i];
                    let mut at = *f;
                    while let Frame::Reflected(k) = at {
                        let (parent, mirror) = c[k];
                        p = h.normalize(mirrors[mirror].apply(&p));
                        at = Frame::from_index(parent);
                    }
                    let Frame::Seed(j) = at else { unreachable!() };
                    h.normalize(Motion::rotation(h, 2.0 * PI * j as f64 / d as f64).apply(&p))
                },
                |a, b| h.distance(a, b),
            )?;
            check_residual(residual, worst, options.drift_limit)?;
            Ok(RealizedSurface {
                surface: surface.clone(),
                model,
                positions,
                edge_length: edge_length(d)?,
                path_residual: residual,
            })
        }
        (model, degree) => Err(GeometryError::ModelMismatch { model, degree }),
    }
}

/// Unit-sphere vertex coordinates of the Platonic solid of the given kind.
pub fn platonic_coordinates(kind: ReferenceKind) -> Result<Vec<Vector3<f64>>, GeometryError> {
    let raw: Vec<Vector3<f64>> = match kind {
        ReferenceKind::Tetrahedron => vec![
            Vector3::new(1.0, 1.0, 1.0),
            Vector3::new(1.0, -1.0, -1.0),
            Vector3::new(-1.0, 1.0, -1.0),
            Vector3::new(-1.0, -1.0, 1.0),
        ],
        ReferenceKind::Octahedron => vec![
            Vector3::x(),
            -Vector3::x(),
            Vector3::y(),
            -Vector3::y(),
            Vector3::z(),
            -Vector3::z(),
        ],
        ReferenceKind::Icosahedron => {
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            let mut v = Vec::with_capacity(12);
            for a in [1.0, -1.0] {
                for b in [phi, -phi] {
                    v.push(Vector3::new(0.0, a, b));
                    v.push(Vector3::new(a, b, 0.0));
                    v.push(Vector3::new(b, 0.0, a));
                }
            }
            v
        }
        ReferenceKind::Rp2_6 => {
            return Err(GeometryError::UnsupportedInput(
                "the projective plane has no spherical realization".into(),
            ))
        }
    };
    Ok(raw.into_iter().map(|p| p.normalize()).collect())
}

/// Faces of the convex hull of points in convex position on the sphere.
fn hull_faces(points: &[Vector3<f64>]) -> Vec<Face> {
    let n = points.len();
    let mut faces = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let normal = (points[b] - points[a]).cross(&(points[c] - points[a]));
                let side = |p: &Vector3<f64>| normal.dot(&(p - points[a]));
                let all_below = (0..n)
                    .filter(|&i| i != a && i != b && i != c)
                    .all(|i| side(&points[i]) < -1e-9);
                let all_above = (0..n)
                    .filter(|&i| i != a && i != b && i != c)
                    .all(|i| side(&points[i]) > 1e-9);
                if all_below || all_above {
                    faces.push([a, b, c]);
                }
            }
        }
    }
    faces
}

fn realize_spherical(surface: &SimplicialSurface) -> Result<RealizedSurface, GeometryError> {
    let kind = match (surface.regular_degree(), surface.is_closed()) {
        (Some(3), true) => ReferenceKind::Tetrahedron,
        (Some(4), true) => ReferenceKind::Octahedron,
        (Some(5), true) => ReferenceKind::Icosahedron,
        (Some(degree), _) => {
            return Err(GeometryError::ModelMismatch {
                model: Model::Spherical,
                degree,
            })
        }
        (None, _) => {
            return Err(GeometryError::UnsupportedInput(
                "spherical realization needs a closed degree-regular surface".into(),
            ))
        }
    };
    let coords = platonic_coordinates(kind)?;
    let solid = SimplicialSurface::build_from_faces(&hull_faces(&coords))?;
    let map = find_isomorphism(surface, &solid)
        .map_err(|e| GeometryError::UnsupportedInput(e.to_string()))?
        .ok_or_else(|| {
            GeometryError::UnsupportedInput(format!(
                "{}-regular surface is not a {}",
                kind.degree(),
                kind.name()
            ))
        })?;
    let positions: Vec<Vector3<f64>> = map.iter().map(|&i| coords[i]).collect();
    let (u, v) = surface.edges().next().expect("closed surfaces have edges");
    let edge_length = Model::Spherical.distance(&positions[u], &positions[v]);
    Ok(RealizedSurface {
        surface: surface.clone(),
        model: Model::Spherical,
        positions,
        edge_length,
        path_residual: 0.0,
    })
}

/// Metric audit of a realization.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub model: Model,
    pub tol: f64,
    pub edge_length: f64,
    pub max_edge_deviation: f64,
    pub worst_edge: Option<(Vertex, Vertex)>,
    pub max_angle_deviation: f64,
    pub worst_vertex: Option<Vertex>,
    /// Smallest distance between distinct vertices.
    pub min_distance: f64,
    /// Smallest distance between non-adjacent vertices.
    pub min_nonadjacent_distance: Option<f64>,
    pub closest_nonadjacent: Option<(Vertex, Vertex)>,
    pub path_residual: f64,
    pub passed: bool,
}

impl MetricReport {
    pub fn to_tsv(&self) -> String {
        let opt = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:e}"));
        let mut out = String::from("quantity\tvalue\n");
        out += &format!("model\t{}\n", self.model);
        out += &format!("edge_length\t{}\n", self.edge_length);
        out += &format!("max_edge_deviation\t{:e}\n", self.max_edge_deviation);
        out += &format!("max_angle_deviation\t{:e}\n", self.max_angle_deviation);
        out += &format!("min_distance\t{:e}\n", self.min_distance);
        out += &format!(
            "min_nonadjacent_distance\t{}\n",
            opt(self.min_nonadjacent_distance)
        );
        out += &format!("path_residual\t{:e}\n", self.path_residual);
        out += &format!("tol\t{:e}\n", self.tol);
        out += &format!("passed\t{}\n", self.passed);
        out
    }
}

impl fmt::Display for MetricReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "model: {}", self.model)?;
        writeln!(f, "edge length: {:.12}", self.edge_length)?;
        write!(f, "max edge deviation: {:e}", self.max_edge_deviation)?;
        if let Some((u, v)) = self.worst_edge {
            write!(f, " (edge {u}-{v})")?;
        }
        writeln!(f)?;
        write!(f, "max angle-sum deviation: {:e}", self.max_angle_deviation)?;
        if let Some(v) = self.worst_vertex {
            write!(f, " (vertex {v})")?;
        }
        writeln!(f)?;
        writeln!(f, "min vertex distance: {:.12}", self.min_distance)?;
        match (self.min_nonadjacent_distance, self.closest_nonadjacent) {
            (Some(d), Some((u, v))) => {
                writeln!(f, "min non-adjacent distance: {d:.12} ({u}-{v})")?
            }
            _ => writeln!(f, "min non-adjacent distance: none")?,
        }
        writeln!(f, "path residual: {:e}", self.path_residual)?;
        write!(
            f,
            "{} at tol {:e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.tol
        )
    }
}

/// Edge lengths, angle sums at interior vertices and vertex separation.
///
/// Passes iff every edge is within `tol` of the target length, every
/// interior angle sum is within `tol` of `2π`, no two non-adjacent vertices
/// are closer than `s - tol`, and the development residual is within `tol`.
pub fn verify_metric(r: &RealizedSurface, tol: f64) -> MetricReport {
    let s = &r.surface;
    let mut max_edge_deviation = 0.0f64;
    let mut worst_edge = None;
    for (u, v) in s.edges() {
        let dev = (r.distance(u, v) - r.edge_length).abs();
        if dev > max_edge_deviation || dev.is_nan() {
            max_edge_deviation = dev;
            worst_edge = Some((u, v));
        }
    }

    let mut max_angle_deviation = 0.0f64;
    let mut worst_vertex = None;
    for v in s.vertices().filter(|&v| !s.is_boundary_vertex(v)) {
        let dev = (r.angle_sum(v) - 2.0 * PI).abs();
        if dev > max_angle_deviation || dev.is_nan() {
            max_angle_deviation = dev;
            worst_vertex = Some(v);
        }
    }

    let n = s.vertex_count();
    let mut min_distance = f64::INFINITY;
    let mut min_nonadjacent: Option<f64> = None;
    let mut closest_nonadjacent = None;
    for u in 0..n {
        for v in u + 1..n {
            let dist = r.distance(u, v);
            min_distance = min_distance.min(dist);
            if min_nonadjacent.is_none_or(|m| dist < m) && !s.is_adjacent(u, v) {
                min_nonadjacent = Some(dist);
                closest_nonadjacent = Some((u, v));
            }
        }
    }

    let passed = max_edge_deviation <= tol
        && max_angle_deviation <= tol
        && min_nonadjacent.is_none_or(|m| m >= r.edge_length - tol)
        && r.path_residual <= tol;
    MetricReport {
        model: r.model,
        tol,
        edge_length: r.edge_length,
        max_edge_deviation,
        worst_edge,
        max_angle_deviation,
        worst_vertex,
        min_distance,
        min_nonadjacent_distance: min_nonadjacent,
        closest_nonadjacent,
        path_residual: r.path_residual,
        passed,
    }
}
