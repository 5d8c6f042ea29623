//! Layer-by-layer construction of the d-regular triangulated disc of radius k.
//!
//! The disc of radius 1 is the star of a center vertex. Each extension walks
//! the boundary cycle `w_0 .. w_{m-1}` and closes the link of every boundary
//! vertex to a d-cycle:
//!
//! * every boundary edge `w_i w_{i+1}` receives one new vertex (class A)
//!   shared by the links of both endpoints;
//! * a boundary vertex of degree 3 receives `d - 5` private new vertices
//!   (class C), one of degree 4 receives `d - 6` (class B);
//! * the private vertices of `w_i` form a path between its two A vertices,
//!   and `w_i` is coned over that path.
//!
//! The construction has no choices to make, so any walk order produces the
//! same disc up to relabelling.

mod audit;
mod counts;
mod verify;

pub use audit::{forbidden_disk_chi, DegreeProfile};
pub use counts::{
    closed_form_at_precision, closed_form_f64, layer_count, layer_counts_closed_form,
    layer_counts_recurrence,
};
pub use verify::{verify_document, verify_layer_invariants, Check, LayerReport, Outcome, Property};

use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialSurface, Vertex};
use crate::tri::{LayerRecord, TriDocument, VertexClass};

/// Default cap on the number of vertices a generated disc may have.
pub const DEFAULT_MAX_VERTICES: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("degree {degree} is below the supported minimum {minimum}")]
    DegreeTooSmall { degree: usize, minimum: usize },
    #[error("radius must be at least 1")]
    ZeroRadius,
    #[error("disc would have {requested} vertices, above the cap of {cap}")]
    ResourceLimit { requested: u128, cap: usize },
    #[error("construction audit failed: {0}")]
    InternalInvariantViolation(String),
    #[error("layer {layer} outside 2..={radius}")]
    LayerOutOfRange { layer: usize, radius: usize },
    #[error("closed form for d={degree}, k={k} is ambiguous at {bits} bits")]
    PrecisionLoss { degree: usize, k: usize, bits: u32 },
}

impl From<ComplexError> for GeneratorError {
    fn from(e: ComplexError) -> Self {
        GeneratorError::InternalInvariantViolation(e.to_string())
    }
}

/// Where an extension starts walking the boundary and in which direction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WalkOrder {
    /// Offset into the stored boundary cycle of the first walked vertex.
    pub start: usize,
    pub reversed: bool,
}

impl WalkOrder {
    pub const FORWARD: WalkOrder = WalkOrder {
        start: 0,
        reversed: false,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateOptions {
    pub max_vertices: usize,
    pub walk: WalkOrder,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_MAX_VERTICES,
            walk: WalkOrder::FORWARD,
        }
    }
}

/// A triangulated disc built as nested layers around a center vertex.
///
/// Vertex 0 is the center. `layers()[j]` lists the vertices at distance `j`
/// from it; the outermost layer is the boundary, stored in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredDisk {
    degree: usize,
    surface: SimplicialSurface,
    layers: Vec<Vec<Vertex>>,
    layer_of: Vec<usize>,
    classes: Vec<VertexClass>,
}

impl LayeredDisk {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn radius(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn surface(&self) -> &SimplicialSurface {
        &self.surface
    }

    pub fn center(&self) -> Vertex {
        0
    }

    pub fn layers(&self) -> &[Vec<Vertex>] {
        &self.layers
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn layer_of(&self, v: Vertex) -> usize {
        self.layer_of[v]
    }

    pub fn class_of(&self, v: Vertex) -> VertexClass {
        self.classes[v]
    }

    /// Boundary vertices in the cyclic order used by the next extension.
    pub fn boundary(&self) -> &[Vertex] {
        self.layers.last().expect("at least two layers")
    }

    /// `(|A_j|, |B_j|, |C_j|)` for `2 <= j <= radius`.
    pub fn partition_sizes(&self, j: usize) -> Result<(usize, usize, usize), GeneratorError> {
        if j < 2 || j > self.radius() {
            return Err(GeneratorError::LayerOutOfRange {
                layer: j,
                radius: self.radius(),
            });
        }
        let mut counts = (0, 0, 0);
        for &v in &self.layers[j] {
            match self.classes[v] {
                VertexClass::A => counts.0 += 1,
                VertexClass::B => counts.1 += 1,
                VertexClass::C => counts.2 += 1,
                VertexClass::Root => {}
            }
        }
        Ok(counts)
    }

    /// TRI document with a `layer` record for every vertex.
    pub fn to_document(&self) -> TriDocument {
        let mut doc = TriDocument::from_surface(&self.surface);
        doc.layers = (0..self.surface.vertex_count())
            .map(|v| LayerRecord {
                vertex: v,
                layer: self.layer_of[v],
                class: self.classes[v],
            })
            .collect();
        doc
    }

    /// One extension step with the default walk.
    pub fn extend(&self) -> Result<LayeredDisk, GeneratorError> {
        self.extend_with(WalkOrder::FORWARD, DEFAULT_MAX_VERTICES)
    }

    pub fn extend_with(
        &self,
        walk: WalkOrder,
        max_vertices: usize,
    ) -> Result<LayeredDisk, GeneratorError> {
        let d = self.degree;
        let stored = self.boundary();
        let m = stored.len();
        let rotated: Vec<Vertex> = (0..m).map(|i| stored[(walk.start + i) % m]).collect();
        let order: Vec<Vertex> = if walk.reversed {
            (0..m).map(|i| rotated[(m - i) % m]).collect()
        } else {
            rotated
        };

        let mut private = Vec::with_capacity(m);
        for &w in &order {
            private.push(match self.surface.degree(w) {
                3 => d - 5,
                4 => d - 6,
                other => {
                    return Err(GeneratorError::InternalInvariantViolation(format!(
                        "boundary vertex {w} has degree {other}"
                    )))
                }
            });
        }
        let old_n = self.surface.vertex_count();
        let added = m + private.iter().sum::<usize>();
        if old_n + added > max_vertices {
            return Err(GeneratorError::ResourceLimit {
                requested: (old_n + added) as u128,
                cap: max_vertices,
            });
        }

        // a[i] sits on edge order[i] order[i+1]; private vertices of order[i]
        // run from a[i-1] to a[i]
        let mut next = old_n;
        let mut a = vec![0; m];
        let mut fans: Vec<Vec<Vertex>> = vec![Vec::new(); m];
        let mut new_layer = Vec::with_capacity(added);
        let mut classes = self.classes.clone();
        for i in 0..m {
            a[i] = next;
            next += 1;
            new_layer.push(a[i]);
            classes.push(VertexClass::A);
            let j = (i + 1) % m;
            let class = if self.classes[order[j]] == VertexClass::A {
                VertexClass::B
            } else {
                VertexClass::C
            };
            for _ in 0..private[j] {
                fans[j].push(next);
                new_layer.push(next);
                classes.push(class);
                next += 1;
            }
        }

        let mut faces: Vec<Face> = self.surface.faces().to_vec();
        for i in 0..m {
            let j = (i + 1) % m;
            faces.push([order[i], order[j], a[i]]);
            let prev_a = a[(i + m - 1) % m];
            let path: Vec<Vertex> = std::iter::once(prev_a)
                .chain(fans[i].iter().copied())
                .chain(std::iter::once(a[i]))
                .collect();
            for pair in path.windows(2) {
                faces.push([order[i], pair[0], pair[1]]);
            }
        }
        let surface = SimplicialSurface::with_vertex_count(next, &faces)?;

        if walk.reversed {
            // keep the stored orientation of the initial disc
            let len = new_layer.len();
            new_layer = (0..len).map(|i| new_layer[(len - i) % len]).collect();
        }
        let mut layer_of = self.layer_of.clone();
        let k = self.layers.len();
        layer_of.resize(next, k);
        let mut layers = self.layers.clone();
        layers.push(new_layer);

        let disk = LayeredDisk {
            degree: d,
            surface,
            layers,
            layer_of,
            classes,
        };
        disk.audit_extension()?;
        Ok(disk)
    }

    // Cheap post-construction checks on the newest layer.
    fn audit_extension(&self) -> Result<(), GeneratorError> {
        let s = &self.surface;
        let fv = s.f_vector();
        if fv.chi != 1 {
            return Err(GeneratorError::InternalInvariantViolation(format!(
                "euler characteristic {} after extension",
                fv.chi
            )));
        }
        let k = self.radius();
        let mut boundary = s.boundary_vertices();
        let mut outer = self.layers[k].clone();
        boundary.sort_unstable();
        outer.sort_unstable();
        if boundary != outer {
            return Err(GeneratorError::InternalInvariantViolation(
                "boundary is not the outermost layer".into(),
            ));
        }
        for &v in &self.layers[k - 1] {
            if s.degree(v) != self.degree {
                return Err(GeneratorError::InternalInvariantViolation(format!(
                    "vertex {v} has degree {} instead of {}",
                    s.degree(v),
                    self.degree
                )));
            }
        }
        for &v in &self.layers[k] {
            if !(3..=4).contains(&s.degree(v)) {
                return Err(GeneratorError::InternalInvariantViolation(format!(
                    "boundary vertex {v} has degree {}",
                    s.degree(v)
                )));
            }
        }
        Ok(())
    }
}

/// The star of a degree-`d` center: radius 1.
pub fn initial_disk(d: usize) -> Result<LayeredDisk, GeneratorError> {
    if d < 6 {
        return Err(GeneratorError::DegreeTooSmall {
            degree: d,
            minimum: 6,
        });
    }
    let faces: Vec<Face> = (1..=d).map(|i| [0, i, i % d + 1]).collect();
    let surface = SimplicialSurface::build_from_faces(&faces)?;
    let mut layer_of = vec![1; d + 1];
    layer_of[0] = 0;
    Ok(LayeredDisk {
        degree: d,
        surface,
        layers: vec![vec![0], (1..=d).collect()],
        layer_of,
        classes: vec![VertexClass::Root; d + 1],
    })
}

/// The disc of radius `k` with the default walk and vertex cap.
pub fn generate(d: usize, k: usize) -> Result<LayeredDisk, GeneratorError> {
    generate_with(d, k, GenerateOptions::default())
}

pub fn generate_with(
    d: usize,
    k: usize,
    options: GenerateOptions,
) -> Result<LayeredDisk, GeneratorError> {
    if k == 0 {
        return Err(GeneratorError::ZeroRadius);
    }
    let counts = layer_counts_recurrence(d, k)?;
    let total: num_bigint::BigUint = counts.iter().sum();
    let fits = u128::try_from(&total)
        .ok()
        .filter(|&t| t <= options.max_vertices as u128);
    if fits.is_none() {
        return Err(GeneratorError::ResourceLimit {
            requested: u128::try_from(&total).unwrap_or(u128::MAX),
            cap: options.max_vertices,
        });
    }
    let mut disk = initial_disk(d)?;
    for _ in 1..k {
        disk = disk.extend_with(options.walk, options.max_vertices)?;
    }
    Ok(disk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{FVector, LinkKind};

    #[test]
    fn initial_disk_is_a_star() {
        let x = initial_disk(7).unwrap();
        assert_eq!(x.surface().f_vector(), FVector::new(8, 14, 7));
        assert_eq!(x.boundary().len(), 7);
        assert_eq!(initial_disk(6).unwrap().surface().f_vector(), FVector::new(7, 12, 6));
        assert_eq!(
            initial_disk(5).unwrap_err(),
            GeneratorError::DegreeTooSmall {
                degree: 5,
                minimum: 6
            }
        );
    }

    #[test]
    fn first_extension_for_degree_seven() {
        let x2 = initial_disk(7).unwrap().extend().unwrap();
        assert_eq!(x2.surface().vertex_count(), 29);
        assert_eq!(x2.boundary().len(), 21);
        assert_eq!(x2.surface().f_vector(), FVector::new(29, 63, 35));
        for &v in x2.boundary() {
            assert!(matches!(x2.surface().degree(v), 3 | 4));
        }
        let center = x2.surface().link(0).unwrap();
        assert_eq!(center.kind, LinkKind::Cycle);
        assert_eq!(center.len(), 7);
    }

    #[test]
    fn stored_boundary_is_a_cycle_in_order() {
        for walk in [
            WalkOrder::FORWARD,
            WalkOrder {
                start: 3,
                reversed: true,
            },
        ] {
            let x = generate_with(
                7,
                3,
                GenerateOptions {
                    walk,
                    ..Default::default()
                },
            )
            .unwrap();
            let b = x.boundary();
            for i in 0..b.len() {
                assert!(x.surface().is_adjacent(b[i], b[(i + 1) % b.len()]));
            }
        }
    }

    #[test]
    fn flat_growth_is_linear() {
        let x = generate(6, 2).unwrap();
        assert_eq!(x.boundary().len(), 12);
        assert_eq!(generate(6, 5).unwrap().layer_sizes(), vec![1, 6, 12, 18, 24, 30]);
    }

    #[test]
    fn layer_sizes_match_table() {
        assert_eq!(generate(7, 3).unwrap().layer_sizes(), vec![1, 7, 21, 56]);
        assert_eq!(generate(8, 4).unwrap().layer_sizes(), vec![1, 8, 32, 120, 448]);
        assert_eq!(generate(7, 3).unwrap().surface().vertex_count(), 85);
    }

    #[test]
    fn star_of_center() {
        let x = generate(7, 3).unwrap();
        assert_eq!(x.surface().star(0).unwrap().f_vector(), FVector::new(8, 14, 7));
    }

    #[test]
    fn partition_sizes_by_layer() {
        let x = generate(7, 3).unwrap();
        assert_eq!(x.partition_sizes(3).unwrap(), (21, 7, 28));
        assert_eq!(x.partition_sizes(2).unwrap(), (7, 0, 14));
        let y = generate(8, 3).unwrap();
        assert_eq!(y.partition_sizes(3).unwrap(), (32, 16, 72));
        assert_eq!(
            x.partition_sizes(1).unwrap_err(),
            GeneratorError::LayerOutOfRange {
                layer: 1,
                radius: 3
            }
        );
        assert!(x.partition_sizes(4).is_err());
    }

    #[test]
    fn resource_cap() {
        let err = generate_with(
            8,
            6,
            GenerateOptions {
                max_vertices: 1000,
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, GeneratorError::ResourceLimit { cap: 1000, .. }));
        let err = initial_disk(9).unwrap().extend_with(WalkOrder::FORWARD, 20).unwrap_err();
        assert!(matches!(err, GeneratorError::ResourceLimit { .. }));
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate(9, 3).unwrap().to_document().write();
        let b = generate(9, 3).unwrap().to_document().write();
        assert_eq!(a, b);
    }

    #[test]
    fn common_neighbors_on_edges() {
        let x = generate(7, 3).unwrap();
        let s = x.surface();
        for (u, v) in s.edges() {
            let expected = if s.is_boundary_vertex(u) && s.is_boundary_vertex(v) && s.faces_on_edge(u, v) == 1 {
                1
            } else {
                2
            };
            assert_eq!(s.common_neighbor_count(u, v).unwrap(), expected, "edge {u}-{v}");
        }
    }

    #[test]
    fn regular_in_the_interior() {
        assert!(generate(8, 3).unwrap().surface().is_d_regular(8));
        assert!(!generate(8, 3).unwrap().surface().is_d_regular(7));
    }
}
