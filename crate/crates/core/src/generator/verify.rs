//! Audit of a layer-annotated disc.
//!
//! Works on raw TRI documents so that damaged inputs produce a report
//! instead of an error. For every layer `j` the disc `X_j` is the sub-complex
//! induced by the layers `0..=j`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;

use super::counts::layer_counts_recurrence;
use super::LayeredDisk;
use crate::complex::{SimplicialSurface, Vertex};
use crate::tri::{TriDocument, VertexClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    /// Every vertex has one layer record, layer 0 holds one vertex, and
    /// layers are graph distances from it.
    LayerDistance,
    /// `X_j` is a triangulated disc.
    Disc,
    /// The boundary vertices of `X_j` are exactly layer `j`.
    BoundaryIsOuterLayer,
    /// Layer `j` induces a single cycle.
    LayerCycle,
    /// `X_j` is `X_{j-1}` plus the stars of layer `j-1`.
    StarUnion,
    /// Non-adjacent vertices of layer `j-1` share no neighbor in layer `j`.
    NoOuterCommonNeighbor,
    /// Each vertex of layer `j` has one or two neighbors in layer `j-1`.
    PreviousLayerNeighbors,
    /// Vertices of layer `j` have degree 3 or 4 in `X_j`.
    BoundaryDegree,
    /// Interior vertices have degree d.
    InteriorDegree,
    /// Every edge has as many common neighbors as incident faces.
    EdgeCommonNeighbors,
    /// A/B/C classes agree with previous-layer adjacency.
    Labels,
    /// Class counts follow the layer-count formulas.
    PartitionCounts,
    /// Layer sizes follow the recurrence.
    LayerSizes,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::LayerDistance => "layer-distance",
            Property::Disc => "disc",
            Property::BoundaryIsOuterLayer => "boundary-is-outer-layer",
            Property::LayerCycle => "layer-cycle",
            Property::StarUnion => "star-union",
            Property::NoOuterCommonNeighbor => "no-outer-common-neighbor",
            Property::PreviousLayerNeighbors => "previous-layer-neighbors",
            Property::BoundaryDegree => "boundary-degree",
            Property::InteriorDegree => "interior-degree",
            Property::EdgeCommonNeighbors => "edge-common-neighbors",
            Property::Labels => "labels",
            Property::PartitionCounts => "partition-counts",
            Property::LayerSizes => "layer-sizes",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// First counterexample.
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub property: Property,
    pub layer: Option<usize>,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LayerReport {
    pub degree: Option<usize>,
    pub radius: Option<usize>,
    pub checks: Vec<Check>,
}

impl LayerReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.outcome == Outcome::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome != Outcome::Pass)
    }

    pub fn first_failure(&self, property: Property) -> Option<&Check> {
        self.checks
            .iter()
            .find(|c| c.property == property && matches!(c.outcome, Outcome::Fail(_)))
    }

    /// One line per check: `property<TAB>layer<TAB>status<TAB>detail`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let layer = c.layer.map_or("-".to_string(), |j| j.to_string());
            let (status, detail) = match &c.outcome {
                Outcome::Pass => ("pass", ""),
                Outcome::Fail(m) => ("fail", m.as_str()),
                Outcome::Skipped(m) => ("skipped", m.as_str()),
            };
            out.push_str(&format!("{}\t{}\t{}\t{}\n", c.property.name(), layer, status, detail));
        }
        out
    }

    fn push(&mut self, property: Property, layer: Option<usize>, result: Result<(), String>) {
        self.checks.push(Check {
            property,
            layer,
            outcome: match result {
                Ok(()) => Outcome::Pass,
                Err(m) => Outcome::Fail(m),
            },
        });
    }
}

impl fmt::Display for LayerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree.map_or("?".to_string(), |d| d.to_string());
        let k = self.radius.map_or("?".to_string(), |k| k.to_string());
        writeln!(f, "layered disc d={d} k={k}")?;
        for c in &self.checks {
            let layer = c.layer.map_or(String::new(), |j| format!(" [layer {j}]"));
            match &c.outcome {
                Outcome::Pass => writeln!(f, "  PASS {}{}", c.property.name(), layer)?,
                Outcome::Fail(m) => writeln!(f, "  FAIL {}{}: {}", c.property.name(), layer, m)?,
                Outcome::Skipped(m) => {
                    writeln!(f, "  SKIP {}{}: {}", c.property.name(), layer, m)?
                }
            }
        }
        let passed = self.checks.iter().filter(|c| c.outcome == Outcome::Pass).count();
        write!(
            f,
            "{}: {passed}/{} checks passed",
            if self.passed() { "ok" } else { "FAILED" },
            self.checks.len()
        )
    }
}

pub fn verify_layer_invariants(disk: &LayeredDisk) -> LayerReport {
    verify_document(&disk.to_document())
}

pub fn verify_document(doc: &TriDocument) -> LayerReport {
    let mut report = LayerReport::default();
    let radius = doc.layers.iter().map(|r| r.layer).max();
    report.radius = radius;

    let surface = match SimplicialSurface::with_vertex_count(doc.vertex_count, &doc.faces) {
        Ok(s) => s,
        Err(e) => {
            report.push(Property::Disc, radius, Err(e.to_string()));
            report.checks.push(Check {
                property: Property::LayerDistance,
                layer: None,
                outcome: Outcome::Skipped("input is not a valid surface".into()),
            });
            return report;
        }
    };

    let n = surface.vertex_count();
    let mut layer_of: Vec<Option<usize>> = vec![None; n];
    let mut class_of: Vec<Option<VertexClass>> = vec![None; n];
    let mut annotation = Ok(());
    for r in &doc.layers {
        if layer_of[r.vertex].is_some() {
            annotation = Err(format!("vertex {} has several layer records", r.vertex));
            break;
        }
        layer_of[r.vertex] = Some(r.layer);
        class_of[r.vertex] = Some(r.class);
    }
    if annotation.is_ok() {
        if let Some(v) = (0..n).find(|&v| layer_of[v].is_none()) {
            annotation = Err(format!("vertex {v} has no layer record"));
        }
    }
    let centers: Vec<Vertex> = (0..n).filter(|&v| layer_of[v] == Some(0)).collect();
    if annotation.is_ok() && centers.len() != 1 {
        annotation = Err(format!("layer 0 holds {} vertices", centers.len()));
    }
    if let Err(m) = annotation {
        report.push(Property::LayerDistance, None, Err(m));
        return report;
    }
    let layer_of: Vec<usize> = layer_of.into_iter().map(Option::unwrap).collect();
    let class_of: Vec<VertexClass> = class_of.into_iter().map(Option::unwrap).collect();
    let center = centers[0];
    let k = radius.unwrap_or(0);
    let d = surface.degree(center);
    report.degree = Some(d);

    report.push(Property::LayerDistance, None, check_distances(&surface, center, &layer_of));
    if k == 0 {
        report.push(Property::Disc, Some(0), Err("radius 0: no layers around the center".into()));
        return report;
    }

    let mut layers: Vec<Vec<Vertex>> = vec![Vec::new(); k + 1];
    for v in 0..n {
        layers[layer_of[v]].push(v);
    }

    for j in 1..=k {
        let (disc, boundary) = check_disc(&surface, &layer_of, j);
        report.push(Property::Disc, Some(j), disc);
        report.push(
            Property::BoundaryIsOuterLayer,
            Some(j),
            match boundary {
                Some(b) => check_boundary_layer(&b, &layers[j], j),
                None => Err(format!("X_{j} is not a valid surface")),
            },
        );
        report.push(Property::LayerCycle, Some(j), check_layer_cycle(&surface, &layer_of, &layers[j], j));
        report.push(Property::StarUnion, Some(j), check_star_union(&surface, &layer_of, j));
        report.push(
            Property::NoOuterCommonNeighbor,
            Some(j),
            check_outer_common(&surface, &layer_of, &layers[j], j),
        );
        report.push(
            Property::PreviousLayerNeighbors,
            Some(j),
            check_previous_neighbors(&surface, &layer_of, &layers[j], j),
        );
        report.push(
            Property::BoundaryDegree,
            Some(j),
            check_boundary_degree(&surface, &layer_of, &layers[j], j),
        );
    }

    report.push(
        Property::InteriorDegree,
        None,
        (0..n)
            .find(|&v| layer_of[v] < k && surface.degree(v) != d)
            .map_or(Ok(()), |v| {
                Err(format!("vertex {v} has degree {} instead of {d}", surface.degree(v)))
            }),
    );
    report.push(Property::EdgeCommonNeighbors, None, check_common_neighbors(&surface));

    for j in 0..=k {
        report.push(Property::Labels, Some(j), check_labels(&surface, &layer_of, &class_of, &layers[j], j));
    }

    let expected = layer_counts_recurrence(d, k).ok();
    match &expected {
        None => report.checks.push(Check {
            property: Property::LayerSizes,
            layer: None,
            outcome: Outcome::Fail(format!("center degree {d} is below 6")),
        }),
        Some(counts) => {
            let sizes = layers.iter().map(|l| BigUint::from(l.len()));
            let mismatch = sizes
                .zip(counts)
                .enumerate()
                .find(|(_, (have, want))| have != *want);
            report.push(
                Property::LayerSizes,
                None,
                mismatch.map_or(Ok(()), |(j, (have, want))| {
                    Err(format!("layer {j} has {have} vertices, expected {want}"))
                }),
            );
            for j in 2..=k {
                report.push(
                    Property::PartitionCounts,
                    Some(j),
                    check_partition(d, j, &class_of, &layers[j], counts),
                );
            }
        }
    }
    report
}

fn check_distances(s: &SimplicialSurface, center: Vertex, layer_of: &[usize]) -> Result<(), String> {
    let mut dist = vec![usize::MAX; s.vertex_count()];
    dist[center] = 0;
    let mut queue = VecDeque::from([center]);
    while let Some(v) = queue.pop_front() {
        for &w in s.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    match (0..s.vertex_count()).find(|&v| dist[v] != layer_of[v]) {
        None => Ok(()),
        Some(v) if dist[v] == usize::MAX => Err(format!("vertex {v} is unreachable from the center")),
        Some(v) => Err(format!(
            "vertex {v} is recorded in layer {} but lies at distance {}",
            layer_of[v], dist[v]
        )),
    }
}

/// Disc check for `X_j`, returning its boundary vertex set when it is a
/// valid surface.
fn check_disc(
    s: &SimplicialSurface,
    layer_of: &[usize],
    j: usize,
) -> (Result<(), String>, Option<Vec<Vertex>>) {
    match s.induced(|v| layer_of[v] <= j) {
        Err(e) => (Err(e.to_string()), None),
        Ok((sub, originals)) => {
            let boundary = sub.boundary_vertices().into_iter().map(|v| originals[v]).collect();
            let disc = sub.boundary_cycle().map(|_| ()).map_err(|e| e.to_string());
            (disc, Some(boundary))
        }
    }
}

fn check_boundary_layer(boundary: &[Vertex], layer: &[Vertex], j: usize) -> Result<(), String> {
    let b: HashSet<Vertex> = boundary.iter().copied().collect();
    let l: HashSet<Vertex> = layer.iter().copied().collect();
    if let Some(v) = b.difference(&l).min() {
        return Err(format!("boundary vertex {v} of X_{j} is not in layer {j}"));
    }
    if let Some(v) = l.difference(&b).min() {
        return Err(format!("layer-{j} vertex {v} is interior to X_{j}"));
    }
    Ok(())
}

fn check_layer_cycle(
    s: &SimplicialSurface,
    layer_of: &[usize],
    layer: &[Vertex],
    j: usize,
) -> Result<(), String> {
    if layer.len() < 3 {
        return Err(format!("layer {j} has only {} vertices", layer.len()));
    }
    for &v in layer {
        let inside = s.neighbors(v).iter().filter(|&&w| layer_of[w] == j).count();
        if inside != 2 {
            return Err(format!("vertex {v} has {inside} neighbors inside layer {j}"));
        }
    }
    // connected 2-regular graph
    let start = layer[0];
    let mut prev = start;
    let mut cur = *s.neighbors(start).iter().find(|&&w| layer_of[w] == j).unwrap();
    let mut len = 1;
    while cur != start {
        let next = *s
            .neighbors(cur)
            .iter()
            .find(|&&w| layer_of[w] == j && w != prev)
            .unwrap();
        prev = cur;
        cur = next;
        len += 1;
        if len > layer.len() {
            break;
        }
    }
    if len != layer.len() {
        return Err(format!("layer {j} induces several cycles (one of length {len})"));
    }
    Ok(())
}

fn check_star_union(s: &SimplicialSurface, layer_of: &[usize], j: usize) -> Result<(), String> {
    for f in s.faces() {
        let lo = f.iter().map(|&v| layer_of[v]).min().unwrap();
        let hi = f.iter().map(|&v| layer_of[v]).max().unwrap();
        if lo < j && hi > j {
            return Err(format!("face {f:?} joins layer {lo} to layer {hi}"));
        }
        if lo == j && hi == j {
            return Err(format!("face {f:?} lies entirely in layer {j}"));
        }
    }
    Ok(())
}

fn check_outer_common(
    s: &SimplicialSurface,
    layer_of: &[usize],
    layer: &[Vertex],
    j: usize,
) -> Result<(), String> {
    for &w in layer {
        let inner: Vec<Vertex> = s
            .neighbors(w)
            .iter()
            .copied()
            .filter(|&x| layer_of[x] + 1 == j)
            .collect();
        for (i, &u) in inner.iter().enumerate() {
            for &v in &inner[i + 1..] {
                if !s.is_adjacent(u, v) {
                    return Err(format!(
                        "non-adjacent {u} and {v} in layer {} share neighbor {w}",
                        j - 1
                    ));
                }
            }
        }
    }
    Ok(())
}

fn previous_neighbors(s: &SimplicialSurface, layer_of: &[usize], v: Vertex) -> Vec<Vertex> {
    s.neighbors(v)
        .iter()
        .copied()
        .filter(|&w| layer_of[w] + 1 == layer_of[v])
        .collect()
}

fn check_previous_neighbors(
    s: &SimplicialSurface,
    layer_of: &[usize],
    layer: &[Vertex],
    j: usize,
) -> Result<(), String> {
    for &v in layer {
        let c = previous_neighbors(s, layer_of, v).len();
        if !(1..=2).contains(&c) {
            return Err(format!("vertex {v} has {c} neighbors in layer {}", j - 1));
        }
    }
    Ok(())
}

fn check_boundary_degree(
    s: &SimplicialSurface,
    layer_of: &[usize],
    layer: &[Vertex],
    j: usize,
) -> Result<(), String> {
    for &v in layer {
        let deg = s.neighbors(v).iter().filter(|&&w| layer_of[w] <= j).count();
        if !(3..=4).contains(&deg) {
            return Err(format!("vertex {v} has degree {deg} in X_{j}"));
        }
    }
    Ok(())
}

fn check_common_neighbors(s: &SimplicialSurface) -> Result<(), String> {
    for (u, v) in s.edges() {
        let common = s.common_neighbor_count(u, v).expect("valid edge");
        let faces = s.faces_on_edge(u, v);
        if common != faces {
            return Err(format!("edge {u}-{v} lies in {faces} faces but has {common} common neighbors"));
        }
    }
    Ok(())
}

fn check_labels(
    s: &SimplicialSurface,
    layer_of: &[usize],
    class_of: &[VertexClass],
    layer: &[Vertex],
    j: usize,
) -> Result<(), String> {
    for &v in layer {
        let have = class_of[v];
        let want = if j <= 1 {
            VertexClass::Root
        } else {
            let prev = previous_neighbors(s, layer_of, v);
            match prev.as_slice() {
                [_, _] => VertexClass::A,
                [p] if class_of[*p] == VertexClass::A => VertexClass::B,
                [_] => VertexClass::C,
                _ => {
                    return Err(format!(
                        "vertex {v} has {} previous-layer neighbors",
                        prev.len()
                    ))
                }
            }
        };
        if have != want {
            return Err(format!("vertex {v} is labelled {have}, adjacency says {want}"));
        }
    }
    Ok(())
}

fn check_partition(
    d: usize,
    j: usize,
    class_of: &[VertexClass],
    layer: &[Vertex],
    counts: &[BigUint],
) -> Result<(), String> {
    let count = |c: VertexClass| BigUint::from(layer.iter().filter(|&&v| class_of[v] == c).count());
    let (a, b, c) = (count(VertexClass::A), count(VertexClass::B), count(VertexClass::C));
    let prev = &counts[j - 1];
    let (want_b, want_c) = if j == 2 {
        (BigUint::from(0u32), prev * BigUint::from(d - 5))
    } else {
        let prev2 = &counts[j - 2];
        (prev2 * BigUint::from(d - 6), (prev - prev2) * BigUint::from(d - 5))
    };
    if a != *prev || b != want_b || c != want_c {
        return Err(format!(
            "classes (A,B,C) = ({a},{b},{c}), expected ({prev},{want_b},{want_c})"
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::generate;

    #[test]
    fn generated_discs_pass() {
        for (d, k) in [(6, 4), (7, 4), (9, 3)] {
            let report = verify_layer_invariants(&generate(d, k).unwrap());
            assert!(report.passed(), "d={d} k={k}\n{report}");
        }
    }

    #[test]
    fn removing_a_boundary_face_breaks_the_disc() {
        let disk = generate(7, 3).unwrap();
        let mut doc = disk.to_document();
        let idx = doc
            .faces
            .iter()
            .position(|f| f.iter().filter(|&&v| disk.layer_of(v) == 3).count() == 1)
            .unwrap();
        let removed = doc.faces.remove(idx);
        let outer = *removed.iter().find(|&&v| disk.layer_of(v) == 3).unwrap();
        let report = verify_document(&doc);
        assert!(!report.passed());
        let fail = report.first_failure(Property::Disc).expect("disc check fails");
        assert_eq!(fail.layer, Some(3));
        match &fail.outcome {
            Outcome::Fail(m) => assert!(m.contains(&format!("vertex {outer} ")), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_label_is_caught() {
        let disk = generate(7, 3).unwrap();
        let mut doc = disk.to_document();
        let r = doc.layers.iter_mut().find(|r| r.class == VertexClass::B).unwrap();
        r.class = VertexClass::C;
        let report = verify_document(&doc);
        assert!(report.first_failure(Property::Labels).is_some());
        assert!(report.first_failure(Property::PartitionCounts).is_some());
    }

    #[test]
    fn missing_layer_records() {
        let mut doc = generate(7, 2).unwrap().to_document();
        doc.layers.pop();
        let report = verify_document(&doc);
        assert!(report.first_failure(Property::LayerDistance).is_some());
        assert!(!report.passed());
    }

    #[test]
    fn shifted_layer_is_caught() {
        let mut doc = generate(8, 3).unwrap().to_document();
        let r = doc.layers.iter_mut().find(|r| r.layer == 3).unwrap();
        r.layer = 2;
        let report = verify_document(&doc);
        assert!(report.first_failure(Property::LayerDistance).is_some());
    }

    #[test]
    fn tsv_has_one_line_per_check() {
        let report = verify_layer_invariants(&generate(7, 2).unwrap());
        assert_eq!(report.to_tsv().lines().count(), report.checks.len());
    }
}
