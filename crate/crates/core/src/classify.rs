//! Closed degree-regular surfaces of small degree, and classification of
//! closed regular surfaces by degree and Euler characteristic.
//!
//! The only closed surfaces with every vertex of degree 3, 4 or 5 are the
//! boundaries of the tetrahedron, octahedron and icosahedron and the
//! 6-vertex projective plane. Their face lists below are assembled from
//! explicit vertex links.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialSurface, Vertex};
use crate::equivalence::{find_isomorphism, is_isomorphism, EquivalenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("surface has boundary")]
    NotClosed,
    #[error("vertex degrees differ (vertex {vertex} has degree {degree}, vertex 0 has {expected})")]
    NotRegular {
        vertex: Vertex,
        degree: usize,
        expected: usize,
    },
    #[error("surface is disconnected")]
    Disconnected,
    #[error("closed {degree}-regular surface with chi={chi} matches no reference surface")]
    InputContradictsLemma { degree: usize, chi: i64 },
}

impl From<EquivalenceError> for ClassifyError {
    fn from(e: EquivalenceError) -> Self {
        match e {
            EquivalenceError::Disconnected => ClassifyError::Disconnected,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReferenceKind {
    Tetrahedron,
    Octahedron,
    Icosahedron,
    /// Minimal 6-vertex triangulation of the real projective plane.
    Rp2_6,
}

impl ReferenceKind {
    pub const ALL: [ReferenceKind; 4] = [
        ReferenceKind::Tetrahedron,
        ReferenceKind::Octahedron,
        ReferenceKind::Icosahedron,
        ReferenceKind::Rp2_6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReferenceKind::Tetrahedron => "tetrahedron",
            ReferenceKind::Octahedron => "octahedron",
            ReferenceKind::Icosahedron => "icosahedron",
            ReferenceKind::Rp2_6 => "rp2_6",
        }
    }

    pub fn degree(self) -> usize {
        match self {
            ReferenceKind::Tetrahedron => 3,
            ReferenceKind::Octahedron => 4,
            ReferenceKind::Icosahedron | ReferenceKind::Rp2_6 => 5,
        }
    }

    pub fn case(self) -> Case {
        match self {
            ReferenceKind::Tetrahedron => Case::SphereD3,
            ReferenceKind::Octahedron => Case::SphereD4,
            ReferenceKind::Icosahedron => Case::SphereD5,
            ReferenceKind::Rp2_6 => Case::ProjectivePlaneD5,
        }
    }
}

impl FromStr for ReferenceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReferenceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown reference surface {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceSurface {
    pub kind: ReferenceKind,
    pub surface: SimplicialSurface,
}

// Faces of the star of `center` over the cyclic link `link`.
fn cone(center: Vertex, link: &[Vertex]) -> impl Iterator<Item = Face> + '_ {
    (0..link.len()).map(move |i| [center, link[i], link[(i + 1) % link.len()]])
}

fn faces_from_links(links: &[(Vertex, &[Vertex])]) -> Vec<Face> {
    let mut faces: Vec<Face> = links
        .iter()
        .flat_map(|&(c, l)| cone(c, l))
        .map(|mut f| {
            f.sort_unstable();
            f
        })
        .collect();
    faces.sort_unstable();
    faces.dedup();
    faces
}

fn reference_faces(kind: ReferenceKind) -> Vec<Face> {
    match kind {
        // a=0 with lk(a) = C3(b,c,d), and bcd
        ReferenceKind::Tetrahedron => faces_from_links(&[(0, &[1, 2, 3]), (1, &[2, 0, 3])]),
        // a=0, lk(a) = C4(b,c,d,e) = (1,2,3,4), lk(b) = C4(c,a,e,f), f = 5
        ReferenceKind::Octahedron => faces_from_links(&[
            (0, &[1, 2, 3, 4]),
            (1, &[2, 0, 4, 5]),
            (3, &[2, 0, 4, 5]),
        ]),
        // primed vertex i' is 6 + i
        ReferenceKind::Icosahedron => faces_from_links(&[
            (0, &[1, 2, 3, 4, 5]),
            (4, &[5, 0, 3, 7, 8]),
            (5, &[1, 0, 4, 8, 9]),
            (1, &[2, 0, 5, 9, 10]),
            (2, &[3, 0, 1, 10, 11]),
            (3, &[2, 0, 4, 7, 11]),
            (7, &[11, 3, 4, 8, 6]),
            (8, &[6, 7, 4, 5, 9]),
            (11, &[6, 7, 3, 2, 10]),
            (6, &[7, 8, 9, 10, 11]),
        ]),
        ReferenceKind::Rp2_6 => faces_from_links(&[
            (0, &[1, 2, 3, 4, 5]),
            (1, &[5, 0, 2, 4, 3]),
            (4, &[5, 0, 3, 1, 2]),
            (3, &[2, 0, 4, 1, 5]),
        ]),
    }
}

/// The reference surface of the given kind.
pub fn reference(kind: ReferenceKind) -> ReferenceSurface {
    let surface = SimplicialSurface::build_from_faces(&reference_faces(kind))
        .expect("reference face lists are valid surfaces");
    ReferenceSurface { kind, surface }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    SphereD3,
    SphereD4,
    SphereD5,
    ProjectivePlaneD5,
    FlatD6,
    HyperbolicDge7,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::SphereD3 => "sphere_d3",
            Case::SphereD4 => "sphere_d4",
            Case::SphereD5 => "sphere_d5",
            Case::ProjectivePlaneD5 => "projective_plane_d5",
            Case::FlatD6 => "flat_d6",
            Case::HyperbolicDge7 => "hyperbolic_dge7",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub case: Case,
    pub degree: usize,
    pub chi: i64,
    /// For degrees below 6: the matched reference and `witness[v]`, the
    /// reference vertex that `v` maps to.
    pub witness: Option<(ReferenceKind, Vec<Vertex>)>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case={} d={} chi={}", self.case, self.degree, self.chi)
    }
}

/// Classifies a closed, connected, regular surface.
pub fn classify_closed(surface: &SimplicialSurface) -> Result<Classification, ClassifyError> {
    if !surface.is_closed() {
        return Err(ClassifyError::NotClosed);
    }
    let expected = surface.degree(0);
    if let Some(v) = surface.vertices().find(|&v| surface.degree(v) != expected) {
        return Err(ClassifyError::NotRegular {
            vertex: v,
            degree: surface.degree(v),
            expected,
        });
    }
    if !surface.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    let d = expected;
    let chi = surface.f_vector().chi;
    let candidates: &[ReferenceKind] = match d {
        3 => &[ReferenceKind::Tetrahedron],
        4 => &[ReferenceKind::Octahedron],
        5 if chi == 2 => &[ReferenceKind::Icosahedron],
        5 if chi == 1 => &[ReferenceKind::Rp2_6],
        6 => {
            return Ok(Classification {
                case: Case::FlatD6,
                degree: d,
                chi,
                witness: None,
            })
        }
        d if d >= 7 => {
            return Ok(Classification {
                case: Case::HyperbolicDge7,
                degree: d,
                chi,
                witness: None,
            })
        }
        _ => &[],
    };
    for &kind in candidates {
        let r = reference(kind);
        if let Some(map) = find_isomorphism(surface, &r.surface)? {
            debug_assert!(is_isomorphism(surface, &r.surface, &map));
            return Ok(Classification {
                case: kind.case(),
                degree: d,
                chi,
                witness: Some((kind, map)),
            });
        }
    }
    Err(ClassifyError::InputContradictsLemma { degree: d, chi })
}

/// The 7-vertex torus with faces `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn seven_vertex_torus() -> Result<SimplicialSurface, ComplexError> {
    let faces: Vec<Face> = (0..7)
        .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    SimplicialSurface::build_from_faces(&faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{FVector, LinkKind};

    #[test]
    fn reference_f_vectors() {
        let expect = [
            (ReferenceKind::Tetrahedron, FVector::new(4, 6, 4), 3),
            (ReferenceKind::Octahedron, FVector::new(6, 12, 8), 4),
            (ReferenceKind::Icosahedron, FVector::new(12, 30, 20), 5),
            (ReferenceKind::Rp2_6, FVector::new(6, 15, 10), 5),
        ];
        for (kind, fv, d) in expect {
            let r = reference(kind);
            assert!(r.surface.is_closed(), "{kind:?}");
            assert_eq!(r.surface.f_vector(), fv, "{kind:?}");
            assert_eq!(r.surface.regular_degree(), Some(d), "{kind:?}");
        }
    }

    #[test]
    fn tetrahedron_links_are_triangles() {
        let t = reference(ReferenceKind::Tetrahedron).surface;
        for v in t.vertices() {
            let l = t.link(v).unwrap();
            assert_eq!((l.kind, l.len()), (LinkKind::Cycle, 3));
        }
    }

    fn cyclic_eq(link: &[Vertex], expected: &[Vertex]) -> bool {
        let n = expected.len();
        if link.len() != n {
            return false;
        }
        (0..n).any(|s| {
            (0..n).all(|i| link[i] == expected[(s + i) % n])
                || (0..n).all(|i| link[i] == expected[(s + n - i) % n])
        })
    }

    #[test]
    fn projective_plane_has_the_stated_links() {
        let p = reference(ReferenceKind::Rp2_6).surface;
        let links: [(Vertex, [Vertex; 5]); 4] = [
            (0, [1, 2, 3, 4, 5]),
            (1, [5, 0, 2, 4, 3]),
            (4, [5, 0, 3, 1, 2]),
            (3, [2, 0, 4, 1, 5]),
        ];
        for (v, l) in links {
            assert!(cyclic_eq(&p.link(v).unwrap().vertices, &l), "vertex {v}");
        }
        assert!(!p.is_orientable());
        assert_eq!(p.f_vector().chi, 1);
    }

    #[test]
    fn icosahedron_has_the_stated_links() {
        let s = reference(ReferenceKind::Icosahedron).surface;
        // lk(4) = C5(5,0,3,1',2'), lk(2') = C5(0',1',4,5,3')
        assert!(cyclic_eq(&s.link(4).unwrap().vertices, &[5, 0, 3, 7, 8]));
        assert!(cyclic_eq(&s.link(8).unwrap().vertices, &[6, 7, 4, 5, 9]));
        assert!(s.is_orientable());
    }

    #[test]
    fn references_classify_as_themselves() {
        for kind in ReferenceKind::ALL {
            let r = reference(kind);
            let c = classify_closed(&r.surface).unwrap();
            assert_eq!(c.case, kind.case());
            assert_eq!(c.degree, kind.degree());
            let (matched, map) = c.witness.unwrap();
            assert_eq!(matched, kind);
            assert!(is_isomorphism(&r.surface, &r.surface, &map));
        }
    }

    #[test]
    fn shuffled_octahedron() {
        let o = reference(ReferenceKind::Octahedron).surface;
        let shuffled = o.relabel(&[4, 2, 5, 0, 1, 3]).unwrap();
        let c = classify_closed(&shuffled).unwrap();
        assert_eq!(c.case, Case::SphereD4);
        let (_, map) = c.witness.clone().unwrap();
        assert!(is_isomorphism(&shuffled, &o, &map));
        assert_eq!(c.to_string(), "case=sphere_d4 d=4 chi=2");
    }

    #[test]
    fn torus_is_flat() {
        let t = seven_vertex_torus().unwrap();
        assert_eq!(t.regular_degree(), Some(6));
        assert_eq!(t.f_vector().chi, 0);
        assert!(t.is_orientable());
        assert_eq!(classify_closed(&t).unwrap().case, Case::FlatD6);
    }

    #[test]
    fn error_paths() {
        let tri = SimplicialSurface::build_from_faces(&[[0, 1, 2]]).unwrap();
        assert_eq!(classify_closed(&tri), Err(ClassifyError::NotClosed));
        // octahedron with one edge flipped: degrees 3/5 appear
        let flipped = SimplicialSurface::build_from_faces(&[
            [0, 1, 2],
            [0, 2, 4],
            [2, 3, 4],
            [0, 1, 4],
            [5, 1, 2],
            [5, 2, 3],
            [5, 3, 4],
            [5, 1, 4],
        ])
        .unwrap();
        assert!(matches!(
            classify_closed(&flipped),
            Err(ClassifyError::NotRegular { .. })
        ));
        let two = SimplicialSurface::build_from_faces(&[
            [0, 1, 2],
            [0, 1, 3],
            [0, 2, 3],
            [1, 2, 3],
            [4, 5, 6],
            [4, 5, 7],
            [4, 6, 7],
            [5, 6, 7],
        ])
        .unwrap();
        assert_eq!(classify_closed(&two), Err(ClassifyError::Disconnected));
    }
}
