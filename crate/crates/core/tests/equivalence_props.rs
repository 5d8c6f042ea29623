use proptest::prelude::*;

use regtri_core::classify::{reference, seven_vertex_torus, ReferenceKind};
use regtri_core::equivalence::{
    canonical_code, canonical_form, canonical_form_exhaustive, equivalent, find_isomorphism,
    is_isomorphism,
};
use regtri_core::generator::{generate_with, GenerateOptions, WalkOrder};
use regtri_core::tri::TriDocument;
use regtri_core::{generate, SimplicialSurface};

fn small_surfaces() -> Vec<(String, SimplicialSurface)> {
    let mut out: Vec<(String, SimplicialSurface)> = ReferenceKind::ALL
        .iter()
        .map(|&k| (k.name().to_string(), reference(k).surface))
        .collect();
    out.push(("torus".into(), seven_vertex_torus().unwrap()));
    for (d, k) in [(6, 1), (6, 2), (7, 1), (7, 2), (8, 1), (8, 2), (9, 2), (6, 3)] {
        out.push((format!("disc {d} {k}"), generate(d, k).unwrap().surface().clone()));
    }
    out
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn surface_and_perm() -> impl Strategy<Value = (SimplicialSurface, Vec<usize>)> {
    let surfaces = small_surfaces();
    (0..surfaces.len()).prop_flat_map(move |i| {
        let s = surfaces[i].1.clone();
        let n = s.vertex_count();
        (Just(s), permutation(n))
    })
}

#[test]
fn pruned_code_matches_exhaustive() {
    for (name, s) in small_surfaces() {
        let pruned = canonical_form(&s).unwrap();
        let full = canonical_form_exhaustive(&s).unwrap();
        assert_eq!(pruned.code, full.code, "{name}");
    }
}

#[test]
fn distinct_surfaces_have_distinct_codes() {
    let surfaces = small_surfaces();
    for (i, (a_name, a)) in surfaces.iter().enumerate() {
        for (b_name, b) in &surfaces[i + 1..] {
            assert_ne!(
                canonical_code(a).unwrap(),
                canonical_code(b).unwrap(),
                "{a_name} vs {b_name}"
            );
        }
    }
}

#[test]
fn walk_orders_give_equivalent_discs() {
    for (d, k) in [(6, 3), (7, 3), (8, 3), (9, 2), (12, 2)] {
        let base = generate(d, k).unwrap();
        let code = canonical_code(base.surface()).unwrap();
        for walk in [
            WalkOrder {
                start: 0,
                reversed: true,
            },
            WalkOrder {
                start: 5,
                reversed: false,
            },
            WalkOrder {
                start: 2,
                reversed: true,
            },
        ] {
            let other = generate_with(
                d,
                k,
                GenerateOptions {
                    walk,
                    ..GenerateOptions::default()
                },
            )
            .unwrap();
            assert_eq!(canonical_code(other.surface()).unwrap(), code, "d={d} k={k} {walk:?}");
            let map = find_isomorphism(other.surface(), base.surface()).unwrap().unwrap();
            assert!(is_isomorphism(other.surface(), base.surface(), &map));
        }
    }
}

#[test]
fn one_face_removed_is_inequivalent() {
    let disk = generate(7, 2).unwrap();
    let mut faces = disk.surface().faces().to_vec();
    // removing a boundary face changes the boundary length
    let boundary = disk.surface().boundary_vertices();
    let idx = faces
        .iter()
        .position(|f| f.iter().filter(|v| boundary.contains(v)).count() == 2)
        .unwrap();
    faces.remove(idx);
    let cut = SimplicialSurface::build_from_faces(&faces).unwrap();
    assert!(!equivalent(&cut, disk.surface()).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn code_is_relabel_invariant((s, perm) in surface_and_perm()) {
        let shuffled = s.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_code(&shuffled).unwrap(), canonical_code(&s).unwrap());
        let map = find_isomorphism(&shuffled, &s).unwrap().unwrap();
        prop_assert!(is_isomorphism(&shuffled, &s, &map));
    }

    #[test]
    fn tri_round_trip_keeps_code((s, perm) in surface_and_perm()) {
        let shuffled = s.relabel(&perm).unwrap();
        let text = TriDocument::from_surface(&shuffled).write();
        let back = TriDocument::parse(&text).unwrap().to_surface().unwrap();
        prop_assert_eq!(&back, &shuffled);
        prop_assert_eq!(canonical_code(&back).unwrap(), canonical_code(&s).unwrap());
    }

    #[test]
    fn relabelling_preserves_local_structure((s, perm) in surface_and_perm()) {
        let shuffled = s.relabel(&perm).unwrap();
        prop_assert_eq!(shuffled.f_vector(), s.f_vector());
        for v in s.vertices() {
            prop_assert_eq!(shuffled.degree(perm[v]), s.degree(v));
            prop_assert_eq!(shuffled.is_boundary_vertex(perm[v]), s.is_boundary_vertex(v));
            let link = s.link(v).unwrap();
            let image = shuffled.link(perm[v]).unwrap();
            prop_assert_eq!(image.kind, link.kind);
            prop_assert_eq!(image.len(), link.len());
            for (i, &w) in link.vertices.iter().enumerate() {
                if let (_, Some(next)) = link.adjacent(i) {
                    prop_assert!(shuffled.edge_apexes(perm[v], perm[w]).contains(&perm[next]));
                }
            }
        }
    }
}
