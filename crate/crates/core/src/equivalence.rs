//! Canonical codes for triangulated surfaces.
//!
//! A flag is a root vertex, one of its neighbors and a direction of travel
//! around the root's link. From a flag, a breadth-first search numbers the
//! vertices: each dequeued vertex lists its link starting at the neighbor it
//! was reached from, in a direction transported across the connecting edge,
//! and unseen neighbors are numbered as they appear. Transport only looks at
//! the two faces on the edge, so the rule works on non-orientable surfaces.
//!
//! The code of a flag determines every link, hence every face, under the
//! new numbering. The lexicographically smallest code over all flags is
//! therefore a complete invariant: equal codes mean isomorphic surfaces, and
//! the two numberings give the isomorphism.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::complex::{Link, LinkKind, SimplicialSurface, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("surface is disconnected")]
    Disconnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Flag {
    pub root: Vertex,
    pub neighbor: Vertex,
    /// `true`: follow the stored link order; `false`: the reverse.
    pub forward: bool,
}

/// Lexicographically minimal encoding over all flags.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(2 * self.0.len());
        for b in &self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Code together with the flag and numbering that realise it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    pub flag: Flag,
    /// `labels[v]` is the canonical number of vertex `v`.
    pub labels: Vec<Vertex>,
}

const GAP: u32 = 0;

// Root-selection color. Every code starts with its root's color, so only
// roots of minimal color can produce the minimal code.
fn colors(s: &SimplicialSurface) -> Vec<[u32; 3]> {
    let n = s.vertex_count();
    let mut depth = vec![u32::MAX; n];
    let mut queue: VecDeque<Vertex> = VecDeque::new();
    for v in s.vertices().filter(|&v| s.is_boundary_vertex(v)) {
        depth[v] = 0;
        queue.push_back(v);
    }
    if queue.is_empty() {
        depth.iter_mut().for_each(|x| *x = 0);
    }
    while let Some(v) = queue.pop_front() {
        for &w in s.neighbors(v) {
            if depth[w] == u32::MAX {
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    s.vertices()
        .map(|v| {
            [
                s.is_boundary_vertex(v) as u32,
                s.degree(v) as u32,
                u32::MAX - depth[v],
            ]
        })
        .collect()
}

// Link entries from `start`, walking in the given direction; a path wraps
// through a GAP marker.
fn rotation(link: &Link, start: usize, forward: bool) -> Vec<Option<Vertex>> {
    let n = link.vertices.len();
    let step = |i: usize| if forward { (i + 1) % n } else { (i + n - 1) % n };
    let mut out = Vec::with_capacity(n + 1);
    let mut i = start;
    for _ in 0..n {
        out.push(Some(link.vertices[i]));
        let next = step(i);
        let wraps = if forward { next == 0 } else { i == 0 };
        if link.kind == LinkKind::Path && wraps {
            out.push(None);
        }
        i = next;
    }
    if link.kind == LinkKind::Path && out.last() == Some(&None) {
        out.pop();
    }
    out
}

// Direction at `w` induced by traversing `v`'s link in direction `forward`.
fn transport(s: &SimplicialSurface, v: Vertex, w: Vertex, forward: bool) -> bool {
    let lv = s.link(v).expect("known vertex");
    let iv = lv.position(w).expect("adjacent");
    let (before, after) = lv.adjacent(iv);
    let (pred, succ) = if forward { (before, after) } else { (after, before) };
    let lw = s.link(w).expect("known vertex");
    let iw = lw.position(v).expect("adjacent");
    let (w_before, w_after) = lw.adjacent(iw);
    match (pred, succ) {
        // w's successor of v must be v's predecessor of w
        (Some(a), _) => w_after == Some(a),
        // w's predecessor of v must be v's successor of w
        (None, Some(b)) => w_before == Some(b),
        (None, None) => true,
    }
}

fn header(s: &SimplicialSurface) -> Vec<u32> {
    let fv = s.f_vector();
    vec![fv.f0 as u32, fv.f1 as u32, fv.f2 as u32]
}

/// Encodes from `flag`, giving up as soon as the partial code exceeds `bound`.
fn encode(
    s: &SimplicialSurface,
    colors: &[[u32; 3]],
    flag: Flag,
    bound: Option<&[u32]>,
) -> Option<(Vec<u32>, Vec<Vertex>)> {
    let n = s.vertex_count();
    let mut code = header(s);
    code.extend_from_slice(&colors[flag.root]);
    let mut labels = vec![usize::MAX; n];
    let mut reference = vec![(0usize, true); n];
    let mut order = Vec::with_capacity(n);
    labels[flag.root] = 0;
    reference[flag.root] = (flag.neighbor, flag.forward);
    order.push(flag.root);

    // Compare the freshly written suffix against the bound.
    let mut equal_so_far = true;
    let mut checked = 0;
    let check = |code: &Vec<u32>, checked: &mut usize, equal: &mut bool| -> bool {
        if !*equal {
            return true;
        }
        if let Some(b) = bound {
            while *checked < code.len() {
                match b.get(*checked) {
                    None => return false,
                    Some(x) => match code[*checked].cmp(x) {
                        Ordering::Less => {
                            *equal = false;
                            return true;
                        }
                        Ordering::Greater => return false,
                        Ordering::Equal => *checked += 1,
                    },
                }
            }
        }
        true
    };

    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let (start_at, forward) = reference[v];
        let link = s.link(v).expect("known vertex");
        let start = link.position(start_at).expect("reference is a neighbor");
        code.push(s.is_boundary_vertex(v) as u32);
        code.push(link.len() as u32);
        for entry in rotation(link, start, forward) {
            match entry {
                None => code.push(GAP),
                Some(w) => {
                    if labels[w] == usize::MAX {
                        labels[w] = order.len();
                        reference[w] = (v, transport(s, v, w, forward));
                        order.push(w);
                    }
                    code.push(labels[w] as u32 + 1);
                }
            }
        }
        if !check(&code, &mut checked, &mut equal_so_far) {
            return None;
        }
    }
    debug_assert_eq!(order.len(), n);
    Some((code, labels))
}

fn flags_of(s: &SimplicialSurface, root: Vertex) -> impl Iterator<Item = Flag> + '_ {
    s.neighbors(root).iter().flat_map(move |&neighbor| {
        [true, false].into_iter().map(move |forward| Flag {
            root,
            neighbor,
            forward,
        })
    })
}

fn to_bytes(code: &[u32]) -> CanonicalCode {
    CanonicalCode(code.iter().flat_map(|x| x.to_be_bytes()).collect())
}

fn minimise(
    s: &SimplicialSurface,
    roots: impl Iterator<Item = Vertex>,
) -> Result<CanonicalForm, EquivalenceError> {
    if !s.is_connected() {
        return Err(EquivalenceError::Disconnected);
    }
    let colors = colors(s);
    let mut best: Option<(Vec<u32>, Vec<Vertex>, Flag)> = None;
    for root in roots {
        for flag in flags_of(s, root) {
            let bound = best.as_ref().map(|b| b.0.as_slice());
            if let Some((code, labels)) = encode(s, &colors, flag, bound) {
                let better = match &best {
                    None => true,
                    Some((b, _, _)) => code < *b,
                };
                if better {
                    best = Some((code, labels, flag));
                }
            }
        }
    }
    let (code, labels, flag) = best.expect("a connected surface has a flag");
    Ok(CanonicalForm {
        code: to_bytes(&code),
        flag,
        labels,
    })
}

/// Canonical form, trying only roots of minimal color.
pub fn canonical_form(s: &SimplicialSurface) -> Result<CanonicalForm, EquivalenceError> {
    let colors = colors(s);
    let min = colors.iter().min().copied().expect("non-empty surface");
    let roots: Vec<Vertex> = s.vertices().filter(|&v| colors[v] == min).collect();
    minimise(s, roots.into_iter())
}

/// Canonical form trying every vertex as root.
pub fn canonical_form_exhaustive(s: &SimplicialSurface) -> Result<CanonicalForm, EquivalenceError> {
    minimise(s, s.vertices())
}

pub fn canonical_code(s: &SimplicialSurface) -> Result<CanonicalCode, EquivalenceError> {
    canonical_form(s).map(|f| f.code)
}

/// Code obtained from a single flag, without minimisation.
pub fn flag_code(s: &SimplicialSurface, flag: Flag) -> Result<CanonicalCode, EquivalenceError> {
    if !s.is_connected() {
        return Err(EquivalenceError::Disconnected);
    }
    let (code, _) = encode(s, &colors(s), flag, None).expect("unbounded encoding");
    Ok(to_bytes(&code))
}

/// A vertex bijection `map[a_vertex] = b_vertex` carrying the faces of `a`
/// onto the faces of `b`, if the surfaces are combinatorially equivalent.
pub fn find_isomorphism(
    a: &SimplicialSurface,
    b: &SimplicialSurface,
) -> Result<Option<Vec<Vertex>>, EquivalenceError> {
    let fa = canonical_form(a)?;
    let fb = canonical_form(b)?;
    if fa.code != fb.code {
        return Ok(None);
    }
    let mut by_label = vec![0; fb.labels.len()];
    for (v, &l) in fb.labels.iter().enumerate() {
        by_label[l] = v;
    }
    let map: Vec<Vertex> = fa.labels.iter().map(|&l| by_label[l]).collect();
    debug_assert!(is_isomorphism(a, b, &map));
    Ok(Some(map))
}

pub fn equivalent(a: &SimplicialSurface, b: &SimplicialSurface) -> Result<bool, EquivalenceError> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// Checks that `map` is a bijection sending the face set of `a` onto that of `b`.
pub fn is_isomorphism(a: &SimplicialSurface, b: &SimplicialSurface, map: &[Vertex]) -> bool {
    if a.vertex_count() != b.vertex_count() || map.len() != a.vertex_count() {
        return false;
    }
    let mut seen = vec![false; map.len()];
    for &x in map {
        if x >= seen.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    if a.faces().len() != b.faces().len() {
        return false;
    }
    let mut image: Vec<[Vertex; 3]> = a
        .faces()
        .iter()
        .map(|f| {
            let mut g = [map[f[0]], map[f[1]], map[f[2]]];
            g.sort_unstable();
            g
        })
        .collect();
    image.sort_unstable();
    image == b.faces()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetrahedron() -> SimplicialSurface {
        SimplicialSurface::build_from_faces(&[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    fn octahedron() -> SimplicialSurface {
        SimplicialSurface::build_from_faces(&[
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 1, 4],
            [5, 1, 2],
            [5, 2, 3],
            [5, 3, 4],
            [5, 1, 4],
        ])
        .unwrap()
    }

    #[test]
    fn rotation_of_paths_wraps_through_a_gap() {
        let link = Link {
            kind: LinkKind::Path,
            vertices: vec![10, 11, 12, 13],
        };
        assert_eq!(
            rotation(&link, 2, true),
            vec![Some(12), Some(13), None, Some(10), Some(11)]
        );
        assert_eq!(
            rotation(&link, 2, false),
            vec![Some(12), Some(11), Some(10), None, Some(13)]
        );
        assert_eq!(
            rotation(&link, 0, true),
            vec![Some(10), Some(11), Some(12), Some(13)]
        );
        assert_eq!(
            rotation(&link, 0, false),
            vec![Some(10), None, Some(13), Some(12), Some(11)]
        );
    }

    #[test]
    fn relabelled_tetrahedron_has_the_same_code() {
        let t = tetrahedron();
        let r = t.relabel(&[2, 0, 3, 1]).unwrap();
        assert_eq!(canonical_code(&t).unwrap(), canonical_code(&r).unwrap());
        let map = find_isomorphism(&t, &r).unwrap().unwrap();
        assert!(is_isomorphism(&t, &r, &map));
    }

    #[test]
    fn tetrahedron_and_octahedron_differ() {
        assert_ne!(
            canonical_code(&tetrahedron()).unwrap(),
            canonical_code(&octahedron()).unwrap()
        );
        assert!(!equivalent(&tetrahedron(), &octahedron()).unwrap());
    }

    #[test]
    fn disc_is_not_equivalent_to_closed_surface() {
        let tri = SimplicialSurface::build_from_faces(&[[0, 1, 2]]).unwrap();
        let two = SimplicialSurface::build_from_faces(&[[0, 1, 2], [1, 2, 3]]).unwrap();
        assert!(!equivalent(&tri, &two).unwrap());
        assert!(equivalent(&tri, &tri).unwrap());
    }

    #[test]
    fn disconnected_input_is_rejected() {
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
        assert_eq!(canonical_code(&two), Err(EquivalenceError::Disconnected));
    }

    #[test]
    fn hex_rendering() {
        let code = canonical_code(&tetrahedron()).unwrap();
        let hex = code.to_hex();
        assert_eq!(hex.len(), 2 * code.as_bytes().len());
        assert!(hex.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
    }
}
