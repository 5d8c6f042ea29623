//! SVG pictures and OFF meshes of realized surfaces.

use std::fmt::Write as _;

use nalgebra::{Vector2, Vector3};

use super::model::{to_poincare, Model};
use super::RealizedSurface;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Draw hyperbolic edges as geodesic arcs in the Poincaré disc.
    pub arcs: bool,
    /// Include the far hemisphere of spherical inputs as dashed edges.
    pub back_edges: bool,
    /// Width and height of the picture in user units.
    pub size: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self {
            arcs: false,
            back_edges: false,
            size: 800.0,
        }
    }
}

/// Planar picture coordinates, before scaling.
fn planar(r: &RealizedSurface) -> Vec<Vector2<f64>> {
    r.positions
        .iter()
        .map(|p| match r.model {
            Model::Hyperboloid => to_poincare(p),
            Model::Euclidean | Model::Spherical => Vector2::new(p.x, p.y),
        })
        .collect()
}

// Circle through p and q orthogonal to the unit circle, or None for a diameter.
fn geodesic_circle(p: &Vector2<f64>, q: &Vector2<f64>) -> Option<(Vector2<f64>, f64)> {
    let det = p.x * q.y - p.y * q.x;
    if det.abs() < 1e-12 {
        return None;
    }
    let a = (p.norm_squared() + 1.0) / 2.0;
    let b = (q.norm_squared() + 1.0) / 2.0;
    let c = Vector2::new((a * q.y - b * p.y) / det, (p.x * b - q.x * a) / det);
    let radius = (c.norm_squared() - 1.0).max(0.0).sqrt();
    Some((c, radius))
}

/// SVG 1.1 document with one `<path>` per drawn edge.
///
/// Hyperbolic surfaces are shown in the Poincaré disc inside a unit circle;
/// spherical ones by orthographic projection of the front hemisphere `z >= 0`.
pub fn render_svg(r: &RealizedSurface, options: &SvgOptions) -> String {
    let f = r.surface.f_vector();
    let pts = planar(r);
    let half = options.size / 2.0;
    let extent = match r.model {
        Model::Hyperboloid | Model::Spherical => 1.0,
        Model::Euclidean => pts.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1e-9),
    };
    let scale = 0.95 * half / extent;
    let screen = |p: &Vector2<f64>| (half + scale * p.x, half - scale * p.y);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">",
        options.size
    );
    let _ = writeln!(
        out,
        "<!-- model={} f0={} f1={} f2={} faces={} -->",
        r.model, f.f0, f.f1, f.f2, f.f2
    );
    if r.model == Model::Hyperboloid {
        let _ = writeln!(
            out,
            "<circle class=\"boundary\" cx=\"{half:.4}\" cy=\"{half:.4}\" r=\"{scale:.4}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>"
        );
    }
    out.push_str("<g fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"0.6\">\n");
    for (u, v) in r.surface.edges() {
        let mut dashed = false;
        if r.model == Model::Spherical {
            let mid: Vector3<f64> = r.positions[u] + r.positions[v];
            if mid.z < -1e-12 {
                if !options.back_edges {
                    continue;
                }
                dashed = true;
            }
        }
        let (x0, y0) = screen(&pts[u]);
        let (x1, y1) = screen(&pts[v]);
        let d = match (r.model, options.arcs) {
            (Model::Hyperboloid, true) => match geodesic_circle(&pts[u], &pts[v]) {
                Some((c, radius)) => {
                    let a = pts[u] - c;
                    let b = pts[v] - c;
                    // counterclockwise in the plane is counterclockwise on screen
                    let sweep = if a.x * b.y - a.y * b.x > 0.0 { 0 } else { 1 };
                    format!(
                        "M {x0:.4} {y0:.4} A {0:.4} {0:.4} 0 0 {sweep} {x1:.4} {y1:.4}",
                        radius * scale
                    )
                }
                None => format!("M {x0:.4} {y0:.4} L {x1:.4} {y1:.4}"),
            },
            _ => format!("M {x0:.4} {y0:.4} L {x1:.4} {y1:.4}"),
        };
        if dashed {
            let _ = writeln!(out, "<path class=\"edge back\" stroke-dasharray=\"3 3\" d=\"{d}\"/>");
        } else {
            let _ = writeln!(out, "<path class=\"edge\" d=\"{d}\"/>");
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// OFF mesh. Hyperbolic surfaces are written as their Poincaré disc picture
/// in the plane `z = 0`. Faces are oriented counterclockwise in the plane,
/// or outward on the sphere.
pub fn write_off(r: &RealizedSurface) -> String {
    let f = r.surface.f_vector();
    let coords: Vec<Vector3<f64>> = match r.model {
        Model::Hyperboloid => planar(r).iter().map(|p| Vector3::new(p.x, p.y, 0.0)).collect(),
        Model::Euclidean | Model::Spherical => r.positions.clone(),
    };
    let mut out = String::from("OFF\n");
    let _ = writeln!(out, "{} {} {}", f.f0, f.f2, f.f1);
    for p in &coords {
        let _ = writeln!(out, "{} {} {}", p.x, p.y, p.z);
    }
    for face in r.surface.faces() {
        let [a, b, c] = *face;
        let (pa, pb, pc) = (&coords[a], &coords[b], &coords[c]);
        let flipped = match r.model {
            Model::Spherical => pa.dot(&pb.cross(pc)) < 0.0,
            _ => (pb - pa).cross(&(pc - pa)).z < 0.0,
        };
        if flipped {
            let _ = writeln!(out, "3 {a} {c} {b}");
        } else {
            let _ = writeln!(out, "3 {a} {b} {c}");
        }
    }
    out
}
