//! The reflection group of the hyperbolic triangle with angles
//! `π/2, π/3, π/d`.

use std::f64::consts::PI;

use nalgebra::Vector3;

use super::model::{Model, ModelPoint, Motion};
use super::GeometryError;

/// Base triangle `T0` and the reflections in its sides.
///
/// `p` is a vertex of the triangulation (angle `π/d`), `q` a face center
/// (angle `π/3`) and `m` an edge midpoint (right angle).
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleGroup {
    pub degree: usize,
    pub p: Vector3<f64>,
    pub q: Vector3<f64>,
    pub m: Vector3<f64>,
    /// Reflection in `QM`.
    pub r1: Motion,
    /// Reflection in `PQ`.
    pub r2: Motion,
    /// Reflection in `PM`.
    pub r3: Motion,
}

impl TriangleGroup {
    pub fn new(degree: usize) -> Result<Self, GeometryError> {
        if degree < 7 {
            return Err(GeometryError::DegreeTooSmall { degree, minimum: 7 });
        }
        let a = PI / degree as f64;
        let b = PI / 3.0;
        let pm = (b.cos() / a.sin()).acosh();
        let pq = (1.0 / (a.tan() * b.tan())).acosh();
        let p = Vector3::new(0.0, 0.0, 1.0);
        let m = ModelPoint::hyperbolic_polar(pm, 0.0).coords;
        let q = ModelPoint::hyperbolic_polar(pq, a).coords;
        let h = Model::Hyperboloid;
        Ok(Self {
            degree,
            p,
            q,
            m,
            r1: Motion::reflection(h, &q, &m),
            r2: Motion::reflection(h, &p, &q),
            r3: Motion::reflection(h, &p, &m),
        })
    }

    /// Distances from the identity of `(R1 R2)^3`, `(R2 R3)^d` and `(R1 R3)^2`.
    pub fn relation_residuals(&self) -> [f64; 3] {
        [
            self.r1.compose(&self.r2).pow(3).identity_residual(),
            self.r2.compose(&self.r3).pow(self.degree).identity_residual(),
            self.r1.compose(&self.r3).pow(2).identity_residual(),
        ]
    }

    pub fn max_form_residual(&self) -> f64 {
        [self.r1, self.r2, self.r3]
            .iter()
            .map(Motion::form_residual)
            .fold(0.0, f64::max)
    }

    /// Interior angles at `p`, `q`, `m`.
    pub fn angles(&self) -> [f64; 3] {
        let h = Model::Hyperboloid;
        [
            h.angle(&self.p, &self.q, &self.m),
            h.angle(&self.q, &self.p, &self.m),
            h.angle(&self.m, &self.p, &self.q),
        ]
    }

    /// Rotation about `p` through `2π/d`.
    pub fn rotation(&self) -> Motion {
        self.r2.compose(&self.r3)
    }

    /// The neighbour of `p` along the positive x-axis.
    pub fn first_neighbor(&self) -> Vector3<f64> {
        self.r1.apply(&self.p)
    }

    /// Corners `p`, `R1 p`, `R2 R3 R1 p` of the triangulation face containing `T0`.
    pub fn base_face(&self) -> [Vector3<f64>; 3] {
        let a = self.first_neighbor();
        [self.p, a, self.rotation().apply(&a)]
    }

    /// Reflections of the base face in the side opposite each corner:
    /// `R1 R2 R3 R2 R1`, `R2 R3 R2` and `R3`.
    pub fn base_face_reflections(&self) -> [Motion; 3] {
        let r2r3r2 = self.r2.compose(&self.r3).compose(&self.r2);
        [self.r1.compose(&r2r3r2).compose(&self.r1), r2r3r2, self.r3]
    }

    /// The `d` neighbours of `p` in counterclockwise order.
    pub fn star_of_apex(&self) -> Vec<Vector3<f64>> {
        let rot = self.rotation();
        let mut out = Vec::with_capacity(self.degree);
        let mut v = self.first_neighbor();
        for _ in 0..self.degree {
            out.push(v);
            v = Model::Hyperboloid.normalize(rot.apply(&v));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_match_construction() {
        for d in [7, 8, 12, 30] {
            let g = TriangleGroup::new(d).unwrap();
            let [a, b, c] = g.angles();
            assert!((a - PI / d as f64).abs() < 1e-12, "d={d}");
            assert!((b - PI / 3.0).abs() < 1e-12);
            assert!((c - PI / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn relations_hold() {
        for d in [7, 8, 9, 12] {
            let g = TriangleGroup::new(d).unwrap();
            assert!(g.max_form_residual() < 1e-12);
            for r in g.relation_residuals() {
                assert!(r < 1e-9, "d={d} residual {r}");
            }
        }
    }

    #[test]
    fn rotation_has_exact_order() {
        let g = TriangleGroup::new(7).unwrap();
        for j in 1..7 {
            assert!(g.rotation().pow(j).identity_residual() > 0.1);
        }
    }

    #[test]
    fn first_neighbor_is_twice_the_half_edge() {
        let g = TriangleGroup::new(7).unwrap();
        let h = Model::Hyperboloid;
        let s = h.distance(&g.p, &g.first_neighbor());
        assert!((s - 2.0 * h.distance(&g.p, &g.m)).abs() < 1e-12);
        assert!(g.first_neighbor().y.abs() < 1e-12);
    }

    #[test]
    fn base_reflections_fix_their_sides() {
        for d in [7, 9, 12] {
            let g = TriangleGroup::new(d).unwrap();
            let face = g.base_face();
            for (i, r) in g.base_face_reflections().iter().enumerate() {
                assert!(r.pow(2).identity_residual() < 1e-12);
                for j in (0..3).filter(|&j| j != i) {
                    assert!((r.apply(&face[j]) - face[j]).norm() < 1e-12, "d={d} i={i} j={j}");
                }
                assert!((r.apply(&face[i]) - face[i]).norm() > 0.1);
            }
        }
    }

    #[test]
    fn small_degrees_rejected() {
        assert!(matches!(
            TriangleGroup::new(6),
            Err(GeometryError::DegreeTooSmall { degree: 6, .. })
        ));
    }
}
