//! Constant-curvature models and their isometries.
//!
//! All three models store points as 3-vectors:
//! * spherical: unit vectors in R^3;
//! * euclidean: `(x, y, 0)`;
//! * hyperboloid: `(x, y, z)` with `x^2 + y^2 - z^2 = -1`, `z > 0`.

use std::fmt;

use nalgebra::{Matrix3, Vector2, Vector3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Spherical,
    Euclidean,
    Hyperboloid,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Spherical => "spherical",
            Model::Euclidean => "euclidean",
            Model::Hyperboloid => "hyperboloid",
        }
    }

    /// Matrix of the bilinear form preserved by linear isometries.
    pub fn form(self) -> Matrix3<f64> {
        match self {
            Model::Hyperboloid => Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0)),
            Model::Spherical | Model::Euclidean => Matrix3::identity(),
        }
    }

    /// Model inner product; for the Euclidean plane only meaningful on
    /// difference vectors.
    pub fn inner(self, a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
        match self {
            Model::Hyperboloid => a.x * b.x + a.y * b.y - a.z * b.z,
            Model::Spherical | Model::Euclidean => a.dot(b),
        }
    }

    pub fn distance(self, a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
        match self {
            // <a-b, a-b> = 4 sinh^2(dist/2) on the hyperboloid; stable for close points
            Model::Hyperboloid => {
                let diff = a - b;
                2.0 * (self.inner(&diff, &diff).max(0.0).sqrt() / 2.0).asinh()
            }
            Model::Spherical => a.cross(b).norm().atan2(a.dot(b)),
            Model::Euclidean => (a - b).norm(),
        }
    }

    /// Angle at `v` between the geodesics towards `a` and `b`.
    pub fn angle(self, v: &Vector3<f64>, a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
        let (ta, tb) = match self {
            Model::Hyperboloid => (a + v * self.inner(a, v), b + v * self.inner(b, v)),
            Model::Spherical => (a - v * a.dot(v), b - v * b.dot(v)),
            Model::Euclidean => (a - v, b - v),
        };
        let cos = self.inner(&ta, &tb) / (self.inner(&ta, &ta) * self.inner(&tb, &tb)).sqrt();
        cos.clamp(-1.0, 1.0).acos()
    }

    /// Projects a point back onto the model surface.
    pub fn normalize(self, p: Vector3<f64>) -> Vector3<f64> {
        match self {
            Model::Hyperboloid => p / (p.z * p.z - p.x * p.x - p.y * p.y).sqrt(),
            Model::Spherical => p.normalize(),
            Model::Euclidean => Vector3::new(p.x, p.y, 0.0),
        }
    }

    /// How far `p` is from satisfying the model constraint.
    pub fn constraint_residual(self, p: &Vector3<f64>) -> f64 {
        match self {
            Model::Hyperboloid => {
                let r = (self.inner(p, p) + 1.0).abs();
                if p.z > 0.0 {
                    r
                } else {
                    f64::INFINITY
                }
            }
            Model::Spherical => (p.norm_squared() - 1.0).abs(),
            Model::Euclidean => p.z.abs(),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPoint {
    pub model: Model,
    pub coords: Vector3<f64>,
}

impl ModelPoint {
    pub fn new(model: Model, coords: Vector3<f64>) -> Self {
        Self {
            model,
            coords: model.normalize(coords),
        }
    }

    /// Hyperboloid point at distance `t` from the apex in direction `theta`.
    pub fn hyperbolic_polar(t: f64, theta: f64) -> Self {
        Self {
            model: Model::Hyperboloid,
            coords: Vector3::new(t.sinh() * theta.cos(), t.sinh() * theta.sin(), t.cosh()),
        }
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        self.model.constraint_residual(&self.coords) <= tol
    }
}

/// `(x, y) / (1 + z)`: hyperboloid to Poincaré disc.
pub fn to_poincare(p: &Vector3<f64>) -> Vector2<f64> {
    Vector2::new(p.x, p.y) / (1.0 + p.z)
}

/// Linear isometry of a model. The Euclidean plane uses homogeneous
/// coordinates `(x, y, 1)` internally.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Motion {
    pub model: Model,
    pub matrix: Matrix3<f64>,
}

impl Motion {
    pub fn identity(model: Model) -> Self {
        Self {
            model,
            matrix: Matrix3::identity(),
        }
    }

    /// Rotation by `theta` about the apex / origin / north pole.
    pub fn rotation(model: Model, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            model,
            matrix: Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0),
        }
    }

    /// Reflection in the geodesic through `p` and `q`.
    pub fn reflection(model: Model, p: &Vector3<f64>, q: &Vector3<f64>) -> Self {
        let matrix = match model {
            Model::Hyperboloid => {
                let j = model.form();
                // J (p x q) is Minkowski-orthogonal to p and q, and spacelike
                let mut n = j * p.cross(q);
                n /= model.inner(&n, &n).sqrt();
                Matrix3::identity() - 2.0 * n * (j * n).transpose()
            }
            Model::Spherical => {
                let n = p.cross(q).normalize();
                Matrix3::identity() - 2.0 * n * n.transpose()
            }
            Model::Euclidean => {
                let dir = Vector2::new(q.x - p.x, q.y - p.y).normalize();
                let n = Vector2::new(-dir.y, dir.x);
                let c = n.dot(&Vector2::new(p.x, p.y));
                let lin = nalgebra::Matrix2::identity() - 2.0 * n * n.transpose();
                Matrix3::new(
                    lin[(0, 0)],
                    lin[(0, 1)],
                    2.0 * c * n.x,
                    lin[(1, 0)],
                    lin[(1, 1)],
                    2.0 * c * n.y,
                    0.0,
                    0.0,
                    1.0,
                )
            }
        };
        Self { model, matrix }
    }

    pub fn apply(&self, p: &Vector3<f64>) -> Vector3<f64> {
        match self.model {
            Model::Euclidean => {
                let h = self.matrix * Vector3::new(p.x, p.y, 1.0);
                Vector3::new(h.x / h.z, h.y / h.z, 0.0)
            }
            _ => self.matrix * p,
        }
    }

    pub fn compose(&self, other: &Motion) -> Motion {
        debug_assert_eq!(self.model, other.model);
        Motion {
            model: self.model,
            matrix: self.matrix * other.matrix,
        }
    }

    pub fn pow(&self, n: usize) -> Motion {
        (0..n).fold(Motion::identity(self.model), |acc, _| acc.compose(self))
    }

    /// `max |M^T J M - J|` on the linear part.
    pub fn form_residual(&self) -> f64 {
        let (m, j) = match self.model {
            Model::Euclidean => {
                let mut lin = self.matrix;
                lin[(0, 2)] = 0.0;
                lin[(1, 2)] = 0.0;
                (lin, Matrix3::identity())
            }
            model => (self.matrix, model.form()),
        };
        (m.transpose() * j * m - j).abs().max()
    }

    /// `max |M - I|`.
    pub fn identity_residual(&self) -> f64 {
        (self.matrix - Matrix3::identity()).abs().max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn apex_maps_to_origin() {
        let o = to_poincare(&Vector3::new(0.0, 0.0, 1.0));
        assert_eq!(o, Vector2::zeros());
    }

    #[test]
    fn radial_point_maps_to_tanh_half() {
        let t: f64 = 2.0;
        let p = ModelPoint::hyperbolic_polar(t, 0.0);
        let q = to_poincare(&p.coords);
        assert!((q.x - (t / 2.0).tanh()).abs() < 1e-15);
        assert!((q.x - 0.761_594_155_955_764_9).abs() < 1e-12);
        assert_eq!(q.y, 0.0);
    }

    #[test]
    fn hyperbolic_distance_from_apex() {
        let a = ModelPoint::hyperbolic_polar(0.0, 0.0).coords;
        let b = ModelPoint::hyperbolic_polar(1.3, 0.7).coords;
        assert!((Model::Hyperboloid.distance(&a, &b) - 1.3).abs() < 1e-12);
    }

    #[test]
    fn reflections_preserve_forms_and_are_involutions() {
        let p = ModelPoint::hyperbolic_polar(0.4, 0.3).coords;
        let q = ModelPoint::hyperbolic_polar(1.1, 2.0).coords;
        let r = Motion::reflection(Model::Hyperboloid, &p, &q);
        assert!(r.form_residual() < 1e-12);
        assert!(r.pow(2).identity_residual() < 1e-12);
        assert!((r.apply(&p) - p).norm() < 1e-12);
        assert!((r.apply(&q) - q).norm() < 1e-12);

        let e = Motion::reflection(
            Model::Euclidean,
            &Vector3::new(1.0, 0.0, 0.0),
            &Vector3::new(0.5, 0.75f64.sqrt(), 0.0),
        );
        assert!(e.form_residual() < 1e-12);
        let image = e.apply(&Vector3::zeros());
        assert!((image - Vector3::new(1.5, 0.75f64.sqrt(), 0.0)).norm() < 1e-12);

        let s = Motion::reflection(Model::Spherical, &Vector3::x(), &Vector3::y());
        assert!((s.apply(&Vector3::z()) + Vector3::z()).norm() < 1e-15);
    }

    #[test]
    fn angles_in_each_model() {
        let v = Vector3::new(0.0, 0.0, 1.0);
        let a = ModelPoint::hyperbolic_polar(1.0, 0.0).coords;
        let b = ModelPoint::hyperbolic_polar(1.0, PI / 3.0).coords;
        assert!((Model::Hyperboloid.angle(&v, &a, &b) - PI / 3.0).abs() < 1e-12);
        assert!((Model::Spherical.angle(&Vector3::z(), &Vector3::x(), &Vector3::y()) - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn constraint_residuals() {
        assert!(ModelPoint::new(Model::Hyperboloid, Vector3::new(0.3, 0.4, 2.0)).is_valid(1e-12));
        assert!(ModelPoint::new(Model::Spherical, Vector3::new(3.0, 4.0, 0.0)).is_valid(1e-12));
        assert!(!ModelPoint {
            model: Model::Hyperboloid,
            coords: Vector3::new(0.0, 0.0, -1.0)
        }
        .is_valid(1e-12));
    }
}
