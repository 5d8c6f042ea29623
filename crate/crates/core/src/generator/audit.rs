//! Euler characteristic of a hypothetical disc inside a d-regular plane
//! triangulation whose boundary vertices, apart from three exceptional ones,
//! have degree `d - 1` or `d - 2`.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Degree data of such a disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeProfile {
    pub d: u64,
    /// Degrees of the three exceptional boundary vertices.
    pub exceptional: [u64; 3],
    /// Interior vertices (degree `d`).
    pub m0: u64,
    /// Boundary vertices of degree `d - 1`.
    pub m1: u64,
    /// Boundary vertices of degree `d - 2`.
    pub m2: u64,
}

/// `(12 - Σ)/6 + m0 (6-d)/6 + m1 (5-d)/6 + m2 (6-d)/6`, exactly.
///
/// A value below 1 means no such disc exists, since a disc has
/// characteristic 1.
pub fn forbidden_disk_chi(profile: &DegreeProfile) -> BigRational {
    let d = BigInt::from(profile.d);
    let sum: BigInt = profile.exceptional.iter().map(|&x| BigInt::from(x)).sum();
    let six = BigInt::from(6);
    let numerator = (BigInt::from(12) - sum)
        + BigInt::from(profile.m0) * (&six - &d)
        + BigInt::from(profile.m1) * (BigInt::from(5) - &d)
        + BigInt::from(profile.m2) * (&six - &d);
    BigRational::new(numerator, six)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn single_interior_vertex() {
        let p = DegreeProfile {
            d: 7,
            exceptional: [2, 2, 2],
            m0: 1,
            m1: 0,
            m2: 0,
        };
        assert_eq!(forbidden_disk_chi(&p), ratio(5, 6));
    }

    #[test]
    fn lone_triangle_is_a_disc() {
        let p = DegreeProfile {
            d: 7,
            exceptional: [2, 2, 2],
            m0: 0,
            m1: 0,
            m2: 0,
        };
        assert_eq!(forbidden_disk_chi(&p), ratio(1, 1));
    }

    #[test]
    fn one_boundary_vertex_of_degree_d_minus_one() {
        let p = DegreeProfile {
            d: 8,
            exceptional: [2, 2, 3],
            m0: 0,
            m1: 1,
            m2: 0,
        };
        assert_eq!(forbidden_disk_chi(&p), ratio(1, 3));
    }
}
