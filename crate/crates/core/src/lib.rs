//! Degree-regular triangulations of surfaces.
//!
//! * [`complex`]: validated simplicial surfaces with link, star and boundary queries.
//! * [`tri`]: the `regtri 1` text format.
//! * [`generator`]: the layered d-regular disc for `d >= 6`, layer counts and audits.
//! * [`equivalence`]: canonical codes and isomorphism witnesses.
//! * [`classify`]: reference surfaces for `d < 6` and classification of closed surfaces.
//! * [`geometry`]: constant-curvature realizations, metric checks, SVG and OFF output.

pub mod complex;
pub mod generator;
pub mod tri;
pub mod equivalence;
pub mod classify;
pub mod geometry;

pub use complex::{ComplexError, FVector, Link, LinkKind, SimplicialSurface, Vertex};
pub use generator::{generate, initial_disk, LayeredDisk};
