//! Kepler two-body problem and numerical checks of three Euclidean proofs
//! that its bound orbits are ellipses.
//!
//! * [`euclid`]: reflecting the radial projection of `r` in the tangent line
//!   gives the conserved second focus `K/(mH)`.
//! * [`hodograph`]: the velocity traces a circle of radius `k/L` about
//!   `iK/(mL)`.
//! * [`newton`]: comparing constant areal speed about the center and about a
//!   focus of an ellipse forces an inverse-square attraction.
//!
//! [`dynamics`] integrates the equation of motion; the trajectories it
//! produces are the oracle the geometric statements are checked against.

// `!(x > 0.0)` rejects NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod conic_fit;
pub mod conserved;
pub mod dynamics;
pub mod error;
pub mod euclid;
pub mod hodograph;
pub mod io;
pub mod newton;
pub mod suites;
pub mod svg;
pub mod vector;

pub use conserved::{ConservedSet, DriftReport};
pub use dynamics::{KeplerSystem, Method, OrbitState, Sample, Trajectory};
pub use error::{KeplerError, Result};
pub use euclid::EllipseGeometry;
pub use vector::{PlaneFrame, Vec3};
