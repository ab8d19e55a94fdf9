//! Octonion algebra, associative calibrations, the maximal torus of G₂ and
//! the two families of slant surfaces of the nearly Kähler six-sphere:
//! plane sections (small and great 2-spheres) and torus orbits.
//!
//! Coordinates of Im O are always in the basis `e1, …, e7`; the torus-orbit
//! module names them `(x1, x2, x3, y0, y1, y2, y3)`.

pub mod calibration;
pub mod g2;
pub mod linalg;
pub mod octonion;
pub mod orbits;
pub mod sampling;
pub mod spheres;
pub mod structure;

pub use calibration::{CanonicalReduction, Plane3};
pub use g2::{G2Automorphism, So7Matrix, TorusFlow};
pub use octonion::{ImOctonion, Octonion, Vector7};
pub use orbits::{OrbitGeometry, OrbitParam, OrbitPoint};
pub use spheres::{SlantReport, SphereSection, TangentFrame};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("expected a unit vector, got norm {norm:e}")]
    NotUnit { norm: f64 },
    #[error("vector is not tangent to S⁶ at p: ⟨p, X⟩ = {inner:e}")]
    NotTangent { inner: f64 },
    #[error("spanning vectors are linearly dependent (smallest singular value {singular_value:e})")]
    RankDeficient { singular_value: f64 },
    #[error("frame is not orthonormal (max deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },
    #[error("plane is associative (φ = {phi}); the construction needs φ < 1")]
    AssociativePlane { phi: f64 },
    #[error("not a basic triple: {condition} = {value:e}")]
    NotBasicTriple { condition: &'static str, value: f64 },
    #[error("orbit is not two-dimensional: α = {alpha:e}, β = {beta:e}, γ = {gamma:e}")]
    NonRegular { alpha: f64, beta: f64, gamma: f64 },
    #[error("point is not on the slice x2 = y0 = 0 (x2 = {x2:e}, y0 = {y0:e})")]
    NotOnSlice { x2: f64, y0: f64 },
    #[error("degenerate denominator D = {value:e}")]
    DegenerateDenominator { value: f64 },
    #[error("sphere section is inconsistent: {0}")]
    InvalidSection(String),
    #[error("slant test inconclusive: spread {spread:e} lies between the slant and non-slant thresholds")]
    Inconclusive { spread: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
