//! Certificates for ε-contracting projective transformations over ℝ, ℂ and
//! ℚ_p, generator reduction for dense subgroups of tori, and generation
//! checks for small real Lie algebras.

pub mod arch;
pub mod cartan;
pub mod contraction;
pub mod error;
pub mod exact;
pub mod io;
pub mod liealg;
pub mod padic;
pub mod projlin;
pub mod scalar;
pub mod torus;

pub use error::{Error, Result};
pub use projlin::{Matrix, ProjHyperplane, ProjPoint, Vector};
pub use scalar::{FieldDescriptor, FieldKind, Scalar};
