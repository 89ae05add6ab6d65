//! Exact-arithmetic toolkit for edge-antipodal and subequilateral polytopes.
//!
//! Every quantity is computed over the rationals: vertex and edge tests,
//! relative norms of polytopes, the diameter-to-minimum-distance ratio λ of
//! a vertex set, slab (antipodality) tests and the vertex-count bounds built
//! on top of them.

pub mod antipodality;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod io;
pub mod norms;
pub mod oracle;
pub mod polytope;
pub mod prober;
pub mod suite;

pub use error::{Error, Result};
pub use exact::{Scalar, Vector};
