//! Exact computations in toroidal and extended affine Lie algebras over `Q`.
//!
//! Everything is graded by `Z^N` and checked on finite degree windows with
//! exact rational arithmetic.

pub mod degree;
pub mod error;
pub mod forms;
pub mod lambda;
pub mod algebra;
pub mod config;
pub mod automorphism;
pub mod cli;
pub mod linalg;
pub mod scalar;
pub mod report;
pub mod rep;
pub mod roots;
pub mod simple_lie;

pub use degree::{bar, dv, in_g, pair, underline, DegreeVector, RationalVector, Window};
pub use error::{Error, Result};
pub use scalar::{frac, int, Scalar};
