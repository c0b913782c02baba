//! Exact search and verification of arcs in the torus grid `Z_n x Z_n`.
//!
//! An arc is a point set with no three points on a common line, where lines
//! are the images of integer lines under reduction mod `n`. The crate covers
//! modular arithmetic, line enumeration and collinearity, arc-level
//! operations (completeness, lifts, affine normalization, bounds), an exact
//! maximum-arc solver, certificates, LP model export and grid rendering.

pub mod arc;
pub mod bounds;
pub mod certificate;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod ilp;
pub mod modular;
pub mod render;
pub mod solver;

pub use arc::{AffineMap, ArcSet};
pub use error::{Error, Result};
pub use modular::{Modulus, Point, Residue};
