//! Quasi-exactly solvable one-dimensional Schrödinger models.
//!
//! A model is generated by one function `W₊` and a level `ε`. From it the
//! crate builds the superpotential, the potential with two algebraic levels,
//! their eigenfunctions, the partner potential, and the second-order operator
//! obtained after the gauge transformation to the variable `z`, which is then
//! split into quadratic elements of the sl(2) generators.

pub mod error;
pub mod function;
pub mod jet;
pub mod models;
pub mod numkit;
pub mod sl2;
pub mod susy;

pub use error::{QesError, Result};
pub use function::{Interval, SmoothFunction1d};
pub use jet::Jet;
