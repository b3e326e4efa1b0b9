//! Exact rational toolkit for Z-matrix subclasses (M, N, N₀, F₀, H and their
//! inverse classes), generalized inverses, small linear complementarity
//! problems and 3×3 circulant class regions.

pub mod circulant;
pub mod classify;
pub mod construct;
pub mod error;
pub mod geninv;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod lcp;
pub mod poly;
pub mod polyhedral;
pub mod probe;
pub mod rational;

pub use error::{Error, Result};
pub use matrix::{IndexSet, RatMatrix};
pub use rational::Rational;
