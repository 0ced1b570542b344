//! Classification of symplectic matrices that are conjugate to their inverse
//! through the standard antisymplectic involution.
//!
//! A matrix of this kind is written in block form `[[A, B], [C, Aᵀ]]` and
//! stored as a [`WonenburgerTriple`]. The conjugacy data of such a matrix
//! under `GL_n` lives over the plane of `(tr A, det A)`; [`base`] stratifies
//! that plane, [`signatures`] computes B-signs, Krein types and stability,
//! and [`components`] provides normal forms, sheet labels and the
//! component analysis of one-parameter families.

mod error;

pub mod base;
pub mod components;
pub mod mat;
pub mod sample;
pub mod signatures;
pub mod wonenburger;

pub use error::{Error, Result, StructureEquation, Violation};
pub use mat::{SquareMatrix, DEFAULT_TOL};
pub use wonenburger::{GLElement, WonenburgerTriple};
