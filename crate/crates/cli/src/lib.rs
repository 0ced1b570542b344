//! Command-line front end: JSON input documents, classification reports,
//! family analysis and SVG diagrams of the `(tr A, det A)` plane.

pub mod diagram;
pub mod error;
pub mod family;
pub mod input;
pub mod report;

pub use error::{CliError, Result};
