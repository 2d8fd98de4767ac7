//! Exact finite geometry toolkit for Cameron–Liebler line classes.
//!
//! The crate builds PG(n,q) over small Galois fields, the line graph on its lines
//! (the Grassmann graph), and verifies the counting identities that characterize
//! Cameron–Liebler line classes. It also enumerates the admissible local pattern
//! matrices and turns contradictions between them into replayable
//! non-existence certificates.

pub mod algebra;
pub mod cl;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod grassmann;
pub mod io;
pub mod patterns;

pub use error::{Error, Result};
