//! Exact computations with ideal lattices, finite spaces, flabby sheaves of
//! algebras and strong connections on comodule algebras.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bundled;
pub mod error;
pub mod hopf;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod projspace;
pub mod sheaf;

pub use error::{Error, Result};
