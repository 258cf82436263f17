//! Exact structure-constant computations for the orthosymplectic Jordan
//! superalgebras `Josp(n|2m)`, their irreducible bimodules, and the
//! Wedderburn splitting problem for square-zero radical extensions.

pub mod error;
pub mod ratlinalg;
pub mod superalgebra;
pub mod josp;
pub mod bimodule;
pub mod structure;
pub mod splitting;
pub mod io;
pub mod suite;

pub use error::{Error, Result};
