//! Exact computations for topological T-duality pairs over finite simplicial complexes.

pub mod abelian;
pub mod corpus;
pub mod error;
pub mod gysin;
pub mod io;
pub mod moduli;
pub mod pairs;
pub mod simplicial;

pub use error::{Error, Result};
