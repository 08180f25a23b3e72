//! Finite ordered simplicial complexes, integral cohomology, cup products,
//! simplicial maps and mapping tori.

mod cohomology;
mod complex;
mod mapping_torus;
mod maps;

pub use cohomology::{cup, cup_cochains, Cocycle, CohomologyBasis, CupTable};
pub use complex::{load_complex, SimplicialComplex};
pub use mapping_torus::mapping_torus;
pub use maps::SimplicialMap;
