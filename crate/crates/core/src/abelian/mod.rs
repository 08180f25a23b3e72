//! Exact arithmetic for finitely generated abelian groups.

mod group;
mod lattice;
mod matrix;
mod smith;

pub use group::{FgAbelianGroup, GroupElement};
pub use lattice::{
    apply_hom, automorphism_inverse, cokernel, hom_kernel, intersect, is_automorphism, is_well_defined_hom,
    kernel_lattice, quotient, reduce_hom, solve, subquotient, Subquotient,
};
pub use matrix::{ints, Int, IntegerMatrix};
pub use smith::{smith_normal_form, SmithForm};
