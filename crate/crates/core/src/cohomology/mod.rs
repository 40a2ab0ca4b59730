//! Tate cohomology of finite groups through the complete standard complex.

pub mod complex;
pub mod module;
pub mod tate;

pub use complex::{differential_matrix, homotopy_matrix, CochainSpace};
pub use module::{
    coinvariants, coinvariants_along, fixed_points, fixed_points_along, Coinvariants, FixedPoints, GModule, ModuleMap,
    ShortExactSequence,
};
pub use tate::{cohomology, cohomology_uncached, cohomology_uncertified, cohomology_with, CohomologyGroup};
