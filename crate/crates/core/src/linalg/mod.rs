//! Exact integer linear algebra.

pub mod finite;
pub mod int;
pub mod matrix;
pub mod presentation;
pub mod smith;

pub use finite::{solve, AbelianHom, Solution};
pub use int::Int;
pub use matrix::IntMatrix;
pub use presentation::{induced_map, AbelianGroupPresentation, Homotopy};
pub use smith::{smith_normal_form, smith_normal_form_with, SmithDecomposition, SnfOptions, SnfStrategy};
