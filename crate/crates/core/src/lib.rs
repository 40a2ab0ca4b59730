pub mod cohomology;
pub mod config;
pub mod duality;
pub mod error;
pub mod group;
pub mod linalg;
pub mod multinorm;
pub mod qnumbers;
pub mod transfer;

pub use cohomology::{cohomology, CochainSpace, CohomologyGroup, GModule};
pub use config::Caps;
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupHom, QuotientGroup, Subgroup};
pub use linalg::{AbelianGroupPresentation, Int, IntMatrix, SmithDecomposition};
