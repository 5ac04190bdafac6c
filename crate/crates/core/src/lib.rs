//! Finite 3-group arithmetic over polycyclic presentations, with the
//! constructions needed to build and check the coclass trees rooted in the
//! group of order 729 of type a.1.

pub mod artin;
pub mod error;
pub mod families;
pub mod iso;
pub mod pc;
pub mod pcover;
pub mod properties;
pub mod series;
pub mod suites;
pub mod trees;

pub use error::{Error, Result};
pub use pc::{Definition, Exps, GroupElement, PcPresentation, Projection, Subgroup};
