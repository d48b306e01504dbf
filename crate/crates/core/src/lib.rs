//! Finite category theory with exhaustive checkers: categories and
//! presentations, presheaves, truncated simplicial sets, Reedy structure,
//! Grothendieck constructions, sites, descent and stackification.

pub mod error;
pub mod fincat;
pub mod group;
pub mod json;
pub mod corpus;
pub mod descent;
pub mod grothendieck;
pub mod presheaf;
pub mod reedy;
pub mod simplicial;
pub mod site;

pub use error::{Error, Result};
