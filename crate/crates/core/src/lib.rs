//! Subfactor and subindex calculus on finite groups and on the integers.
//!
//! [`group`] builds and validates finite groups, [`setcalc`] handles difference
//! sets and their iterates, [`subfactor`] enumerates subfactors and classifies
//! index stability, and [`zlab`] does the exact integer-set computations.

pub mod bits;
pub mod clique;
pub mod error;
pub mod group;
pub mod setcalc;
pub mod subfactor;
pub mod types;
pub mod zlab;

pub use bits::BitSet;
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupSubset};
pub use types::{Cardinal, ProofStatus, Side};
