//! Subfactors of the integers: eventually periodic sets, sequence windows, the
//! finite-state subindex engine and the analytic screens built on top.

pub mod analysis;
pub mod band;
pub mod certificates;
pub mod epset;
pub mod infer;
pub mod primes;
pub mod rsfa_z;
pub mod screen;
pub mod seq;

pub use epset::EPSet;
pub use seq::{DifWindow, SequenceKind, SequenceSpec, Signedness};
pub use rsfa_z::{rsfa_z, verify_subfactor_z, ZSubfactorReport};
