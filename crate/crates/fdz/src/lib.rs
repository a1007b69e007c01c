//! Exact-arithmetic invariants, isomorphism and elementary-equivalence
//! testing for rings whose additive group is finitely generated
//! (FDZ-algebras), plus the twin generator for equivalent-but-twisted pairs.
//!
//! All arithmetic is arbitrary precision; every positive verdict carries an
//! independently checkable witness. Values are immutable after construction
//! and all operations are pure, so concurrent use needs no synchronization.

pub mod equiv;
pub mod error;
pub mod format;
pub mod ideals;
pub mod primes;
pub mod report;
pub mod ring;
pub mod samples;
pub mod scalars;
pub mod verdict;
pub mod zlattice;

pub use error::Error;
