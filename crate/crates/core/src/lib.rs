//! Permutation-symmetric multiqubit states on the Majorana sphere:
//! Dicke/Majorana conversion, geometric entanglement, SLOCC classification,
//! classical spherical point problems and LMG ground states.

pub mod error;
pub mod symstate;

pub use error::{Error, Result};
pub use symstate::{BlochPoint, ExtendedComplex, MpDistribution, SymmetricState};
pub mod geometric;
pub mod optim;
pub mod slocc;
pub mod classical;
pub mod extremal;
pub mod catalog;
pub mod lmg;
pub mod cli;
