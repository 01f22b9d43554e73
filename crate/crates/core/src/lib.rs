//! Longest repeated up/down-pattern subsequences in random permutations,
//! with a focus on 132-avoiding permutations.

pub mod bijection;
pub mod catalan;
pub mod decimal;
pub mod error;
pub mod montecarlo;
pub mod perm;
pub mod sampler;
pub mod series;
pub mod totals;
pub mod updown;
pub mod verify;

pub use error::{Error, Result};
pub use perm::{Letter, Permutation, Symmetry, UpDownPattern, UpDownWord};
pub use updown::PhaseStats;
