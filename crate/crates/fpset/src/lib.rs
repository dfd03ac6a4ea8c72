//! Fixed point sets of the conjugation action of symmetric groups on their
//! classes of fixed-point-free products of `q`-cycles, over `GF(p)`.
//!
//! Layers, bottom up: [`perm`] (permutations), [`group`] (finite permutation
//! groups), [`modlin`] (modules over `GF(p)`), [`setalg`] (the product
//! algebra of permutation sets), [`fps`] (closure, the fixed-point-set test,
//! κ and the brute-force oracle) and [`classify`] (the constructive
//! classification and its comparison against the oracle).

pub mod classify;
pub mod config;
pub mod error;
pub mod exec;
pub mod fps;
pub mod group;
pub mod modlin;
pub mod perm;
pub mod setalg;

pub use config::{Caps, Exec};
pub use error::{Error, Result};
pub use group::GroupHandle;
pub use perm::{perm, Permutation, Point};
