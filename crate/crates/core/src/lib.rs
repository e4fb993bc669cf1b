//! T-link presentations of Lorenz links, satellite decompositions, and
//! link invariants for checking them.

pub mod braid;
pub mod cli;
pub mod poly;
pub mod tlink;
pub mod invariant;
pub mod satellite;
pub mod suite;
