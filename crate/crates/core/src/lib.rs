//! Braid monodromy of complex line arrangements via braided wiring diagrams.

pub mod braid;
pub mod extract;
pub mod fixtures;
pub mod freegroup;
pub mod lattice;
pub mod markov;
pub mod monodromy;
pub mod parse;
pub mod perm;
pub mod presentation;
pub mod scalar;
pub mod wiring;

pub use braid::{artin_act, braids_equal, BraidError, BraidWord, PureBraidWord, PureFactor};
pub use freegroup::{FreeEndo, FreeGroupError, FreeWord};
pub use perm::Perm;
