//! Finite posets, m-cover posets, m-Tamari lattices and Dedekind-MacNeille
//! completions, with exhaustive checkers for their structural claims.

pub mod completion;
pub mod count;
pub mod dyck;
pub mod error;
pub mod generate;
pub mod io;
pub mod iso;
pub mod mcover;
pub mod path;
pub mod poset;
pub mod strip;
pub mod verify;

pub use error::{Error, Result};
pub use poset::Poset;
