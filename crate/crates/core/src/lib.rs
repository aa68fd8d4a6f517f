//! Exact computations for frame-valued domain theory on finite instances.

pub mod budget;
pub mod classical;
pub mod commands;
pub mod completions;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod frame;
pub mod lorder;
pub mod ltop;
pub mod points;
pub mod verify;
pub mod workspace;

pub use budget::Budget;
pub use error::{Error, Result};
pub use frame::{Elt, Frame};
