pub mod algebra;
pub mod bimodule;
pub mod complex;
pub mod error;
pub mod homological;
pub mod linalg;
pub mod module;
pub mod quiver;
pub mod random;
pub mod verify;

pub use error::{Error, Result};
