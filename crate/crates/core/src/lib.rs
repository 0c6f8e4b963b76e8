pub mod catalog;
pub mod derivations;
pub mod error;
pub mod exactla;
pub mod format;
pub mod liealg;
pub mod rigidity;

pub use error::{Error, Result};
