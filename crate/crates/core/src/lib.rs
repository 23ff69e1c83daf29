pub mod braiding;
pub mod classify;
pub mod cli;
pub mod error;
pub mod modarith;
pub mod nichols;
pub mod realize;
pub mod verify;

pub use error::{Error, Result};
