pub mod cli;
pub mod cyclicity;
pub mod duality;
pub mod error;
pub mod funcspace;
pub mod leontiev;
pub mod operators;
pub mod scalar;

pub use error::{Error, Result};
