pub mod characterize;
pub mod cli;
pub mod conjugacy;
pub mod error;
pub mod graphs;
pub mod sliding_code;
pub mod substitution;
pub mod words;

pub use error::{Error, Result};
