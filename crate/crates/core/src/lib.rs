pub mod calculus;
pub mod error;
pub mod kernel;
pub mod logic;
pub mod models;
pub mod morphism;
pub mod random;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
