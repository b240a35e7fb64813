pub mod bijection;
pub mod bubbles;
pub mod continuum;
pub mod error;
pub mod harness;
pub mod loops;
pub mod metrics;
pub mod rmq;
pub mod stats;
pub mod unionfind;
pub mod word;

pub use error::{Error, Result};
pub use word::{Burger, Letter, ModelParams, ReducedWord, WordWindow};
