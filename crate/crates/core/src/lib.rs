//! Counting small configurations in Steiner triple systems.

pub mod analysis;
pub mod bench;
pub mod config;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod plan;
pub mod random;
pub mod sts;

pub use config::{builtin, CanonicalForm, Configuration, PermGroup};
pub use error::{Error, Result};
pub use sts::SteinerTripleSystem;
