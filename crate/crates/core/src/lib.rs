//! Exact invariant theory of finite groups over prime fields.

pub mod error;
pub mod field;
pub mod graded;
pub mod analysis;
pub mod coinvariants;
pub mod invariants;
pub mod job;
pub mod lab;
pub mod report;
pub mod group;
pub mod rep;

pub use error::{Error, Result};
