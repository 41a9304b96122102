//! Hodge numbers, ball-type classification and Deligne–Mostow weight data for
//! cyclic covers of products of projective spaces branched along normal-crossing
//! divisors.
//!
//! All arithmetic is exact. Coordinates and part indices are 0-based throughout
//! the library.

pub mod chow;
pub mod classify;
pub mod cover;
pub mod dm;
mod error;
pub mod hodge;
pub mod multidegree;

pub use chow::{Ambient, ChowClass};
pub use cover::{CoverData, PartitionType};
pub use error::{Error, Result};
pub use multidegree::Multidegree;
