//! Block spectrum of RNA pseudoknot gamma-structures.
//!
//! The crate counts gamma-structures exactly through their block
//! decomposition, locates the dominant singularity of the counting series,
//! and derives the laws of the longest block, of short blocks and of block
//! types. Every series is cross-checked against [`oracle`], an exhaustive
//! enumeration of small diagrams.

pub mod diagram;
pub mod error;
pub mod laws;
pub mod oracle;
pub mod params;
pub mod sampler;
pub mod series;
pub mod singularity;
pub mod verify;

pub use error::{Error, Result};
pub use params::{BlockType, StructureParams};
