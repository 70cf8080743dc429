//! Proof-of-computational-integrity toolkit for SHA-256: a PLONK-style
//! constraint system over the 64-bit field p = 2^64 - 2^32 + 1, proven and
//! verified with a FRI-based polynomial commitment, with NEAR block
//! ingestion and a benchmark harness around the prove/verify pipeline.

pub mod bench;
pub mod bytes;
pub mod circuit;
pub mod field;
pub mod near;
pub mod proof;
pub mod sha256;
pub mod store;
