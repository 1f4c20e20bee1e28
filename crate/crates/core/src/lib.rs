//! Fractional repetition (FR) codes for distributed storage.
//!
//! An FR code places `theta` coded symbols on `n` nodes, `alpha` symbols per node,
//! each symbol replicated `rho` times, so that a failed node can be rebuilt by
//! copying `beta` symbols from each of `d` helpers. This crate builds such codes
//! from combinatorial designs, composes them, computes file sizes, minimum
//! distances and resilience, and simulates storage and repair over GF(256).
//!
//! ```
//! use frcode::designs::projective_plane;
//! use frcode::analysis::{file_size, FileSizeOptions};
//!
//! let fano = projective_plane(2).unwrap();
//! let m3 = file_size(&fano, 3, FileSizeOptions::default()).unwrap();
//! assert_eq!(m3.m, 6);
//! ```

pub mod analysis;
pub mod bitset;
pub mod code;
pub mod compose;
pub mod designs;
pub mod error;
pub mod export;
pub mod field;
pub mod repair;
pub mod resilience;
pub mod sim;

pub use code::{CodeParams, FrCode, Meta};
pub use error::{FrError, Result};
