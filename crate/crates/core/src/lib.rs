//! Composite asymmetric error-correcting codes for combinatorial-composite
//! DNA storage.
//!
//! Data is an `m x n` binary matrix whose rows each hold exactly `w` ones
//! (one combinatorial symbol per row). The channel can only clear ones.
//! Codes here constrain the per-row VT syndromes over the least prime
//! `p >= n` to lie in Reed-Solomon codes, so rows that lost ones become
//! syndrome erasures that the outer code fills back in.

pub mod analysis;
pub mod channel;
pub mod codec;
pub mod combinatorics;
pub mod error;
pub mod gf;
pub mod params;
pub mod shortmer;
pub mod stats;
pub mod syndrome;
pub mod word;

pub use codec::{CodeSpec, Payload, PayloadHeader, Variant};
pub use error::{Error, Result};
pub use params::{payload_bit_count, smallest_prime_geq, validate_params, CodeParams};
pub use word::{BinaryRow, CompositeSymbol, CompositeWord, ReceivedWord};
