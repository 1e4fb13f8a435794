//! Linear block codes over GF(2) and guessing-based decoders for them.
//!
//! All bit and matrix indices in the public API are 1-based.

pub mod channel;
pub mod code;
pub mod decoder;
pub mod error;
pub mod gf2;
pub mod partition;
pub mod poly;

pub use code::{CodeSpec, LinearCode};
pub use decoder::{
    grandab_decode, hard_decision, orbgrand_decode, pattern_positions, rank_reliabilities,
    segmented_rank, DecodeOutcome, GrandabDecoder, OrbgrandDecoder, OrbgrandParams,
    SortPermutation, SortSource,
};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use partition::{Partition, PartitionCursor};
pub use poly::Gf2Poly;
