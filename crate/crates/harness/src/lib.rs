//! Monte-Carlo FER and complexity harness for the GRAND decoders, plus the
//! audit reports behind the `orbgrand` command line tool.

pub mod audit;
pub mod config;
pub mod displacement;
pub mod error;
pub mod fer;

pub use config::{DecoderKind, RawConfig, SimConfig};
pub use error::{HarnessError, Result};
pub use fer::{run_fer_point, run_sweep, FerRow};
