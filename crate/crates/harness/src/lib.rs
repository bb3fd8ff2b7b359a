//! Batch verification of the congruence and identity checks: grid sweeps,
//! JSONL/CSV output, resumable checkpoints and the exit-code contract.

pub mod checkpoint;
pub mod config;
pub mod error;
pub mod identity;
pub mod record;
pub mod sink;
pub mod summary;
pub mod sweep;

pub use config::{Format, PathSel, RawConfig, SweepConfig};
pub use error::{HarnessError, Result};
pub use identity::{run_identities, IdentityBounds, IdentityRun};
pub use record::Record;
pub use summary::{Counts, Summary};
pub use sweep::{cross_check, run_sweep};
