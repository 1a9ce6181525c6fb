//! Support library for the `zigzag` command-line tool.
//!
//! The binary stripes files across per-node shard directories using the
//! codes from [`zigzag_core`], repairs lost shards by reading only the
//! planned byte ranges, and surfaces the verifiers, searchers, and the
//! skip-cost comparison report. Everything the binary does lives here so
//! integration tests can drive the same code paths directly.
//!
//! * [`error`] — error type with the process exit-code mapping.
//! * [`specfile`] — the JSON code-spec formats (explicit and family forms).
//! * [`manifest`] — the shard directory's self-describing manifest.
//! * [`stripe`] — byte layout, encode/decode/repair over files.
//! * [`report`] — the skip-cost comparison table.

pub mod error;
pub mod manifest;
pub mod report;
pub mod specfile;
pub mod stripe;
