//! Zigzag MDS array codes over small binary extension fields.
//!
//! An `(n, k, M)` array code stores an `M x n` grid of GF(2^w) symbols across
//! `n` nodes: `k` systematic nodes hold the message columns verbatim, and
//! `p = n - k` parity nodes hold linear combinations whose terms are *permuted*
//! within each column. Rows are indexed by the group `Z_2^m` (`M = 2^m`), and
//! each parity node is described by a tuple of group elements — one shift per
//! systematic column — plus a row of Cauchy coefficients that makes the code MDS.
//!
//! The permuted ("zigzag") structure is what buys cheap repair: a single failed
//! systematic node can be rebuilt by reading only half of every surviving node,
//! and with a careful choice of row ordering those half-columns are (nearly)
//! contiguous on disk. The crate models that cost explicitly: the *skip cost* of
//! a read is the number of rows a sequential reader must skip over between the
//! first and last row it wants.
//!
//! Modules:
//!
//! - [`gf2w`] — arithmetic in GF(2^w) for 1 <= w <= 16, with validated moduli;
//! - [`group`] — the row-index group `Z_2^m`, its index-two subgroups, row
//!   orderings, and skip-cost functionals;
//! - [`linalg`] — dense exact linear algebra over GF(2^w);
//! - [`code`] — code specifications, Cauchy coefficients, encoding, and
//!   any-`k`-of-`n` decoding;
//! - [`repair`] — single-node repair planning and execution, with read-cost
//!   metrics;
//! - [`families`] — ready-made code families with low (often zero) skip cost,
//!   plus a generic builder from orderings/subgroups/witnesses;
//! - [`verify`] — exhaustive MDS checking and independent determinant oracles
//!   for the permutation-matrix algebra the constructions rely on;
//! - [`search`] — exhaustive/randomized search for orderings and subgroup
//!   tuples minimizing the worst-case per-helper skip cost.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats, and the command
//! line tool live in the companion `zigzag-cli` crate.

#![no_std]
#![deny(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod code;
pub mod families;
pub mod gf2w;
pub mod group;
pub mod linalg;
pub mod repair;
pub mod search;
pub mod verify;

/// Exact ratio used for read-fraction style metrics (e.g. `5/8` of a column).
pub type Ratio64 = num_rational::Ratio<u64>;
