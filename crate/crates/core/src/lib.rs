//! Linear functional batch codes over GF(2) with bounded recovery-set size.
//!
//! An `[n, k, t, r]` functional batch code stores `k` bits in `n` coded bits
//! so that any `t` linear queries can be answered from pairwise disjoint
//! sets of at most `r` coded bits each. This crate provides
//!
//! - [`counting`]: exact counts `theta(n, t, r)` of bounded labellings, the
//!   quantity behind every length bound here;
//! - [`bounds`]: the resulting lower bounds on `n` and the table emitters;
//! - [`codecheck`]: simplex constructions and an exhaustive verifier;
//! - [`gf2`]: the bit-packed linear algebra underneath.

pub mod bounds;
pub mod codecheck;
pub mod counting;
mod error;
pub mod gf2;

pub use bounds::{BoundId, BoundOutcome, CodeParams};
pub use codecheck::{Batch, Query, RecoveryCatalog, Status, Verdict, VerifyOptions};
pub use counting::{Count, EgfPoly, ThetaMemo};
pub use error::{Error, Result};
pub use gf2::{BitVec, ColumnSet, GeneratorMatrix};
