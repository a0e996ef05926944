//! Splitting-type stratifications of Picard varieties of k-gonal curves.
//!
//! For a general degree `k` cover `f: C -> P^1` of genus `g`, a degree `d`
//! line bundle `L` is sorted by the splitting type of `f_* L`. This crate
//! computes, in exact arithmetic, the combinatorics of that stratification:
//!
//! * [`splitting`]: splitting types, dominance order, `u`, Hilbert functions.
//! * [`brill_noether`]: `rho`, `rho_k`, the maximal types `w_{r,l}` and the
//!   decomposition of `W^r_d`, with a brute-force maximality oracle.
//! * [`poset`]: the stratification poset, down-sets, DOT/JSON export.
//! * [`theta`]: truncated theta series and closed-form class coefficients.
//! * [`degeneration`]: push forwards from elliptic curves, the
//!   order-preserving endomorphism model, node conditions, chain bounds.

pub mod brill_noether;
pub mod degeneration;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod poset;
pub mod splitting;
pub mod theta;

pub use brill_noether::{rho, rho_k, w_rl, wrd_decomposition, BnContext, StratumReport};
pub use error::{Error, Result};
pub use exec::Execution;
pub use poset::{build_poset, StratPoset};
pub use splitting::{balanced, make_type, HilbertProfile, SplittingType};

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "splitloci/1";
