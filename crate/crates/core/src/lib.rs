//! Exact decision procedures for multi-layer election control by rule
//! selection.
//!
//! Every voter casts one vote per layer. Choosing one rule for each layer
//! fixes a satisfaction value per vote; those values are aggregated per voter
//! under the sum, max or min model and compared to a threshold `d`. An
//! instance is feasible when some rule assignment makes at least `alpha`
//! voters reach `d`.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! computation:
//!
//! * [`instance`]: the data model and evaluation semantics,
//! * [`scoring`]: satisfaction tensors from ranked profiles,
//! * [`solvers`]: brute force, the min-model polynomial/FPT procedures and the
//!   rule-type subset search,
//! * [`reductions`]: instance generators from five classic hard problems plus
//!   witness extraction,
//! * [`oracles`]: deliberately naive solvers and checkers for those problems.
//!
//! File formats, the command line and timing live in the `mecsr` crate.
#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod error;
pub mod instance;
pub mod oracles;
pub mod reductions;
pub mod scoring;
pub mod solvers;
mod voterset;

pub use error::{Error, Result};
pub use instance::{evaluate, evaluate_voter, EvalReport, Instance, Model, RuleAssignment, Violation};
pub use voterset::VoterSet;
