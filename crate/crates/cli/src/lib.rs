//! Files, command line and verification harness on top of `mecsr-core`.
//!
//! Everything written by this crate is canonical JSON: compact, keys in a
//! fixed order, newline-terminated. Exit codes of the `mecsr` binary:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, feasible, or oracle and solver agree |
//! | 1 | infeasible, or oracle and solver disagree |
//! | 2 | usage or parse error |
//! | 3 | generator refused (odd partition total without `--force`) |
//! | 4 | a search budget would be exceeded |

pub mod app;
pub mod bench;
pub mod error;
pub mod formats;
pub mod parallel;
pub mod provenance;
pub mod random;
pub mod verify;

pub use error::CliError;
