//! Cumulative subgoal fulfillment as an executable contract framework.
//!
//! A procedure is an *algorithm plan* (ordered subgoals that together with
//! the preconditions and invariants entail the postconditions) plus one code
//! block per subgoal. [`csf::run_procedure`] executes the blocks and checks
//! that each one establishes its subgoal while keeping the earlier ones;
//! [`csf::check_plan_sufficiency`] checks the entailment over a bounded
//! domain.
//!
//! The built-in procedures compute `N^3` (five ways) and `N^M` using only the
//! counted addition-family operations of [`addonly::Ops`].

pub mod addonly;
pub mod algorithms;
pub mod cli;
pub mod csf;
mod error;
pub mod mutants;
pub mod oracle;
pub mod plans;
pub mod registry;
pub mod state;

pub use addonly::{OpCounter, Ops};
pub use error::{Error, Result};
pub use state::{Params, State, Value};
