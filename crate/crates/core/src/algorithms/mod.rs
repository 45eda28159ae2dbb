//! Addition-only algorithms, as plain functions and as CSF procedures.
//!
//! Everything under this module does arithmetic through [`Ops`] only.
//! A test in `tests/no_multiplication.rs` audits these sources for raw
//! arithmetic operators.
//!
//! [`Ops`]: crate::addonly::Ops

pub(crate) mod binary;
mod cube;
mod get_max;
mod pow;
pub mod procedures;

pub use binary::{add_arg1_arg2_times, get_bin, BinaryDigits, PowersTable};
pub use cube::{cube_v1, cube_v2, cube_v3, cube_v4, cube_v5, CubeV2, CubeV3, CubeV5, Tally};
pub use get_max::{get_max, GetMax};
pub use pow::pow_add_only;
