//! The only arithmetic the algorithms may use.
//!
//! [`Ops`] offers addition, subtraction, comparison, doubling, constant-times
//! shorthand and multiply-by-bit, and tallies every call. It has no general
//! multiplication, so an algorithm written against it cannot multiply two
//! runtime values.

use std::cmp::Ordering;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tally of counted operations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpCounter {
    pub adds: u64,
    pub subs: u64,
    pub compares: u64,
    /// Multiply-by-bit selections.
    pub selects: u64,
    pub assigns: u64,
}

impl Add for OpCounter {
    type Output = OpCounter;

    fn add(self, rhs: OpCounter) -> OpCounter {
        OpCounter {
            adds: self.adds + rhs.adds,
            subs: self.subs + rhs.subs,
            compares: self.compares + rhs.compares,
            selects: self.selects + rhs.selects,
            assigns: self.assigns + rhs.assigns,
        }
    }
}

/// Counting arithmetic context. One per run.
#[derive(Debug, Default)]
pub struct Ops {
    counter: OpCounter,
}

impl Ops {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, a: i64, b: i64) -> Result<i64> {
        self.counter.adds += 1;
        a.checked_add(b).ok_or(Error::Overflow {
            op: "add",
            lhs: a,
            rhs: b,
        })
    }

    pub fn sub(&mut self, a: i64, b: i64) -> Result<i64> {
        self.counter.subs += 1;
        a.checked_sub(b).ok_or(Error::Overflow {
            op: "sub",
            lhs: a,
            rhs: b,
        })
    }

    pub fn compare(&mut self, a: i64, b: i64) -> Ordering {
        self.counter.compares += 1;
        a.cmp(&b)
    }

    pub fn lt(&mut self, a: i64, b: i64) -> bool {
        self.compare(a, b) == Ordering::Less
    }

    pub fn le(&mut self, a: i64, b: i64) -> bool {
        self.compare(a, b) != Ordering::Greater
    }

    pub fn gt(&mut self, a: i64, b: i64) -> bool {
        self.compare(a, b) == Ordering::Greater
    }

    pub fn ge(&mut self, a: i64, b: i64) -> bool {
        self.compare(a, b) != Ordering::Less
    }

    pub fn eq(&mut self, a: i64, b: i64) -> bool {
        self.compare(a, b) == Ordering::Equal
    }

    /// `x + x`.
    pub fn double(&mut self, x: i64) -> Result<i64> {
        self.add(x, x)
    }

    /// `p * q` for a plan-time constant `p`, written out as `p - 1` additions.
    pub fn add_const_times(&mut self, p: u32, q: i64) -> Result<i64> {
        if p == 0 {
            return Err(Error::ZeroMultiplier);
        }
        let mut acc = q;
        for _ in 1..p {
            acc = self.add(acc, q)?;
        }
        Ok(acc)
    }

    /// `u * q` for a bit `u`, taken as a branch.
    pub fn select_by_bit(&mut self, u: i64, q: i64) -> Result<i64> {
        self.counter.selects += 1;
        match u {
            0 => Ok(0),
            1 => Ok(q),
            other => Err(Error::NotABit(other)),
        }
    }

    /// Records `n` variable assignments.
    pub fn assign(&mut self, n: u64) {
        self.counter.assigns += n;
    }

    pub fn snapshot(&self) -> OpCounter {
        self.counter
    }
}
