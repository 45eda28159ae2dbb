use crate::addonly::Ops;
use crate::algorithms::binary::at;
use crate::error::{Error, Result};

/// Loop state for the running maximum: `ret = arr[r]` is the largest of
/// `arr[0..=i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GetMax {
    pub i: i64,
    pub r: i64,
    pub ret: i64,
}

impl GetMax {
    /// `i, r, returnI := 0, 0, anArr[0]`
    pub fn init(ops: &mut Ops, arr: &[i64]) -> Result<Self> {
        let ret = at(arr, 0, "anArr")?;
        ops.assign(3);
        Ok(Self { i: 0, r: 0, ret })
    }

    /// Loop guard: `i < anArr.length − 1`.
    pub fn more(&self, ops: &mut Ops, arr: &[i64]) -> Result<bool> {
        let last = ops.sub(arr.len() as i64, 1)?;
        Ok(ops.lt(self.i, last))
    }

    /// `++i`, then restore the running maximum. Strict `>` keeps the first
    /// of equal maxima.
    pub fn step(&self, ops: &mut Ops, arr: &[i64]) -> Result<Self> {
        let i = ops.add(self.i, 1)?;
        let x = at(arr, i, "anArr")?;
        ops.assign(1);
        Ok(if ops.gt(x, self.ret) {
            ops.assign(2);
            Self { i, r: i, ret: x }
        } else {
            Self { i, ..*self }
        })
    }
}

pub fn get_max(ops: &mut Ops, arr: &[i64]) -> Result<i64> {
    if arr.is_empty() {
        return Err(Error::Precondition("getmax".into()));
    }
    // s1: running maximum of the prefix
    let mut st = GetMax::init(ops, arr)?;
    // s2: i = anArr.length - 1
    while st.more(ops, arr)? {
        st = st.step(ops, arr)?;
    }
    Ok(st.ret)
}
