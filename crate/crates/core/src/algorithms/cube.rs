//! Five addition-only ways to compute `N^3`.
//!
//! The loop states are public so callers can step through an algorithm and
//! observe the values its possession subgoals keep. Every update is a
//! simultaneous assignment: all right-hand sides read the pre-update values.

use crate::addonly::Ops;
use crate::algorithms::binary::{add_arg1_arg2_times, at, get_bin, PowersTable};
use crate::error::{Error, Result};

fn check_input(n: i64) -> Result<()> {
    if n < 0 {
        return Err(Error::Domain(format!("cube needs N >= 0, got {n}")));
    }
    Ok(())
}

/// Countdown loop adding `step` to `acc` once per tick.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tally {
    pub acc: i64,
    pub left: i64,
}

impl Tally {
    pub fn init(ops: &mut Ops, times: i64) -> Self {
        ops.assign(2);
        Self {
            acc: 0,
            left: times,
        }
    }

    pub fn more(&self, ops: &mut Ops) -> bool {
        ops.gt(self.left, 0)
    }

    pub fn step(&self, ops: &mut Ops, step: i64) -> Result<Self> {
        let acc = ops.add(self.acc, step)?;
        let left = ops.sub(self.left, 1)?;
        ops.assign(2);
        Ok(Self { acc, left })
    }
}

fn repeat_add(ops: &mut Ops, step: i64, times: i64) -> Result<i64> {
    let mut t = Tally::init(ops, times);
    while t.more(ops) {
        t = t.step(ops, step)?;
    }
    Ok(t.acc)
}

/// `s = N^2` by N additions of N, then `c = s·N` by N additions of s.
pub fn cube_v1(ops: &mut Ops, n: i64) -> Result<i64> {
    check_input(n)?;
    // [SG1> (Square): s = N^2
    let s = repeat_add(ops, n, n)?;
    // SG2 (Cube): c = N^3
    repeat_add(ops, s, n)
}

/// Loop state keeping `c = r^3` and `s = r^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeV2 {
    pub r: i64,
    pub c: i64,
    pub s: i64,
}

impl CubeV2 {
    pub fn init(ops: &mut Ops) -> Self {
        ops.assign(3);
        Self { r: 0, c: 0, s: 0 }
    }

    /// `r, c, s := r+1, c + 3*(s+r) + 1, s + 2*r + 1`
    pub fn step(&self, ops: &mut Ops) -> Result<Self> {
        let r = ops.add(self.r, 1)?;
        let sr = ops.add(self.s, self.r)?;
        let sr3 = ops.add_const_times(3, sr)?;
        let dc = ops.add(sr3, 1)?;
        let c = ops.add(self.c, dc)?;
        let r2 = ops.double(self.r)?;
        let ds = ops.add(r2, 1)?;
        let s = ops.add(self.s, ds)?;
        ops.assign(3);
        Ok(Self { r, c, s })
    }
}

pub fn cube_v2(ops: &mut Ops, n: i64) -> Result<i64> {
    check_input(n)?;
    let mut st = CubeV2::init(ops);
    while ops.lt(st.r, n) {
        st = st.step(ops)?;
    }
    Ok(st.c)
}

/// Loop state keeping `c = r^3`, `q = 3r^2 + 3r + 1` and `l = 6r + 6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeV3 {
    pub r: i64,
    pub c: i64,
    pub q: i64,
    pub l: i64,
}

impl CubeV3 {
    pub fn init(ops: &mut Ops) -> Self {
        ops.assign(4);
        Self {
            r: 0,
            c: 0,
            q: 1,
            l: 6,
        }
    }

    /// `r, c, q, l := r+1, c+q, q+l, l+6`
    pub fn step(&self, ops: &mut Ops) -> Result<Self> {
        let next = Self {
            r: ops.add(self.r, 1)?,
            c: ops.add(self.c, self.q)?,
            q: ops.add(self.q, self.l)?,
            l: ops.add(self.l, 6)?,
        };
        ops.assign(4);
        Ok(next)
    }
}

/// The finite-difference cube: four additions per unit step of `r`.
pub fn cube_v3(ops: &mut Ops, n: i64) -> Result<i64> {
    check_input(n)?;
    let mut st = CubeV3::init(ops);
    while ops.lt(st.r, n) {
        st = st.step(ops)?;
    }
    Ok(st.c)
}

/// `s = N·N` and `c = s·N`, each product by doubling over N's bits.
pub fn cube_v4(ops: &mut Ops, n: i64) -> Result<i64> {
    check_input(n)?;
    if ops.eq(n, 0) {
        return Ok(0);
    }
    // [SG1 (N in binary)
    let b = get_bin(ops, n)?;
    // [SG2 (Square): s = N^2
    let s = add_arg1_arg2_times(ops, n, &b)?;
    // SG3 (Cube): c = N^3
    add_arg1_arg2_times(ops, s, &b)
}

/// Loop state over the bits of N. With `r = b[0] + 2b[1] + … + 2^j b[j]` it
/// keeps `c = r^3`, `s = 2^j r^2` and `l = 2^(2j) r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeV5 {
    pub j: i64,
    pub c: i64,
    pub s: i64,
    pub l: i64,
}

impl CubeV5 {
    /// `j, c, s, l := 0, b[0], b[0], b[0]`
    pub fn init(ops: &mut Ops, bits: &[i64]) -> Result<Self> {
        let b0 = at(bits, 0, "b")?;
        ops.assign(4);
        Ok(Self {
            j: 0,
            c: b0,
            s: b0,
            l: b0,
        })
    }

    /// With `j` advanced, `u = b[j]` and `v = t[3j] = 2^(3j)`:
    /// `c, s, l := c + u(6s + 12l + v), 2s + u(8l + v), 4l + uv`.
    pub fn step(&self, ops: &mut Ops, bits: &[i64], t: &[i64]) -> Result<Self> {
        let j = ops.add(self.j, 1)?;
        let u = at(bits, j, "b")?;
        let v = at(t, ops.add_const_times(3, j)?, "t")?;

        let l4 = ops.add_const_times(4, self.l)?;
        let l8 = ops.double(l4)?;
        let l12 = ops.add(l8, l4)?;
        let s2 = ops.double(self.s)?;
        let s6 = ops.add_const_times(3, s2)?;

        let dc = ops.add(s6, l12)?;
        let dc = ops.add(dc, v)?;
        let dc = ops.select_by_bit(u, dc)?;
        let c = ops.add(self.c, dc)?;

        let ds = ops.add(l8, v)?;
        let ds = ops.select_by_bit(u, ds)?;
        let s = ops.add(s2, ds)?;

        let dl = ops.select_by_bit(u, v)?;
        let l = ops.add(l4, dl)?;

        ops.assign(6);
        Ok(Self { j, c, s, l })
    }
}

/// Limit of the powers table v5 needs: `3k + 1`.
pub(crate) fn v5_table_last(ops: &mut Ops, k: i64) -> Result<i64> {
    let k3 = ops.add_const_times(3, k)?;
    ops.add(k3, 1)
}

/// Cube by one pass over the bits of N, most significant last.
pub fn cube_v5(ops: &mut Ops, n: i64) -> Result<i64> {
    check_input(n)?;
    if ops.eq(n, 0) {
        return Ok(0);
    }
    // SG1> (N in binary)
    let b = get_bin(ops, n)?;
    let k = b.k();
    // [SG2> (Powers of 2) through 2^(3k+1)
    let last = v5_table_last(ops, k)?;
    let t = PowersTable::build(ops, last)?;
    // SG3-5 (Cube, Square term, Linear term)
    let mut st = CubeV5::init(ops, b.bits())?;
    // SG6 (Particularized): j = k
    while ops.lt(st.j, k) {
        st = st.step(ops, b.bits(), t.as_slice())?;
    }
    Ok(st.c)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Cube = fn(&mut Ops, i64) -> Result<i64>;
    const ALL: [(&str, Cube); 5] = [
        ("v1", cube_v1),
        ("v2", cube_v2),
        ("v3", cube_v3),
        ("v4", cube_v4),
        ("v5", cube_v5),
    ];

    #[test]
    fn small_inputs() {
        for (name, f) in ALL {
            for (n, want) in [(0, 0), (1, 1), (5, 125), (6, 216), (7, 343), (10, 1000)] {
                assert_eq!(f(&mut Ops::new(), n), Ok(want), "{name}({n})");
            }
        }
    }

    #[test]
    fn negative_input_rejected() {
        for (name, f) in ALL {
            assert!(
                matches!(f(&mut Ops::new(), -1), Err(Error::Domain(_))),
                "{name}"
            );
        }
    }

    #[test]
    fn v2_first_iteration() {
        let mut ops = Ops::new();
        let st = CubeV2::init(&mut ops).step(&mut ops).unwrap();
        assert_eq!((st.r, st.c, st.s), (1, 1, 1));
    }

    #[test]
    fn v3_init_and_first_iteration() {
        let mut ops = Ops::new();
        let st = CubeV3::init(&mut ops);
        assert_eq!((st.r, st.c, st.q, st.l), (0, 0, 1, 6));
        let st = st.step(&mut ops).unwrap();
        assert_eq!((st.r, st.c, st.q, st.l), (1, 1, 7, 12));
    }

    #[test]
    fn v3_counts_four_adds_per_iteration() {
        let mut ops = Ops::new();
        assert_eq!(cube_v3(&mut ops, 10), Ok(1000));
        assert_eq!(ops.snapshot().adds, 40);
        assert_eq!(ops.snapshot().compares, 11);
    }

    #[test]
    fn v1_adds_one_per_tick() {
        let mut ops = Ops::new();
        assert_eq!(cube_v1(&mut ops, 1), Ok(1));
        assert_eq!(ops.snapshot().adds, 2);
        assert_eq!(ops.snapshot().subs, 2);
    }

    #[test]
    fn width_boundary() {
        const MAX: i64 = 2_097_151;
        for (name, f) in ALL {
            assert_eq!(f(&mut Ops::new(), MAX), Ok(MAX * MAX * MAX), "{name}");
            assert!(
                matches!(f(&mut Ops::new(), MAX + 1), Err(Error::Overflow { .. })),
                "{name}"
            );
        }
    }
}
