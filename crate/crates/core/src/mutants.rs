//! Curated single-edit mutations of the built-in procedures. Each one
//! replaces one block with a wrong version, and strict checking should stop
//! the run in that block, within its first two iterations.

use crate::addonly::Ops;
use crate::algorithms::binary::{at, index};
use crate::algorithms::procedures::{self, load_v3, load_v5, store_v3, store_v5};
use crate::algorithms::{CubeV2, CubeV3, CubeV5, GetMax};
use crate::csf::{
    run_procedure, Block, CheckMode, IterationCap, ProcedureSpec, RunReport, ViolationReport,
};
use crate::error::Result;
use crate::state::{Params, State};

pub struct Mutant {
    pub name: &'static str,
    pub description: &'static str,
    pub spec: ProcedureSpec,
    /// Index of the replaced block.
    pub block: usize,
    pub params: Params,
    /// Label of the check expected to fail first.
    pub expected: &'static str,
}

impl Mutant {
    pub fn run(&self) -> Result<RunReport> {
        run_procedure(&self.spec, &self.params, CheckMode::Strict)
    }

    /// True when `report` stopped in the mutated block with the expected
    /// label, no later than its second iteration (or at its end, for a
    /// straight block).
    pub fn caught_by(&self, report: &RunReport) -> bool {
        report.violation.as_ref().is_some_and(|v| self.matches(v))
    }

    fn matches(&self, v: &ViolationReport) -> bool {
        let early = match v.iteration {
            Some(i) => i <= 2,
            None => !self.spec.blocks()[self.block].is_loop(),
        };
        v.block == Some(self.block) && v.failed == self.expected && early
    }
}

fn mutate(spec: ProcedureSpec, block: usize, replacement: Block) -> ProcedureSpec {
    spec.with_block(block, replacement)
        .expect("mutant keeps the block's subgoals")
}

fn r_below_n(p: &Params, s: &State, ops: &mut Ops) -> Result<bool> {
    Ok(ops.lt(s.get("r")?, p.get("N")?))
}

fn v2_loop<F>(label: &str, body: F) -> Block
where
    F: Fn(&mut Ops, CubeV2) -> Result<CubeV2> + Send + Sync + 'static,
{
    Block::looping(
        label,
        &[2],
        IterationCap::Linear("N"),
        r_below_n,
        move |_, s, ops| {
            let st = CubeV2 {
                r: s.get("r")?,
                c: s.get("c")?,
                s: s.get("s")?,
            };
            let next = body(ops, st)?;
            s.set("r", next.r);
            s.set("c", next.c);
            s.set("s", next.s);
            Ok(())
        },
    )
}

fn v3_loop<F>(label: &str, body: F) -> Block
where
    F: Fn(&mut Ops, CubeV3) -> Result<CubeV3> + Send + Sync + 'static,
{
    Block::looping(
        label,
        &[3],
        IterationCap::Linear("N"),
        r_below_n,
        move |_, s, ops| {
            let next = body(ops, load_v3(s)?)?;
            store_v3(s, next);
            Ok(())
        },
    )
}

/// The v5 loop with `c, s, l` computed by `update(ops, st, u, v)`.
fn v5_loop<F>(label: &str, update: F) -> Block
where
    F: Fn(&mut Ops, CubeV5, i64, i64) -> Result<(i64, i64, i64)> + Send + Sync + 'static,
{
    Block::looping(
        label,
        &[5],
        IterationCap::Logarithmic("N"),
        |_, s, ops| Ok(ops.lt(s.get("j")?, s.get("k")?)),
        move |_, s, ops| {
            let st = load_v5(s)?;
            let j = ops.add(st.j, 1)?;
            let u = at(s.array("b")?, j, "b")?;
            let v = at(s.array("t")?, ops.add_const_times(3, j)?, "t")?;
            let (c, sq, l) = update(ops, st, u, v)?;
            store_v5(s, CubeV5 { j, c, s: sq, l });
            Ok(())
        },
    )
}

/// The curated mutation set, each run with `N = 10` (or an equivalent
/// ten-element input).
pub fn curated() -> Vec<Mutant> {
    let n10 = Params::n(10);
    vec![
        Mutant {
            name: "v1-cube-loop-clobbers-square",
            description: "v1: the Cube loop also bumps s (s := s + 1)",
            spec: mutate(
                procedures::v1(),
                1,
                Block::looping(
                    "fulfill Cube (mutated)",
                    &[1],
                    IterationCap::Linear("N"),
                    |_, s, ops| Ok(ops.gt(s.get("i")?, 0)),
                    |_, s, ops| {
                        let c = ops.add(s.get("c")?, s.get("s")?)?;
                        let sq = ops.add(s.get("s")?, 1)?;
                        let i = ops.sub(s.get("i")?, 1)?;
                        s.set("c", c);
                        s.set("s", sq);
                        s.set("i", i);
                        Ok(())
                    },
                )
                .with_setup(|p, s, _| {
                    s.set("c", 0);
                    s.set("i", p.get("N")?);
                    Ok(())
                }),
            ),
            block: 1,
            params: n10.clone(),
            expected: "Square",
        },
        Mutant {
            name: "v2-cube-drops-one",
            description: "v2: c := c + 3(s + r), dropping the + 1",
            spec: mutate(
                procedures::v2(),
                1,
                v2_loop("while r < N (mutated)", |ops, st| {
                    let sr = ops.add(st.s, st.r)?;
                    let r2 = ops.double(st.r)?;
                    let ds = ops.add(r2, 1)?;
                    Ok(CubeV2 {
                        r: ops.add(st.r, 1)?,
                        c: {
                            let dc = ops.add_const_times(3, sr)?;
                            ops.add(st.c, dc)?
                        },
                        s: ops.add(st.s, ds)?,
                    })
                }),
            ),
            block: 1,
            params: n10.clone(),
            expected: "Cube",
        },
        Mutant {
            name: "v2-square-drops-one",
            description: "v2: s := s + 2r, dropping the + 1",
            spec: mutate(
                procedures::v2(),
                1,
                v2_loop("while r < N (mutated)", |ops, st| {
                    let next = st.step(ops)?;
                    let r2 = ops.double(st.r)?;
                    Ok(CubeV2 {
                        s: ops.add(st.s, r2)?,
                        ..next
                    })
                }),
            ),
            block: 1,
            params: n10.clone(),
            expected: "Square",
        },
        Mutant {
            name: "v3-quadratic-starts-at-zero",
            description: "v3: initialization q := 0 instead of 1",
            spec: mutate(
                procedures::v3(),
                0,
                Block::straight("r, c, q, l := 0, 0, 0, 6", &[0, 1, 2], |_, s, ops| {
                    let st = CubeV3::init(ops);
                    store_v3(s, CubeV3 { q: 0, ..st });
                    Ok(())
                }),
            ),
            block: 0,
            params: n10.clone(),
            expected: "Quadratic",
        },
        Mutant {
            name: "v3-linear-plus-five",
            description: "v3: l := l + 5 instead of l + 6",
            spec: mutate(
                procedures::v3(),
                1,
                v3_loop("while r < N (mutated)", |ops, st| {
                    let next = st.step(ops)?;
                    Ok(CubeV3 {
                        l: ops.add(st.l, 5)?,
                        ..next
                    })
                }),
            ),
            block: 1,
            params: n10.clone(),
            expected: "Linear",
        },
        Mutant {
            name: "v3-cube-adds-linear",
            description: "v3: c := c + l instead of c + q",
            spec: mutate(
                procedures::v3(),
                1,
                v3_loop("while r < N (mutated)", |ops, st| {
                    let next = st.step(ops)?;
                    Ok(CubeV3 {
                        c: ops.add(st.c, st.l)?,
                        ..next
                    })
                }),
            ),
            block: 1,
            params: n10.clone(),
            expected: "Cube",
        },
        Mutant {
            name: "v4-cube-from-n",
            description: "v4: c := addArg1Arg2Times(N, b) instead of (s, b)",
            spec: mutate(
                procedures::v4(),
                2,
                Block::straight("c := addArg1Arg2Times(N, b)", &[2], |p, s, ops| {
                    let b = crate::algorithms::BinaryDigits::from_bits(s.array("b")?.to_vec())?;
                    let c = crate::algorithms::add_arg1_arg2_times(ops, p.get("N")?, &b)?;
                    s.set("c", c);
                    Ok(())
                }),
            ),
            block: 2,
            params: n10.clone(),
            expected: "Cube",
        },
        Mutant {
            name: "v5-square-starts-at-one",
            description: "v5: initialization s := 1 instead of b[0]",
            spec: mutate(
                procedures::v5(),
                2,
                Block::straight("j, c, s, l := 0, b[0], 1, b[0]", &[2, 3, 4], |_, s, ops| {
                    let st = CubeV5::init(ops, s.array("b")?)?;
                    store_v5(s, CubeV5 { s: 1, ..st });
                    Ok(())
                }),
            ),
            block: 2,
            params: n10.clone(),
            expected: "Square term",
        },
        Mutant {
            name: "v5-cube-drops-v",
            description: "v5: c := c + u(6s + 12l), dropping + v",
            spec: mutate(
                procedures::v5(),
                3,
                v5_loop("while j < k (mutated)", |ops, st, u, v| {
                    let l4 = ops.add_const_times(4, st.l)?;
                    let l8 = ops.double(l4)?;
                    let l12 = ops.add(l8, l4)?;
                    let s2 = ops.double(st.s)?;
                    let s6 = ops.add_const_times(3, s2)?;
                    let dc = ops.add(s6, l12)?;
                    let dc = ops.select_by_bit(u, dc)?;
                    let ds = ops.add(l8, v)?;
                    let ds = ops.select_by_bit(u, ds)?;
                    let dl = ops.select_by_bit(u, v)?;
                    Ok((ops.add(st.c, dc)?, ops.add(s2, ds)?, ops.add(l4, dl)?))
                }),
            ),
            block: 3,
            params: n10.clone(),
            expected: "Cube",
        },
        Mutant {
            name: "v5-linear-drops-uv",
            description: "v5: l := 4l, dropping + uv",
            spec: mutate(
                procedures::v5(),
                3,
                v5_loop("while j < k (mutated)", |ops, st, u, v| {
                    let l4 = ops.add_const_times(4, st.l)?;
                    let l8 = ops.double(l4)?;
                    let l12 = ops.add(l8, l4)?;
                    let s2 = ops.double(st.s)?;
                    let s6 = ops.add_const_times(3, s2)?;
                    let dc = ops.add(s6, l12)?;
                    let dc = ops.add(dc, v)?;
                    let dc = ops.select_by_bit(u, dc)?;
                    let ds = ops.add(l8, v)?;
                    let ds = ops.select_by_bit(u, ds)?;
                    Ok((ops.add(st.c, dc)?, ops.add(s2, ds)?, l4))
                }),
            ),
            block: 3,
            params: n10.clone(),
            expected: "Linear term",
        },
        Mutant {
            name: "getbin-forgets-bit",
            description: "getbin: subtracts t[j] from m without setting b[j]",
            spec: mutate(
                procedures::get_bin_procedure(),
                3,
                Block::looping(
                    "while j > 0 (mutated)",
                    &[3],
                    IterationCap::Logarithmic("N"),
                    |_, s, ops| Ok(ops.gt(s.get("j")?, 0)),
                    |_, s, ops| {
                        let j = ops.sub(s.get("j")?, 1)?;
                        let tj = at(s.array("t")?, j, "t")?;
                        let mut b = s.array("b")?.to_vec();
                        let slot = index(j, "b", b.len())?;
                        let m = s.get("m")?;
                        b[slot] = 0;
                        let m = if ops.ge(m, tj) { ops.sub(m, tj)? } else { m };
                        s.set("j", j);
                        s.set("m", m);
                        s.set_array("b", b);
                        Ok(())
                    },
                ),
            ),
            block: 3,
            params: n10.clone(),
            expected: "Tail of binary",
        },
        Mutant {
            name: "getmax-keeps-minimum",
            description: "getmax: restores with < instead of >",
            spec: mutate(
                procedures::get_max_procedure(),
                1,
                Block::looping(
                    "while i < anArr.length - 1 (mutated)",
                    &[1],
                    IterationCap::Length("anArr"),
                    |p, s, ops| {
                        let st = GetMax {
                            i: s.get("i")?,
                            r: s.get("r")?,
                            ret: s.get("returnI")?,
                        };
                        st.more(ops, p.array("anArr")?)
                    },
                    |p, s, ops| {
                        let i = ops.add(s.get("i")?, 1)?;
                        let x = at(p.array("anArr")?, i, "anArr")?;
                        s.set("i", i);
                        if ops.lt(x, s.get("returnI")?) {
                            s.set("r", i);
                            s.set("returnI", x);
                        }
                        Ok(())
                    },
                ),
            ),
            block: 1,
            params: Params::new().with_array("anArr", (0..10).collect()),
            expected: "Prefix max",
        },
        Mutant {
            name: "pow-adds-instead-of-multiplying",
            description: "pow: p := p + N instead of p * N",
            spec: mutate(
                procedures::pow_procedure(),
                2,
                Block::looping(
                    "while i < M (mutated)",
                    &[2],
                    IterationCap::Linear("M"),
                    |p, s, ops| Ok(ops.lt(s.get("i")?, p.get("M")?)),
                    |p, s, ops| {
                        let pw = ops.add(s.get("p")?, p.get("N")?)?;
                        let i = ops.add(s.get("i")?, 1)?;
                        s.set("p", pw);
                        s.set("i", i);
                        Ok(())
                    },
                ),
            ),
            block: 2,
            params: n10.with("M", 4),
            expected: "Power",
        },
    ]
}
