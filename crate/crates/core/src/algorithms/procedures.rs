//! The algorithms as CSF implementations: each plan from [`crate::plans`]
//! paired with the code blocks that fulfill its subgoals.
//!
//! Blocks load their variables from the [`State`], run the same step
//! functions as the plain versions, and store the results back, so a run in
//! [`CheckMode::Off`](crate::csf::CheckMode::Off) counts the same operations
//! as the plain function up to the short-circuit test.

use crate::algorithms::binary::{
    add_arg1_arg2_times, descend_guard, descend_step, get_bin, log_guard, log_step, table_guard,
    table_step, tail_init, BinaryDigits,
};
use crate::algorithms::cube::{v5_table_last, CubeV2, CubeV3, CubeV5, Tally};
use crate::algorithms::get_max::GetMax;
use crate::csf::{Block, IterationCap, ProcedureBuilder, ProcedureSpec};
use crate::error::Result;
use crate::plans;
use crate::state::{Params, State};

fn digits(s: &State) -> Result<BinaryDigits> {
    BinaryDigits::from_bits(s.array("b")?.to_vec())
}

fn store_bin(s: &mut State, b: BinaryDigits) {
    s.set("k", b.k());
    s.set_array("b", b.into_bits());
}

/// `b, k := getBin(N)` fulfilling "N in binary".
fn bin_block(sg: usize) -> Block {
    Block::straight("b := getBin(N)", &[sg], |p, s, ops| {
        let b = get_bin(ops, p.get("N")?)?;
        store_bin(s, b);
        Ok(())
    })
}

fn zero_short_circuit(builder: ProcedureBuilder, result: &'static str) -> ProcedureBuilder {
    builder.short_circuit(
        "N = 0",
        |p, _| Ok(p.get("N")? == 0),
        move |_, s, ops| {
            s.set(result, 0);
            ops.assign(1);
            Ok(())
        },
    )
}

fn build(builder: ProcedureBuilder) -> ProcedureSpec {
    builder.build().expect("built-in procedure is well formed")
}

/// Countdown loop: `acc := 0; i := N; while i > 0 { acc := acc + step; i := i − 1 }`.
fn tally_block(
    label: &str,
    sg: usize,
    acc: &'static str,
    step: fn(&Params, &State) -> Result<i64>,
) -> Block {
    Block::looping(
        label,
        &[sg],
        IterationCap::Linear("N"),
        move |_, s, ops| {
            let t = Tally {
                acc: s.get(acc)?,
                left: s.get("i")?,
            };
            Ok(t.more(ops))
        },
        move |p, s, ops| {
            let t = Tally {
                acc: s.get(acc)?,
                left: s.get("i")?,
            };
            let t = t.step(ops, step(p, s)?)?;
            s.set(acc, t.acc);
            s.set("i", t.left);
            Ok(())
        },
    )
    .with_setup(move |p, s, ops| {
        let t = Tally::init(ops, p.get("N")?);
        s.set(acc, t.acc);
        s.set("i", t.left);
        Ok(())
    })
}

pub fn v1() -> ProcedureSpec {
    build(
        ProcedureSpec::builder("v1")
            .plan(plans::v1())
            .block(tally_block("fulfill Square", 0, "s", |p, _| p.get("N")))
            .block(tally_block("fulfill Cube", 1, "c", |_, s| s.get("s")))
            .result("c"),
    )
}

fn load_v2(s: &State) -> Result<CubeV2> {
    Ok(CubeV2 {
        r: s.get("r")?,
        c: s.get("c")?,
        s: s.get("s")?,
    })
}

fn store_v2(s: &mut State, st: CubeV2) {
    s.set("r", st.r);
    s.set("c", st.c);
    s.set("s", st.s);
}

pub fn v2() -> ProcedureSpec {
    build(
        ProcedureSpec::builder("v2")
            .plan(plans::v2())
            .block(Block::straight(
                "r, c, s := 0, 0, 0",
                &[0, 1],
                |_, s, ops| {
                    store_v2(s, CubeV2::init(ops));
                    Ok(())
                },
            ))
            .block(Block::looping(
                "while r < N",
                &[2],
                IterationCap::Linear("N"),
                |p, s, ops| Ok(ops.lt(s.get("r")?, p.get("N")?)),
                |_, s, ops| {
                    let next = load_v2(s)?.step(ops)?;
                    store_v2(s, next);
                    Ok(())
                },
            ))
            .result("c"),
    )
}

pub(crate) fn load_v3(s: &State) -> Result<CubeV3> {
    Ok(CubeV3 {
        r: s.get("r")?,
        c: s.get("c")?,
        q: s.get("q")?,
        l: s.get("l")?,
    })
}

pub(crate) fn store_v3(s: &mut State, st: CubeV3) {
    s.set("r", st.r);
    s.set("c", st.c);
    s.set("q", st.q);
    s.set("l", st.l);
}

pub fn v3() -> ProcedureSpec {
    build(
        ProcedureSpec::builder("v3")
            .plan(plans::v3())
            .block(Block::straight(
                "r, c, q, l := 0, 0, 1, 6",
                &[0, 1, 2],
                |_, s, ops| {
                    store_v3(s, CubeV3::init(ops));
                    Ok(())
                },
            ))
            .block(Block::looping(
                "while r < N",
                &[3],
                IterationCap::Linear("N"),
                |p, s, ops| Ok(ops.lt(s.get("r")?, p.get("N")?)),
                |_, s, ops| {
                    let next = load_v3(s)?.step(ops)?;
                    store_v3(s, next);
                    Ok(())
                },
            ))
            .result("c"),
    )
}

pub fn v4() -> ProcedureSpec {
    let builder = ProcedureSpec::builder("v4")
        .plan(plans::v4())
        .block(bin_block(0))
        .block(Block::straight(
            "s := addArg1Arg2Times(N, b)",
            &[1],
            |p, s, ops| {
                let sq = add_arg1_arg2_times(ops, p.get("N")?, &digits(s)?)?;
                s.set("s", sq);
                Ok(())
            },
        ))
        .block(Block::straight(
            "c := addArg1Arg2Times(s, b)",
            &[2],
            |_, s, ops| {
                let c = add_arg1_arg2_times(ops, s.get("s")?, &digits(s)?)?;
                s.set("c", c);
                Ok(())
            },
        ))
        .result("c");
    build(zero_short_circuit(builder, "c"))
}

pub(crate) fn load_v5(s: &State) -> Result<CubeV5> {
    Ok(CubeV5 {
        j: s.get("j")?,
        c: s.get("c")?,
        s: s.get("s")?,
        l: s.get("l")?,
    })
}

pub(crate) fn store_v5(s: &mut State, st: CubeV5) {
    s.set("j", st.j);
    s.set("c", st.c);
    s.set("s", st.s);
    s.set("l", st.l);
}

/// `t := [1]; while len(t) <= last { t.push(2 * top) }`, with `last` read
/// from `last_var`.
fn table_block(sg: usize, last_var: &'static str, cap: IterationCap) -> Block {
    Block::looping(
        "t := powers of 2",
        &[sg],
        cap,
        move |_, s, ops| Ok(table_guard(ops, s.array("t")?, s.get(last_var)?)),
        |_, s, ops| {
            let mut t = s.array("t")?.to_vec();
            table_step(ops, &mut t)?;
            s.set_array("t", t);
            Ok(())
        },
    )
}

pub fn v5() -> ProcedureSpec {
    let builder = ProcedureSpec::builder("v5")
        .plan(plans::v5())
        .block(bin_block(0))
        .block(
            table_block(1, "tlast", IterationCap::Logarithmic("N")).with_setup(|_, s, ops| {
                let last = v5_table_last(ops, s.get("k")?)?;
                s.set("tlast", last);
                s.set_array("t", vec![1]);
                ops.assign(1);
                Ok(())
            }),
        )
        .block(Block::straight(
            "j, c, s, l := 0, b[0], b[0], b[0]",
            &[2, 3, 4],
            |_, s, ops| {
                let st = CubeV5::init(ops, s.array("b")?)?;
                store_v5(s, st);
                Ok(())
            },
        ))
        .block(Block::looping(
            "while j < k",
            &[5],
            IterationCap::Logarithmic("N"),
            |_, s, ops| Ok(ops.lt(s.get("j")?, s.get("k")?)),
            |_, s, ops| {
                let next = load_v5(s)?.step(ops, s.array("b")?, s.array("t")?)?;
                store_v5(s, next);
                Ok(())
            },
        ))
        .result("c");
    build(zero_short_circuit(builder, "c"))
}

pub fn get_bin_procedure() -> ProcedureSpec {
    build(
        ProcedureSpec::builder("getbin")
            .plan(plans::get_bin())
            .block(
                Block::looping(
                    "while 2p <= N",
                    &[0],
                    IterationCap::Logarithmic("N"),
                    |p, s, ops| log_guard(ops, p.get("N")?, s.get("p")?),
                    |_, s, ops| {
                        let (k, pw) = log_step(ops, s.get("k")?, s.get("p")?)?;
                        s.set("k", k);
                        s.set("p", pw);
                        Ok(())
                    },
                )
                .with_setup(|_, s, ops| {
                    s.set("k", 0);
                    s.set("p", 1);
                    ops.assign(2);
                    Ok(())
                }),
            )
            .block(
                table_block(1, "k", IterationCap::Logarithmic("N")).with_setup(|_, s, ops| {
                    s.set_array("t", vec![1]);
                    ops.assign(1);
                    Ok(())
                }),
            )
            .block(Block::straight(
                "j, b[k], m := k, 1, N - t[k]",
                &[2],
                |p, s, ops| {
                    let (j, b, m) = tail_init(ops, p.get("N")?, s.get("k")?, s.array("t")?)?;
                    s.set("j", j);
                    s.set_array("b", b);
                    s.set("m", m);
                    Ok(())
                },
            ))
            .block(Block::looping(
                "while j > 0",
                &[3],
                IterationCap::Logarithmic("N"),
                |_, s, ops| Ok(descend_guard(ops, s.get("j")?)),
                |_, s, ops| {
                    let mut b = s.array("b")?.to_vec();
                    let (j, m) =
                        descend_step(ops, s.get("j")?, &mut b, s.get("m")?, s.array("t")?)?;
                    s.set("j", j);
                    s.set("m", m);
                    s.set_array("b", b);
                    Ok(())
                },
            ))
            .result("b"),
    )
}

fn load_max(s: &State) -> Result<GetMax> {
    Ok(GetMax {
        i: s.get("i")?,
        r: s.get("r")?,
        ret: s.get("returnI")?,
    })
}

fn store_max(s: &mut State, st: GetMax) {
    s.set("i", st.i);
    s.set("r", st.r);
    s.set("returnI", st.ret);
}

pub fn get_max_procedure() -> ProcedureSpec {
    build(
        ProcedureSpec::builder("getmax")
            .plan(plans::get_max())
            .block(Block::straight(
                "i, returnI := 0, anArr[0]",
                &[0],
                |p, s, ops| {
                    store_max(s, GetMax::init(ops, p.array("anArr")?)?);
                    Ok(())
                },
            ))
            .block(Block::looping(
                "while i < anArr.length - 1",
                &[1],
                IterationCap::Length("anArr"),
                |p, s, ops| load_max(s)?.more(ops, p.array("anArr")?),
                |p, s, ops| {
                    let next = load_max(s)?.step(ops, p.array("anArr")?)?;
                    store_max(s, next);
                    Ok(())
                },
            ))
            .result("returnI"),
    )
}

pub fn pow_procedure() -> ProcedureSpec {
    let builder = ProcedureSpec::builder("pow")
        .plan(plans::pow())
        .block(bin_block(0))
        .block(Block::straight("i, p := 1, N", &[1], |p, s, ops| {
            s.set("i", 1);
            s.set("p", p.get("N")?);
            ops.assign(2);
            Ok(())
        }))
        .block(Block::looping(
            "while i < M",
            &[2],
            IterationCap::Linear("M"),
            |p, s, ops| Ok(ops.lt(s.get("i")?, p.get("M")?)),
            |_, s, ops| {
                let pw = add_arg1_arg2_times(ops, s.get("p")?, &digits(s)?)?;
                let i = ops.add(s.get("i")?, 1)?;
                s.set("p", pw);
                s.set("i", i);
                ops.assign(2);
                Ok(())
            },
        ))
        .result("p");
    build(zero_short_circuit(builder, "p"))
}

/// Every built-in procedure, in listing order.
pub fn all() -> Vec<ProcedureSpec> {
    vec![
        v1(),
        v2(),
        v3(),
        v4(),
        v5(),
        get_bin_procedure(),
        get_max_procedure(),
        pow_procedure(),
    ]
}
