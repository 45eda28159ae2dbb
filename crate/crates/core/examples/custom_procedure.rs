//! Writing a new procedure from a plan: squares by summing odd numbers.
//!
//! Plan:  SG1 (Square) s = i^2,  [SG2 (Odd) d = 2i + 1,  SG3 (Particularized) i = N
//! Block 1 sets i, s, d := 0, 0, 1 (fulfilling SG1 and SG2 together); block 2
//! repeats i, s, d := i + 1, s + d, d + 2 while i < N.

use csf::csf::{
    check_plan_sufficiency, check_pragmatic, run_procedure, Block, CheckMode, DomainBounds,
    IterationCap, ProcedureSpec, Subgoal,
};
use csf::registry::{Input, Procedure, Registry};
use csf::Params;

fn squares() -> csf::Result<ProcedureSpec> {
    ProcedureSpec::builder("square")
        .pre(|p, _| Ok(p.get("N")? >= 0))
        .post(|p, s| {
            let n = p.get("N")?;
            Ok(s.get("s")? == n * n)
        })
        .subgoal(Subgoal::new("Square", |_, s| {
            let i = s.get("i")?;
            Ok(s.get("s")? == i * i)
        }))
        .subgoal(Subgoal::new("Odd", |_, s| Ok(s.get("d")? == 2 * s.get("i")? + 1)).pragmatic())
        .subgoal(Subgoal::new("Particularized", |p, s| {
            Ok(s.get("i")? == p.get("N")?)
        }))
        .block(Block::straight(
            "i, s, d := 0, 0, 1",
            &[0, 1],
            |_, s, ops| {
                s.set("i", 0);
                s.set("s", 0);
                s.set("d", 1);
                ops.assign(3);
                Ok(())
            },
        ))
        .block(Block::looping(
            "while i < N",
            &[2],
            IterationCap::Linear("N"),
            |p, s, ops| Ok(ops.lt(s.get("i")?, p.get("N")?)),
            |_, s, ops| {
                let (i, sq, d) = (s.get("i")?, s.get("s")?, s.get("d")?);
                s.set("i", ops.add(i, 1)?);
                s.set("s", ops.add(sq, d)?);
                s.set("d", ops.add(d, 2)?);
                Ok(())
            },
        ))
        .result("s")
        .build()
}

fn main() -> csf::Result<()> {
    let spec = squares()?;
    for n in [0, 1, 7, 12] {
        let report = run_procedure(&spec, &Params::n(n), CheckMode::Strict)?;
        println!(
            "square({n}) = {:?}, adds {}",
            report.result, report.counters.adds
        );
    }

    let dom = DomainBounds::new()
        .param("N", 0..=8)
        .scalar("d", 0..=20)
        .scalar("i", 0..=8)
        .scalar("s", 0..=64);
    let verdict = check_plan_sufficiency(spec.plan(), &dom)?;
    println!("sufficient on the bounded domain: {}", verdict.sufficient);
    println!("Odd removable: {}", check_pragmatic(spec.plan(), 1, &dom)?);

    // Registered procedures are available to the command line as well.
    let mut reg = Registry::builtin();
    reg.register(Procedure::new(
        "square",
        "squares by odd sums",
        Input::N,
        spec,
        |b, _| {
            DomainBounds::new()
                .param("N", 0..=b)
                .scalar("d", 0..=b)
                .scalar("i", 0..=b)
                .scalar("s", 0..=b)
        },
    ));
    let code = csf::cli::run_with_registry(
        &reg,
        ["csf", "run", "square", "--n", "9"],
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    println!("exit status {code}");
    Ok(())
}
