//! Bounded checks that a plan's subgoals imply its postcondition, and which
//! subgoals could be dropped.

use csf::csf::{check_plan_sufficiency, check_pragmatic};
use csf::registry::Registry;

fn main() -> csf::Result<()> {
    let reg = Registry::builtin();
    for p in reg.iter() {
        let dom = p.domain(8, 3);
        let plan = p.spec.plan();
        let verdict = check_plan_sufficiency(plan, &dom)?;
        println!(
            "{:<7} sufficient={} ({} partial assignments, {} raw points)",
            p.name,
            verdict.sufficient,
            verdict.visited,
            dom.size()
        );
        for (i, sg) in plan.subgoals.iter().enumerate() {
            let removable = check_pragmatic(plan, i, &dom)?;
            println!("    {:<28} removable: {removable}", sg.notation(i));
        }
    }

    let v3 = reg.get("v3")?;
    let cube = v3
        .spec
        .plan()
        .position("Cube")
        .expect("v3 has a Cube subgoal");
    let weakened = v3.spec.plan().without(cube)?;
    let verdict = check_plan_sufficiency(&weakened, &v3.domain(8, 3))?;
    if let Some((params, state)) = verdict.counterexample {
        println!("v3 without Cube fails at params {params}, state {state}");
    }
    Ok(())
}
