//! Running a procedure under checkpointed checking and reading its trace.
//!
//! After each block the subgoals fulfilled so far must hold. In strict mode
//! the loop's invariant (the earlier subgoals) is checked after every
//! iteration too.

use csf::algorithms::procedures;
use csf::csf::{run_procedure_with, CheckMode, RunOptions, TraceLevel};
use csf::Params;

fn main() -> csf::Result<()> {
    let spec = procedures::v3();
    println!("plan for {}:", spec.name());
    for (i, sg) in spec.subgoals().iter().enumerate() {
        println!("  {}", sg.notation(i));
    }

    let opts = RunOptions {
        mode: CheckMode::Strict,
        trace: TraceLevel::Iterations,
    };
    let report = run_procedure_with(&spec, &Params::n(4), opts)?;
    for ev in &report.trace {
        let checks: Vec<String> = ev
            .checks
            .iter()
            .map(|c| format!("{}={}", c.label, c.holds))
            .collect();
        println!(
            "{:>2} {:?} block={:?} iteration={:?} adds={} {}",
            ev.seq,
            ev.kind,
            ev.block,
            ev.iteration,
            ev.counters.adds,
            checks.join(" ")
        );
    }
    println!("result {:?}, clean: {}", report.result, report.is_clean());

    // Off mode does no checking but counts exactly the same operations.
    let off = run_procedure_with(
        &spec,
        &Params::n(4),
        RunOptions {
            mode: CheckMode::Off,
            trace: TraceLevel::None,
        },
    )?;
    assert_eq!(off.counters, report.counters);
    println!("same counts with checking off: {:?}", off.counters);
    Ok(())
}
