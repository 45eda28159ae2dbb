//! Linear against logarithmic: v3 does N iterations, v5 does floor(log2 N).

use csf::algorithms::procedures;
use csf::csf::{run_procedure_with, CheckMode, RunOptions, TraceLevel};
use csf::Params;

fn main() -> csf::Result<()> {
    let opts = RunOptions {
        mode: CheckMode::Off,
        trace: TraceLevel::None,
    };
    let (v3, v5) = (procedures::v3(), procedures::v5());
    println!(
        "{:>8} {:>10} {:>10} {:>8} {:>8}",
        "N", "v3 iters", "v3 adds", "v5 iters", "v5 adds"
    );
    for e in (2..=20).step_by(2) {
        let n = 1i64 << e;
        let a = run_procedure_with(&v3, &Params::n(n), opts)?;
        let b = run_procedure_with(&v5, &Params::n(n), opts)?;
        assert_eq!(a.result, b.result);
        println!(
            "{n:>8} {:>10} {:>10} {:>8} {:>8}",
            a.principal_iterations(&v3),
            a.counters.adds,
            b.principal_iterations(&v5),
            b.counters.adds
        );
    }
    Ok(())
}
