//! Strict checking against deliberately broken procedures. Each mutant
//! replaces one block; the report says where the first check failed.

use csf::csf::{run_procedure, CheckMode};
use csf::mutants;

fn main() -> csf::Result<()> {
    for m in mutants::curated() {
        let strict = m.run()?;
        let lenient = run_procedure(&m.spec, &m.params, CheckMode::Lenient)?;
        let off = run_procedure(&m.spec, &m.params, CheckMode::Off)?;
        let v = strict
            .violation
            .as_ref()
            .expect("every curated mutant is caught");
        println!("{:<34} {}", m.name, m.description);
        println!(
            "    strict: {} failed in block {:?}, iteration {:?}{}",
            v.failed,
            v.block,
            v.iteration,
            if m.caught_by(&strict) {
                ""
            } else {
                "  (later than expected)"
            }
        );
        if let Some(lv) = &lenient.violation {
            println!(
                "    lenient: {} failed in block {:?} at its end",
                lv.failed, lv.block
            );
        }
        println!("    unchecked result: {:?}", off.result);
    }
    Ok(())
}
